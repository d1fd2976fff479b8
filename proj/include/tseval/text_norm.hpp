#pragma once

// Caption normalization shared by every metric.

#include <string>
#include <string_view>
#include <vector>

namespace tseval {

using TokenSequence = std::vector<std::string>;

enum class PunctuationPolicy { strip, separate };

struct TokenizerConfig {
  bool lowercase = true;
  PunctuationPolicy punctuation = PunctuationPolicy::separate;
};

/// True for the characters . , ; : ! ? " ( ) [ ]
bool is_split_punctuation(char c) noexcept;

/// True for code points carrying the Unicode White_Space property.
bool is_unicode_whitespace(char32_t cp) noexcept;

/// Splits a caption into normalized tokens.
///
/// Lowercasing touches ASCII letters only; no other Unicode normalization is
/// applied. Any Unicode whitespace separates tokens. Split punctuation becomes
/// a standalone token under `separate` and acts as a separator under `strip`.
/// Malformed UTF-8 bytes are kept verbatim inside the surrounding token.
TokenSequence tokenize(std::string_view raw, const TokenizerConfig& cfg = {});

/// Joins tokens with single ASCII spaces.
std::string join(const TokenSequence& tokens);

}  // namespace tseval
