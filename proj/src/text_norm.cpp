#include "tseval/text_norm.hpp"

#include <cstdint>

namespace tseval {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence starting at `pos`. Malformed input consumes a
// single byte and yields kInvalid.
Decoded decode_utf8(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};

  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {kInvalid, 1};
  }
  if (pos + len > s.size()) return {kInvalid, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {kInvalid, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms and surrogates are not valid scalar values.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {kInvalid, 1};
  }
  return {cp, len};
}

}  // namespace

bool is_split_punctuation(char c) noexcept {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '(': case ')': case '[': case ']':
      return true;
    default:
      return false;
  }
}

bool is_unicode_whitespace(char32_t cp) noexcept {
  if (cp >= 0x09 && cp <= 0x0D) return true;
  if (cp >= 0x2000 && cp <= 0x200A) return true;
  switch (cp) {
    case 0x20: case 0x85: case 0xA0: case 0x1680: case 0x2028:
    case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return false;
  }
}

TokenSequence tokenize(std::string_view raw, const TokenizerConfig& cfg) {
  TokenSequence out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  };

  std::size_t pos = 0;
  while (pos < raw.size()) {
    const Decoded d = decode_utf8(raw, pos);
    if (d.cp != kInvalid && is_unicode_whitespace(d.cp)) {
      flush();
    } else if (d.len == 1 && d.cp != kInvalid && is_split_punctuation(raw[pos])) {
      flush();
      if (cfg.punctuation == PunctuationPolicy::separate) out.emplace_back(1, raw[pos]);
    } else if (d.len == 1 && d.cp != kInvalid && cfg.lowercase && raw[pos] >= 'A' &&
               raw[pos] <= 'Z') {
      current.push_back(static_cast<char>(raw[pos] - 'A' + 'a'));
    } else {
      current.append(raw.substr(pos, d.len));
    }
    pos += d.len;
  }
  flush();
  return out;
}

std::string join(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace tseval
