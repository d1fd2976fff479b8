#pragma once

// Multiple-choice VQA: free-text answer resolution and top-1 accuracy.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tseval {

struct VqaItem {
  std::string id;
  std::string segment_id;
  std::string question;
  std::vector<std::string> options;
  std::size_t gold = 0;
};

struct VqaPrediction {
  std::string id;
  std::string raw;
};

struct AccuracyResult {
  std::size_t total = 0;
  std::size_t correct = 0;
  double acc = 0.0;
};

/// Raised for submissions that are well-formed but do not satisfy the
/// scoring contract (duplicate ids, strict-mode gaps).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MissingPolicy { missing_is_wrong, strict };

/// Resolved option index, or std::nullopt for "no answer".
using ResolvedAnswer = std::optional<std::size_t>;

/// Option text as compared during resolution: lowercased, punctuation
/// stripped, whitespace collapsed.
std::string normalize_option_text(std::string_view text);

/// Maps a model's free-text answer onto an option index. In order:
///   1. a leading choice letter A-Z (any case), alone or followed by '.', ')'
///      or ':', within range of the options;
///   2. an option whose normalized text equals the normalized answer;
///   3. the single option whose normalized tokens occur contiguously in the
///      answer (two or more such options resolve to no answer).
/// Throws std::invalid_argument when `options` is empty; never fails on text.
ResolvedAnswer normalize_answer(std::string_view raw, std::span<const std::string> options);

/// Checks K >= 2, gold < K, and pairwise-distinct normalized options.
/// Throws std::invalid_argument naming the item.
void validate_item(const VqaItem& item);

/// Top-1 accuracy over `items`. Predictions for unknown ids are ignored
/// under missing_is_wrong and rejected under strict.
/// Throws ValidationError on duplicate prediction ids, and under strict on
/// missing or unknown ids.
AccuracyResult accuracy(std::span<const VqaItem> items, std::span<const VqaPrediction> predictions,
                        MissingPolicy policy = MissingPolicy::missing_is_wrong);

}  // namespace tseval
