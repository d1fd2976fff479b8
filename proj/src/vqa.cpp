#include "tseval/vqa.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "tseval/text_norm.hpp"

namespace tseval {

namespace {

constexpr TokenizerConfig kAnswerTokenizer{true, PunctuationPolicy::strip};

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::optional<std::size_t> leading_letter(std::string_view raw, std::size_t option_count) {
  std::size_t i = 0;
  while (i < raw.size() && is_ascii_space(raw[i])) ++i;
  if (i == raw.size()) return std::nullopt;
  char c = raw[i];
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  if (c < 'A' || c > 'Z') return std::nullopt;
  const std::size_t next = i + 1;
  const bool alone = std::all_of(raw.begin() + static_cast<std::ptrdiff_t>(next), raw.end(),
                                 is_ascii_space);
  const bool marked = next < raw.size() && (raw[next] == '.' || raw[next] == ')' ||
                                            raw[next] == ':');
  if (!alone && !marked) return std::nullopt;
  const auto index = static_cast<std::size_t>(c - 'A');
  if (index >= option_count) return std::nullopt;
  return index;
}

bool contains_run(const TokenSequence& hay, const TokenSequence& needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

std::string normalize_option_text(std::string_view text) {
  return join(tokenize(text, kAnswerTokenizer));
}

ResolvedAnswer normalize_answer(std::string_view raw, std::span<const std::string> options) {
  if (options.empty()) throw std::invalid_argument("normalize_answer: no options");

  if (auto idx = leading_letter(raw, options.size())) return idx;

  const TokenSequence answer = tokenize(raw, kAnswerTokenizer);
  const std::string answer_text = join(answer);
  std::vector<TokenSequence> opts;
  opts.reserve(options.size());
  for (const auto& o : options) opts.push_back(tokenize(o, kAnswerTokenizer));

  for (std::size_t k = 0; k < opts.size(); ++k) {
    if (!opts[k].empty() && join(opts[k]) == answer_text) return k;
  }

  ResolvedAnswer found;
  for (std::size_t k = 0; k < opts.size(); ++k) {
    if (!contains_run(answer, opts[k])) continue;
    if (found) return std::nullopt;
    found = k;
  }
  return found;
}

void validate_item(const VqaItem& item) {
  const std::string where = "question '" + item.id + "'";
  if (item.options.size() < 2) throw std::invalid_argument(where + ": needs at least 2 options");
  if (item.gold >= item.options.size()) {
    throw std::invalid_argument(where + ": correct index " + std::to_string(item.gold) +
                                " out of range for " + std::to_string(item.options.size()) +
                                " options");
  }
  std::set<std::string> seen;
  for (const auto& o : item.options) {
    if (!seen.insert(normalize_option_text(o)).second) {
      throw std::invalid_argument(where + ": option '" + o +
                                  "' duplicates another option after normalization");
    }
  }
}

AccuracyResult accuracy(std::span<const VqaItem> items, std::span<const VqaPrediction> predictions,
                        MissingPolicy policy) {
  std::unordered_map<std::string_view, const VqaPrediction*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.id, &p).second) {
      throw ValidationError("duplicate prediction id '" + p.id + "'");
    }
  }

  if (policy == MissingPolicy::strict) {
    std::set<std::string_view> known;
    for (const auto& item : items) known.insert(item.id);
    // Sorted so the first reported id does not depend on hash order.
    std::set<std::string_view> unknown;
    for (const auto& p : predictions) {
      if (!known.count(p.id)) unknown.insert(p.id);
    }
    if (!unknown.empty()) {
      throw ValidationError("prediction for unknown question id '" +
                            std::string(*unknown.begin()) + "'");
    }
  }

  AccuracyResult out;
  out.total = items.size();
  for (const auto& item : items) {
    const auto it = by_id.find(item.id);
    if (it == by_id.end()) {
      if (policy == MissingPolicy::strict) {
        throw ValidationError("missing prediction for question id '" + item.id + "'");
      }
      continue;
    }
    const ResolvedAnswer ans = normalize_answer(it->second->raw, item.options);
    if (ans && *ans == item.gold) ++out.correct;
  }
  out.acc = out.total == 0 ? 0.0
                           : static_cast<double>(out.correct) / static_cast<double>(out.total);
  return out;
}

}  // namespace tseval
