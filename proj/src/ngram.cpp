#include "tseval/ngram.hpp"

#include <algorithm>
#include <stdexcept>

namespace tseval {

std::size_t NGramCounts::total() const {
  std::size_t sum = 0;
  for (const auto& [gram, c] : counts) sum += c;
  return sum;
}

std::size_t NGramCounts::count(const NGram& gram) const {
  const auto it = counts.find(gram);
  return it == counts.end() ? 0 : it->second;
}

NGramCounts extract_ngrams(const TokenSequence& seq, int n) {
  if (n < 1 || n > kMaxNGramOrder) {
    throw std::invalid_argument("n-gram order must be in [1,4], got " + std::to_string(n));
  }
  NGramCounts out;
  out.order = n;
  const auto width = static_cast<std::size_t>(n);
  if (seq.size() < width) return out;
  for (std::size_t i = 0; i + width <= seq.size(); ++i) {
    ++out.counts[NGram(seq.begin() + static_cast<std::ptrdiff_t>(i),
                       seq.begin() + static_cast<std::ptrdiff_t>(i + width))];
  }
  return out;
}

std::size_t clipped_matches(const NGramCounts& candidate,
                            std::span<const NGramCounts> references) {
  for (const auto& ref : references) {
    if (ref.order != candidate.order) {
      throw std::invalid_argument("clipped_matches: reference order " +
                                  std::to_string(ref.order) + " != candidate order " +
                                  std::to_string(candidate.order));
    }
  }
  std::size_t matched = 0;
  for (const auto& [gram, c] : candidate.counts) {
    std::size_t ceiling = 0;
    for (const auto& ref : references) ceiling = std::max(ceiling, ref.count(gram));
    matched += std::min(c, ceiling);
  }
  return matched;
}

}  // namespace tseval
