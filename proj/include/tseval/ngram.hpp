#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tseval/text_norm.hpp"

namespace tseval {

using NGram = std::vector<std::string>;

inline constexpr int kMaxNGramOrder = 4;

/// Multiset of contiguous n-token windows of one sequence, all of one order.
///
/// Keys are kept ordered so that anything iterating the counts (dot products
/// in particular) accumulates in a stable order.
struct NGramCounts {
  int order = 1;
  std::map<NGram, std::size_t> counts;

  std::size_t total() const;
  std::size_t count(const NGram& gram) const;
};

/// Throws std::invalid_argument unless 1 <= n <= 4.
NGramCounts extract_ngrams(const TokenSequence& seq, int n);

/// Sum over candidate n-grams of min(candidate count, max reference count).
/// Throws std::invalid_argument when any reference has a different order.
std::size_t clipped_matches(const NGramCounts& candidate,
                            std::span<const NGramCounts> references);

}  // namespace tseval
