#pragma once

#include <cstddef>
#include <span>

#include "tseval/text_norm.hpp"

namespace tseval {

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;

  /// Throws std::invalid_argument unless alpha in (0,1), beta > 0, gamma in [0,1].
  void validate() const;
};

struct MeteorAlignment {
  std::size_t matches = 0;          // m
  std::size_t chunks = 0;           // ch
  std::size_t candidate_total = 0;  // w_t
  std::size_t reference_total = 0;  // w_r
  /// False only when the search budget ran out; the chunk count is then the
  /// best found, which is never worse than the greedy left-to-right alignment.
  bool optimal = true;
};

struct MeteorBreakdown {
  double precision = 0.0;
  double recall = 0.0;
  double f_mean = 0.0;
  double penalty = 0.0;
  double score = 0.0;
  MeteorAlignment alignment;
};

/// Maximum number of search nodes `align` expands before settling for the best
/// alignment found so far. Any case with at most 10^4 maximum-cardinality
/// matchings and up to 99 candidate tokens is searched to completion.
inline constexpr std::size_t kMeteorSearchBudget = 1'000'000;

/// One-to-one exact-match alignment that maximizes the number of matched
/// unigrams and, among those, minimizes the number of chunks. A chunk is a
/// maximal run of matches adjacent and identically ordered in both sequences.
MeteorAlignment align(const TokenSequence& candidate, const TokenSequence& reference,
                      std::size_t search_budget = kMeteorSearchBudget);

/// Greedy left-to-right alignment: each candidate token takes the reference
/// position that extends the current chunk when possible, otherwise the
/// leftmost unused one. Always reaches the maximum match count.
MeteorAlignment align_greedy(const TokenSequence& candidate, const TokenSequence& reference);

/// Score for a single reference.
MeteorBreakdown meteor_single(const TokenSequence& candidate, const TokenSequence& reference,
                              const MeteorParams& params = {});

/// Maximum single-reference score over `references` (first wins on ties).
/// Throws std::invalid_argument for an empty reference list or invalid params.
MeteorBreakdown meteor(const TokenSequence& candidate, std::span<const TokenSequence> references,
                       const MeteorParams& params = {});

}  // namespace tseval
