#pragma once

#include <array>
#include <span>

#include "tseval/text_norm.hpp"

namespace tseval {

/// How a zero modified precision enters the geometric mean.
///  - hard_zero: the score is 0 (unsmoothed reading).
///  - epsilon:   the zero precision is replaced by kBleuEpsilon.
enum class ZeroPrecisionPolicy { hard_zero, epsilon };

inline constexpr double kBleuEpsilon = 1e-9;

struct BleuBreakdown {
  std::array<double, 4> precision{};  // p_1..p_4, unsmoothed
  double brevity_penalty = 0.0;
  double score = 0.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;  // effective r
};

/// Segment-level BLEU-4 with uniform weights.
///
/// BP = 1 when c > r, exp(1 - r/c) otherwise; r is the length of the
/// reference closest to c, shorter on ties. An empty candidate scores 0 with
/// BP reported as 0. Throws std::invalid_argument for an empty reference list.
BleuBreakdown bleu4(const TokenSequence& candidate, std::span<const TokenSequence> references,
                    ZeroPrecisionPolicy policy = ZeroPrecisionPolicy::hard_zero);

}  // namespace tseval
