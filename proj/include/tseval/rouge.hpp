#pragma once

#include <cstddef>

#include "tseval/text_norm.hpp"

namespace tseval {

/// paper:           beta = P_lcs / R_lcs, i.e. score = R*P*(R^2+P^2) / (R^3+P^3).
/// recall_weighted: beta = kRecallWeightedBeta, so the score approaches R_lcs.
enum class BetaConvention { paper, recall_weighted };

inline constexpr double kRecallWeightedBeta = 1e6;

struct RougeBreakdown {
  std::size_t lcs = 0;
  double recall = 0.0;     // lcs / reference length
  double precision = 0.0;  // lcs / candidate length
  double beta = 0.0;
  double score = 0.0;
};

std::size_t lcs_length(const TokenSequence& x, const TokenSequence& y);

RougeBreakdown rouge_l(const TokenSequence& candidate, const TokenSequence& reference,
                       BetaConvention convention = BetaConvention::paper);

}  // namespace tseval
