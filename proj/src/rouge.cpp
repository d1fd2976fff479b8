#include "tseval/rouge.hpp"

#include <algorithm>
#include <vector>

namespace tseval {

std::size_t lcs_length(const TokenSequence& x, const TokenSequence& y) {
  if (x.empty() || y.empty()) return 0;
  // Two rolling rows of the classic DP table.
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

RougeBreakdown rouge_l(const TokenSequence& candidate, const TokenSequence& reference,
                       BetaConvention convention) {
  RougeBreakdown out;
  out.lcs = lcs_length(candidate, reference);
  if (out.lcs == 0) return out;

  const double l = static_cast<double>(out.lcs);
  out.recall = l / static_cast<double>(reference.size());
  out.precision = l / static_cast<double>(candidate.size());
  out.beta = convention == BetaConvention::paper ? out.precision / out.recall
                                                 : kRecallWeightedBeta;
  const double b2 = out.beta * out.beta;
  out.score = (1.0 + b2) * out.recall * out.precision / (out.recall + b2 * out.precision);
  return out;
}

}  // namespace tseval
