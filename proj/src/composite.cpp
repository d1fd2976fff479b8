#include "tseval/composite.hpp"

#include <cmath>
#include <stdexcept>

namespace tseval {

const char* to_string(Split split) noexcept {
  return split == Split::internal ? "internal" : "external";
}

FinalScore FinalScore::percent() const {
  return {cap_score * 100.0, acc * 100.0, s2 * 100.0};
}

double cap_score(const CaptionMetrics& m) {
  for (const double v : {m.bleu4, m.meteor, m.rouge_l, m.cider}) {
    if (!(v >= 0.0)) throw std::invalid_argument("cap_score: metrics must be non-negative");
  }
  return (m.bleu4 + m.meteor + m.rouge_l + m.cider) / 4.0;
}

CaptionMetrics aggregate_splits(const SplitScores& internal, const SplitScores& external,
                                AggregationMode mode) {
  double wi = internal.segments > 0 ? 1.0 : 0.0;
  double we = external.segments > 0 ? 1.0 : 0.0;
  if (mode == AggregationMode::weighted) {
    wi = static_cast<double>(internal.segments);
    we = static_cast<double>(external.segments);
  }
  const double wsum = wi + we;
  if (wsum == 0.0) return {};
  const auto mix = [&](double a, double b) { return (wi * a + we * b) / wsum; };
  const auto& a = internal.metrics;
  const auto& b = external.metrics;
  return {mix(a.bleu4, b.bleu4), mix(a.meteor, b.meteor), mix(a.rouge_l, b.rouge_l),
          mix(a.cider, b.cider)};
}

FinalScore s2(double cap, double acc) {
  if (!(cap >= 0.0) || !std::isfinite(cap)) {
    throw std::invalid_argument("s2: caption score must be finite and non-negative");
  }
  if (!(acc >= 0.0 && acc <= 1.0)) throw std::invalid_argument("s2: accuracy must be in [0,1]");
  return {cap, acc, (cap + acc) / 2.0};
}

}  // namespace tseval
