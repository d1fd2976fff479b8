#include "tseval/bleu.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "tseval/ngram.hpp"

namespace tseval {

namespace {

std::size_t effective_reference_length(std::size_t c, std::span<const TokenSequence> refs) {
  std::size_t best = refs.front().size();
  for (const auto& ref : refs) {
    const std::size_t r = ref.size();
    const auto dist = [c](std::size_t len) { return len > c ? len - c : c - len; };
    if (dist(r) < dist(best) || (dist(r) == dist(best) && r < best)) best = r;
  }
  return best;
}

}  // namespace

BleuBreakdown bleu4(const TokenSequence& candidate, std::span<const TokenSequence> references,
                    ZeroPrecisionPolicy policy) {
  if (references.empty()) throw std::invalid_argument("bleu4: empty reference list");

  BleuBreakdown out;
  out.candidate_length = candidate.size();
  out.reference_length = effective_reference_length(candidate.size(), references);

  bool any_zero = false;
  double log_sum = 0.0;
  std::vector<NGramCounts> ref_counts(references.size());
  for (int n = 1; n <= kMaxNGramOrder; ++n) {
    const NGramCounts cand = extract_ngrams(candidate, n);
    for (std::size_t j = 0; j < references.size(); ++j) {
      ref_counts[j] = extract_ngrams(references[j], n);
    }
    const std::size_t total = cand.total();
    const double p = total == 0
                         ? 0.0
                         : static_cast<double>(clipped_matches(cand, ref_counts)) /
                               static_cast<double>(total);
    out.precision[static_cast<std::size_t>(n - 1)] = p;
    if (p == 0.0) {
      any_zero = true;
      log_sum += 0.25 * std::log(kBleuEpsilon);
    } else {
      log_sum += 0.25 * std::log(p);
    }
  }

  if (candidate.empty()) return out;

  const double c = static_cast<double>(out.candidate_length);
  const double r = static_cast<double>(out.reference_length);
  out.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);

  if (any_zero && policy == ZeroPrecisionPolicy::hard_zero) {
    out.score = 0.0;
  } else {
    out.score = out.brevity_penalty * std::exp(log_sum);
  }
  return out;
}

}  // namespace tseval
