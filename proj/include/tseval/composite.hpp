#pragma once

// Challenge composites. All quantities are stored as fractions: caption
// metrics raw, CIDEr on its configured scale, accuracy in [0,1]. Percent is
// produced only on request.

#include <cstddef>

namespace tseval {

enum class Split { internal, external };

const char* to_string(Split split) noexcept;

struct CaptionMetrics {
  double bleu4 = 0.0;
  double meteor = 0.0;
  double rouge_l = 0.0;
  double cider = 0.0;
};

struct SplitScores {
  Split split = Split::internal;
  CaptionMetrics metrics;
  /// Number of scored segments; a segment contributes both perspectives.
  std::size_t segments = 0;
};

enum class AggregationMode { unweighted, weighted };

struct FinalScore {
  double cap_score = 0.0;
  double acc = 0.0;
  double s2 = 0.0;

  /// Same score with every field multiplied by 100.
  FinalScore percent() const;
};

/// Mean of the four metrics. Throws std::invalid_argument on a negative input.
double cap_score(const CaptionMetrics& m);

/// Per-metric mean of the two splits. A split with no segments is left out of
/// both modes; with neither populated the result is all zeros. `weighted`
/// weights each split by its segment count.
CaptionMetrics aggregate_splits(const SplitScores& internal, const SplitScores& external,
                                AggregationMode mode = AggregationMode::unweighted);

/// (cap + acc) / 2. Throws std::invalid_argument when cap < 0 or acc is
/// outside [0,1].
FinalScore s2(double cap, double acc);

}  // namespace tseval
