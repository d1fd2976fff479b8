#pragma once

// Dataset-level scoring: per-caption metrics, split means, the composite and
// the documents the command-line tool prints.
//
// Caption scoring runs in two phases. The idf tables (one per split, over
// every ground-truth caption of that split) are built first on the calling
// thread; the per-caption work then fans out to `workers` threads, each
// writing into its own preallocated slot. Means are reduced afterwards in
// fixed (scenario id, phase, perspective) order, so every worker count gives
// bit-identical results.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tseval/bleu.hpp"
#include "tseval/cider.hpp"
#include "tseval/composite.hpp"
#include "tseval/dataset_io.hpp"
#include "tseval/meteor.hpp"
#include "tseval/report.hpp"
#include "tseval/rouge.hpp"
#include "tseval/text_norm.hpp"
#include "tseval/vqa.hpp"

namespace tseval {

enum class Perspective { pedestrian, vehicle };

const char* to_string(Perspective p) noexcept;

struct ScoringConfig {
  TokenizerConfig tokenizer;
  ZeroPrecisionPolicy bleu_policy = ZeroPrecisionPolicy::hard_zero;
  BetaConvention rouge_convention = BetaConvention::paper;
  MeteorParams meteor;
  CiderOptions cider;
  AggregationMode aggregation = AggregationMode::unweighted;
  bool strict = false;
  std::size_t workers = 1;

  /// Throws std::invalid_argument when a numeric parameter is out of range.
  void validate() const;
};

struct CaptionScore {
  SegmentKey key;
  Split split = Split::internal;
  Perspective perspective = Perspective::pedestrian;
  bool predicted = false;  // false: no prediction, scored as an empty caption
  CaptionMetrics metrics;
};

struct CaptionEvaluation {
  std::vector<CaptionScore> captions;  // sorted by split, scenario, phase, perspective
  SplitScores internal{Split::internal, {}, 0};
  SplitScores external{Split::external, {}, 0};
  CaptionMetrics aggregate;
  double cap_score = 0.0;
  ValidationReport validation;
};

/// Runs fn(0..count-1) on up to `workers` threads. fn must only touch state
/// owned by its index.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

/// Scores every ground-truth caption. Segments without a prediction score as
/// empty captions; predictions without ground truth are ignored. Does not
/// enforce `strict`; callers inspect `validation`.
CaptionEvaluation score_captions(const ScenarioSet& gt, const PredictionSet& pred,
                                 const ScoringConfig& config);

AccuracyResult score_vqa(const std::vector<VqaItem>& items,
                         const std::vector<VqaPrediction>& predictions,
                         const ScoringConfig& config);

// Documents printed by the command-line tool.
std::string render_caption_report(const CaptionEvaluation& eval, const ScoringConfig& config,
                                  Format format, const std::string& label);
std::string render_vqa_report(const AccuracyResult& result, Format format);
std::string render_final_report(const CaptionEvaluation& eval, const AccuracyResult* vqa,
                                const FinalScore& final, const ScoringConfig& config,
                                Format format, const std::string& label);
std::string render_validation_report(const ValidationReport& report, Format format);

}  // namespace tseval
