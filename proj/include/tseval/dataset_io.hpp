#pragma once

// Ground-truth and submission files.
//
// Captions (ground truth):
//   {"scenarios": [{"id": str, "split": "internal"|"external",
//                   "segments": [{"phase": str, "pedestrian_caption": str,
//                                 "vehicle_caption": str}, ...]}, ...]}
// Captions (predictions): the same without "split".
// VQA gold:        {"questions": [{"id", "segment", "question", "options": [str...], "correct": int}]}
// VQA predictions: {"answers": [{"id", "raw"}]}
//
// Phases are exactly: prerecognition, recognition, judgment, action, avoidance.
// Unknown object members are ignored.

#include <compare>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tseval/composite.hpp"
#include "tseval/vqa.hpp"

namespace tseval {

enum class Phase { prerecognition, recognition, judgment, action, avoidance };

inline constexpr Phase kAllPhases[] = {Phase::prerecognition, Phase::recognition,
                                       Phase::judgment, Phase::action, Phase::avoidance};

const char* to_string(Phase phase) noexcept;
std::optional<Phase> parse_phase(std::string_view text) noexcept;

struct Segment {
  Phase phase = Phase::prerecognition;
  std::string pedestrian_caption;
  std::string vehicle_caption;

  bool operator==(const Segment&) const = default;
};

struct Scenario {
  std::string id;
  Split split = Split::internal;
  std::vector<Segment> segments;

  bool operator==(const Scenario&) const = default;
};

struct ScenarioSet {
  std::vector<Scenario> scenarios;

  std::size_t segment_count() const;
  bool operator==(const ScenarioSet&) const = default;
};

struct PredictionScenario {
  std::string id;
  std::vector<Segment> segments;

  bool operator==(const PredictionScenario&) const = default;
};

struct PredictionSet {
  std::vector<PredictionScenario> scenarios;
  /// Entries skipped by a lenient load, as "<locator>: <reason>".
  std::vector<std::string> rejected;

  std::size_t segment_count() const;
  bool operator==(const PredictionSet&) const = default;
};

struct SegmentKey {
  std::string scenario;
  Phase phase = Phase::prerecognition;

  auto operator<=>(const SegmentKey&) const = default;
  std::string str() const;  // "<scenario>/<phase>"
};

struct ValidationReport {
  std::vector<SegmentKey> missing_segments;
  std::vector<SegmentKey> extra_segments;
  std::vector<std::string> malformed_entries;

  bool empty() const {
    return missing_segments.empty() && extra_segments.empty() && malformed_entries.empty();
  }
};

class DatasetError : public std::runtime_error {
 public:
  enum class Kind { io, parse, schema, duplicate };

  DatasetError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// strict: any malformed entry throws. lenient: malformed scenarios or
/// segments are skipped and listed in PredictionSet::rejected; problems with
/// the document as a whole still throw.
enum class LoadMode { strict, lenient };

// `source` names the document in error messages.
ScenarioSet parse_ground_truth(std::string_view text, const std::string& source = "<memory>");
PredictionSet parse_predictions(std::string_view text, const std::string& source = "<memory>",
                                LoadMode mode = LoadMode::strict);
std::vector<VqaItem> parse_vqa_gold(std::string_view text, const std::string& source = "<memory>");
std::vector<VqaPrediction> parse_vqa_predictions(std::string_view text,
                                                 const std::string& source = "<memory>");

ScenarioSet load_ground_truth(const std::filesystem::path& path);
PredictionSet load_predictions(const std::filesystem::path& path,
                               LoadMode mode = LoadMode::strict);
std::vector<VqaItem> load_vqa_gold(const std::filesystem::path& path);
std::vector<VqaPrediction> load_vqa_predictions(const std::filesystem::path& path);

std::string serialize(const ScenarioSet& set);
std::string serialize(const PredictionSet& set);

/// Predictions carrying exactly the ground-truth captions.
PredictionSet as_predictions(const ScenarioSet& gt);

/// Both-way diff of (scenario, phase) keys, sorted; rejected prediction
/// entries are reported as malformed.
ValidationReport validate(const ScenarioSet& gt, const PredictionSet& pred);

}  // namespace tseval
