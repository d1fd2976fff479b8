#include "tseval/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tseval {

using nlohmann::json;

namespace {

const char* const kPhaseNames[] = {"prerecognition", "recognition", "judgment", "action",
                                   "avoidance"};

[[noreturn]] void schema_error(const std::string& source, const std::string& locator,
                               const std::string& what) {
  throw DatasetError(DatasetError::Kind::schema, source + ": " + locator + ": " + what);
}

json parse_document(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points at the offending byte.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw DatasetError(DatasetError::Kind::parse, source + ":" + std::to_string(line) + ":" +
                                                      std::to_string(column) +
                                                      ": parse error: " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(DatasetError::Kind::io, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DatasetError(DatasetError::Kind::io, path.string() + ": read failed");
  return ss.str();
}

// Field access that reports violations with a locator. Throws DatasetError.
class Reader {
 public:
  explicit Reader(const std::string& source) : source_(source) {}

  const json& member(const json& obj, const std::string& loc, const char* name) const {
    if (!obj.is_object()) schema_error(source_, loc, "expected an object");
    const auto it = obj.find(name);
    if (it == obj.end()) schema_error(source_, loc, std::string("missing field '") + name + "'");
    return *it;
  }

  const json& array(const json& obj, const std::string& loc, const char* name) const {
    const json& v = member(obj, loc, name);
    if (!v.is_array()) schema_error(source_, loc + "." + name, "expected an array");
    return v;
  }

  std::string string(const json& obj, const std::string& loc, const char* name) const {
    const json& v = member(obj, loc, name);
    if (!v.is_string()) schema_error(source_, loc + "." + name, "expected a string");
    return v.get<std::string>();
  }

  Phase phase(const json& obj, const std::string& loc) const {
    const std::string text = string(obj, loc, "phase");
    const auto p = parse_phase(text);
    if (!p) {
      schema_error(source_, loc + ".phase",
                   "invalid phase '" + text +
                       "' (expected prerecognition, recognition, judgment, action, avoidance)");
    }
    return *p;
  }

  Segment segment(const json& obj, const std::string& loc) const {
    Segment s;
    s.phase = phase(obj, loc);
    s.pedestrian_caption = string(obj, loc, "pedestrian_caption");
    s.vehicle_caption = string(obj, loc, "vehicle_caption");
    return s;
  }

  const std::string& source() const { return source_; }

 private:
  const std::string& source_;
};

std::string scenario_loc(std::size_t i) { return "scenarios[" + std::to_string(i) + "]"; }

std::string segment_loc(std::size_t i, std::size_t j) {
  return scenario_loc(i) + ".segments[" + std::to_string(j) + "]";
}

// Phase uniqueness within one scenario; returns the duplicated phase if any.
std::optional<Phase> first_duplicate_phase(const std::vector<Segment>& segments) {
  std::set<Phase> seen;
  for (const auto& s : segments) {
    if (!seen.insert(s.phase).second) return s.phase;
  }
  return std::nullopt;
}

nlohmann::ordered_json segment_json(const Segment& s) {
  return nlohmann::ordered_json{{"phase", to_string(s.phase)},
                                {"pedestrian_caption", s.pedestrian_caption},
                                {"vehicle_caption", s.vehicle_caption}};
}

}  // namespace

const char* to_string(Phase phase) noexcept {
  return kPhaseNames[static_cast<std::size_t>(phase)];
}

std::optional<Phase> parse_phase(std::string_view text) noexcept {
  for (const Phase p : kAllPhases) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

std::size_t ScenarioSet::segment_count() const {
  std::size_t n = 0;
  for (const auto& s : scenarios) n += s.segments.size();
  return n;
}

std::size_t PredictionSet::segment_count() const {
  std::size_t n = 0;
  for (const auto& s : scenarios) n += s.segments.size();
  return n;
}

std::string SegmentKey::str() const { return scenario + "/" + to_string(phase); }

ScenarioSet parse_ground_truth(std::string_view text, const std::string& source) {
  const json doc = parse_document(text, source);
  const Reader rd(source);
  const json& list = rd.array(doc, "$", "scenarios");

  ScenarioSet out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string loc = scenario_loc(i);
    const json& sc = list[i];
    Scenario s;
    s.id = rd.string(sc, loc, "id");
    const std::string split = rd.string(sc, loc, "split");
    if (split == "internal") {
      s.split = Split::internal;
    } else if (split == "external") {
      s.split = Split::external;
    } else {
      schema_error(source, loc + ".split",
                   "invalid split '" + split + "' (expected internal or external)");
    }
    const json& segs = rd.array(sc, loc, "segments");
    for (std::size_t j = 0; j < segs.size(); ++j) {
      s.segments.push_back(rd.segment(segs[j], segment_loc(i, j)));
    }
    if (const auto dup = first_duplicate_phase(s.segments)) {
      throw DatasetError(DatasetError::Kind::duplicate,
                         source + ": " + loc + ": duplicate phase '" + to_string(*dup) +
                             "' in scenario '" + s.id + "'");
    }
    if (!ids.insert(s.id).second) {
      throw DatasetError(DatasetError::Kind::duplicate,
                         source + ": " + loc + ": duplicate scenario id '" + s.id + "'");
    }
    out.scenarios.push_back(std::move(s));
  }
  return out;
}

PredictionSet parse_predictions(std::string_view text, const std::string& source, LoadMode mode) {
  const json doc = parse_document(text, source);
  const Reader rd(source);
  const json& list = rd.array(doc, "$", "scenarios");
  const bool lenient = mode == LoadMode::lenient;

  PredictionSet out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string loc = scenario_loc(i);
    const json& sc = list[i];
    PredictionScenario s;
    try {
      s.id = rd.string(sc, loc, "id");
      rd.array(sc, loc, "segments");
    } catch (const DatasetError& e) {
      if (!lenient) throw;
      out.rejected.push_back(e.what());
      continue;
    }
    if (!ids.insert(s.id).second) {
      const std::string msg = source + ": " + loc + ": duplicate scenario id '" + s.id + "'";
      if (!lenient) throw DatasetError(DatasetError::Kind::duplicate, msg);
      out.rejected.push_back(msg);
      continue;
    }
    const json& segs = sc.at("segments");
    std::set<Phase> phases;
    for (std::size_t j = 0; j < segs.size(); ++j) {
      const std::string sloc = segment_loc(i, j);
      try {
        Segment seg = rd.segment(segs[j], sloc);
        if (!phases.insert(seg.phase).second) {
          throw DatasetError(DatasetError::Kind::duplicate,
                             source + ": " + sloc + ": duplicate phase '" +
                                 to_string(seg.phase) + "' in scenario '" + s.id + "'");
        }
        s.segments.push_back(std::move(seg));
      } catch (const DatasetError& e) {
        if (!lenient) throw;
        out.rejected.push_back(e.what());
      }
    }
    out.scenarios.push_back(std::move(s));
  }
  return out;
}

std::vector<VqaItem> parse_vqa_gold(std::string_view text, const std::string& source) {
  const json doc = parse_document(text, source);
  const Reader rd(source);
  const json& list = rd.array(doc, "$", "questions");

  std::vector<VqaItem> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string loc = "questions[" + std::to_string(i) + "]";
    const json& q = list[i];
    VqaItem item;
    item.id = rd.string(q, loc, "id");
    item.segment_id = rd.string(q, loc, "segment");
    item.question = rd.string(q, loc, "question");
    const json& opts = rd.array(q, loc, "options");
    for (std::size_t k = 0; k < opts.size(); ++k) {
      if (!opts[k].is_string()) {
        schema_error(source, loc + ".options[" + std::to_string(k) + "]", "expected a string");
      }
      item.options.push_back(opts[k].get<std::string>());
    }
    const json& correct = rd.member(q, loc, "correct");
    if (!correct.is_number_integer() || correct.get<long long>() < 0) {
      schema_error(source, loc + ".correct", "expected a non-negative integer");
    }
    item.gold = correct.get<std::size_t>();
    try {
      validate_item(item);
    } catch (const std::invalid_argument& e) {
      schema_error(source, loc, e.what());
    }
    if (!ids.insert(item.id).second) {
      throw DatasetError(DatasetError::Kind::duplicate,
                         source + ": " + loc + ": duplicate question id '" + item.id + "'");
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<VqaPrediction> parse_vqa_predictions(std::string_view text, const std::string& source) {
  const json doc = parse_document(text, source);
  const Reader rd(source);
  const json& list = rd.array(doc, "$", "answers");

  std::vector<VqaPrediction> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string loc = "answers[" + std::to_string(i) + "]";
    VqaPrediction p{rd.string(list[i], loc, "id"), rd.string(list[i], loc, "raw")};
    if (!ids.insert(p.id).second) {
      throw DatasetError(DatasetError::Kind::duplicate,
                         source + ": " + loc + ": duplicate prediction id '" + p.id + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

ScenarioSet load_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(read_file(path), path.string());
}

PredictionSet load_predictions(const std::filesystem::path& path, LoadMode mode) {
  return parse_predictions(read_file(path), path.string(), mode);
}

std::vector<VqaItem> load_vqa_gold(const std::filesystem::path& path) {
  return parse_vqa_gold(read_file(path), path.string());
}

std::vector<VqaPrediction> load_vqa_predictions(const std::filesystem::path& path) {
  return parse_vqa_predictions(read_file(path), path.string());
}

std::string serialize(const ScenarioSet& set) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : set.scenarios) {
    nlohmann::ordered_json segs = nlohmann::ordered_json::array();
    for (const auto& seg : s.segments) segs.push_back(segment_json(seg));
    list.push_back({{"id", s.id}, {"split", to_string(s.split)}, {"segments", segs}});
  }
  return nlohmann::ordered_json{{"scenarios", list}}.dump(2) + "\n";
}

std::string serialize(const PredictionSet& set) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : set.scenarios) {
    nlohmann::ordered_json segs = nlohmann::ordered_json::array();
    for (const auto& seg : s.segments) segs.push_back(segment_json(seg));
    list.push_back({{"id", s.id}, {"segments", segs}});
  }
  return nlohmann::ordered_json{{"scenarios", list}}.dump(2) + "\n";
}

PredictionSet as_predictions(const ScenarioSet& gt) {
  PredictionSet out;
  for (const auto& s : gt.scenarios) out.scenarios.push_back({s.id, s.segments});
  return out;
}

ValidationReport validate(const ScenarioSet& gt, const PredictionSet& pred) {
  std::set<SegmentKey> expected;
  for (const auto& s : gt.scenarios) {
    for (const auto& seg : s.segments) expected.insert({s.id, seg.phase});
  }
  std::set<SegmentKey> given;
  for (const auto& s : pred.scenarios) {
    for (const auto& seg : s.segments) given.insert({s.id, seg.phase});
  }

  ValidationReport report;
  std::set_difference(expected.begin(), expected.end(), given.begin(), given.end(),
                      std::back_inserter(report.missing_segments));
  std::set_difference(given.begin(), given.end(), expected.begin(), expected.end(),
                      std::back_inserter(report.extra_segments));
  report.malformed_entries = pred.rejected;
  return report;
}

}  // namespace tseval
