#include "tseval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace tseval {

using ojson = nlohmann::ordered_json;

namespace {

const char* const kCaptionColumns[] = {"BLEU-4_i", "METEOR_i", "ROUGE-L_i", "CIDEr_i",
                                       "BLEU-4_e", "METEOR_e", "ROUGE-L_e", "CIDEr_e"};

std::vector<double> caption_cells(const ResultRow& row) {
  return {row.internal.bleu4, row.internal.meteor, row.internal.rouge_l, row.internal.cider,
          row.external.bleu4, row.external.meteor, row.external.rouge_l, row.external.cider};
}

void check_row(const ResultRow& row) {
  std::vector<double> values = caption_cells(row);
  values.push_back(row.acc);
  values.push_back(row.s2);
  for (const double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("render_table: row '" + row.label +
                                  "' has a negative or non-finite value");
    }
  }
}

std::string markdown_cell(std::string_view text) {
  std::string out;
  for (const char c : text) {
    if (c == '|') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out;
}

ojson metrics_json(const CaptionMetrics& m) {
  return ojson{{"bleu4", m.bleu4}, {"meteor", m.meteor}, {"rouge_l", m.rouge_l},
               {"cider", m.cider}};
}

CaptionMetrics metrics_from(const nlohmann::json& j) {
  return {j.at("bleu4").get<double>(), j.at("meteor").get<double>(),
          j.at("rouge_l").get<double>(), j.at("cider").get<double>()};
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "markdown") return Format::markdown;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected markdown, csv or json)");
}

const char* to_string(Format format) noexcept {
  switch (format) {
    case Format::markdown: return "markdown";
    case Format::csv: return "csv";
    case Format::json: return "json";
  }
  return "?";
}

std::string format_fixed4(double value) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0.0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_table(const std::vector<ResultRow>& rows, Format format,
                         const TableOptions& options) {
  if (rows.empty()) throw std::invalid_argument("render_table: no rows");
  for (const auto& r : rows) check_row(r);

  if (format == Format::json) {
    ojson list = ojson::array();
    for (const auto& r : rows) {
      ojson j{{"label", r.label}, {"internal", metrics_json(r.internal)},
              {"external", metrics_json(r.external)}};
      if (!options.captions_only) {
        j["acc"] = r.acc;
        j["s2"] = r.s2;
      }
      list.push_back(std::move(j));
    }
    return ojson{{"rows", list}}.dump(2) + "\n";
  }

  std::vector<std::string> header{"Model"};
  header.insert(header.end(), std::begin(kCaptionColumns), std::end(kCaptionColumns));
  if (!options.captions_only) {
    header.emplace_back("Acc");
    header.emplace_back("S2");
  }
  const double unit = options.percent ? 100.0 : 1.0;

  std::string out;
  const auto emit = [&](const std::vector<std::string>& cells) {
    if (format == Format::csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += "\r\n";
    } else {
      out += '|';
      for (const auto& c : cells) out += ' ' + c + " |";
      out += '\n';
    }
  };

  emit(header);
  if (format == Format::markdown) {
    std::vector<std::string> rule{"---"};
    rule.resize(header.size(), "---:");
    emit(rule);
  }
  for (const auto& r : rows) {
    std::vector<std::string> cells{format == Format::csv ? csv_field(r.label)
                                                         : markdown_cell(r.label)};
    for (const double v : caption_cells(r)) cells.push_back(format_fixed4(v));
    if (!options.captions_only) {
      cells.push_back(format_fixed4(r.acc * unit));
      cells.push_back(format_fixed4(r.s2 * unit));
    }
    emit(cells);
  }
  return out;
}

std::vector<ResultRow> load_table_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text.begin(), text.end());
  std::vector<ResultRow> rows;
  for (const auto& j : doc.at("rows")) {
    ResultRow r;
    r.label = j.at("label").get<std::string>();
    r.internal = metrics_from(j.at("internal"));
    r.external = metrics_from(j.at("external"));
    if (j.contains("acc")) r.acc = j.at("acc").get<double>();
    if (j.contains("s2")) r.s2 = j.at("s2").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<RankedEntry> rank_leaderboard(std::vector<LeaderboardEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
                     const bool fa = std::isfinite(a.score);
                     const bool fb = std::isfinite(b.score);
                     if (fa != fb) return fa;
                     if (fa && a.score != b.score) return a.score > b.score;
                     return a.name < b.name;
                   });
  std::vector<RankedEntry> out;
  out.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out.push_back({static_cast<int>(i + 1), std::move(entries[i].name), entries[i].score});
  }
  return out;
}

std::string render_leaderboard(const std::vector<RankedEntry>& ranked, Format format) {
  if (format == Format::json) {
    ojson list = ojson::array();
    for (const auto& e : ranked) {
      list.push_back({{"rank", e.rank}, {"name", e.name}, {"score", e.score}});
    }
    return ojson{{"leaderboard", list}}.dump(2) + "\n";
  }
  std::string out;
  if (format == Format::csv) {
    out += "Rank,Team Name,Score\r\n";
    for (const auto& e : ranked) {
      out += std::to_string(e.rank) + ',' + csv_field(e.name) + ',' + format_fixed4(e.score) +
             "\r\n";
    }
    return out;
  }
  out += "| Rank | Team Name | Score |\n| ---: | --- | ---: |\n";
  for (const auto& e : ranked) {
    out += "| " + std::to_string(e.rank) + " | " + markdown_cell(e.name) + " | " +
           format_fixed4(e.score) + " |\n";
  }
  return out;
}

}  // namespace tseval
