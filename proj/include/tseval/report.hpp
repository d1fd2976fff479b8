#pragma once

// Table and leaderboard rendering. Output is a pure function of the input:
// fixed 4-decimal cells for markdown and csv, shortest round-trip numbers for
// json.

#include <string>
#include <string_view>
#include <vector>

#include "tseval/composite.hpp"

namespace tseval {

enum class Format { markdown, csv, json };

/// Throws std::invalid_argument for anything but markdown, csv or json.
Format parse_format(std::string_view name);
const char* to_string(Format format) noexcept;

struct ResultRow {
  std::string label;
  CaptionMetrics internal;
  CaptionMetrics external;
  double acc = 0.0;  // fraction
  double s2 = 0.0;   // fraction
};

struct TableOptions {
  /// Show Acc and S2 as percentages (58.6121 rather than 0.5861), the way
  /// challenge tables print them. json always carries fractions.
  bool percent = true;
  /// Omit the Acc and S2 columns.
  bool captions_only = false;
};

/// One row per entry with columns Model, BLEU-4_i, METEOR_i, ROUGE-L_i,
/// CIDEr_i, BLEU-4_e, METEOR_e, ROUGE-L_e, CIDEr_e, Acc, S2.
/// Throws std::invalid_argument for an empty row list or a negative or
/// non-finite value.
std::string render_table(const std::vector<ResultRow>& rows, Format format,
                         const TableOptions& options = {});

/// Parses the json produced by render_table.
std::vector<ResultRow> load_table_json(std::string_view text);

struct LeaderboardEntry {
  std::string name;
  double score = 0.0;
};

struct RankedEntry {
  int rank = 0;
  std::string name;
  double score = 0.0;
};

/// Descending by score, ties by name (byte order), ranks from 1. Non-finite
/// scores sort last.
std::vector<RankedEntry> rank_leaderboard(std::vector<LeaderboardEntry> entries);

std::string render_leaderboard(const std::vector<RankedEntry>& ranked, Format format);

/// "%.4f" with negative zero printed as 0.
std::string format_fixed4(double value);

/// RFC 4180 field quoting: quoted when the field holds a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

}  // namespace tseval
