#include "tseval/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "tseval/pipeline.hpp"

namespace tseval {

namespace {

struct Options {
  std::string gt_captions;
  std::string pred_captions;
  std::string gt_vqa;
  std::string pred_vqa;
  std::string output;
  std::string format = "markdown";
  std::string label = "submission";
  std::string bleu_policy = "hard-zero";
  std::string rouge_convention = "paper";
  std::string aggregation = "unweighted";
  std::string punctuation = "separate";
  bool no_lowercase = false;
  bool strict = false;
  bool cider_length_penalty = false;
  double cider_scale = 10.0;
  double meteor_alpha = 0.9;
  double meteor_beta = 3.0;
  double meteor_gamma = 0.5;
  std::optional<double> acc_override;
  std::optional<std::size_t> workers;
};

std::size_t default_workers() {
  if (const char* env = std::getenv(kWorkersEnv); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw std::invalid_argument(std::string(kWorkersEnv) + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScoringConfig make_config(const Options& o) {
  ScoringConfig c;
  c.tokenizer.lowercase = !o.no_lowercase;
  c.tokenizer.punctuation =
      o.punctuation == "strip" ? PunctuationPolicy::strip : PunctuationPolicy::separate;
  c.bleu_policy =
      o.bleu_policy == "epsilon" ? ZeroPrecisionPolicy::epsilon : ZeroPrecisionPolicy::hard_zero;
  c.rouge_convention = o.rouge_convention == "recall-weighted" ? BetaConvention::recall_weighted
                                                               : BetaConvention::paper;
  c.meteor = {o.meteor_alpha, o.meteor_beta, o.meteor_gamma};
  c.cider.scale = o.cider_scale;
  c.cider.length_penalty = o.cider_length_penalty;
  c.aggregation =
      o.aggregation == "weighted" ? AggregationMode::weighted : AggregationMode::unweighted;
  c.strict = o.strict;
  c.workers = o.workers ? *o.workers : default_workers();
  c.validate();
  return c;
}

void emit(const Options& o, std::ostream& out, const std::string& doc) {
  if (o.output.empty()) {
    out << doc;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw DatasetError(DatasetError::Kind::io, o.output + ": cannot open for writing");
  f << doc;
  if (!f) throw DatasetError(DatasetError::Kind::io, o.output + ": write failed");
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw std::invalid_argument(std::string(flag) + " is required");
}

struct CaptionInputs {
  ScenarioSet gt;
  PredictionSet pred;
};

CaptionInputs load_captions(const Options& o) {
  require(o.gt_captions, "--gt-captions");
  require(o.pred_captions, "--pred-captions");
  return {load_ground_truth(o.gt_captions), load_predictions(o.pred_captions)};
}

// Returns false (after printing the report) when strict mode rejects the submission.
bool strict_gate(const Options& o, const ValidationReport& report, Format format,
                 std::ostream& out, std::ostream& err) {
  if (!o.strict || report.empty()) return true;
  err << "tseval: submission failed validation\n";
  out << render_validation_report(report, format);
  return false;
}

int cmd_score_captions(const Options& o, std::ostream& out, std::ostream& err) {
  const ScoringConfig config = make_config(o);
  const Format format = parse_format(o.format);
  const CaptionInputs in = load_captions(o);
  const CaptionEvaluation eval = score_captions(in.gt, in.pred, config);
  if (!strict_gate(o, eval.validation, format, out, err)) return kExitValidation;
  emit(o, out, render_caption_report(eval, config, format, o.label));
  return kExitOk;
}

int cmd_score_vqa(const Options& o, std::ostream& out, std::ostream&) {
  const ScoringConfig config = make_config(o);
  const Format format = parse_format(o.format);
  require(o.gt_vqa, "--gt-vqa");
  require(o.pred_vqa, "--pred-vqa");
  const AccuracyResult r = score_vqa(load_vqa_gold(o.gt_vqa), load_vqa_predictions(o.pred_vqa),
                                     config);
  emit(o, out, render_vqa_report(r, format));
  return kExitOk;
}

int cmd_score_all(const Options& o, std::ostream& out, std::ostream& err) {
  const ScoringConfig config = make_config(o);
  const Format format = parse_format(o.format);
  if (o.acc_override && !(*o.acc_override >= 0.0 && *o.acc_override <= 1.0)) {
    throw std::invalid_argument("--acc-override must be in [0,1]");
  }
  const CaptionInputs in = load_captions(o);

  std::optional<AccuracyResult> vqa;
  if (!o.acc_override) {
    require(o.gt_vqa, "--gt-vqa");
    require(o.pred_vqa, "--pred-vqa");
    vqa = score_vqa(load_vqa_gold(o.gt_vqa), load_vqa_predictions(o.pred_vqa), config);
  }

  const CaptionEvaluation eval = score_captions(in.gt, in.pred, config);
  if (!strict_gate(o, eval.validation, format, out, err)) return kExitValidation;

  const double acc = o.acc_override ? *o.acc_override : vqa->acc;
  const FinalScore final = s2(eval.cap_score, acc);
  emit(o, out, render_final_report(eval, vqa ? &*vqa : nullptr, final, config, format, o.label));
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream&) {
  const Format format = parse_format(o.format);
  require(o.gt_captions, "--gt-captions");
  require(o.pred_captions, "--pred-captions");
  const ScenarioSet gt = load_ground_truth(o.gt_captions);
  const PredictionSet pred = load_predictions(o.pred_captions, LoadMode::lenient);
  ValidationReport report = validate(gt, pred);

  if (!o.gt_vqa.empty() || !o.pred_vqa.empty()) {
    require(o.gt_vqa, "--gt-vqa");
    require(o.pred_vqa, "--pred-vqa");
    const auto items = load_vqa_gold(o.gt_vqa);
    const auto answers = load_vqa_predictions(o.pred_vqa);
    std::set<std::string> known, answered;
    for (const auto& q : items) known.insert(q.id);
    for (const auto& a : answers) {
      answered.insert(a.id);
      if (!known.count(a.id)) {
        report.malformed_entries.push_back("answer for unknown question id '" + a.id + "'");
      }
    }
    for (const auto& q : items) {
      if (!answered.count(q.id)) {
        report.malformed_entries.push_back("no answer for question id '" + q.id + "'");
      }
    }
  }

  emit(o, out, render_validation_report(report, format));
  return report.empty() ? kExitOk : kExitValidation;
}

void add_caption_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--gt-captions", o.gt_captions, "Ground-truth caption file (JSON)");
  cmd->add_option("--pred-captions", o.pred_captions, "Predicted caption file (JSON)");
}

void add_vqa_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--gt-vqa", o.gt_vqa, "VQA gold file (JSON)");
  cmd->add_option("--pred-vqa", o.pred_vqa, "VQA prediction file (JSON)");
}

void add_scoring_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--cider-scale", o.cider_scale, "Multiplier applied to CIDEr")
      ->capture_default_str();
  cmd->add_flag("--cider-length-penalty", o.cider_length_penalty,
                "Apply the CIDEr-D Gaussian length penalty (sigma 6)");
  cmd->add_option("--bleu-zero-policy", o.bleu_policy, "hard-zero or epsilon")
      ->check(CLI::IsMember({"hard-zero", "epsilon"}))
      ->capture_default_str();
  cmd->add_option("--rouge-convention", o.rouge_convention, "paper or recall-weighted")
      ->check(CLI::IsMember({"paper", "recall-weighted"}))
      ->capture_default_str();
  cmd->add_option("--meteor-alpha", o.meteor_alpha)->capture_default_str();
  cmd->add_option("--meteor-beta", o.meteor_beta)->capture_default_str();
  cmd->add_option("--meteor-gamma", o.meteor_gamma)->capture_default_str();
  cmd->add_option("--aggregation", o.aggregation, "Split combination: unweighted or weighted")
      ->check(CLI::IsMember({"unweighted", "weighted"}))
      ->capture_default_str();
  cmd->add_option("--punctuation", o.punctuation, "Tokenizer punctuation policy: separate or strip")
      ->check(CLI::IsMember({"separate", "strip"}))
      ->capture_default_str();
  cmd->add_flag("--no-lowercase", o.no_lowercase, "Keep letter case when tokenizing");
  cmd->add_flag("--strict", o.strict, "Fail (exit 1) on an incomplete submission");
  cmd->add_option("--workers", o.workers,
                  std::string("Worker threads (default: $") + kWorkersEnv + " or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--label", o.label, "Row label in rendered tables")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "markdown, csv or json")->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Write the document here instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caption and VQA scoring for traffic-safety video benchmarks", "tseval"};
  app.require_subcommand(1);
  Options o;

  auto* captions =
      app.add_subcommand("score-captions", "BLEU-4, METEOR, ROUGE-L and CIDEr per split");
  add_caption_flags(captions, o);
  add_scoring_flags(captions, o);
  add_output_flags(captions, o);

  auto* vqa = app.add_subcommand("score-vqa", "Multiple-choice VQA top-1 accuracy");
  add_vqa_flags(vqa, o);
  add_scoring_flags(vqa, o);
  add_output_flags(vqa, o);

  auto* all = app.add_subcommand("score-all", "Captions, VQA, Cap_Score and S2");
  add_caption_flags(all, o);
  add_vqa_flags(all, o);
  add_scoring_flags(all, o);
  add_output_flags(all, o);
  all->add_option("--acc-override", o.acc_override,
                  "Use this accuracy (fraction in [0,1]) instead of scoring VQA files");

  auto* val = app.add_subcommand("validate", "Check a submission against the ground truth");
  add_caption_flags(val, o);
  add_vqa_flags(val, o);
  add_output_flags(val, o);

  // CLI11 expects argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Prints help for --help and the parse error otherwise.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (captions->parsed()) return cmd_score_captions(o, out, err);
    if (vqa->parsed()) return cmd_score_vqa(o, out, err);
    if (all->parsed()) return cmd_score_all(o, out, err);
    return cmd_validate(o, out, err);
  } catch (const ValidationError& e) {
    err << "tseval: validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "tseval: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace tseval
