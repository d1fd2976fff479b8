#include "tseval/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace tseval {

using ojson = nlohmann::ordered_json;

const char* to_string(Perspective p) noexcept {
  return p == Perspective::pedestrian ? "pedestrian" : "vehicle";
}

void ScoringConfig::validate() const {
  meteor.validate();
  if (!(cider.scale > 0.0)) throw std::invalid_argument("cider scale must be > 0");
  if (!(cider.sigma > 0.0)) throw std::invalid_argument("cider sigma must be > 0");
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t n_threads = std::min(std::max<std::size_t>(workers, 1), count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct CaptionJob {
  CaptionScore* out;
  TokenSequence candidate;
  std::vector<TokenSequence> references;  // one ground-truth caption
  const CiderCorpusIdf* idf;
};

const std::string& caption_of(const Segment& s, Perspective p) {
  return p == Perspective::pedestrian ? s.pedestrian_caption : s.vehicle_caption;
}

SplitScores reduce_split(Split split, const std::vector<CaptionScore>& captions,
                         std::size_t segments) {
  SplitScores out{split, {}, segments};
  std::size_t n = 0;
  CaptionMetrics sum;
  for (const auto& c : captions) {
    if (c.split != split) continue;
    sum.bleu4 += c.metrics.bleu4;
    sum.meteor += c.metrics.meteor;
    sum.rouge_l += c.metrics.rouge_l;
    sum.cider += c.metrics.cider;
    ++n;
  }
  if (n == 0) return out;
  const double d = static_cast<double>(n);
  out.metrics = {sum.bleu4 / d, sum.meteor / d, sum.rouge_l / d, sum.cider / d};
  return out;
}

ojson metrics_json(const CaptionMetrics& m) {
  return ojson{{"bleu4", m.bleu4}, {"meteor", m.meteor}, {"rouge_l", m.rouge_l},
               {"cider", m.cider}};
}

ojson split_json(const SplitScores& s) {
  ojson j = metrics_json(s.metrics);
  j["segments"] = s.segments;
  return j;
}

ojson config_json(const ScoringConfig& c) {
  return ojson{
      {"tokenizer",
       {{"lowercase", c.tokenizer.lowercase},
        {"punctuation",
         c.tokenizer.punctuation == PunctuationPolicy::separate ? "separate" : "strip"}}},
      {"bleu_zero_policy",
       c.bleu_policy == ZeroPrecisionPolicy::hard_zero ? "hard-zero" : "epsilon"},
      {"rouge_convention",
       c.rouge_convention == BetaConvention::paper ? "paper" : "recall-weighted"},
      {"meteor", {{"alpha", c.meteor.alpha}, {"beta", c.meteor.beta}, {"gamma", c.meteor.gamma}}},
      {"cider",
       {{"scale", c.cider.scale},
        {"length_penalty", c.cider.length_penalty},
        {"sigma", c.cider.sigma}}},
      {"aggregation", c.aggregation == AggregationMode::unweighted ? "unweighted" : "weighted"},
      {"strict", c.strict},
  };
}

ojson captions_json(const std::vector<CaptionScore>& captions) {
  ojson list = ojson::array();
  for (const auto& c : captions) {
    ojson j{{"scenario", c.key.scenario},
            {"phase", to_string(c.key.phase)},
            {"perspective", to_string(c.perspective)},
            {"split", to_string(c.split)},
            {"predicted", c.predicted}};
    j.update(metrics_json(c.metrics));
    list.push_back(std::move(j));
  }
  return list;
}

std::string caption_rows_markdown(const std::vector<CaptionScore>& captions) {
  std::string out =
      "| Scenario | Phase | Perspective | Split | BLEU-4 | METEOR | ROUGE-L | CIDEr |\n"
      "| --- | --- | --- | --- | ---: | ---: | ---: | ---: |\n";
  for (const auto& c : captions) {
    out += "| " + c.key.scenario + " | " + to_string(c.key.phase) + " | " +
           to_string(c.perspective) + " | " + to_string(c.split) + " | " +
           format_fixed4(c.metrics.bleu4) + " | " + format_fixed4(c.metrics.meteor) + " | " +
           format_fixed4(c.metrics.rouge_l) + " | " + format_fixed4(c.metrics.cider) + " |\n";
  }
  return out;
}

std::string caption_rows_csv(const std::vector<CaptionScore>& captions) {
  std::string out = "scenario,phase,perspective,split,bleu4,meteor,rouge_l,cider\r\n";
  for (const auto& c : captions) {
    out += csv_field(c.key.scenario) + ',' + to_string(c.key.phase) + ',' +
           to_string(c.perspective) + ',' + to_string(c.split) + ',' +
           format_fixed4(c.metrics.bleu4) + ',' + format_fixed4(c.metrics.meteor) + ',' +
           format_fixed4(c.metrics.rouge_l) + ',' + format_fixed4(c.metrics.cider) + "\r\n";
  }
  return out;
}

ResultRow make_row(const CaptionEvaluation& eval, const std::string& label, double acc,
                   double s2) {
  return {label, eval.internal.metrics, eval.external.metrics, acc, s2};
}

}  // namespace

CaptionEvaluation score_captions(const ScenarioSet& gt, const PredictionSet& pred,
                                 const ScoringConfig& config) {
  config.validate();

  std::map<SegmentKey, const Segment*> predicted;
  for (const auto& s : pred.scenarios) {
    for (const auto& seg : s.segments) predicted.emplace(SegmentKey{s.id, seg.phase}, &seg);
  }

  // Ground truth in canonical order: split, scenario id, phase.
  struct GtSegment {
    SegmentKey key;
    Split split;
    const Segment* segment;
  };
  std::vector<GtSegment> order;
  for (const auto& s : gt.scenarios) {
    for (const auto& seg : s.segments) order.push_back({{s.id, seg.phase}, s.split, &seg});
  }
  std::sort(order.begin(), order.end(), [](const GtSegment& a, const GtSegment& b) {
    if (a.split != b.split) return a.split < b.split;
    return a.key < b.key;
  });

  CaptionEvaluation eval;
  eval.validation = validate(gt, pred);
  eval.captions.reserve(order.size() * 2);

  std::vector<std::vector<TokenSequence>> refs_by_caption;
  refs_by_caption.reserve(order.size() * 2);
  std::size_t internal_segments = 0;
  for (const auto& g : order) {
    (g.split == Split::internal ? internal_segments : eval.external.segments)++;
    for (const Perspective p : {Perspective::pedestrian, Perspective::vehicle}) {
      CaptionScore cs;
      cs.key = g.key;
      cs.split = g.split;
      cs.perspective = p;
      cs.predicted = predicted.count(g.key) > 0;
      eval.captions.push_back(cs);
      refs_by_caption.push_back({tokenize(caption_of(*g.segment, p), config.tokenizer)});
    }
  }
  eval.internal.segments = internal_segments;

  // Idf per split; each caption's reference set is one document.
  std::map<Split, CiderCorpusIdf> idf;
  for (const Split split : {Split::internal, Split::external}) {
    std::vector<ReferenceSet> corpus;
    for (std::size_t i = 0; i < eval.captions.size(); ++i) {
      if (eval.captions[i].split == split) corpus.push_back(refs_by_caption[i]);
    }
    if (!corpus.empty()) idf.emplace(split, compute_idf(corpus));
  }

  std::vector<CaptionJob> jobs;
  jobs.reserve(eval.captions.size());
  for (std::size_t i = 0; i < eval.captions.size(); ++i) {
    auto& cs = eval.captions[i];
    const auto it = predicted.find(cs.key);
    TokenSequence cand;
    if (it != predicted.end()) {
      cand = tokenize(caption_of(*it->second, cs.perspective), config.tokenizer);
    }
    jobs.push_back({&cs, std::move(cand), std::move(refs_by_caption[i]), &idf.at(cs.split)});
  }

  parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
    const CaptionJob& job = jobs[i];
    CaptionMetrics& m = job.out->metrics;
    m.bleu4 = bleu4(job.candidate, job.references, config.bleu_policy).score;
    m.meteor = meteor(job.candidate, job.references, config.meteor).score;
    m.rouge_l = rouge_l(job.candidate, job.references.front(), config.rouge_convention).score;
    m.cider = cider(job.candidate, job.references, *job.idf, config.cider).score;
  });

  eval.internal = reduce_split(Split::internal, eval.captions, eval.internal.segments);
  eval.external = reduce_split(Split::external, eval.captions, eval.external.segments);
  eval.aggregate = aggregate_splits(eval.internal, eval.external, config.aggregation);
  eval.cap_score = cap_score(eval.aggregate);
  return eval;
}

AccuracyResult score_vqa(const std::vector<VqaItem>& items,
                         const std::vector<VqaPrediction>& predictions,
                         const ScoringConfig& config) {
  return accuracy(items, predictions,
                  config.strict ? MissingPolicy::strict : MissingPolicy::missing_is_wrong);
}

std::string render_caption_report(const CaptionEvaluation& eval, const ScoringConfig& config,
                                  Format format, const std::string& label) {
  const std::vector<ResultRow> rows{make_row(eval, label, 0.0, 0.0)};
  TableOptions opts;
  opts.captions_only = true;
  switch (format) {
    case Format::json: {
      ojson doc{{"config", config_json(config)},
                {"splits",
                 {{"internal", split_json(eval.internal)},
                  {"external", split_json(eval.external)}}},
                {"aggregate", metrics_json(eval.aggregate)},
                {"cap_score", eval.cap_score},
                {"captions", captions_json(eval.captions)}};
      return doc.dump(2) + "\n";
    }
    case Format::csv:
      return render_table(rows, format, opts) + "\r\n" + caption_rows_csv(eval.captions);
    case Format::markdown:
      break;
  }
  return render_table(rows, format, opts) + "\nCap_Score: " + format_fixed4(eval.cap_score) +
         "\n\n" + caption_rows_markdown(eval.captions);
}

std::string render_vqa_report(const AccuracyResult& result, Format format) {
  switch (format) {
    case Format::json:
      return ojson{{"total", result.total}, {"correct", result.correct}, {"acc", result.acc}}
                 .dump(2) +
             "\n";
    case Format::csv:
      return "total,correct,acc\r\n" + std::to_string(result.total) + ',' +
             std::to_string(result.correct) + ',' + format_fixed4(result.acc * 100.0) + "\r\n";
    case Format::markdown:
      break;
  }
  return "| Total | Correct | Acc |\n| ---: | ---: | ---: |\n| " + std::to_string(result.total) +
         " | " + std::to_string(result.correct) + " | " + format_fixed4(result.acc * 100.0) +
         " |\n";
}

std::string render_final_report(const CaptionEvaluation& eval, const AccuracyResult* vqa,
                                const FinalScore& final, const ScoringConfig& config,
                                Format format, const std::string& label) {
  const std::vector<ResultRow> rows{make_row(eval, label, final.acc, final.s2)};
  const FinalScore pct = final.percent();
  switch (format) {
    case Format::json: {
      ojson doc{{"config", config_json(config)},
                {"splits",
                 {{"internal", split_json(eval.internal)},
                  {"external", split_json(eval.external)}}},
                {"aggregate", metrics_json(eval.aggregate)}};
      doc["vqa"] = vqa ? ojson{{"total", vqa->total}, {"correct", vqa->correct}, {"acc", vqa->acc}}
                       : ojson(nullptr);
      doc["final"] = {{"cap_score", final.cap_score}, {"acc", final.acc}, {"s2", final.s2}};
      doc["final_percent"] = {{"cap_score", pct.cap_score}, {"acc", pct.acc}, {"s2", pct.s2}};
      doc["captions"] = captions_json(eval.captions);
      return doc.dump(2) + "\n";
    }
    case Format::csv:
      return render_table(rows, format);
    case Format::markdown:
      break;
  }
  return render_table(rows, format) + "\nCap_Score: " + format_fixed4(final.cap_score) +
         "\nAcc: " + format_fixed4(final.acc) + " (" + format_fixed4(pct.acc) + "%)" +
         "\nS2: " + format_fixed4(final.s2) + " (" + format_fixed4(pct.s2) + "%)\n";
}

std::string render_validation_report(const ValidationReport& report, Format format) {
  if (format == Format::json) {
    ojson missing = ojson::array(), extra = ojson::array();
    for (const auto& k : report.missing_segments) missing.push_back(k.str());
    for (const auto& k : report.extra_segments) extra.push_back(k.str());
    return ojson{{"valid", report.empty()},
                 {"missing_segments", missing},
                 {"extra_segments", extra},
                 {"malformed_entries", report.malformed_entries}}
               .dump(2) +
           "\n";
  }
  const char* eol = format == Format::csv ? "\r\n" : "\n";
  std::string out;
  if (format == Format::csv) {
    out += std::string("kind,entry") + eol;
    for (const auto& k : report.missing_segments) out += "missing," + csv_field(k.str()) + eol;
    for (const auto& k : report.extra_segments) out += "extra," + csv_field(k.str()) + eol;
    for (const auto& m : report.malformed_entries) out += "malformed," + csv_field(m) + eol;
    return out;
  }
  if (report.empty()) return "Submission is complete and well-formed.\n";
  for (const auto& k : report.missing_segments) out += "missing: " + k.str() + "\n";
  for (const auto& k : report.extra_segments) out += "extra: " + k.str() + "\n";
  for (const auto& m : report.malformed_entries) out += "malformed: " + m + "\n";
  return out;
}

}  // namespace tseval
