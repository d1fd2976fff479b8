#include "tseval/adaptation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tseval {

namespace {

void check_distribution(const std::vector<double>& p, const std::string& where) {
  if (p.empty()) throw std::invalid_argument(where + ": empty probability vector");
  double sum = 0.0;
  for (const double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(where + ": probabilities must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(where + ": probabilities sum to " + std::to_string(sum));
  }
}

// -ln p, with p == 0 mapped to +infinity rather than relying on log(0).
double neg_log(double p) {
  return p == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(p);
}

}  // namespace

LowRankAdapter::LowRankAdapter(Eigen::MatrixXd b, Eigen::MatrixXd a)
    : b_(std::move(b)), a_(std::move(a)) {
  const Eigen::Index d = b_.rows();
  const Eigen::Index r = b_.cols();
  if (r < 1 || d < 1) throw std::invalid_argument("LowRankAdapter: empty B");
  if (r > d) throw std::invalid_argument("LowRankAdapter: rank exceeds dimension");
  if (a_.rows() != r || a_.cols() != d) {
    throw std::invalid_argument("LowRankAdapter: A must be " + std::to_string(r) + "x" +
                                std::to_string(d));
  }
}

Eigen::MatrixXd lora_merge(const Eigen::MatrixXd& w, const LowRankAdapter& adapter) {
  if (w.rows() != w.cols() || w.rows() != adapter.dim()) {
    throw std::invalid_argument("lora_merge: W must be " + std::to_string(adapter.dim()) + "x" +
                                std::to_string(adapter.dim()));
  }
  return w + adapter.delta();
}

TokenDistribution::TokenDistribution(std::vector<std::vector<double>> steps)
    : steps_(std::move(steps)) {
  for (std::size_t t = 0; t < steps_.size(); ++t) {
    check_distribution(steps_[t], "TokenDistribution position " + std::to_string(t));
  }
}

void SegmentedSample::validate() const {
  if (pedestrian.empty() || vehicle.empty()) {
    throw std::invalid_argument("segment " + std::to_string(segment) + ": empty caption");
  }
}

double caption_nll(const CaptionDistributions& dists, std::span<const SegmentedSample> samples) {
  double loss = 0.0;
  for (const auto& s : samples) {
    s.validate();
    for (const CaptionKind kind : {CaptionKind::pedestrian, CaptionKind::vehicle}) {
      const auto& tokens = kind == CaptionKind::pedestrian ? s.pedestrian : s.vehicle;
      const std::string where = "segment " + std::to_string(s.segment) +
                                (kind == CaptionKind::pedestrian ? " pedestrian" : " vehicle");
      const auto it = dists.find({s.segment, kind});
      if (it == dists.end()) throw std::invalid_argument(where + ": no distribution");
      const TokenDistribution& dist = it->second;
      if (dist.positions() < tokens.size()) {
        throw std::invalid_argument(where + ": distribution covers " +
                                    std::to_string(dist.positions()) + " of " +
                                    std::to_string(tokens.size()) + " tokens");
      }
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        const auto& p = dist.at(t);
        if (tokens[t] >= p.size()) {
          throw std::invalid_argument(where + ": token id " + std::to_string(tokens[t]) +
                                      " outside vocabulary at position " + std::to_string(t));
        }
        loss += neg_log(p[tokens[t]]);
      }
    }
  }
  return loss;
}

double vqa_nll(std::span<const std::vector<double>> answer_dists,
               std::span<const std::size_t> gold) {
  if (answer_dists.size() != gold.size()) {
    throw std::invalid_argument("vqa_nll: " + std::to_string(answer_dists.size()) +
                                " distributions for " + std::to_string(gold.size()) + " answers");
  }
  double loss = 0.0;
  for (std::size_t j = 0; j < gold.size(); ++j) {
    const std::string where = "question " + std::to_string(j);
    const auto& p = answer_dists[j];
    if (p.size() < 2) throw std::invalid_argument(where + ": needs at least 2 options");
    check_distribution(p, where);
    if (gold[j] >= p.size()) throw std::invalid_argument(where + ": gold index out of range");
    loss += neg_log(p[gold[j]]);
  }
  return loss;
}

}  // namespace tseval
