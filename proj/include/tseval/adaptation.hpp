#pragma once

// Desk-scale versions of the training objectives behind the captioning and
// VQA adapters.
//
// Each model weight W (d x d) is adapted as W' = W + B A with B (d x r) and
// A (r x d). The captioning adapter minimizes caption_nll and the VQA adapter
// minimizes vqa_nll; the two are trained separately, so the objectives share
// no terms. Only the losses are provided here, no optimizer.
//
// All logarithms are natural; losses are in nats.

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tseval {

class LowRankAdapter {
 public:
  /// Throws std::invalid_argument unless b is d x r, a is r x d, 1 <= r <= d.
  LowRankAdapter(Eigen::MatrixXd b, Eigen::MatrixXd a);

  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::MatrixXd& a() const { return a_; }
  Eigen::Index rank() const { return b_.cols(); }
  Eigen::Index dim() const { return b_.rows(); }

  /// The update B A.
  Eigen::MatrixXd delta() const { return b_ * a_; }

 private:
  Eigen::MatrixXd b_;
  Eigen::MatrixXd a_;
};

/// W + B A. Throws std::invalid_argument unless W is square with the
/// adapter's dimension.
Eigen::MatrixXd lora_merge(const Eigen::MatrixXd& w, const LowRankAdapter& adapter);

/// Per-position probability vectors over a finite vocabulary.
class TokenDistribution {
 public:
  /// Throws std::invalid_argument if any vector is empty, has a negative or
  /// non-finite entry, or does not sum to 1 within 1e-9.
  explicit TokenDistribution(std::vector<std::vector<double>> steps);

  std::size_t positions() const { return steps_.size(); }
  const std::vector<double>& at(std::size_t t) const { return steps_.at(t); }

 private:
  std::vector<std::vector<double>> steps_;
};

enum class CaptionKind { pedestrian, vehicle };

/// One behavioral segment with its two captions as vocabulary ids.
struct SegmentedSample {
  std::size_t segment = 1;  // 1-based
  std::vector<std::size_t> pedestrian;
  std::vector<std::size_t> vehicle;

  /// Throws std::invalid_argument if either caption is empty.
  void validate() const;
};

/// Model distributions keyed by (segment, caption kind); position t of the
/// distribution is the prediction for token t of that caption.
using CaptionDistributions = std::map<std::pair<std::size_t, CaptionKind>, TokenDistribution>;

/// -sum_i sum_k sum_t ln P(c_k^{i,t}). Returns +infinity when a realized token
/// has probability 0. Throws std::invalid_argument for a missing (i, k, t)
/// slot or a token id outside the distribution's vocabulary.
double caption_nll(const CaptionDistributions& dists, std::span<const SegmentedSample> samples);

/// -sum_j ln P(a_j). Returns +infinity when a gold answer has probability 0.
/// Throws std::invalid_argument for mismatched lengths, K < 2, an invalid
/// distribution or an out-of-range gold index.
double vqa_nll(std::span<const std::vector<double>> answer_dists,
               std::span<const std::size_t> gold);

}  // namespace tseval
