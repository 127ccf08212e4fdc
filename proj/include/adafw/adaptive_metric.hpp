#ifndef ADAFW_ADAPTIVE_METRIC_HPP
#define ADAFW_ADAPTIVE_METRIC_HPP

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace adafw {

/// Positive diagonal matrix H, stored as its diagonal. Induces the norm
/// ||d||_H^2 = sum_i h_i d_i^2.
struct DiagonalMetric {
  Eigen::VectorXd entries;

  Eigen::Index dim() const { return entries.size(); }
};

inline double metric_norm_sq(const DiagonalMetric& h, const Eigen::VectorXd& d) {
  if (h.entries.size() != d.size()) {
    throw std::invalid_argument("metric_norm_sq: dimension mismatch");
  }
  return h.entries.cwiseProduct(d.cwiseAbs2()).sum();
}

/// Entrywise clamp of the metric diagonal to [lambda_minus, lambda_plus].
inline DiagonalMetric clip_metric(const DiagonalMetric& h, double lambda_minus,
                                  double lambda_plus) {
  if (!(lambda_minus > 0.0) || !(lambda_minus <= lambda_plus)) {
    throw std::invalid_argument("clip_metric: bounds must satisfy 0 < lo <= hi");
  }
  return DiagonalMetric{h.entries.cwiseMax(lambda_minus).cwiseMin(lambda_plus)};
}

/// Clip bounds that may only tighten over iterations:
/// 0 < lo_t <= lo_{t+1} <= hi_{t+1} <= hi_t.
class ClipSchedule {
 public:
  ClipSchedule(double lambda_minus, double lambda_plus)
      : lo_(lambda_minus), hi_(lambda_plus) {
    if (!(lo_ > 0.0) || !(lo_ <= hi_)) {
      throw std::invalid_argument("ClipSchedule: bounds must satisfy 0 < lo <= hi");
    }
  }

  void tighten(double lambda_minus, double lambda_plus) {
    if (lambda_minus < lo_ || lambda_plus > hi_) {
      throw std::invalid_argument("ClipSchedule: bounds may only tighten");
    }
    if (!(lambda_minus > 0.0) || !(lambda_minus <= lambda_plus)) {
      throw std::invalid_argument("ClipSchedule: bounds must satisfy 0 < lo <= hi");
    }
    lo_ = lambda_minus;
    hi_ = lambda_plus;
  }

  double lambda_minus() const { return lo_; }
  double lambda_plus() const { return hi_; }
  double condition_bound() const { return hi_ / lo_; }  // kappa

  DiagonalMetric apply(const DiagonalMetric& h) const {
    return clip_metric(h, lo_, hi_);
  }

 private:
  double lo_;
  double hi_;
};

/// Running sum of squared gradient entries; the metric diagonal is
/// delta + sqrt(sum of squares), so entries never decrease.
class AdaGradAccumulator {
 public:
  explicit AdaGradAccumulator(Eigen::Index dim, double delta = 1e-8)
      : sum_of_squares_(Eigen::VectorXd::Zero(dim)), delta_(delta) {
    if (!(delta > 0.0)) {
      throw std::invalid_argument("AdaGradAccumulator: delta must be positive");
    }
  }

  DiagonalMetric update(const Eigen::VectorXd& g) {
    if (g.size() != sum_of_squares_.size()) {
      throw std::invalid_argument("adagrad update: dimension mismatch");
    }
    if (!g.allFinite()) {
      throw std::invalid_argument("adagrad update: non-finite gradient");
    }
    sum_of_squares_ += g.cwiseAbs2();
    return metric();
  }

  DiagonalMetric metric() const {
    return DiagonalMetric{
        (sum_of_squares_.cwiseSqrt().array() + delta_).matrix()};
  }

  const Eigen::VectorXd& sum_of_squares() const { return sum_of_squares_; }
  double delta() const { return delta_; }

 private:
  Eigen::VectorXd sum_of_squares_;
  double delta_;
};

/// Momentum / second-moment / running-max triple. The running max makes the
/// resulting metric entries nondecreasing, and beta_m < sqrt(beta_s) is
/// required for the momentum to decay faster than the second moment.
class AmsGradState {
 public:
  AmsGradState(Eigen::Index dim, double beta_m = 0.9, double beta_s = 0.99,
               double delta = 1e-8)
      : momentum_(Eigen::VectorXd::Zero(dim)),
        second_moment_(Eigen::VectorXd::Zero(dim)),
        max_second_moment_(Eigen::VectorXd::Zero(dim)),
        beta_m_(beta_m),
        beta_s_(beta_s),
        delta_(delta) {
    if (!(beta_m > 0.0 && beta_m < 1.0) || !(beta_s > 0.0 && beta_s < 1.0)) {
      throw std::invalid_argument("AmsGradState: betas must lie in (0, 1)");
    }
    if (!(beta_m < std::sqrt(beta_s))) {
      throw std::invalid_argument("AmsGradState: requires beta_m < sqrt(beta_s)");
    }
    if (!(delta > 0.0)) {
      throw std::invalid_argument("AmsGradState: delta must be positive");
    }
  }

  struct Update {
    Eigen::VectorXd momentum;
    DiagonalMetric metric;
  };

  Update update(const Eigen::VectorXd& g) {
    if (g.size() != momentum_.size()) {
      throw std::invalid_argument("amsgrad update: dimension mismatch");
    }
    if (!g.allFinite()) {
      throw std::invalid_argument("amsgrad update: non-finite gradient");
    }
    momentum_ = beta_m_ * momentum_ + (1.0 - beta_m_) * g;
    second_moment_ = beta_s_ * second_moment_ + (1.0 - beta_s_) * g.cwiseAbs2();
    max_second_moment_ = max_second_moment_.cwiseMax(second_moment_);
    return Update{momentum_, metric()};
  }

  DiagonalMetric metric() const {
    return DiagonalMetric{
        (max_second_moment_.cwiseSqrt().array() + delta_).matrix()};
  }

  const Eigen::VectorXd& momentum() const { return momentum_; }
  const Eigen::VectorXd& second_moment() const { return second_moment_; }
  const Eigen::VectorXd& max_second_moment() const { return max_second_moment_; }
  double delta() const { return delta_; }

 private:
  Eigen::VectorXd momentum_;
  Eigen::VectorXd second_moment_;
  Eigen::VectorXd max_second_moment_;
  double beta_m_;
  double beta_s_;
  double delta_;
};

}  // namespace adafw

#endif  // ADAFW_ADAPTIVE_METRIC_HPP
