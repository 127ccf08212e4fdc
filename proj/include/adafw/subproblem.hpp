#ifndef ADAFW_SUBPROBLEM_HPP
#define ADAFW_SUBPROBLEM_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "adafw/adaptive_metric.hpp"
#include "adafw/feasible_set.hpp"

namespace adafw {

/// Local quadratic model around the anchor x_t,
///   Q(y) = <g, y - x_t> + (1 / (2 eta)) ||y - x_t||_H^2,
/// the objective's constant term dropped since only differences matter.
struct QuadraticModel {
  Vector anchor;             // x_t
  Vector gradient_estimate;  // g
  DiagonalMetric metric;     // H
  double learning_rate;      // eta

  void validate() const {
    if (gradient_estimate.size() != anchor.size() ||
        metric.entries.size() != anchor.size()) {
      throw std::invalid_argument("QuadraticModel: dimension mismatch");
    }
    if (!(learning_rate > 0.0)) {
      throw std::invalid_argument("QuadraticModel: learning rate must be positive");
    }
  }
};

inline Vector model_gradient(const QuadraticModel& model, const Vector& y) {
  return model.gradient_estimate +
         (1.0 / model.learning_rate) *
             model.metric.entries.cwiseProduct(y - model.anchor);
}

inline double model_value(const QuadraticModel& model, const Vector& y) {
  const Vector d = y - model.anchor;
  return model.gradient_estimate.dot(d) +
         metric_norm_sq(model.metric, d) / (2.0 * model.learning_rate);
}

/// Exact minimizer of Q along the segment [y, v], clamped to [0, gamma_cap].
/// When y = v in the metric the segment is a point and the step is 0.
inline double optimal_inner_step(const QuadraticModel& model, const Vector& y,
                                 const Vector& v, double gamma_cap) {
  const Vector d = y - v;
  const double denom = metric_norm_sq(model.metric, d);
  if (denom <= 0.0) return 0.0;
  const double unclamped =
      model.learning_rate * model_gradient(model, y).dot(d) / denom;
  return std::min(std::max(unclamped, 0.0), gamma_cap);
}

struct InnerLoopResult {
  Vector point;                     // y_K
  std::vector<double> model_values; // Q(y_0), ..., Q(y_K)
  std::vector<double> steps;        // gamma_0, ..., gamma_{K-1}
  long long feasibility_violations = 0;
};

/// K capped Frank-Wolfe steps on the model, started at the anchor.
inline InnerLoopResult inner_loop(const QuadraticModel& model,
                                  const FeasibleRegion& region, int K,
                                  double gamma_cap) {
  model.validate();
  if (K < 1) {
    throw std::invalid_argument("inner_loop: K must be at least 1");
  }
  if (!(gamma_cap >= 0.0 && gamma_cap <= 1.0)) {
    throw std::invalid_argument("inner_loop: gamma_cap must lie in [0, 1]");
  }
  InnerLoopResult result;
  result.point = model.anchor;
  result.model_values.reserve(static_cast<std::size_t>(K) + 1);
  result.steps.reserve(static_cast<std::size_t>(K));
  result.model_values.push_back(model_value(model, result.point));
  for (int k = 0; k < K; ++k) {
    const Vector v = region.lmo(model_gradient(model, result.point));
    const double gamma = optimal_inner_step(model, result.point, v, gamma_cap);
    result.point += gamma * (v - result.point);
    result.model_values.push_back(model_value(model, result.point));
    result.steps.push_back(gamma);
    if (!region.contains(result.point, 1e-9)) {
      ++result.feasibility_violations;
    }
  }
  return result;
}

/// max_{v in C} <grad Q(y), y - v>, evaluated through the LMO. Nonnegative,
/// zero exactly at the subproblem optimum, and an upper bound on
/// Q(y) - min Q since Q is convex.
inline double subproblem_duality_gap(const QuadraticModel& model,
                                     const FeasibleRegion& region,
                                     const Vector& y) {
  const Vector g = model_gradient(model, y);
  return g.dot(y - region.lmo(g));
}

}  // namespace adafw

#endif  // ADAFW_SUBPROBLEM_HPP
