#ifndef ADAFW_ESTIMATORS_HPP
#define ADAFW_ESTIMATORS_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "adafw/objectives.hpp"

namespace adafw {

enum class EstimatorKind { sfw, svrf, spider_fw, orgfw, csfw };

/// Snapshot iterations for the variance-reduced estimators.
class SnapshotTimes {
 public:
  /// s_k = 2^{k + k0} - 2^{k0}; k0 > 0 delays the early full gradients.
  static SnapshotTimes geometric(int k0) {
    if (k0 < 0) throw std::invalid_argument("SnapshotTimes: k0 must be >= 0");
    SnapshotTimes s;
    s.offset_ = 1LL << k0;
    return s;
  }

  /// Snapshot whenever t + 1 is a power of two (epoch-doubling restarts).
  static SnapshotTimes epoch_doubling() { return geometric(0); }

  static SnapshotTimes explicit_times(std::vector<long long> times) {
    if (times.empty() || times.front() != 0) {
      throw std::invalid_argument("SnapshotTimes: first snapshot must be t = 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (times[i] <= times[i - 1]) {
        throw std::invalid_argument("SnapshotTimes: must be strictly increasing");
      }
    }
    SnapshotTimes s;
    s.times_ = std::move(times);
    return s;
  }

  bool is_snapshot(long long t) const {
    if (!times_.empty()) {
      return std::binary_search(times_.begin(), times_.end(), t);
    }
    const long long shifted = t + offset_;
    return shifted > 0 && (shifted & (shifted - 1)) == 0;
  }

 private:
  SnapshotTimes() = default;
  long long offset_ = 1;
  std::vector<long long> times_;
};

/// i.i.d. uniform draws from [0, m), with replacement.
inline std::vector<int> sample_batch(std::mt19937_64& rng, int m, int b) {
  if (m < 1 || b < 1) {
    throw std::invalid_argument("sample_batch: m and b must be positive");
  }
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::vector<int> batch(static_cast<std::size_t>(b));
  for (int& i : batch) i = pick(rng);
  return batch;
}

/// Per-run mutable state shared by the estimator update rules. One instance
/// per optimizer run; not thread-safe.
struct EstimatorState {
  explicit EstimatorState(EstimatorKind k) : kind(k) {}

  EstimatorKind kind;
  std::optional<Eigen::VectorXd> snapshot_point;
  std::optional<Eigen::VectorXd> snapshot_gradient;
  std::optional<Eigen::VectorXd> previous_estimate;
  std::optional<Eigen::VectorXd> previous_point;
  std::optional<Eigen::VectorXd> alpha;  // csfw cache, entries (1/m) f_i'(.)
  Eigen::VectorXd running_estimate;

  // csfw drift control: rebuild the running sum from alpha every so often.
  long long updates_since_rebuild = 0;
  long long rebuild_interval = 512;
  double last_rebuild_drift = 0.0;
};

/// Plain minibatch average.
inline const Eigen::VectorXd& sfw_update(EstimatorState& state,
                                         const FiniteSumObjective& obj,
                                         const Eigen::VectorXd& x,
                                         std::span<const int> batch) {
  state.running_estimate = obj.minibatch_gradient(x, batch);
  return state.running_estimate;
}

/// Snapshot gradient plus batch-averaged correction at the current point.
inline const Eigen::VectorXd& svrf_update(EstimatorState& state,
                                          const FiniteSumObjective& obj,
                                          const Eigen::VectorXd& x, long long t,
                                          const SnapshotTimes& snapshots,
                                          std::span<const int> batch) {
  if (snapshots.is_snapshot(t)) {
    state.snapshot_point = x;
    state.snapshot_gradient = obj.full_gradient(x);
    state.running_estimate = *state.snapshot_gradient;
    return state.running_estimate;
  }
  if (!state.snapshot_point || !state.snapshot_gradient) {
    throw std::logic_error("svrf_update: no snapshot available at t > 0");
  }
  if (batch.empty()) {
    throw std::invalid_argument("svrf_update: empty batch");
  }
  Eigen::VectorXd estimate = *state.snapshot_gradient;
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (int i : batch) {
    const double at_x = obj.scalar_derivative(i, obj.margin(i, x));
    const double at_snapshot =
        obj.scalar_derivative(i, obj.margin(i, *state.snapshot_point));
    obj.accumulate_row(estimate, i, inv_b * (at_x - at_snapshot));
  }
  state.running_estimate = std::move(estimate);
  return state.running_estimate;
}

/// Recursive path-integrated estimator: the previous estimate plus the
/// batch-averaged difference between the current and previous points.
inline const Eigen::VectorXd& spider_update(EstimatorState& state,
                                            const FiniteSumObjective& obj,
                                            const Eigen::VectorXd& x,
                                            long long t,
                                            const SnapshotTimes& snapshots,
                                            std::span<const int> batch) {
  if (snapshots.is_snapshot(t)) {
    state.snapshot_point = x;
    state.running_estimate = obj.full_gradient(x);
    state.previous_point = x;
    return state.running_estimate;
  }
  if (!state.previous_point || state.running_estimate.size() == 0) {
    throw std::logic_error("spider_update: missing previous point");
  }
  if (batch.empty()) {
    throw std::invalid_argument("spider_update: empty batch");
  }
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (int i : batch) {
    const double at_x = obj.scalar_derivative(i, obj.margin(i, x));
    const double at_previous =
        obj.scalar_derivative(i, obj.margin(i, *state.previous_point));
    obj.accumulate_row(state.running_estimate, i, inv_b * (at_x - at_previous));
  }
  state.previous_point = x;
  return state.running_estimate;
}

/// Momentum-corrected minibatch estimate; both sums use the same batch.
inline const Eigen::VectorXd& orgfw_update(EstimatorState& state,
                                           const FiniteSumObjective& obj,
                                           const Eigen::VectorXd& x, double rho,
                                           std::span<const int> batch) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("orgfw_update: rho must lie in (0, 1]");
  }
  if (!state.previous_point || !state.previous_estimate) {
    // First iteration: nothing to correct against.
    state.running_estimate = obj.minibatch_gradient(x, batch);
  } else {
    state.running_estimate =
        obj.minibatch_gradient(x, batch) +
        (1.0 - rho) * (*state.previous_estimate -
                       obj.minibatch_gradient(*state.previous_point, batch));
  }
  state.previous_point = x;
  state.previous_estimate = state.running_estimate;
  return state.running_estimate;
}

/// Separable-objective estimator: keeps one cached scaled derivative per
/// sample and patches the running sum for the refreshed entries. Duplicate
/// indices inside a batch are applied once.
inline const Eigen::VectorXd& csfw_update(EstimatorState& state,
                                          const FiniteSumObjective& obj,
                                          const Eigen::VectorXd& x,
                                          std::span<const int> batch) {
  if (!obj.separable()) {
    throw std::invalid_argument("csfw_update: objective is not separable");
  }
  if (batch.empty()) {
    throw std::invalid_argument("csfw_update: empty batch");
  }
  const Eigen::Index m = obj.num_samples();
  if (!state.alpha) {
    state.alpha = Eigen::VectorXd::Zero(m);
    state.running_estimate = Eigen::VectorXd::Zero(obj.dim());
  }
  std::vector<int> unique(batch.begin(), batch.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  const double inv_m = 1.0 / static_cast<double>(m);
  for (int i : unique) {
    const double fresh = inv_m * obj.scalar_derivative(i, obj.margin(i, x));
    obj.accumulate_row(state.running_estimate, i, fresh - (*state.alpha)[i]);
    (*state.alpha)[i] = fresh;
  }

  if (++state.updates_since_rebuild >= state.rebuild_interval) {
    Eigen::VectorXd rebuilt = obj.data().rows.transpose() * (*state.alpha);
    state.last_rebuild_drift =
        (rebuilt - state.running_estimate).lpNorm<Eigen::Infinity>();
    state.running_estimate = std::move(rebuilt);
    state.updates_since_rebuild = 0;
  }
  return state.running_estimate;
}

}  // namespace adafw

#endif  // ADAFW_ESTIMATORS_HPP
