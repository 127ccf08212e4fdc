#ifndef ADAFW_OPTIMIZERS_HPP
#define ADAFW_OPTIMIZERS_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adafw/adaptive_metric.hpp"
#include "adafw/estimators.hpp"
#include "adafw/feasible_set.hpp"
#include "adafw/objectives.hpp"
#include "adafw/schedules.hpp"
#include "adafw/subproblem.hpp"

namespace adafw {

enum class Algorithm {
  sfw,
  svrf,
  spider_fw,
  orgfw,
  csfw,
  adasfw,
  adasvrf,
  adacsfw,
  adamsfw,
  adagrad,
  amsgrad,
};

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::sfw: return "sfw";
    case Algorithm::svrf: return "svrf";
    case Algorithm::spider_fw: return "spider_fw";
    case Algorithm::orgfw: return "orgfw";
    case Algorithm::csfw: return "csfw";
    case Algorithm::adasfw: return "adasfw";
    case Algorithm::adasvrf: return "adasvrf";
    case Algorithm::adacsfw: return "adacsfw";
    case Algorithm::adamsfw: return "adamsfw";
    case Algorithm::adagrad: return "adagrad";
    case Algorithm::amsgrad: return "amsgrad";
  }
  return "?";
}

inline bool is_template_algorithm(Algorithm a) {
  return a == Algorithm::sfw || a == Algorithm::svrf ||
         a == Algorithm::spider_fw || a == Algorithm::orgfw ||
         a == Algorithm::csfw;
}

inline bool is_ada_algorithm(Algorithm a) {
  return a == Algorithm::adasfw || a == Algorithm::adasvrf ||
         a == Algorithm::adacsfw;
}

inline bool is_projection_algorithm(Algorithm a) {
  return a == Algorithm::adagrad || a == Algorithm::amsgrad;
}

inline bool uses_csfw_estimator(Algorithm a) {
  return a == Algorithm::csfw || a == Algorithm::adacsfw;
}

inline EstimatorKind estimator_for(Algorithm a) {
  switch (a) {
    case Algorithm::svrf:
    case Algorithm::adasvrf:
      return EstimatorKind::svrf;
    case Algorithm::spider_fw:
      return EstimatorKind::spider_fw;
    case Algorithm::orgfw:
      return EstimatorKind::orgfw;
    case Algorithm::csfw:
    case Algorithm::adacsfw:
      return EstimatorKind::csfw;
    default:
      return EstimatorKind::sfw;
  }
}

/// Step-size (template algorithms) or inner step cap (ada variants).
struct GammaSchedule {
  enum class Kind { auto_default, cap_one, harmonic, power_nu, constant };
  Kind kind = Kind::auto_default;
  double value = 1.0;  // constant value, or nu for power_nu

  static GammaSchedule cap_one() { return {Kind::cap_one, 1.0}; }
  static GammaSchedule harmonic() { return {Kind::harmonic, 0.0}; }
  static GammaSchedule power_nu(double nu) {
    if (!(nu > 0.0 && nu < 0.5)) {
      throw std::invalid_argument("gamma power_nu: nu must lie in (0, 1/2)");
    }
    return {Kind::power_nu, nu};
  }
  static GammaSchedule constant(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw std::invalid_argument("gamma constant: value must lie in [0, 1]");
    }
    return {Kind::constant, c};
  }

  double at(long long t, Algorithm algorithm) const {
    switch (kind) {
      case Kind::auto_default:
        // Step caps default to 1; template steps default to 2 / (t + 2).
        return is_template_algorithm(algorithm)
                   ? 2.0 / static_cast<double>(t + 2)
                   : 1.0;
      case Kind::cap_one:
        return 1.0;
      case Kind::harmonic:
        return 2.0 / static_cast<double>(t + 2);
      case Kind::power_nu:
        return std::pow(static_cast<double>(t + 1), -(0.5 + value));
      case Kind::constant:
        return value;
    }
    throw std::logic_error("unknown gamma schedule");
  }
};

struct BatchSchedule {
  enum class Rule {
    auto_default,
    quadratic_over_sqrt_m,
    linear,
    doubling,
    constant_fraction,
    constant_count,
    full_batch,  // all m samples, each exactly once; no sampling
    custom,
  };
  Rule rule = Rule::auto_default;
  long long denominator = 100;
  long long count = 1;
  std::function<long long(long long)> custom;

  static BatchSchedule constant_count(long long b) {
    BatchSchedule s;
    s.rule = Rule::constant_count;
    s.count = b;
    return s;
  }
  static BatchSchedule full_batch() {
    BatchSchedule s;
    s.rule = Rule::full_batch;
    return s;
  }
  static BatchSchedule constant_fraction(long long denominator) {
    BatchSchedule s;
    s.rule = Rule::constant_fraction;
    s.denominator = denominator;
    return s;
  }
  static BatchSchedule of(BatchRule r) {
    BatchSchedule s;
    switch (r) {
      case BatchRule::quadratic_over_sqrt_m: s.rule = Rule::quadratic_over_sqrt_m; break;
      case BatchRule::linear: s.rule = Rule::linear; break;
      case BatchRule::doubling: s.rule = Rule::doubling; break;
      case BatchRule::constant_fraction: s.rule = Rule::constant_fraction; break;
    }
    return s;
  }
  static BatchSchedule from_function(std::function<long long(long long)> f) {
    BatchSchedule s;
    s.rule = Rule::custom;
    s.custom = std::move(f);
    return s;
  }

  long long size(long long m, long long t, Algorithm algorithm) const {
    const auto clamp = [m](long long b) {
      return std::max(1LL, std::min(m, b));
    };
    switch (rule) {
      case Rule::auto_default:
        switch (algorithm) {
          case Algorithm::sfw:
          case Algorithm::adasfw:
            return practical_batch_size(BatchRule::quadratic_over_sqrt_m, m, t);
          case Algorithm::svrf:
          case Algorithm::adasvrf:
            return practical_batch_size(BatchRule::linear, m, t);
          case Algorithm::spider_fw:
            return practical_batch_size(BatchRule::doubling, m, t);
          default:
            return practical_batch_size(BatchRule::constant_fraction, m, t, 100);
        }
      case Rule::quadratic_over_sqrt_m:
        return practical_batch_size(BatchRule::quadratic_over_sqrt_m, m, t);
      case Rule::linear:
        return practical_batch_size(BatchRule::linear, m, t);
      case Rule::doubling:
        return practical_batch_size(BatchRule::doubling, m, t);
      case Rule::constant_fraction:
        return practical_batch_size(BatchRule::constant_fraction, m, t,
                                    denominator);
      case Rule::constant_count:
        return clamp(count);
      case Rule::full_batch:
        return m;
      case Rule::custom:
        if (!custom) throw std::invalid_argument("batch schedule: missing custom rule");
        return clamp(custom(t));
    }
    throw std::logic_error("unknown batch rule");
  }
};

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::adasfw;
  std::string name;                    // defaults to the algorithm name
  int inner_iterations = 5;            // K
  double eta = 1.0;
  std::function<double(long long)> eta_schedule;  // overrides eta when set
  GammaSchedule gamma{};
  BatchSchedule batch{};
  double delta = 1e-8;
  double beta_m = 0.9;
  double beta_s = 0.99;
  std::function<double(long long)> rho_schedule;  // orgfw momentum
  bool clip_enabled = false;
  double clip_lambda_min = 0.0;  // 0 -> delta
  double clip_lambda_max = 1e12;
  std::uint64_t seed = 0;
  long long max_iterations = 0;  // 0 = unbounded, stop on epochs
  double max_epochs = 0.0;       // 0 = unbounded, stop on iterations
  int snapshot_k0 = 4;           // svrf snapshot offset
  long long gap_every = 0;       // iterations between gap rows; 0 = per epoch
  bool collect_timing = false;   // keep per-row seconds (not reproducible)

  std::string display_name() const {
    return name.empty() ? algorithm_name(algorithm) : name;
  }
};

struct TraceRow {
  long long t = 0;
  double epoch = 0.0;
  double objective = 0.0;
  double duality_gap = 0.0;
  double seconds = 0.0;
  long long grad_evals = 0;
  long long batch_size = 0;
};

/// Per-run health counters; every violation of the asserted inequalities
/// bumps a counter instead of silently passing.
struct RunChecks {
  long long inner_steps = 0;
  long long lemma1_violations = 0;      // inner model descent broke
  long long lemma2_violations = 0;      // outer displacement bound broke
  long long feasibility_violations = 0;
  long long step_range_violations = 0;
  long long metric_monotonicity_violations = 0;
};

struct OptimizerTrace {
  std::vector<TraceRow> rows;
  RunChecks checks;
  Vector final_point;
  long long iterations = 0;
  long long grad_evals = 0;
  double wall_seconds = 0.0;  // whole-run wall clock, always measured
  double cpu_seconds = 0.0;   // whole-run process CPU time
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace detail

/// Frank-Wolfe duality gap <grad f(x), x - lmo(grad f(x))> with the exact
/// full gradient. Nonnegative, and an upper bound on f(x) - min f when f is
/// convex.
inline double duality_gap(const FiniteSumObjective& obj,
                          const FeasibleRegion& region, const Vector& x) {
  if (!region.contains(x, 1e-9)) {
    throw std::invalid_argument("duality_gap: point is infeasible");
  }
  const Vector g = obj.full_gradient(x);
  return g.dot(x - region.lmo(g));
}

namespace detail {

/// Shared outer-loop bookkeeping: budget, gap cadence, timing, trace rows.
class RunRecorder {
 public:
  RunRecorder(const FiniteSumObjective& obj, const FeasibleRegion& region,
              const OptimizerConfig& config)
      : obj_(obj), region_(region), config_(config),
        m_(obj.num_samples()),
        wall_start_(std::chrono::steady_clock::now()),
        cpu_start_(std::clock()) {
    if (config.max_iterations <= 0 && config.max_epochs <= 0.0) {
      throw std::invalid_argument(
          "optimizer config: need max_iterations or max_epochs");
    }
  }

  bool budget_left(long long t) const {
    if (config_.max_iterations > 0 && t >= config_.max_iterations) return false;
    if (config_.max_epochs > 0.0 &&
        static_cast<double>(trace_.grad_evals) >=
            config_.max_epochs * static_cast<double>(m_))
      return false;
    return true;
  }

  void consume(long long evals) { trace_.grad_evals += evals; }

  void record_if_due(long long t, const Vector& x, long long batch_size) {
    const long long floor_epochs = trace_.grad_evals / m_;
    bool due = false;
    if (config_.gap_every > 0) {
      due = t % config_.gap_every == 0;
    } else {
      due = t == 0 || floor_epochs > last_recorded_floor_;
    }
    if (!due) return;
    last_recorded_floor_ = floor_epochs;
    push_row(t, x, batch_size);
  }

  void record_final(long long t, const Vector& x) { push_row(t, x, 0); }

  void check_feasible(const Vector& x) {
    if (!region_.contains(x, 1e-9)) ++trace_.checks.feasibility_violations;
  }

  OptimizerTrace finish(long long iterations, Vector x) {
    trace_.iterations = iterations;
    trace_.final_point = std::move(x);
    trace_.wall_seconds = elapsed();
    trace_.cpu_seconds =
        static_cast<double>(std::clock() - cpu_start_) / CLOCKS_PER_SEC;
    return std::move(trace_);
  }

  OptimizerTrace& trace() { return trace_; }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         wall_start_)
        .count();
  }

  void push_row(long long t, const Vector& x, long long batch_size) {
    TraceRow row;
    row.t = t;
    row.epoch = static_cast<double>(trace_.grad_evals) / static_cast<double>(m_);
    row.objective = obj_.value(x);
    row.duality_gap = duality_gap(obj_, region_, x);
    row.seconds = config_.collect_timing ? elapsed() : 0.0;
    row.grad_evals = trace_.grad_evals;
    row.batch_size = batch_size;
    trace_.rows.push_back(row);
  }

  const FiniteSumObjective& obj_;
  const FeasibleRegion& region_;
  const OptimizerConfig& config_;
  long long m_;
  long long last_recorded_floor_ = -1;
  OptimizerTrace trace_;
  std::chrono::steady_clock::time_point wall_start_;
  std::clock_t cpu_start_;
};

/// One estimator update. Returns the estimate; reports how many fresh
/// component gradients were consumed and the batch size used.
inline std::vector<int> draw_batch(std::mt19937_64& rng, long long m,
                                   long long b,
                                   const OptimizerConfig& config) {
  if (config.batch.rule == BatchSchedule::Rule::full_batch) {
    std::vector<int> all(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] =
        static_cast<int>(i);
    return all;
  }
  return sample_batch(rng, static_cast<int>(m), static_cast<int>(b));
}

inline const Vector& update_estimator(EstimatorState& state,
                                      const FiniteSumObjective& obj,
                                      const Vector& x, long long t,
                                      const OptimizerConfig& config,
                                      const SnapshotTimes& snapshots,
                                      std::mt19937_64& rng,
                                      long long& consumed,
                                      long long& batch_used) {
  const long long m = obj.num_samples();
  const long long b = config.batch.size(m, t, config.algorithm);
  switch (state.kind) {
    case EstimatorKind::sfw: {
      const auto batch = draw_batch(rng, m, b, config);
      consumed = batch_used = b;
      return sfw_update(state, obj, x, batch);
    }
    case EstimatorKind::svrf: {
      if (snapshots.is_snapshot(t)) {
        consumed = batch_used = m;
        return svrf_update(state, obj, x, t, snapshots, {});
      }
      const auto batch = draw_batch(rng, m, b, config);
      consumed = batch_used = b;
      return svrf_update(state, obj, x, t, snapshots, batch);
    }
    case EstimatorKind::spider_fw: {
      if (snapshots.is_snapshot(t)) {
        consumed = batch_used = m;
        return spider_update(state, obj, x, t, snapshots, {});
      }
      const auto batch = draw_batch(rng, m, b, config);
      consumed = batch_used = b;
      return spider_update(state, obj, x, t, snapshots, batch);
    }
    case EstimatorKind::orgfw: {
      const double rho = config.rho_schedule
                             ? config.rho_schedule(t)
                             : std::pow(static_cast<double>(t + 2), -2.0 / 3.0);
      const auto batch = draw_batch(rng, m, b, config);
      consumed = batch_used = b;
      return orgfw_update(state, obj, x, rho, batch);
    }
    case EstimatorKind::csfw: {
      const auto batch = draw_batch(rng, m, b, config);
      consumed = batch_used = b;
      return csfw_update(state, obj, x, batch);
    }
  }
  throw std::logic_error("unknown estimator kind");
}

inline SnapshotTimes snapshots_for(Algorithm algorithm, int k0) {
  if (algorithm == Algorithm::spider_fw) return SnapshotTimes::epoch_doubling();
  return SnapshotTimes::geometric(k0);
}

inline void require_compatible(const FiniteSumObjective& obj,
                               const OptimizerConfig& config) {
  if (uses_csfw_estimator(config.algorithm) && !obj.separable()) {
    throw std::invalid_argument(
        std::string(algorithm_name(config.algorithm)) +
        " requires a separable objective");
  }
}

}  // namespace detail

/// Template stochastic Frank-Wolfe: estimator update, LMO, convex step.
inline OptimizerTrace run_template_fw(const FiniteSumObjective& obj,
                                      const FeasibleRegion& region,
                                      const OptimizerConfig& config) {
  if (!is_template_algorithm(config.algorithm)) {
    throw std::invalid_argument("run_template_fw: not a template algorithm");
  }
  detail::require_compatible(obj, config);
  detail::RunRecorder recorder(obj, region, config);
  auto rng = detail::seeded_rng(config.seed);
  EstimatorState state(estimator_for(config.algorithm));
  const auto snapshots =
      detail::snapshots_for(config.algorithm, config.snapshot_k0);
  Vector x = region.center();
  long long t = 0;
  for (; recorder.budget_left(t); ++t) {
    long long consumed = 0, batch_used = 0;
    const Vector& estimate = detail::update_estimator(
        state, obj, x, t, config, snapshots, rng, consumed, batch_used);
    recorder.consume(consumed);
    recorder.record_if_due(t, x, batch_used);
    const Vector v = region.lmo(estimate);
    const double gamma = config.gamma.at(t, config.algorithm);
    x += gamma * (v - x);
    recorder.check_feasible(x);
  }
  recorder.record_final(t, x);
  return recorder.finish(t, std::move(x));
}

/// Adaptive-metric Frank-Wolfe: estimator update, metric update and clip,
/// K inner steps on the quadratic model. The inner model descent, the outer
/// displacement bound and feasibility are checked every iteration.
inline OptimizerTrace run_ada_fw(const FiniteSumObjective& obj,
                                 const FeasibleRegion& region,
                                 const OptimizerConfig& config) {
  if (!is_ada_algorithm(config.algorithm)) {
    throw std::invalid_argument("run_ada_fw: not an adaptive FW algorithm");
  }
  detail::require_compatible(obj, config);
  detail::RunRecorder recorder(obj, region, config);
  auto rng = detail::seeded_rng(config.seed);
  EstimatorState state(estimator_for(config.algorithm));
  const auto snapshots =
      detail::snapshots_for(config.algorithm, config.snapshot_k0);
  AdaGradAccumulator accumulator(obj.dim(), config.delta);
  const double clip_lo =
      config.clip_enabled && config.clip_lambda_min > 0.0
          ? config.clip_lambda_min
          : config.delta;
  const double clip_hi = config.clip_enabled ? config.clip_lambda_max : 1e12;
  ClipSchedule clip(clip_lo, clip_hi);
  const double diameter = region.diameter(Norm::l2);

  Vector x = region.center();
  long long t = 0;
  for (; recorder.budget_left(t); ++t) {
    long long consumed = 0, batch_used = 0;
    const Vector& estimate = detail::update_estimator(
        state, obj, x, t, config, snapshots, rng, consumed, batch_used);
    recorder.consume(consumed);
    recorder.record_if_due(t, x, batch_used);

    const DiagonalMetric metric = clip.apply(accumulator.update(estimate));
    const double eta =
        config.eta_schedule ? config.eta_schedule(t) : config.eta;
    const double gamma_cap = config.gamma.at(t, config.algorithm);
    QuadraticModel model{x, estimate, metric, eta};
    const InnerLoopResult inner =
        inner_loop(model, region, config.inner_iterations, gamma_cap);

    auto& checks = recorder.trace().checks;
    checks.inner_steps += static_cast<long long>(inner.steps.size());
    for (std::size_t k = 0; k + 1 < inner.model_values.size(); ++k) {
      if (inner.model_values[k + 1] > inner.model_values[k] + 1e-12) {
        ++checks.lemma1_violations;
      }
    }
    for (double step : inner.steps) {
      if (step < 0.0 || step > gamma_cap) ++checks.step_range_violations;
    }
    checks.feasibility_violations += inner.feasibility_violations;
    if ((inner.point - x).norm() >
        config.inner_iterations * diameter * gamma_cap + 1e-9) {
      ++checks.lemma2_violations;
    }
    x = inner.point;
    recorder.check_feasible(x);
  }
  recorder.record_final(t, x);
  return recorder.finish(t, std::move(x));
}

/// Momentum variant: the model is built from the momentum vector and the
/// running-max second-moment metric.
inline OptimizerTrace run_adamsfw(const FiniteSumObjective& obj,
                                  const FeasibleRegion& region,
                                  const OptimizerConfig& config) {
  if (config.algorithm != Algorithm::adamsfw) {
    throw std::invalid_argument("run_adamsfw: wrong algorithm");
  }
  detail::RunRecorder recorder(obj, region, config);
  auto rng = detail::seeded_rng(config.seed);
  EstimatorState state(EstimatorKind::sfw);
  const auto snapshots = SnapshotTimes::geometric(0);
  AmsGradState moments(obj.dim(), config.beta_m, config.beta_s, config.delta);
  const double diameter = region.diameter(Norm::l2);

  Vector x = region.center();
  Vector previous_metric;
  long long t = 0;
  for (; recorder.budget_left(t); ++t) {
    long long consumed = 0, batch_used = 0;
    const Vector& estimate = detail::update_estimator(
        state, obj, x, t, config, snapshots, rng, consumed, batch_used);
    recorder.consume(consumed);
    recorder.record_if_due(t, x, batch_used);

    const auto update = moments.update(estimate);
    auto& checks = recorder.trace().checks;
    if (previous_metric.size() > 0 &&
        (update.metric.entries.array() < previous_metric.array() - 1e-15)
            .any()) {
      ++checks.metric_monotonicity_violations;
    }
    previous_metric = update.metric.entries;

    const double eta =
        config.eta_schedule ? config.eta_schedule(t) : config.eta;
    const double gamma_cap = config.gamma.at(t, config.algorithm);
    QuadraticModel model{x, update.momentum, update.metric, eta};
    const InnerLoopResult inner =
        inner_loop(model, region, config.inner_iterations, gamma_cap);

    checks.inner_steps += static_cast<long long>(inner.steps.size());
    for (std::size_t k = 0; k + 1 < inner.model_values.size(); ++k) {
      if (inner.model_values[k + 1] > inner.model_values[k] + 1e-12) {
        ++checks.lemma1_violations;
      }
    }
    checks.feasibility_violations += inner.feasibility_violations;
    if ((inner.point - x).norm() >
        config.inner_iterations * diameter * gamma_cap + 1e-9) {
      ++checks.lemma2_violations;
    }
    x = inner.point;
    recorder.check_feasible(x);
  }
  recorder.record_final(t, x);
  return recorder.finish(t, std::move(x));
}

/// Projected adaptive-gradient baselines. Each step solves
///   argmin_{x in C} eta <g, x> + (1/2) ||x - x_t||_H^2
/// exactly: a metric projection of the unconstrained step on the l1-ball, a
/// plain coordinate clamp on the linf-ball (the metric is separable there).
inline OptimizerTrace run_projected_adagrad(const FiniteSumObjective& obj,
                                            const FeasibleRegion& region,
                                            const OptimizerConfig& config) {
  if (!is_projection_algorithm(config.algorithm)) {
    throw std::invalid_argument("run_projected_adagrad: wrong algorithm");
  }
  if (region.kind() == RegionKind::l1_ball && !region.centered_at_origin()) {
    throw std::invalid_argument(
        "run_projected_adagrad: l1-ball region must be centered at 0");
  }
  detail::RunRecorder recorder(obj, region, config);
  auto rng = detail::seeded_rng(config.seed);
  EstimatorState state(EstimatorKind::sfw);
  const auto snapshots = SnapshotTimes::geometric(0);
  const bool use_momentum = config.algorithm == Algorithm::amsgrad;
  AdaGradAccumulator accumulator(obj.dim(), config.delta);
  AmsGradState moments(obj.dim(), config.beta_m, config.beta_s, config.delta);

  Vector x = region.center();
  Vector previous_metric;
  long long t = 0;
  for (; recorder.budget_left(t); ++t) {
    long long consumed = 0, batch_used = 0;
    const Vector& estimate = detail::update_estimator(
        state, obj, x, t, config, snapshots, rng, consumed, batch_used);
    recorder.consume(consumed);
    recorder.record_if_due(t, x, batch_used);

    DiagonalMetric metric{Vector()};
    Vector direction;
    if (use_momentum) {
      auto update = moments.update(estimate);
      metric = std::move(update.metric);
      direction = std::move(update.momentum);
    } else {
      metric = accumulator.update(estimate);
      direction = estimate;
    }
    auto& checks = recorder.trace().checks;
    if (previous_metric.size() > 0 &&
        (metric.entries.array() < previous_metric.array() - 1e-15).any()) {
      ++checks.metric_monotonicity_violations;
    }
    previous_metric = metric.entries;

    const double eta =
        config.eta_schedule ? config.eta_schedule(t) : config.eta;
    const Vector z = x - eta * direction.cwiseQuotient(metric.entries);
    if (region.kind() == RegionKind::l1_ball) {
      x = metric_projection_l1(z, metric.entries, region.radius());
    } else {
      x = z.array()
              .max(region.center().array() - region.radius())
              .min(region.center().array() + region.radius())
              .matrix();
    }
    recorder.check_feasible(x);
  }
  recorder.record_final(t, x);
  return recorder.finish(t, std::move(x));
}

inline OptimizerTrace run(const FiniteSumObjective& obj,
                          const FeasibleRegion& region,
                          const OptimizerConfig& config) {
  if (is_template_algorithm(config.algorithm)) {
    return run_template_fw(obj, region, config);
  }
  if (is_ada_algorithm(config.algorithm)) {
    return run_ada_fw(obj, region, config);
  }
  if (config.algorithm == Algorithm::adamsfw) {
    return run_adamsfw(obj, region, config);
  }
  return run_projected_adagrad(obj, region, config);
}

/// Uniform draw from the iterate indices {0, ..., t}, deterministic per seed.
inline long long sample_uniform_iterate(const OptimizerTrace& trace,
                                        long long t, std::uint64_t seed) {
  if (trace.iterations <= 0) {
    throw std::invalid_argument("sample_uniform_iterate: empty trace");
  }
  if (t < 0 || t > trace.iterations) {
    throw std::out_of_range("sample_uniform_iterate: t beyond trace length");
  }
  auto rng = detail::seeded_rng(seed);
  std::uniform_int_distribution<long long> pick(0, t);
  return pick(rng);
}

}  // namespace adafw

#endif  // ADAFW_OPTIMIZERS_HPP
