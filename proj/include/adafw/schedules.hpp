#ifndef ADAFW_SCHEDULES_HPP
#define ADAFW_SCHEDULES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "adafw/estimators.hpp"

namespace adafw {

/// Problem-level constants consumed by the theorem-mode schedules. All are
/// caller-supplied; practical runs never need them.
struct ProblemConstants {
  double smoothness = 0.0;       // L
  double gradient_bound = 0.0;   // G
  double diameter = 0.0;         // D, the l2-diameter of the feasible set
  double a_norm2 = 0.0;          // spectral norm of the data matrix
  double d1_a = 0.0;             // l1-diameter of A * C
  double dinf_a = 0.0;           // linf-diameter of A * C

  void validate() const {
    for (double v : {smoothness, gradient_bound, diameter, a_norm2, d1_a,
                     dinf_a}) {
      if (v < 0.0 || !std::isfinite(v)) {
        throw std::invalid_argument("ProblemConstants: entries must be nonnegative");
      }
    }
  }
};

/// Closures realizing one theorem's (b_t, eta_t, gamma_t, snapshot) rules.
struct ScheduleSet {
  std::function<long long(long long)> batch_size;  // rounded up, clamped to [1, m]
  std::function<double(long long)> eta;
  std::function<double(long long)> gamma;
  SnapshotTimes snapshots = SnapshotTimes::geometric(0);
};

struct TheoremOptions {
  double kappa = 1.0;        // clip condition number lambda_0^+ / lambda_0^-
  double nu = 0.05;          // exponent offset for the anytime nonconvex rate
  int k0 = 0;                // snapshot offset
  int inner_iterations = 5;  // K
  double lambda_min = 1e-8;  // clip floor entering eta
  long long horizon = 0;     // fixed T (nonconvex variant); 0 = anytime
  long long batch = 0;       // constant batch; 0 = floor(m / 100)
};

inline ScheduleSet theoretical_schedule(int theorem_id,
                                        const ProblemConstants& constants,
                                        const TheoremOptions& options,
                                        long long m) {
  constants.validate();
  if (m < 1) {
    throw std::invalid_argument("theoretical_schedule: m must be positive");
  }
  const double L = constants.smoothness;
  const double G = constants.gradient_bound;
  const double D = constants.diameter;
  const double kappa = options.kappa;
  const long long K = options.inner_iterations;
  const auto clamp_batch = [m](double raw) {
    const double up = std::ceil(raw);
    return std::max(1LL, std::min(m, static_cast<long long>(up)));
  };

  ScheduleSet set;
  switch (theorem_id) {
    case 1: {
      if (!(L > 0.0) || !(G > 0.0) || !(D > 0.0)) {
        throw std::invalid_argument("theorem 1 needs positive L, G, D");
      }
      const double ratio = G / (L * D);
      set.batch_size = [ratio, clamp_batch](long long t) {
        const double root = ratio * static_cast<double>(t + 2);
        return clamp_batch(root * root);
      };
      set.eta = [lo = options.lambda_min, L](long long) { return lo / L; };
      set.gamma = [](long long t) { return 2.0 / static_cast<double>(t + 2); };
      break;
    }
    case 2: {
      if (!(L > 0.0) || !(G > 0.0) || !(D > 0.0)) {
        throw std::invalid_argument("theorem 2 needs positive L, G, D");
      }
      const double ratio_sq = (G / (L * D)) * (G / (L * D));
      set.eta = [lo = options.lambda_min, L](long long) { return lo / L; };
      if (options.horizon > 0) {
        const long long horizon = options.horizon;
        set.batch_size = [ratio_sq, horizon, clamp_batch](long long) {
          return clamp_batch(ratio_sq * static_cast<double>(horizon));
        };
        set.gamma = [horizon](long long) {
          return 1.0 / std::sqrt(static_cast<double>(horizon));
        };
      } else {
        const double nu = options.nu;
        if (!(nu > 0.0 && nu < 0.5)) {
          throw std::invalid_argument("theorem 2 needs nu in (0, 1/2)");
        }
        set.batch_size = [ratio_sq, clamp_batch](long long t) {
          return clamp_batch(ratio_sq * static_cast<double>(t + 1));
        };
        set.gamma = [nu](long long t) {
          return std::pow(static_cast<double>(t + 1), -(0.5 + nu));
        };
      }
      break;
    }
    case 3: {
      if (!(L > 0.0)) {
        throw std::invalid_argument("theorem 3 needs positive L");
      }
      const double lead =
          8.0 * (std::pow(2.0, options.k0 + 1) + 1.0) *
          (static_cast<double>(K) + 1.0 + kappa);
      set.batch_size = [lead, clamp_batch](long long t) {
        return clamp_batch(lead * static_cast<double>(t + 2));
      };
      set.eta = [lo = options.lambda_min, L](long long) { return lo / L; };
      set.gamma = [](long long t) { return 2.0 / static_cast<double>(t + 2); };
      set.snapshots = SnapshotTimes::geometric(options.k0);
      break;
    }
    case 4: {
      if (!(L > 0.0) || !(constants.a_norm2 > 0.0)) {
        throw std::invalid_argument("theorem 4 needs positive L and ||A||_2");
      }
      const long long b =
          options.batch > 0 ? std::min(options.batch, m)
                            : std::max(1LL, m / 100);
      set.batch_size = [b](long long) { return b; };
      set.eta = [m, lo = options.lambda_min, L,
                 a2 = constants.a_norm2](long long) {
        return static_cast<double>(m) * lo / (L * a2 * a2);
      };
      set.gamma = [](long long t) { return 2.0 / static_cast<double>(t + 2); };
      break;
    }
    default:
      throw std::invalid_argument("theoretical_schedule: theorem_id must be 1..4");
  }
  return set;
}

enum class BatchRule {
  quadratic_over_sqrt_m,  // b_t ~ t^2 / sqrt(m)
  linear,                 // b_t ~ t
  doubling,               // largest power of two <= t + 1
  constant_fraction,      // floor(m / denominator)
};

inline long long practical_batch_size(BatchRule rule, long long m, long long t,
                                      long long denominator = 100) {
  if (m < 1) {
    throw std::invalid_argument("practical_batch_size: m must be positive");
  }
  const auto clamp = [m](long long b) { return std::max(1LL, std::min(m, b)); };
  switch (rule) {
    case BatchRule::quadratic_over_sqrt_m:
      return clamp(static_cast<long long>(std::llround(
          static_cast<double>(t) * static_cast<double>(t) /
          std::sqrt(static_cast<double>(m)))));
    case BatchRule::linear:
      return clamp(t + 1);
    case BatchRule::doubling: {
      long long b = 1;
      while (2 * b <= t + 1) b *= 2;
      return clamp(b);
    }
    case BatchRule::constant_fraction:
      if (denominator < 1) {
        throw std::invalid_argument("practical_batch_size: denominator must be >= 1");
      }
      return clamp(m / denominator);
  }
  throw std::invalid_argument("practical_batch_size: unknown rule");
}

}  // namespace adafw

#endif  // ADAFW_SCHEDULES_HPP
