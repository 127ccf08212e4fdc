#ifndef ADAFW_FEASIBLE_SET_HPP
#define ADAFW_FEASIBLE_SET_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace adafw {

using Vector = Eigen::VectorXd;

enum class RegionKind { l1_ball, linf_ball };

enum class Norm { l1, l2, linf };

/// Compact convex constraint set accessed through a linear minimization
/// oracle. Only lp-balls are supported; the LMO returns a vertex (l1) or a
/// corner (linf), which keeps every Frank-Wolfe iterate a convex combination
/// of extreme points.
class FeasibleRegion {
 public:
  FeasibleRegion(RegionKind kind, Vector center, double radius)
      : kind_(kind), center_(std::move(center)), radius_(radius) {
    if (!(radius_ > 0.0)) {
      throw std::invalid_argument("FeasibleRegion: radius must be positive");
    }
    if (center_.size() == 0) {
      throw std::invalid_argument("FeasibleRegion: empty center");
    }
    if (!center_.allFinite()) {
      throw std::invalid_argument("FeasibleRegion: non-finite center");
    }
  }

  static FeasibleRegion l1_ball(Eigen::Index dim, double radius) {
    return FeasibleRegion(RegionKind::l1_ball, Vector::Zero(dim), radius);
  }
  static FeasibleRegion l1_ball(Vector center, double radius) {
    return FeasibleRegion(RegionKind::l1_ball, std::move(center), radius);
  }
  static FeasibleRegion linf_ball(Eigen::Index dim, double radius) {
    return FeasibleRegion(RegionKind::linf_ball, Vector::Zero(dim), radius);
  }
  static FeasibleRegion linf_ball(Vector center, double radius) {
    return FeasibleRegion(RegionKind::linf_ball, std::move(center), radius);
  }

  RegionKind kind() const { return kind_; }
  Eigen::Index dim() const { return center_.size(); }
  double radius() const { return radius_; }
  const Vector& center() const { return center_; }
  bool centered_at_origin() const { return center_.isZero(0.0); }

  /// argmin_{v in C} <g, v>. Ties in the l1 argmax break toward the lowest
  /// index and sign(0) counts as +1, so the output is deterministic.
  Vector lmo(const Vector& g) const {
    check_dim(g, "lmo");
    if (!g.allFinite()) {
      throw std::invalid_argument("lmo: non-finite gradient entries");
    }
    Vector v = center_;
    if (kind_ == RegionKind::l1_ball) {
      Eigen::Index best = 0;
      double best_abs = std::abs(g[0]);
      for (Eigen::Index i = 1; i < g.size(); ++i) {
        const double a = std::abs(g[i]);
        if (a > best_abs) {
          best_abs = a;
          best = i;
        }
      }
      v[best] -= radius_ * sign(g[best]);
    } else {
      for (Eigen::Index i = 0; i < g.size(); ++i) {
        v[i] -= radius_ * sign(g[i]);
      }
    }
    return v;
  }

  /// Membership with a relative slack: ||x - center||_p <= radius * (1 + tol).
  bool contains(const Vector& x, double tol = 1e-9) const {
    check_dim(x, "contains");
    if (!x.allFinite()) {
      throw std::invalid_argument("contains: non-finite entries");
    }
    const double dist = kind_ == RegionKind::l1_ball
                            ? (x - center_).lpNorm<1>()
                            : (x - center_).lpNorm<Eigen::Infinity>();
    return dist <= radius_ * (1.0 + tol);
  }

  /// Closed-form lp-diameter max_{x,y in C} ||y - x||_p.
  double diameter(Norm p) const {
    const double n = static_cast<double>(dim());
    if (kind_ == RegionKind::l1_ball) {
      return 2.0 * radius_;  // same value for p in {1, 2, inf}
    }
    switch (p) {
      case Norm::l1:
        return 2.0 * radius_ * n;
      case Norm::l2:
        return 2.0 * radius_ * std::sqrt(n);
      case Norm::linf:
        return 2.0 * radius_;
    }
    throw std::invalid_argument("diameter: unsupported norm");
  }

  static double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

 private:
  void check_dim(const Vector& x, const char* op) const {
    if (x.size() != center_.size()) {
      throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }
  }

  RegionKind kind_;
  Vector center_;
  double radius_;
};

/// Projection of z onto the origin-centered l1-ball of the given radius in
/// the diagonal metric diag(h): argmin_{||x||_1 <= radius} sum_i h_i (x_i - z_i)^2.
///
/// The minimizer is the weighted soft-threshold
///   x_i = sign(z_i) * max(|z_i| - theta / h_i, 0),
/// with theta = 0 when z is already feasible and otherwise the unique root of
/// sum_i max(|z_i| - theta / h_i, 0) = radius. The root lies between two of
/// the breakpoints theta_i = h_i |z_i|; sorting them yields theta exactly
/// instead of by iterative bisection.
inline Vector metric_projection_l1(const Vector& z, const Vector& h,
                                   double radius) {
  if (z.size() != h.size()) {
    throw std::invalid_argument("metric_projection_l1: dimension mismatch");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("metric_projection_l1: radius must be positive");
  }
  if (!(h.minCoeff() > 0.0)) {
    throw std::invalid_argument("metric_projection_l1: metric entries must be positive");
  }
  if (z.lpNorm<1>() <= radius) {
    return z;
  }

  const Eigen::Index n = z.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ka = h[a] * std::abs(z[a]);
    const double kb = h[b] * std::abs(z[b]);
    if (ka != kb) return ka > kb;
    return a < b;
  });

  // Scan active sets in decreasing-breakpoint order; the last candidate theta
  // below its own breakpoint is the root.
  double sum_abs = 0.0;
  double sum_inv_h = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index i = order[static_cast<std::size_t>(k)];
    sum_abs += std::abs(z[i]);
    sum_inv_h += 1.0 / h[i];
    const double candidate = (sum_abs - radius) / sum_inv_h;
    if (h[i] * std::abs(z[i]) > candidate) {
      theta = candidate;
    } else {
      break;
    }
  }

  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(z[i]) - theta / h[i];
    x[i] = mag > 0.0 ? FeasibleRegion::sign(z[i]) * mag : 0.0;
  }
  return x;
}

}  // namespace adafw

#endif  // ADAFW_FEASIBLE_SET_HPP
