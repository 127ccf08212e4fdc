#ifndef ADAFW_OBJECTIVES_HPP
#define ADAFW_OBJECTIVES_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adafw {

enum class Loss { squared_hinge, squared_error, logistic, sigmoid_nonconvex };

inline bool is_classification_loss(Loss loss) {
  return loss != Loss::squared_error;
}

inline bool is_convex_loss(Loss loss) {
  return loss != Loss::sigmoid_nonconvex;
}

inline const char* loss_name(Loss loss) {
  switch (loss) {
    case Loss::squared_hinge: return "squared_hinge";
    case Loss::squared_error: return "squared_error";
    case Loss::logistic: return "logistic";
    case Loss::sigmoid_nonconvex: return "sigmoid_nonconvex";
  }
  return "?";
}

/// Sample rows a_1..a_m (sparse, row-major) with one real label each.
struct Dataset {
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows;
  Eigen::VectorXd labels;
  std::string label_note;  // set by parsers when labels were remapped

  Eigen::Index num_samples() const { return rows.rows(); }
  Eigen::Index dim() const { return rows.cols(); }

  static Dataset from_dense(const Eigen::MatrixXd& a,
                            Eigen::VectorXd labels) {
    Dataset d;
    d.rows = a.sparseView();
    d.rows.makeCompressed();
    d.labels = std::move(labels);
    d.validate();
    return d;
  }

  void validate() const {
    if (rows.rows() < 1) {
      throw std::invalid_argument("Dataset: needs at least one sample");
    }
    if (labels.size() != rows.rows()) {
      throw std::invalid_argument("Dataset: label count does not match rows");
    }
    if (!labels.allFinite()) {
      throw std::invalid_argument("Dataset: non-finite label");
    }
  }

  bool labels_are_binary() const {
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
      if (labels[i] != 1.0 && labels[i] != -1.0) return false;
    }
    return true;
  }
};

namespace detail {

inline double logistic_sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace detail

/// f(x) = (1/m) sum_i f_i(<a_i, x>), with the scalar losses below. Component
/// gradients are grad f_i(x) = f_i'(<a_i, x>) a_i, so the 1/m factor lives in
/// f itself: full_gradient averages over m while minibatch_gradient averages
/// over the batch, which keeps the minibatch estimator unbiased for grad f.
class FiniteSumObjective {
 public:
  FiniteSumObjective(Loss loss, Dataset data, bool separable = true)
      : loss_(loss), data_(std::move(data)), separable_(separable) {
    data_.validate();
    if (is_classification_loss(loss_) && !data_.labels_are_binary()) {
      throw std::invalid_argument(
          std::string(loss_name(loss_)) + " requires labels in {-1, +1}");
    }
  }

  Loss loss() const { return loss_; }
  const Dataset& data() const { return data_; }
  Eigen::Index num_samples() const { return data_.num_samples(); }
  Eigen::Index dim() const { return data_.dim(); }
  bool separable() const { return separable_; }
  bool convex() const { return is_convex_loss(loss_); }

  double value(const Eigen::VectorXd& x) const {
    check_point(x);
    ++counters_.value_calls;
    const Eigen::VectorXd margins = data_.rows * x;
    double total = 0.0;
    for (Eigen::Index i = 0; i < num_samples(); ++i) {
      total += scalar_loss(data_.labels[i], margins[i]);
    }
    return total / static_cast<double>(num_samples());
  }

  /// f_i'(s), the derivative of the i-th scalar loss at margin s.
  double scalar_derivative(Eigen::Index i, double s) const {
    if (i < 0 || i >= num_samples()) {
      throw std::out_of_range("scalar_derivative: sample index out of range");
    }
    if (!std::isfinite(s)) {
      throw std::invalid_argument("scalar_derivative: non-finite margin");
    }
    ++counters_.scalar_derivative_calls;
    return scalar_loss_derivative(data_.labels[i], s);
  }

  Eigen::VectorXd full_gradient(const Eigen::VectorXd& x) const {
    check_point(x);
    counters_.component_gradient_evals += num_samples();
    ++counters_.full_gradient_calls;
    const Eigen::VectorXd margins = data_.rows * x;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    const double inv_m = 1.0 / static_cast<double>(num_samples());
    for (Eigen::Index i = 0; i < num_samples(); ++i) {
      accumulate_row(g, i,
                     inv_m * scalar_loss_derivative(data_.labels[i], margins[i]));
    }
    return g;
  }

  /// (1/b) sum over the batch of grad f_i(x); duplicate indices contribute
  /// once per occurrence.
  Eigen::VectorXd minibatch_gradient(const Eigen::VectorXd& x,
                                     std::span<const int> indices) const {
    check_point(x);
    if (indices.empty()) {
      throw std::invalid_argument("minibatch_gradient: empty batch");
    }
    counters_.component_gradient_evals += static_cast<long long>(indices.size());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    const double inv_b = 1.0 / static_cast<double>(indices.size());
    for (int i : indices) {
      if (i < 0 || i >= num_samples()) {
        throw std::out_of_range("minibatch_gradient: sample index out of range");
      }
      const double s = data_.rows.row(i).dot(x);
      accumulate_row(g, i, inv_b * scalar_loss_derivative(data_.labels[i], s));
    }
    return g;
  }

  /// grad f_i(x) = f_i'(<a_i, x>) a_i.
  Eigen::VectorXd component_gradient(Eigen::Index i,
                                     const Eigen::VectorXd& x) const {
    check_point(x);
    if (i < 0 || i >= num_samples()) {
      throw std::out_of_range("component_gradient: sample index out of range");
    }
    ++counters_.component_gradient_evals;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    const double s = data_.rows.row(i).dot(x);
    accumulate_row(g, i, scalar_loss_derivative(data_.labels[i], s));
    return g;
  }

  double margin(Eigen::Index i, const Eigen::VectorXd& x) const {
    return data_.rows.row(i).dot(x);
  }

  /// Adds coeff * a_i into g.
  void accumulate_row(Eigen::VectorXd& g, Eigen::Index i, double coeff) const {
    if (coeff == 0.0) return;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             data_.rows, i);
         it; ++it) {
      g[it.col()] += coeff * it.value();
    }
  }

  struct Counters {
    long long value_calls = 0;
    long long full_gradient_calls = 0;
    long long component_gradient_evals = 0;
    long long scalar_derivative_calls = 0;
  };
  const Counters& counters() const { return counters_; }
  void reset_counters() const { counters_ = Counters{}; }

 private:
  void check_point(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) {
      throw std::invalid_argument("objective: point dimension mismatch");
    }
    if (!x.allFinite()) {
      throw std::invalid_argument("objective: non-finite point");
    }
  }

  double scalar_loss(double y, double s) const {
    switch (loss_) {
      case Loss::squared_hinge: {
        const double hinge = std::max(0.0, 1.0 - y * s);
        return hinge * hinge;
      }
      case Loss::squared_error: {
        const double r = y - s;
        return r * r;
      }
      case Loss::logistic: {
        const double ys = y * s;
        // ln(1 + e^{-ys}) overflows for very negative ys; there it equals
        // -ys up to an e^{ys} term below double resolution.
        if (ys < -30.0) return -ys;
        return std::log1p(std::exp(-ys));
      }
      case Loss::sigmoid_nonconvex:
        return detail::logistic_sigmoid(-y * s);
    }
    throw std::logic_error("unknown loss");
  }

  double scalar_loss_derivative(double y, double s) const {
    switch (loss_) {
      case Loss::squared_hinge:
        return -2.0 * y * std::max(0.0, 1.0 - y * s);
      case Loss::squared_error:
        return -2.0 * (y - s);
      case Loss::logistic: {
        const double ys = y * s;
        if (ys < -30.0) return -y;
        return -y / (1.0 + std::exp(ys));
      }
      case Loss::sigmoid_nonconvex: {
        const double sig = detail::logistic_sigmoid(y * s);
        return -y * sig * (1.0 - sig);
      }
    }
    throw std::logic_error("unknown loss");
  }

  Loss loss_;
  Dataset data_;
  bool separable_;
  mutable Counters counters_;
};

}  // namespace adafw

#endif  // ADAFW_OBJECTIVES_HPP
