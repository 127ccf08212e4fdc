#ifndef ADAFW_DATA_HPP
#define ADAFW_DATA_HPP

#include <Eigen/SparseCore>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adafw/detail/text.hpp"
#include "adafw/objectives.hpp"

namespace adafw {

struct SyntheticSvmSpec {
  long long samples = 1000;    // m
  long long features = 100;    // n
  double flip_probability = 0.05;
  std::uint64_t seed = 0;

  void validate() const {
    if (samples < 1 || features < 1) {
      throw std::invalid_argument("SyntheticSvmSpec: m and n must be >= 1");
    }
    if (!(flip_probability >= 0.0 && flip_probability < 1.0)) {
      throw std::invalid_argument("SyntheticSvmSpec: flip probability in [0, 1)");
    }
  }
};

/// Binary classification data with feature frequencies decaying as 1/j:
/// entry (i, j) is nonzero with probability 1/(j+1) and then +-1 equiprobably.
/// Labels follow the sign of <a_i, u> for a hidden sign vector u, flipped
/// with the given probability. sign(0) counts as +1.
inline Dataset generate_synthetic_svm(const SyntheticSvmSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<Eigen::Triplet<double>> entries;
  for (long long i = 0; i < spec.samples; ++i) {
    for (long long j = 0; j < spec.features; ++j) {
      if (unif(rng) < 1.0 / static_cast<double>(j + 1)) {
        const double value = unif(rng) < 0.5 ? 1.0 : -1.0;
        entries.emplace_back(static_cast<int>(i), static_cast<int>(j), value);
      }
    }
  }
  Eigen::VectorXd hidden(spec.features);
  for (long long j = 0; j < spec.features; ++j) {
    hidden[j] = unif(rng) < 0.5 ? 1.0 : -1.0;
  }

  Dataset data;
  data.rows.resize(static_cast<int>(spec.samples),
                   static_cast<int>(spec.features));
  data.rows.setFromTriplets(entries.begin(), entries.end());
  data.rows.makeCompressed();
  data.labels.resize(spec.samples);
  for (long long i = 0; i < spec.samples; ++i) {
    const double margin = data.rows.row(i).dot(hidden);
    double label = margin < 0.0 ? -1.0 : 1.0;
    if (unif(rng) < spec.flip_probability) label = -label;
    data.labels[i] = label;
  }
  return data;
}

namespace detail {

[[noreturn]] inline void parse_error(const std::filesystem::path& path,
                                     std::size_t line_number,
                                     const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                           ": " + what);
}

}  // namespace detail

/// LIBSVM text format: "label index:value index:value ...", indices 1-based.
/// {0,1} and {1,2} label sets are remapped onto {-1,+1}; the mapping is
/// recorded in Dataset::label_note.
inline Dataset parse_libsvm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("parse_libsvm: cannot open " + path.string());
  }
  std::vector<double> labels;
  std::vector<Eigen::Triplet<double>> entries;
  int max_feature = 0;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream tokens(line);
    std::string field;
    if (!(tokens >> field)) continue;
    double label = 0.0;
    if (!detail::parse_double(field, label)) {
      detail::parse_error(path, line_number, "bad label '" + field + "'");
    }
    labels.push_back(label);
    const int row = static_cast<int>(labels.size()) - 1;
    while (tokens >> field) {
      const auto colon = field.find(':');
      if (colon == std::string::npos) {
        detail::parse_error(path, line_number,
                            "expected index:value, got '" + field + "'");
      }
      long long index = 0;
      double value = 0.0;
      if (!detail::parse_long(field.substr(0, colon), index) || index < 1) {
        detail::parse_error(path, line_number,
                            "bad feature index in '" + field + "'");
      }
      if (!detail::parse_double(field.substr(colon + 1), value)) {
        detail::parse_error(path, line_number,
                            "bad feature value in '" + field + "'");
      }
      max_feature = std::max(max_feature, static_cast<int>(index));
      entries.emplace_back(row, static_cast<int>(index) - 1, value);
    }
  }
  if (labels.empty()) {
    throw std::runtime_error("parse_libsvm: no samples in " + path.string());
  }

  Dataset data;
  data.rows.resize(static_cast<int>(labels.size()), std::max(max_feature, 1));
  data.rows.setFromTriplets(entries.begin(), entries.end());
  data.rows.makeCompressed();
  data.labels = Eigen::Map<Eigen::VectorXd>(labels.data(),
                                            static_cast<Eigen::Index>(labels.size()));

  const std::set<double> distinct(labels.begin(), labels.end());
  if (distinct == std::set<double>{0.0, 1.0}) {
    for (Eigen::Index i = 0; i < data.labels.size(); ++i) {
      data.labels[i] = data.labels[i] == 0.0 ? -1.0 : 1.0;
    }
    data.label_note = "labels {0,1} mapped to {-1,+1}";
  } else if (distinct == std::set<double>{1.0, 2.0}) {
    for (Eigen::Index i = 0; i < data.labels.size(); ++i) {
      data.labels[i] = data.labels[i] == 2.0 ? -1.0 : 1.0;
    }
    data.label_note = "labels {1,2} mapped to {+1,-1}";
  }
  return data;
}

inline std::string serialize_libsvm(const Dataset& data) {
  std::string out;
  for (Eigen::Index i = 0; i < data.num_samples(); ++i) {
    out += detail::format_double(data.labels[i]);
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             data.rows, i);
         it; ++it) {
      out += ' ';
      out += std::to_string(it.col() + 1);
      out += ':';
      out += detail::format_double(it.value());
    }
    out += '\n';
  }
  return out;
}

inline void write_libsvm(const std::filesystem::path& path,
                         const Dataset& data) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_libsvm: cannot open " + path.string());
  }
  out << serialize_libsvm(data);
}

/// Rectangular numeric CSV; one column carries the target value.
inline Dataset parse_dense_csv(const std::filesystem::path& path,
                               int label_column) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("parse_dense_csv: cannot open " + path.string());
  }
  std::vector<std::vector<double>> table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::string_view cell(line.data() + start, end - start);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
        cell.remove_prefix(1);
      }
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r' ||
                               cell.back() == '\t')) {
        cell.remove_suffix(1);
      }
      double value = 0.0;
      if (!detail::parse_double(cell, value)) {
        detail::parse_error(path, line_number,
                            "non-numeric cell '" + std::string(cell) + "'");
      }
      row.push_back(value);
      if (end == line.size()) break;
      start = end + 1;
    }
    if (!table.empty() && row.size() != table.front().size()) {
      detail::parse_error(path, line_number, "ragged row");
    }
    table.push_back(std::move(row));
  }
  if (table.empty()) {
    throw std::runtime_error("parse_dense_csv: no rows in " + path.string());
  }
  const int columns = static_cast<int>(table.front().size());
  if (label_column < 0 || label_column >= columns) {
    throw std::invalid_argument("parse_dense_csv: label column out of range");
  }
  if (columns < 2) {
    throw std::runtime_error("parse_dense_csv: need at least one feature column");
  }

  Dataset data;
  const auto m = static_cast<Eigen::Index>(table.size());
  Eigen::MatrixXd features(m, columns - 1);
  data.labels.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    int out_col = 0;
    for (int j = 0; j < columns; ++j) {
      if (j == label_column) {
        data.labels[i] = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      } else {
        features(i, out_col++) = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
  }
  data.rows = features.sparseView();
  data.rows.makeCompressed();
  data.validate();
  return data;
}

inline void write_dense_csv(const std::filesystem::path& path,
                            const Dataset& data, int label_column) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_dense_csv: cannot open " + path.string());
  }
  const int columns = static_cast<int>(data.dim()) + 1;
  if (label_column < 0 || label_column >= columns) {
    throw std::invalid_argument("write_dense_csv: label column out of range");
  }
  for (Eigen::Index i = 0; i < data.num_samples(); ++i) {
    const Eigen::VectorXd row = data.rows.row(i).toDense().transpose();
    int in_col = 0;
    for (int j = 0; j < columns; ++j) {
      if (j > 0) out << ',';
      if (j == label_column) {
        out << detail::format_double(data.labels[i]);
      } else {
        out << detail::format_double(row[in_col++]);
      }
    }
    out << '\n';
  }
}

}  // namespace adafw

#endif  // ADAFW_DATA_HPP
