#ifndef ADAFW_EXPERIMENT_HPP
#define ADAFW_EXPERIMENT_HPP

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adafw/data.hpp"
#include "adafw/detail/sha1.hpp"
#include "adafw/detail/text.hpp"
#include "adafw/optimizers.hpp"

namespace adafw {

inline constexpr const char* kCodeVersion = "adafw 0.1.0";

struct DatasetSource {
  enum class Kind { synthetic_svm, libsvm_file, csv_file };
  Kind kind = Kind::synthetic_svm;
  SyntheticSvmSpec synthetic;
  std::filesystem::path path;
  int label_column = 0;

  Dataset load() const {
    switch (kind) {
      case Kind::synthetic_svm:
        return generate_synthetic_svm(synthetic);
      case Kind::libsvm_file:
        return parse_libsvm(path);
      case Kind::csv_file:
        return parse_dense_csv(path, label_column);
    }
    throw std::logic_error("unknown dataset source");
  }
};

struct RegionSpec {
  RegionKind kind = RegionKind::l1_ball;
  double radius = 1.0;
  std::optional<Eigen::VectorXd> center;  // absent = origin

  FeasibleRegion build(Eigen::Index dim) const {
    Eigen::VectorXd c = center.value_or(Eigen::VectorXd::Zero(dim));
    if (c.size() != dim) {
      throw std::invalid_argument("region center dimension does not match data");
    }
    return FeasibleRegion(kind, std::move(c), radius);
  }
};

struct ExperimentSpec {
  DatasetSource dataset;
  Loss loss = Loss::squared_hinge;
  bool separable = true;
  RegionSpec region;
  std::vector<OptimizerConfig> optimizers;
  double epochs = 0.0;
  long long iterations = 0;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "traces";
  long long gap_every = 0;  // 0 = once per epoch
  bool timing = false;
  nlohmann::json raw;

  void validate() const {
    if (optimizers.empty()) {
      throw std::invalid_argument("experiment spec: needs at least one optimizer");
    }
    if (epochs <= 0.0 && iterations <= 0) {
      throw std::invalid_argument("experiment spec: needs epochs or iterations");
    }
    if (!(region.radius > 0.0)) {
      throw std::invalid_argument("experiment spec: region radius must be positive");
    }
  }
};

// ---------------------------------------------------------------------------
// JSON parsing

namespace detail {

inline Algorithm algorithm_from_name(const std::string& name) {
  static const std::map<std::string, Algorithm> table = {
      {"sfw", Algorithm::sfw},         {"svrf", Algorithm::svrf},
      {"spider_fw", Algorithm::spider_fw}, {"orgfw", Algorithm::orgfw},
      {"csfw", Algorithm::csfw},       {"adasfw", Algorithm::adasfw},
      {"adasvrf", Algorithm::adasvrf}, {"adacsfw", Algorithm::adacsfw},
      {"adamsfw", Algorithm::adamsfw}, {"adagrad", Algorithm::adagrad},
      {"amsgrad", Algorithm::amsgrad},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    throw std::invalid_argument("unknown algorithm '" + name + "'");
  }
  return it->second;
}

inline Loss loss_from_name(const std::string& name) {
  static const std::map<std::string, Loss> table = {
      {"squared_hinge", Loss::squared_hinge},
      {"squared_error", Loss::squared_error},
      {"logistic", Loss::logistic},
      {"sigmoid_nonconvex", Loss::sigmoid_nonconvex},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    throw std::invalid_argument("unknown loss '" + name + "'");
  }
  return it->second;
}

inline GammaSchedule gamma_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "cap_one") return GammaSchedule::cap_one();
    if (name == "harmonic") return GammaSchedule::harmonic();
    if (name == "auto") return GammaSchedule{};
    throw std::invalid_argument("unknown gamma schedule '" + name + "'");
  }
  if (j.is_object()) {
    if (j.contains("power_nu")) {
      return GammaSchedule::power_nu(j.at("power_nu").get<double>());
    }
    if (j.contains("constant")) {
      return GammaSchedule::constant(j.at("constant").get<double>());
    }
  }
  throw std::invalid_argument("bad gamma schedule");
}

inline BatchSchedule batch_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "auto") return BatchSchedule{};
    if (name == "quadratic_over_sqrt_m")
      return BatchSchedule::of(BatchRule::quadratic_over_sqrt_m);
    if (name == "linear") return BatchSchedule::of(BatchRule::linear);
    if (name == "doubling") return BatchSchedule::of(BatchRule::doubling);
    if (name == "full") return BatchSchedule::full_batch();
    throw std::invalid_argument("unknown batch schedule '" + name + "'");
  }
  if (j.is_object()) {
    if (j.contains("constant_fraction")) {
      return BatchSchedule::constant_fraction(
          j.at("constant_fraction").get<long long>());
    }
    if (j.contains("constant_count")) {
      return BatchSchedule::constant_count(
          j.at("constant_count").get<long long>());
    }
  }
  throw std::invalid_argument("bad batch schedule");
}

inline ProblemConstants constants_from_json(const nlohmann::json& j) {
  ProblemConstants c;
  c.smoothness = j.value("L", 0.0);
  c.gradient_bound = j.value("G", 0.0);
  c.diameter = j.value("D", 0.0);
  c.a_norm2 = j.value("A_norm2", 0.0);
  c.d1_a = j.value("D1_A", 0.0);
  c.dinf_a = j.value("Dinf_A", 0.0);
  return c;
}

inline void apply_theorem_schedule(OptimizerConfig& config,
                                   const nlohmann::json& j, long long m) {
  TheoremOptions options;
  options.kappa = j.value("kappa", 1.0);
  options.nu = j.value("nu", 0.05);
  options.k0 = j.value("k0", 0);
  options.inner_iterations = config.inner_iterations;
  options.lambda_min = j.value("lambda_min", config.delta);
  options.horizon = j.value("horizon", 0LL);
  options.batch = j.value("batch", 0LL);
  const int id = j.at("id").get<int>();
  const auto set =
      theoretical_schedule(id, constants_from_json(j.at("constants")), options, m);
  config.batch = BatchSchedule::from_function(set.batch_size);
  config.eta_schedule = set.eta;
  if (id == 2) {
    config.gamma = options.horizon > 0
                       ? GammaSchedule::constant(set.gamma(0))
                       : GammaSchedule::power_nu(options.nu);
  } else {
    config.gamma = GammaSchedule::harmonic();
  }
  if (id == 3) config.snapshot_k0 = options.k0;
}

inline OptimizerConfig optimizer_from_json(const nlohmann::json& j,
                                           long long m) {
  OptimizerConfig config;
  config.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
  config.name = j.value("name", std::string());
  config.inner_iterations = j.value("K", 5);
  config.eta = j.value("eta", 1.0);
  if (j.contains("gamma")) config.gamma = gamma_from_json(j.at("gamma"));
  if (j.contains("batch")) config.batch = batch_from_json(j.at("batch"));
  config.delta = j.value("delta", 1e-8);
  config.beta_m = j.value("beta_m", 0.9);
  config.beta_s = j.value("beta_s", 0.99);
  if (j.contains("clip")) {
    config.clip_enabled = true;
    config.clip_lambda_min = j.at("clip").value("min", 0.0);
    config.clip_lambda_max = j.at("clip").value("max", 1e12);
  }
  if (j.contains("rho_power")) {
    const double p = j.at("rho_power").get<double>();
    config.rho_schedule = [p](long long t) {
      return std::pow(static_cast<double>(t + 2), -p);
    };
  }
  config.snapshot_k0 = j.value("snapshot_k0", 4);
  if (j.contains("theorem")) apply_theorem_schedule(config, j.at("theorem"), m);
  return config;
}

inline DatasetSource dataset_from_json(const nlohmann::json& j) {
  DatasetSource source;
  const std::string type = j.at("type").get<std::string>();
  if (type == "synthetic_svm") {
    source.kind = DatasetSource::Kind::synthetic_svm;
    source.synthetic.samples = j.at("m").get<long long>();
    source.synthetic.features = j.at("n").get<long long>();
    source.synthetic.flip_probability = j.value("flip_probability", 0.05);
    source.synthetic.seed = j.value("seed", 0ULL);
  } else if (type == "libsvm") {
    source.kind = DatasetSource::Kind::libsvm_file;
    source.path = j.at("path").get<std::string>();
  } else if (type == "csv") {
    source.kind = DatasetSource::Kind::csv_file;
    source.path = j.at("path").get<std::string>();
    source.label_column = j.value("label_column", 0);
  } else {
    throw std::invalid_argument("unknown dataset type '" + type + "'");
  }
  return source;
}

}  // namespace detail

inline ExperimentSpec parse_experiment_spec(const nlohmann::json& j) {
  ExperimentSpec spec;
  spec.raw = j;
  spec.dataset = detail::dataset_from_json(j.at("dataset"));
  spec.loss = detail::loss_from_name(j.at("loss").get<std::string>());
  spec.separable = j.value("separable", true);

  const auto& region = j.at("region");
  const std::string kind = region.at("kind").get<std::string>();
  if (kind == "l1_ball") {
    spec.region.kind = RegionKind::l1_ball;
  } else if (kind == "linf_ball") {
    spec.region.kind = RegionKind::linf_ball;
  } else {
    throw std::invalid_argument("unknown region kind '" + kind + "'");
  }
  spec.region.radius = region.at("radius").get<double>();
  if (region.contains("center")) {
    const auto& c = region.at("center");
    if (c.is_array()) {
      Eigen::VectorXd center(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        center[static_cast<Eigen::Index>(i)] = c[i].get<double>();
      }
      spec.region.center = std::move(center);
    } else {
      throw std::invalid_argument("region center must be an array");
    }
  }

  spec.epochs = j.value("epochs", 0.0);
  spec.iterations = j.value("iterations", 0LL);
  spec.seed = j.value("seed", 0ULL);
  spec.output_dir = j.value("output_dir", std::string("traces"));
  spec.gap_every = j.value("gap_every", 0LL);
  spec.timing = j.value("timing", false);

  // Dataset size is needed by theorem-mode schedules before loading; take it
  // from the synthetic spec or probe the file lazily at run time.
  long long m = spec.dataset.kind == DatasetSource::Kind::synthetic_svm
                    ? spec.dataset.synthetic.samples
                    : 0;
  for (const auto& opt : j.at("optimizers")) {
    if (m == 0 && opt.contains("theorem")) {
      m = spec.dataset.load().num_samples();
    }
    spec.optimizers.push_back(detail::optimizer_from_json(opt, std::max(m, 1LL)));
  }
  spec.validate();
  return spec;
}

inline ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open spec file " + path.string());
  }
  nlohmann::json j;
  in >> j;
  return parse_experiment_spec(j);
}

// ---------------------------------------------------------------------------
// Trace files

inline std::string trace_to_csv(const OptimizerTrace& trace) {
  std::string out = "t,epoch,objective,duality_gap,seconds,grad_evals,batch_size\n";
  for (const auto& row : trace.rows) {
    out += std::to_string(row.t);
    out += ',';
    out += detail::format_double(row.epoch);
    out += ',';
    out += detail::format_double(row.objective);
    out += ',';
    out += detail::format_double(row.duality_gap);
    out += ',';
    out += detail::format_double(row.seconds);
    out += ',';
    out += std::to_string(row.grad_evals);
    out += ',';
    out += std::to_string(row.batch_size);
    out += '\n';
  }
  return out;
}

inline std::vector<TraceRow> parse_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty trace file " + path.string());
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    const std::string_view view(line);
    while (start <= view.size()) {
      std::size_t end = view.find(',', start);
      if (end == std::string_view::npos) end = view.size();
      fields.push_back(view.substr(start, end - start));
      if (end == view.size()) break;
      start = end + 1;
    }
    if (fields.size() != 7) {
      throw std::runtime_error("bad trace row in " + path.string());
    }
    TraceRow row;
    if (!detail::parse_long(fields[0], row.t) ||
        !detail::parse_double(fields[1], row.epoch) ||
        !detail::parse_double(fields[2], row.objective) ||
        !detail::parse_double(fields[3], row.duality_gap) ||
        !detail::parse_double(fields[4], row.seconds) ||
        !detail::parse_long(fields[5], row.grad_evals) ||
        !detail::parse_long(fields[6], row.batch_size)) {
      throw std::runtime_error("bad trace row in " + path.string());
    }
    rows.push_back(row);
  }
  return rows;
}

inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? "."
                                          : path.parent_path());
  const std::filesystem::path temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + temp.string());
    }
    out << content;
  }
  std::filesystem::rename(temp, path);
}

// ---------------------------------------------------------------------------
// Experiment execution

struct RunSummary {
  std::string name;
  std::filesystem::path trace_path;
  OptimizerTrace trace;
};

struct ExperimentResult {
  std::vector<RunSummary> runs;
  std::filesystem::path manifest_path;
  nlohmann::json manifest;
};

namespace detail {

inline std::string sanitize_file_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "run" : out;
}

inline nlohmann::json checks_to_json(const RunChecks& checks) {
  return {
      {"inner_steps", checks.inner_steps},
      {"lemma1_violations", checks.lemma1_violations},
      {"lemma2_violations", checks.lemma2_violations},
      {"feasibility_violations", checks.feasibility_violations},
      {"step_range_violations", checks.step_range_violations},
      {"metric_monotonicity_violations", checks.metric_monotonicity_violations},
  };
}

inline std::string inputs_hash(const ExperimentSpec& spec,
                               const Dataset& data) {
  const std::string spec_hash = git_blob_sha1(spec.raw.dump());
  const std::string data_hash = git_blob_sha1(serialize_libsvm(data));
  const std::string version_hash = git_blob_sha1(kCodeVersion);
  return git_blob_sha1(spec_hash + data_hash + version_hash);
}

inline ExperimentResult run_configs(const ExperimentSpec& spec,
                                    const std::vector<OptimizerConfig>& configs,
                                    const std::string& manifest_name) {
  spec.validate();
  const Dataset data = spec.dataset.load();
  const FiniteSumObjective objective(spec.loss, data, spec.separable);
  const FeasibleRegion region = spec.region.build(data.dim());

  ExperimentResult result;
  nlohmann::json runs_json = nlohmann::json::array();
  std::map<std::string, int> name_counts;
  for (const OptimizerConfig& base : configs) {
    OptimizerConfig config = base;
    config.seed = spec.seed;
    config.collect_timing = spec.timing;
    if (spec.gap_every > 0) config.gap_every = spec.gap_every;
    if (config.max_iterations <= 0) config.max_iterations = spec.iterations;
    if (config.max_epochs <= 0.0) config.max_epochs = spec.epochs;

    std::string name = sanitize_file_name(config.display_name());
    const int count = ++name_counts[name];
    if (count > 1) name += "_" + std::to_string(count);

    RunSummary summary;
    summary.name = name;
    summary.trace = run(objective, region, config);
    summary.trace_path = spec.output_dir / (name + ".csv");
    atomic_write(summary.trace_path, trace_to_csv(summary.trace));

    nlohmann::json run_json = {
        {"name", name},
        {"algorithm", algorithm_name(config.algorithm)},
        {"file", summary.trace_path.filename().string()},
        {"iterations", summary.trace.iterations},
        {"grad_evals", summary.trace.grad_evals},
        {"wall_seconds", summary.trace.wall_seconds},
        {"cpu_seconds", summary.trace.cpu_seconds},
        {"final_objective", summary.trace.rows.back().objective},
        {"final_duality_gap", summary.trace.rows.back().duality_gap},
        {"checks", checks_to_json(summary.trace.checks)},
    };
    runs_json.push_back(std::move(run_json));
    result.runs.push_back(std::move(summary));
  }

  nlohmann::json manifest = {
      {"code_version", kCodeVersion},
      {"spec", spec.raw},
      {"inputs_hash", inputs_hash(spec, data)},
      {"dataset",
       {{"samples", data.num_samples()},
        {"features", data.dim()},
        {"hash", git_blob_sha1(serialize_libsvm(data))},
        {"label_note", data.label_note}}},
      {"runs", runs_json},
      {"timing_note",
       "wall_seconds and cpu_seconds are machine-dependent; trace rows carry "
       "seconds only when timing collection is enabled"},
  };
  result.manifest = manifest;
  result.manifest_path = spec.output_dir / manifest_name;
  atomic_write(result.manifest_path, manifest.dump(2) + "\n");
  return result;
}

}  // namespace detail

/// Runs every optimizer in the spec on the shared problem and seed; writes
/// one trace CSV per optimizer plus a manifest.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  return detail::run_configs(spec, spec.optimizers, "manifest.json");
}

/// Reruns the first inner-loop optimizer of the spec across K values. Each
/// run is timed around its whole execution so the K/time trade-off can be
/// read from the report even when per-row timing is disabled.
inline ExperimentResult sweep_k(const ExperimentSpec& spec,
                                const std::vector<int>& k_values) {
  if (k_values.empty()) {
    throw std::invalid_argument("sweep_k: no K values");
  }
  for (int k : k_values) {
    if (k < 1) throw std::invalid_argument("sweep_k: K values must be >= 1");
  }
  const OptimizerConfig* base = nullptr;
  for (const auto& config : spec.optimizers) {
    if (is_ada_algorithm(config.algorithm) ||
        config.algorithm == Algorithm::adamsfw) {
      base = &config;
      break;
    }
  }
  if (base == nullptr) {
    throw std::invalid_argument("sweep_k: no inner-loop optimizer in spec");
  }
  std::vector<OptimizerConfig> configs;
  for (int k : k_values) {
    OptimizerConfig config = *base;
    config.inner_iterations = k;
    config.name = config.display_name() + "_K" + std::to_string(k);
    configs.push_back(std::move(config));
  }
  ExperimentResult result =
      detail::run_configs(spec, configs, "sweep_k_manifest.json");

  nlohmann::json report = nlohmann::json::array();
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    const auto& trace = result.runs[i].trace;
    report.push_back({
        {"K", k_values[i]},
        {"file", result.runs[i].trace_path.filename().string()},
        {"wall_seconds", trace.wall_seconds},
        {"cpu_seconds", trace.cpu_seconds},
        {"final_duality_gap", trace.rows.back().duality_gap},
        {"final_objective", trace.rows.back().objective},
    });
  }
  result.manifest["sweep_k"] = report;
  atomic_write(spec.output_dir / "sweep_k_report.json", report.dump(2) + "\n");
  return result;
}

// ---------------------------------------------------------------------------
// Learning-rate tuning on the eta = 10^{i/2} grid

struct GridSearchResult {
  int best = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> evaluations;
};

/// Narrowing grid search over integer exponents: seed {-2, 0, 2}, then keep
/// evaluating the unexplored neighbors of the incumbent (which extends the
/// grid automatically when the incumbent sits at an endpoint) until both
/// neighbors are known or the budget runs out.
inline GridSearchResult narrowing_grid_search(
    const std::function<double(int)>& score, int budget) {
  if (budget < 3) {
    throw std::invalid_argument("narrowing_grid_search: budget must be >= 3");
  }
  GridSearchResult result;
  std::map<int, double> seen;
  int used = 0;
  const auto evaluate = [&](int i) {
    if (seen.count(i) || used >= budget) return;
    const double s = score(i);
    seen[i] = s;
    result.evaluations.emplace_back(i, s);
    ++used;
  };
  for (int i : {-2, 0, 2}) evaluate(i);
  while (true) {
    int best = seen.begin()->first;
    for (const auto& [i, s] : seen) {
      if (s < seen[best]) best = i;
    }
    result.best = best;
    std::vector<int> missing;
    for (int neighbor : {best - 1, best + 1}) {
      if (!seen.count(neighbor)) missing.push_back(neighbor);
    }
    if (missing.empty()) {
      result.converged = true;
      return result;
    }
    if (used >= budget) {
      result.converged = false;
      return result;
    }
    evaluate(missing.front());
  }
}

struct TuneResult {
  int best_exponent = 0;
  double best_eta = 1.0;
  double best_score = 0.0;
  bool converged = false;
  bool all_diverged = false;
  std::vector<std::pair<int, double>> evaluations;  // (exponent, score)
};

/// Tunes the first optimizer's constant learning rate over {10^{i/2}}.
/// Convex losses score by final duality gap, the nonconvex loss by final
/// objective; a run whose score is not finite or got worse than its start
/// counts as diverged.
inline TuneResult tune_learning_rate(const ExperimentSpec& spec, int budget) {
  spec.validate();
  if (budget < 3) {
    throw std::invalid_argument("tune_learning_rate: budget must be >= 3 runs");
  }
  const Dataset data = spec.dataset.load();
  const FiniteSumObjective objective(spec.loss, data, spec.separable);
  const FeasibleRegion region = spec.region.build(data.dim());
  const bool convex = objective.convex();

  std::map<int, bool> diverged;
  const auto score = [&](int exponent) {
    OptimizerConfig config = spec.optimizers.front();
    config.seed = spec.seed;
    config.eta = std::pow(10.0, exponent / 2.0);
    if (spec.gap_every > 0) config.gap_every = spec.gap_every;
    if (config.max_iterations <= 0) config.max_iterations = spec.iterations;
    if (config.max_epochs <= 0.0) config.max_epochs = spec.epochs;
    const OptimizerTrace trace = run(objective, region, config);
    const auto& first = trace.rows.front();
    const auto& last = trace.rows.back();
    const double value = convex ? last.duality_gap : last.objective;
    const double start = convex ? first.duality_gap : first.objective;
    diverged[exponent] = !std::isfinite(value) || value > start;
    return std::isfinite(value) ? value
                                : std::numeric_limits<double>::infinity();
  };

  const GridSearchResult grid = narrowing_grid_search(score, budget);
  TuneResult result;
  result.evaluations = grid.evaluations;
  result.converged = grid.converged;
  result.all_diverged = true;
  for (const auto& [i, s] : grid.evaluations) {
    if (!diverged[i]) result.all_diverged = false;
  }
  if (result.all_diverged) {
    // Fall back to the smallest rate evaluated.
    int smallest = grid.evaluations.front().first;
    for (const auto& [i, s] : grid.evaluations) smallest = std::min(smallest, i);
    result.best_exponent = smallest;
    result.converged = false;
  } else {
    result.best_exponent = grid.best;
  }
  result.best_eta = std::pow(10.0, result.best_exponent / 2.0);
  for (const auto& [i, s] : grid.evaluations) {
    if (i == result.best_exponent) result.best_score = s;
  }

  nlohmann::json report = {
      {"best_exponent_times_two", result.best_exponent},
      {"best_eta", result.best_eta},
      {"best_score", result.best_score},
      {"criterion", convex ? "final_duality_gap" : "final_objective"},
      {"converged", result.converged},
      {"all_diverged", result.all_diverged},
      {"evaluations", nlohmann::json::array()},
  };
  for (const auto& [i, s] : grid.evaluations) {
    report["evaluations"].push_back(
        {{"exponent_times_two", i},
         {"eta", std::pow(10.0, i / 2.0)},
         {"score", std::isfinite(s) ? nlohmann::json(s)
                                    : nlohmann::json("diverged")}});
  }
  atomic_write(spec.output_dir / "tune_report.json", report.dump(2) + "\n");
  return result;
}

}  // namespace adafw

#endif  // ADAFW_EXPERIMENT_HPP
