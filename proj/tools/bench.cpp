// Command-line benchmark harness: runs seeded experiments from JSON spec
// files, sweeps the inner iteration count, tunes learning rates, and
// generates the synthetic classification dataset.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "adafw/adafw.hpp"

namespace {

adafw::ExperimentSpec load_spec(const std::string& path,
                                const std::string& output_dir, bool timing) {
  adafw::ExperimentSpec spec = adafw::load_experiment_spec(path);
  if (!output_dir.empty()) spec.output_dir = output_dir;
  if (timing) spec.timing = true;
  return spec;
}

void print_runs(const adafw::ExperimentResult& result) {
  for (const auto& run : result.runs) {
    const auto& last = run.trace.rows.back();
    std::printf("%-24s iters=%-7lld epochs=%-8.3f gap=%-12.5g f=%-12.5g wall=%.3fs\n",
                run.name.c_str(), run.trace.iterations, last.epoch,
                last.duality_gap, last.objective, run.trace.wall_seconds);
  }
  std::printf("manifest: %s\n", result.manifest_path.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-free adaptive-gradient optimization benchmarks"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string output_dir;
  bool timing = false;

  auto* run_cmd = app.add_subcommand("run", "Run every optimizer in a spec");
  run_cmd->add_option("spec", spec_path, "Experiment spec (JSON)")->required();
  run_cmd->add_option("--out", output_dir, "Output directory override");
  run_cmd->add_flag("--timing", timing,
                    "Record per-row wall-clock seconds (traces are then not "
                    "byte-reproducible)");

  std::string k_list = "1,2,5,10";
  auto* sweep_cmd =
      app.add_subcommand("sweep-k", "Rerun the inner-loop optimizer across K");
  sweep_cmd->add_option("spec", spec_path, "Experiment spec (JSON)")->required();
  sweep_cmd->add_option("--k", k_list, "Comma-separated K values");
  sweep_cmd->add_option("--out", output_dir, "Output directory override");
  sweep_cmd->add_flag("--timing", timing, "Record per-row wall-clock seconds");

  int budget = 8;
  auto* tune_cmd = app.add_subcommand("tune", "Tune the learning rate grid");
  tune_cmd->add_option("spec", spec_path, "Experiment spec (JSON)")->required();
  tune_cmd->add_option("--budget", budget, "Maximum number of runs");
  tune_cmd->add_option("--out", output_dir, "Output directory override");

  long long gen_m = 1000, gen_n = 100;
  std::uint64_t gen_seed = 0;
  double gen_flip = 0.05;
  std::string gen_out = "synthetic_svm.libsvm";
  auto* gen_cmd =
      app.add_subcommand("gen-svm", "Generate the synthetic classification set");
  gen_cmd->add_option("--m", gen_m, "Sample count");
  gen_cmd->add_option("--n", gen_n, "Feature count");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--flip", gen_flip, "Label flip probability");
  gen_cmd->add_option("--out", gen_out, "Output path (LIBSVM format)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto spec = load_spec(spec_path, output_dir, timing);
      const auto result = adafw::run_experiment(spec);
      print_runs(result);
    } else if (sweep_cmd->parsed()) {
      const auto spec = load_spec(spec_path, output_dir, timing);
      std::vector<int> k_values;
      std::stringstream stream(k_list);
      std::string token;
      while (std::getline(stream, token, ',')) {
        k_values.push_back(std::stoi(token));
      }
      const auto result = adafw::sweep_k(spec, k_values);
      print_runs(result);
      for (const auto& entry : result.manifest.at("sweep_k")) {
        std::printf("K=%-4d gap=%-12.5g cpu=%.3fs\n", entry.at("K").get<int>(),
                    entry.at("final_duality_gap").get<double>(),
                    entry.at("cpu_seconds").get<double>());
      }
    } else if (tune_cmd->parsed()) {
      const auto spec = load_spec(spec_path, output_dir, /*timing=*/false);
      const auto result = adafw::tune_learning_rate(spec, budget);
      std::printf("best eta = %.6g (10^{%d/2}), score = %.6g%s%s\n",
                  result.best_eta, result.best_exponent, result.best_score,
                  result.converged ? "" : " [budget exhausted]",
                  result.all_diverged ? " [all candidates diverged]" : "");
    } else if (gen_cmd->parsed()) {
      adafw::SyntheticSvmSpec spec;
      spec.samples = gen_m;
      spec.features = gen_n;
      spec.seed = gen_seed;
      spec.flip_probability = gen_flip;
      const adafw::Dataset data = adafw::generate_synthetic_svm(spec);
      adafw::atomic_write(gen_out, adafw::serialize_libsvm(data));
      std::printf("wrote %lld x %lld dataset to %s\n", gen_m, gen_n,
                  gen_out.c_str());
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return 0;
}
