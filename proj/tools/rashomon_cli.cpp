// rashomon: command-line entry point for the sweeps and one-off evaluators.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rashomon/error.hpp"
#include "rashomon/experiments.hpp"
#include "rashomon/linear_patterns.hpp"
#include "rashomon/ridge_rashomon.hpp"
#include "rashomon/rng.hpp"
#include "rashomon/rset_metrics.hpp"
#include "rashomon/theory_bounds.hpp"
#include "rashomon/tree_space.hpp"

namespace fs = std::filesystem;
using namespace rashomon;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool deterministic = false;
};

struct DataArgs {
  std::string path;
  std::string label = "label";
  bool median_binarize = false;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTractability:
      return 3;
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kMissingFile:
    case ErrorCode::kMissingColumn:
    case ErrorCode::kLabelCardinality:
    case ErrorCode::kNonNumericCell:
    case ErrorCode::kEmptyFile:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kNonBinaryData:
      return 2;
    default:
      return 1;
  }
}

ExperimentConfig load_config(const Globals& g) {
  require(!g.config.empty(), ErrorCode::kConfig, "this subcommand needs --config <json>");
  ExperimentConfig c = ExperimentConfig::from_file(g.config);
  if (g.seed) c.seed = *g.seed;
  if (!g.out.empty()) c.output_dir = g.out;
  return c;
}

std::string base_dir(const Globals& g) { return fs::path(g.config).parent_path().string(); }

std::string out_dir(const Globals& g, const std::string& fallback = "out") { return g.out.empty() ? fallback : g.out; }

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  const std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path);
  out << text << '\n';
  std::cerr << "wrote " << path << '\n';
}

void emit_table(const Table& t, const std::string& dir, const std::string& name, bool deterministic) {
  const std::string path = (fs::path(dir) / name).string();
  t.write(path, deterministic);
  std::cerr << "wrote " << path << " (" << t.rows().size() << " rows)\n";
}

Dataset load_data(const DataArgs& a) {
  require(!a.path.empty(), ErrorCode::kConfig, "--data <csv> is required");
  Dataset d = load_csv(a.path, a.label);
  if (a.median_binarize) d = binarize(d, MedianThreshold{});
  return d;
}

void add_data_options(CLI::App* cmd, DataArgs& a) {
  cmd->add_option("--data", a.path, "CSV file with a header row");
  cmd->add_option("--label", a.label, "label column name")->capture_default_str();
  cmd->add_flag("--binarize-median", a.median_binarize, "threshold every feature at its median");
}

Table run_metrics(const ExperimentConfig& c, const std::string& base) {
  std::vector<MetricsRow> rows;
  for (const auto& source : c.datasets) {
    const Dataset d = load_source(source, base);
    for (double rho : c.levels) {
      const std::size_t draws = rho > 0.0 ? c.draws_per_level : 1;
      for (std::size_t draw = 0; draw < draws; ++draw) {
        const std::uint64_t seed = derive_seed(c.seed, draw);
        const Dataset noisy = rho > 0.0 ? flip_labels_uniform(d, rho, seed) : d;
        if (c.space == "linear") {
          const auto r = branch_and_bound_patterns(noisy, c.theta, c.linear);
          rows.push_back(summarize_patterns(source.name, c.theta, seed, r.patterns, noisy.labels(), r.erm_loss));
        } else {
          for (int depth : c.depths) {
            require(depth <= kMaxExactTreeDepth, ErrorCode::kTractability, "exact tree enumeration is capped at depth 3");
            TreeRashomonConfig tc;
            tc.collect_patterns = true;
            tc.pattern_cap = c.pattern_cap;
            const auto r = enumerate_rashomon_trees(noisy, depth, c.theta, c.theta_mode, tc);
            const double theta = c.theta_mode == ThetaMode::kAdditive ? c.theta : c.theta * r.min_loss;
            rows.push_back(summarize_patterns(source.name + "/d" + std::to_string(depth), theta, seed, r.patterns,
                                              noisy.labels(), r.min_loss));
          }
        }
      }
    }
  }
  return metrics_table(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rashomon set enumeration, metrics and noise experiments"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "experiment config (JSON)");
  app.add_option("--seed", g.seed, "override the config seed");
  app.add_option("--out", g.out, "output directory");
  app.add_flag("--deterministic", g.deterministic, "omit the timestamp header line from CSV output");
  app.fallthrough();

  auto* complexity = app.add_subcommand("sweep-complexity", "Rashomon ratio against hypothesis-space complexity");
  auto* noise = app.add_subcommand("sweep-noise", "Rashomon count, patterns and diversity against label noise");
  auto* path = app.add_subcommand("path-sim", "train/validation gap and CV depth against label noise");
  auto* metrics = app.add_subcommand("metrics", "pattern metrics per dataset, theta and noise draw");

  auto* ridge = app.add_subcommand("ridge", "ridge Rashomon volume and ratio over a lambda grid");
  DataArgs ridge_data;
  double ridge_C = 1.0, ridge_theta = 0.1;
  std::vector<double> lambdas{0.0, 0.5, 1.0, 2.0};
  std::size_t ridge_draws = 2000;
  std::optional<double> ridge_lmax;
  add_data_options(ridge, ridge_data);
  ridge->add_option("--C", ridge_C, "base ridge penalty")->capture_default_str();
  ridge->add_option("--theta", ridge_theta, "Rashomon parameter")->capture_default_str();
  ridge->add_option("--lambda", lambdas, "attribute-noise variances")->capture_default_str();
  ridge->add_option("--draws", ridge_draws, "Monte Carlo draws for the noise/penalty check")->capture_default_str();
  ridge->add_option("--L-max", ridge_lmax, "loss bound; defaults to the mean squared target");

  auto* bounds = app.add_subcommand("bounds", "generalization bounds and Bernstein/Hoeffding comparison");
  BoundInputs bi;
  double lo = 0.0, hi = 1.0;
  bounds->add_option("--n", bi.n, "sample size")->capture_default_str();
  bounds->add_option("--rset-size", bi.rset_size, "Rashomon set size")->capture_default_str();
  bounds->add_option("--delta", bi.delta, "failure probability")->capture_default_str();
  bounds->add_option("--sigma-sq", bi.sigma_sq, "loss variance")->capture_default_str();
  bounds->add_option("--C-loss", bi.C_loss, "loss bound for the least-squares tail")->capture_default_str();
  bounds->add_option("--a", lo, "lower end of the loss range")->capture_default_str();
  bounds->add_option("--b", hi, "upper end of the loss range")->capture_default_str();

  auto* bnb = app.add_subcommand("bnb-patterns", "pattern Rashomon set of linear classifiers");
  DataArgs bnb_data;
  double bnb_theta = 0.05;
  std::string bnb_packed;
  bool bnb_intercept = false;
  add_data_options(bnb, bnb_data);
  bnb->add_option("--theta", bnb_theta, "additive Rashomon parameter")->capture_default_str();
  bnb->add_option("--packed", bnb_packed, "also write patterns as a packed bitstream");
  bnb->add_flag("--intercept-column", bnb_intercept, "features already contain a constant column");

  auto* tree = app.add_subcommand("tree-rset", "exact Rashomon set of fully grown trees");
  DataArgs tree_data;
  int tree_depth = 2;
  double tree_theta = 0.05;
  std::string tree_mode = "additive";
  std::size_t tree_cap = 1'000'000;
  bool tree_patterns = false;
  add_data_options(tree, tree_data);
  tree->add_option("--depth", tree_depth, "tree depth, at most 3")->capture_default_str();
  tree->add_option("--theta", tree_theta, "Rashomon parameter")->capture_default_str();
  tree->add_option("--theta-mode", tree_mode, "additive or multiplicative")->capture_default_str();
  tree->add_option("--pattern-cap", tree_cap, "refuse to collect more patterns than this")->capture_default_str();
  tree->add_flag("--patterns", tree_patterns, "collect distinct prediction patterns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (complexity->parsed()) {
      const auto c = load_config(g);
      emit_table(run_complexity_sweep(c, base_dir(g)), c.output_dir, "complexity.csv", g.deterministic);
    } else if (noise->parsed()) {
      const auto c = load_config(g);
      emit_table(run_noise_sweep(c, base_dir(g)), c.output_dir, "noise_sweep.csv", g.deterministic);
    } else if (path->parsed()) {
      const auto c = load_config(g);
      emit_table(run_path_sim(c, base_dir(g)), c.output_dir, "path_sim.csv", g.deterministic);
    } else if (metrics->parsed()) {
      const auto c = load_config(g);
      emit_table(run_metrics(c, base_dir(g)), c.output_dir, "metrics.csv", g.deterministic);
    } else if (ridge->parsed()) {
      const Dataset d = load_data(ridge_data);
      const RidgeSpace space = ridge_space_from_data(d, ridge_C, ridge_lmax);
      double deviation = 0.0;
      for (double lambda : lambdas) {
        const auto eq = noise_regularization_equivalence(d, ridge_C, lambda, ridge_draws, g.seed.value_or(0));
        deviation = std::max(deviation, eq.max_deviation);
      }
      const std::string text = ridge_report(space, ridge_theta, lambdas, deviation).to_json();
      std::cout << text << '\n';
      write_text(out_dir(g), "ridge.json", text);
    } else if (bounds->parsed()) {
      nlohmann::json j;
      j["bernstein_bound"] = bernstein_generalization_bound(bi);
      j["least_squares_bound"] = least_squares_generalization_bound(bi);
      j["bernstein_beats_hoeffding"] = bernstein_beats_hoeffding(bi.sigma_sq, lo, hi);
      const auto dom = exponent_dominance(bi.sigma_sq, lo, hi);
      j["exponent_dominance"] = dom.dominates;
      if (dom.counterexample) j["counterexample_eps"] = *dom.counterexample;
      j["illustrative"] = true;
      const std::string text = j.dump(2);
      std::cout << text << '\n';
      write_text(out_dir(g), "bounds.json", text);
    } else if (bnb->parsed()) {
      LinearConfig lc;
      lc.includes_intercept = bnb_intercept;
      const auto r = branch_and_bound_patterns(load_data(bnb_data), bnb_theta, lc);
      const std::string text = r.to_json();
      std::cout << text << '\n';
      write_text(out_dir(g), "bnb_patterns.json", text);
      if (!bnb_packed.empty()) write_packed_file(bnb_packed, r.patterns);
    } else if (tree->parsed()) {
      require(tree_depth <= kMaxExactTreeDepth, ErrorCode::kTractability,
              "exact tree enumeration is capped at depth " + std::to_string(kMaxExactTreeDepth));
      TreeRashomonConfig tc;
      tc.collect_patterns = tree_patterns;
      tc.pattern_cap = tree_cap;
      const auto r = enumerate_rashomon_trees(load_data(tree_data), tree_depth, tree_theta,
                                              theta_mode_from_string(tree_mode), tc);
      const std::string text = r.to_json();
      std::cout << text << '\n';
      write_text(out_dir(g), "tree_rset.json", text);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
