#include "rashomon/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rashomon/error.hpp"
#include "rashomon/losses.hpp"
#include "rashomon/rng.hpp"
#include "rashomon/rset_metrics.hpp"

namespace rashomon {
namespace {

using nlohmann::json;

std::optional<double> as_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool cell_less(const std::string& a, const std::string& b) {
  const auto x = as_number(a);
  const auto y = as_number(b);
  if (x && y) return *x < *y;
  if (x != y) return x.has_value();  // numbers sort before labels such as "mean"
  return a < b;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("config field '") + key + "': " + e.what());
  }
}

SyntheticSpec synthetic_from_json(const json& j) {
  SyntheticSpec s;
  s.kind = get_or<std::string>(j, "kind", s.kind);
  s.n = get_or<std::size_t>(j, "n", s.n);
  s.m = get_or<std::size_t>(j, "m", s.m);
  s.depth = get_or<int>(j, "depth", s.depth);
  s.label_noise = get_or<double>(j, "label_noise", s.label_noise);
  s.separation = get_or<double>(j, "separation", s.separation);
  s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
  return s;
}

// Clean ERM accuracy used by the noise cap.
double clean_accuracy(const ExperimentConfig& config, const Dataset& d) {
  if (config.space == "linear") return 1.0 - linear_erm(d, config.linear).loss;
  double best = 0.0;
  for (int depth : config.depths) {
    const auto depth_used = std::min<std::size_t>(static_cast<std::size_t>(depth), d.m());
    best = std::max(best, 1.0 - static_cast<double>(min_tree_mistakes(d, static_cast<int>(depth_used))) /
                                    static_cast<double>(d.n()));
  }
  return best;
}

void refuse_deep_trees(const std::vector<int>& depths) {
  for (int depth : depths) {
    require(depth <= kMaxExactTreeDepth, ErrorCode::kTractability,
            "exact tree enumeration is capped at depth " + std::to_string(kMaxExactTreeDepth) + ", got " +
                std::to_string(depth));
  }
}

struct RsetCell {
  std::string rashomon_count = "NA";
  std::vector<Pattern> patterns;
  double erm_loss = 0.0;
  double effective_theta = 0.0;
};

RsetCell rashomon_cell(const ExperimentConfig& config, const Dataset& d, int depth) {
  RsetCell cell;
  if (config.space == "linear") {
    auto r = branch_and_bound_patterns(d, config.theta, config.linear);
    cell.patterns = std::move(r.patterns);
    cell.erm_loss = r.erm_loss;
    cell.effective_theta = config.theta;
    return cell;
  }
  TreeRashomonConfig tc;
  tc.collect_patterns = true;
  tc.pattern_cap = config.pattern_cap;
  auto r = enumerate_rashomon_trees(d, depth, config.theta, config.theta_mode, tc);
  cell.rashomon_count = r.rashomon_count.str();
  cell.patterns = std::move(r.patterns);
  cell.erm_loss = r.min_loss;
  cell.effective_theta = config.theta_mode == ThetaMode::kAdditive ? config.theta : config.theta * r.min_loss;
  return cell;
}

}  // namespace

void Table::add(std::vector<std::string> row) {
  require(row.size() == header_.size(), ErrorCode::kLengthMismatch, "row width differs from header");
  rows_.push_back(std::move(row));
}

void Table::sort() {
  std::stable_sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) {
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (cell_less(a[c], b[c])) return true;
      if (cell_less(b[c], a[c])) return false;
    }
    return false;
  });
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  require(it != header_.end(), ErrorCode::kMissingColumn, "no column '" + name + "'");
  return static_cast<std::size_t>(it - header_.begin());
}

std::string Table::csv(bool deterministic) const {
  std::ostringstream out;
  if (!deterministic) out << "# generated_at " << timestamp() << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

void Table::write(const std::string& path, bool deterministic) const {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path);
  out << csv(deterministic);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }

FittedTree planted_tree(int depth) {
  require(depth >= 1 && depth <= 3, ErrorCode::kInvalidArgument, "planted trees exist for depth 1 to 3");
  static const std::vector<std::vector<std::uint8_t>> leaves = {{0, 1}, {0, 1, 1, 0}, {0, 0, 0, 1, 0, 1, 1, 1}};
  const int internal = (1 << depth) - 1;
  FittedTree t;
  for (int i = 0; i < internal; ++i) t.nodes.push_back({i, 2 * i + 1, 2 * i + 2, 0});
  for (auto label : leaves[static_cast<std::size_t>(depth - 1)]) t.nodes.push_back({-1, -1, -1, label});
  return t;
}

Dataset make_synthetic(const SyntheticSpec& spec) {
  require(spec.n >= 2, ErrorCode::kConfig, "synthetic n must be at least 2");
  require(spec.m >= 1, ErrorCode::kConfig, "synthetic m must be at least 1");
  Dataset d = [&] {
    if (spec.kind == "gaussian_pair") {
      GaussianPairSpec g;
      g.dims = spec.m;
      g.mu_neg.assign(spec.m, 0.0);
      g.mu_pos.assign(spec.m, spec.separation);
      g.n_per_class = spec.n / 2;
      g.seed = spec.seed;
      return gen_gaussian_pair(g);
    }
    Matrix x(static_cast<Eigen::Index>(spec.n), static_cast<Eigen::Index>(spec.m));
    for (std::size_t i = 0; i < spec.n; ++i) {
      StreamRng rng(spec.seed, StreamTag::kSynthetic, i);
      for (std::size_t j = 0; j < spec.m; ++j) {
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.bernoulli(0.5) ? 1.0 : 0.0;
      }
    }
    Labels y(spec.n);
    if (spec.kind == "planted_tree") {
      require(spec.m >= (std::size_t{1} << spec.depth) - 1, ErrorCode::kConfig,
              "planted_tree needs m >= 2^depth - 1");
      y = planted_tree(spec.depth).predict(x);
    } else if (spec.kind == "majority") {
      require(spec.m >= 3, ErrorCode::kConfig, "majority needs m >= 3");
      for (std::size_t i = 0; i < spec.n; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        y[i] = x(r, 0) + x(r, 1) + x(r, 2) >= 2.0 ? 1 : 0;
      }
    } else if (spec.kind == "linear_threshold") {
      const auto k = static_cast<Eigen::Index>(std::min<std::size_t>(spec.m, 4));
      for (std::size_t i = 0; i < spec.n; ++i) {
        y[i] = x.row(static_cast<Eigen::Index>(i)).head(k).sum() * 2.0 >= static_cast<double>(k) ? 1 : 0;
      }
    } else {
      throw Error(ErrorCode::kConfig, "unknown synthetic kind '" + spec.kind + "'");
    }
    return Dataset(std::move(x), std::move(y), {}, Provenance{spec.seed, ""});
  }();
  if (spec.label_noise > 0.0) d = flip_labels_uniform(d, spec.label_noise, derive_seed(spec.seed, 0x5eed));
  return d;
}

Dataset load_source(const DatasetSource& source, const std::string& base_dir) {
  Dataset d = [&] {
    if (source.synthetic) return make_synthetic(*source.synthetic);
    require(!source.path.empty(), ErrorCode::kConfig, "dataset '" + source.name + "' has neither path nor synthetic");
    std::filesystem::path p(source.path);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return load_csv(p.string(), source.label_column);
  }();
  if (source.max_rows && *source.max_rows < d.n()) {
    std::vector<std::size_t> rows(*source.max_rows);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    d = d.subset(rows);
  }
  if (source.min_max) d = min_max_scale(d);
  if (source.binarize == "median") {
    d = binarize(d, MedianThreshold{});
  } else {
    require(source.binarize.empty(), ErrorCode::kConfig, "binarize must be \"median\" or omitted");
  }
  return d;
}

void ExperimentConfig::validate() const {
  require(schema_version == kSchemaVersion, ErrorCode::kConfig,
          "unsupported schema_version " + std::to_string(schema_version));
  require(!datasets.empty(), ErrorCode::kConfig, "config lists no datasets");
  require(space == "trees" || space == "linear", ErrorCode::kConfig, "hypothesis space must be trees or linear");
  if (space == "trees") {
    require(!depths.empty(), ErrorCode::kConfig, "depth list is empty");
    for (int d : depths) require(d >= 1, ErrorCode::kConfig, "depths must be at least 1");
  }
  require(theta >= 0.0, ErrorCode::kConfig, "theta must be non-negative");
  require(draws_per_level >= 1, ErrorCode::kConfig, "draws_per_level must be at least 1");
  require(!levels.empty(), ErrorCode::kConfig, "noise level grid is empty");
  require(std::is_sorted(levels.begin(), levels.end()), ErrorCode::kConfig, "noise levels must be ascending");
  for (double l : levels) {
    if (noise_kind == NoiseKind::kUniformFlip) {
      require(l >= 0.0 && l < 0.5, ErrorCode::kConfig, "label-noise levels must lie in [0, 0.5)");
    }
  }
  require(cv.folds >= 2, ErrorCode::kConfig, "cv.folds must be at least 2");
  require(cv.splits >= 1, ErrorCode::kConfig, "cv.splits must be at least 1");
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), ErrorCode::kConfig, "config must be a JSON object");
  require(j.contains("schema_version"), ErrorCode::kConfig, "config lacks schema_version");
  ExperimentConfig c;
  c.schema_version = get_or<int>(j, "schema_version", 0);
  if (j.contains("datasets")) {
    for (const auto& dj : j.at("datasets")) {
      DatasetSource s;
      s.name = get_or<std::string>(dj, "name", "dataset" + std::to_string(c.datasets.size()));
      if (dj.contains("synthetic")) s.synthetic = synthetic_from_json(dj.at("synthetic"));
      s.path = get_or<std::string>(dj, "path", "");
      s.label_column = get_or<std::string>(dj, "label_column", s.label_column);
      s.binarize = get_or<std::string>(dj, "binarize", "");
      s.min_max = get_or<bool>(dj, "min_max_scale", false);
      if (dj.contains("max_rows")) s.max_rows = get_or<std::size_t>(dj, "max_rows", 0);
      c.datasets.push_back(std::move(s));
    }
  }
  if (j.contains("hypothesis_space")) {
    const auto& h = j.at("hypothesis_space");
    c.space = get_or<std::string>(h, "kind", c.space);
    c.depths = get_or<std::vector<int>>(h, "depths", c.depths);
    c.feature_subsets = get_or<std::vector<std::size_t>>(h, "feature_subsets", c.feature_subsets);
  }
  c.theta = get_or<double>(j, "theta", c.theta);
  c.theta_mode = theta_mode_from_string(get_or<std::string>(j, "theta_mode", "additive"));
  if (j.contains("noise")) {
    const auto& nj = j.at("noise");
    c.noise_kind = noise_kind_from_string(get_or<std::string>(nj, "kind", "uniform_flip"));
    c.levels = get_or<std::vector<double>>(nj, "levels", c.levels);
  }
  c.draws_per_level = get_or<std::size_t>(j, "draws_per_level", c.draws_per_level);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir);
  c.pattern_cap = get_or<std::size_t>(j, "pattern_cap", c.pattern_cap);
  if (j.contains("cv")) {
    const auto& cj = j.at("cv");
    c.cv.folds = get_or<std::size_t>(cj, "folds", c.cv.folds);
    c.cv.splits = get_or<std::size_t>(cj, "splits", c.cv.splits);
    c.cv.validation_fraction = get_or<double>(cj, "validation_fraction", c.cv.validation_fraction);
    if (cj.contains("fixed_depth")) c.cv.fixed_depth = get_or<int>(cj, "fixed_depth", 1);
  }
  if (j.contains("linear")) {
    const auto& lj = j.at("linear");
    c.linear.max_iterations = get_or<std::size_t>(lj, "max_iterations", c.linear.max_iterations);
    c.linear.step_scale = get_or<double>(lj, "step_scale", c.linear.step_scale);
    c.linear.exact_fallback = get_or<bool>(lj, "exact_fallback", c.linear.exact_fallback);
    c.linear.certify_discards = get_or<bool>(lj, "certify_discards", c.linear.certify_discards);
    c.linear.max_n = get_or<std::size_t>(lj, "max_n", c.linear.max_n);
    c.linear.includes_intercept = get_or<bool>(lj, "includes_intercept", c.linear.includes_intercept);
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kConfig, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void check_noise_cap(const std::vector<double>& levels, double erm_accuracy) {
  const double cap = std::min(0.25, erm_accuracy - 0.5);
  for (double l : levels) {
    require(l <= cap + 1e-12, ErrorCode::kConfig,
            "noise level " + fmt(l) + " exceeds min(0.25, accuracy - 0.5) = " + fmt(cap));
  }
}

Table run_complexity_sweep(const ExperimentConfig& config, const std::string& base_dir) {
  config.validate();
  Table table({"dataset", "space", "complexity", "theta", "theta_mode", "rashomon_count", "denominator", "ratio",
               "log10_ratio", "erm_loss"});
  if (config.space == "trees") refuse_deep_trees(config.depths);
  for (const auto& source : config.datasets) {
    const Dataset d = load_source(source, base_dir);
    if (config.space == "trees") {
      for (int depth : config.depths) {
        const auto r = enumerate_rashomon_trees(d, depth, config.theta, config.theta_mode);
        table.add({source.name, "trees", std::to_string(depth), fmt(config.theta), to_string(config.theta_mode),
                   r.rashomon_count.str(), r.total_models.str(), fmt(r.ratio_value()), fmt(r.log10_ratio()),
                   fmt(r.min_loss)});
      }
    } else {
      std::vector<std::size_t> subsets = config.feature_subsets;
      if (subsets.empty()) subsets.push_back(d.m());
      for (std::size_t s : subsets) {
        require(s >= 1 && s <= d.m(), ErrorCode::kConfig, "feature subset size out of range");
        std::vector<std::size_t> cols(s);
        for (std::size_t j = 0; j < s; ++j) cols[j] = j;
        const auto r = branch_and_bound_patterns(d.select_features(cols), config.theta, config.linear);
        const BigInt count(r.patterns.size());
        table.add({source.name, "linear", std::to_string(s), fmt(config.theta), "additive", count.str(),
                   r.denominator.str(), fmt(to_double(r.pattern_ratio)),
                   fmt(log10_ratio(count, r.denominator)), fmt(r.erm_loss)});
      }
    }
  }
  table.sort();
  return table;
}

Table run_noise_sweep(const ExperimentConfig& config, const std::string& base_dir) {
  config.validate();
  require(config.noise_kind == NoiseKind::kUniformFlip, ErrorCode::kConfig, "noise sweep needs uniform_flip label noise");
  if (config.space == "trees") refuse_deep_trees(config.depths);
  Table table({"dataset", "complexity", "rho", "draw", "draw_seed", "rashomon_count", "pattern_count", "diversity",
               "U_div", "erm_loss"});
  const std::vector<int> complexities = config.space == "trees" ? config.depths : std::vector<int>{0};
  for (const auto& source : config.datasets) {
    const Dataset d = load_source(source, base_dir);
    check_noise_cap(config.levels, clean_accuracy(config, d));
    for (int depth : complexities) {
      const std::size_t cells = config.levels.size() * config.draws_per_level;
      std::vector<RsetCell> results(cells);
      std::vector<std::uint64_t> seeds(cells);
      const auto total = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t c = 0; c < total; ++c) {
        const std::size_t li = static_cast<std::size_t>(c) / config.draws_per_level;
        const std::size_t draw = static_cast<std::size_t>(c) % config.draws_per_level;
        const std::uint64_t seed = derive_seed(config.seed, draw);
        const Dataset noisy = flip_labels_uniform(d, config.levels[li], seed);
        seeds[static_cast<std::size_t>(c)] = seed;
        results[static_cast<std::size_t>(c)] = rashomon_cell(config, noisy, depth);
      }
      for (std::size_t li = 0; li < config.levels.size(); ++li) {
        std::vector<double> counts, pats, divs, udivs, losses;
        for (std::size_t draw = 0; draw < config.draws_per_level; ++draw) {
          const auto& r = results[li * config.draws_per_level + draw];
          const double div = pattern_diversity(r.patterns);
          const double udiv = diversity_upper_bound(r.erm_loss, r.effective_theta);
          table.add({source.name, std::to_string(depth), fmt(config.levels[li]), std::to_string(draw),
                     std::to_string(seeds[li * config.draws_per_level + draw]), r.rashomon_count,
                     fmt(r.patterns.size()), fmt(div), fmt(udiv), fmt(r.erm_loss)});
          if (r.rashomon_count != "NA") counts.push_back(std::stod(r.rashomon_count));
          pats.push_back(static_cast<double>(r.patterns.size()));
          divs.push_back(div);
          udivs.push_back(udiv);
          losses.push_back(r.erm_loss);
        }
        for (const char* agg : {"mean", "median"}) {
          auto f = [&](const std::vector<double>& v) {
            if (v.empty()) return std::string("NA");
            return fmt(std::string(agg) == "mean" ? mean(v) : median(v));
          };
          table.add({source.name, std::to_string(depth), fmt(config.levels[li]), agg, "NA", f(counts), f(pats),
                     f(divs), f(udivs), f(losses)});
        }
      }
    }
  }
  table.sort();
  return table;
}

Table run_path_sim(const ExperimentConfig& config, const std::string& base_dir) {
  config.validate();
  require(config.noise_kind == NoiseKind::kUniformFlip, ErrorCode::kConfig, "path simulation needs uniform_flip label noise");
  require(config.space == "trees", ErrorCode::kConfig, "path simulation runs on the tree space");
  const int fixed_depth = config.cv.fixed_depth.value_or(*std::max_element(config.depths.begin(), config.depths.end()));
  Table table({"dataset", "rho", "draw", "split", "draw_seed", "fixed_depth", "fixed_depth_train_risk",
               "fixed_depth_val_risk", "gap", "cv_best_depth"});
  for (const auto& source : config.datasets) {
    const Dataset d = load_source(source, base_dir);
    const FittedTree clean = greedy_tree_fit(d, fixed_depth);
    check_noise_cap(config.levels, 1.0 - zero_one_risk(clean.predict(d.features()), d.labels()));

    const std::size_t per_level = config.draws_per_level * config.cv.splits;
    const std::size_t cells = config.levels.size() * per_level;
    struct Cell {
      double train = 0.0;
      double val = 0.0;
      int best = 0;
      std::uint64_t seed = 0;
    };
    std::vector<Cell> results(cells);
    const auto total = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < total; ++c) {
      const std::size_t li = static_cast<std::size_t>(c) / per_level;
      const std::size_t draw = (static_cast<std::size_t>(c) % per_level) / config.cv.splits;
      const std::size_t s = static_cast<std::size_t>(c) % config.cv.splits;
      const std::uint64_t seed = derive_seed(config.seed, draw);
      const Dataset noisy = flip_labels_uniform(d, config.levels[li], seed);
      const SplitSpec spec{config.cv.validation_fraction, config.cv.folds, derive_seed(seed, 0x5b, s)};
      const auto [train, validation] = split(noisy, spec);
      const FittedTree tree = greedy_tree_fit(train, fixed_depth);
      Cell& out = results[static_cast<std::size_t>(c)];
      out.train = zero_one_risk(tree.predict(train.features()), train.labels());
      out.val = zero_one_risk(tree.predict(validation.features()), validation.labels());
      out.best = cross_validate_depth(train, config.depths, config.cv.folds, derive_seed(seed, 0xcf, s)).best_depth;
      out.seed = seed;
    }
    for (std::size_t li = 0; li < config.levels.size(); ++li) {
      std::vector<double> trains, vals, gaps, bests;
      for (std::size_t k = 0; k < per_level; ++k) {
        const Cell& r = results[li * per_level + k];
        const std::size_t draw = k / config.cv.splits;
        const std::size_t s = k % config.cv.splits;
        table.add({source.name, fmt(config.levels[li]), std::to_string(draw), std::to_string(s),
                   std::to_string(r.seed), std::to_string(fixed_depth), fmt(r.train), fmt(r.val),
                   fmt(r.val - r.train), std::to_string(r.best)});
        trains.push_back(r.train);
        vals.push_back(r.val);
        gaps.push_back(r.val - r.train);
        bests.push_back(r.best);
      }
      table.add({source.name, fmt(config.levels[li]), "mean", "all", "NA", std::to_string(fixed_depth),
                 fmt(mean(trains)), fmt(mean(vals)), fmt(mean(gaps)), fmt(mean(bests))});
      table.add({source.name, fmt(config.levels[li]), "median", "all", "NA", std::to_string(fixed_depth),
                 fmt(median(trains)), fmt(median(vals)), fmt(median(gaps)), fmt(median(bests))});
    }
  }
  table.sort();
  return table;
}

MetricsRow summarize_patterns(const std::string& dataset, double theta, std::uint64_t draw_seed,
                              const std::vector<Pattern>& patterns, const Labels& labels, double erm_loss) {
  MetricsRow row;
  row.dataset = dataset;
  row.theta = theta;
  row.draw_seed = draw_seed;
  row.n = labels.size();
  row.pi = patterns.size();
  row.diversity = pattern_diversity(patterns);
  row.u_div = diversity_upper_bound(erm_loss, theta);
  row.erm_loss = erm_loss;
  if (!patterns.empty()) row.agreement_mean = mean(sample_agreement(patterns, labels));
  return row;
}

Table metrics_table(const std::vector<MetricsRow>& rows) {
  Table t({"dataset", "theta", "draw_seed", "n", "pi", "diversity", "U_div", "erm_loss", "agreement_mean"});
  for (const auto& r : rows) {
    t.add({r.dataset, fmt(r.theta), std::to_string(r.draw_seed), fmt(r.n), fmt(r.pi), fmt(r.diversity),
           fmt(r.u_div), fmt(r.erm_loss), fmt(r.agreement_mean)});
  }
  t.sort();
  return t;
}

}  // namespace rashomon
