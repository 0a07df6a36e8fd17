// Copyright 2026 The shc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shc/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shc/errors.hpp"
#include "shc/io.hpp"
#include "shc/mc.hpp"
#include "shc/models.hpp"
#include "shc/regions.hpp"
#include "shc/rng.hpp"
#include "shc/structured.hpp"
#include "shc/theory.hpp"

#ifndef SHC_VERSION
#define SHC_VERSION "0.0.0-unknown"
#endif

namespace shc::cli {

namespace {

using json = nlohmann::ordered_json;
using Params = std::vector<std::pair<std::string, std::string>>;

constexpr std::int32_t kFullN = 10000;
constexpr std::int64_t kFullNullReps = 10000;
constexpr std::int64_t kFullPowerReps = 2000;

std::string fmt(double v) { return io::format_double(v); }

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    if constexpr (std::is_arithmetic_v<T>) {
      s += fmt(static_cast<double>(v[i]));
    } else {
      s += v[i];
    }
  }
  return s;
}

void write_header(std::ostream& out, const std::string& command, const Params& params) {
  out << "# shc " << SHC_VERSION << ' ' << command << '\n' << '#';
  for (const auto& [k, v] : params) out << ' ' << k << '=' << v;
  out << '\n';
}

json params_json(const std::string& command, const Params& params) {
  json run;
  run["version"] = SHC_VERSION;
  run["command"] = command;
  for (const auto& [k, v] : params) run[k] = v;
  return run;
}

json region_json(const std::optional<Region>& region) {
  if (!region) return nullptr;
  json j;
  j["kind"] = to_string(region->kind());
  j["text"] = region->describe();
  j["size"] = region->size();
  switch (region->kind()) {
    case Shape::interval:
      j["lo"] = region->rows().lo;
      j["hi"] = region->rows().hi;
      break;
    case Shape::rectangle:
      j["rows"] = {region->rows().lo, region->rows().hi};
      j["cols"] = {region->cols().lo, region->cols().hi};
      break;
    case Shape::ball:
      j["center"] = {region->center_x(), region->center_y()};
      j["radius_sq"] = region->radius_sq();
      break;
  }
  return j;
}

// Output target: a file when a path is given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::invalid_argument("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

Grid read_dataset(const std::string& path) {
  if (path == "-") return io::read_grid_csv(std::cin);
  return io::read_grid_file(path);
}

std::vector<StatSpec> parse_families(const std::vector<std::string>& names) {
  std::vector<StatSpec> out;
  for (const auto& n : names) out.push_back(StatSpec::parse(n));
  if (out.empty()) throw ConfigurationError("no statistic requested");
  return out;
}

Shape data_shape(const Grid& grid, const std::string& shape) {
  if (grid.dim() == 1) return Shape::interval;
  const Shape s = parse_shape(shape);
  if (s == Shape::interval) return Shape::rectangle;
  return s;
}

std::vector<CriticalValue> read_critvals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open critical values '" + path + "'");
  const auto rows = io::read_csv_rows(in);
  if (rows.empty()) throw ConfigurationError("critical value file is empty");
  const auto& head = rows.front();
  const auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < head.size(); ++i) {
      if (head[i] == name) return i;
    }
    throw ConfigurationError("critical value file lacks column '" + name + "'");
  };
  const auto cs = col("statistic"), cn = col("n"), cd = col("dim"), csh = col("shape"), cl = col("level"),
             cv = col("critical_value");
  std::vector<CriticalValue> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != head.size()) throw ConfigurationError("ragged row in critical value file");
    CriticalValue c;
    c.statistic = row[cs];
    c.model.n = std::stoi(row[cn]);
    c.model.dim = std::stoi(row[cd]);
    c.model.shape = parse_shape(row[csh]);
    c.level = std::stod(row[cl]);
    c.value = std::stod(row[cv]);
    out.push_back(c);
  }
  return out;
}

// --- options -------------------------------------------------------------

struct ModelOpts {
  std::int32_t n = 4096;
  int dim = 1;
  std::string shape = "interval";
  double alpha = 0.2;
  double beta = 0.65;
  std::string regime = "auto";
  std::string placement = "free_disjoint";
};

void add_model_opts(CLI::App* app, ModelOpts& m, bool signal) {
  app->add_option("--n", m.n, "grid side")->capture_default_str();
  app->add_option("--dim", m.dim, "dimension (1 or 2)")->capture_default_str();
  app->add_option("--shape", m.shape, "interval, rect or ball")->capture_default_str();
  if (!signal) return;
  app->add_option("--alpha", m.alpha, "block size exponent")->capture_default_str();
  app->add_option("--beta", m.beta, "sparsity exponent")->capture_default_str();
  app->add_option("--regime", m.regime, "auto, sparse or dense")->capture_default_str();
  app->add_option("--placement", m.placement, "free_disjoint or grid_aligned")->capture_default_str();
}

Shape model_shape(const ModelOpts& m) {
  const Shape s = parse_shape(m.shape);
  if (m.dim == 1) {
    if (s == Shape::ball) throw ConfigurationError("ball shapes need --dim 2");
    return Shape::interval;
  }
  return s == Shape::interval ? Shape::rectangle : s;
}

SignalConfig make_config(const ModelOpts& m, double r, std::uint64_t seed) {
  SignalConfig c;
  c.n = m.n;
  c.dim = m.dim;
  c.shape = model_shape(m);
  c.alpha = m.alpha;
  c.beta = m.beta;
  if (!(m.alpha >= 0.0 && m.alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  c.regime = m.regime == "auto" ? regime_for(m.alpha, m.beta) : parse_regime(m.regime);
  c.r = r;
  c.placement = parse_placement(m.placement);
  c.seed = seed;
  return c;
}

Params model_params(const ModelOpts& m, bool signal) {
  Params p{{"n", std::to_string(m.n)}, {"dim", std::to_string(m.dim)}, {"shape", m.shape}};
  if (signal) {
    p.insert(p.end(), {{"alpha", fmt(m.alpha)},
                       {"beta", fmt(m.beta)},
                       {"regime", m.regime},
                       {"placement", m.placement}});
  }
  return p;
}

// --- subcommands -----------------------------------------------------------

struct GenOpts {
  ModelOpts model;
  double r = 0.3;
  std::uint64_t seed = 1;
  bool null = false;
  std::string out;
  std::string truth;
};

int cmd_gen(const GenOpts& o, std::ostream& out) {
  SignalConfig c = make_config(o.model, o.r, o.seed);
  c.signal = !o.null;
  const Dataset data = generate(c);
  Params params = model_params(o.model, true);
  params.insert(params.end(), {{"r", fmt(o.r)},
                               {"seed", std::to_string(o.seed)},
                               {"null", o.null ? "1" : "0"},
                               {"mu", fmt(data.mu)},
                               {"block_cells", std::to_string(c.block_cells())},
                               {"blocks", std::to_string(c.signal ? c.block_count() : 0)}});
  Sink sink(o.out, out);
  write_header(*sink, "gen", params);
  io::write_grid_csv(*sink, data.grid);
  std::string truth_path = o.truth;
  if (truth_path.empty() && !o.out.empty() && o.out != "-") truth_path = o.out + ".json";
  if (!truth_path.empty()) {
    json j;
    j["run"] = params_json("gen", params);
    j["mu"] = data.mu;
    j["regime"] = to_string(c.regime);
    j["boundary_gap"] = c.signal ? json(boundary_gap(c)) : json(nullptr);
    json truth = json::array();
    for (const auto& region : data.truth) truth.push_back(region_json(region));
    j["truth"] = truth;
    std::ofstream f(truth_path);
    if (!f) throw std::invalid_argument("cannot write '" + truth_path + "'");
    f << j.dump(2) << '\n';
  }
  return 0;
}

struct ApproxOpts {
  ModelOpts model;
  std::string out;
};

int cmd_approx(const ApproxOpts& o, std::ostream& out) {
  const LevelSet levels = build_levels(model_shape(o.model), o.model.n);
  Sink sink(o.out, out);
  write_header(*sink, "approx", model_params(o.model, false));
  *sink << "level,epsilon,grid_step,n_ell,i_max,min_group,max_group\n";
  for (const auto& l : levels) {
    *sink << l.level << ',' << fmt(l.epsilon) << ',' << l.grid_step << ',' << l.n_ell() << ',' << l.i_max() << ','
          << l.min_group_size() << ',' << l.max_group_size() << '\n';
  }
  return 0;
}

struct StatOpts {
  std::string in;
  std::string family = "shc";
  std::string shape = "rect";
  std::string out;
};

int cmd_stat(const StatOpts& o, std::ostream& out) {
  const Grid grid = read_dataset(o.in);
  const StatSpec spec = StatSpec::parse(o.family);
  const Shape shape = data_shape(grid, o.shape);
  std::optional<LevelSet> levels;
  if (spec.uses_levels()) levels = build_levels(shape, grid.side());
  const StatValue v = evaluate_stat(spec, grid, levels ? &*levels : nullptr);
  json j;
  j["name"] = v.name;
  j["value"] = v.value;
  j["level"] = v.level ? json(*v.level) : json(nullptr);
  j["region"] = region_json(v.region);
  j["run"] = params_json("stat", {{"in", o.in},
                                  {"family", o.family},
                                  {"shape", to_string(shape)},
                                  {"n", std::to_string(grid.side())},
                                  {"dim", std::to_string(grid.dim())}});
  Sink sink(o.out, out);
  *sink << j.dump(2) << '\n';
  return 0;
}

struct BoundsOpts {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> eta;
  std::int64_t n = 1000;
  double K = 2.0;
  double a = 0.25;
  double b = 0.75;
  std::string out;
};

int cmd_bounds(const BoundsOpts& o, std::ostream& out) {
  const bool boundary = !o.alpha.empty() || !o.beta.empty();
  if (boundary && (o.alpha.empty() || o.beta.empty())) throw DomainError("boundary tables need --alpha and --beta");
  if (!boundary && o.eta.empty()) throw DomainError("bounds needs --alpha/--beta or --eta");
  Sink sink(o.out, out);
  write_header(*sink, "bounds", {{"alpha", join(o.alpha)},
                                 {"beta", join(o.beta)},
                                 {"eta", join(o.eta)},
                                 {"n", std::to_string(o.n)},
                                 {"K", fmt(o.K)},
                                 {"a", fmt(o.a)},
                                 {"b", fmt(o.b)}});
  if (boundary) {
    *sink << "alpha,beta,rho_star,branch,rho_star_pen,pen_branch,rho_hc,hc_branch,hc_scaling_exponent\n";
    for (double a : o.alpha) {
      for (double b : o.beta) {
        const auto rs = rho_star(a, b);
        const auto hc = rho_star_unstructured_hc(a, b);
        std::string pen = "nan", pen_branch = "undefined";
        if (std::abs(b / (1.0 - a) - 0.5) > 1e-12) {
          const auto rp = rho_star_pen(a, b);
          pen = fmt(rp.rho_star);
          pen_branch = to_string(rp.branch);
        }
        *sink << fmt(a) << ',' << fmt(b) << ',' << fmt(rs.rho_star) << ',' << to_string(rs.branch) << ',' << pen << ','
              << pen_branch << ',' << fmt(hc.rho_star) << ',' << to_string(hc.branch) << ','
              << fmt(hc.scaling_exponent) << '\n';
      }
    }
  }
  if (!o.eta.empty()) {
    *sink << "eta,bj_iii,bb_i,loglik_ii\n";
    for (double e : o.eta) {
      *sink << fmt(e) << ',' << fmt(bj_tail_bound(e, o.n, o.K)) << ',' << fmt(bb_sup_bound(e, o.a, o.b)) << ','
            << fmt(ks_loglik_bound(e, o.a, o.b, o.n)) << '\n';
    }
  }
  return 0;
}

struct CritvalOpts {
  ModelOpts model;
  std::vector<std::string> families{"shc", "sbj", "hc", "bj"};
  std::int64_t reps = 2000;
  double level = 0.05;
  std::uint64_t seed = 1;
  int workers = 0;
  bool full = false;
  std::string out;
  std::string values_out;
};

int cmd_critval(CritvalOpts o, const CLI::App& sub, std::ostream& out) {
  if (o.full) {
    if (sub.count("--n") == 0) o.model.n = kFullN;
    if (sub.count("--reps") == 0) o.reps = kFullNullReps;
  }
  if (o.workers <= 0) o.workers = default_workers();
  const auto stats = parse_families(o.families);
  const NullModel model{o.model.n, o.model.dim, model_shape(o.model)};
  if (o.reps < 100) throw ConfigurationError("critval needs at least 100 replicates");
  const auto reports = simulate_null(stats, model, o.reps, o.seed, o.workers);
  Params params = model_params(o.model, false);
  params.insert(params.end(), {{"families", join(o.families)},
                               {"reps", std::to_string(o.reps)},
                               {"level", fmt(o.level)},
                               {"seed", std::to_string(o.seed)},
                               {"seed_rule", kSeedRule},
                               {"workers", std::to_string(o.workers)}});
  Sink sink(o.out, out);
  write_header(*sink, "critval", params);
  *sink << "statistic,n,dim,shape,level,reps,critical_value,wall_time\n";
  for (const auto& r : reports) {
    *sink << r.statistic << ',' << model.n << ',' << model.dim << ',' << to_string(model.shape) << ',' << fmt(o.level)
          << ',' << r.reps << ',' << fmt(critical_value(r, o.level)) << ',' << fmt(r.wall_time) << '\n';
  }
  if (!o.values_out.empty()) {
    Sink values(o.values_out, out);
    write_header(*values, "critval", params);
    *values << "rep";
    for (const auto& r : reports) *values << ',' << r.statistic;
    *values << '\n';
    for (std::int64_t i = 0; i < o.reps; ++i) {
      *values << i;
      for (const auto& r : reports) *values << ',' << fmt(r.values[static_cast<std::size_t>(i)]);
      *values << '\n';
    }
  }
  return 0;
}

struct PowerOpts {
  ModelOpts model;
  std::vector<double> r;
  std::vector<double> r_factor;
  std::vector<std::string> families{"shc", "sbj", "hc", "bj"};
  std::int64_t null_reps = 2000;
  std::int64_t reps = 500;
  double level = 0.05;
  std::uint64_t seed = 1;
  int workers = 0;
  bool full = false;
  std::string critvals;
  std::string out;
};

int cmd_power(PowerOpts o, const CLI::App& sub, std::ostream& out) {
  if (o.full) {
    if (sub.count("--n") == 0) o.model.n = kFullN;
    if (sub.count("--null-reps") == 0) o.null_reps = kFullNullReps;
    if (sub.count("--reps") == 0) o.reps = kFullPowerReps;
  }
  if (o.workers <= 0) o.workers = default_workers();
  const auto stats = parse_families(o.families);
  std::vector<double> rs = o.r;
  const double boundary = rho_star(o.model.alpha, o.model.beta).rho_star;
  for (double f : o.r_factor) rs.push_back(f * boundary);
  if (rs.empty()) throw DomainError("power needs --r or --r-factor");
  std::vector<SignalConfig> configs;
  for (double r : rs) configs.push_back(make_config(o.model, r, o.seed));
  for (const auto& c : configs) c.validate();

  std::vector<CriticalValue> critvals;
  const NullModel model{o.model.n, o.model.dim, model_shape(o.model)};
  if (!o.critvals.empty()) {
    critvals = read_critvals(o.critvals);
  } else {
    const auto reports = simulate_null(stats, model, o.null_reps, rng::derive_seed(o.seed, 0, 7), o.workers);
    for (const auto& rep : reports) critvals.push_back({rep.statistic, model, o.level, critical_value(rep, o.level)});
  }
  const auto rows = power_curve(configs, stats, critvals, o.reps, o.seed, o.workers);
  Params params = model_params(o.model, true);
  params.insert(params.end(), {{"r", join(rs)},
                               {"families", join(o.families)},
                               {"null_reps", o.critvals.empty() ? std::to_string(o.null_reps) : "file"},
                               {"critvals", o.critvals},
                               {"reps", std::to_string(o.reps)},
                               {"level", fmt(o.level)},
                               {"seed", std::to_string(o.seed)},
                               {"seed_rule", kSeedRule},
                               {"workers", std::to_string(o.workers)}});
  Sink sink(o.out, out);
  write_header(*sink, "power", params);
  *sink << "alpha,beta,r,mu,statistic,critical_value,reps,rejections,power,std_error\n";
  for (const auto& row : rows) {
    *sink << fmt(row.config.alpha) << ',' << fmt(row.config.beta) << ',' << fmt(row.config.r) << ','
          << fmt(calibrated_mu(row.config)) << ',' << row.statistic << ',' << fmt(row.critical_value) << ',' << row.reps
          << ',' << row.rejections << ',' << fmt(row.power) << ',' << fmt(row.std_error) << '\n';
  }
  return 0;
}

struct VerifyOpts {
  std::string check = "bj_iii";
  std::vector<double> eta;
  TailOptions tail;
  std::string out;
};

int cmd_verify(VerifyOpts o, std::ostream& out) {
  if (o.tail.workers <= 0) o.tail.workers = default_workers();
  const TailCheck which = parse_tail_check(o.check);
  if (o.eta.empty()) {
    switch (which) {
      case TailCheck::bj_iii:
        o.eta = {4, 6, 8, 10};
        break;
      case TailCheck::loglik_ii:
        o.eta = {5, 8, 12};
        break;
      case TailCheck::bb_i:
        o.eta = {2, 2.5, 3};
        break;
      case TailCheck::hc_iv:
        o.eta = {3, 4, 6, 8, 12};
        break;
    }
  }
  const TailReport report = verify_tail_bound(which, o.eta, o.tail);
  Params params{{"check", o.check},
                {"eta", join(o.eta)},
                {"n", std::to_string(o.tail.n)},
                {"reps", std::to_string(o.tail.reps)},
                {"a", fmt(o.tail.a)},
                {"b", fmt(o.tail.b)},
                {"K", fmt(o.tail.K)},
                {"D", fmt(o.tail.D)},
                {"bridge_log2", std::to_string(o.tail.bridge_log2)},
                {"seed", std::to_string(o.tail.seed)},
                {"seed_rule", kSeedRule},
                {"workers", std::to_string(o.tail.workers)}};
  if (which == TailCheck::hc_iv) params.emplace_back("calibrated_C", fmt(report.calibrated_C));
  Sink sink(o.out, out);
  write_header(*sink, "verify", params);
  *sink << "check,eta,empirical,std_error,bound,pass\n";
  for (const auto& row : report.rows) {
    *sink << o.check << ',' << fmt(row.eta) << ',' << fmt(row.empirical) << ',' << fmt(row.std_error) << ','
          << fmt(row.bound) << ',' << (row.pass ? "true" : "false") << '\n';
  }
  return 0;
}

struct DetectOpts {
  std::string in;
  std::string family = "shc";
  std::string shape = "rect";
  double level = 0.05;
  std::string critvals;
  std::optional<double> critical;
  std::int64_t reps = 1000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out;
};

int cmd_detect(DetectOpts o, std::ostream& out) {
  if (o.workers <= 0) o.workers = default_workers();
  const Grid grid = read_dataset(o.in);
  const StatSpec spec = StatSpec::parse(o.family);
  const Shape shape = data_shape(grid, o.shape);
  const NullModel model{grid.side(), grid.dim(), shape};
  std::optional<LevelSet> levels;
  if (spec.uses_levels()) levels = build_levels(shape, grid.side());
  const LevelSet* lp = levels ? &*levels : nullptr;

  double crit = 0.0;
  std::string source;
  if (o.critical) {
    crit = *o.critical;
    source = "given";
  } else if (!o.critvals.empty()) {
    bool found = false;
    for (const auto& c : read_critvals(o.critvals)) {
      if (c.statistic != spec.name()) continue;
      if (c.model.n != model.n || c.model.dim != model.dim || (model.dim == 2 && c.model.shape != model.shape)) {
        throw ConfigurationError("critical value for " + c.statistic + " was simulated at n = " +
                                 std::to_string(c.model.n) + " (d = " + std::to_string(c.model.dim) +
                                 "); dataset has n = " + std::to_string(model.n) + " (d = " +
                                 std::to_string(model.dim) + ")");
      }
      if (std::abs(c.level - o.level) > 1e-12) continue;
      crit = c.value;
      found = true;
    }
    if (!found) throw ConfigurationError("no critical value for " + spec.name() + " at level " + fmt(o.level));
    source = o.critvals;
  } else {
    if (o.reps < 100) throw ConfigurationError("detect needs at least 100 null replicates");
    const auto report = simulate_null(std::vector<StatSpec>{spec}, model, o.reps, o.seed, o.workers, lp).front();
    crit = critical_value(report, o.level);
    source = "simulated";
  }
  const StatValue v = evaluate_stat(spec, grid, lp);
  json j;
  j["statistic"] = v.name;
  j["value"] = v.value;
  j["critical_value"] = crit;
  j["reject"] = v.value > crit;
  j["maximizing_region"] = region_json(v.region);
  j["level"] = o.level;
  j["run"] = params_json("detect", {{"in", o.in},
                                    {"family", o.family},
                                    {"shape", to_string(shape)},
                                    {"n", std::to_string(grid.side())},
                                    {"dim", std::to_string(grid.dim())},
                                    {"level", fmt(o.level)},
                                    {"critical_source", source},
                                    {"reps", std::to_string(o.reps)},
                                    {"seed", std::to_string(o.seed)},
                                    {"seed_rule", kSeedRule}});
  Sink sink(o.out, out);
  *sink << j.dump(2) << '\n';
  return 0;
}

void structured_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured higher criticism and Berk-Jones detection of block signals", "shc"};
  app.set_version_flag("--version", SHC_VERSION);
  app.require_subcommand(1);

  GenOpts gen;
  auto* s_gen = app.add_subcommand("gen", "generate a dataset (CSV plus JSON truth sidecar)");
  add_model_opts(s_gen, gen.model, true);
  s_gen->add_option("--r", gen.r, "signal strength exponent")->capture_default_str();
  s_gen->add_option("--seed", gen.seed)->capture_default_str();
  s_gen->add_flag("--null", gen.null, "pure noise");
  s_gen->add_option("--out,-o", gen.out, "dataset CSV (default stdout)");
  s_gen->add_option("--truth", gen.truth, "truth JSON (default <out>.json)");

  ApproxOpts approx;
  auto* s_approx = app.add_subcommand("approx", "summarize the approximating set per level");
  add_model_opts(s_approx, approx.model, false);
  s_approx->add_option("--out,-o", approx.out);

  StatOpts stat;
  auto* s_stat = app.add_subcommand("stat", "evaluate a statistic on a dataset");
  s_stat->add_option("--in,-i", stat.in, "dataset CSV or - for stdin")->required();
  s_stat->add_option("--family", stat.family, "shc, shc+, sbj, ss:<s>, hc, bj, pn, pnapp")->capture_default_str();
  s_stat->add_option("--shape", stat.shape, "rect or ball for 2-D data")->capture_default_str();
  s_stat->add_option("--out,-o", stat.out);

  BoundsOpts bounds;
  auto* s_bounds = app.add_subcommand("bounds", "detection boundaries and tail bounds");
  s_bounds->add_option("--alpha", bounds.alpha)->delimiter(',');
  s_bounds->add_option("--beta", bounds.beta)->delimiter(',');
  s_bounds->add_option("--eta", bounds.eta)->delimiter(',');
  s_bounds->add_option("--n", bounds.n)->capture_default_str();
  s_bounds->add_option("--K", bounds.K)->capture_default_str();
  s_bounds->add_option("--a", bounds.a)->capture_default_str();
  s_bounds->add_option("--b", bounds.b)->capture_default_str();
  s_bounds->add_option("--out,-o", bounds.out);

  CritvalOpts critval;
  auto* s_critval = app.add_subcommand("critval", "simulate null critical values");
  add_model_opts(s_critval, critval.model, false);
  s_critval->add_option("--families", critval.families)->delimiter(',')->capture_default_str();
  s_critval->add_option("--reps", critval.reps)->capture_default_str();
  s_critval->add_option("--level", critval.level)->capture_default_str();
  s_critval->add_option("--seed", critval.seed)->capture_default_str();
  s_critval->add_option("--workers", critval.workers, "default: SHC_WORKERS or all cores");
  s_critval->add_flag("--full", critval.full, "full-scale n and replicate counts");
  s_critval->add_option("--out,-o", critval.out);
  s_critval->add_option("--values-out", critval.values_out, "per-replicate values CSV");

  PowerOpts power;
  auto* s_power = app.add_subcommand("power", "power of each statistic over a grid of r");
  add_model_opts(s_power, power.model, true);
  s_power->add_option("--r", power.r)->delimiter(',');
  s_power->add_option("--r-factor", power.r_factor, "multiples of the detection boundary")->delimiter(',');
  s_power->add_option("--families", power.families)->delimiter(',')->capture_default_str();
  s_power->add_option("--null-reps", power.null_reps)->capture_default_str();
  s_power->add_option("--reps", power.reps)->capture_default_str();
  s_power->add_option("--level", power.level)->capture_default_str();
  s_power->add_option("--seed", power.seed)->capture_default_str();
  s_power->add_option("--workers", power.workers);
  s_power->add_option("--critvals", power.critvals, "critval CSV instead of simulating");
  s_power->add_flag("--full", power.full, "full-scale n and replicate counts");
  s_power->add_option("--out,-o", power.out);

  VerifyOpts verify;
  auto* s_verify = app.add_subcommand("verify", "Monte Carlo check of a tail bound");
  s_verify->add_option("--check", verify.check, "bj_iii, hc_iv, bb_i or loglik_ii")->capture_default_str();
  s_verify->add_option("--eta", verify.eta)->delimiter(',');
  s_verify->add_option("--n", verify.tail.n)->capture_default_str();
  s_verify->add_option("--reps", verify.tail.reps)->capture_default_str();
  s_verify->add_option("--a", verify.tail.a)->capture_default_str();
  s_verify->add_option("--b", verify.tail.b)->capture_default_str();
  s_verify->add_option("--K", verify.tail.K)->capture_default_str();
  s_verify->add_option("--D", verify.tail.D)->capture_default_str();
  s_verify->add_option("--bridge-log2", verify.tail.bridge_log2)->capture_default_str();
  s_verify->add_option("--seed", verify.tail.seed)->capture_default_str();
  s_verify->add_option("--workers", verify.tail.workers);
  s_verify->add_option("--out,-o", verify.out);

  DetectOpts detect;
  double critical_given = 0.0;
  auto* s_detect = app.add_subcommand("detect", "test a dataset against a critical value");
  s_detect->add_option("--in,-i", detect.in, "dataset CSV or - for stdin")->required();
  s_detect->add_option("--family", detect.family)->capture_default_str();
  s_detect->add_option("--shape", detect.shape)->capture_default_str();
  s_detect->add_option("--level", detect.level)->capture_default_str();
  s_detect->add_option("--critvals", detect.critvals, "critval CSV");
  auto* crit_opt = s_detect->add_option("--critical-value", critical_given);
  s_detect->add_option("--reps", detect.reps, "null replicates when simulating")->capture_default_str();
  s_detect->add_option("--seed", detect.seed)->capture_default_str();
  s_detect->add_option("--workers", detect.workers);
  s_detect->add_option("--out,-o", detect.out);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    if (*s_gen) return cmd_gen(gen, out);
    if (*s_approx) return cmd_approx(approx, out);
    if (*s_stat) return cmd_stat(stat, out);
    if (*s_bounds) return cmd_bounds(bounds, out);
    if (*s_critval) return cmd_critval(critval, *s_critval, out);
    if (*s_power) return cmd_power(power, *s_power, out);
    if (*s_verify) return cmd_verify(verify, out);
    if (*s_detect) {
      if (crit_opt->count() > 0) detect.critical = critical_given;
      return cmd_detect(detect, out);
    }
  } catch (const ResourceGuardError& e) {
    structured_error(err, "resource_guard", e.what(), 4);
    return 4;
  } catch (const ConfigurationError& e) {
    structured_error(err, "configuration", e.what(), 3);
    return 3;
  } catch (const DomainError& e) {
    structured_error(err, "domain", e.what(), 2);
    return 2;
  } catch (const std::logic_error& e) {
    structured_error(err, "argument", e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    structured_error(err, "internal", e.what(), 1);
    return 1;
  }
  return 2;
}

}  // namespace shc::cli
