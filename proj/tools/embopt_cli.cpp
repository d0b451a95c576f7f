#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "embopt/bench.hpp"
#include "embopt/functions.hpp"
#include "embopt/optimizers.hpp"
#include "embopt/plot.hpp"
#include "embopt/theorychecks.hpp"

namespace {

struct RunArgs {
  std::string algorithm = "embedded_hunter";
  std::string function = "ellipsoid";
  embopt::OptimizerConfig cfg;
  std::size_t n = 10000;
  std::size_t d_eff = 0;
  std::string curve_path;
};

struct ExperimentArgs {
  std::string config;
  std::optional<std::size_t> v, n, d, m, repetitions, threads;
  std::optional<unsigned> k;
  std::optional<double> eta;
  std::optional<std::uint64_t> seed;
  std::string output;
  bool time = false;
};

struct TheoryArgs {
  std::string check = "all";
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t n = 50;
  std::size_t d = 5;
  std::string function = "linear";
  double slope = 1.0;
  double norm = 1.0;
  double eps = 0.5;
  std::size_t points = 5;
  std::size_t lipschitz_samples = 100000;
  std::string csv_path;
};

struct PlotArgs {
  std::string csv;
  std::string out = "plots";
};

int do_run(const RunArgs& a) {
  const std::size_t d_eff = a.d_eff == 0 ? a.cfg.d : a.d_eff;
  const embopt::Objective f = embopt::make_function(a.function, d_eff, a.n, a.cfg.seed);
  const embopt::RunResult r = embopt::run_optimizer(a.algorithm, f, a.cfg);
  std::cout << "algorithm: " << a.algorithm << '\n'
            << "function: " << a.function << '\n'
            << "best_value: " << embopt::format_number(r.best_value) << '\n'
            << "regret: " << embopt::format_number(embopt::regret(f, r.best_value)) << '\n'
            << "evaluations_used: " << r.evaluations_used << '\n'
            << "iterations: " << r.iterations << '\n'
            << "stopped_early: " << (r.stopped_early ? "true" : "false") << '\n';
  if (!a.curve_path.empty()) {
    std::ofstream out(a.curve_path);
    if (!out) throw std::runtime_error("cannot write " + a.curve_path);
    out << "evaluations,best\n";
    for (const auto& p : r.curve) out << p.evaluations << ',' << embopt::format_number(p.best) << '\n';
  }
  return 0;
}

int do_experiment(const ExperimentArgs& a) {
  embopt::ExperimentConfig cfg = embopt::load_config(a.config);
  if (a.v) cfg.v = *a.v;
  if (a.n) cfg.n = *a.n;
  if (a.d) cfg.d = *a.d;
  if (a.m) cfg.m = *a.m;
  if (a.k) cfg.k = *a.k;
  if (a.eta) cfg.eta = *a.eta;
  if (a.repetitions) cfg.repetitions = *a.repetitions;
  if (a.threads) cfg.threads = *a.threads;
  if (a.seed) cfg.master_seed = *a.seed;
  if (!a.output.empty()) cfg.output = a.output;
  if (a.time) cfg.record_time = true;

  const embopt::ExperimentResult result = embopt::run_experiment(cfg);
  if (cfg.output.empty() || cfg.output == "-") {
    embopt::write_csv(std::cout, result);
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + cfg.output);
    embopt::write_csv(out, result);
    std::size_t skipped = 0;
    for (const auto& c : result.cells) skipped += c.skipped ? 1 : 0;
    std::cerr << "wrote " << result.cells.size() << " cells (" << skipped << " skipped) to "
              << cfg.output << '\n';
  }
  return 0;
}

int do_theory(const TheoryArgs& a) {
  std::vector<embopt::BoundReport> reports;
  const bool all = a.check == "all";
  if (all || a.check == "mean_difference") {
    std::optional<embopt::Objective> f;
    if (a.function == "linear") {
      f.emplace(embopt::make_linear(a.n, a.slope));
    } else {
      f.emplace(embopt::make_function(a.function, a.d, a.n, a.seed));
    }
    double lipschitz = 0.0;
    std::string note;
    if (f->lipschitz_hint() && a.function == "linear") {
      lipschitz = *f->lipschitz_hint();
    } else {
      lipschitz = embopt::estimate_lipschitz(*f, a.lipschitz_samples, a.seed);
      note = "L estimated from " + std::to_string(a.lipschitz_samples) +
             " pairs is a lower bound; a pass is conservative evidence";
    }
    const double c = a.norm / std::sqrt(static_cast<double>(a.d));
    const embopt::LowPoint y{std::vector<double>(a.d, c)};
    embopt::BoundReport r = embopt::mean_difference_check(*f, lipschitz, y, a.trials, a.seed);
    r.note = note;
    reports.push_back(r);
  }
  if (all || a.check == "matrix_norm") {
    reports.push_back(embopt::matrix_norm_check(a.n, a.d, std::max<std::size_t>(a.trials, 30), a.seed));
  }
  embopt::write_reports_text(std::cout, reports);
  if (all || a.check == "jl") {
    std::vector<embopt::LowPoint> pts;
    embopt::RngStream rng(a.seed, embopt::stream_id::kTheory);
    for (std::size_t i = 0; i < a.points; ++i) {
      embopt::LowPoint p;
      for (std::size_t j = 0; j < a.d; ++j) p.coords.push_back(rng.next_uniform(-1.0, 1.0));
      pts.push_back(std::move(p));
    }
    const embopt::JlReport jl = embopt::jl_check(pts, a.n, a.eps, a.trials, a.seed);
    if (!reports.empty()) std::cout << '\n';
    std::cout << "check: jl\n"
              << "success_fraction: " << embopt::format_number(jl.success_fraction) << '\n'
              << "trials: " << jl.trials << '\n'
              << "min_dimension: " << embopt::format_number(embopt::jl_min_dimension(a.points, a.eps)) << '\n';
    if (!jl.dimension_ok) {
      std::cout << "note: n is below the distance-preservation threshold\n";
      std::cerr << "warning: n=" << a.n << " does not exceed 9 ln m / (eps^2 - eps^3)\n";
    }
  }
  if (!a.csv_path.empty()) {
    std::ofstream out(a.csv_path);
    if (!out) throw std::runtime_error("cannot write " + a.csv_path);
    embopt::write_reports_csv(out, reports);
  }
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

int do_plot(const PlotArgs& a) {
  for (const auto& p : embopt::emit_plot(a.csv, a.out)) std::cout << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-embedding black-box optimization"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm on one test function");
  run_cmd->add_option("-a,--algorithm", run.algorithm, "embedded_hunter, resoo, sresoo or random_search")
      ->check(CLI::IsMember(embopt::optimizer_names()));
  run_cmd->add_option("-f,--function", run.function)->check(CLI::IsMember(embopt::function_names()));
  run_cmd->add_option("-v,--budget", run.cfg.budget, "Function evaluations")->capture_default_str();
  run_cmd->add_option("-n,--dimension", run.n, "Dimension of X")->capture_default_str();
  run_cmd->add_option("-d,--low-dimension", run.cfg.d, "Dimension of Y")->capture_default_str();
  run_cmd->add_option("--effective-dimension", run.d_eff, "Effective dimension of f (default: d)");
  run_cmd->add_option("-M,--embeddings", run.cfg.m)->capture_default_str();
  run_cmd->add_option("--eta", run.cfg.eta)->capture_default_str();
  run_cmd->add_option("-K,--branching", run.cfg.k)->capture_default_str();
  run_cmd->add_option("--h-max", run.cfg.h_max, "Depth limit, 0 for sqrt of the budget");
  run_cmd->add_option("-s,--seed", run.cfg.seed)->capture_default_str();
  run_cmd->add_option("--curve", run.curve_path, "Write the best-so-far curve as CSV");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment family from a JSON config");
  exp_cmd->add_option("config", exp.config, "Config file")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("-o,--output", exp.output, "CSV path, '-' for stdout");
  exp_cmd->add_option("-v,--budget", exp.v);
  exp_cmd->add_option("-n,--dimension", exp.n);
  exp_cmd->add_option("-d,--low-dimension", exp.d);
  exp_cmd->add_option("-M,--embeddings", exp.m);
  exp_cmd->add_option("-K,--branching", exp.k);
  exp_cmd->add_option("--eta", exp.eta);
  exp_cmd->add_option("-r,--repetitions", exp.repetitions);
  exp_cmd->add_option("-j,--threads", exp.threads);
  exp_cmd->add_option("-s,--seed", exp.seed);
  exp_cmd->add_flag("--time", exp.time, "Record wall time per cell (CSV no longer byte-stable)");

  TheoryArgs th;
  auto* th_cmd = app.add_subcommand("theory-check", "Monte-Carlo checks of the embedding bounds");
  th_cmd->add_option("-c,--check", th.check)->check(CLI::IsMember({"all", "mean_difference", "matrix_norm", "jl"}));
  th_cmd->add_option("-t,--trials", th.trials)->capture_default_str();
  th_cmd->add_option("-s,--seed", th.seed)->capture_default_str();
  th_cmd->add_option("-n,--dimension", th.n)->capture_default_str();
  th_cmd->add_option("-d,--low-dimension", th.d)->capture_default_str();
  th_cmd->add_option("-f,--function", th.function, "linear or a test function name")->capture_default_str();
  th_cmd->add_option("--slope", th.slope, "c in f(x) = c x_1")->capture_default_str();
  th_cmd->add_option("--norm", th.norm, "||y|| for the mean-difference check")->capture_default_str();
  th_cmd->add_option("--eps", th.eps)->capture_default_str();
  th_cmd->add_option("--points", th.points, "m for the distance check")->capture_default_str();
  th_cmd->add_option("--lipschitz-samples", th.lipschitz_samples)->capture_default_str();
  th_cmd->add_option("--csv", th.csv_path, "Also write reports as CSV");

  PlotArgs pl;
  auto* pl_cmd = app.add_subcommand("plot", "Render SVG regret plots from an experiment CSV");
  pl_cmd->add_option("csv", pl.csv)->required()->check(CLI::ExistingFile);
  pl_cmd->add_option("-o,--out", pl.out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return do_run(run);
    if (*exp_cmd) return do_experiment(exp);
    if (*th_cmd) return do_theory(th);
    if (*pl_cmd) return do_plot(pl);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
