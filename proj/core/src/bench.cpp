#include "embopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "embopt/functions.hpp"
#include "embopt/optimizers.hpp"
#include "embopt/rng.hpp"

namespace embopt {

namespace {

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool is_count(double v) { return v >= 1.0 && std::floor(v) == v && v < 1e15; }

struct CellSpec {
  std::string function;
  std::string algorithm;
  double swept_value = 0.0;
  std::size_t repetition = 0;
  std::size_t v = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t d_eff = 0;
  std::size_t radius_d = 0;
  std::size_t m = 0;
};

CellSpec make_spec(const ExperimentConfig& cfg, const std::string& function,
                   const std::string& algorithm, double value, std::size_t rep) {
  CellSpec s{function, algorithm, value, rep, cfg.v, cfg.n, cfg.d, cfg.d, 0, cfg.m};
  const auto x = static_cast<std::size_t>(value);
  switch (cfg.family) {
    case Family::kConvergence: s.v = x; break;
    case Family::kScalability: s.n = x; break;
    case Family::kEmbeddingNumber: s.m = x; break;
    case Family::kEffectiveDimension: s.d = x; s.d_eff = x; break;
    case Family::kDimensionMismatch: s.d_eff = x; s.radius_d = x == cfg.d ? 0 : x; break;
  }
  return s;
}

CellResult run_cell(const ExperimentConfig& cfg, const CellSpec& spec) {
  CellResult cell;
  cell.family = std::string(family_name(cfg.family));
  cell.function = spec.function;
  cell.algorithm = spec.algorithm;
  cell.swept_name = std::string(swept_name(cfg.family));
  cell.swept_value = spec.swept_value;
  cell.repetition = spec.repetition;
  const std::uint64_t fseed = objective_seed(cfg.master_seed, spec.function, spec.n, spec.d_eff,
                                             spec.repetition);
  cell.seed = optimizer_seed(fseed, spec.algorithm, spec.v, spec.d, spec.radius_d, spec.m,
                             cfg.eta, cfg.k);
  if (spec.d_eff > spec.n) {
    cell.skipped = "effective dimension exceeds n";
    return cell;
  }
  if ((spec.algorithm == "resoo" || spec.algorithm == "sresoo") && spec.v < spec.m) {
    cell.skipped = "budget below M";
    return cell;
  }

  const Objective base = make_function(spec.function, spec.d_eff, spec.n, fseed);
  auto calls = std::make_shared<std::size_t>(0);
  const Objective counted(
      base.name(), base.n(), base.effective_coords(),
      [&base, calls](std::span<const double> z) {
        ++*calls;
        return base.evaluate_effective(z);
      },
      base.f_star(), base.optimum_effective(), base.lipschitz_hint());

  OptimizerConfig oc;
  oc.budget = spec.v;
  oc.k = cfg.k;
  oc.m = spec.m;
  oc.eta = cfg.eta;
  oc.d = spec.d;
  oc.radius_d = spec.radius_d;
  oc.seed = cell.seed;

  const auto start = std::chrono::steady_clock::now();
  const RunResult run = run_optimizer(spec.algorithm, counted, oc);
  const auto stop = std::chrono::steady_clock::now();

  cell.evaluations_used = run.evaluations_used;
  cell.objective_calls = *calls;
  if (cell.objective_calls != cell.evaluations_used) {
    throw std::logic_error("evaluation count disagrees with objective calls in " + spec.algorithm);
  }
  cell.final_regret = regret(base, run.best_value);
  if (cfg.record_time) {
    cell.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return cell;
}

std::vector<double> parse_sweep(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("config: sweep must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw std::invalid_argument("config: sweep must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> parse_names(const nlohmann::json& j, const char* key) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw std::invalid_argument(std::string("config: ") + key + " must be a list of names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw std::invalid_argument(std::string("config: ") + key + " must be a list of names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

template <class T>
T get_unsigned(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw std::invalid_argument("config: " + key + " must be a non-negative integer");
  }
  if (j.is_number_integer() && j.get<long long>() < 0) {
    throw std::invalid_argument("config: " + key + " must be a non-negative integer");
  }
  return j.get<T>();
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kConvergence: return "convergence";
    case Family::kScalability: return "scalability";
    case Family::kEmbeddingNumber: return "embedding_number";
    case Family::kEffectiveDimension: return "effective_dimension";
    case Family::kDimensionMismatch: return "dimension_mismatch";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::kConvergence, Family::kScalability, Family::kEmbeddingNumber,
                   Family::kEffectiveDimension, Family::kDimensionMismatch}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown experiment family: " + std::string(name));
}

std::string_view swept_name(Family family) {
  switch (family) {
    case Family::kConvergence: return "v";
    case Family::kScalability: return "n";
    case Family::kEmbeddingNumber: return "M";
    case Family::kEffectiveDimension: return "d";
    case Family::kDimensionMismatch: return "d_eff";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (sweep.empty()) throw std::invalid_argument("experiment: empty sweep");
  for (double x : sweep) {
    if (!is_count(x)) throw std::invalid_argument("experiment: swept values must be positive integers");
  }
  if (functions.empty()) throw std::invalid_argument("experiment: no functions");
  if (algorithms.empty()) throw std::invalid_argument("experiment: no algorithms");
  const auto& fnames = function_names();
  for (const auto& f : functions) {
    if (std::find(fnames.begin(), fnames.end(), f) == fnames.end()) {
      throw std::invalid_argument("experiment: unknown function " + f);
    }
  }
  const auto& anames = optimizer_names();
  for (const auto& a : algorithms) {
    if (std::find(anames.begin(), anames.end(), a) == anames.end()) {
      throw std::invalid_argument("experiment: unknown algorithm " + a);
    }
  }
  if (repetitions < 1) throw std::invalid_argument("experiment: repetitions must be >= 1");
  if (v < 1 || n < 1 || d < 1 || m < 1) {
    throw std::invalid_argument("experiment: v, n, d and M must be >= 1");
  }
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("experiment: eta must lie in (0,1)");
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("experiment: K must be odd and >= 3");
}

ExperimentConfig full_profile(Family family) {
  ExperimentConfig cfg;
  cfg.family = family;
  switch (family) {
    case Family::kConvergence: cfg.sweep = {10, 50, 100, 1000, 10000, 50000, 100000}; break;
    case Family::kScalability: cfg.sweep = {100, 500, 1000, 10000, 50000, 100000}; break;
    case Family::kEmbeddingNumber: cfg.sweep = {1, 2, 5, 8, 10, 20}; break;
    case Family::kEffectiveDimension: cfg.sweep = {2, 5, 10, 20, 50, 75}; break;
    case Family::kDimensionMismatch: cfg.sweep = {2, 5, 8, 25, 75, 250}; break;
  }
  return cfg;
}

ExperimentConfig desk_profile(Family family) {
  ExperimentConfig cfg;
  cfg.family = family;
  cfg.v = 2000;
  cfg.n = 1000;
  cfg.d = 5;
  cfg.m = 5;
  cfg.repetitions = 10;
  switch (family) {
    case Family::kConvergence: cfg.sweep = {10, 50, 100, 500, 2000}; break;
    case Family::kScalability: cfg.sweep = {100, 500, 1000, 5000}; break;
    case Family::kEmbeddingNumber: cfg.sweep = {1, 2, 5, 8, 10, 20}; break;
    case Family::kEffectiveDimension: cfg.sweep = {2, 5, 10}; break;
    case Family::kDimensionMismatch: cfg.sweep = {2, 5, 8, 25}; break;
  }
  return cfg;
}

ExperimentConfig parse_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  if (!j.contains("family") || !j["family"].is_string()) {
    throw std::invalid_argument("config: missing string key \"family\"");
  }
  const Family family = parse_family(j["family"].get<std::string>());
  std::string profile = "desk";
  if (j.contains("profile")) {
    if (!j["profile"].is_string()) throw std::invalid_argument("config: profile must be a string");
    profile = j["profile"].get<std::string>();
  }
  ExperimentConfig cfg;
  if (profile == "desk") {
    cfg = desk_profile(family);
  } else if (profile == "full") {
    cfg = full_profile(family);
  } else {
    throw std::invalid_argument("config: profile must be \"desk\" or \"full\"");
  }

  for (const auto& [key, value] : j.items()) {
    if (key == "family" || key == "profile") continue;
    if (key == "sweep") {
      cfg.sweep = parse_sweep(value);
    } else if (key == "v") {
      cfg.v = get_unsigned<std::size_t>(value, key);
    } else if (key == "n") {
      cfg.n = get_unsigned<std::size_t>(value, key);
    } else if (key == "d") {
      cfg.d = get_unsigned<std::size_t>(value, key);
    } else if (key == "M") {
      cfg.m = get_unsigned<std::size_t>(value, key);
    } else if (key == "K") {
      cfg.k = get_unsigned<unsigned>(value, key);
    } else if (key == "eta") {
      if (!value.is_number()) throw std::invalid_argument("config: eta must be a number");
      cfg.eta = value.get<double>();
    } else if (key == "repetitions") {
      cfg.repetitions = get_unsigned<std::size_t>(value, key);
    } else if (key == "functions") {
      cfg.functions = parse_names(value, "functions");
    } else if (key == "algorithms") {
      cfg.algorithms = parse_names(value, "algorithms");
    } else if (key == "seed") {
      cfg.master_seed = get_unsigned<std::uint64_t>(value, key);
    } else if (key == "output") {
      if (!value.is_string()) throw std::invalid_argument("config: output must be a string");
      cfg.output = value.get<std::string>();
    } else if (key == "threads") {
      cfg.threads = get_unsigned<std::size_t>(value, key);
    } else if (key == "record_time") {
      if (!value.is_boolean()) throw std::invalid_argument("config: record_time must be a boolean");
      cfg.record_time = value.get<bool>();
    } else {
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::uint64_t objective_seed(std::uint64_t master, std::string_view function, std::size_t n,
                             std::size_t d_eff, std::size_t repetition) {
  std::uint64_t s = mix_seed(master, fnv1a(function));
  s = mix_seed(s, n);
  s = mix_seed(s, d_eff);
  return mix_seed(s, repetition);
}

std::uint64_t optimizer_seed(std::uint64_t objective, std::string_view algorithm, std::size_t v,
                             std::size_t d, std::size_t radius_d, std::size_t m, double eta,
                             unsigned k) {
  std::uint64_t s = mix_seed(objective, fnv1a(algorithm));
  s = mix_seed(s, v);
  s = mix_seed(s, d);
  s = mix_seed(s, radius_d == 0 ? d : radius_d);
  s = mix_seed(s, m);
  s = mix_seed(s, fnv1a(format_number(eta)));
  return mix_seed(s, k);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<CellSpec> specs;
  for (const auto& function : cfg.functions) {
    for (const auto& algorithm : cfg.algorithms) {
      for (double value : cfg.sweep) {
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
          specs.push_back(make_spec(cfg, function, algorithm, value, rep));
        }
      }
    }
  }

  ExperimentResult result;
  result.family = std::string(family_name(cfg.family));
  result.swept_name = std::string(swept_name(cfg.family));
  result.master_seed = cfg.master_seed;
  result.cells.resize(specs.size());

  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, specs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        result.cells[i] = run_cell(cfg, specs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = specs.size();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Cells of one curve are contiguous.
  for (std::size_t begin = 0; begin < result.cells.size(); begin += cfg.repetitions) {
    RegretCurve curve;
    curve.function = result.cells[begin].function;
    curve.algorithm = result.cells[begin].algorithm;
    curve.swept_value = result.cells[begin].swept_value;
    double evals = 0.0;
    double time = 0.0;
    for (std::size_t i = begin; i < begin + cfg.repetitions; ++i) {
      const CellResult& c = result.cells[i];
      if (c.skipped) continue;
      curve.regrets.push_back(c.final_regret);
      evals += static_cast<double>(c.evaluations_used);
      time += c.wall_time_ms;
    }
    if (curve.regrets.empty()) continue;
    const double count = static_cast<double>(curve.regrets.size());
    double sum = 0.0;
    for (double r : curve.regrets) sum += r;
    curve.mean = sum / count;
    curve.mean_evaluations = evals / count;
    curve.mean_wall_time_ms = time / count;
    result.curves.push_back(std::move(curve));
  }
  return result;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << kCsvSchemaLine << '\n' << kCsvHeader << '\n';
  for (const CellResult& c : result.cells) {
    out << c.family << ',' << c.function << ',' << c.algorithm << ',' << c.swept_name << ','
        << format_number(c.swept_value) << ',' << c.repetition << ',' << c.seed << ','
        << c.evaluations_used << ',' << (c.skipped ? std::string("skipped") : format_number(c.final_regret))
        << ',' << format_number(c.wall_time_ms) << '\n';
  }
  for (const RegretCurve& r : result.curves) {
    out << result.family << ',' << r.function << ',' << r.algorithm << ',' << result.swept_name << ','
        << format_number(r.swept_value) << ",mean," << result.master_seed << ','
        << format_number(r.mean_evaluations) << ',' << format_number(r.mean) << ','
        << format_number(r.mean_wall_time_ms) << '\n';
  }
}

}  // namespace embopt
