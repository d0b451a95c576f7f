#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace embopt {

enum class Family { kConvergence, kScalability, kEmbeddingNumber, kEffectiveDimension, kDimensionMismatch };

std::string_view family_name(Family family);
/// Throws std::invalid_argument for an unknown name.
Family parse_family(std::string_view name);
/// Name of the swept parameter: v, n, M, d or d_eff.
std::string_view swept_name(Family family);

/// One experiment family at a chosen scale.
///
/// For every family except dimension_mismatch the objective's effective
/// dimension equals the search dimension d. For dimension_mismatch the
/// search dimension stays at d while the objective's effective dimension
/// takes the swept value (and sets the box radius d_eff / eta).
struct ExperimentConfig {
  Family family = Family::kConvergence;
  std::vector<double> sweep;
  std::size_t v = 10000;
  std::size_t n = 10000;
  std::size_t d = 10;
  std::size_t m = 5;
  double eta = 0.3;
  unsigned k = 3;
  std::size_t repetitions = 20;
  std::vector<std::string> functions{"ellipsoid", "fletcherpowell", "rosenbrock", "ackley"};
  std::vector<std::string> algorithms{"embedded_hunter", "resoo", "sresoo"};
  std::uint64_t master_seed = 0;
  std::string output;
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 0;
  /// When false, wall_time_ms is written as 0 so reruns are byte-identical.
  bool record_time = false;

  /// Throws std::invalid_argument on an empty sweep, unknown names, a
  /// non-integral swept value or invalid fixed parameters.
  void validate() const;
};

/// Full scale: v = n = 1e4, d = 10, M = 5, eta = 0.3, 20 repetitions,
/// with the complete sweep for the family.
ExperimentConfig full_profile(Family family);

/// Desk scale: n = 1000, v = 2000, d = 5, M = 5, 10 repetitions, with a
/// shortened sweep that finishes in minutes.
ExperimentConfig desk_profile(Family family);

/// Reads a JSON object whose keys mirror ExperimentConfig. "profile"
/// ("full" or "desk", default "desk") picks the starting values; every
/// other key overrides one field. Throws std::invalid_argument on unknown
/// keys or wrong types.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

/// One (algorithm, function, swept value, repetition) run.
struct CellResult {
  std::string family;
  std::string function;
  std::string algorithm;
  std::string swept_name;
  double swept_value = 0.0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations_used = 0;
  /// Calls that reached the objective; equals evaluations_used.
  std::size_t objective_calls = 0;
  double final_regret = 0.0;
  double wall_time_ms = 0.0;
  /// Set when the cell is infeasible (e.g. v < M); no run took place.
  std::optional<std::string> skipped;
};

/// Mean final regret of one algorithm on one function at one swept value.
struct RegretCurve {
  std::string algorithm;
  std::string function;
  double swept_value = 0.0;
  std::vector<double> regrets;
  double mean = 0.0;
  double mean_evaluations = 0.0;
  double mean_wall_time_ms = 0.0;
};

struct ExperimentResult {
  std::string family;
  std::string swept_name;
  std::uint64_t master_seed = 0;
  /// Ordered by function, algorithm, swept value, repetition.
  std::vector<CellResult> cells;
  /// One entry per (function, algorithm, swept value) with a feasible cell.
  std::vector<RegretCurve> curves;
};

/// Seed of the objective instance for one repetition. Depends only on the
/// parameters that shape the objective.
std::uint64_t objective_seed(std::uint64_t master, std::string_view function, std::size_t n,
                             std::size_t d_eff, std::size_t repetition);

/// Seed of the optimizer for one cell; extends objective_seed with the
/// algorithm and search parameters.
std::uint64_t optimizer_seed(std::uint64_t objective, std::string_view algorithm, std::size_t v,
                             std::size_t d, std::size_t radius_d, std::size_t m, double eta,
                             unsigned k);

/// Runs every cell of the experiment on a worker pool.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

inline constexpr std::string_view kCsvSchemaLine = "# regret-csv v1";
inline constexpr std::string_view kCsvHeader =
    "family,function,algorithm,swept_name,swept_value,repetition,seed,evaluations_used,"
    "final_regret,wall_time_ms";

/// Writes the schema line, the header, one row per cell and one row per
/// curve (repetition "mean", seed = master seed). Skipped cells carry
/// "skipped" in final_regret.
void write_csv(std::ostream& out, const ExperimentResult& result);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace embopt
