#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "embopt/embedding.hpp"
#include "embopt/functions.hpp"
#include "embopt/partition.hpp"

namespace embopt {

/// Parameters shared by all optimizers. h_max = 0 selects the default
/// depth limit: floor(sqrt(v)) for EmbeddedHunter, floor(sqrt(v/M)) per
/// tree for RESOO and SRESOO.
struct OptimizerConfig {
  std::size_t budget = 10000;
  unsigned k = 3;
  std::size_t h_max = 0;
  std::size_t m = 5;
  double eta = 0.3;
  std::size_t d = 10;
  /// Dimension used in the box radius d/eta; 0 means d. Set apart from d
  /// when the search dimension differs from the assumed effective dimension.
  std::size_t radius_d = 0;
  std::uint64_t seed = 0;

  /// Half width of Y: radius_d / eta, or d / eta when radius_d is 0.
  double radius() const noexcept {
    return static_cast<double>(radius_d == 0 ? d : radius_d) / eta;
  }

  /// Throws std::invalid_argument on budget < 1, even or small K, M < 1,
  /// eta outside (0,1) or d < 1.
  void validate() const;
};

/// floor(sqrt(evaluations)), at least 1.
std::size_t default_depth_limit(std::size_t evaluations);

struct CurvePoint {
  std::size_t evaluations = 0;
  double best = 0.0;
};

struct RunResult {
  double best_value = 0.0;
  /// The evaluation that produced best_value; empty for random search.
  std::optional<EvaluationRecord> incumbent;
  /// The decision-space point that produced best_value.
  HighPoint best_x;
  /// Best-so-far value after every evaluation.
  std::vector<CurvePoint> curve;
  std::size_t evaluations_used = 0;
  std::uint64_t iterations = 0;
  /// True when the run ended before the budget because nothing was left
  /// to expand (every selectable leaf sat at the depth limit).
  bool stopped_early = false;
  /// Ledger count of the origin of Y, summed over trees; 0 for random search.
  std::size_t origin_evaluations = 0;
};

/// kSweep opens a sweep (depth holds the sweep's depth bound, index 0).
/// kDepthLimit marks a selected node that beat nu_min but sits at h_max.
enum class TraceAction { kSweep, kSelect, kExpand, kEvaluate, kInherit, kDepthLimit };

std::string_view to_string(TraceAction action);

/// One step of a tree search, for trace-level testing.
struct TraceEvent {
  std::uint64_t t = 0;
  std::size_t depth = 0;
  BigInt index;
  TraceAction action = TraceAction::kSelect;
  double value = 0.0;
};

using TraceHook = std::function<void(const TraceEvent&)>;

/// EmbeddedHunter on g_P(y) = f(P_X(A y)) over Y = [-r, r]^d with
/// r = cfg.radius() and a fresh Gaussian matrix per evaluation.
RunResult embedded_hunter(const Objective& f, const OptimizerConfig& cfg,
                          const TraceHook& trace = {});

/// EmbeddedHunter over an arbitrary embedded function (e.g. the identity
/// test hook). The function's own budget bounds the run; cfg.budget only
/// sets the default depth limit.
RunResult embedded_hunter(EmbeddedFunction& g, const OptimizerConfig& cfg,
                          const TraceHook& trace = {});

/// SOO on a deterministic function g over its low space. Each base point is
/// evaluated once; the middle child reuses its parent's value.
RunResult soo(EmbeddedFunction& g, unsigned k, std::size_t h_max, const TraceHook& trace = {});

/// M independent SOO searches, each on f(P_X(A_p y)) with its own fixed
/// matrix and floor(v/M) evaluations (the first v mod M searches get one
/// more). Throws std::invalid_argument when v < M.
RunResult resoo(const Objective& f, const OptimizerConfig& cfg);

/// M sequential SOO searches over [-1,1]^(d+1). Search s minimizes
/// h_s(alpha, y) = f(P_X(alpha x_{s-1} + A_s (beta y))) with beta = cfg.radius(),
/// x_0 = 0 and x_{s-1} the incumbent of search s-1. Budget split as resoo.
/// Throws std::invalid_argument when v < M.
RunResult sresoo(const Objective& f, const OptimizerConfig& cfg);

/// Uniform sampling of X with a best-so-far curve.
RunResult random_search(const Objective& f, std::size_t budget, std::uint64_t seed);

/// Names accepted by run_optimizer.
const std::vector<std::string>& optimizer_names();

/// Dispatches "embedded_hunter", "resoo", "sresoo" or "random_search".
RunResult run_optimizer(std::string_view name, const Objective& f, const OptimizerConfig& cfg);

/// g(y) = f(P_X(A y)) for one fixed matrix A. Deterministic.
class FixedMatrixEmbedding final : public EmbeddedFunction {
 public:
  FixedMatrixEmbedding(const Objective& target, GaussianMatrix matrix, BoxSpace low_space,
                       std::size_t budget);

  const BoxSpace& low_space() const noexcept override { return low_; }
  std::optional<EvaluationRecord> evaluate(const LowPoint& y) override;
  HighPoint reconstruct(const EvaluationRecord& record) const override;

 private:
  const Objective& target_;
  GaussianMatrix matrix_;
  BoxSpace low_;
};

/// h(alpha, y) = f(P_X(alpha * anchor + A (beta * y))) on [-1,1]^(d+1).
class AugmentedEmbedding final : public EmbeddedFunction {
 public:
  AugmentedEmbedding(const Objective& target, HighPoint anchor, GaussianMatrix matrix,
                     double beta, std::size_t budget);

  const BoxSpace& low_space() const noexcept override { return low_; }
  std::optional<EvaluationRecord> evaluate(const LowPoint& point) override;
  HighPoint reconstruct(const EvaluationRecord& record) const override;

 private:
  const Objective& target_;
  HighPoint anchor_;
  GaussianMatrix matrix_;
  double beta_;
  BoxSpace low_;
};

/// g(y) = f(y) for a function already defined on its low space.
class DirectFunction final : public EmbeddedFunction {
 public:
  DirectFunction(std::function<double(const LowPoint&)> fn, BoxSpace space, std::size_t budget);

  const BoxSpace& low_space() const noexcept override { return space_; }
  std::optional<EvaluationRecord> evaluate(const LowPoint& y) override;
  HighPoint reconstruct(const EvaluationRecord& record) const override;

 private:
  std::function<double(const LowPoint&)> fn_;
  BoxSpace space_;
};

}  // namespace embopt
