#include "embopt/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace embopt {

void OptimizerConfig::validate() const {
  if (budget < 1) throw std::invalid_argument("OptimizerConfig: budget must be >= 1");
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("OptimizerConfig: K must be odd and >= 3");
  if (m < 1) throw std::invalid_argument("OptimizerConfig: M must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("OptimizerConfig: eta must lie in (0,1)");
  if (d < 1) throw std::invalid_argument("OptimizerConfig: d must be >= 1");
}

std::size_t default_depth_limit(std::size_t evaluations) {
  auto h = static_cast<std::size_t>(std::sqrt(static_cast<double>(evaluations)));
  // Guard against sqrt rounding on perfect squares.
  while ((h + 1) * (h + 1) <= evaluations) ++h;
  while (h * h > evaluations) --h;
  return std::max<std::size_t>(h, 1);
}

std::string_view to_string(TraceAction action) {
  switch (action) {
    case TraceAction::kSweep: return "sweep";
    case TraceAction::kSelect: return "select";
    case TraceAction::kExpand: return "expand";
    case TraceAction::kEvaluate: return "evaluate";
    case TraceAction::kInherit: return "inherit";
    case TraceAction::kDepthLimit: return "depth_limit";
  }
  return "?";
}

namespace {

/// Decides whether a new child at a base point with `count` past
/// evaluations and norm `norm` is evaluated.
using EvaluationRule = std::function<bool(std::size_t count, double norm)>;

class TreeSearch {
 public:
  TreeSearch(EmbeddedFunction& g, unsigned k, std::size_t h_max, bool group_by_norm,
             EvaluationRule rule, const TraceHook& trace)
      : g_(g),
        tree_(g.low_space(), k),
        h_max_(h_max),
        group_by_norm_(group_by_norm),
        rule_(std::move(rule)),
        trace_(trace) {}

  RunResult run() {
    if (g_.exhausted()) throw std::invalid_argument("tree search: budget must be >= 1");
    const NodeId root = tree_.root();
    evaluate(root);

    bool stopped_early = false;
    while (!g_.exhausted()) {
      double nu_min = std::numeric_limits<double>::infinity();
      bool expanded_any = false;
      const std::size_t bound = std::min(tree_.depth(), h_max_);
      if (trace_) trace_(TraceEvent{tree_.iteration(), bound, BigInt(0), TraceAction::kSweep, 0.0});
      for (std::size_t l = 0; l <= bound && !g_.exhausted(); ++l) {
        for (const NormGroup& group : groups_at(l)) {
          const NodeId o = select_in_group(tree_, group);
          const double value = *tree_.node(o).f_star;
          emit(o, TraceAction::kSelect, value);
          if (!(value < nu_min)) continue;
          nu_min = value;
          if (tree_.node(o).depth >= h_max_) {
            emit(o, TraceAction::kDepthLimit, value);
            continue;
          }
          expand(o);
          expanded_any = true;
          if (g_.exhausted()) break;
        }
        tree_.advance_iteration();
      }
      if (!expanded_any && !g_.exhausted()) {
        stopped_early = true;
        break;
      }
    }

    RunResult result;
    result.best_value = best_value_;
    result.incumbent = best_record_;
    result.best_x = g_.reconstruct(*best_record_);
    result.curve = std::move(curve_);
    result.evaluations_used = g_.evaluations();
    result.iterations = tree_.iteration();
    result.stopped_early = stopped_early;
    result.origin_evaluations = tree_.ledger().count(tree_.node(root).key);
    return result;
  }

  const PartitionTree& tree() const noexcept { return tree_; }

 private:
  std::vector<NormGroup> groups_at(std::size_t l) const {
    if (group_by_norm_) return tree_.norm_groups(l);
    auto leaves = tree_.leaves_at(l);
    if (leaves.empty()) return {};
    return {NormGroup{l, 1, {}, std::move(leaves)}};
  }

  void emit(NodeId id, TraceAction action, double value) const {
    if (!trace_) return;
    const TreeNode& n = tree_.node(id);
    trace_(TraceEvent{tree_.iteration(), n.depth, n.index, action, value});
  }

  /// Evaluates the node's base point once; false when the budget is gone.
  bool evaluate(NodeId id) {
    auto record = g_.evaluate(tree_.node(id).base_point);
    if (!record) return false;
    const LedgerEntry& entry = tree_.ledger().record(tree_.node(id).key, *record);
    tree_.set_value(id, entry.best);
    if (!best_record_ || record->value < best_value_) {
      best_value_ = record->value;
      best_record_ = *record;
    }
    curve_.push_back(CurvePoint{g_.evaluations(), best_value_});
    emit(id, TraceAction::kEvaluate, record->value);
    return true;
  }

  void expand(NodeId id) {
    const double parent_value = *tree_.node(id).f_star;
    emit(id, TraceAction::kExpand, parent_value);
    for (NodeId child : tree_.expand(id)) {
      const TreeNode& c = tree_.node(child);
      const std::size_t count = tree_.ledger().count(c.key);
      if (rule_(count, c.norm) && evaluate(child)) continue;
      // Cap reached or budget exhausted: keep the best value known here.
      const LedgerEntry* entry = tree_.ledger().find(c.key);
      const double value = entry ? std::min(entry->best, parent_value) : parent_value;
      tree_.set_value(child, value);
      emit(child, TraceAction::kInherit, value);
    }
  }

  EmbeddedFunction& g_;
  PartitionTree tree_;
  std::size_t h_max_;
  bool group_by_norm_;
  EvaluationRule rule_;
  const TraceHook& trace_;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::optional<EvaluationRecord> best_record_;
  std::vector<CurvePoint> curve_;
};

std::size_t resolve_depth_limit(const OptimizerConfig& cfg, std::size_t evaluations) {
  return cfg.h_max > 0 ? cfg.h_max : default_depth_limit(evaluations);
}

/// Appends a sub-run's curve and best value onto an aggregate result.
void merge_run(RunResult& total, RunResult&& part) {
  const std::size_t offset = total.evaluations_used;
  for (const CurvePoint& p : part.curve) {
    const double best = total.curve.empty() ? p.best : std::min(total.curve.back().best, p.best);
    total.curve.push_back(CurvePoint{offset + p.evaluations, best});
  }
  if (!total.incumbent || part.best_value < total.best_value) {
    total.best_value = part.best_value;
    total.incumbent = std::move(part.incumbent);
    total.best_x = std::move(part.best_x);
  }
  total.evaluations_used += part.evaluations_used;
  total.iterations += part.iterations;
  total.stopped_early = total.stopped_early || part.stopped_early;
  total.origin_evaluations += part.origin_evaluations;
}

std::vector<std::size_t> split_budget(std::size_t v, std::size_t m) {
  if (v < m) throw std::invalid_argument("budget v must be >= M");
  std::vector<std::size_t> parts(m, v / m);
  for (std::size_t p = 0; p < v % m; ++p) ++parts[p];
  return parts;
}

}  // namespace

RunResult embedded_hunter(EmbeddedFunction& g, const OptimizerConfig& cfg, const TraceHook& trace) {
  cfg.validate();
  const double m = static_cast<double>(cfg.m);
  // A base point is evaluated while its past count is not greater than M * ||y||.
  EvaluationRule rule = [m](std::size_t count, double norm) {
    return static_cast<double>(count) <= m * norm;
  };
  TreeSearch search(g, cfg.k, resolve_depth_limit(cfg, cfg.budget), true, std::move(rule), trace);
  return search.run();
}

RunResult embedded_hunter(const Objective& f, const OptimizerConfig& cfg, const TraceHook& trace) {
  cfg.validate();
  StochasticObjective g(f, BoxSpace::symmetric(cfg.d, cfg.radius()),
                        RngStream(cfg.seed, stream_id::kEmbedding), cfg.budget);
  return embedded_hunter(g, cfg, trace);
}

RunResult soo(EmbeddedFunction& g, unsigned k, std::size_t h_max, const TraceHook& trace) {
  if (h_max < 1) throw std::invalid_argument("soo: h_max must be >= 1");
  EvaluationRule rule = [](std::size_t count, double) { return count == 0; };
  TreeSearch search(g, k, h_max, false, std::move(rule), trace);
  return search.run();
}

RunResult resoo(const Objective& f, const OptimizerConfig& cfg) {
  cfg.validate();
  const auto budgets = split_budget(cfg.budget, cfg.m);
  const std::size_t h_max = resolve_depth_limit(cfg, cfg.budget / cfg.m);
  const BoxSpace low = BoxSpace::symmetric(cfg.d, cfg.radius());
  RngStream matrices(cfg.seed, stream_id::kEmbedding);
  RunResult total;
  for (std::size_t budget : budgets) {
    FixedMatrixEmbedding g(f, sample_matrix(f.n(), cfg.d, matrices), low, budget);
    merge_run(total, soo(g, cfg.k, h_max));
  }
  return total;
}

RunResult sresoo(const Objective& f, const OptimizerConfig& cfg) {
  cfg.validate();
  const auto budgets = split_budget(cfg.budget, cfg.m);
  const std::size_t h_max = resolve_depth_limit(cfg, cfg.budget / cfg.m);
  const double beta = cfg.radius();
  RngStream matrices(cfg.seed, stream_id::kEmbedding);
  HighPoint anchor{std::vector<double>(f.n(), 0.0)};
  RunResult total;
  for (std::size_t budget : budgets) {
    AugmentedEmbedding g(f, anchor, sample_matrix(f.n(), cfg.d, matrices), beta, budget);
    RunResult part = soo(g, cfg.k, h_max);
    anchor = part.best_x;
    merge_run(total, std::move(part));
  }
  return total;
}

RunResult random_search(const Objective& f, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("random_search: budget must be >= 1");
  RngStream rng(seed, stream_id::kRandomSearch);
  RunResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  HighPoint x{std::vector<double>(f.n())};
  for (std::size_t e = 1; e <= budget; ++e) {
    for (double& v : x.coords) v = rng.next_uniform(-1.0, 1.0);
    const double value = f(x);
    if (e == 1 || value < result.best_value) {
      result.best_value = value;
      result.best_x = x;
    }
    result.curve.push_back(CurvePoint{e, result.best_value});
  }
  result.evaluations_used = budget;
  result.iterations = budget;
  return result;
}

const std::vector<std::string>& optimizer_names() {
  static const std::vector<std::string> names{"embedded_hunter", "resoo", "sresoo",
                                              "random_search"};
  return names;
}

RunResult run_optimizer(std::string_view name, const Objective& f, const OptimizerConfig& cfg) {
  if (name == "embedded_hunter") return embedded_hunter(f, cfg);
  if (name == "resoo") return resoo(f, cfg);
  if (name == "sresoo") return sresoo(f, cfg);
  if (name == "random_search") {
    cfg.validate();
    return random_search(f, cfg.budget, cfg.seed);
  }
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

FixedMatrixEmbedding::FixedMatrixEmbedding(const Objective& target, GaussianMatrix matrix,
                                           BoxSpace low_space, std::size_t budget)
    : EmbeddedFunction(budget),
      target_(target),
      matrix_(std::move(matrix)),
      low_(std::move(low_space)) {
  if (matrix_.rows() != target_.n() || matrix_.cols() != low_.dim()) {
    throw std::invalid_argument("FixedMatrixEmbedding: matrix shape mismatch");
  }
}

std::optional<EvaluationRecord> FixedMatrixEmbedding::evaluate(const LowPoint& y) {
  if (y.dim() != low_.dim()) throw std::invalid_argument("FixedMatrixEmbedding: dimension mismatch");
  if (!consume()) return std::nullopt;
  return EvaluationRecord{target_(project(matrix_, y)), matrix_.tag(), y};
}

HighPoint FixedMatrixEmbedding::reconstruct(const EvaluationRecord& record) const {
  return project(matrix_, record.point);
}

AugmentedEmbedding::AugmentedEmbedding(const Objective& target, HighPoint anchor,
                                       GaussianMatrix matrix, double beta, std::size_t budget)
    : EmbeddedFunction(budget),
      target_(target),
      anchor_(std::move(anchor)),
      matrix_(std::move(matrix)),
      beta_(beta),
      low_(BoxSpace::symmetric(matrix_.cols() + 1, 1.0)) {
  if (matrix_.rows() != target_.n() || anchor_.dim() != target_.n()) {
    throw std::invalid_argument("AugmentedEmbedding: shape mismatch");
  }
}

std::optional<EvaluationRecord> AugmentedEmbedding::evaluate(const LowPoint& point) {
  if (point.dim() != low_.dim()) throw std::invalid_argument("AugmentedEmbedding: dimension mismatch");
  if (!consume()) return std::nullopt;
  EvaluationRecord record{0.0, matrix_.tag(), point};
  record.value = target_(reconstruct(record));
  return record;
}

HighPoint AugmentedEmbedding::reconstruct(const EvaluationRecord& record) const {
  const double alpha = record.point.coords.front();
  LowPoint y{std::vector<double>(record.point.coords.begin() + 1, record.point.coords.end())};
  for (double& v : y.coords) v *= beta_;
  std::vector<double> ay = matrix_.multiply(y);
  HighPoint x{std::vector<double>(ay.size())};
  for (std::size_t i = 0; i < ay.size(); ++i) x.coords[i] = clip_unit(alpha * anchor_.coords[i] + ay[i]);
  return x;
}

DirectFunction::DirectFunction(std::function<double(const LowPoint&)> fn, BoxSpace space,
                               std::size_t budget)
    : EmbeddedFunction(budget), fn_(std::move(fn)), space_(std::move(space)) {}

std::optional<EvaluationRecord> DirectFunction::evaluate(const LowPoint& y) {
  if (y.dim() != space_.dim()) throw std::invalid_argument("DirectFunction: dimension mismatch");
  if (!consume()) return std::nullopt;
  return EvaluationRecord{fn_(y), std::nullopt, y};
}

HighPoint DirectFunction::reconstruct(const EvaluationRecord& record) const {
  return HighPoint{record.point.coords};
}

}  // namespace embopt
