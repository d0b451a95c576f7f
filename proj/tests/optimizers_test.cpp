#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "embopt/embedding.hpp"
#include "embopt/functions.hpp"
#include "embopt/optimizers.hpp"
#include "hand_traces.hpp"

namespace {

using embopt::LowPoint;
using embopt::Objective;
using embopt::OptimizerConfig;
using embopt::RunResult;

using hand::Event;
using hand::Recorder;
using hand::sq;
using hand::kSw;
using hand::kSe;
using hand::kEx;
using hand::kEv;
using hand::kIn;
using hand::kDl;

/// An objective on [-1,1]^n that sees all of its coordinates.
Objective full_objective(std::size_t n, std::function<double(std::span<const double>)> fn) {
  std::vector<std::size_t> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = i;
  return Objective("test", n, coords, std::move(fn), 0.0);
}

/// f wrapped so that every call is counted.
struct Counted {
  std::size_t calls = 0;
  Objective f;
  explicit Counted(const Objective& base)
      : f("counted", base.n(), base.effective_coords(),
          [this, &base](std::span<const double> z) {
            ++calls;
            return base.evaluate_effective(z);
          },
          base.f_star()) {}
};

TEST(EmbeddedHunterTrace, HandWorkedOneDimensional) {
  const Objective f = hand::surrogate();
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(1, 2.0), 10);
  Recorder rec;
  const RunResult r = embopt::embedded_hunter(g, hand::surrogate_config(), rec.hook());
  EXPECT_EQ(hand::diff(rec.events, hand::embedded_hunter_trace()), "");
  EXPECT_NEAR(r.best_value, sq(8.0 / 9 - 0.6), 1e-15);
  EXPECT_EQ(r.evaluations_used, 10u);
  EXPECT_FALSE(r.stopped_early);
  EXPECT_EQ(r.origin_evaluations, 1u);
  ASSERT_EQ(r.best_x.dim(), 1u);
  EXPECT_NEAR(r.best_x.coords[0], 8.0 / 9, 1e-15);
}

TEST(SooTrace, HandWorkedOneDimensional) {
  const Objective f = hand::surrogate();
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(1, 2.0), 10);
  Recorder rec;
  const RunResult r = embopt::soo(g, 3, 3, rec.hook());
  EXPECT_EQ(hand::diff(rec.events, hand::soo_trace()), "");
  EXPECT_NEAR(r.best_value, sq(16.0 / 27 - 0.6), 1e-15);
  EXPECT_EQ(r.evaluations_used, 10u);
}

// Naive reference search: integer cell coordinates, linear scans over all
// nodes, a std::map ledger. Written independently of the library tree.
struct Reference {
  unsigned k;
  std::size_t d;
  double half;
  std::size_t h_max;
  std::size_t budget;
  bool by_norm;
  double m;
  std::function<double(const std::vector<double>&)> g;

  Reference(unsigned k_, std::size_t d_, double half_, std::size_t h_max_, std::size_t budget_,
            bool by_norm_, double m_, std::function<double(const std::vector<double>&)> g_)
      : k(k_), d(d_), half(half_), h_max(h_max_), budget(budget_), by_norm(by_norm_), m(m_), g(std::move(g_)) {}

  struct Node {
    std::size_t depth;
    std::uint64_t index;
    std::vector<std::int64_t> lo;
    std::vector<unsigned> splits;
    double f = 0.0;
    bool leaf = true;
  };
  std::vector<Node> nodes;
  std::map<std::vector<std::int64_t>, std::pair<std::size_t, double>> ledger;
  std::vector<Event> events;
  std::size_t evals = 0;
  std::uint64_t t = 1;
  std::size_t max_depth = 0;
  double best = std::numeric_limits<double>::infinity();
  bool stopped = false;
  unsigned scale_exp = 0;

  static std::int64_t ipow(std::int64_t b, unsigned e) {
    std::int64_t r = 1;
    while (e--) r *= b;
    return r;
  }

  std::vector<std::int64_t> key(const Node& n) const {
    std::vector<std::int64_t> out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = (n.lo[j] + 1) * ipow(k, scale_exp - n.splits[j]);
    return out;
  }
  __int128 sq_norm(const Node& n) const {
    __int128 s = 0;
    for (std::int64_t c : key(n)) s += static_cast<__int128>(c) * c;
    return s;
  }
  std::vector<double> point(const Node& n) const {
    std::vector<double> y(d);
    for (std::size_t j = 0; j < d; ++j) {
      y[j] = half * (static_cast<double>(n.lo[j] + 1) / static_cast<double>(ipow(k, n.splits[j])));
    }
    return y;
  }
  double norm(const Node& n) const {
    double s = 0.0;
    for (double v : point(n)) s += v * v;
    return std::sqrt(s);
  }

  bool evaluate(std::size_t id) {
    if (evals >= budget) return false;
    ++evals;
    const double v = g(point(nodes[id]));
    auto& e = ledger.try_emplace(key(nodes[id]), 0, std::numeric_limits<double>::infinity()).first->second;
    ++e.first;
    e.second = std::min(e.second, v);
    nodes[id].f = e.second;
    best = std::min(best, v);
    events.push_back({t, kEv, nodes[id].depth, nodes[id].index, v});
    return true;
  }

  void expand(std::size_t id) {
    nodes[id].leaf = false;
    const double parent = nodes[id].f;
    events.push_back({t, kEx, nodes[id].depth, nodes[id].index, parent});
    const std::size_t axis = nodes[id].depth % d;
    for (unsigned j = 0; j < k; ++j) {
      Node c = nodes[id];
      c.depth += 1;
      c.index = c.index * k + j;
      c.lo[axis] = c.lo[axis] * k + 2 * static_cast<std::int64_t>(j);
      c.splits[axis] += 1;
      c.leaf = true;
      max_depth = std::max(max_depth, c.depth);
      nodes.push_back(c);
      const std::size_t cid = nodes.size() - 1;
      const auto it = ledger.find(key(c));
      const std::size_t count = it == ledger.end() ? 0 : it->second.first;
      const bool allowed = by_norm ? static_cast<double>(count) <= m * norm(c) : count == 0;
      if (allowed && evaluate(cid)) continue;
      const double v = it == ledger.end() ? parent : std::min(it->second.second, parent);
      nodes[cid].f = v;
      events.push_back({t, kIn, c.depth, c.index, v});
    }
  }

  void run() {
    scale_exp = 1;
    while (ipow(k, scale_exp + 1) < (std::int64_t{1} << 50)) ++scale_exp;
    nodes.push_back(Node{0, 0, std::vector<std::int64_t>(d, -1), std::vector<unsigned>(d, 0)});
    evaluate(0);
    while (evals < budget) {
      double nu = std::numeric_limits<double>::infinity();
      bool expanded = false;
      const std::size_t bound = std::min(max_depth, h_max);
      events.push_back({t, kSw, bound, 0, 0.0});
      for (std::size_t l = 0; l <= bound && evals < budget; ++l) {
        std::map<__int128, std::vector<std::size_t>, std::greater<>> groups;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          if (nodes[i].leaf && nodes[i].depth == l) groups[by_norm ? sq_norm(nodes[i]) : 0].push_back(i);
        }
        for (const auto& [sqn, members] : groups) {
          std::size_t o = members.front();
          for (std::size_t i : members) {
            if (nodes[i].f < nodes[o].f || (nodes[i].f == nodes[o].f && nodes[i].index < nodes[o].index)) o = i;
          }
          const double fo = nodes[o].f;
          events.push_back({t, kSe, l, nodes[o].index, fo});
          if (!(fo < nu)) continue;
          nu = fo;
          if (l >= h_max) {
            events.push_back({t, kDl, l, nodes[o].index, fo});
            continue;
          }
          expand(o);
          expanded = true;
          if (evals >= budget) break;
        }
        ++t;
      }
      if (!expanded && evals < budget) {
        stopped = true;
        break;
      }
    }
  }
};

void compare_with_reference(bool by_norm, std::uint64_t seed) {
  embopt::RngStream rng(seed, 500);
  const std::size_t d = 1 + rng.next_below(3);
  const unsigned k = rng.next_below(4) == 0 ? 5u : 3u;
  const std::size_t budget = 1 + rng.next_below(by_norm ? 150 : 250);
  const std::size_t h_max = rng.next_below(3) == 0 ? 1 + rng.next_below(3) : embopt::default_depth_limit(budget);
  const double half = rng.next_uniform(0.5, 5.0);
  const double m = static_cast<double>(1 + rng.next_below(8));
  std::vector<double> centre(d), weight(d);
  const bool symmetric = rng.next_below(3) == 0;
  for (std::size_t j = 0; j < d; ++j) {
    centre[j] = symmetric ? 0.0 : rng.next_uniform(-1.0, 1.0);
    weight[j] = symmetric ? 1.0 : rng.next_uniform(0.1, 10.0);
  }
  auto quad = [=](std::span<const double> z) {
    double s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) s += weight[j] * sq(z[j] - centre[j]);
    return s;
  };
  const Objective f = full_objective(d, quad);

  Reference ref(k, d, half, h_max, budget, by_norm, m, [&](const std::vector<double>& y) {
                  std::vector<double> c(y);
                  for (double& v : c) v = embopt::clip_unit(v);
                  return quad(c);
                });
  ref.run();

  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(d, half), budget);
  Recorder rec;
  RunResult r;
  if (by_norm) {
    OptimizerConfig cfg;
    cfg.budget = budget;
    cfg.k = k;
    cfg.h_max = h_max;
    cfg.m = static_cast<std::size_t>(m);
    cfg.d = d;
    r = embopt::embedded_hunter(g, cfg, rec.hook());
  } else {
    r = embopt::soo(g, k, h_max, rec.hook());
  }
  SCOPED_TRACE("seed " + std::to_string(seed) + " d=" + std::to_string(d) + " K=" + std::to_string(k) +
               " v=" + std::to_string(budget) + " h_max=" + std::to_string(h_max));
  ASSERT_EQ(rec.events.size(), ref.events.size());
  for (std::size_t i = 0; i < ref.events.size(); ++i) {
    const Event& a = rec.events[i];
    const Event& b = ref.events[i];
    ASSERT_TRUE(a.t == b.t && a.action == b.action && a.depth == b.depth && a.index == b.index &&
                a.value == b.value)
        << "event " << i << " got " << a << " want " << b;
  }
  EXPECT_EQ(r.best_value, ref.best);
  EXPECT_EQ(r.evaluations_used, ref.evals);
  EXPECT_EQ(r.stopped_early, ref.stopped);
}

TEST(EmbeddedHunterTrace, MatchesNaiveReferenceOnRandomQuadratics) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) compare_with_reference(true, seed);
}

TEST(SooTrace, MatchesNaiveReferenceOnRandomQuadratics) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) compare_with_reference(false, seed);
}

// Cell of (depth, index) as integer coordinates at a common scale K^H.
std::vector<std::int64_t> cell_key(std::size_t depth, std::uint64_t index, std::size_t d, unsigned k,
                                   unsigned scale_exp) {
  std::vector<unsigned> digits(depth);
  for (std::size_t i = depth; i-- > 0;) {
    digits[i] = static_cast<unsigned>(index % k);
    index /= k;
  }
  std::vector<std::int64_t> lo(d, -1);
  std::vector<unsigned> splits(d, 0);
  for (std::size_t i = 0; i < depth; ++i) {
    lo[i % d] = lo[i % d] * k + 2 * digits[i];
    ++splits[i % d];
  }
  std::vector<std::int64_t> key(d);
  for (std::size_t j = 0; j < d; ++j) key[j] = (lo[j] + 1) * Reference::ipow(k, scale_exp - splits[j]);
  return key;
}

TEST(EmbeddedHunter, EvaluationCapPerBasePoint) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Objective f = embopt::make_function("rosenbrock", 2, 40, seed);
    OptimizerConfig cfg;
    cfg.budget = 600;
    cfg.d = 2;
    cfg.m = 3;
    cfg.seed = seed;
    Recorder rec;
    const RunResult r = embopt::embedded_hunter(f, cfg, rec.hook());
    const unsigned scale = 30;
    const double unit = cfg.radius() / std::pow(3.0, scale);
    std::map<std::vector<std::int64_t>, std::size_t> counts;
    for (const Event& e : rec.events) {
      if (e.action == kEv) ++counts[cell_key(e.depth, e.index, 2, 3, scale)];
    }
    ASSERT_FALSE(counts.empty());
    std::size_t repeats = 0;
    for (const auto& [key, count] : counts) {
      const double norm = unit * std::hypot(static_cast<double>(key[0]), static_cast<double>(key[1]));
      EXPECT_LE(count, static_cast<std::size_t>(std::floor(3.0 * norm)) + 1);
      repeats += count > 1 ? 1 : 0;
    }
    EXPECT_GT(repeats, 0u);  // the cap is exercised, not vacuous
    EXPECT_EQ((counts[std::vector<std::int64_t>{0, 0}]), 1u);
    EXPECT_EQ(r.origin_evaluations, 1u);
  }
}

TEST(EmbeddedHunter, NuMinStrictlyDecreasesWithinASweep) {
  const Objective f = embopt::make_function("ackley", 3, 60, 4);
  OptimizerConfig cfg;
  cfg.budget = 800;
  cfg.d = 3;
  Recorder rec;
  embopt::embedded_hunter(f, cfg, rec.hook());
  double nu = std::numeric_limits<double>::infinity();
  std::size_t checked = 0;
  for (const Event& e : rec.events) {
    if (e.action == kSw) nu = std::numeric_limits<double>::infinity();
    if (e.action == kEx || e.action == kDl) {
      EXPECT_LT(e.value, nu);
      nu = e.value;
      ++checked;
    }
  }
  EXPECT_GT(checked, 10u);
}

TEST(EmbeddedHunter, BudgetOfOneEvaluatesOnlyTheOrigin) {
  const Objective f = embopt::make_function("ellipsoid", 3, 100, 2);
  OptimizerConfig cfg;
  cfg.budget = 1;
  cfg.d = 3;
  const RunResult r = embopt::embedded_hunter(f, cfg);
  EXPECT_EQ(r.evaluations_used, 1u);
  EXPECT_EQ(r.best_value, 0.0);
  EXPECT_EQ(r.origin_evaluations, 1u);
  EXPECT_EQ(embopt::regret(f, r.best_value), 0.0);
}

TEST(EmbeddedHunter, DepthLimitStopsEarly) {
  const Objective f = full_objective(1, [](std::span<const double> z) { return sq(z[0] - 0.3); });
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(1, 1.0), 100);
  OptimizerConfig cfg;
  cfg.budget = 100;
  cfg.d = 1;
  cfg.h_max = 1;
  Recorder rec;
  const RunResult r = embopt::embedded_hunter(g, cfg, rec.hook());
  EXPECT_TRUE(r.stopped_early);
  EXPECT_EQ(r.evaluations_used, 3u);
  EXPECT_TRUE(std::any_of(rec.events.begin(), rec.events.end(),
                          [](const Event& e) { return e.action == kDl && e.depth == 1; }));
}

TEST(EmbeddedHunter, EvenOrTrivialBranchingRejected) {
  const Objective f = embopt::make_function("ellipsoid", 2, 10, 0);
  OptimizerConfig cfg;
  cfg.d = 2;
  cfg.budget = 10;
  cfg.k = 2;
  EXPECT_THROW(embopt::embedded_hunter(f, cfg), std::invalid_argument);
  cfg.k = 1;
  EXPECT_THROW(embopt::embedded_hunter(f, cfg), std::invalid_argument);
  cfg.k = 3;
  cfg.eta = 1.0;
  EXPECT_THROW(embopt::embedded_hunter(f, cfg), std::invalid_argument);
  cfg.eta = 0.3;
  cfg.budget = 0;
  EXPECT_THROW(embopt::embedded_hunter(f, cfg), std::invalid_argument);
}

void check_run_invariants(const Objective& f, const RunResult& r) {
  ASSERT_EQ(r.curve.size(), r.evaluations_used);
  for (std::size_t i = 0; i < r.curve.size(); ++i) {
    EXPECT_EQ(r.curve[i].evaluations, i + 1);
    if (i > 0) {
      EXPECT_LE(r.curve[i].best, r.curve[i - 1].best);
    }
  }
  ASSERT_FALSE(r.curve.empty());
  EXPECT_EQ(r.curve.back().best, r.best_value);
  ASSERT_EQ(r.best_x.dim(), f.n());
  for (double v : r.best_x.coords) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(f(r.best_x), r.best_value);
  EXPECT_GE(r.best_value, f.f_star() - 1e-12);
}

class AllOptimizers : public ::testing::TestWithParam<std::string> {};

TEST_P(AllOptimizers, UsesExactlyTheBudget) {
  for (std::size_t budget : {5u, 37u, 200u}) {
    for (const char* name : {"ellipsoid", "ackley"}) {
      const Objective base = embopt::make_function(name, 3, 50, budget);
      Counted counted(base);
      OptimizerConfig cfg;
      cfg.budget = budget;
      cfg.d = 3;
      cfg.seed = budget * 7;
      const RunResult r = embopt::run_optimizer(GetParam(), counted.f, cfg);
      EXPECT_EQ(counted.calls, r.evaluations_used);
      if (!r.stopped_early) {
        EXPECT_EQ(r.evaluations_used, budget) << name;
      }
      EXPECT_LE(r.evaluations_used, budget);
      check_run_invariants(base, r);
    }
  }
}

TEST_P(AllOptimizers, SameSeedSameRun) {
  const Objective f = embopt::make_function("rosenbrock", 2, 80, 3);
  OptimizerConfig cfg;
  cfg.budget = 150;
  cfg.d = 2;
  cfg.seed = 42;
  const RunResult a = embopt::run_optimizer(GetParam(), f, cfg);
  const RunResult b = embopt::run_optimizer(GetParam(), f, cfg);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_x.coords, b.best_x.coords);
  ASSERT_EQ(a.curve.size(), b.curve.size());
  for (std::size_t i = 0; i < a.curve.size(); ++i) EXPECT_EQ(a.curve[i].best, b.curve[i].best);
  cfg.seed = 43;
  const RunResult c = embopt::run_optimizer(GetParam(), f, cfg);
  EXPECT_NE(a.best_x.coords, c.best_x.coords);
}

INSTANTIATE_TEST_SUITE_P(Optimizers, AllOptimizers,
                         ::testing::Values("embedded_hunter", "resoo", "sresoo", "random_search"));

TEST(RunOptimizer, UnknownNameThrows) {
  const Objective f = embopt::make_function("ellipsoid", 2, 10, 0);
  EXPECT_THROW(embopt::run_optimizer("cmaes", f, OptimizerConfig{}), std::invalid_argument);
}

TEST(Soo, BudgetOfKExpandsTheRootOnce) {
  const Objective f = full_objective(2, [](std::span<const double> z) { return sq(z[0]) + sq(z[1] - 0.2); });
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(2, 1.0), 3);
  Recorder rec;
  const RunResult r = embopt::soo(g, 3, 5, rec.hook());
  EXPECT_EQ(r.evaluations_used, 3u);
  std::size_t expansions = 0, children = 0;
  for (const Event& e : rec.events) {
    expansions += e.action == kEx ? 1 : 0;
    children += (e.action == kEv || e.action == kIn) && e.depth == 1 ? 1 : 0;
  }
  EXPECT_EQ(expansions, 1u);
  EXPECT_EQ(children, 3u);
}

TEST(Soo, ConvergesOnOneDimensionalQuadratic) {
  const Objective f = full_objective(1, [](std::span<const double> z) { return sq(z[0] - 0.3); });
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(1, 1.0), 40);
  const RunResult r = embopt::soo(g, 3, embopt::default_depth_limit(40));
  EXPECT_LT(r.best_value, 1e-2);
  EXPECT_EQ(r.evaluations_used, 40u);
}

TEST(Soo, RejectsZeroDepthLimit) {
  const Objective f = full_objective(1, [](std::span<const double> z) { return z[0]; });
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(1, 1.0), 4);
  EXPECT_THROW(embopt::soo(g, 3, 0), std::invalid_argument);
}

TEST(Resoo, SingleEmbeddingIsPlainSooOnOneMatrix) {
  const Objective f = embopt::make_function("ackley", 2, 30, 6);
  OptimizerConfig cfg;
  cfg.budget = 120;
  cfg.d = 2;
  cfg.m = 1;
  cfg.seed = 9;
  const RunResult r = embopt::resoo(f, cfg);

  embopt::RngStream matrices(cfg.seed, embopt::stream_id::kEmbedding);
  embopt::FixedMatrixEmbedding g(f, embopt::sample_matrix(f.n(), 2, matrices),
                                 embopt::BoxSpace::symmetric(2, cfg.radius()), cfg.budget);
  const RunResult s = embopt::soo(g, 3, embopt::default_depth_limit(cfg.budget));
  EXPECT_EQ(r.best_value, s.best_value);
  ASSERT_EQ(r.curve.size(), s.curve.size());
  for (std::size_t i = 0; i < r.curve.size(); ++i) EXPECT_EQ(r.curve[i].best, s.curve[i].best);
}

TEST(Resoo, OneEvaluationPerSearchOnlySeesTheOrigin) {
  const Objective f = embopt::make_function("rosenbrock", 3, 30, 2);
  OptimizerConfig cfg;
  cfg.budget = 7;
  cfg.m = 7;
  cfg.d = 3;
  const RunResult r = embopt::resoo(f, cfg);
  EXPECT_EQ(r.evaluations_used, 7u);
  EXPECT_EQ(r.origin_evaluations, 7u);
  EXPECT_EQ(r.best_value, f(std::vector<double>(30, 0.0)));
}

TEST(Resoo, BudgetBelowEmbeddingCountThrows) {
  const Objective f = embopt::make_function("ellipsoid", 2, 10, 0);
  OptimizerConfig cfg;
  cfg.budget = 4;
  cfg.m = 5;
  cfg.d = 2;
  EXPECT_THROW(embopt::resoo(f, cfg), std::invalid_argument);
  EXPECT_THROW(embopt::sresoo(f, cfg), std::invalid_argument);
}

TEST(Resoo, RemainderGoesToTheFirstSearches) {
  // Every search starts at the origin of Y, which projects to x = 0, so the
  // calls at x = 0 mark where each search begins.
  const Objective base = embopt::make_function("ackley", 2, 10, 0);
  std::vector<std::size_t> segments;
  const Objective f("segmented", base.n(), base.effective_coords(),
                    [&](std::span<const double> z) {
                      const bool origin = std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; });
                      if (origin || segments.empty()) segments.push_back(0);
                      ++segments.back();
                      return base.evaluate_effective(z);
                    },
                    base.f_star());
  OptimizerConfig cfg;
  cfg.budget = 47;
  cfg.m = 5;
  cfg.d = 2;
  const RunResult r = embopt::resoo(f, cfg);
  ASSERT_FALSE(r.stopped_early);
  EXPECT_EQ(segments, (std::vector<std::size_t>{10, 10, 9, 9, 9}));
  EXPECT_EQ(r.origin_evaluations, 5u);
}

TEST(Resoo, ShallowSearchesStopEarly) {
  // v/M = 3 gives h_max = 1: each search evaluates its root and two
  // children, then has nothing left to expand.
  const Objective f = embopt::make_function("ellipsoid", 2, 10, 0);
  OptimizerConfig cfg;
  cfg.budget = 17;
  cfg.m = 5;
  cfg.d = 2;
  const RunResult r = embopt::resoo(f, cfg);
  EXPECT_TRUE(r.stopped_early);
  EXPECT_EQ(r.evaluations_used, 15u);
}

TEST(AugmentedEmbedding, AnchorAtZeroMakesAlphaInert) {
  const Objective f = embopt::make_function("ackley", 2, 20, 1);
  embopt::RngStream matrices(5, embopt::stream_id::kEmbedding);
  const embopt::GaussianMatrix a = embopt::sample_matrix(20, 2, matrices);
  const double beta = 2.0 / 0.3;
  embopt::AugmentedEmbedding h(f, embopt::HighPoint{std::vector<double>(20, 0.0)}, a, beta, 100);
  embopt::FixedMatrixEmbedding g(f, a, embopt::BoxSpace::symmetric(2, beta), 100);
  embopt::RngStream pts(5, 77);
  for (int trial = 0; trial < 30; ++trial) {
    const double y0 = pts.next_uniform(-1, 1), y1 = pts.next_uniform(-1, 1);
    const double alpha = pts.next_uniform(-1, 1);
    const double hv = h.evaluate(LowPoint{{alpha, y0, y1}})->value;
    const double gv = g.evaluate(LowPoint{{beta * y0, beta * y1}})->value;
    EXPECT_NEAR(hv, gv, 1e-12);
  }
}

TEST(AugmentedEmbedding, UnitAlphaAtZeroRecoversTheAnchor) {
  const Objective f = embopt::make_function("rosenbrock", 3, 15, 2);
  embopt::RngStream rng(3, 70);
  std::vector<double> x(15);
  for (double& v : x) v = rng.next_uniform(-1, 1);
  embopt::RngStream matrices(3, embopt::stream_id::kEmbedding);
  embopt::AugmentedEmbedding h(f, embopt::HighPoint{x}, embopt::sample_matrix(15, 3, matrices), 10.0, 1);
  EXPECT_EQ(h.evaluate(LowPoint{{1.0, 0.0, 0.0, 0.0}})->value, f(x));
  EXPECT_EQ(h.low_space().dim(), 4u);
}

TEST(Sresoo, EachSearchAnchorsOnThePreviousIncumbent) {
  // With M = 1 the anchor is the origin, so the run equals SOO on the
  // augmented function with a zero anchor.
  const Objective f = embopt::make_function("ellipsoid", 2, 25, 4);
  OptimizerConfig cfg;
  cfg.budget = 90;
  cfg.m = 1;
  cfg.d = 2;
  cfg.seed = 11;
  const RunResult r = embopt::sresoo(f, cfg);
  embopt::RngStream matrices(cfg.seed, embopt::stream_id::kEmbedding);
  embopt::AugmentedEmbedding h(f, embopt::HighPoint{std::vector<double>(25, 0.0)},
                               embopt::sample_matrix(25, 2, matrices), cfg.radius(), cfg.budget);
  const RunResult s = embopt::soo(h, 3, embopt::default_depth_limit(cfg.budget));
  EXPECT_EQ(r.best_value, s.best_value);
  EXPECT_EQ(r.best_x.coords, s.best_x.coords);
}

TEST(RandomSearch, CurveAndBudget) {
  const Objective f = embopt::make_function("ackley", 2, 10, 1);
  const RunResult one = embopt::random_search(f, 1, 3);
  EXPECT_EQ(one.evaluations_used, 1u);
  EXPECT_EQ(one.curve.size(), 1u);
  const RunResult r = embopt::random_search(f, 500, 3);
  check_run_invariants(f, r);
  EXPECT_EQ(r.curve.front().best, one.best_value);
  EXPECT_THROW(embopt::random_search(f, 0, 3), std::invalid_argument);
}

}  // namespace
