#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embopt/spaces.hpp"

namespace embopt {

/// A high-dimensional test objective on X = [-1,1]^n with low effective
/// dimension.
///
/// Only the `d_eff` coordinates listed in effective_coords() influence the
/// value. Those coordinates, taken in that order, form the vector z in
/// [-1,1]^d_eff handed to the kernel. Objectives are immutable and safe to
/// evaluate concurrently.
class Objective {
 public:
  using Kernel = std::function<double(std::span<const double>)>;

  Objective(std::string name, std::size_t n, std::vector<std::size_t> effective_coords,
            Kernel kernel, double f_star,
            std::optional<std::vector<double>> optimum_effective = std::nullopt,
            std::optional<double> lipschitz_hint = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t d_eff() const noexcept { return effective_.size(); }
  const std::vector<std::size_t>& effective_coords() const noexcept { return effective_; }
  double f_star() const noexcept { return f_star_; }
  const std::optional<std::vector<double>>& optimum_effective() const noexcept {
    return optimum_effective_;
  }
  std::optional<double> lipschitz_hint() const noexcept { return lipschitz_hint_; }

  /// f(x) for x in [-1,1]^n.
  double operator()(std::span<const double> x) const;
  double operator()(const HighPoint& x) const { return (*this)(std::span<const double>(x.coords)); }

  /// The kernel evaluated directly on effective coordinates z in [-1,1]^d_eff.
  double evaluate_effective(std::span<const double> z) const;

  /// Embeds effective coordinates into a HighPoint; other coordinates take `fill`.
  HighPoint embed(std::span<const double> z, double fill = 0.0) const;

  /// The known minimizer embedded with zeros elsewhere, when known.
  std::optional<HighPoint> optimizer_point() const;

 private:
  std::string name_;
  std::size_t n_;
  std::vector<std::size_t> effective_;
  Kernel kernel_;
  double f_star_;
  std::optional<std::vector<double>> optimum_effective_;
  std::optional<double> lipschitz_hint_;
};

/// Names accepted by make_function.
const std::vector<std::string>& function_names();

/// Builds a named test objective: "ellipsoid", "fletcherpowell",
/// "rosenbrock" or "ackley".
///
/// The classic function acts on d_eff coordinates picked by a seeded
/// permutation of {0..n-1}. Inputs are rescaled affinely from [-1,1] to the
/// function's usual domain and the output is shifted so f_star = 0.
///
///   ellipsoid       u = 2z,          optimum at z = 0
///   rosenbrock      u = 2z,          optimum at z = 1/2 (u = 1)
///   ackley          u = 32(z - s),   s seeded in [-1/2, 1/2]^d_eff
///   fletcherpowell  u = pi z,        a, b ~ U{-100..100}, optimum angles
///                                    seeded in [-pi/2, pi/2]
///
/// Throws std::invalid_argument for an unknown name or d_eff outside [1, n].
Objective make_function(std::string_view name, std::size_t d_eff, std::size_t n,
                        std::uint64_t seed);

/// f(x) = c * x[coordinate]; Lipschitz constant |c|, minimum -|c|.
Objective make_linear(std::size_t n, double c, std::size_t coordinate = 0);

/// Lower estimate of the Lipschitz constant from `samples` point pairs.
///
/// Even-numbered pairs are independent uniform points of X; odd-numbered
/// pairs move one uniformly chosen coordinate of a uniform point by a step
/// of random scale in [1e-3, 2]. Pairs are generated from the counter-based
/// stream, so a run with more samples sees a superset of the pairs of a run
/// with fewer. Throws std::invalid_argument when samples < 2.
double estimate_lipschitz(const Objective& f, std::size_t samples, std::uint64_t seed);

/// Slack below f_star accepted as floating-point noise in regret().
inline constexpr double kRegretSlack = 1e-12;

/// Simple regret value - f_star, clamped at zero within kRegretSlack.
/// Throws std::logic_error when value lies further below f_star.
double regret(const Objective& f, double value);

}  // namespace embopt
