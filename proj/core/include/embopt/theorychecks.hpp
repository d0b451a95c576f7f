#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "embopt/embedding.hpp"
#include "embopt/functions.hpp"

namespace embopt {

/// Monte-Carlo estimate of an expectation compared against an upper bound.
/// pass holds exactly when mean - 3 * standard_error <= bound and the
/// estimate is valid (every trial converged).
struct BoundReport {
  std::string name;
  double empirical_mean = 0.0;
  double bound = 0.0;
  std::size_t trials = 0;
  double standard_error = 0.0;
  bool converged = true;
  bool pass = false;
  std::string note;
};

/// Sets pass from the other fields.
void finalize(BoundReport& report);

/// "key: value" lines, one report after another separated by a blank line.
void write_reports_text(std::ostream& out, const std::vector<BoundReport>& reports);

/// Header "check,empirical_mean,standard_error,bound,trials,converged,pass,note"
/// and one row per report.
void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);

/// E|g_p(y) - g_q(y)| over independent matrix pairs versus sqrt(8) L ||y||.
/// Throws std::invalid_argument when trials < 100 or dim(y) is zero.
BoundReport mean_difference_check(const Objective& f, double lipschitz, const LowPoint& y,
                                  std::size_t trials, std::uint64_t seed);

/// Result of a power iteration for the largest singular value.
struct SpectralNorm {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

inline constexpr double kPowerTolerance = 1e-6;
inline constexpr std::size_t kPowerIterationCap = 10000;

/// Largest singular value of a dense n x d row-major matrix by power
/// iteration on B^T B, stopping when the relative change of the estimate
/// drops below `tolerance`.
SpectralNorm spectral_norm(const std::vector<double>& entries, std::size_t n, std::size_t d,
                           double tolerance = kPowerTolerance,
                           std::size_t max_iterations = kPowerIterationCap);

/// E||A_p - A_q|| (spectral norm) versus sqrt(8/n) sqrt(max(n, d)).
/// Throws std::invalid_argument when trials < 30.
BoundReport matrix_norm_check(std::size_t n, std::size_t d, std::size_t trials,
                              std::uint64_t seed);

/// Smallest n accepted by the distance-preservation inequality
/// n > 9 ln m / (eps^2 - eps^3).
double jl_min_dimension(std::size_t m, double eps);

struct JlReport {
  double success_fraction = 0.0;
  std::size_t trials = 0;
  bool dimension_ok = true;  // false when n violates jl_min_dimension
};

/// Fraction of trials in which one Gaussian matrix maps every pair of
/// `points` with ||A y_i - A y_j|| <= sqrt(1 + eps) ||y_i - y_j|| (no
/// clipping). Throws std::invalid_argument unless 0 < eps <= 1/2.
JlReport jl_check(const std::vector<LowPoint>& points, std::size_t n, double eps,
                  std::size_t trials, std::uint64_t seed);

}  // namespace embopt
