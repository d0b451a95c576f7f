#include "embopt/theorychecks.hpp"

#include "embopt/bench.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace embopt {

namespace {

/// Welford accumulator.
struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double standard_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

}  // namespace

void finalize(BoundReport& report) {
  report.pass = report.converged &&
                report.empirical_mean - 3.0 * report.standard_error <= report.bound;
}

void write_reports_text(std::ostream& out, const std::vector<BoundReport>& reports) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BoundReport& r = reports[i];
    if (i > 0) out << '\n';
    out << "check: " << r.name << '\n'
        << "empirical_mean: " << format_number(r.empirical_mean) << '\n'
        << "standard_error: " << format_number(r.standard_error) << '\n'
        << "bound: " << format_number(r.bound) << '\n'
        << "trials: " << r.trials << '\n'
        << "converged: " << (r.converged ? "true" : "false") << '\n'
        << "pass: " << (r.pass ? "true" : "false") << '\n';
    if (!r.note.empty()) out << "note: " << r.note << '\n';
  }
}

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "check,empirical_mean,standard_error,bound,trials,converged,pass,note\n";
  for (const BoundReport& r : reports) {
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    out << r.name << ',' << format_number(r.empirical_mean) << ',' << format_number(r.standard_error)
        << ',' << format_number(r.bound) << ',' << r.trials << ',' << (r.converged ? "true" : "false")
        << ',' << (r.pass ? "true" : "false") << ',' << note << '\n';
  }
}

BoundReport mean_difference_check(const Objective& f, double lipschitz, const LowPoint& y,
                                  std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("mean_difference_check: trials must be >= 100");
  if (y.dim() == 0) throw std::invalid_argument("mean_difference_check: empty point");
  RunningStats stats;
  // Matrix p of trial k is draw 2k, matrix q is draw 2k+1.
  for (std::size_t k = 0; k < trials; ++k) {
    const MatrixTag p{seed, stream_id::kTheory, 2 * k};
    const MatrixTag q{seed, stream_id::kTheory, 2 * k + 1};
    const double gp = f(project_streamed(f.n(), p, y));
    const double gq = f(project_streamed(f.n(), q, y));
    stats.add(std::abs(gp - gq));
  }
  BoundReport report;
  report.name = "mean_difference";
  report.empirical_mean = stats.mean;
  report.standard_error = stats.standard_error();
  report.trials = trials;
  report.bound = std::sqrt(8.0) * lipschitz * l2_norm(y);
  finalize(report);
  return report;
}

SpectralNorm spectral_norm(const std::vector<double>& entries, std::size_t n, std::size_t d,
                           double tolerance, std::size_t max_iterations) {
  if (entries.size() != n * d || n == 0 || d == 0) {
    throw std::invalid_argument("spectral_norm: bad shape");
  }
  // Gram matrix G = B^T B (d x d).
  std::vector<double> gram(d * d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      const double bi = entries[r * d + i];
      for (std::size_t j = 0; j < d; ++j) gram[i * d + j] += bi * entries[r * d + j];
    }
  }
  std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  // A fixed non-symmetric start avoids starting orthogonal to the top
  // eigenvector in structured cases.
  for (std::size_t i = 0; i < d; ++i) v[i] += 1e-3 * static_cast<double>(i + 1);
  std::vector<double> w(d);
  SpectralNorm out;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += gram[i * d + j] * v[j];
      w[i] = s;
    }
    const double len = l2_norm(w);
    out.iterations = it;
    if (len == 0.0) {
      out.value = 0.0;
      out.converged = true;
      return out;
    }
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / len;
    const double next = len;  // ||G v|| for unit v tends to the top eigenvalue
    if (it > 1 && std::abs(next - lambda) <= tolerance * next) {
      out.value = std::sqrt(next);
      out.converged = true;
      return out;
    }
    lambda = next;
  }
  out.value = std::sqrt(lambda);
  out.converged = false;
  return out;
}

BoundReport matrix_norm_check(std::size_t n, std::size_t d, std::size_t trials,
                              std::uint64_t seed) {
  if (trials < 30) throw std::invalid_argument("matrix_norm_check: trials must be >= 30");
  RunningStats stats;
  std::size_t failures = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const GaussianMatrix p = regenerate_matrix(n, d, MatrixTag{seed, stream_id::kTheory, 2 * k});
    const GaussianMatrix q = regenerate_matrix(n, d, MatrixTag{seed, stream_id::kTheory, 2 * k + 1});
    std::vector<double> diff(n * d);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p.entries()[i] - q.entries()[i];
    const SpectralNorm norm = spectral_norm(diff, n, d);
    if (!norm.converged) ++failures;
    stats.add(norm.value);
  }
  BoundReport report;
  report.name = "matrix_norm";
  report.empirical_mean = stats.mean;
  report.standard_error = stats.standard_error();
  report.trials = trials;
  report.bound = std::sqrt(8.0 / static_cast<double>(n)) *
                 std::sqrt(static_cast<double>(std::max(n, d)));
  report.converged = failures == 0;
  if (failures > 0) {
    report.note = std::to_string(failures) + " power iterations hit the iteration cap";
  }
  finalize(report);
  return report;
}

double jl_min_dimension(std::size_t m, double eps) {
  return 9.0 * std::log(static_cast<double>(m)) / (eps * eps - eps * eps * eps);
}

JlReport jl_check(const std::vector<LowPoint>& points, std::size_t n, double eps,
                  std::size_t trials, std::uint64_t seed) {
  if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("jl_check: eps must lie in (0, 1/2]");
  if (trials == 0) throw std::invalid_argument("jl_check: trials must be positive");
  JlReport report;
  report.trials = trials;
  report.dimension_ok = points.size() < 2 || static_cast<double>(n) > jl_min_dimension(points.size(), eps);
  if (points.size() < 2) {
    report.success_fraction = 1.0;
    return report;
  }
  const std::size_t d = points.front().dim();
  const double factor = std::sqrt(1.0 + eps);
  std::size_t successes = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const GaussianMatrix a = regenerate_matrix(n, d, MatrixTag{seed, stream_id::kTheory, k});
    std::vector<std::vector<double>> images;
    images.reserve(points.size());
    for (const LowPoint& y : points) images.push_back(a.multiply(y));
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < points.size() && ok; ++j) {
        double high = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double delta = images[i][r] - images[j][r];
          high += delta * delta;
        }
        double low = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double delta = points[i].coords[c] - points[j].coords[c];
          low += delta * delta;
        }
        ok = std::sqrt(high) <= factor * std::sqrt(low);
      }
    }
    if (ok) ++successes;
  }
  report.success_fraction = static_cast<double>(successes) / static_cast<double>(trials);
  return report;
}

}  // namespace embopt
