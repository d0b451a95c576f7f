#include "embopt/functions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "embopt/rng.hpp"

namespace embopt {

Objective::Objective(std::string name, std::size_t n, std::vector<std::size_t> effective_coords,
                     Kernel kernel, double f_star,
                     std::optional<std::vector<double>> optimum_effective,
                     std::optional<double> lipschitz_hint)
    : name_(std::move(name)),
      n_(n),
      effective_(std::move(effective_coords)),
      kernel_(std::move(kernel)),
      f_star_(f_star),
      optimum_effective_(std::move(optimum_effective)),
      lipschitz_hint_(lipschitz_hint) {
  if (n_ == 0 || effective_.empty() || effective_.size() > n_) {
    throw std::invalid_argument("Objective: need 1 <= d_eff <= n");
  }
  for (std::size_t c : effective_) {
    if (c >= n_) throw std::invalid_argument("Objective: effective coordinate out of range");
  }
  if (optimum_effective_ && optimum_effective_->size() != effective_.size()) {
    throw std::invalid_argument("Objective: optimum has wrong dimension");
  }
}

double Objective::operator()(std::span<const double> x) const {
  if (x.size() != n_) throw std::invalid_argument("Objective: dimension mismatch");
  std::vector<double> z(effective_.size());
  for (std::size_t k = 0; k < effective_.size(); ++k) z[k] = x[effective_[k]];
  return kernel_(z);
}

double Objective::evaluate_effective(std::span<const double> z) const {
  if (z.size() != effective_.size()) throw std::invalid_argument("Objective: dimension mismatch");
  return kernel_(z);
}

HighPoint Objective::embed(std::span<const double> z, double fill) const {
  if (z.size() != effective_.size()) throw std::invalid_argument("Objective: dimension mismatch");
  HighPoint x{std::vector<double>(n_, fill)};
  for (std::size_t k = 0; k < effective_.size(); ++k) x.coords[effective_[k]] = z[k];
  return x;
}

std::optional<HighPoint> Objective::optimizer_point() const {
  if (!optimum_effective_) return std::nullopt;
  return embed(*optimum_effective_);
}

namespace {

std::vector<std::size_t> choose_coordinates(std::size_t n, std::size_t d_eff, RngStream& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  // Partial Fisher-Yates: the first d_eff slots are a uniform ordered sample.
  for (std::size_t i = 0; i < d_eff; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(d_eff);
  return perm;
}

double ellipsoid_raw(std::span<const double> u) {
  const std::size_t d = u.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = d == 1 ? 1.0 : std::pow(1e6, static_cast<double>(i) / static_cast<double>(d - 1));
    sum += w * u[i] * u[i];
  }
  return sum;
}

double rosenbrock_raw(std::span<const double> u) {
  if (u.size() == 1) return (1.0 - u[0]) * (1.0 - u[0]);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double a = u[i + 1] - u[i] * u[i];
    const double b = 1.0 - u[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double ackley_raw(std::span<const double> u) {
  const double d = static_cast<double>(u.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : u) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
}

struct FletcherPowellData {
  std::size_t d = 0;
  std::vector<double> a;  // d x d, row-major
  std::vector<double> b;
  std::vector<double> target;

  double mix(std::size_t i, std::span<const double> u) const {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      s += a[i * d + j] * std::sin(u[j]) + b[i * d + j] * std::cos(u[j]);
    }
    return s;
  }
};

Objective make_ellipsoid(std::size_t n, std::vector<std::size_t> coords) {
  const std::size_t d = coords.size();
  double wsq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = d == 1 ? 1.0 : std::pow(1e6, static_cast<double>(i) / static_cast<double>(d - 1));
    wsq += w * w;
  }
  // |grad| = 8 |w_i z_i| per coordinate on [-1,1].
  const double lipschitz = 8.0 * std::sqrt(wsq);
  auto kernel = [](std::span<const double> z) {
    std::vector<double> u(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) u[i] = 2.0 * z[i];
    return ellipsoid_raw(u);
  };
  return Objective("ellipsoid", n, std::move(coords), kernel, 0.0, std::vector<double>(d, 0.0),
                   lipschitz);
}

Objective make_rosenbrock(std::size_t n, std::vector<std::size_t> coords) {
  const std::size_t d = coords.size();
  auto kernel = [](std::span<const double> z) {
    std::vector<double> u(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) u[i] = 2.0 * z[i];
    return rosenbrock_raw(u);
  };
  return Objective("rosenbrock", n, std::move(coords), kernel, 0.0, std::vector<double>(d, 0.5));
}

Objective make_ackley(std::size_t n, std::vector<std::size_t> coords, RngStream& rng) {
  const std::size_t d = coords.size();
  std::vector<double> shift(d);
  for (double& s : shift) s = rng.next_uniform(-0.5, 0.5);
  const double offset = ackley_raw(std::vector<double>(d, 0.0));
  auto kernel = [shift, offset](std::span<const double> z) {
    std::vector<double> u(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) u[i] = 32.0 * (z[i] - shift[i]);
    return ackley_raw(u) - offset;
  };
  return Objective("ackley", n, std::move(coords), kernel, 0.0, shift);
}

Objective make_fletcherpowell(std::size_t n, std::vector<std::size_t> coords, RngStream& rng) {
  const std::size_t d = coords.size();
  auto data = std::make_shared<FletcherPowellData>();
  data->d = d;
  data->a.resize(d * d);
  data->b.resize(d * d);
  for (double& v : data->a) v = static_cast<double>(rng.next_below(201)) - 100.0;
  for (double& v : data->b) v = static_cast<double>(rng.next_below(201)) - 100.0;
  std::vector<double> optimum(d);
  std::vector<double> alpha(d);
  for (std::size_t j = 0; j < d; ++j) {
    optimum[j] = rng.next_uniform(-0.5, 0.5);
    alpha[j] = std::numbers::pi * optimum[j];
  }
  data->target.resize(d);
  for (std::size_t i = 0; i < d; ++i) data->target[i] = data->mix(i, alpha);
  auto kernel = [data](std::span<const double> z) {
    std::vector<double> u(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) u[i] = std::numbers::pi * z[i];
    double sum = 0.0;
    for (std::size_t i = 0; i < data->d; ++i) {
      const double r = data->target[i] - data->mix(i, u);
      sum += r * r;
    }
    return sum;
  };
  return Objective("fletcherpowell", n, std::move(coords), kernel, 0.0, optimum);
}

}  // namespace

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names{"ellipsoid", "fletcherpowell", "rosenbrock",
                                              "ackley"};
  return names;
}

Objective make_function(std::string_view name, std::size_t d_eff, std::size_t n,
                        std::uint64_t seed) {
  if (d_eff == 0 || d_eff > n) {
    throw std::invalid_argument("make_function: need 1 <= d_eff <= n");
  }
  RngStream rng(seed, stream_id::kObjective);
  auto coords = choose_coordinates(n, d_eff, rng);
  if (name == "ellipsoid") return make_ellipsoid(n, std::move(coords));
  if (name == "rosenbrock") return make_rosenbrock(n, std::move(coords));
  if (name == "ackley") return make_ackley(n, std::move(coords), rng);
  if (name == "fletcherpowell") return make_fletcherpowell(n, std::move(coords), rng);
  throw std::invalid_argument("make_function: unknown function '" + std::string(name) + "'");
}

Objective make_linear(std::size_t n, double c, std::size_t coordinate) {
  auto kernel = [c](std::span<const double> z) { return c * z[0]; };
  const double optimum = c >= 0.0 ? -1.0 : 1.0;
  return Objective("linear", n, {coordinate}, kernel, -std::abs(c), std::vector<double>{optimum},
                   std::abs(c));
}

double estimate_lipschitz(const Objective& f, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("estimate_lipschitz: samples must be >= 2");
  const std::size_t n = f.n();
  std::vector<double> x1(n);
  std::vector<double> x2(n);
  double best = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    // One substream per pair keeps the pair sets nested across sample counts.
    RngStream rng(mix_seed(seed, k), stream_id::kLipschitz);
    for (double& v : x1) v = rng.next_uniform(-1.0, 1.0);
    double dist = 0.0;
    if (k % 2 == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        x2[i] = rng.next_uniform(-1.0, 1.0);
        dist += (x1[i] - x2[i]) * (x1[i] - x2[i]);
      }
      dist = std::sqrt(dist);
    } else {
      x2 = x1;
      const std::size_t i = static_cast<std::size_t>(rng.next_below(n));
      const double scale = std::pow(10.0, rng.next_uniform(-3.0, std::log10(2.0)));
      const double step = rng.next_uniform() < 0.5 ? -scale : scale;
      x2[i] = std::clamp(x1[i] + step, -1.0, 1.0);
      dist = std::abs(x2[i] - x1[i]);
    }
    if (dist <= 0.0) continue;
    best = std::max(best, std::abs(f(x1) - f(x2)) / dist);
  }
  return best;
}

double regret(const Objective& f, double value) {
  const double gap = value - f.f_star();
  if (gap < -kRegretSlack) {
    throw std::logic_error("regret: value below the known optimum of " + f.name());
  }
  return gap < 0.0 ? 0.0 : gap;
}

}  // namespace embopt
