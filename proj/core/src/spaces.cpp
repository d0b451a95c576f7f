#include "embopt/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace embopt {

BoxSpace::BoxSpace(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("BoxSpace: bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw std::invalid_argument("BoxSpace: lower[" + std::to_string(i) + "] >= upper");
    }
  }
}

BoxSpace BoxSpace::symmetric(std::size_t dim, double half_width) {
  return BoxSpace(std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width));
}

bool BoxSpace::contains(std::span<const double> p) const noexcept {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < lower_[i] || p[i] > upper_[i]) return false;
  }
  return true;
}

bool BoxSpace::is_symmetric_cube() const noexcept {
  const double w = upper_.front();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (upper_[i] != w || lower_[i] != -w) return false;
  }
  return true;
}

double l2_norm(std::span<const double> v) noexcept {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  if (std::isfinite(sum) && sum >= std::numeric_limits<double>::min()) {
    return std::sqrt(sum);
  }
  // Overflow or underflow of the plain sum: rescale by the largest entry.
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  if (top == 0.0 || !std::isfinite(top)) return top;
  double scaled = 0.0;
  for (double x : v) scaled += (x / top) * (x / top);
  return top * std::sqrt(scaled);
}

BoxSpace make_low_space(std::size_t d, double eta) {
  if (d == 0) throw std::invalid_argument("make_low_space: d must be positive");
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("make_low_space: eta must lie in (0, 1)");
  }
  return BoxSpace::symmetric(d, static_cast<double>(d) / eta);
}

BoxSpace make_high_space(std::size_t n) {
  if (n == 0) throw std::invalid_argument("make_high_space: n must be positive");
  return BoxSpace::symmetric(n, 1.0);
}

}  // namespace embopt
