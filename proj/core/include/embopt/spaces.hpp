#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace embopt {

/// A point of the low-dimensional search space Y (d coordinates).
struct LowPoint {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  friend bool operator==(const LowPoint&, const LowPoint&) = default;
};

/// A point of the decision space X = [-1,1]^n.
struct HighPoint {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  friend bool operator==(const HighPoint&, const HighPoint&) = default;
};

/// Axis-aligned box with per-coordinate bounds, lower[i] < upper[i].
class BoxSpace {
 public:
  BoxSpace(std::vector<double> lower, std::vector<double> upper);

  /// The cube [-half_width, half_width]^dim.
  static BoxSpace symmetric(std::size_t dim, double half_width);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }

  bool contains(std::span<const double> p) const noexcept;
  /// True when every coordinate range is [-w, w] for one common w.
  bool is_symmetric_cube() const noexcept;
  /// Half width of a symmetric cube; only meaningful when is_symmetric_cube().
  double half_width() const noexcept { return upper_.empty() ? 0.0 : upper_.front(); }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

double l2_norm(std::span<const double> v) noexcept;
inline double l2_norm(const LowPoint& p) noexcept { return l2_norm(p.coords); }

/// Search space Y = [-d/eta, d/eta]^d used by the embedding methods.
/// Throws std::invalid_argument unless 0 < eta < 1 and d >= 1.
BoxSpace make_low_space(std::size_t d, double eta);

/// Decision space X = [-1,1]^n.
BoxSpace make_high_space(std::size_t n);

}  // namespace embopt
