#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "embopt/functions.hpp"
#include "embopt/rng.hpp"
#include "embopt/spaces.hpp"

namespace embopt {

/// Where a Gaussian matrix came from: enough to regenerate it exactly.
struct MatrixTag {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t draw = 0;

  friend bool operator==(const MatrixTag&, const MatrixTag&) = default;
};

/// A dense n x d matrix, row-major. Sampled matrices have i.i.d.
/// N(0, 1/n) entries; explicit matrices carry no tag.
class GaussianMatrix {
 public:
  GaussianMatrix(std::size_t n, std::size_t d, std::vector<double> entries,
                 std::optional<MatrixTag> tag = std::nullopt);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return d_; }
  double at(std::size_t r, std::size_t c) const noexcept { return entries_[r * d_ + c]; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  const std::optional<MatrixTag>& tag() const noexcept { return tag_; }

  /// Ay without clipping.
  std::vector<double> multiply(const LowPoint& y) const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> entries_;
  std::optional<MatrixTag> tag_;
};

/// Regenerates the matrix addressed by `tag`.
GaussianMatrix regenerate_matrix(std::size_t n, std::size_t d, const MatrixTag& tag);

/// Draws a fresh n x d matrix from `stream`, consuming one counter value.
GaussianMatrix sample_matrix(std::size_t n, std::size_t d, RngStream& stream);

inline double clip_unit(double v) noexcept { return v > 1.0 ? 1.0 : (v < -1.0 ? -1.0 : v); }

/// P_X(Ay): coordinate-wise clipping of Ay into [-1,1]^n.
/// Throws std::invalid_argument when dim(y) != A.cols().
HighPoint project(const GaussianMatrix& a, const LowPoint& y);

/// P_X(Ay) for the matrix addressed by `tag`, generated row by row and never
/// stored. Bit-identical to project(regenerate_matrix(n, d, tag), y).
HighPoint project_streamed(std::size_t n, const MatrixTag& tag, const LowPoint& y);

/// One evaluation of a stochastic objective.
struct EvaluationRecord {
  double value = 0.0;
  std::optional<MatrixTag> matrix;  // empty for non-random embeddings
  LowPoint point;
};

/// A function on the low-dimensional space Y evaluated through some
/// embedding into X, with a hard evaluation budget.
class EmbeddedFunction {
 public:
  virtual ~EmbeddedFunction() = default;

  virtual const BoxSpace& low_space() const noexcept = 0;
  /// Evaluates at y, or returns nullopt once the budget is exhausted.
  virtual std::optional<EvaluationRecord> evaluate(const LowPoint& y) = 0;
  /// Rebuilds the HighPoint that produced `record`.
  virtual HighPoint reconstruct(const EvaluationRecord& record) const = 0;

  std::size_t evaluations() const noexcept { return evaluations_; }
  std::size_t budget() const noexcept { return budget_; }
  bool exhausted() const noexcept { return evaluations_ >= budget_; }

 protected:
  explicit EmbeddedFunction(std::size_t budget) : budget_(budget) {}
  /// Reserves one evaluation; false when none are left.
  bool consume() noexcept {
    if (evaluations_ >= budget_) return false;
    ++evaluations_;
    return true;
  }

 private:
  std::size_t budget_;
  std::size_t evaluations_ = 0;
};

/// g_P(y) = f(P_X(A y)) with a fresh Gaussian matrix A for every call.
///
/// Matrices are never stored; each record keeps the tag that regenerates
/// its matrix. The target must outlive this object.
class StochasticObjective final : public EmbeddedFunction {
 public:
  StochasticObjective(const Objective& target, BoxSpace low_space, RngStream matrices,
                      std::size_t budget);

  const BoxSpace& low_space() const noexcept override { return low_; }
  std::optional<EvaluationRecord> evaluate(const LowPoint& y) override;
  HighPoint reconstruct(const EvaluationRecord& record) const override;

  /// Recomputes the value of `record` from its tag; does not consume budget.
  double replay(const EvaluationRecord& record) const;

 private:
  const Objective& target_;
  BoxSpace low_;
  RngStream matrices_;
};

/// Test hook: g(y) = f(clip(y)) for an objective with n = d. Deterministic.
class IdentityEmbedding final : public EmbeddedFunction {
 public:
  IdentityEmbedding(const Objective& target, BoxSpace low_space, std::size_t budget);

  const BoxSpace& low_space() const noexcept override { return low_; }
  std::optional<EvaluationRecord> evaluate(const LowPoint& y) override;
  HighPoint reconstruct(const EvaluationRecord& record) const override;

 private:
  const Objective& target_;
  BoxSpace low_;
};

}  // namespace embopt
