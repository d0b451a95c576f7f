#include "embopt/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace embopt {

GaussianMatrix::GaussianMatrix(std::size_t n, std::size_t d, std::vector<double> entries,
                               std::optional<MatrixTag> tag)
    : n_(n), d_(d), entries_(std::move(entries)), tag_(tag) {
  if (n_ == 0 || d_ == 0) throw std::invalid_argument("GaussianMatrix: empty shape");
  if (entries_.size() != n_ * d_) throw std::invalid_argument("GaussianMatrix: wrong entry count");
}

std::vector<double> GaussianMatrix::multiply(const LowPoint& y) const {
  if (y.dim() != d_) throw std::invalid_argument("GaussianMatrix: dimension mismatch");
  std::vector<double> out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < d_; ++c) s += entries_[r * d_ + c] * y.coords[c];
    out[r] = s;
  }
  return out;
}

GaussianMatrix regenerate_matrix(std::size_t n, std::size_t d, const MatrixTag& tag) {
  if (n == 0 || d == 0) throw std::invalid_argument("regenerate_matrix: empty shape");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> entries(n * d);
  NormalBlock normals(tag.seed, tag.stream, tag.draw);
  for (double& e : entries) e = normals.next() * scale;
  return GaussianMatrix(n, d, std::move(entries), tag);
}

GaussianMatrix sample_matrix(std::size_t n, std::size_t d, RngStream& stream) {
  const MatrixTag tag{stream.seed(), stream.id(), stream.take_counter()};
  return regenerate_matrix(n, d, tag);
}

HighPoint project(const GaussianMatrix& a, const LowPoint& y) {
  auto ay = a.multiply(y);
  for (double& v : ay) v = clip_unit(v);
  return HighPoint{std::move(ay)};
}

HighPoint project_streamed(std::size_t n, const MatrixTag& tag, const LowPoint& y) {
  const std::size_t d = y.dim();
  if (n == 0 || d == 0) throw std::invalid_argument("project_streamed: empty shape");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  NormalBlock normals(tag.seed, tag.stream, tag.draw);
  HighPoint x{std::vector<double>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += (normals.next() * scale) * y.coords[c];
    x.coords[r] = clip_unit(s);
  }
  return x;
}

StochasticObjective::StochasticObjective(const Objective& target, BoxSpace low_space,
                                         RngStream matrices, std::size_t budget)
    : EmbeddedFunction(budget), target_(target), low_(std::move(low_space)), matrices_(matrices) {}

std::optional<EvaluationRecord> StochasticObjective::evaluate(const LowPoint& y) {
  if (y.dim() != low_.dim()) throw std::invalid_argument("StochasticObjective: dimension mismatch");
  if (!consume()) return std::nullopt;
  const MatrixTag tag{matrices_.seed(), matrices_.id(), matrices_.take_counter()};
  const HighPoint x = project_streamed(target_.n(), tag, y);
  return EvaluationRecord{target_(x), tag, y};
}

HighPoint StochasticObjective::reconstruct(const EvaluationRecord& record) const {
  if (!record.matrix) throw std::invalid_argument("StochasticObjective: record has no matrix tag");
  return project_streamed(target_.n(), *record.matrix, record.point);
}

double StochasticObjective::replay(const EvaluationRecord& record) const {
  return target_(reconstruct(record));
}

IdentityEmbedding::IdentityEmbedding(const Objective& target, BoxSpace low_space,
                                     std::size_t budget)
    : EmbeddedFunction(budget), target_(target), low_(std::move(low_space)) {
  if (target_.n() != low_.dim()) {
    throw std::invalid_argument("IdentityEmbedding: objective dimension must equal d");
  }
}

std::optional<EvaluationRecord> IdentityEmbedding::evaluate(const LowPoint& y) {
  if (y.dim() != low_.dim()) throw std::invalid_argument("IdentityEmbedding: dimension mismatch");
  if (!consume()) return std::nullopt;
  return EvaluationRecord{target_(reconstruct(EvaluationRecord{0.0, std::nullopt, y})),
                          std::nullopt, y};
}

HighPoint IdentityEmbedding::reconstruct(const EvaluationRecord& record) const {
  HighPoint x{record.point.coords};
  for (double& v : x.coords) v = clip_unit(v);
  return x;
}

}  // namespace embopt
