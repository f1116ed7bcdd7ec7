#include "pmono/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace pmono {

namespace {

MatrixXd orthonormal_span(Eigen::Index ambient, const MatrixXd& columns, double tol_rank) {
  if (columns.cols() == 0) return MatrixXd(ambient, 0);
  Eigen::JacobiSVD<MatrixXd> svd(columns, Eigen::ComputeThinU);
  const VectorXd& sv = svd.singularValues();
  if (sv.size() == 0) return MatrixXd(ambient, 0);
  const double cutoff = tol_rank * std::max(sv(0), 1.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Subspace::Subspace(Eigen::Index ambient, MatrixXd basis)
    : ambient_(ambient), basis_(std::move(basis)) {
  if (ambient_ < 1) throw std::invalid_argument("subspace: ambient dimension must be positive");
  if (basis_.rows() != ambient_)
    throw std::invalid_argument("subspace: basis row count differs from ambient dimension");
  if (basis_.cols() > ambient_)
    throw std::invalid_argument("subspace: more basis columns than ambient dimension");
  if (basis_.cols() > 0) {
    MatrixXd gram = basis_.transpose() * basis_;
    gram -= MatrixXd::Identity(basis_.cols(), basis_.cols());
    if (gram.cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("subspace: basis columns are not orthonormal");
  }
}

Subspace Subspace::zero(Eigen::Index ambient) {
  return Subspace(ambient, MatrixXd(ambient, 0));
}

Subspace Subspace::full(Eigen::Index ambient) {
  return Subspace(ambient, MatrixXd::Identity(ambient, ambient));
}

Subspace Subspace::span(Eigen::Index ambient, const MatrixXd& columns, double tol_rank) {
  if (columns.cols() > 0 && columns.rows() != ambient)
    throw std::invalid_argument("subspace: spanning columns have wrong length");
  return Subspace(ambient, orthonormal_span(ambient, columns, tol_rank));
}

Subspace Subspace::span(Eigen::Index ambient, const std::vector<VectorXd>& vectors,
                        double tol_rank) {
  MatrixXd columns(ambient, static_cast<Eigen::Index>(vectors.size()));
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    if (vectors[static_cast<std::size_t>(j)].size() != ambient)
      throw std::invalid_argument("subspace: spanning vector has wrong length");
    columns.col(j) = vectors[static_cast<std::size_t>(j)];
  }
  return Subspace(ambient, orthonormal_span(ambient, columns, tol_rank));
}

MatrixXd Subspace::projector() const {
  if (basis_.cols() == 0) return MatrixXd::Zero(ambient_, ambient_);
  return basis_ * basis_.transpose();
}

VectorXd Subspace::project(const VectorXd& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("subspace: vector has wrong length");
  if (basis_.cols() == 0) return VectorXd::Zero(ambient_);
  return basis_ * (basis_.transpose() * v);
}

bool Subspace::contains(const VectorXd& v, double tol) const {
  VectorXd r = v - project(v);
  return r.norm() <= tol * std::max(1.0, v.norm());
}

Subspace Subspace::ortho_complement() const {
  // The stored basis is orthonormal, so its column count is its exact rank
  // and the complement is read off a full SVD.
  if (basis_.cols() == 0) return full(ambient_);
  if (basis_.cols() == ambient_) return zero(ambient_);
  Eigen::JacobiSVD<MatrixXd> svd(basis_, Eigen::ComputeFullU);
  return Subspace(ambient_, svd.matrixU().rightCols(ambient_ - basis_.cols()));
}

Subspace sum(const Subspace& a, const Subspace& b, double tol_rank) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspace: ambient dimensions differ");
  MatrixXd joined(a.ambient_dim(), a.dim() + b.dim());
  joined.leftCols(a.dim()) = a.basis();
  joined.rightCols(b.dim()) = b.basis();
  return Subspace::span(a.ambient_dim(), joined, tol_rank);
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol_rank) {
  return sum(a.ortho_complement(), b.ortho_complement(), tol_rank).ortho_complement();
}

bool equal(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  MatrixXd diff = a.projector() - b.projector();
  if (diff.size() == 0) return true;
  return diff.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace pmono
