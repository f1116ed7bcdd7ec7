#pragma once

#include <vector>

#include "pmono/types.hpp"

namespace pmono {

/// Relative rank cutoff used when orthonormalizing spanning sets. Singular
/// values are kept when sigma > kRankTol * max(sigma_max, 1); the absolute
/// floor keeps numerically-zero inputs from acquiring phantom directions.
inline constexpr double kRankTol = 1e-10;

/// Default membership / comparison tolerance, relative to max(1, |v|).
inline constexpr double kMemberTol = 1e-8;

/// Linear subspace of R^n stored as an orthonormal basis (columns).
class Subspace {
public:
  /// Wraps an existing orthonormal basis. Throws std::invalid_argument when
  /// the columns are not orthonormal or the row count differs from ambient.
  Subspace(Eigen::Index ambient, MatrixXd basis);

  static Subspace zero(Eigen::Index ambient);
  static Subspace full(Eigen::Index ambient);

  /// Span of arbitrary (possibly dependent) columns.
  static Subspace span(Eigen::Index ambient, const MatrixXd& columns,
                       double tol_rank = kRankTol);
  static Subspace span(Eigen::Index ambient, const std::vector<VectorXd>& vectors,
                       double tol_rank = kRankTol);

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  const MatrixXd& basis() const { return basis_; }

  MatrixXd projector() const;
  VectorXd project(const VectorXd& v) const;

  /// True when |v - P v| <= tol * max(1, |v|).
  bool contains(const VectorXd& v, double tol = kMemberTol) const;

  Subspace ortho_complement() const;

private:
  Eigen::Index ambient_;
  MatrixXd basis_;
};

Subspace sum(const Subspace& a, const Subspace& b, double tol_rank = kRankTol);

/// Computed as the complement of the sum of complements.
Subspace intersect(const Subspace& a, const Subspace& b, double tol_rank = kRankTol);

/// Entrywise comparison of the orthogonal projectors.
bool equal(const Subspace& a, const Subspace& b, double tol = kMemberTol);

}  // namespace pmono
