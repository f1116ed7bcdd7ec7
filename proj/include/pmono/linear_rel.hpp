#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmono/subspace.hpp"
#include "pmono/types.hpp"

namespace pmono {

/// Operator on R^d whose graph is a linear subspace of R^{2d}. The first d
/// coordinates of a graph vector are x, the last d are x*.
class LinearRelation {
public:
  LinearRelation(Eigen::Index dim, Subspace graph);

  /// The relation whose graph is {(0, 0)}.
  static LinearRelation zero_relation(Eigen::Index dim);

  /// Graph of the single-valued map x -> a x (full domain).
  static LinearRelation from_matrix(const MatrixXd& a);

  /// Span of the given graph points.
  static LinearRelation from_pairs(Eigen::Index dim, const std::vector<Pair>& pairs,
                                   double tol_rank = kRankTol);

  Eigen::Index dim() const { return dim_; }
  const Subspace& graph() const { return graph_; }

  Subspace domain(double tol_rank = kRankTol) const;

  /// T(0) = {x* : (0, x*) in graph}.
  Subspace value_at_zero(double tol_rank = kRankTol) const;

  LinearRelation inverse() const;

  bool contains(const Pair& q, double tol = kMemberTol) const;

  /// Graph basis column j split into components.
  Pair basis_pair(Eigen::Index j) const;

private:
  Eigen::Index dim_;
  Subspace graph_;
};

/// Diagnostics of a constrained quadratic supremum.
struct QuadReport {
  double max_eigenvalue = 0.0;  ///< largest eigenvalue of the symmetrized form
  double sup_value = 0.0;       ///< the supremum, possibly +infinity
  VectorXd witness;             ///< eigenvector attaining max_eigenvalue
};

/// Monotonicity: the duality product on graph coordinates is a quadratic
/// form; Holds iff its smallest symmetrized eigenvalue is >= -tol. tol
/// defaults to 1e-8 * (1 + |form|).
Verdict is_monotone_linear(const LinearRelation& rel, std::optional<double> tol = {});

/// p-monotonicity: the cyclic sum over (p+1)-tuples of graph points is a
/// quadratic form in the stacked coefficients; Holds iff the symmetrized
/// form has no eigenvalue above tol. Fails carries the witness tuple.
Verdict is_p_monotone_linear(const LinearRelation& rel, int p,
                             std::optional<double> tol = {});

/// Membership of q in the order-p polar of a linear relation. With q fixed
/// the chain objective is quadratic in the stacked chain coefficients w:
/// w' H w + g' w - <q.x, q.xstar>. The supremum is +infinity when H has an
/// eigenvalue above tol or g has a component in the kernel of H; otherwise
/// it is -g' pinv(H) g / 4 - <q.x, q.xstar>. Holds iff the supremum is
/// <= tol. The optional report receives the eigen diagnostics.
Verdict polar_membership_linear(const LinearRelation& rel, int p, const Pair& q,
                                std::optional<double> tol = {},
                                QuadReport* report = nullptr);

/// Smallest maximal extension: graph + {0} x dom(T)^perp. Postconditions
/// (domain preserved, value at zero = dom(T)^perp) are verified internally.
LinearRelation maximalize(const LinearRelation& rel, double tol_rank = kRankTol);

/// Maximality at order p: p-monotone and value_at_zero = dom^perp. Exact in
/// both directions in finite dimension.
Verdict is_maximal_p_monotone_linear(const LinearRelation& rel, int p,
                                     std::optional<double> tol = {});

/// Searches for a p-monotone extension point outside the maximalized graph:
/// membership of such a point in the polar certifies a second maximal
/// extension, hence Fails. Probes the orthogonal complement of the
/// maximalized graph at several scales, then `budget` random points. Holds
/// is sample-backed (sampled = true) unless the complement is empty.
/// Throws std::invalid_argument when rel is not p-monotone.
Verdict is_premaximal_linear(const LinearRelation& rel, int p, int budget,
                             std::uint64_t seed, std::optional<double> tol = {});

/// Adjoint relation: all (y, y*) with <y, b*> = <y*, b> for every graph
/// point (b, b*); the orthogonal complement of the swapped graph. The
/// defining identity is re-verified on basis pairs after construction.
LinearRelation adjoint(const LinearRelation& rel);

/// Affine operator: base + direction.
struct AffineRelation {
  Pair base;
  LinearRelation direction;
};

/// Verifies on sampled points that the affine hull of the graph lies inside
/// the order-p polar (computed after translating base to the origin), and,
/// when base is the origin, that the negated graph does too. Fails carries
/// the offending point. Throws std::invalid_argument when the direction is
/// not p-monotone.
Verdict affine_hull_check(const AffineRelation& aff, int p, int samples,
                          std::uint64_t seed, std::optional<double> tol = {});

}  // namespace pmono
