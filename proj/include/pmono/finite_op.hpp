#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmono/grid.hpp"
#include "pmono/types.hpp"

namespace pmono {

/// Operator on R^d given by finitely many graph points. Precomputes the
/// transition weights w(i, j) = <x_j - x_i, x_i*> used by every cyclic-sum
/// decomposition: a closed walk i_0 -> i_1 -> ... -> i_k -> i_0 through the
/// weight matrix accumulates exactly the cyclic sum of the visited pairs.
class FiniteOperator {
public:
  FiniteOperator(Eigen::Index dim, std::vector<Pair> points);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Pair>& points() const { return points_; }
  const Pair& point(std::size_t i) const { return points_.at(i); }
  const MatrixXd& weights() const { return weights_; }

private:
  Eigen::Index dim_;
  std::vector<Pair> points_;
  MatrixXd weights_;
};

/// Sum over the chain of <x_{i+1} - x_i, x_i*> with wraparound to the first
/// element. Throws std::invalid_argument on an empty chain.
double cyclic_sum(std::span<const Pair> chain);

/// Same traversal applied to the swapped pairs: sum of <x*_{i+1} - x*_i, x_i>.
double inverse_cyclic_sum(std::span<const Pair> chain);

/// Scale-aware default tolerance: 1e-9 * (1 + max |w(i,j)|).
double default_tol(const FiniteOperator& op);

/// Decides whether every (p+1)-tuple drawn from the operator (repetition
/// allowed) has cyclic sum <= tol. Certificates are index tuples. The empty
/// operator holds vacuously.
Verdict is_p_monotone(const FiniteOperator& op, int p, double tol);

/// Decides whether the above holds for every p at once. Simple cycles through
/// the weight matrix have length at most size(), so order size() - 1 settles
/// all orders.
Verdict is_cyclically_monotone(const FiniteOperator& op, double tol);

/// Fitzpatrick function of order p at q: the supremum over p-chains from the
/// operator of the transported cyclic value, plus <q.x, q.xstar>. Returns
/// -infinity for the empty operator.
double fitzpatrick_p(const FiniteOperator& op, int p, const Pair& q);

/// Supremum of fitzpatrick_p over all p >= 1. +infinity as soon as the
/// operator carries a chain of positive cyclic sum (within tol); otherwise
/// the maximum is attained at some p <= size().
double fitzpatrick_inf(const FiniteOperator& op, const Pair& q, double tol);

/// Membership of q in the p-monotone polar: fitzpatrick_p(q) <= <q.x, q.xstar>.
/// The verdict value is the excess sup-part (fitzpatrick minus the duality
/// product), and the certificate chain realizes it on Fails.
Verdict polar_membership(const FiniteOperator& op, int p, const Pair& q, double tol);

/// Polar membership evaluated on every cell of a rectangular grid.
PolarGrid polar_region_grid(const FiniteOperator& op, int p, const GridSpec& spec,
                            double tol, std::size_t cap = kGridCellCap);

/// Randomized-plus-lattice search for a witness that q lies outside the polar
/// of the polar of the operator: looks for a p-chain of polar members that,
/// closed through q, has positive cyclic sum. `budget` counts chain
/// evaluations; budget <= 0 returns Inconclusive immediately.
Verdict falsify_double_polar(const FiniteOperator& op, int p, const Pair& q,
                             std::int64_t budget, double tol, std::uint64_t seed);

/// Whether ystar lies in the normal cone at x to the convex hull of
/// `domain_points`. Throws std::domain_error when x is not in the hull.
bool normal_cone_membership(const std::vector<VectorXd>& domain_points,
                            const VectorXd& x, const VectorXd& ystar, double tol);

/// Graph translated by (shift.x, shift.xstar).
FiniteOperator translate(const FiniteOperator& op, const Pair& shift);

/// Graph of the inverse operator: every (x, x*) becomes (x*, x).
FiniteOperator inverse(const FiniteOperator& op);

/// The pair (lambda * x, lambda * x*) for the indexed point; lambda >= 0.
Pair ray_scale(const FiniteOperator& op, std::size_t index, double lambda);

}  // namespace pmono
