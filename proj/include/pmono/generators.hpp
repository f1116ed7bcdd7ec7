#pragma once

#include <cstdint>

#include "pmono/finite_op.hpp"
#include "pmono/linear_rel.hpp"

namespace pmono {

/// Finite operator with gaussian points, scaled by `scale`.
FiniteOperator random_finite(std::uint64_t seed, int n, Eigen::Index d,
                             double scale = 1.0);

/// Finite operator whose coordinates are half-integers in [-3, 3], so that
/// downstream sums stay exact in double arithmetic.
FiniteOperator random_finite_lattice(std::uint64_t seed, int n, Eigen::Index d);

/// Samples (x, Q x) of the gradient of a convex quadratic (Q symmetric
/// positive semidefinite): cyclically monotone by construction.
FiniteOperator random_gradient_samples(std::uint64_t seed, int n, Eigen::Index d);

/// Graph spanned by k gaussian vectors of R^{2d}.
LinearRelation random_linear_span(std::uint64_t seed, Eigen::Index d, Eigen::Index k);

/// Families of linear relations with qualitatively different monotonicity
/// and maximality behavior.
enum class LinearFlavor {
  Arbitrary,            ///< gaussian span, usually not monotone
  Psd,                  ///< graph of a symmetric PSD matrix
  PsdSkew,              ///< graph of PSD plus a skew part, monotone only
  RestrictedPsd,        ///< PSD graph restricted to a proper domain
  RestrictedAugmented,  ///< restricted PSD plus part of the vertical space
  Vertical              ///< {0} x W for a random subspace W
};

LinearRelation random_linear_flavored(std::uint64_t seed, Eigen::Index d,
                                      LinearFlavor flavor);

/// Seed-determined mix over all flavors.
LinearRelation random_linear_mixed(std::uint64_t seed, Eigen::Index d);

/// Named instances used across documentation and tests.
FiniteOperator singleton_origin();          // {(0, 0)} in R x R
FiniteOperator rotation_samples();          // three points of the quarter-turn graph
FiniteOperator cubic_samples();             // {(-1,-1),(0,0),(1,1),(2,8)} of x^3
LinearRelation rotation_relation();         // graph of the quarter-turn in R^2
LinearRelation psd_example();               // graph of [[2,1],[1,2]]
LinearRelation zero_example();              // zero relation in R^1

}  // namespace pmono
