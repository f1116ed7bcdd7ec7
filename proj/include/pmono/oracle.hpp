#pragma once

#include <cstdint>
#include <vector>

#include "pmono/finite_op.hpp"
#include "pmono/linear_rel.hpp"
#include "pmono/types.hpp"

namespace pmono {

/// Brute-force counterparts of the fast engines. These recompute everything
/// directly from the raw points, sharing no weight matrix or dynamic program
/// with the decision procedures they cross-check.
namespace oracle {

inline constexpr std::size_t kTupleCap = 10'000'000;

/// Enumerates all size()^(p+1) tuples and compares each cyclic sum against
/// tol. Throws CapExceeded past `cap` tuples.
Verdict brute_p_monotone(const FiniteOperator& op, int p, double tol,
                         std::size_t cap = kTupleCap);

/// Enumerates all size()^p chains for the order-p Fitzpatrick value at q.
double brute_fitzpatrick(const FiniteOperator& op, int p, const Pair& q,
                         std::size_t cap = kTupleCap);

/// Randomized check of p-monotonicity for a linear relation: draws tuples of
/// graph points with coefficients from the given seed, evaluates the cyclic
/// sum of each, and reports the first violation. `injected` tuples are tried
/// ahead of the random ones. Holds is always sampled.
Verdict sample_linear_p_monotone(const LinearRelation& rel, int p, int samples,
                                 double tol, std::uint64_t seed,
                                 const std::vector<std::vector<Pair>>& injected = {});

}  // namespace oracle
}  // namespace pmono
