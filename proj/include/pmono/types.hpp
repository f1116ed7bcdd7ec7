#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmono {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// A graph point (x, x*) of an operator on R^d.
struct Pair {
  VectorXd x;
  VectorXd xstar;

  Pair() = default;
  Pair(VectorXd x_, VectorXd xstar_) : x(std::move(x_)), xstar(std::move(xstar_)) {}

  /// The duality product <x, x*>.
  double duality() const { return x.dot(xstar); }
};

enum class Decision { Holds, Fails, Inconclusive };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Holds: return "holds";
    case Decision::Fails: return "fails";
    default: return "inconclusive";
  }
}

/// Outcome of a decision procedure together with the evidence backing it.
///
/// A Fails verdict always carries a certificate: either `indices` (a tuple of
/// point indices into the operator under test) or `chain` (explicit pairs).
/// Re-evaluating the certified quantity must reproduce a violation larger
/// than `tol`. A Holds verdict with `sampled == true` rests on finitely many
/// probes rather than an exhaustive or algebraic argument.
struct Verdict {
  Decision decision = Decision::Inconclusive;
  double value = 0.0;  ///< extremal statistic that was compared against tol
  double tol = 0.0;
  std::vector<std::size_t> indices;
  std::vector<Pair> chain;
  bool sampled = false;

  bool holds() const { return decision == Decision::Holds; }
  bool fails() const { return decision == Decision::Fails; }
};

/// Thrown when an enumeration or grid would exceed a hard resource cap.
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pmono
