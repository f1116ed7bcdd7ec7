// Acceptance gate: ten end-to-end checks, one line of output each, exit code
// equal to the number of failed checks. Tolerances are pinned inline so a
// regression in any default is caught here rather than silently absorbed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "pmono/finite_op.hpp"
#include "pmono/generators.hpp"
#include "pmono/grid.hpp"
#include "pmono/linear_rel.hpp"
#include "pmono/oracle.hpp"
#include "pmono/product_op.hpp"
#include "pmono/subspace.hpp"

using namespace pmono;

namespace {

Pair pair1(double x, double xstar) {
  VectorXd a(1), b(1);
  a << x;
  b << xstar;
  return Pair(a, b);
}

Pair pair2(double x0, double x1, double s0, double s1) {
  VectorXd a(2), b(2);
  a << x0, x1;
  b << s0, s1;
  return Pair(a, b);
}

// Every (1 + 2d)-tuple of lo/hi/step triples below keeps x axes first, then
// x* axes, matching the cell enumeration of GridSpec.
GridSpec square_grid(double lo, double hi, double step) {
  GridSpec spec;
  spec.axes = {GridAxis{lo, hi, step}, GridAxis{lo, hi, step}};
  return spec;
}

bool chain_reference_values(std::string& detail) {
  const std::vector<Pair> chain = {pair1(0, 0), pair1(1, 1), pair1(-1, 1)};
  const double cyc = cyclic_sum(chain);
  const double inv = inverse_cyclic_sum(chain);
  if (cyc != -1.0 || inv != 1.0) {
    detail = "cyclic " + std::to_string(cyc) + ", inverse " + std::to_string(inv);
    return false;
  }
  return true;
}

bool singleton_region_mask(std::string& detail) {
  const FiniteOperator op = singleton_origin();
  const double tol = default_tol(op);
  const GridSpec spec = square_grid(-2.0, 2.0, 0.05);
  std::vector<std::vector<std::uint8_t>> masks;
  for (int p = 1; p <= 3; ++p)
    masks.push_back(polar_region_grid(op, p, spec, tol).member);
  if (masks[0] != masks[1] || masks[0] != masks[2]) {
    detail = "mask differs across orders";
    return false;
  }
  std::size_t bad = 0;
  for (std::size_t cell = 0; cell < spec.cells(); ++cell) {
    const Pair q = spec.point(cell, 1);
    const bool sign_ok = q.x(0) * q.xstar(0) >= -tol;
    if (sign_ok != (masks[0][cell] != 0)) ++bad;
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " cells off the sign region";
    return false;
  }
  return true;
}

bool engine_matches_enumeration(std::string& detail) {
  std::size_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(seed % 3);
    const int p = 1 + static_cast<int>(seed % 4);
    const FiniteOperator op = random_finite(seed, n, d);
    const double tol = default_tol(op);
    const Verdict fast = is_p_monotone(op, p, tol);
    const Verdict slow = oracle::brute_p_monotone(op, p, tol);
    if (fast.decision != slow.decision ||
        std::abs(fast.value - slow.value) > 1e-12)
      ++bad;
    const FiniteOperator probe = random_finite(seed ^ 0x9e3779b9ull, 2, d);
    for (const Pair& q : probe.points()) {
      const double a = fitzpatrick_p(op, p, q);
      const double b = oracle::brute_fitzpatrick(op, p, q);
      if (std::abs(a - b) > 1e-12) ++bad;
    }
    for (const Pair& q : op.points()) {
      const double a = fitzpatrick_p(op, p, q);
      const double b = oracle::brute_fitzpatrick(op, p, q);
      if (std::abs(a - b) > 1e-12) ++bad;
    }
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " disagreements with enumeration";
    return false;
  }
  return true;
}

bool polar_calculus_on_grids(std::string& detail) {
  std::size_t bad = 0;
  const GridSpec spec = square_grid(-2.0, 2.0, 0.5);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 4 + static_cast<int>(seed % 3);
    const FiniteOperator op = random_finite_lattice(seed, n, 1);
    const double tol = default_tol(op);

    // Membership shrinks as the order grows.
    const PolarGrid g1 = polar_region_grid(op, 1, spec, tol);
    const PolarGrid g2 = polar_region_grid(op, 2, spec, tol);
    const PolarGrid g3 = polar_region_grid(op, 3, spec, tol);
    for (std::size_t c = 0; c < spec.cells(); ++c) {
      if (g2.member[c] && !g1.member[c]) ++bad;
      if (g3.member[c] && !g2.member[c]) ++bad;
    }

    // A smaller graph constrains less, so its polar is larger.
    const std::vector<Pair> prefix(op.points().begin(), op.points().end() - 2);
    const FiniteOperator sub(1, prefix);
    const PolarGrid gsub = polar_region_grid(sub, 2, spec, tol);
    for (std::size_t c = 0; c < spec.cells(); ++c)
      if (g2.member[c] && !gsub.member[c]) ++bad;

    // Translating graph and query together changes nothing; the half-integer
    // data keeps every sum exact, so the values must match bitwise.
    const Pair shift = pair1(1.0, -2.0);
    const FiniteOperator moved = translate(op, shift);
    for (std::size_t c = 0; c < spec.cells(); ++c) {
      const Pair q = spec.point(c, 1);
      const Verdict here = polar_membership(op, 2, q, tol);
      const Verdict there = polar_membership(
          moved, 2, Pair(q.x + shift.x, q.xstar + shift.xstar), tol);
      if (here.decision != there.decision || here.value != there.value) ++bad;
    }
  }

  // A p-monotone graph sits inside its own polar, and augmenting a graph
  // point with a normal direction of the domain hull keeps it inside.
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const FiniteOperator grad = random_gradient_samples(seed, 5, 1);
    std::vector<VectorXd> dom;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      dom.push_back(grad.point(i).x);
      if (grad.point(i).x(0) > grad.point(hi).x(0)) hi = i;
      if (grad.point(i).x(0) < grad.point(lo).x(0)) lo = i;
    }
    for (int p = 1; p <= 3; ++p)
      for (const Pair& g : grad.points())
        if (!polar_membership(grad, p, g, default_tol(grad)).holds()) ++bad;
    VectorXd up(1), down(1);
    up << 2.0;
    down << -2.0;
    if (!normal_cone_membership(dom, grad.point(hi).x, up, kMemberTol)) ++bad;
    if (!normal_cone_membership(dom, grad.point(lo).x, down, kMemberTol)) ++bad;
    const Pair highered(grad.point(hi).x, grad.point(hi).xstar + up);
    const Pair lowered(grad.point(lo).x, grad.point(lo).xstar + down);
    for (int p = 1; p <= 3; ++p) {
      if (!polar_membership(grad, p, highered, default_tol(grad)).holds()) ++bad;
      if (!polar_membership(grad, p, lowered, default_tol(grad)).holds()) ++bad;
    }
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " grid cells violate the calculus";
    return false;
  }
  return true;
}

bool linear_characterizations_agree(std::string& detail) {
  const double tol = 1e-8;
  std::size_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(seed % 4);
    const int p = 1 + static_cast<int>(seed % 3);
    const LinearRelation rel = random_linear_mixed(seed, d);
    const Pair origin(VectorXd::Zero(d), VectorXd::Zero(d));

    const bool via_form = is_p_monotone_linear(rel, p, tol).holds();

    QuadReport report;
    const Verdict at_zero = polar_membership_linear(rel, p, origin, tol, &report);
    const bool via_origin = at_zero.holds();
    const bool via_bounded = std::isfinite(report.sup_value) &&
                             report.sup_value <= tol;

    bool via_complement = via_origin;
    const Subspace perp = rel.domain().ortho_complement();
    for (Eigen::Index j = 0; j < perp.dim() && via_complement; ++j) {
      const Pair vertical(VectorXd::Zero(d), perp.basis().col(j));
      via_complement =
          polar_membership_linear(rel, p, vertical, tol).holds();
    }

    if (via_form != via_origin || via_form != via_bounded ||
        via_form != via_complement)
      ++bad;
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " relations with disagreeing tests";
    return false;
  }
  return true;
}

bool maximalization_is_maximal(std::string& detail) {
  std::size_t bad = 0;
  const LinearFlavor flavors[] = {LinearFlavor::Psd, LinearFlavor::RestrictedPsd,
                                  LinearFlavor::Vertical, LinearFlavor::PsdSkew};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const LinearFlavor flavor = flavors[seed % 4];
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(seed % 4);
    const int p =
        flavor == LinearFlavor::PsdSkew ? 1 : 1 + static_cast<int>(seed % 3);
    const LinearRelation rel = random_linear_flavored(seed, d, flavor);
    if (!is_p_monotone_linear(rel, p).holds()) {
      ++bad;  // generator contract: these flavors are monotone at this order
      continue;
    }
    if (!is_maximal_p_monotone_linear(maximalize(rel), p).holds()) ++bad;
  }

  // Properly restricted graphs keep a single-valued image at zero, so they
  // must be rejected until they are maximalized.
  std::size_t found = 0;
  for (std::uint64_t seed = 1; found < 40 && seed <= 4000; ++seed) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 3);
    const LinearRelation rel =
        random_linear_flavored(seed, d, LinearFlavor::RestrictedPsd);
    if (rel.domain().dim() >= d) continue;
    ++found;
    if (!is_maximal_p_monotone_linear(rel, 2).fails()) ++bad;
  }
  if (found < 40) {
    detail = "only " + std::to_string(found) + " restricted instances found";
    return false;
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " maximality verdicts wrong";
    return false;
  }
  return true;
}

bool rotation_discriminates_orders(std::string& detail) {
  const LinearRelation rot = rotation_relation();
  if (!is_monotone_linear(rot).holds() ||
      !is_maximal_p_monotone_linear(rot, 1).holds()) {
    detail = "order 1 verdicts wrong";
    return false;
  }
  if (!is_p_monotone_linear(rot, 2).fails()) {
    detail = "order 2 unexpectedly holds";
    return false;
  }
  const FiniteOperator samples = rotation_samples();
  const Verdict v = is_p_monotone(samples, 2, default_tol(samples));
  if (!v.fails() || v.value != 2.0 || cyclic_sum(v.chain) != 2.0) {
    detail = "sample certificate value " + std::to_string(v.value);
    return false;
  }
  return true;
}

bool double_polar_is_empty(std::string& detail) {
  const FiniteOperator op = singleton_origin();
  const double tol = default_tol(op);
  std::size_t bad = 0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const Pair q = pair1(-2.0 + 0.1 * i, -2.0 + 0.1 * j);
      if (!falsify_double_polar(op, 2, q, 100000, tol, 42).fails()) ++bad;
    }
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " candidates not excluded";
    return false;
  }
  return true;
}

bool product_and_adjoint_verifiers(std::string& detail) {
  std::size_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(seed % 4);
    const int p = 1 + static_cast<int>(seed % 3);
    const LinearRelation rel = random_linear_mixed(seed, d);
    if (!verify_transfer(rel, p).pass) ++bad;
    if (!verify_maxtp(rel, p).pass) ++bad;
    if (!verify_adjoint_inclusion(rel, p).pass) ++bad;
    if (!brezis_browder_verify(rel, p).pass) ++bad;
  }
  if (bad > 0) {
    detail = std::to_string(bad) + " verifier reports failed";
    return false;
  }
  return true;
}

bool cone_scaling_breaks_monotonicity(std::string& detail) {
  const FiniteOperator op = cubic_samples();
  const Pair a = ray_scale(op, 3, 0.5);  // (2, 8) scaled to (1, 4)
  const Pair b = ray_scale(op, 2, 2.0);  // (1, 1) scaled to (2, 2)
  if (a.x(0) != 1.0 || a.xstar(0) != 4.0 || b.x(0) != 2.0 || b.xstar(0) != 2.0) {
    detail = "scaled pairs off the expected rays";
    return false;
  }
  const double product = (a.x - b.x).dot(a.xstar - b.xstar);
  if (product != -2.0) {
    detail = "duality product " + std::to_string(product);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<bool(std::string&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"reference chain cyclic sums are -1 and +1", chain_reference_values},
      {"singleton polar region equals the sign-agreement mask for p = 1, 2, 3",
       singleton_region_mask},
      {"engine agrees with enumeration on 200 random finite operators",
       engine_matches_enumeration},
      {"polar calculus holds on grids over 50 seeds", polar_calculus_on_grids},
      {"four linear p-monotonicity tests agree on 100 random relations",
       linear_characterizations_agree},
      {"maximalization passes and restrictions fail the maximality test",
       maximalization_is_maximal},
      {"quarter-turn rotation separates order 1 from order 2",
       rotation_discriminates_orders},
      {"every grid candidate is excluded from the singleton double polar",
       double_polar_is_empty},
      {"product, maximality, adjoint, and closure verifiers all pass",
       product_and_adjoint_verifiers},
      {"cubic ray scaling yields duality product -2", cone_scaling_breaks_monotonicity},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criteria[i].body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::printf("[%s] criterion %zu: %s (%.3f s)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].label, elapsed.count());
    if (!ok) {
      if (!detail.empty()) std::printf("       %s\n", detail.c_str());
      ++failures;
    }
  }
  return failures;
}
