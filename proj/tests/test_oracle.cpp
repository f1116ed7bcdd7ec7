#include <doctest.h>

#include <cmath>
#include <vector>

#include "pmono/finite_op.hpp"
#include "pmono/generators.hpp"
#include "pmono/oracle.hpp"

using namespace pmono;

namespace {

Pair pair2(double x0, double x1, double s0, double s1) {
  VectorXd a(2), b(2);
  a << x0, x1;
  b << s0, s1;
  return Pair(a, b);
}

}  // namespace

TEST_CASE("scan and enumeration agree on random operators") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const FiniteOperator op = random_finite(seed, n, 2);
    const double tol = default_tol(op);
    for (int p = 1; p <= 3; ++p) {
      const Verdict fast = is_p_monotone(op, p, tol);
      const Verdict brute = oracle::brute_p_monotone(op, p, tol);
      CHECK(fast.decision == brute.decision);
      // Both report the extremal cyclic sum; only the search route differs.
      CHECK(fast.value == doctest::Approx(brute.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("dynamic program and chain enumeration agree on fitzpatrick values") {
  for (std::uint64_t seed = 60; seed <= 90; ++seed) {
    const FiniteOperator op = random_finite(seed, 4, 2);
    const FiniteOperator probe = random_finite(seed + 500, 3, 2);
    for (int p = 1; p <= 3; ++p)
      for (const Pair& q : probe.points()) {
        const double fast = fitzpatrick_p(op, p, q);
        const double brute = oracle::brute_fitzpatrick(op, p, q);
        CHECK(std::abs(fast - brute) <= 1e-12 * (1 + std::abs(brute)));
      }
  }
}

TEST_CASE("oracle failure certificates replay") {
  const FiniteOperator op = rotation_samples();
  const Verdict v = oracle::brute_p_monotone(op, 2, default_tol(op));
  REQUIRE(v.fails());
  CHECK(v.value == 2.0);
  std::vector<Pair> chain;
  for (std::size_t i : v.indices) chain.push_back(op.point(i));
  CHECK(cyclic_sum(chain) == 2.0);
}

TEST_CASE("enumeration respects its tuple cap") {
  const FiniteOperator op = random_finite(3, 6, 2);
  CHECK_THROWS_AS(oracle::brute_p_monotone(op, 3, 1e-9, 100), CapExceeded);
  CHECK_THROWS_AS(oracle::brute_fitzpatrick(op, 4, pair2(0, 0, 0, 0), 100), CapExceeded);
  // Within the cap the same call succeeds.
  CHECK(oracle::brute_p_monotone(op, 1, default_tol(op), 100).decision !=
        Decision::Inconclusive);
}

TEST_CASE("sampled linear monotonicity respects injected witnesses") {
  const LinearRelation rot = rotation_relation();
  const Verdict eigen = is_p_monotone_linear(rot, 2);
  REQUIRE(eigen.fails());

  SUBCASE("an injected violating tuple is found before any random draw") {
    const Verdict v =
        oracle::sample_linear_p_monotone(rot, 2, 0, eigen.tol, 1, {eigen.chain});
    REQUIRE(v.fails());
    CHECK_FALSE(v.sampled);
    CHECK(cyclic_sum(v.chain) > eigen.tol);
  }

  SUBCASE("pure sampling marks a clean pass as sampled") {
    const Verdict v = oracle::sample_linear_p_monotone(psd_example(), 2, 200, 1e-8, 1);
    CHECK(v.holds());
    CHECK(v.sampled);
  }

  SUBCASE("random draws are reproducible for a fixed seed") {
    const Verdict a = oracle::sample_linear_p_monotone(rot, 2, 300, eigen.tol, 77);
    const Verdict b = oracle::sample_linear_p_monotone(rot, 2, 300, eigen.tol, 77);
    CHECK(a.decision == b.decision);
    CHECK(a.value == b.value);
  }
}
