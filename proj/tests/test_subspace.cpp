#include <doctest.h>

#include <random>

#include "pmono/io.hpp"
#include "pmono/subspace.hpp"

using namespace pmono;

namespace {

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

Subspace random_subspace(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k) {
  std::normal_distribution<double> gauss;
  MatrixXd cols(n, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) cols(i, j) = gauss(rng);
  return Subspace::span(n, cols);
}

}  // namespace

TEST_CASE("span collapses dependent vectors") {
  MatrixXd cols(2, 2);
  cols.col(0) = vec2(1, 1);
  cols.col(1) = vec2(2, 2);
  const Subspace line = Subspace::span(2, cols);
  CHECK(line.dim() == 1);
  CHECK(line.contains(vec2(3, 3)));
  CHECK_FALSE(line.contains(vec2(1, -1)));
}

TEST_CASE("span rank matches the Gram determinant") {
  // Independent rank witness: {(1,1),(1,-1)} has Gram matrix [[2,0],[0,2]]
  // with determinant 4, so the span is the whole plane.
  MatrixXd cols(2, 2);
  cols.col(0) = vec2(1, 1);
  cols.col(1) = vec2(1, -1);
  const double gram_det = (cols.transpose() * cols).determinant();
  CHECK(gram_det == doctest::Approx(4.0));
  const Subspace plane = Subspace::span(2, cols);
  CHECK(plane.dim() == 2);
  CHECK(plane.contains(vec2(0.3, -7.1)));
}

TEST_CASE("constructor rejects a skewed basis") {
  MatrixXd basis(2, 2);
  basis.col(0) = vec2(1, 0);
  basis.col(1) = vec2(1, 1);
  CHECK_THROWS_AS(Subspace(2, basis), std::invalid_argument);
  CHECK_THROWS_AS(Subspace(3, MatrixXd::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("zero and full are complements") {
  const Subspace z = Subspace::zero(4);
  const Subspace f = Subspace::full(4);
  CHECK(z.dim() == 0);
  CHECK(f.dim() == 4);
  CHECK(equal(z.ortho_complement(), f));
  CHECK(equal(f.ortho_complement(), z));
  CHECK(z.contains(VectorXd::Zero(4)));
  CHECK_FALSE(z.contains(VectorXd::Ones(4)));
}

TEST_CASE("projector is idempotent and symmetric") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 5);
    const Eigen::Index k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n + 1));
    const Subspace s = random_subspace(rng, n, k);
    const MatrixXd p = s.projector();
    CHECK((p * p - p).cwiseAbs().maxCoeff() <= 10 * kMemberTol);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() <= 10 * kMemberTol);
    CHECK(std::abs(p.trace() - static_cast<double>(s.dim())) <= 10 * kMemberTol);
  }
}

TEST_CASE("double complement returns the original subspace") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 6);
    const Eigen::Index k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n + 1));
    const Subspace s = random_subspace(rng, n, k);
    CHECK(equal(s.ortho_complement().ortho_complement(), s));
    CHECK(s.dim() + s.ortho_complement().dim() == n);
  }
}

TEST_CASE("sum and intersection satisfy De Morgan and the dimension law") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 5);
    const Subspace a = random_subspace(rng, n, static_cast<Eigen::Index>(rng() % n + 1));
    const Subspace b = random_subspace(rng, n, static_cast<Eigen::Index>(rng() % n + 1));
    const Subspace s = sum(a, b);
    const Subspace i = intersect(a, b);
    CHECK(equal(s.ortho_complement(), intersect(a.ortho_complement(), b.ortho_complement())));
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());
    CHECK(s.contains(a.basis().col(0)));
    for (Eigen::Index j = 0; j < i.dim(); ++j) {
      CHECK(a.contains(i.basis().col(j)));
      CHECK(b.contains(i.basis().col(j)));
    }
  }
}

TEST_CASE("projection lands inside and kills the complement part") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 3;
    const Subspace s = random_subspace(rng, n, 2);
    VectorXd v(n);
    for (Eigen::Index j = 0; j < n; ++j) v(j) = gauss(rng);
    const VectorXd pv = s.project(v);
    CHECK(s.contains(pv));
    CHECK(std::abs(s.ortho_complement().project(pv).norm()) <= 1e-8);
  }
}

TEST_CASE("membership tolerance scales with the vector") {
  const Subspace line = Subspace::span(2, MatrixXd(vec2(1, 0)));
  // A fixed absolute offset is accepted once the vector is long enough for
  // the relative tolerance to cover it.
  VectorXd near = vec2(1e6, 1e-4);
  CHECK(line.contains(near));
  CHECK_FALSE(line.contains(vec2(1.0, 1e-4)));
}

TEST_CASE("subspace survives a JSON round trip") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 4);
    const Subspace s = random_subspace(rng, n, static_cast<Eigen::Index>(rng() % (n + 1)));
    const Subspace back = io::subspace_from_json(io::subspace_to_json(s));
    CHECK(back.ambient_dim() == s.ambient_dim());
    CHECK(back.dim() == s.dim());
    CHECK(equal(back, s));
  }
}
