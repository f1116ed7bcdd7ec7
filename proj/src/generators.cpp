#include "pmono/generators.hpp"

#include <cmath>
#include <random>

#include "rng_util.hpp"

namespace pmono {

namespace {

VectorXd gaussian_vector(std::mt19937_64& rng, Eigen::Index d, double scale = 1.0) {
  VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = scale * detail::gaussian(rng);
  return v;
}

MatrixXd gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) m.col(j) = gaussian_vector(rng, rows);
  return m;
}

MatrixXd random_psd(std::mt19937_64& rng, Eigen::Index d) {
  const MatrixXd a = gaussian_matrix(rng, d, d);
  return a * a.transpose() / static_cast<double>(d);
}

MatrixXd random_skew(std::mt19937_64& rng, Eigen::Index d) {
  const MatrixXd a = gaussian_matrix(rng, d, d);
  return 0.5 * (a - a.transpose());
}

}  // namespace

FiniteOperator random_finite(std::uint64_t seed, int n, Eigen::Index d, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<Pair> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pts.emplace_back(gaussian_vector(rng, d, scale), gaussian_vector(rng, d, scale));
  return FiniteOperator(d, std::move(pts));
}

FiniteOperator random_finite_lattice(std::uint64_t seed, int n, Eigen::Index d) {
  std::mt19937_64 rng(seed);
  auto half_int = [&]() {
    return 0.5 * static_cast<double>(static_cast<std::int64_t>(rng() % 13) - 6);
  };
  std::vector<Pair> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    VectorXd x(d), xs(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      x(j) = half_int();
      xs(j) = half_int();
    }
    pts.emplace_back(std::move(x), std::move(xs));
  }
  return FiniteOperator(d, std::move(pts));
}

FiniteOperator random_gradient_samples(std::uint64_t seed, int n, Eigen::Index d) {
  std::mt19937_64 rng(seed);
  const MatrixXd q = random_psd(rng, d);
  std::vector<Pair> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    VectorXd x = gaussian_vector(rng, d);
    pts.emplace_back(x, q * x);
  }
  return FiniteOperator(d, std::move(pts));
}

LinearRelation random_linear_span(std::uint64_t seed, Eigen::Index d, Eigen::Index k) {
  std::mt19937_64 rng(seed);
  return LinearRelation(d, Subspace::span(2 * d, gaussian_matrix(rng, 2 * d, k)));
}

LinearRelation random_linear_flavored(std::uint64_t seed, Eigen::Index d,
                                      LinearFlavor flavor) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  switch (flavor) {
    case LinearFlavor::Arbitrary: {
      const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(2 * d));
      return LinearRelation(d, Subspace::span(2 * d, gaussian_matrix(rng, 2 * d, k)));
    }
    case LinearFlavor::Psd:
      return LinearRelation::from_matrix(random_psd(rng, d));
    case LinearFlavor::PsdSkew:
      return LinearRelation::from_matrix(random_psd(rng, d) + random_skew(rng, d));
    case LinearFlavor::RestrictedPsd:
    case LinearFlavor::RestrictedAugmented: {
      const MatrixXd a = random_psd(rng, d);
      const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(d));
      const MatrixXd dirs = gaussian_matrix(rng, d, m);
      MatrixXd cols(2 * d, m);
      cols.topRows(d) = dirs;
      cols.bottomRows(d) = a * dirs;
      LinearRelation base(d, Subspace::span(2 * d, cols));
      if (flavor == LinearFlavor::RestrictedPsd) return base;
      // Augment with a slice of the vertical space orthogonal to the domain,
      // keeping the relation p-monotone but possibly still non-maximal.
      const Subspace domperp = base.domain().ortho_complement();
      if (domperp.dim() == 0) return base;
      MatrixXd lift(2 * d, 1);
      lift.setZero();
      lift.bottomRows(d).col(0) = domperp.basis().col(0);
      return LinearRelation(d, sum(base.graph(), Subspace::span(2 * d, lift)));
    }
    case LinearFlavor::Vertical: {
      const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(d));
      MatrixXd cols(2 * d, m);
      cols.setZero();
      cols.bottomRows(d) = gaussian_matrix(rng, d, m);
      return LinearRelation(d, Subspace::span(2 * d, cols));
    }
  }
  throw std::logic_error("unknown flavor");
}

LinearRelation random_linear_mixed(std::uint64_t seed, Eigen::Index d) {
  static constexpr LinearFlavor kAll[] = {
      LinearFlavor::Arbitrary,  LinearFlavor::Psd,
      LinearFlavor::PsdSkew,    LinearFlavor::RestrictedPsd,
      LinearFlavor::RestrictedAugmented, LinearFlavor::Vertical};
  return random_linear_flavored(seed, d, kAll[seed % 6]);
}

FiniteOperator singleton_origin() {
  VectorXd zero = VectorXd::Zero(1);
  return FiniteOperator(1, {Pair(zero, zero)});
}

FiniteOperator rotation_samples() {
  auto vec = [](double a, double b) {
    VectorXd v(2);
    v << a, b;
    return v;
  };
  return FiniteOperator(2, {Pair(vec(1, 0), vec(0, 1)), Pair(vec(0, 1), vec(-1, 0)),
                            Pair(vec(-1, 0), vec(0, -1))});
}

FiniteOperator cubic_samples() {
  auto pt = [](double x, double y) {
    VectorXd a(1), b(1);
    a << x;
    b << y;
    return Pair(a, b);
  };
  return FiniteOperator(1, {pt(-1, -1), pt(0, 0), pt(1, 1), pt(2, 8)});
}

LinearRelation rotation_relation() {
  MatrixXd j(2, 2);
  j << 0, -1, 1, 0;
  return LinearRelation::from_matrix(j);
}

LinearRelation psd_example() {
  MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  return LinearRelation::from_matrix(a);
}

LinearRelation zero_example() { return LinearRelation::zero_relation(1); }

}  // namespace pmono
