#include "pmono/linear_rel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rng_util.hpp"

namespace pmono {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double resolve_tol(const std::optional<double>& tol, double form_norm) {
  return tol ? *tol : 1e-8 * (1.0 + form_norm);
}

VectorXd stack_pair(const Pair& q) {
  VectorXd v(q.x.size() + q.xstar.size());
  v.head(q.x.size()) = q.x;
  v.tail(q.xstar.size()) = q.xstar;
  return v;
}

}  // namespace

LinearRelation::LinearRelation(Eigen::Index dim, Subspace graph)
    : dim_(dim), graph_(std::move(graph)) {
  if (dim_ < 1) throw std::invalid_argument("relation: dimension must be positive");
  if (graph_.ambient_dim() != 2 * dim_)
    throw std::invalid_argument("relation: graph must live in R^(2 dim)");
}

LinearRelation LinearRelation::zero_relation(Eigen::Index dim) {
  return LinearRelation(dim, Subspace::zero(2 * dim));
}

LinearRelation LinearRelation::from_matrix(const MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument("relation: matrix must be square and nonempty");
  const Eigen::Index d = a.rows();
  MatrixXd cols(2 * d, d);
  cols.topRows(d) = MatrixXd::Identity(d, d);
  cols.bottomRows(d) = a;
  return LinearRelation(d, Subspace::span(2 * d, cols));
}

LinearRelation LinearRelation::from_pairs(Eigen::Index dim, const std::vector<Pair>& pairs,
                                          double tol_rank) {
  MatrixXd cols(2 * dim, static_cast<Eigen::Index>(pairs.size()));
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const Pair& pr = pairs[static_cast<std::size_t>(j)];
    if (pr.x.size() != dim || pr.xstar.size() != dim)
      throw std::invalid_argument("relation: graph point has wrong dimension");
    cols.col(j) = stack_pair(pr);
  }
  return LinearRelation(dim, Subspace::span(2 * dim, cols, tol_rank));
}

Subspace LinearRelation::domain(double tol_rank) const {
  if (graph_.dim() == 0) return Subspace::zero(dim_);
  return Subspace::span(dim_, MatrixXd(graph_.basis().topRows(dim_)), tol_rank);
}

Subspace LinearRelation::value_at_zero(double tol_rank) const {
  MatrixXd vert(2 * dim_, dim_);
  vert.setZero();
  vert.bottomRows(dim_) = MatrixXd::Identity(dim_, dim_);
  const Subspace inter = intersect(graph_, Subspace(2 * dim_, vert), tol_rank);
  if (inter.dim() == 0) return Subspace::zero(dim_);
  return Subspace::span(dim_, MatrixXd(inter.basis().bottomRows(dim_)), tol_rank);
}

LinearRelation LinearRelation::inverse() const {
  MatrixXd swapped(2 * dim_, graph_.dim());
  swapped.topRows(dim_) = graph_.basis().bottomRows(dim_);
  swapped.bottomRows(dim_) = graph_.basis().topRows(dim_);
  return LinearRelation(dim_, Subspace(2 * dim_, swapped));
}

bool LinearRelation::contains(const Pair& q, double tol) const {
  if (q.x.size() != dim_ || q.xstar.size() != dim_)
    throw std::invalid_argument("relation: query point has wrong dimension");
  return graph_.contains(stack_pair(q), tol);
}

Pair LinearRelation::basis_pair(Eigen::Index j) const {
  if (j < 0 || j >= graph_.dim()) throw std::out_of_range("relation: basis index");
  return Pair(graph_.basis().col(j).head(dim_), graph_.basis().col(j).tail(dim_));
}

Verdict is_monotone_linear(const LinearRelation& rel, std::optional<double> tol) {
  Verdict out;
  const Eigen::Index k = rel.graph().dim();
  if (k == 0) {
    out.decision = Decision::Holds;
    out.tol = resolve_tol(tol, 0.0);
    return out;
  }
  const MatrixXd bx = rel.graph().basis().topRows(rel.dim());
  const MatrixXd bs = rel.graph().basis().bottomRows(rel.dim());
  const MatrixXd g = bx.transpose() * bs;
  const MatrixXd m = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(k - 1);
  out.tol = resolve_tol(tol, std::max(std::abs(lo), std::abs(hi)));
  out.value = lo;
  if (lo >= -out.tol) {
    out.decision = Decision::Holds;
    return out;
  }
  out.decision = Decision::Fails;
  const VectorXd w = es.eigenvectors().col(0);
  out.chain.emplace_back(bx * w, bs * w);
  return out;
}

Verdict is_p_monotone_linear(const LinearRelation& rel, int p, std::optional<double> tol) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  Verdict out;
  const Eigen::Index k = rel.graph().dim();
  if (k == 0) {
    out.decision = Decision::Holds;
    out.tol = resolve_tol(tol, 0.0);
    return out;
  }
  const Eigen::Index d = rel.dim();
  const MatrixXd bx = rel.graph().basis().topRows(d);
  const MatrixXd bs = rel.graph().basis().bottomRows(d);
  const MatrixXd g = bx.transpose() * bs;

  // Cyclic sum over a (p+1)-tuple of graph points, as a quadratic form in the
  // stacked coefficients (c_0, ..., c_p): each term <x_{i+1} - x_i, x_i*>
  // contributes G to block (i+1, i) and -G to block (i, i), cyclically.
  const Eigen::Index n = (static_cast<Eigen::Index>(p) + 1) * k;
  MatrixXd form = MatrixXd::Zero(n, n);
  for (int i = 0; i <= p; ++i) {
    const Eigen::Index nxt = ((i + 1) % (p + 1)) * k;
    form.block(nxt, i * k, k, k) += g;
    form.block(i * k, i * k, k, k) -= g;
  }
  const MatrixXd m = 0.5 * (form + form.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(n - 1);
  out.tol = resolve_tol(tol, std::max(std::abs(lo), std::abs(hi)));
  out.value = hi;
  if (hi <= out.tol) {
    out.decision = Decision::Holds;
    return out;
  }
  out.decision = Decision::Fails;
  const VectorXd w = es.eigenvectors().col(n - 1);
  for (int i = 0; i <= p; ++i) {
    const VectorXd c = w.segment(i * k, k);
    out.chain.emplace_back(bx * c, bs * c);
  }
  return out;
}

Verdict polar_membership_linear(const LinearRelation& rel, int p, const Pair& q,
                                std::optional<double> tol, QuadReport* report) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (q.x.size() != rel.dim() || q.xstar.size() != rel.dim())
    throw std::invalid_argument("relation: query point has wrong dimension");
  Verdict out;
  const Eigen::Index k = rel.graph().dim();
  const double c0 = -q.duality();
  if (k == 0) {
    // Every chain collapses to the zero pair; the supremum is the constant.
    out.tol = resolve_tol(tol, 0.0);
    out.value = c0;
    out.decision = c0 <= out.tol ? Decision::Holds : Decision::Fails;
    if (report) {
      report->max_eigenvalue = 0.0;
      report->sup_value = c0;
      report->witness = VectorXd();
    }
    return out;
  }

  const Eigen::Index d = rel.dim();
  const MatrixXd bx = rel.graph().basis().topRows(d);
  const MatrixXd bs = rel.graph().basis().bottomRows(d);
  const MatrixXd g2 = bx.transpose() * bs;

  // Chain objective in stacked coefficients w = (c_1, ..., c_p):
  //   <x_1 - q.x, q.x*> + sum_i <x_{i+1} - x_i, x_i*> + <q.x - x_p, x_p*>
  // = w' H w + g' w + c0.
  const Eigen::Index n = static_cast<Eigen::Index>(p) * k;
  MatrixXd h = MatrixXd::Zero(n, n);
  VectorXd lin = VectorXd::Zero(n);
  lin.segment(0, k) += bx.transpose() * q.xstar;
  lin.segment((static_cast<Eigen::Index>(p) - 1) * k, k) += bs.transpose() * q.x;
  for (int i = 1; i <= p - 1; ++i) {
    h.block(i * k, (i - 1) * k, k, k) += g2;
    h.block((i - 1) * k, (i - 1) * k, k, k) -= g2;
  }
  h.block((static_cast<Eigen::Index>(p) - 1) * k, (static_cast<Eigen::Index>(p) - 1) * k, k, k) -= g2;

  const MatrixXd m = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  const VectorXd& ev = es.eigenvalues();
  const double form_norm = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  out.tol = resolve_tol(tol, form_norm);
  if (report) {
    report->max_eigenvalue = ev(n - 1);
    report->witness = es.eigenvectors().col(n - 1);
  }

  auto fail_unbounded = [&](const VectorXd& w) {
    out.decision = Decision::Fails;
    out.value = kInf;
    if (report) report->sup_value = kInf;
    for (int i = 0; i < p; ++i) {
      const VectorXd c = w.segment(i * k, k);
      out.chain.emplace_back(bx * c, bs * c);
    }
  };

  if (ev(n - 1) > out.tol) {
    fail_unbounded(es.eigenvectors().col(n - 1));
    return out;
  }

  // Bounded quadratic part. Directions with eigenvalue within the cutoff of
  // zero act as kernel: a linear term along them makes the sup infinite. The
  // kernel-component test carries an absolute floor scaled to the query so
  // that a linear term that is zero up to rounding (e.g. a vertical query
  // against a basis whose x block spans the domain) stays bounded.
  const double cutoff = 1e-10 * std::max(form_norm, 1.0);
  const VectorXd ghat = es.eigenvectors().transpose() * lin;
  const double gnorm = lin.norm();
  const double gfloor = 1e-12 * (1.0 + q.x.norm() + q.xstar.norm());
  double sup = c0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev(i) < -cutoff) {
      sup += -(ghat(i) * ghat(i)) / (4.0 * ev(i));
    } else if (std::abs(ghat(i)) > std::max(1e-8 * gnorm, gfloor)) {
      fail_unbounded(es.eigenvectors().col(i));
      return out;
    }
  }
  out.value = sup;
  if (report) report->sup_value = sup;
  if (sup <= out.tol) {
    out.decision = Decision::Holds;
    return out;
  }
  out.decision = Decision::Fails;
  VectorXd w = VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (ev(i) < -cutoff) w += (-ghat(i) / (2.0 * ev(i))) * es.eigenvectors().col(i);
  for (int i = 0; i < p; ++i) {
    const VectorXd c = w.segment(i * k, k);
    out.chain.emplace_back(bx * c, bs * c);
  }
  return out;
}

LinearRelation maximalize(const LinearRelation& rel, double tol_rank) {
  const Subspace domperp = rel.domain(tol_rank).ortho_complement();
  if (domperp.dim() == 0) return rel;
  MatrixXd lift(2 * rel.dim(), domperp.dim());
  lift.setZero();
  lift.bottomRows(rel.dim()) = domperp.basis();
  LinearRelation ext(rel.dim(), sum(rel.graph(), Subspace(2 * rel.dim(), lift), tol_rank));
  // Adding vertical directions never moves the domain, and every added
  // direction lands in the value at zero.
  if (!equal(ext.domain(tol_rank), rel.domain(tol_rank)))
    throw std::logic_error("maximalize: domain changed");
  const Subspace at_zero = ext.value_at_zero(tol_rank);
  for (Eigen::Index j = 0; j < domperp.dim(); ++j)
    if (!at_zero.contains(domperp.basis().col(j)))
      throw std::logic_error("maximalize: vertical direction lost");
  return ext;
}

Verdict is_maximal_p_monotone_linear(const LinearRelation& rel, int p,
                                     std::optional<double> tol) {
  Verdict pm = is_p_monotone_linear(rel, p, tol);
  if (!pm.holds()) return pm;
  const Subspace at_zero = rel.value_at_zero();
  const Subspace domperp = rel.domain().ortho_complement();
  if (equal(at_zero, domperp)) {
    pm.decision = Decision::Holds;
    return pm;
  }
  Verdict out;
  out.tol = pm.tol;
  out.decision = Decision::Fails;
  // For a p-monotone relation the value at zero sits inside dom^perp, so a
  // discrepancy always shows as a dom^perp direction missing from T(0).
  for (Eigen::Index j = 0; j < domperp.dim(); ++j) {
    const VectorXd v = domperp.basis().col(j);
    if (!at_zero.contains(v)) {
      out.chain.emplace_back(VectorXd::Zero(rel.dim()), v);
      out.value = (v - at_zero.project(v)).norm();
      return out;
    }
  }
  out.value = (at_zero.projector() - domperp.projector()).cwiseAbs().maxCoeff();
  return out;
}

Verdict is_premaximal_linear(const LinearRelation& rel, int p, int budget,
                             std::uint64_t seed, std::optional<double> tol) {
  Verdict pm = is_p_monotone_linear(rel, p, tol);
  if (!pm.holds())
    throw std::invalid_argument("pre-maximality requires a p-monotone relation");
  Verdict out;
  out.tol = pm.tol;
  const LinearRelation ext = maximalize(rel);
  const Subspace comp = ext.graph().ortho_complement();
  if (comp.dim() == 0) {
    // No direction outside the maximal extension exists at all.
    out.decision = Decision::Holds;
    return out;
  }

  const Eigen::Index d = rel.dim();
  auto probe = [&](const VectorXd& v) -> bool {
    // A polar member outside the maximalized graph certifies a second
    // maximal extension.
    Pair q(v.head(d), v.tail(d));
    if (!polar_membership_linear(rel, p, q, tol).holds()) return false;
    if (ext.graph().contains(v)) return false;
    out.decision = Decision::Fails;
    out.chain.push_back(std::move(q));
    out.value = v.norm();
    return true;
  };

  for (Eigen::Index j = 0; j < comp.dim(); ++j)
    for (double t : {1.0, -1.0, 2.5, -2.5})
      if (probe(t * comp.basis().col(j))) return out;

  std::mt19937_64 rng(seed);
  for (int it = 0; it < budget; ++it) {
    VectorXd gc(ext.graph().dim());
    for (Eigen::Index i = 0; i < gc.size(); ++i) gc(i) = detail::gaussian(rng);
    VectorXd cc(comp.dim());
    for (Eigen::Index i = 0; i < cc.size(); ++i) cc(i) = detail::gaussian(rng);
    VectorXd off = comp.basis() * cc;
    if (off.norm() < 1e-9) continue;
    off *= (0.5 + 2.0 * detail::unit_uniform(rng)) / off.norm();
    if (probe(ext.graph().basis() * gc + off)) return out;
  }
  out.decision = Decision::Holds;
  out.sampled = true;
  return out;
}

LinearRelation adjoint(const LinearRelation& rel) {
  const Eigen::Index d = rel.dim();
  const Eigen::Index k = rel.graph().dim();
  MatrixXd swapped(2 * d, k);
  swapped.topRows(d) = rel.graph().basis().bottomRows(d);
  swapped.bottomRows(d) = -rel.graph().basis().topRows(d);
  // (b, b*) -> (b*, -b) preserves orthonormality, so no re-factorization.
  LinearRelation adj(d, Subspace(2 * d, swapped).ortho_complement());
  for (Eigen::Index i = 0; i < adj.graph().dim(); ++i) {
    const Pair a = adj.basis_pair(i);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Pair b = rel.basis_pair(j);
      if (std::abs(a.x.dot(b.xstar) - b.x.dot(a.xstar)) > 1e-7)
        throw std::logic_error("adjoint: defining identity violated");
    }
  }
  return adj;
}

Verdict affine_hull_check(const AffineRelation& aff, int p, int samples,
                          std::uint64_t seed, std::optional<double> tol) {
  const LinearRelation& dir = aff.direction;
  if (aff.base.x.size() != dir.dim() || aff.base.xstar.size() != dir.dim())
    throw std::invalid_argument("affine relation: base has wrong dimension");
  Verdict pm = is_p_monotone_linear(dir, p, tol);
  if (!pm.holds())
    throw std::invalid_argument("affine hull check requires a p-monotone direction");
  Verdict out;
  out.tol = pm.tol;
  out.sampled = true;

  const Eigen::Index d = dir.dim();
  const Eigen::Index k = dir.graph().dim();
  auto probe = [&](const VectorXd& coeff) -> bool {
    // Hull point base + B t; membership is translation-invariant, so test
    // the displaced part against the direction's polar. Sign-symmetric
    // coefficients also cover the negated graph when base is the origin.
    const VectorXd v = dir.graph().basis() * coeff;
    Pair q(v.head(d), v.tail(d));
    Verdict member = polar_membership_linear(dir, p, q, tol);
    if (member.holds()) return false;
    out.decision = Decision::Fails;
    out.value = member.value;
    out.chain.emplace_back(aff.base.x + q.x, aff.base.xstar + q.xstar);
    return true;
  };

  if (k == 0) {
    out.decision = Decision::Holds;
    return out;
  }
  if (std::pow(3.0, static_cast<double>(k)) <= 243.0) {
    std::vector<int> digits(static_cast<std::size_t>(k), 0);
    for (;;) {
      VectorXd coeff(k);
      for (Eigen::Index i = 0; i < k; ++i)
        coeff(i) = static_cast<double>(digits[static_cast<std::size_t>(i)] - 1);
      if (coeff.cwiseAbs().maxCoeff() > 0.0 && probe(coeff)) return out;
      Eigen::Index pos = k - 1;
      while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == 3) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  std::mt19937_64 rng(seed);
  for (int it = 0; it < samples; ++it) {
    VectorXd coeff(k);
    for (Eigen::Index i = 0; i < k; ++i)
      coeff(i) = detail::gaussian(rng) * (1.0 + 2.0 * detail::unit_uniform(rng));
    if (probe(coeff)) return out;
  }
  out.decision = Decision::Holds;
  return out;
}

}  // namespace pmono
