#include "pmono/product_op.hpp"

namespace pmono {

ProductRelation build_product(const LinearRelation& rel, int p, ProductSign sign,
                              double tol_rank) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  const Eigen::Index d = rel.dim();
  const Eigen::Index k = rel.graph().dim();
  const Subspace at_zero = rel.value_at_zero(tol_rank);
  const Eigen::Index z = at_zero.dim();
  const Eigen::Index blocks = static_cast<Eigen::Index>(p) + 1;
  const Eigen::Index bigd = blocks * d;

  const MatrixXd bx = rel.graph().basis().topRows(d);
  const MatrixXd bs = rel.graph().basis().bottomRows(d);

  // nbinv(i) is the block whose neighbor is i: setting c_i affects its own
  // star block positively and the star block of nbinv(i) negatively.
  auto nbinv = [&](Eigen::Index i) {
    return sign == ProductSign::Plus ? (i + blocks - 1) % blocks : (i + 1) % blocks;
  };

  MatrixXd cols(2 * bigd, blocks * k + blocks * z);
  cols.setZero();
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < blocks; ++i)
    for (Eigen::Index j = 0; j < k; ++j, ++c) {
      cols.col(c).segment(i * d, d) = bx.col(j);
      cols.col(c).segment(bigd + i * d, d) += bs.col(j);
      cols.col(c).segment(bigd + nbinv(i) * d, d) -= bs.col(j);
    }
  for (Eigen::Index i = 0; i < blocks; ++i)
    for (Eigen::Index j = 0; j < z; ++j, ++c)
      cols.col(c).segment(bigd + i * d, d) = at_zero.basis().col(j);

  ProductRelation out{p, d, sign,
                      LinearRelation(bigd, Subspace::span(2 * bigd, cols, tol_rank))};
  return out;
}

TransferReport verify_transfer(const LinearRelation& rel, int p,
                               std::optional<double> tol) {
  TransferReport out;
  out.base = is_p_monotone_linear(rel, p, tol);
  out.plus = is_monotone_linear(build_product(rel, p, ProductSign::Plus).relation, tol);
  out.minus = is_monotone_linear(build_product(rel, p, ProductSign::Minus).relation, tol);
  out.pass = out.base.decision == out.plus.decision &&
             out.base.decision == out.minus.decision;
  return out;
}

MaxtpReport verify_maxtp(const LinearRelation& rel, int p, std::optional<double> tol) {
  MaxtpReport out;
  out.base = is_maximal_p_monotone_linear(rel, p, tol);
  out.plus = is_maximal_p_monotone_linear(
      build_product(rel, p, ProductSign::Plus).relation, 1, tol);
  out.minus = is_maximal_p_monotone_linear(
      build_product(rel, p, ProductSign::Minus).relation, 1, tol);
  out.pass = out.base.decision == out.plus.decision &&
             out.base.decision == out.minus.decision;
  return out;
}

namespace {

bool graph_included(const LinearRelation& inner, const LinearRelation& outer, double tol) {
  for (Eigen::Index j = 0; j < inner.graph().dim(); ++j)
    if (!outer.graph().contains(inner.graph().basis().col(j), tol)) return false;
  return true;
}

}  // namespace

AdjointInclusionReport verify_adjoint_inclusion(const LinearRelation& rel, int p,
                                                double tol) {
  AdjointInclusionReport out;
  const LinearRelation star = adjoint(rel);
  const LinearRelation star_plus = build_product(star, p, ProductSign::Plus).relation;
  const LinearRelation star_minus = build_product(star, p, ProductSign::Minus).relation;
  const LinearRelation adj_minus = adjoint(build_product(rel, p, ProductSign::Minus).relation);
  const LinearRelation adj_plus = adjoint(build_product(rel, p, ProductSign::Plus).relation);
  out.plus_in_minus_adjoint = graph_included(star_plus, adj_minus, tol);
  out.minus_in_plus_adjoint = graph_included(star_minus, adj_plus, tol);
  out.dim_star_plus = star_plus.graph().dim();
  out.dim_adjoint_minus = adj_minus.graph().dim();
  out.dim_star_minus = star_minus.graph().dim();
  out.dim_adjoint_plus = adj_plus.graph().dim();
  out.pass = out.plus_in_minus_adjoint && out.minus_in_plus_adjoint;
  return out;
}

BrezisBrowderReport brezis_browder_verify(const LinearRelation& rel, int p,
                                          std::optional<double> tol) {
  BrezisBrowderReport out;
  out.applicable = is_p_monotone_linear(rel, p, tol).holds();
  const LinearRelation star = adjoint(rel);
  out.base_maximal = is_maximal_p_monotone_linear(rel, p, tol);
  out.adjoint_maximal = is_maximal_p_monotone_linear(star, p, tol);
  out.adjoint_pmonotone = is_p_monotone_linear(star, p, tol);
  out.agree = out.base_maximal.decision == out.adjoint_maximal.decision &&
              out.base_maximal.decision == out.adjoint_pmonotone.decision;
  out.pass = !out.applicable || out.agree;
  return out;
}

}  // namespace pmono
