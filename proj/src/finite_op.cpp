#include "pmono/finite_op.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rng_util.hpp"

namespace pmono {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_query(const FiniteOperator& op, const Pair& q) {
  if (q.x.size() != op.dim() || q.xstar.size() != op.dim())
    throw std::invalid_argument("query point has wrong dimension");
}

}  // namespace

FiniteOperator::FiniteOperator(Eigen::Index dim, std::vector<Pair> points)
    : dim_(dim), points_(std::move(points)) {
  if (dim_ < 1) throw std::invalid_argument("operator: dimension must be positive");
  for (const Pair& p : points_)
    if (p.x.size() != dim_ || p.xstar.size() != dim_)
      throw std::invalid_argument("operator: graph point has wrong dimension");
  const Eigen::Index n = static_cast<Eigen::Index>(points_.size());
  weights_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Pair& pi = points_[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j)
      weights_(i, j) = (points_[static_cast<std::size_t>(j)].x - pi.x).dot(pi.xstar);
  }
}

double cyclic_sum(std::span<const Pair> chain) {
  if (chain.empty()) throw std::invalid_argument("cyclic sum of an empty chain");
  const std::size_t n = chain.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Pair& cur = chain[i];
    const Pair& nxt = chain[(i + 1) % n];
    if (nxt.x.size() != cur.x.size())
      throw std::invalid_argument("cyclic sum: mixed dimensions");
    total += (nxt.x - cur.x).dot(cur.xstar);
  }
  return total;
}

double inverse_cyclic_sum(std::span<const Pair> chain) {
  if (chain.empty()) throw std::invalid_argument("cyclic sum of an empty chain");
  const std::size_t n = chain.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Pair& cur = chain[i];
    const Pair& nxt = chain[(i + 1) % n];
    if (nxt.x.size() != cur.x.size())
      throw std::invalid_argument("cyclic sum: mixed dimensions");
    total += (nxt.xstar - cur.xstar).dot(cur.x);
  }
  return total;
}

double default_tol(const FiniteOperator& op) {
  double scale = 0.0;
  if (op.size() > 0) scale = op.weights().cwiseAbs().maxCoeff();
  return 1e-9 * (1.0 + scale);
}

// The decision reduces to closed walks through the weight matrix: a
// (p+1)-tuple is a closed walk with p+1 edges, and a shorter closed walk
// pads to any longer length through zero-weight self loops, so the extremal
// tuple value is the best diagonal entry of the (p+1)-th max-plus power.
// Once every length up to size() came back nonpositive, no cycle is
// positive and longer walks cannot improve (they decompose into cycles), so
// the scan stops early. The walk length is capped at 4 * size() + 8: past
// it, cycles positive within tol but below it stop accumulating and the
// verdict rounds down to Holds.
Verdict is_p_monotone(const FiniteOperator& op, int p, double tol) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  Verdict out;
  out.tol = tol;
  const Eigen::Index n = static_cast<Eigen::Index>(op.size());
  if (n == 0) {
    out.decision = Decision::Holds;
    out.value = -kInf;
    return out;
  }
  const MatrixXd& w = op.weights();
  const std::int64_t want = static_cast<std::int64_t>(p) + 1;
  const std::int64_t exact = std::min<std::int64_t>(want, std::max<std::int64_t>(n, 2));
  const std::int64_t cap = std::min<std::int64_t>(want, 4 * static_cast<std::int64_t>(n) + 8);

  double best = 0.0;  // the all-equal tuple always realizes 0
  Eigen::Index best_i = -1;
  std::int64_t best_k = 1;
  MatrixXd cur = w;
  for (std::int64_t k = 2; k <= cap; ++k) {
    MatrixXd nxt(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        nxt(i, j) = (cur.row(i).transpose() + w.col(j)).maxCoeff();
    cur.swap(nxt);
    Eigen::Index di = 0;
    const double diag = cur.diagonal().maxCoeff(&di);
    if (diag > best) {
      best = diag;
      best_i = di;
      best_k = k;
    }
    if (k >= exact && best <= 0.0) break;
  }

  out.value = best;
  if (best <= tol) {
    out.decision = Decision::Holds;
    return out;
  }

  // Rebuild the violating closed walk from best_i with a one-source pass.
  out.decision = Decision::Fails;
  std::vector<VectorXd> level(static_cast<std::size_t>(best_k));
  std::vector<std::vector<Eigen::Index>> pred(static_cast<std::size_t>(best_k));
  level[0] = w.row(best_i).transpose();
  for (std::int64_t k = 2; k <= best_k; ++k) {
    VectorXd nxt(n);
    std::vector<Eigen::Index> pr(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index arg = 0;
      nxt(j) = (level[static_cast<std::size_t>(k - 2)] + w.col(j)).maxCoeff(&arg);
      pr[static_cast<std::size_t>(j)] = arg;
    }
    level[static_cast<std::size_t>(k - 1)] = std::move(nxt);
    pred[static_cast<std::size_t>(k - 1)] = std::move(pr);
  }
  std::vector<Eigen::Index> nodes;  // walk nodes after best_i, reversed
  Eigen::Index node = best_i;
  for (std::int64_t k = best_k; k >= 2; --k) {
    node = pred[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(node)];
    nodes.push_back(node);
  }
  std::reverse(nodes.begin(), nodes.end());
  out.indices.push_back(static_cast<std::size_t>(best_i));
  for (Eigen::Index m : nodes) out.indices.push_back(static_cast<std::size_t>(m));
  for (std::size_t idx : out.indices) out.chain.push_back(op.point(idx));
  return out;
}

Verdict is_cyclically_monotone(const FiniteOperator& op, double tol) {
  const std::int64_t n = static_cast<std::int64_t>(op.size());
  if (n == 0) {
    Verdict out;
    out.decision = Decision::Holds;
    out.value = -kInf;
    out.tol = tol;
    return out;
  }
  // Every simple cycle has length <= size(), so p = size() - 1 already
  // decides all orders at once.
  const int p = static_cast<int>(std::max<std::int64_t>(n - 1, 1));
  return is_p_monotone(op, p, tol);
}

namespace {

struct FitzCore {
  double sup_part = -kInf;          // supremum excluding the <q.x, q.xstar> term
  std::vector<std::size_t> chain;   // argmax chain indices when tracked
};

FitzCore fitz_core(const FiniteOperator& op, int p, const Pair& q, bool want_chain) {
  FitzCore out;
  check_query(op, q);
  const Eigen::Index n = static_cast<Eigen::Index>(op.size());
  if (n == 0) return out;
  const MatrixXd& w = op.weights();
  VectorXd entry(n), leave(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Pair& pj = op.point(static_cast<std::size_t>(j));
    entry(j) = (pj.x - q.x).dot(q.xstar);
    leave(j) = (q.x - pj.x).dot(pj.xstar);
  }
  const bool track = want_chain && static_cast<double>(p) * static_cast<double>(n) <= 5e7;
  std::vector<std::vector<Eigen::Index>> pred;
  VectorXd cur = entry;
  for (int k = 2; k <= p; ++k) {
    VectorXd nxt(n);
    std::vector<Eigen::Index> pr(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index arg = 0;
      nxt(j) = (cur + w.col(j)).maxCoeff(&arg);
      pr[static_cast<std::size_t>(j)] = arg;
    }
    cur.swap(nxt);
    if (track) pred.push_back(std::move(pr));
  }
  Eigen::Index last = 0;
  out.sup_part = (cur + leave).maxCoeff(&last);
  if (track) {
    std::vector<Eigen::Index> rev{last};
    for (auto it = pred.rbegin(); it != pred.rend(); ++it)
      rev.push_back((*it)[static_cast<std::size_t>(rev.back())]);
    out.chain.assign(rev.rbegin(), rev.rend());
  }
  return out;
}

}  // namespace

double fitzpatrick_p(const FiniteOperator& op, int p, const Pair& q) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  const double sup = fitz_core(op, p, q, false).sup_part;
  if (sup == -kInf) return -kInf;
  return sup + q.duality();
}

double fitzpatrick_inf(const FiniteOperator& op, const Pair& q, double tol) {
  if (op.size() == 0) return -kInf;
  check_query(op, q);
  if (is_cyclically_monotone(op, tol).fails()) return kInf;
  // With no positive cycle, excising the closed sub-walk of a repeated chain
  // entry never lowers the value, so the supremum is reached by p <= size().
  double best = -kInf;
  for (int p = 1; p <= static_cast<int>(op.size()); ++p)
    best = std::max(best, fitzpatrick_p(op, p, q));
  return best;
}

Verdict polar_membership(const FiniteOperator& op, int p, const Pair& q, double tol) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  Verdict out;
  out.tol = tol;
  FitzCore core = fitz_core(op, p, q, true);
  out.value = core.sup_part;
  if (core.sup_part <= tol) {
    out.decision = Decision::Holds;
    return out;
  }
  // Certificate: the cyclic sum of (q, chain...) equals the excess value.
  out.decision = Decision::Fails;
  out.indices = core.chain;
  for (std::size_t idx : core.chain) out.chain.push_back(op.point(idx));
  return out;
}

PolarGrid polar_region_grid(const FiniteOperator& op, int p, const GridSpec& spec,
                            double tol, std::size_t cap) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  return evaluate_grid(
      spec, op.dim(),
      [&op, p](const Pair& q) { return fitz_core(op, p, q, false).sup_part; }, tol, cap);
}

Verdict falsify_double_polar(const FiniteOperator& op, int p, const Pair& q,
                             std::int64_t budget, double tol, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  check_query(op, q);
  Verdict out;
  out.tol = tol;
  out.sampled = true;
  out.decision = Decision::Inconclusive;
  out.value = -kInf;
  if (budget <= 0) return out;

  const Eigen::Index d = op.dim();
  double radius = 1.0;
  radius = std::max({radius, q.x.lpNorm<Eigen::Infinity>(), q.xstar.lpNorm<Eigen::Infinity>()});
  for (const Pair& pt : op.points())
    radius = std::max({radius, pt.x.lpNorm<Eigen::Infinity>(), pt.xstar.lpNorm<Eigen::Infinity>()});
  const double R = 2.0 * radius;

  auto is_member = [&](const Pair& h) { return polar_membership(op, p, h, tol).holds(); };

  // Candidate pool of verified polar members: the operator's own points and
  // q, then a deterministic lattice over the box, then random fill.
  std::vector<Pair> pool;
  constexpr std::size_t kPoolCap = 4096;
  for (const Pair& pt : op.points())
    if (pool.size() < kPoolCap && is_member(pt)) pool.push_back(pt);
  if (pool.size() < kPoolCap && is_member(q)) pool.push_back(q);

  const Eigen::Index naxes = 2 * d;
  const double lattice_total = std::pow(7.0, static_cast<double>(naxes));
  if (lattice_total <= 200000.0) {
    const std::size_t total = static_cast<std::size_t>(std::llround(lattice_total));
    for (std::size_t flat = 0; flat < total && pool.size() < kPoolCap; ++flat) {
      VectorXd coords(naxes);
      std::size_t rem = flat;
      for (Eigen::Index a = naxes - 1; a >= 0; --a) {
        coords(a) = -R + static_cast<double>(rem % 7) * (R / 3.0);
        rem /= 7;
      }
      Pair h(coords.head(d), coords.tail(d));
      if (is_member(h)) pool.push_back(std::move(h));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; pool.size() < 64 && attempt < 20000; ++attempt) {
    VectorXd coords(naxes);
    for (Eigen::Index a = 0; a < naxes; ++a) coords(a) = detail::uniform(rng, -R, R);
    Pair h(coords.head(d), coords.tail(d));
    if (is_member(h)) pool.push_back(std::move(h));
  }
  if (pool.empty()) return out;

  // Search p-chains of pool members closed through q for a positive cyclic
  // sum. Systematic enumeration when it fits in the budget, random otherwise.
  const std::size_t m = pool.size();
  std::vector<Pair> closed(static_cast<std::size_t>(p) + 1);
  closed[0] = q;
  double best = -kInf;
  auto evaluate = [&](const std::vector<std::size_t>& tup) {
    for (int i = 0; i < p; ++i) closed[static_cast<std::size_t>(i) + 1] = pool[tup[static_cast<std::size_t>(i)]];
    return cyclic_sum(closed);
  };
  auto finish_fail = [&](double v) {
    out.decision = Decision::Fails;
    out.sampled = false;
    out.value = v;
    out.chain.assign(closed.begin() + 1, closed.end());
  };

  std::vector<std::size_t> tup(static_cast<std::size_t>(p), 0);
  const double systematic = std::pow(static_cast<double>(m), static_cast<double>(p));
  if (systematic <= static_cast<double>(budget)) {
    for (;;) {
      const double v = evaluate(tup);
      best = std::max(best, v);
      if (v > tol) {
        finish_fail(v);
        return out;
      }
      int pos = p - 1;
      while (pos >= 0 && ++tup[static_cast<std::size_t>(pos)] == m) {
        tup[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  } else {
    for (std::int64_t it = 0; it < budget; ++it) {
      for (int i = 0; i < p; ++i)
        tup[static_cast<std::size_t>(i)] = static_cast<std::size_t>(rng() % m);
      const double v = evaluate(tup);
      best = std::max(best, v);
      if (v > tol) {
        finish_fail(v);
        return out;
      }
    }
  }
  out.value = best;
  return out;
}

bool normal_cone_membership(const std::vector<VectorXd>& domain_points,
                            const VectorXd& x, const VectorXd& ystar, double tol) {
  if (domain_points.empty()) throw std::domain_error("normal cone: empty domain");
  const Eigen::Index d = x.size();
  if (ystar.size() != d) throw std::invalid_argument("normal cone: mixed dimensions");
  for (const VectorXd& v : domain_points)
    if (v.size() != d) throw std::invalid_argument("normal cone: mixed dimensions");

  const std::size_t m = domain_points.size();
  const std::size_t kmax = std::min<std::size_t>(m, static_cast<std::size_t>(d) + 1);
  double subsets = 0.0;
  {
    double binom = 1.0;
    for (std::size_t s = 1; s <= kmax; ++s) {
      binom = binom * static_cast<double>(m - s + 1) / static_cast<double>(s);
      subsets += binom;
    }
  }
  if (subsets > 2e5)
    throw CapExceeded("normal cone: too many vertex subsets to enumerate");

  // Caratheodory: x is in the hull iff some subset of at most d + 1 vertices
  // carries a convex combination equal to x.
  const double feas_tol = 1e-8 * (1.0 + x.norm());
  bool in_hull = false;
  for (std::size_t s = 1; s <= kmax && !in_hull; ++s) {
    std::vector<std::size_t> comb(s);
    for (std::size_t i = 0; i < s; ++i) comb[i] = i;
    for (;;) {
      MatrixXd a(d + 1, static_cast<Eigen::Index>(s));
      for (std::size_t i = 0; i < s; ++i) {
        a.col(static_cast<Eigen::Index>(i)).head(d) = domain_points[comb[i]];
        a(d, static_cast<Eigen::Index>(i)) = 1.0;
      }
      VectorXd b(d + 1);
      b.head(d) = x;
      b(d) = 1.0;
      Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
      VectorXd lambda = svd.solve(b);
      if ((a * lambda - b).norm() <= feas_tol && lambda.minCoeff() >= -1e-8) {
        in_hull = true;
        break;
      }
      std::size_t pos = s;
      while (pos > 0 && comb[pos - 1] == m - s + pos - 1) --pos;
      if (pos == 0) break;
      ++comb[pos - 1];
      for (std::size_t i = pos; i < s; ++i) comb[i] = comb[i - 1] + 1;
    }
  }
  if (!in_hull) throw std::domain_error("normal cone: point lies outside the domain hull");

  double reach = 0.0;
  for (const VectorXd& v : domain_points) reach = std::max(reach, (v - x).norm());
  const double scale = 1.0 + ystar.norm() * reach;
  for (const VectorXd& v : domain_points)
    if (ystar.dot(v - x) > tol * scale) return false;
  return true;
}

FiniteOperator translate(const FiniteOperator& op, const Pair& shift) {
  check_query(op, shift);
  std::vector<Pair> pts;
  pts.reserve(op.size());
  for (const Pair& pt : op.points()) pts.emplace_back(pt.x + shift.x, pt.xstar + shift.xstar);
  return FiniteOperator(op.dim(), std::move(pts));
}

FiniteOperator inverse(const FiniteOperator& op) {
  std::vector<Pair> pts;
  pts.reserve(op.size());
  for (const Pair& pt : op.points()) pts.emplace_back(pt.xstar, pt.x);
  return FiniteOperator(op.dim(), std::move(pts));
}

Pair ray_scale(const FiniteOperator& op, std::size_t index, double lambda) {
  if (index >= op.size()) throw std::out_of_range("ray scale: index out of range");
  if (lambda < 0.0) throw std::invalid_argument("ray scale: lambda must be nonnegative");
  const Pair& pt = op.point(index);
  return Pair(lambda * pt.x, lambda * pt.xstar);
}

}  // namespace pmono
