#include "pmono/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "rng_util.hpp"

namespace pmono::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Raw cyclic sum over an index tuple, recomputed from the points so the
// oracle shares no arithmetic with the engine's cached weight matrix.
double tuple_cyclic_sum(const FiniteOperator& op, const std::vector<std::size_t>& tup) {
  double total = 0.0;
  for (std::size_t i = 0; i < tup.size(); ++i) {
    const Pair& cur = op.point(tup[i]);
    const Pair& nxt = op.point(tup[(i + 1) % tup.size()]);
    total += (nxt.x - cur.x).dot(cur.xstar);
  }
  return total;
}

bool advance(std::vector<std::size_t>& tup, std::size_t base) {
  std::size_t pos = tup.size();
  while (pos > 0 && ++tup[pos - 1] == base) {
    tup[pos - 1] = 0;
    --pos;
  }
  return pos > 0;
}

}  // namespace

Verdict brute_p_monotone(const FiniteOperator& op, int p, double tol, std::size_t cap) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  Verdict out;
  out.tol = tol;
  const std::size_t n = op.size();
  if (n == 0) {
    out.decision = Decision::Holds;
    out.value = -kInf;
    return out;
  }
  const double total = std::pow(static_cast<double>(n), static_cast<double>(p) + 1.0);
  if (total > static_cast<double>(cap))
    throw CapExceeded("tuple enumeration needs " + std::to_string(total) + " tuples");

  std::vector<std::size_t> tup(static_cast<std::size_t>(p) + 1, 0);
  double best = -kInf;
  std::vector<std::size_t> arg;
  do {
    const double v = tuple_cyclic_sum(op, tup);
    if (v > best) {
      best = v;
      arg = tup;
    }
  } while (advance(tup, n));
  out.value = best;
  if (best <= tol) {
    out.decision = Decision::Holds;
    return out;
  }
  out.decision = Decision::Fails;
  out.indices = arg;
  for (std::size_t idx : arg) out.chain.push_back(op.point(idx));
  return out;
}

double brute_fitzpatrick(const FiniteOperator& op, int p, const Pair& q, std::size_t cap) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  const std::size_t n = op.size();
  if (n == 0) return -kInf;
  if (q.x.size() != op.dim() || q.xstar.size() != op.dim())
    throw std::invalid_argument("query point has wrong dimension");
  const double total = std::pow(static_cast<double>(n), static_cast<double>(p));
  if (total > static_cast<double>(cap))
    throw CapExceeded("chain enumeration needs " + std::to_string(total) + " chains");

  std::vector<std::size_t> tup(static_cast<std::size_t>(p), 0);
  double best = -kInf;
  do {
    double v = (op.point(tup.front()).x - q.x).dot(q.xstar);
    for (std::size_t i = 0; i + 1 < tup.size(); ++i) {
      const Pair& cur = op.point(tup[i]);
      v += (op.point(tup[i + 1]).x - cur.x).dot(cur.xstar);
    }
    const Pair& last = op.point(tup.back());
    v += (q.x - last.x).dot(last.xstar);
    best = std::max(best, v);
  } while (advance(tup, n));
  return best + q.duality();
}

Verdict sample_linear_p_monotone(const LinearRelation& rel, int p, int samples,
                                 double tol, std::uint64_t seed,
                                 const std::vector<std::vector<Pair>>& injected) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (samples < 0) throw std::invalid_argument("samples must be >= 0");
  Verdict out;
  out.tol = tol;
  out.sampled = true;

  auto check = [&](const std::vector<Pair>& tuple) -> bool {
    const double v = cyclic_sum(tuple);
    if (v <= tol) return false;
    out.decision = Decision::Fails;
    out.sampled = false;
    out.value = v;
    out.chain = tuple;
    return true;
  };

  for (const auto& tuple : injected)
    if (!tuple.empty() && check(tuple)) return out;

  const Eigen::Index k = rel.graph().dim();
  if (k == 0) {
    out.decision = Decision::Holds;
    out.value = 0.0;
    return out;
  }
  const Eigen::Index d = rel.dim();
  const MatrixXd bx = rel.graph().basis().topRows(d);
  const MatrixXd bs = rel.graph().basis().bottomRows(d);
  std::mt19937_64 rng(seed);
  double best = 0.0;
  std::vector<Pair> tuple(static_cast<std::size_t>(p) + 1);
  for (int it = 0; it < samples; ++it) {
    for (int i = 0; i <= p; ++i) {
      VectorXd c(k);
      for (Eigen::Index j = 0; j < k; ++j) c(j) = detail::gaussian(rng);
      tuple[static_cast<std::size_t>(i)] = Pair(bx * c, bs * c);
    }
    if (check(tuple)) return out;
    best = std::max(best, cyclic_sum(tuple));
  }
  out.decision = Decision::Holds;
  out.value = best;
  return out;
}

}  // namespace pmono::oracle
