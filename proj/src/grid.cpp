#include "pmono/grid.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace pmono {

namespace {

unsigned worker_count() {
  if (const char* env = std::getenv("PMONO_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1;
}

}  // namespace

Eigen::Index GridAxis::count() const {
  if (!(step > 0.0)) throw std::invalid_argument("grid axis: step must be positive");
  if (hi < lo) throw std::invalid_argument("grid axis: hi must not be below lo");
  return static_cast<Eigen::Index>(std::floor((hi - lo) / step + 0.5)) + 1;
}

std::size_t GridSpec::cells() const {
  std::size_t total = 1;
  for (const GridAxis& ax : axes) {
    const std::size_t n = static_cast<std::size_t>(ax.count());
    if (n != 0 && total > static_cast<std::size_t>(-1) / n)
      throw std::overflow_error("grid: cell count overflows");
    total *= n;
  }
  return total;
}

Pair GridSpec::point(std::size_t flat, Eigen::Index d) const {
  if (axes.size() != static_cast<std::size_t>(2 * d))
    throw std::invalid_argument("grid: axis count must be twice the dimension");
  VectorXd coords(2 * d);
  for (Eigen::Index a = 2 * d - 1; a >= 0; --a) {
    const std::size_t n = static_cast<std::size_t>(axes[static_cast<std::size_t>(a)].count());
    coords(a) = axes[static_cast<std::size_t>(a)].at(static_cast<Eigen::Index>(flat % n));
    flat /= n;
  }
  return Pair(coords.head(d), coords.tail(d));
}

PolarGrid evaluate_grid(const GridSpec& spec, Eigen::Index d,
                        const std::function<double(const Pair&)>& statistic,
                        double tol, std::size_t cap) {
  if (d < 1) throw std::invalid_argument("grid: dimension must be positive");
  if (spec.axes.size() != static_cast<std::size_t>(2 * d))
    throw std::invalid_argument("grid: axis count must be twice the dimension");
  const std::size_t total = spec.cells();
  if (total > cap)
    throw CapExceeded("grid has " + std::to_string(total) + " cells, cap is " +
                      std::to_string(cap));

  PolarGrid out;
  out.spec = spec;
  out.dim = d;
  out.tol = tol;
  out.member.assign(total, 0);
  out.value.assign(total, 0.0);

  const unsigned workers = worker_count();
  if (workers <= 1 || total < 256) {
    for (std::size_t i = 0; i < total; ++i) {
      const double v = statistic(spec.point(i, d));
      out.value[i] = v;
      out.member[i] = v <= tol ? 1 : 0;
    }
    return out;
  }

  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    constexpr std::size_t chunk = 64;
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= total) return;
      const std::size_t end = std::min(begin + chunk, total);
      for (std::size_t i = begin; i < end; ++i) {
        const double v = statistic(spec.point(i, d));
        out.value[i] = v;
        out.member[i] = v <= tol ? 1 : 0;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
  return out;
}

}  // namespace pmono
