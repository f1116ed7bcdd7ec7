#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "pmono/types.hpp"

namespace pmono {

/// Hard cap on the number of grid cells a single evaluation may touch.
inline constexpr std::size_t kGridCellCap = 10'000'000;

/// One axis of a rectangular grid: lo, lo+step, ..., up to hi inclusive
/// (within half a step).
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  Eigen::Index count() const;
  double at(Eigen::Index i) const { return lo + static_cast<double>(i) * step; }
};

/// Rectangular grid over R^d x R^d: the first d axes sweep the x coordinates,
/// the last d sweep the x* coordinates. Cells are enumerated row-major with
/// the last axis varying fastest.
struct GridSpec {
  std::vector<GridAxis> axes;

  std::size_t cells() const;
  Pair point(std::size_t flat, Eigen::Index d) const;
};

/// Dense evaluation of a scalar statistic over a grid. `member` marks cells
/// where the statistic is <= tol (so +inf never qualifies).
struct PolarGrid {
  GridSpec spec;
  Eigen::Index dim = 0;
  double tol = 0.0;
  std::vector<std::uint8_t> member;
  std::vector<double> value;
};

/// Evaluates `statistic` at every grid point. Honors the PMONO_THREADS
/// environment variable for the worker count (defaults to the hardware
/// concurrency). Throws CapExceeded when the grid has more than `cap` cells.
PolarGrid evaluate_grid(const GridSpec& spec, Eigen::Index d,
                        const std::function<double(const Pair&)>& statistic,
                        double tol, std::size_t cap = kGridCellCap);

}  // namespace pmono
