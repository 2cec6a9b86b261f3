// numerics.hpp - frequency grids and 1D search helpers
//
// Root bracketing and peak refinement are delegated to Boost.Math
// (TOMS 748 and Brent minimisation); this header only adapts them to the
// "scan a grid, then refine the best cell" pattern used by the spectra code.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "photon_gun/error.hpp"

namespace photon_gun {

/// Evenly spaced points on [lo, hi], both ends included.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t count)
{
    require(count >= 2, "grid needs at least two points");
    require(hi > lo, "grid upper bound must exceed lower bound");
    std::vector<double> grid(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

/// Adds points at `factor` times the local density within +-halfwidth of each
/// centre. The result stays strictly ascending.
inline std::vector<double> refine_grid(const std::vector<double>& grid,
                                       const std::vector<double>& centres,
                                       double halfwidth, std::size_t factor)
{
    if (grid.size() < 2 || centres.empty() || factor < 2) return grid;
    std::vector<double> out;
    out.reserve(grid.size() + centres.size() * factor * 4);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        out.push_back(grid[i]);
        const double a = grid[i];
        const double b = grid[i + 1];
        const bool near = std::any_of(centres.begin(), centres.end(), [&](double c) {
            return b >= c - halfwidth && a <= c + halfwidth;
        });
        if (!near) continue;
        for (std::size_t k = 1; k < factor; ++k)
            out.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(factor));
    }
    out.push_back(grid.back());
    return out;
}

inline bool strictly_ascending(const std::vector<double>& grid)
{
    return std::adjacent_find(grid.begin(), grid.end(),
                              [](double a, double b) { return !(a < b); }) == grid.end();
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

/// Maximum of f on [lo, hi]: uniform scan with `samples` points, then Brent
/// refinement inside the two cells adjacent to the best sample.
template <class F>
Extremum scan_and_refine_max(F&& f, double lo, double hi, std::size_t samples)
{
    const auto grid = uniform_grid(lo, hi, samples);
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    std::uintmax_t iterations = 200;
    const auto [x, neg] = boost::math::tools::brent_find_minima(
        [&](double x) { return -f(x); }, a, b, std::numeric_limits<double>::digits, iterations);
    if (-neg >= best_value) return {x, -neg};
    return {grid[best], best_value};
}

/// Root of f inside a sign-changing bracket [a, b] to ~machine precision.
template <class F>
double bracketed_root(F&& f, double a, double b)
{
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw NumericalError("root bracket does not change sign");
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iterations);
    return 0.5 * (lo + hi);
}

} // namespace photon_gun
