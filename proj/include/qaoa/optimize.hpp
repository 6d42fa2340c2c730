// Derivative-free minimization: Nelder-Mead simplex with box
// bounds, seeded multi-start, and exhaustive grid search for cross-checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace qaoa {

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
};

struct OptimizerOptions {
    enum class Algorithm { nelder_mead, grid };
    Algorithm algorithm = Algorithm::nelder_mead;
    std::size_t max_evals = 2000;
    double f_tol = 1e-9;
    double x_tol = 1e-9;
    int n_starts = 1;
    std::uint64_t seed = 1;
    std::vector<Bounds> bounds;
    std::size_t grid_resolution = 33;  // lattice points per axis when algorithm == grid
};

struct OptResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t evals = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

namespace detail {

inline void check_bounds(const std::vector<Bounds>& bounds, std::size_t dim) {
    if (bounds.size() != dim)
        throw std::invalid_argument("bounds dimension " + std::to_string(bounds.size()) +
                                    " does not match problem dimension " + std::to_string(dim));
    for (const auto& b : bounds)
        if (!(b.lo < b.hi)) throw std::invalid_argument("bounds need lo < hi");
}

inline void clamp_to(std::vector<double>& x, const std::vector<Bounds>& bounds) {
    for (std::size_t d = 0; d < x.size(); ++d)
        x[d] = std::clamp(x[d], bounds[d].lo, bounds[d].hi);
}

inline std::string point_string(const std::vector<double>& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t d = 0; d < x.size(); ++d) os << (d ? ", " : "") << x[d];
    os << ")";
    return os.str();
}

}  // namespace detail

/// Nelder-Mead with reflection 1, expansion 2, contraction 0.5, shrink 0.5.
/// Every evaluated point is clamped into bounds first. Terminates when the
/// simplex f spread falls under f_tol, its coordinate diameter under x_tol,
/// or the evaluation budget runs out. A non-finite objective value aborts.
inline OptResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const OptimizerOptions& opts) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw std::invalid_argument("empty start point");
    if (opts.max_evals < 1) throw std::invalid_argument("max_evals must be >= 1");
    if (!(opts.f_tol > 0.0) || !(opts.x_tol > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    detail::check_bounds(opts.bounds, dim);
    for (std::size_t d = 0; d < dim; ++d)
        if (x0[d] < opts.bounds[d].lo || x0[d] > opts.bounds[d].hi)
            throw std::invalid_argument("start point outside bounds at dimension " +
                                        std::to_string(d));

    std::size_t evals = 0;
    const auto eval = [&](std::vector<double>& x) {
        detail::clamp_to(x, opts.bounds);
        const double v = f(x);
        ++evals;
        if (!std::isfinite(v))
            throw std::runtime_error("objective returned non-finite value at " +
                                     detail::point_string(x));
        return v;
    };

    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back({x0, eval(x0)});
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<double> x = x0;
        const double span = opts.bounds[d].hi - opts.bounds[d].lo;
        double step = 0.1 * span;
        if (x[d] + step > opts.bounds[d].hi) step = -step;
        x[d] += step;
        simplex.push_back({x, eval(x)});
    }

    const auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    order();

    while (evals < opts.max_evals) {
        const double spread = simplex.back().f - simplex.front().f;
        double diameter = 0.0;
        for (std::size_t v = 1; v <= dim; ++v)
            for (std::size_t d = 0; d < dim; ++d)
                diameter = std::max(diameter,
                                    std::abs(simplex[v].x[d] - simplex[0].x[d]));
        if (spread <= opts.f_tol || diameter <= opts.x_tol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[v].x[d];
        for (double& c : centroid) c /= static_cast<double>(dim);

        const auto toward = [&](double coef) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = centroid[d] + coef * (centroid[d] - simplex[dim].x[d]);
            return x;
        };

        std::vector<double> xr = toward(1.0);
        const double fr = eval(xr);
        if (fr < simplex[0].f) {
            std::vector<double> xe = toward(2.0);
            const double fe = eval(xe);
            if (fe < fr)
                simplex[dim] = {std::move(xe), fe};
            else
                simplex[dim] = {std::move(xr), fr};
        } else if (fr < simplex[dim - 1].f) {
            simplex[dim] = {std::move(xr), fr};
        } else {
            const bool outside = fr < simplex[dim].f;
            std::vector<double> xc(dim);
            const auto& anchor = outside ? xr : simplex[dim].x;
            for (std::size_t d = 0; d < dim; ++d)
                xc[d] = centroid[d] + 0.5 * (anchor[d] - centroid[d]);
            const double fc = eval(xc);
            if (fc < (outside ? fr : simplex[dim].f)) {
                simplex[dim] = {std::move(xc), fc};
            } else {
                for (std::size_t v = 1; v <= dim; ++v) {
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[v].x[d] =
                            simplex[0].x[d] + 0.5 * (simplex[v].x[d] - simplex[0].x[d]);
                    simplex[v].f = eval(simplex[v].x);
                    if (evals >= opts.max_evals) break;
                }
            }
        }
        order();
    }

    order();
    return {simplex[0].x, simplex[0].f, evals};
}

/// Best of n_starts Nelder-Mead runs from seeded uniform starts in bounds.
/// Strict improvement keeps the earliest best, so results are reproducible.
inline OptResult multi_start(const Objective& f, std::size_t dim,
                             const OptimizerOptions& opts) {
    if (opts.n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");
    detail::check_bounds(opts.bounds, dim);
    std::mt19937_64 rng(opts.seed);
    OptResult best;
    std::size_t total_evals = 0;
    for (int s = 0; s < opts.n_starts; ++s) {
        std::vector<double> x0(dim);
        for (std::size_t d = 0; d < dim; ++d)
            x0[d] = opts.bounds[d].lo +
                    uniform_unit(rng) * (opts.bounds[d].hi - opts.bounds[d].lo);
        OptResult r = nelder_mead(f, std::move(x0), opts);
        total_evals += r.evals;
        if (s == 0 || r.f < best.f) best = std::move(r);
    }
    best.evals = total_evals;
    return best;
}

/// Exhaustive scan of the regular lattice with `resolution` points per axis,
/// endpoints included (resolution 1 degenerates to the lower endpoint).
/// Dimension 0 varies slowest; ties keep the first point in that order.
inline OptResult grid_search(const Objective& f, std::size_t dim, std::size_t resolution,
                             const std::vector<Bounds>& bounds,
                             std::size_t max_points = std::size_t{1} << 24) {
    if (dim == 0 || resolution == 0)
        throw std::invalid_argument("grid needs dim >= 1 and resolution >= 1");
    detail::check_bounds(bounds, dim);
    double logpts = static_cast<double>(dim) * std::log2(static_cast<double>(resolution));
    if (logpts > std::log2(static_cast<double>(max_points)) + 1e-9)
        throw std::invalid_argument("grid of " + std::to_string(resolution) + "^" +
                                    std::to_string(dim) + " points exceeds cap");

    std::vector<std::vector<double>> axis(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        axis[d].resize(resolution);
        for (std::size_t k = 0; k < resolution; ++k)
            axis[d][k] = resolution == 1
                             ? bounds[d].lo
                             : bounds[d].lo + (bounds[d].hi - bounds[d].lo) *
                                                  static_cast<double>(k) /
                                                  static_cast<double>(resolution - 1);
    }

    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> x(dim);
    OptResult best;
    best.evals = 0;
    bool first = true;
    for (;;) {
        for (std::size_t d = 0; d < dim; ++d) x[d] = axis[d][idx[d]];
        const double v = f(x);
        ++best.evals;
        if (first || v < best.f) {
            best.f = v;
            best.x = x;
            first = false;
        }
        // Odometer: last dimension fastest, so dimension 0 is slowest.
        std::size_t d = dim;
        while (d > 0 && ++idx[d - 1] == resolution) idx[--d] = 0;
        if (d == 0) break;
    }
    return best;
}

}  // namespace qaoa
