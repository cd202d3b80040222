#pragma once
// Generic grid-plus-bisection sign scanner, shared by the zeta-zero and
// L-zero scanners. Deterministic: fixed chunk grid, per-chunk results
// concatenated in chunk order regardless of worker count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lvdist/numeric.hpp"

namespace lvdist {
namespace detail {

// Bisect a bracket [a, b] with f(a), f(b) of opposite sign down to width tol.
template <class F>
double bisect(F&& f, double a, double b, double fa, double tol) {
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// One scan cell: grid [a, b] at spacing <= sub_step, bisect every bracket.
// A zero landing exactly on a grid point is credited to its left endpoint,
// so cells sharing a boundary never double-count.
template <class F>
void scan_cell(F&& f, double a, double b, double sub_step, double tol,
               std::vector<double>& out) {
    const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / sub_step)));
    double t0 = a, f0 = f(a);
    for (long i = 1; i <= n; ++i) {
        const double t1 = (i == n) ? b : a + i * (b - a) / static_cast<double>(n);
        const double f1 = f(t1);
        if (f0 == 0.0) {
            out.push_back(t0);
            f0 = (f1 < 0.0) ? -1.0 : 1.0;  // consume; avoid re-bracketing t0
        }
        if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
            out.push_back(bisect(f, t0, t1, f0, tol));
        }
        t0 = t1;
        f0 = f1;
    }
}

// Scan [lo, hi] for zeros of f. est(t) is a smooth running-count estimator:
// whenever a chunk finds at least `deficit` fewer zeros than est predicts,
// the chunk is rescanned at an 8x finer grid (up to refine_rounds times) to
// catch close pairs that slip through the coarse grid.
template <class F, class Est>
std::vector<double> sign_scan(F&& f, Est&& est, double lo, double hi, double step,
                              double tol, double deficit = 2.5, int refine_rounds = 2,
                              unsigned workers = 1) {
    std::vector<double> zeros;
    if (!(hi > lo) || !(step > 0.0)) return zeros;

    const double span = 512.0 * step;
    const std::size_t n_chunks =
        static_cast<std::size_t>(std::ceil((hi - lo) / span));

    auto partials = map_chunks<std::vector<double>>(
        n_chunks, 1, workers,
        [&](std::size_t ci, std::size_t, std::size_t) {
            const double a = lo + static_cast<double>(ci) * span;
            const double b = std::min(hi, a + span);
            std::vector<double> found;
            scan_cell(f, a, b, step, tol, found);
            const double expected = est(b) - est(a);
            double sub = step;
            for (int r = 0; r < refine_rounds; ++r) {
                if (expected - static_cast<double>(found.size()) < deficit) break;
                sub /= 8.0;
                std::vector<double> finer;
                scan_cell(f, a, b, sub, tol, finer);
                if (finer.size() > found.size()) found = std::move(finer);
            }
            return found;
        });

    for (auto& p : partials)
        zeros.insert(zeros.end(), p.begin(), p.end());
    return zeros;
}

}  // namespace detail
}  // namespace lvdist
