// Cross pair-correlation between zeta-zero ordinates and L-zero ordinates:
// the weighted exponential-sum statistic F(alpha, T) with weight
// w(u) = 4/(4+u^2), the squared-sinc kernel sum, and the proportion of zeta
// zeros with an L-zero within eps/log T. Negative ordinates enter by
// reflection, which realizes the conjugate character's zeros; the output is
// real by that symmetrization.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvdist/lfunc.hpp"
#include "lvdist/numeric.hpp"
#include "lvdist/zeta_zeros.hpp"

namespace lvdist {

namespace detail {

// Pairwise window beyond which the double sums are truncated: w(40) < 0.0025
// and the sinc kernel is far into its tail.
constexpr double pair_window = 40.0;

inline void require_pair_coverage(double T, const ZeroList& zeros, const LZeroList& lzeros,
                                  double upper_margin = 0.0) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("pair correlation: window top must be positive");
    if (zeros.t_lo > 1e-9 || lzeros.t_lo > 1e-9)
        throw coverage_error("pair correlation: lists must start at ordinate 0");
    if (zeros.t_hi + 1e-9 < T)
        throw coverage_error("pair correlation: zeta list stops at " + std::to_string(zeros.t_hi) +
                             " below T = " + std::to_string(T));
    if (lzeros.t_hi + 1e-9 < T + upper_margin)
        throw coverage_error("pair correlation: L list stops at " + std::to_string(lzeros.t_hi) +
                             " below T + margin = " + std::to_string(T + upper_margin));
}

inline std::vector<double> ordinates_up_to(const std::vector<double>& v, double T) {
    return {v.begin(), std::upper_bound(v.begin(), v.end(), T)};
}

// Accumulate kernel(g - h) + kernel(g + h) over positive-ordinate pairs with
// both gaps truncated at the pair window; the symmetrized full-range value is
// twice the result for any even real kernel.
template <class Kernel>
double half_pair_sum(const std::vector<double>& g, const std::vector<double>& h, Kernel kernel) {
    neumaier_sum acc;
    std::size_t lo = 0, hi = 0;
    for (double x : g) {
        while (lo < h.size() && h[lo] < x - pair_window) ++lo;
        while (hi < h.size() && h[hi] <= x + pair_window) ++hi;
        for (std::size_t i = lo; i < hi; ++i) acc.add(kernel(x - h[i]));
        // Opposite-sign pairs: |x + h| <= window only near the origin.
        for (std::size_t i = 0; i < h.size() && x + h[i] <= pair_window; ++i)
            acc.add(kernel(x + h[i]));
    }
    return acc.value();
}

}  // namespace detail

// F(alpha, T) = (pi / (T log T)) sum over ordinate pairs in [-T, T] of
// T^{i alpha (gamma - gamma')} w(gamma - gamma'), w(u) = 4 / (4 + u^2).
inline double f_alpha(double alpha, double T, const ZeroList& zeros, const LZeroList& lzeros) {
    detail::require_pair_coverage(T, zeros, lzeros);
    if (!std::isfinite(alpha)) throw std::invalid_argument("f_alpha: alpha not finite");
    const auto g = detail::ordinates_up_to(zeros.ordinates, T);
    const auto h = detail::ordinates_up_to(lzeros.ordinates, T);
    const double log_t = std::log(T);
    const double half = detail::half_pair_sum(g, h, [&](double u) {
        return std::cos(alpha * log_t * u) * 4.0 / (4.0 + u * u);
    });
    return PI / (T * log_t) * 2.0 * half;
}

// Crude bound on what the pairwise truncation discards: every skipped pair
// carries weight at most w(window).
inline double f_alpha_truncation_bound(double T, const ZeroList& zeros, const LZeroList& lzeros) {
    detail::require_pair_coverage(T, zeros, lzeros);
    const auto g = detail::ordinates_up_to(zeros.ordinates, T);
    const auto h = detail::ordinates_up_to(lzeros.ordinates, T);
    const double kept = detail::half_pair_sum(g, h, [](double) { return 1.0; });
    const double skipped = 2.0 * (2.0 * double(g.size()) * double(h.size()) - kept);
    const double w_tail = 4.0 / (4.0 + detail::pair_window * detail::pair_window);
    return PI / (T * std::log(T)) * skipped * w_tail;
}

// Sum over the same symmetrized pairs of (sin x / x)^2 at
// x = (delta / 2) (gamma - gamma') log T; coincident pairs contribute 1.
inline double sinc_kernel_sum(double delta, double T, const ZeroList& zeros,
                              const LZeroList& lzeros) {
    if (!(delta > 0.0)) throw std::invalid_argument("sinc_kernel_sum: need delta > 0");
    detail::require_pair_coverage(T, zeros, lzeros);
    const auto g = detail::ordinates_up_to(zeros.ordinates, T);
    const auto h = detail::ordinates_up_to(lzeros.ordinates, T);
    const double scale = 0.5 * delta * std::log(T);
    const double half = detail::half_pair_sum(g, h, [&](double u) {
        const double x = scale * u;
        if (x == 0.0) return 1.0;
        const double s = std::sin(x) / x;
        return s * s;
    });
    return 2.0 * half;
}

// Ratio of the kernel sum to its predicted scale (1/delta) (T log T) / pi.
inline double sinc_kernel_ratio(double delta, double T, const ZeroList& zeros,
                                const LZeroList& lzeros) {
    return sinc_kernel_sum(delta, T, zeros, lzeros) / (T * std::log(T) / (delta * PI));
}

// Number of symmetrized pairs with |x| <= 1/2 in the kernel variable, i.e.
// |gamma - gamma'| <= 1/(delta log T). Each contributes at least 9/10 to the
// kernel sum, giving an exact chain inequality.
inline std::size_t close_pair_count(double delta, double T, const ZeroList& zeros,
                                    const LZeroList& lzeros) {
    if (!(delta > 0.0)) throw std::invalid_argument("close_pair_count: need delta > 0");
    detail::require_pair_coverage(T, zeros, lzeros);
    const auto g = detail::ordinates_up_to(zeros.ordinates, T);
    const auto h = detail::ordinates_up_to(lzeros.ordinates, T);
    const double r = 1.0 / (delta * std::log(T));
    if (r > detail::pair_window)
        throw std::invalid_argument("close_pair_count: radius exceeds the pair window");
    const double half =
        detail::half_pair_sum(g, h, [&](double u) { return std::abs(u) <= r ? 1.0 : 0.0; });
    return std::size_t(std::llround(2.0 * half));
}

// Fraction of zeta ordinates 0 < gamma <= T with an L ordinate within
// eps / log T. The L list must cover that margin beyond both window ends.
inline double h0_proportion(double eps, double T, const ZeroList& zeros,
                            const LZeroList& lzeros) {
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("h0_proportion: need eps >= 0");
    const double margin = eps / std::log(T);
    detail::require_pair_coverage(T, zeros, lzeros, margin);
    const auto g = detail::ordinates_up_to(zeros.ordinates, T);
    if (g.empty()) throw std::invalid_argument("h0_proportion: no zeta zeros below T");
    const auto& h = lzeros.ordinates;
    if (h.empty()) return 0.0;
    std::size_t hits = 0;
    for (double x : g) {
        auto it = std::lower_bound(h.begin(), h.end(), x);
        double best = std::numeric_limits<double>::infinity();
        if (it != h.end()) best = std::min(best, *it - x);
        if (it != h.begin()) best = std::min(best, x - *(it - 1));
        if (best <= margin) ++hits;
    }
    return double(hits) / double(g.size());
}

// ------------------------------------------------------------------ reports

struct PairCorrResult {
    std::vector<double> alpha_grid;
    std::vector<double> values;
    double T = 0.0;
    std::uint64_t modulus = 0;
    std::uint64_t label = 0;
};

inline PairCorrResult pair_correlation(const std::vector<double>& alpha_grid, double T,
                                       const ZeroList& zeros, const LZeroList& lzeros) {
    PairCorrResult out;
    out.alpha_grid = alpha_grid;
    out.T = T;
    out.modulus = lzeros.modulus;
    out.label = lzeros.label;
    out.values.reserve(alpha_grid.size());
    for (double a : alpha_grid) out.values.push_back(f_alpha(a, T, zeros, lzeros));
    return out;
}

inline void save_paircorr_csv(const std::string& path, const PairCorrResult& result) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw std::runtime_error("save_paircorr_csv: cannot open " + path);
    std::fprintf(f, "alpha,value\n");
    for (std::size_t i = 0; i < result.alpha_grid.size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", result.alpha_grid[i], result.values[i]);
    std::fclose(f);
}

}  // namespace lvdist
