#pragma once
// Bessel functions of the first kind J_ell(z) for integer order, real z.
//
// Three evaluation branches:
//   |z| < 12           ascending power series (any order)
//   |z| >= 12, ell<=1  Hankel asymptotic expansion, optimally truncated
//   |z| >= 12, ell>=2  Miller downward recurrence normalized by
//                      J_0 + 2*sum_k J_{2k} = 1
// Accuracy: absolute error <= ~1e-11 near the branch seam |z|=12,
// <= ~1e-12 for |z| <= 8. Domain capped at |z| <= 1e4.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lvdist/numeric.hpp"

namespace lvdist {

namespace detail {

// Ascending series: J_ell(z) = sum_m (-1)^m (z/2)^{ell+2m} / (m! (m+ell)!).
inline double bessel_j_series(int ell, double z) {
    const double h = 0.5 * z;
    // Leading term (z/2)^ell / ell!, log-scaled for large orders.
    double term;
    if (ell <= 20) {
        term = 1.0;
        for (int j = 1; j <= ell; ++j) term *= h / j;
    } else {
        double lg = ell * std::log(h) - std::lgamma(ell + 1.0);
        if (lg < -745.0) return 0.0;  // underflows double range
        term = std::exp(lg);
    }
    const double q = -h * h;
    neumaier_sum acc;
    acc.add(term);
    for (int m = 1; m <= 400; ++m) {
        term *= q / (static_cast<double>(m) * (m + ell));
        acc.add(term);
        if (std::fabs(term) < 1e-20 * (std::fabs(acc.value()) + 1e-300)) break;
    }
    return acc.value();
}

// Hankel asymptotic expansion for ell in {0,1}, z >= 12:
//   J_ell(z) = sqrt(2/(pi z)) (cos(w) P - sin(w) Q),  w = z - ell pi/2 - pi/4,
// with P, Q built from t_k = t_{k-1} (4ell^2 - (2k-1)^2) / (8 k z).
inline double bessel_j_asymptotic(int ell, double z) {
    const double mu = 4.0 * ell * ell;
    double t = 1.0;
    double p = 1.0, q = 0.0;
    double prev = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        t *= f;
        if (std::fabs(t) > prev) break;  // divergent tail reached, stop early
        prev = std::fabs(t);
        const int r = k % 4;
        if (r == 0) p += t;
        else if (r == 1) q += t;
        else if (r == 2) p -= t;
        else q -= t;
        if (std::fabs(t) < 1e-18) break;
    }
    const double w = z - ell * (PI / 2.0) - PI / 4.0;
    return std::sqrt(2.0 / (PI * z)) * (std::cos(w) * p - std::sin(w) * q);
}

// Miller downward recurrence for ell >= 2, z >= 12. Runs the three-term
// recurrence J_{k-1} = (2k/z) J_k - J_{k+1} downward from a start index well
// above max(ell, z), then normalizes with J_0 + 2 sum J_{2k} = 1.
inline double bessel_j_miller(int ell, double z) {
    const int top = std::max(ell, static_cast<int>(z) + 1);
    int m = top + 2 * static_cast<int>(std::sqrt(static_cast<double>(top))) + 20;
    if (m % 2 != 0) ++m;
    std::vector<double> u(static_cast<std::size_t>(m) + 2, 0.0);
    u[static_cast<std::size_t>(m) + 1] = 0.0;
    u[static_cast<std::size_t>(m)] = 1e-30;
    for (int k = m; k >= 1; --k) {
        u[static_cast<std::size_t>(k) - 1] =
            (2.0 * k / z) * u[static_cast<std::size_t>(k)] - u[static_cast<std::size_t>(k) + 1];
        if (std::fabs(u[static_cast<std::size_t>(k) - 1]) > 1e200) {
            for (int j = k - 1; j <= m + 1; ++j) u[static_cast<std::size_t>(j)] *= 1e-200;
        }
    }
    neumaier_sum norm;
    norm.add(u[0]);
    for (int k = 2; k <= m; k += 2) norm.add(2.0 * u[static_cast<std::size_t>(k)]);
    return u[static_cast<std::size_t>(ell)] / norm.value();
}

}  // namespace detail

// J_ell(z) for integer ell >= 0 and |z| <= 1e4.
inline double bessel_J(int ell, double z) {
    if (ell < 0) throw std::domain_error("bessel_J: order must be >= 0");
    if (!(std::fabs(z) <= 1e4)) throw std::domain_error("bessel_J: |z| <= 1e4 required");
    double sign = 1.0;
    if (z < 0.0) {  // J_ell(-z) = (-1)^ell J_ell(z)
        z = -z;
        if (ell % 2 == 1) sign = -1.0;
    }
    if (z == 0.0) return ell == 0 ? 1.0 : 0.0;
    if (z < 12.0) return sign * detail::bessel_j_series(ell, z);
    if (ell <= 1) return sign * detail::bessel_j_asymptotic(ell, z);
    return sign * detail::bessel_j_miller(ell, z);
}

}  // namespace lvdist
