#pragma once
// Dirichlet L-functions: values via the Hurwitz decomposition
//   L(s, chi) = m^{-s} sum_{a=1}^{m} chi(a) zeta(s, a/m),
// the completed function and root number, a zero scanner for the rotated
// completed function on the critical line, nearest-zero distances, and a
// per-(character, ordinate) value cache with a CSV interchange format.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lvdist/characters.hpp"
#include "lvdist/numeric.hpp"
#include "lvdist/scan.hpp"
#include "lvdist/zetafn.hpp"

namespace lvdist {

// Thrown by log_abs_L when |L| falls below the numerical zero floor; the
// caller flags the ordinate and excludes it from samples.
struct near_zero_error : numeric_error {
    double gamma;
    explicit near_zero_error(double g)
        : numeric_error("log_abs_L: |L| below 1e-12 floor at ordinate " +
                        std::to_string(g)),
          gamma(g) {}
};

namespace detail {

inline void require_primitive_nonprincipal(const DirichletCharacter& chi,
                                           const char* who) {
    if (chi.modulus() < 3 || chi.label() == 0)
        throw std::invalid_argument(std::string(who) +
                                    ": principal or modulus < 3 unsupported");
    if (!chi.is_primitive())
        throw std::invalid_argument(std::string(who) + ": character must be primitive");
}

// Hurwitz-decomposition evaluation with an explicit Euler-Maclaurin shift.
inline cplx l_value_shifted(cplx s, const DirichletCharacter& chi, int m_shift) {
    const std::uint64_t m = chi.modulus();
    neumaier_csum acc;
    for (std::uint64_t a = 1; a <= m; ++a) {
        const cplx c = chi(a);
        if (c == cplx(0.0, 0.0)) continue;
        acc.add(c * hurwitz_zeta_shifted(s, double(a) / double(m), m_shift));
    }
    // m^{-s}
    const double lm = std::log(double(m));
    const double mod = std::exp(-s.real() * lm), ph = -s.imag() * lm;
    return cplx(mod * std::cos(ph), mod * std::sin(ph)) * acc.value();
}

// L(1, chi) for nonprincipal chi via the digamma identity
//   L(1, chi) = -(1/m) sum_a chi(a) psi(a/m).
inline cplx l_value_at_one(const DirichletCharacter& chi) {
    const std::uint64_t m = chi.modulus();
    neumaier_csum acc;
    for (std::uint64_t a = 1; a < m; ++a) {
        const cplx c = chi(a);
        if (c == cplx(0.0, 0.0)) continue;
        acc.add(c * digamma(double(a) / double(m)));
    }
    return -acc.value() / double(m);
}

}  // namespace detail

// L(s, chi) for primitive nonprincipal chi, continued to Re s >= -6.
// Relative error <= ~1e-9 for |Im s| <= 1e4. s = 1 is handled by the
// digamma identity (the Hurwitz pole terms cancel for nonprincipal chi).
inline cplx L_value(cplx s, const DirichletCharacter& chi) {
    detail::require_primitive_nonprincipal(chi, "L_value");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) return detail::l_value_at_one(chi);
    const int m_shift = std::max(16, static_cast<int>(std::ceil(std::abs(s))) + 10);
    return detail::l_value_shifted(s, chi, m_shift);
}

// Bulk evaluator for points high on the critical line: reduced shift
// M = max(64, |Im s|/4) cuts the cost 4x at the price of absolute error
// <= ~1e-6 (the Bernoulli tail ratio becomes (|s|/2 pi M)^2 ~ 0.41).
// Intended for statistical sampling, where 1e-6 is far below the
// resolution of any estimator built on 1e5 points.
inline cplx L_value_lean(cplx s, const DirichletCharacter& chi) {
    detail::require_primitive_nonprincipal(chi, "L_value_lean");
    const int m_shift = std::max(64, static_cast<int>(std::fabs(s.imag()) / 4.0));
    return detail::l_value_shifted(s, chi, m_shift);
}

// Root number epsilon(chi) = tau(chi) / (i^a sqrt(m)), |epsilon| = 1.
inline cplx root_number(const DirichletCharacter& chi) {
    detail::require_primitive_nonprincipal(chi, "root_number");
    const cplx tau = chi.gauss_sum();
    const cplx ia = chi.parity() == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    return tau / (ia * std::sqrt(double(chi.modulus())));
}

// Completed function Lambda(s, chi) = (m/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi),
// satisfying Lambda(s, chi) = epsilon(chi) Lambda(1-s, conj chi).
inline cplx completed_L(cplx s, const DirichletCharacter& chi) {
    detail::require_primitive_nonprincipal(chi, "completed_L");
    const double par = chi.parity();
    const cplx half = 0.5 * (s + par);
    if (!(half.real() > 0.0))
        throw std::domain_error("completed_L: Re(s + parity) > 0 required");
    const cplx lg = log_gamma(half) + half * std::log(double(chi.modulus()) / PI);
    return std::exp(lg) * L_value(s, chi);
}

// ------------------------------------------------------------- zero scanning

// Zeros of L(1/2 + it, chi) in a window, with the character identity and the
// recorded orientation sign of the rotated completed function.
struct LZeroList {
    std::vector<double> ordinates;
    std::uint64_t modulus = 0;
    std::uint64_t label = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double sign = 1.0;            // orientation fixed at the first test point
    double precision_hint = 0.0;
};

namespace detail {

// Phase of the completed function's non-positive factors on the critical
// line: Lambda(1/2+it) = (positive real) * exp(i omega(t)) * L(1/2+it), so
// rotating L by omega and the root number's half-phase gives a real-valued
// function with the same zeros, free of the |Gamma| underflow at large t.
inline double l_rotation_phase(double t, std::uint64_t m, int parity, double half_arg_eps) {
    const double th = log_gamma(cplx(0.25 + 0.5 * parity, 0.5 * t)).imag();
    return -half_arg_eps + th + 0.5 * t * std::log(double(m) / PI);
}

// Smooth estimate of #{0 < gamma_chi <= t}: (t/2pi) log(m t/(2 pi e)).
inline double l_count_est(std::uint64_t m, double t) {
    if (t <= 0.0) return 0.0;
    const double v = t / TWO_PI * std::log(double(m) * t / (TWO_PI * std::exp(1.0)));
    return std::max(0.0, v);
}

}  // namespace detail

struct LScanOptions {
    double tol = 1e-9;
    unsigned workers = 1;
};

// Scan (t_lo, t_hi] for ordinates of L(1/2+it, chi) = 0. The grid pass runs
// on the reduced-shift evaluator; every bracket is then re-bisected with the
// full-shift evaluator, which doubles as validation (each reported ordinate
// carries a full-precision sign change and |L| <= 1e-6 at the ordinate).
// A window count implausible against the smooth estimate aborts.
inline LZeroList scan_L_zeros(const DirichletCharacter& chi, double t_lo, double t_hi,
                              double grid_step = 0.02, const LScanOptions& opt = {}) {
    detail::require_primitive_nonprincipal(chi, "scan_L_zeros");
    if (!(t_lo >= 0.0) || !(t_hi > t_lo))
        throw std::domain_error("scan_L_zeros: need 0 <= t_lo < t_hi");
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw std::domain_error("scan_L_zeros: need 0 < grid_step <= 0.5");

    const std::uint64_t m = chi.modulus();
    const int parity = chi.parity();
    const double half_arg_eps = 0.5 * std::arg(root_number(chi));

    const auto rot_full = [&](double t) {
        const double w = detail::l_rotation_phase(t, m, parity, half_arg_eps);
        const cplx v = L_value(cplx(0.5, t), chi);
        return std::cos(w) * v.real() - std::sin(w) * v.imag();
    };
    const auto rot_lean = [&](double t) {
        const double w = detail::l_rotation_phase(t, m, parity, half_arg_eps);
        const cplx v = detail::l_value_shifted(
            cplx(0.5, t), chi, std::max(64, static_cast<int>(t / 4.0)));
        return std::cos(w) * v.real() - std::sin(w) * v.imag();
    };

    // Orientation at the first test point above t_lo (nudged off any zero).
    double t0 = t_lo + 0.5 * grid_step;
    double f0 = rot_full(t0);
    while (std::fabs(f0) < 1e-10 && t0 < t_hi) {
        t0 += 0.37 * grid_step;
        f0 = rot_full(t0);
    }
    const double sign = f0 < 0.0 ? -1.0 : 1.0;

    const auto est = [&](double t) { return detail::l_count_est(m, t); };
    auto rough = detail::sign_scan([&](double t) { return sign * rot_lean(t); }, est,
                                   t_lo, t_hi, grid_step, opt.tol, 2.5, 2, opt.workers);

    // Full-precision polish: re-bracket each rough ordinate and bisect.
    std::vector<double> zeros;
    zeros.reserve(rough.size());
    for (std::size_t i = 0; i < rough.size(); ++i) {
        const double g = rough[i];
        const double gap_lo = g - (i > 0 ? rough[i - 1] : t_lo);
        const double gap_hi = (i + 1 < rough.size() ? rough[i + 1] : t_hi) - g;
        const double room = 0.45 * std::min(gap_lo, gap_hi);
        double h = std::min(4e-6, room);
        bool located = false;
        for (int attempt = 0; attempt < 4 && h > 0.0; ++attempt) {
            const double fa = rot_full(g - h), fb = rot_full(g + h);
            if ((fa < 0.0) != (fb < 0.0)) {
                zeros.push_back(detail::bisect(rot_full, g - h, g + h, fa, opt.tol));
                located = true;
                break;
            }
            if (h >= room) break;
            h = std::min(16.0 * h, room);
        }
        if (!located)
            throw numeric_error("scan_L_zeros: ordinate " + std::to_string(g) +
                                " failed full-precision validation");
    }

    const double expect = est(t_hi) - est(t_lo);
    if (std::fabs(expect - double(zeros.size())) > 4.0)
        throw numeric_error("scan_L_zeros: found " + std::to_string(zeros.size()) +
                            " zeros in window but the smooth estimate gives " +
                            std::to_string(expect) + "; rescan with a finer grid");

    LZeroList out;
    out.ordinates = std::move(zeros);
    out.modulus = m;
    out.label = chi.label();
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    out.sign = sign;
    out.precision_hint = opt.tol;
    return out;
}

// ------------------------------------------------------------- eta and log|L|

// eta(gamma) = min_{gamma_chi in the list} |gamma - gamma_chi|. The window
// must extend at least two mean zero gaps beyond gamma on each side, else
// the true minimum could hide outside the window.
inline double eta_chi(double gamma, const LZeroList& zlist) {
    if (zlist.modulus < 3) throw std::invalid_argument("eta_chi: empty character identity");
    const double height = std::max(gamma, 6.0);
    const double mean_gap = TWO_PI / std::log(double(zlist.modulus) * height / TWO_PI);
    const double margin = 2.0 * mean_gap;
    if (gamma - margin < zlist.t_lo || gamma + margin > zlist.t_hi)
        throw coverage_error("eta_chi: window [" + std::to_string(zlist.t_lo) + ", " +
                             std::to_string(zlist.t_hi) + "] lacks a 2-mean-gap margin around " +
                             std::to_string(gamma));
    const auto& v = zlist.ordinates;
    if (v.empty())
        throw coverage_error("eta_chi: no zeros in a window that must contain some");
    auto it = std::lower_bound(v.begin(), v.end(), gamma);
    double best = std::numeric_limits<double>::infinity();
    if (it != v.end()) best = std::min(best, *it - gamma);
    if (it != v.begin()) best = std::min(best, gamma - *(it - 1));
    return best;
}

// log |L(1/2 + i gamma, chi)| with a numerical zero floor of 1e-12.
inline double log_abs_L(double gamma, const DirichletCharacter& chi) {
    const cplx v = L_value(cplx(0.5, gamma), chi);
    const double av = std::abs(v);
    if (av < 1e-12) throw near_zero_error(gamma);
    return std::log(av);
}

// --------------------------------------------------------------- value cache

// Memo of L(1/2 + i gamma, chi) keyed by (modulus, label, bitwise gamma).
// The CSV interchange format has columns (m, char_label, gamma, re_L, im_L)
// with gamma printed so it round-trips exactly.
class LValueCache {
  public:
    LValueCache() = default;
    LValueCache(LValueCache&& o) noexcept : map_(std::move(o.map_)) {}
    LValueCache& operator=(LValueCache&& o) noexcept {
        map_ = std::move(o.map_);
        return *this;
    }

    std::optional<cplx> get(const DirichletCharacter& chi, double gamma) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = map_.find(key(chi.modulus(), chi.label(), gamma));
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void put(const DirichletCharacter& chi, double gamma, cplx value) {
        std::lock_guard<std::mutex> lk(mu_);
        map_[key(chi.modulus(), chi.label(), gamma)] = value;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lk(mu_);
        return map_.size();
    }

    void save_csv(const std::string& path) const {
        std::lock_guard<std::mutex> lk(mu_);
        std::ofstream out(path);
        if (!out) throw std::runtime_error("LValueCache: cannot open " + path);
        out << "m,char_label,gamma,re_L,im_L\n";
        char buf[128];
        for (const auto& [k, v] : map_) {
            const auto [m, label, gbits] = k;
            double g;
            std::memcpy(&g, &gbits, sizeof g);
            std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g,%.17g,%.17g\n",
                          static_cast<unsigned long long>(m),
                          static_cast<unsigned long long>(label), g, v.real(), v.imag());
            out << buf;
        }
        if (!out) throw std::runtime_error("LValueCache: write failed for " + path);
    }

    static LValueCache load_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("LValueCache: cannot open " + path);
        LValueCache cache;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line == "m,char_label,gamma,re_L,im_L") continue;
            unsigned long long m = 0, label = 0;
            double g = 0, re = 0, im = 0;
            if (std::sscanf(line.c_str(), "%llu,%llu,%lg,%lg,%lg", &m, &label, &g, &re, &im) != 5)
                throw std::runtime_error("LValueCache: " + path + ":" +
                                         std::to_string(lineno) + ": bad row: " + line);
            cache.map_[key(m, label, g)] = cplx(re, im);
        }
        return cache;
    }

  private:
    using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;
    static Key key(std::uint64_t m, std::uint64_t label, double gamma) {
        std::uint64_t gbits;
        std::memcpy(&gbits, &gamma, sizeof gbits);
        return {m, label, gbits};
    }
    std::map<Key, cplx> map_;
    mutable std::mutex mu_;
};

// Cached critical-line value at ordinate gamma, computed with the bulk
// evaluator on a miss.
inline cplx l_value_at_zero(const DirichletCharacter& chi, double gamma,
                            LValueCache* cache = nullptr) {
    if (cache != nullptr) {
        if (auto hit = cache->get(chi, gamma)) return *hit;
    }
    const cplx v = L_value_lean(cplx(0.5, gamma), chi);
    if (cache != nullptr) cache->put(chi, gamma, v);
    return v;
}

}  // namespace lvdist
