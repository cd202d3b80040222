#pragma once
// Nontrivial zeta zero ordinates: scanning, counting, and a plain-text
// interchange format.
//
// Scanner layout: Hardy Z is evaluated by Euler-Maclaurin below a crossover
// height (default 3000) and by Riemann-Siegel above it. Every zero found on
// the Riemann-Siegel side is validated by an Euler-Maclaurin sign change
// across it; failures trigger a local re-bracketing, and an unresolvable
// ordinate aborts the scan. Full scans from t = 0 must agree with the
// smooth count estimate to within 2, else the scan aborts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvdist/numeric.hpp"
#include "lvdist/scan.hpp"
#include "lvdist/zetafn.hpp"

namespace lvdist {

// A sorted batch of zero ordinates together with the window [t_lo, t_hi] it
// is known to cover completely and an upper bound on per-ordinate error.
struct ZeroList {
    std::vector<double> ordinates;
    std::string source;          // "scanned" or "file:<path>"
    double precision_hint = 0.0; // 0 = unknown
    double t_lo = 0.0;
    double t_hi = 0.0;
};

// Smooth estimate of the number of zeros with 0 < ordinate <= t:
//   (t/2pi) log(t/(2 pi e)) + 7/8,  t >= 2.
inline double rvm_estimate(double t) {
    if (!(t >= 2.0)) throw std::domain_error("rvm_estimate: t >= 2 required");
    return t / TWO_PI * std::log(t / (TWO_PI * std::exp(1.0))) + 7.0 / 8.0;
}

// Number of listed ordinates in (0, t]. The list must cover [0, t]: its
// window must start below the first zero and reach t.
inline std::size_t count_N(double t, const ZeroList& zeros) {
    if (!(t >= 0.0)) throw std::domain_error("count_N: t >= 0 required");
    if (zeros.t_lo > 14.0)
        throw coverage_error("count_N: list window starts at " +
                             std::to_string(zeros.t_lo) + ", not at 0");
    if (t > zeros.t_hi + 1e-9)
        throw coverage_error("count_N: t = " + std::to_string(t) +
                             " beyond covered height " + std::to_string(zeros.t_hi));
    return static_cast<std::size_t>(
        std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), t) -
        zeros.ordinates.begin());
}

// ------------------------------------------------------------------ file I/O

// Plain text: '#' comment lines carry key=value metadata, then one ordinate
// per line in %.17g (round-trips doubles exactly).
inline void save_zeros(const ZeroList& zeros, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_zeros: cannot open " + path);
    char buf[64];
    out << "# source=" << zeros.source << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", zeros.precision_hint);
    out << "# precision=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", zeros.t_lo);
    out << "# window_lo=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", zeros.t_hi);
    out << "# window_hi=" << buf << "\n";
    for (double g : zeros.ordinates) {
        std::snprintf(buf, sizeof buf, "%.17g", g);
        out << buf << "\n";
    }
    if (!out) throw std::runtime_error("save_zeros: write failed for " + path);
}

inline ZeroList load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_zeros: cannot open " + path);
    ZeroList zl;
    zl.source = "file:" + path;
    zl.t_hi = -1.0;  // sentinel: derive from data unless the header says
    std::string line;
    std::size_t lineno = 0;
    bool have_hi = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') {
            const auto grab = [&](const char* key) -> const char* {
                std::size_t at = line.find(key);
                return at == std::string::npos ? nullptr : line.c_str() + at + std::strlen(key);
            };
            if (const char* v = grab("source=")) {
                std::string s(v);
                if (std::size_t e = s.find_first_of(" \t\r"); e != std::string::npos) s.resize(e);
                if (!s.empty()) zl.source = s;
            }
            if (const char* v = grab("precision=")) zl.precision_hint = std::strtod(v, nullptr);
            if (const char* v = grab("window_lo=")) zl.t_lo = std::strtod(v, nullptr);
            if (const char* v = grab("window_hi=")) {
                zl.t_hi = std::strtod(v, nullptr);
                have_hi = true;
            }
            continue;
        }
        char* end = nullptr;
        const double g = std::strtod(line.c_str() + pos, &end);
        if (end == line.c_str() + pos ||
            (end != nullptr && std::string(end).find_first_not_of(" \t\r") != std::string::npos)) {
            throw std::runtime_error("load_zeros: " + path + ":" +
                                     std::to_string(lineno) + ": not a number: " + line);
        }
        if (!zl.ordinates.empty() && g <= zl.ordinates.back()) {
            throw std::runtime_error("load_zeros: " + path + ":" +
                                     std::to_string(lineno) +
                                     ": ordinates must be strictly increasing");
        }
        zl.ordinates.push_back(g);
    }
    if (!have_hi) zl.t_hi = zl.ordinates.empty() ? 0.0 : zl.ordinates.back();
    return zl;
}

// ------------------------------------------------------------------ scanning

struct ScanOptions {
    double tol = 1e-9;            // bisection width
    double em_crossover = 3000.0; // Euler-Maclaurin below, Riemann-Siegel above
    bool validate = true;         // E-M sign validation of R-S-found zeros
    unsigned workers = 1;
};

namespace detail {

// est wrapper defined for all t >= 0.
inline double zero_count_est(double t) { return t < 2.0 ? 0.0 : rvm_estimate(t); }

// Validate (and if needed relocate) a Riemann-Siegel-found ordinate with the
// Euler-Maclaurin evaluator. gap_lo/gap_hi are distances to the neighbors.
// Returns the (possibly refined) ordinate; throws numeric_error if no
// Euler-Maclaurin sign change exists anywhere near it.
inline double validate_ordinate(double g, double gap_lo, double gap_hi, double tol) {
    const double room = 0.45 * std::min(gap_lo, gap_hi);
    double h = std::min(5e-4, 0.6 * room);
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double fa = hardy_z_em_lean(g - h);
        const double fb = hardy_z_em_lean(g + h);
        if ((fa < 0.0) != (fb < 0.0)) {
            if (attempt == 0) return g;  // confirmed in place
            return bisect([](double x) { return hardy_z_em_lean(x); },
                          g - h, g + h, fa, tol);
        }
        if (h >= room) break;
        h = std::min(4.0 * h, room);
    }
    throw numeric_error("scan_zeros: ordinate " + std::to_string(g) +
                        " failed Euler-Maclaurin validation");
}

}  // namespace detail

// Scan [t_lo, t_hi] for zero ordinates on a grid of spacing grid_step.
// Chunks whose zero count falls short of the smooth estimate by >= 2.5 are
// rescanned at finer grids, catching close pairs. For scans starting at
// t_lo = 0 the final count must match the smooth estimate to within 2.
inline ZeroList scan_zeros(double t_lo, double t_hi, double grid_step = 0.02,
                           const ScanOptions& opt = {}) {
    if (!(t_lo >= 0.0) || !(t_hi > t_lo))
        throw std::domain_error("scan_zeros: need 0 <= t_lo < t_hi");
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw std::domain_error("scan_zeros: need 0 < grid_step <= 0.5");
    const double cross = std::max(100.0, opt.em_crossover);

    std::vector<double> zeros;
    const double em_hi = std::min(t_hi, cross);
    if (t_lo < em_hi) {
        auto part = detail::sign_scan([](double t) { return hardy_z_em(t); },
                                      detail::zero_count_est, t_lo, em_hi,
                                      grid_step, opt.tol, 2.5, 2, opt.workers);
        zeros.insert(zeros.end(), part.begin(), part.end());
    }
    const std::size_t n_em = zeros.size();
    if (t_hi > cross) {
        const double rs_lo = std::max(t_lo, cross);
        auto part = detail::sign_scan([](double t) { return hardy_z_rs(t); },
                                      detail::zero_count_est, rs_lo, t_hi,
                                      grid_step, opt.tol, 2.5, 2, opt.workers);
        zeros.insert(zeros.end(), part.begin(), part.end());
    }

    if (opt.validate) {
        for (std::size_t i = n_em; i < zeros.size(); ++i) {
            const double gap_lo = zeros[i] - (i > 0 ? zeros[i - 1] : t_lo);
            const double gap_hi = (i + 1 < zeros.size() ? zeros[i + 1] : t_hi) - zeros[i];
            zeros[i] = detail::validate_ordinate(zeros[i], gap_lo, gap_hi, opt.tol);
        }
    }

    if (t_lo == 0.0 && t_hi >= 2.0) {
        const double expect = rvm_estimate(t_hi);
        if (std::fabs(expect - static_cast<double>(zeros.size())) > 2.0) {
            throw numeric_error("scan_zeros: found " + std::to_string(zeros.size()) +
                                " zeros to " + std::to_string(t_hi) +
                                " but the smooth estimate gives " + std::to_string(expect));
        }
    }

    ZeroList zl;
    zl.ordinates = std::move(zeros);
    zl.source = "scanned";
    zl.precision_hint = (t_hi > cross) ? 1e-4 : opt.tol;
    zl.t_lo = t_lo;
    zl.t_hi = t_hi;
    return zl;
}

}  // namespace lvdist
