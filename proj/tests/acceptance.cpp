// Acceptance verifier: one PASS/FAIL line per criterion, tolerances and
// runtime budgets pinned in code next to each check. Heavy intermediates
// (zero scans, L-value tables, the full-precision sample) are cached under
// ./acceptance_cache so reruns are cheap; delete that directory to force a
// cold run. Exit status 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lvdist/arith.hpp"
#include "lvdist/characters.hpp"
#include "lvdist/lfunc.hpp"
#include "lvdist/model.hpp"
#include "lvdist/numeric.hpp"
#include "lvdist/paircorr.hpp"
#include "lvdist/selberg.hpp"
#include "lvdist/stats.hpp"
#include "lvdist/zeta_zeros.hpp"

namespace fs = std::filesystem;
using lvdist::cplx;
using lvdist::DirichletCharacter;

static const std::string CACHE = "acceptance_cache";

// ----------------------------------------------------------------- reporting

static int g_failed = 0;

static double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// budget_s <= 0 means the criterion has no pinned runtime bound.
static void report(int id, const char* name, bool ok, double elapsed, double budget_s,
                   const std::string& detail) {
    bool time_ok = true;
    char tbuf[64];
    if (budget_s > 0.0) {
        time_ok = elapsed <= budget_s;
        std::snprintf(tbuf, sizeof tbuf, "%.1fs of %.0fs", elapsed, budget_s);
    } else {
        std::snprintf(tbuf, sizeof tbuf, "%.1fs", elapsed);
    }
    const bool pass = ok && time_ok;
    if (!pass) ++g_failed;
    std::printf("%s  criterion %2d  %-34s [%s] %s%s\n", pass ? "PASS" : "FAIL", id, name, tbuf,
                detail.c_str(), !time_ok ? "  (over budget)" : "");
    std::fflush(stdout);
}

template <typename Body>
static void run(int id, const char* name, double budget_s, Body body) {
    const double t0 = now_s();
    try {
        body(t0);
    } catch (const std::exception& e) {
        report(id, name, false, now_s() - t0, budget_s, std::string("exception: ") + e.what());
    }
}

static std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ------------------------------------------------------------ shared inputs

// Zeta zeros covering the first 1e5 (the 1e5-th ordinate is ~74920.83).
static const lvdist::ZeroList& zeros_100k() {
    static lvdist::ZeroList z = [] {
        const std::string path = CACHE + "/zeros_74935.txt";
        if (fs::exists(path)) return lvdist::load_zeros(path);
        std::fprintf(stderr, "[acceptance] scanning zeta zeros to 74935 (one-time)...\n");
        auto full = lvdist::scan_zeros(0.0, 74935.0, 0.02);
        lvdist::save_zeros(full, path);
        return full;
    }();
    return z;
}

// First n zeros as a list whose top equals its last ordinate.
static lvdist::ZeroList first_zeros(std::size_t n) {
    const auto& all = zeros_100k();
    if (all.ordinates.size() < n) throw std::runtime_error("zero list shorter than requested");
    lvdist::ZeroList out;
    out.ordinates.assign(all.ordinates.begin(), all.ordinates.begin() + std::ptrdiff_t(n));
    out.source = all.source;
    out.precision_hint = all.precision_hint;
    out.t_lo = 0.0;
    out.t_hi = out.ordinates.back();
    return out;
}

// Zeros of L(s, chi_4) past the pair-correlation window above the 1e4-th
// zeta zero (~9877.8 + 40 + margin).
static const lvdist::LZeroList& lzeros_chi4() {
    static lvdist::LZeroList z = [] {
        const std::string path = CACHE + "/lzeros_4_9921.txt";
        lvdist::LZeroList l;
        l.modulus = 4;
        l.label = 1;
        l.t_lo = 0.0;
        l.t_hi = 9921.0;
        if (fs::exists(path)) {
            const auto raw = lvdist::load_zeros(path);  // ordinate container reuse
            l.ordinates = raw.ordinates;
            return l;
        }
        std::fprintf(stderr, "[acceptance] scanning L(s, 4.1) zeros to 9921 (one-time)...\n");
        const auto chi = lvdist::parse_character("4.1");
        auto scanned = lvdist::scan_L_zeros(chi, 0.0, 9921.0);
        lvdist::ZeroList raw;
        raw.ordinates = scanned.ordinates;
        raw.source = "scanned";
        raw.precision_hint = scanned.precision_hint;
        raw.t_lo = 0.0;
        raw.t_hi = 9921.0;
        lvdist::save_zeros(raw, path);
        l.ordinates = std::move(scanned.ordinates);
        return l;
    }();
    return z;
}

// Shared lean L-value table for the chi_3/chi_4 pipelines.
static lvdist::LValueCache& lean_cache() {
    static lvdist::LValueCache cache = [] {
        const std::string path = CACHE + "/lvalues_34.csv";
        if (fs::exists(path)) return lvdist::LValueCache::load_csv(path);
        return lvdist::LValueCache();
    }();
    return cache;
}

static void persist_lean_cache() {
    lean_cache().save_csv(CACHE + "/lvalues_34.csv");
}

// Full-precision sample of log |L(1/2 + i gamma, chi_3)| at the first 1e5
// zeros; the single long computation of the suite.
static const lvdist::Sample& true_sample_chi3() {
    static lvdist::Sample s = [] {
        const std::string path = CACHE + "/sample_true_chi3.csv";
        const auto zeros = first_zeros(100000);
        lvdist::Sample out;
        out.T = zeros.t_hi;
        if (fs::exists(path)) {
            std::ifstream in(path);
            std::string line;
            std::getline(in, line);  // header
            while (std::getline(in, line)) {
                double g = 0, v = 0;
                int flag = 0;
                if (std::sscanf(line.c_str(), "%lg,%lg,%d", &g, &v, &flag) != 3)
                    throw std::runtime_error("bad sample cache row: " + line);
                if (flag)
                    out.excluded.push_back({g, "flagged (cached)"});
                else
                    out.entries.push_back({g, v});
            }
            return out;
        }
        std::fprintf(stderr,
                     "[acceptance] evaluating log |L| at 1e5 zeros, full precision (one-time, "
                     "several minutes)...\n");
        const auto chi = lvdist::parse_character("3.1");
        out = lvdist::build_sample(zeros, {1.0}, {chi}, lvdist::Evaluator::true_L);
        std::FILE* f = std::fopen(path.c_str(), "w");
        if (f != nullptr) {
            std::fprintf(f, "gamma,value,excluded\n");
            for (const auto& e : out.entries) std::fprintf(f, "%.17g,%.17g,0\n", e.gamma, e.value);
            for (const auto& e : out.excluded) std::fprintf(f, "%.17g,0,1\n", e.gamma);
            std::fclose(f);
        }
        return out;
    }();
    return s;
}

// --------------------------------------------------------------- criterion 1

// Gauss-sum magnitude sqrt(m) for every primitive character of modulus <= 50,
// and the full pairwise orthogonality table of every character group.
static void criterion_1(double t0) {
    constexpr double TOL = 1e-10;
    double worst_tau = 0.0, worst_orth = 0.0;
    std::size_t n_prim = 0, n_pairs = 0;
    for (std::uint64_t m = 3; m <= 50; ++m) {
        const auto group = lvdist::enumerate_characters(m);
        for (const auto& chi : group) {
            if (chi.is_primitive() && !chi.is_principal()) {
                ++n_prim;
                worst_tau = std::max(worst_tau,
                                     std::abs(std::abs(chi.gauss_sum()) - std::sqrt(double(m))));
            }
        }
        // phi(m) via the group size.
        const double phi = double(group.size());
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = 0; j < group.size(); ++j) {
                lvdist::neumaier_csum acc;
                for (std::uint64_t n = 1; n <= m; ++n)
                    acc.add(group[i](n) * std::conj(group[j](n)));
                const double expect = i == j ? phi : 0.0;
                worst_orth = std::max(worst_orth, std::abs(acc.value() - expect));
                ++n_pairs;
            }
    }
    const bool ok = worst_tau <= TOL && worst_orth <= TOL;
    report(1, "gauss-sums-and-orthogonality", ok, now_s() - t0, 1.0,
           fmt("max |tau| dev %.2e, max orthogonality dev %.2e (tol %.0e; %zu primitive chars, "
               "%zu pairs)",
               worst_tau, worst_orth, TOL, n_prim, n_pairs));
}

// --------------------------------------------------------------- criterion 2

// Functional equation Lambda(s, chi) = eps(chi) Lambda(1-s, conj chi) on a
// 200-point grid over primitive characters of modulus <= 20, |Im s| <= 50,
// plus L(2, chi_4) against the directly summed alternating series.
static void criterion_2(double t0) {
    constexpr double TOL_FE = 1e-8;
    constexpr double TOL_CAT = 1e-9;

    std::vector<DirichletCharacter> chars;
    for (std::uint64_t m = 3; m <= 20; ++m)
        for (const auto& chi : lvdist::enumerate_characters(m))
            if (chi.is_primitive() && !chi.is_principal()) chars.push_back(chi);

    const double sigmas[] = {0.3, 0.5, 0.7};
    const double ts[] = {-50.0, -27.25, -12.5, -5.0, -0.7, 0.7, 5.0, 12.5, 27.25, 50.0};
    double worst = 0.0;
    std::size_t n_points = 0;
    for (std::size_t i = 0; n_points < 200; ++i) {
        const auto& chi = chars[i % chars.size()];
        const double sigma = sigmas[(i / chars.size()) % 3];
        const double t = ts[i % 10];
        const cplx s(sigma, t);
        const cplx lhs = lvdist::completed_L(s, chi);
        const cplx rhs = lvdist::root_number(chi) *
                         lvdist::completed_L(cplx(1.0, 0.0) - s, chi.conjugate());
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
        ++n_points;
    }

    // Alternating series summed in adjacent pairs: each pair is O(n^{-3}),
    // so 60000 terms leave a remainder far below the tolerance.
    lvdist::neumaier_sum catalan;
    for (std::uint64_t n = 0; n < 30000; ++n) {
        const double a = 4.0 * double(n) + 1.0;
        const double b = 4.0 * double(n) + 3.0;
        catalan.add(1.0 / (a * a) - 1.0 / (b * b));
    }
    const double l2 =
        lvdist::L_value(cplx(2.0, 0.0), lvdist::parse_character("4.1")).real();
    const double cat_dev = std::abs(l2 - catalan.value());

    const bool ok = worst <= TOL_FE && cat_dev <= TOL_CAT;
    report(2, "functional-equation-grid", ok, now_s() - t0, 30.0,
           fmt("max relative residual %.2e over %zu points (tol %.0e); |L(2,chi_4) - series| = "
               "%.2e (tol %.0e)",
               worst, n_points, TOL_FE, cat_dev, TOL_CAT));
}

// --------------------------------------------------------------- criterion 3

// Zero counts N(100) = 29 and N(1000) = 649 from a fresh scan of (0, 1000].
static void criterion_3(double t0) {
    const std::string path = CACHE + "/zeros_1000.txt";
    lvdist::ZeroList z;
    if (fs::exists(path)) {
        z = lvdist::load_zeros(path);
    } else {
        z = lvdist::scan_zeros(0.0, 1000.0, 0.02);
        lvdist::save_zeros(z, path);
    }
    std::size_t n100 = 0;
    for (double g : z.ordinates)
        if (g <= 100.0) ++n100;
    const std::size_t n1000 = z.ordinates.size();
    const bool ok = n100 == 29 && n1000 == 649;
    report(3, "zero-counts-to-1000", ok, now_s() - t0, 300.0,
           fmt("N(100) = %zu (want 29), N(1000) = %zu (want 649); ordinate cross-check vs "
               "reference table skipped (no reference file provided)",
               n100, n1000));
}

// --------------------------------------------------------------- criterion 4

// Exact model moments against Monte Carlo on five pseudo-randomly drawn small
// configurations, and the closed-form characteristic function against its
// Monte Carlo estimate.
static void criterion_4(double t0) {
    constexpr std::uint64_t SEED = 20260819;
    constexpr std::uint64_t N_MC = 200000;

    // Primitive non-principal pool to draw from.
    std::vector<DirichletCharacter> pool;
    for (std::uint64_t m : {3, 4, 5, 7, 8, 11})
        for (const auto& chi : lvdist::enumerate_characters(m))
            if (chi.is_primitive() && !chi.is_principal()) pool.push_back(chi);

    double worst_sigma_moment = 0.0, worst_sigma_cf = 0.0;
    double psi2_dev = 0.0;
    for (std::uint64_t c = 0; c < 5; ++c) {
        auto u = [&](std::uint64_t k) { return lvdist::u01(lvdist::counter_rng(SEED, c, k)); };
        const std::size_t n_chi = 1 + (c % 2);  // alternate single/pair
        std::vector<DirichletCharacter> chis;
        std::vector<double> coeffs;
        for (std::size_t j = 0; j < n_chi; ++j) {
            std::size_t pick = std::size_t(u(10 + j) * double(pool.size()));
            if (pick >= pool.size()) pick = pool.size() - 1;
            // avoid duplicate characters in one combination
            for (const auto& prev : chis)
                if (pool[pick].modulus() == prev.modulus() && pool[pick].label() == prev.label())
                    pick = (pick + 1) % pool.size();
            chis.push_back(pool[pick]);
            double a = -2.0 + 4.0 * u(20 + j);
            if (std::abs(a) < 0.3) a += a >= 0.0 ? 0.5 : -0.5;
            coeffs.push_back(a);
        }
        const double X2 = 20.0 + 40.0 * u(30);
        const auto config = lvdist::make_model_config(coeffs, chis, std::sqrt(X2), SEED + c);

        // Second moment must equal half the model variance parameter exactly.
        psi2_dev = std::max(psi2_dev, std::abs(lvdist::exact_moment(2, config) -
                                               0.5 * lvdist::psi_L(config)));

        const auto samples = lvdist::sample_P_L(config, N_MC);
        for (int k = 1; k <= 4; ++k) {
            lvdist::neumaier_sum acc, acc2;
            for (cplx v : samples) {
                const double y = std::pow(v.real(), k);
                acc.add(y);
                acc2.add(y * y);
            }
            const double mean = acc.value() / double(N_MC);
            const double var = std::max(0.0, acc2.value() / double(N_MC) - mean * mean);
            const double se = std::sqrt(var / double(N_MC));
            const double sig = std::abs(mean - lvdist::exact_moment(k, config)) / std::max(se, 1e-300);
            worst_sigma_moment = std::max(worst_sigma_moment, sig);
        }
        for (double w : {0.5, 1.0, 2.0, 4.0}) {
            const auto mc = lvdist::mc_char_fn(w, config, N_MC);
            const double sig = std::abs(mc.estimate - lvdist::char_fn_model(w, config)) /
                               std::max(mc.std_error, 1e-300);
            worst_sigma_cf = std::max(worst_sigma_cf, sig);
        }
    }
    const bool ok = psi2_dev <= 1e-12 && worst_sigma_moment <= 3.0 && worst_sigma_cf <= 3.0;
    report(4, "model-moments-vs-monte-carlo", ok, now_s() - t0, 60.0,
           fmt("|m2 - psi/2| max %.2e (tol 1e-12); worst moment dev %.2f sigma, worst char-fn "
               "dev %.2f sigma (cap 3) over 5 configs",
               psi2_dev, worst_sigma_moment, worst_sigma_cf));
}

// --------------------------------------------------------------- criterion 5

// Standardized model characteristic function against the Gaussian limit:
// sup over omega in [0, 2] of |phi(omega / sd) - exp(-omega^2 / 2)| <= 0.05
// for the single-character combination at X^2 = 1e4.
static void criterion_5(double t0) {
    constexpr double TOL = 0.05;
    const auto chi = lvdist::parse_character("3.1");
    const auto config = lvdist::make_model_config({1.0}, {chi}, 100.0, 1);
    const double sd = std::sqrt(0.5 * lvdist::psi_L(config));
    double sup = 0.0, arg = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double w = 0.01 * double(i);
        const double dev =
            std::abs(lvdist::char_fn_model(w / sd, config) - std::exp(-0.5 * w * w));
        if (dev > sup) {
            sup = dev;
            arg = w;
        }
    }
    report(5, "model-gaussian-approach", sup <= TOL, now_s() - t0, 0.0,
           fmt("sup deviation %.4f at omega = %.2f (tol %.2f), X^2 = 1e4", sup, arg, TOL));
}

// --------------------------------------------------------------- criterion 6

// Second-moment transfer at the height of the 1e4-th zero: the summed square
// of the prime-sum surrogate matches the main terms to 25%%.
static void criterion_6(double t0) {
    const auto zeros = zeros_100k();
    const double T = zeros.ordinates.at(9999);
    const auto chi = lvdist::parse_character("3.1");
    const auto config = lvdist::make_model_config({1.0}, {chi}, std::sqrt(1000.0), 1);
    const auto mt = lvdist::moment_transfer_check(zeros, config, 2, T);
    const double rel = std::abs(mt.gap) / std::max(std::abs(mt.lhs), 1e-300);
    report(6, "second-moment-transfer", rel <= 0.25, now_s() - t0, 600.0,
           fmt("lhs %.4g, main %.4g + %.4g, |gap|/lhs = %.3f (tol 0.25) at T = %.1f, X^2 = 1e3",
               mt.lhs, mt.rhs_main1, mt.rhs_main2, rel, T));
}

// --------------------------------------------------------------- criterion 7

// Normality of standardized log |L| at the first 1e5 zeros: KS distance to
// the standard normal <= 0.12, and not worse than the 1e4-zero prefix by
// more than 0.02.
static void criterion_7(double t0) {
    constexpr double KS_CAP = 0.12;
    constexpr double DRIFT_CAP = 0.02;
    const auto& raw = true_sample_chi3();
    const auto std_full = lvdist::standardize(raw, {1.0});
    const double ks_full = lvdist::ks_normal(std_full);

    lvdist::Sample prefix;
    const std::size_t n_pre = 10000;
    prefix.entries.assign(raw.entries.begin(), raw.entries.begin() + n_pre);
    prefix.T = prefix.entries.back().gamma;
    const double ks_pre = lvdist::ks_normal(lvdist::standardize(prefix, {1.0}));

    const bool ok = ks_full <= KS_CAP && ks_full <= ks_pre + DRIFT_CAP;
    report(7, "normality-of-log-L", ok, now_s() - t0, 3600.0,
           fmt("KS(1e5) = %.4f (cap %.2f), KS(1e4) = %.4f, drift %.4f (cap +%.2f); %zu excluded",
               ks_full, KS_CAP, ks_pre, ks_full - ks_pre, DRIFT_CAP, raw.excluded.size()));
}

// --------------------------------------------------------------- criterion 8

// Cross-character covariance of standardized log |L| over 1e5 zeros:
// off-diagonal within 0.1 of zero, diagonals within [0.7, 1.3].
static void criterion_8(double t0) {
    const auto zeros = first_zeros(100000);
    const std::vector<DirichletCharacter> chis = {lvdist::parse_character("3.1"),
                                                  lvdist::parse_character("4.1")};
    const auto cov = lvdist::covariance_matrix(zeros, chis, &lean_cache());
    persist_lean_cache();
    const double off = cov.matrix[0][1];
    const double d0 = cov.matrix[0][0], d1 = cov.matrix[1][1];
    const bool ok = std::abs(off) <= 0.1 && d0 >= 0.7 && d0 <= 1.3 && d1 >= 0.7 && d1 <= 1.3;
    report(8, "cross-character-covariance", ok, now_s() - t0, 0.0,
           fmt("sigma12 = %.4f (cap 0.1), diag = %.3f / %.3f (window [0.7, 1.3]), n = %zu", off,
               d0, d1, cov.n_points));
}

// --------------------------------------------------------------- criterion 9

// Characteristic-function transfer: the standardized true-value sample and
// the standardized prime-sum surrogate agree to 0.1 at omega in {0.5, 1}.
static void criterion_9(double t0) {
    constexpr double TOL = 0.1;
    const auto zeros = first_zeros(100000);
    const auto chi = lvdist::parse_character("3.1");
    const auto std_true = lvdist::standardize(true_sample_chi3(), {1.0});
    const auto poly =
        lvdist::build_sample(zeros, {1.0}, {chi}, lvdist::Evaluator::selberg_poly, 100.0);
    const auto std_poly = lvdist::standardize(poly, {1.0});
    double worst = 0.0;
    for (double w : {0.5, 1.0})
        worst = std::max(worst, std::abs(lvdist::char_fn_empirical(std_true, w) -
                                         lvdist::char_fn_empirical(std_poly, w)));
    report(9, "characteristic-fn-transfer", worst <= TOL, now_s() - t0, 0.0,
           fmt("max |phi_true - phi_poly| = %.4f at omega in {0.5, 1} (tol %.1f), X^2 = 1e4",
               worst, TOL));
}

// -------------------------------------------------------------- criterion 10

// Vanishing density of 0-values of L(s, chi_3) + L(s, chi_4): the small-ball
// proportion (delta = 0.1) over the second 5e4 zeros does not exceed the
// first-half proportion by more than 0.02, and both stay under 0.2.
static void criterion_10(double t0) {
    const auto zeros = first_zeros(100000);
    const double split = zeros.ordinates.at(49999);
    const std::vector<DirichletCharacter> chis = {lvdist::parse_character("3.1"),
                                                  lvdist::parse_character("4.1")};
    const std::vector<cplx> coeffs = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
    const auto rep = lvdist::avalue_proportion(zeros, coeffs, chis, cplx(0.0, 0.0), {0.1},
                                               {{0.0, split}, {split, zeros.t_hi}},
                                               &lean_cache());
    persist_lean_cache();
    const double lo = rep.proportions[0][0];
    const double hi = rep.proportions[1][0];
    const bool ok = hi <= lo + 0.02 && lo <= 0.2 && hi <= 0.2;
    report(10, "vanishing-zero-value-density", ok, now_s() - t0, 0.0,
           fmt("proportion %.4f (first half) vs %.4f (second half); want second <= first + "
               "0.02, both <= 0.2; windows %zu + %zu zeros",
               lo, hi, rep.window_totals[0], rep.window_totals[1]));
}

// -------------------------------------------------------------- criterion 11

// Pair correlation against the chi_4 zero set at the height of the 1e4-th
// zeta zero: the close-pair count is dominated by the sinc kernel sum, the
// clustering proportion is monotone in epsilon, and f(2) stays small.
static void criterion_11(double t0) {
    const auto zeros = zeros_100k();
    const double T = zeros.ordinates.at(9999);
    const auto& l4 = lzeros_chi4();

    bool chain_ok = true;
    std::string chain_detail;
    for (double d : {0.5, 1.0, 2.0}) {
        const double kernel = lvdist::sinc_kernel_sum(d, T, zeros, l4);
        const auto close = double(lvdist::close_pair_count(d, T, zeros, l4));
        chain_ok = chain_ok && 0.9 * close <= kernel;
        chain_detail += fmt("%sdelta %.1f: 0.9*%.0f vs %.1f", chain_detail.empty() ? "" : "; ",
                            d, close, kernel);
    }

    const double h025 = lvdist::h0_proportion(0.25, T, zeros, l4);
    const double h05 = lvdist::h0_proportion(0.5, T, zeros, l4);
    const double h1 = lvdist::h0_proportion(1.0, T, zeros, l4);
    const bool mono_ok = h025 <= h05 && h05 <= h1;

    const double f2 = lvdist::f_alpha(2.0, T, zeros, l4);
    const bool f2_ok = f2 <= 0.5;

    report(11, "cross-pair-correlation", chain_ok && mono_ok && f2_ok, now_s() - t0, 0.0,
           fmt("%s; h0: %.4f <= %.4f <= %.4f; f(2) = %.4f (cap 0.5) at T = %.1f", chain_detail.c_str(),
               h025, h05, h1, f2, T));
}

// ---------------------------------------------------------------------- main

int main() {
    fs::create_directories(CACHE);
    std::printf("acceptance verifier: 11 criteria, tolerances pinned in code\n");
    std::printf("cache directory: %s (delete to force a cold run)\n\n", CACHE.c_str());

    run(1, "gauss-sums-and-orthogonality", 1.0, criterion_1);
    run(2, "functional-equation-grid", 30.0, criterion_2);
    run(3, "zero-counts-to-1000", 300.0, criterion_3);
    run(4, "model-moments-vs-monte-carlo", 60.0, criterion_4);
    run(5, "model-gaussian-approach", 0.0, criterion_5);
    run(6, "second-moment-transfer", 600.0, criterion_6);
    run(7, "normality-of-log-L", 3600.0, criterion_7);
    run(8, "cross-character-covariance", 0.0, criterion_8);
    run(9, "characteristic-fn-transfer", 0.0, criterion_9);
    run(10, "vanishing-zero-value-density", 0.0, criterion_10);
    run(11, "cross-pair-correlation", 0.0, criterion_11);

    std::printf("\nacceptance: %d/11 criteria passed\n", 11 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
