// Distributional machinery over zeta zeros: samples of log |L| linear
// combinations (true values or prime-sum surrogate), standardization on the
// sqrt(half coefficient mass times log log T) scale, KS distance to the
// standard normal, empirical characteristic functions, moment sums, the
// moment-transfer comparison against the random-model prediction, covariance
// across characters, dominance bookkeeping, and small-ball proportions of
// combined L-values.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lvdist/characters.hpp"
#include "lvdist/lfunc.hpp"
#include "lvdist/model.hpp"
#include "lvdist/numeric.hpp"
#include "lvdist/selberg.hpp"
#include "lvdist/zeta_zeros.hpp"

namespace lvdist {

// ------------------------------------------------------------------ samples

enum class Evaluator { true_L, selberg_poly };

struct SampleEntry {
    double gamma = 0.0;
    double value = 0.0;
};

struct ExcludedZero {
    double gamma = 0.0;
    std::string reason;
};

// Per-zero values over the window (0, T]; zeros whose evaluation failed are
// kept separately so that proportions can still be normalized by the full
// zero count.
struct Sample {
    std::vector<SampleEntry> entries;
    double T = 0.0;
    std::vector<ExcludedZero> excluded;

    std::size_t total() const { return entries.size() + excluded.size(); }
};

namespace detail {

inline void validate_combination(const std::vector<double>& coeffs,
                                 const std::vector<DirichletCharacter>& chis, const char* who) {
    if (coeffs.empty() || coeffs.size() != chis.size())
        throw std::invalid_argument(std::string(who) + ": need equally many coefficients and characters");
    bool any = false;
    for (double a : coeffs) {
        if (!std::isfinite(a)) throw std::invalid_argument(std::string(who) + ": non-finite coefficient");
        if (a != 0.0) any = true;
    }
    if (!any) throw std::invalid_argument(std::string(who) + ": all coefficients are zero");
    for (const auto& chi : chis) detail::require_primitive_nonprincipal(chi, who);
}

struct SamplePartial {
    std::vector<SampleEntry> entries;
    std::vector<ExcludedZero> excluded;
};

}  // namespace detail

// Evaluate a1 log|L(1/2+i gamma, chi_1)| + ... at every listed ordinate.
// evaluator true_L uses the full-precision L values; selberg_poly substitutes
// the real part of the truncated prime sum with cutoff X^2.
inline Sample build_sample(const ZeroList& zeros, const std::vector<double>& coeffs,
                           const std::vector<DirichletCharacter>& chis, Evaluator evaluator,
                           double X = 100.0, int workers = 1) {
    detail::validate_combination(coeffs, chis, "build_sample");
    if (zeros.ordinates.empty()) throw std::invalid_argument("build_sample: empty zero list");

    const auto& g = zeros.ordinates;
    auto partials = map_chunks<detail::SamplePartial>(
        g.size(), 256, unsigned(workers), [&](std::size_t, std::size_t b, std::size_t e) {
            detail::SamplePartial part;
            for (std::size_t i = b; i < e; ++i) {
                const double gamma = g[i];
                if (evaluator == Evaluator::selberg_poly) {
                    part.entries.push_back({gamma, p_L(gamma, coeffs, chis, X).real()});
                    continue;
                }
                try {
                    neumaier_sum acc;
                    for (std::size_t j = 0; j < coeffs.size(); ++j) {
                        if (coeffs[j] == 0.0) continue;
                        acc.add(coeffs[j] * log_abs_L(gamma, chis[j]));
                    }
                    part.entries.push_back({gamma, acc.value()});
                } catch (const numeric_error& err) {
                    part.excluded.push_back({gamma, err.what()});
                }
            }
            return part;
        });

    Sample s;
    s.T = zeros.t_hi;
    for (auto& part : partials) {
        s.entries.insert(s.entries.end(), part.entries.begin(), part.entries.end());
        s.excluded.insert(s.excluded.end(), part.excluded.begin(), part.excluded.end());
    }
    if (double(s.excluded.size()) > 0.01 * double(g.size())) {
        std::string msg = "build_sample: evaluation failed on " +
                          std::to_string(s.excluded.size()) + " of " + std::to_string(g.size()) +
                          " zeros (> 1%); first: " + s.excluded.front().reason;
        throw numeric_error(msg);
    }
    return s;
}

// -------------------------------------------------------------- standardizer

struct Standardizer {
    double divisor = 1.0;
};

// divisor = sqrt(half the coefficient mass times log log T).
inline Standardizer make_standardizer(const std::vector<double>& coeffs, double T) {
    if (!(T >= 16.0)) throw std::invalid_argument("make_standardizer: need T >= 16");
    neumaier_sum mass;
    for (double a : coeffs) mass.add(a * a);
    if (!(mass.value() > 0.0))
        throw std::invalid_argument("make_standardizer: coefficient mass is zero");
    return Standardizer{std::sqrt(0.5 * mass.value() * std::log(std::log(T)))};
}

inline Sample standardize(const Sample& sample, const std::vector<double>& coeffs) {
    const Standardizer st = make_standardizer(coeffs, sample.T);
    Sample out = sample;
    for (auto& entry : out.entries) entry.value /= st.divisor;
    return out;
}

// ------------------------------------------------------------- distribution

// Fraction of values in [A, B]. Flagged zeros count in the denominator: the
// reference count is the number of zeros, not the number of evaluations.
inline double proportion_in_interval(const Sample& sample, double A, double B) {
    if (!(A < B)) throw std::invalid_argument("proportion_in_interval: need A < B");
    if (sample.total() == 0) throw std::invalid_argument("proportion_in_interval: empty sample");
    std::size_t hits = 0;
    for (const auto& entry : sample.entries)
        if (entry.value >= A && entry.value <= B) ++hits;
    return double(hits) / double(sample.total());
}

// Kolmogorov-Smirnov distance between the empirical CDF of the sample values
// (assumed already standardized by the caller) and the standard normal CDF.
inline double ks_normal(const Sample& sample) {
    const std::size_t n = sample.entries.size();
    if (n < 10) throw std::invalid_argument("ks_normal: need at least 10 values");
    std::vector<double> v;
    v.reserve(n);
    for (const auto& entry : sample.entries) v.push_back(entry.value);
    std::sort(v.begin(), v.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = normal_cdf(v[i]);
        d = std::max(d, double(i + 1) / double(n) - phi);
        d = std::max(d, phi - double(i) / double(n));
    }
    return d;
}

// (1/n) sum exp(i omega value) over the evaluated entries.
inline cplx char_fn_empirical(const Sample& sample, double omega) {
    if (!std::isfinite(omega)) throw std::invalid_argument("char_fn_empirical: omega not finite");
    if (sample.entries.empty()) throw std::invalid_argument("char_fn_empirical: empty sample");
    neumaier_csum acc;
    for (const auto& entry : sample.entries) {
        const double ang = omega * entry.value;
        acc.add(cplx(std::cos(ang), std::sin(ang)));
    }
    return acc.value() / double(sample.entries.size());
}

// -------------------------------------------------------------- histograms

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count = 0;
    double density = 0.0;
};

// Equal-width bins on [lo, hi); the last bin is closed on the right. Density
// is normalized by the full zero count, so out-of-range and flagged zeros
// deflate the integral rather than being silently renormalized away.
inline std::vector<HistogramBin> histogram(const Sample& sample, double lo, double hi,
                                           std::size_t nbins) {
    if (!(lo < hi) || nbins == 0) throw std::invalid_argument("histogram: bad bin layout");
    if (sample.total() == 0) throw std::invalid_argument("histogram: empty sample");
    const double width = (hi - lo) / double(nbins);
    std::vector<HistogramBin> bins(nbins);
    for (std::size_t b = 0; b < nbins; ++b) {
        bins[b].lo = lo + width * double(b);
        bins[b].hi = (b + 1 == nbins) ? hi : lo + width * double(b + 1);
    }
    for (const auto& entry : sample.entries) {
        if (entry.value < lo || entry.value > hi) continue;
        std::size_t b = std::size_t((entry.value - lo) / width);
        if (b >= nbins) b = nbins - 1;  // right edge of the last bin
        ++bins[b].count;
    }
    for (auto& bin : bins) bin.density = double(bin.count) / (double(sample.total()) * width);
    return bins;
}

inline void save_histogram_csv(const std::string& path, const std::vector<HistogramBin>& bins) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw std::runtime_error("save_histogram_csv: cannot open " + path);
    std::fprintf(f, "bin_lo,bin_hi,count,density\n");
    for (const auto& bin : bins)
        std::fprintf(f, "%.17g,%.17g,%llu,%.17g\n", bin.lo, bin.hi,
                     static_cast<unsigned long long>(bin.count), bin.density);
    std::fclose(f);
}

// ----------------------------------------------------------------- moments

// (1/N) sum over listed zeros of |Re P(gamma)|^k for the prime-sum surrogate
// with cutoff X^2.
inline double moment_at_zeros(const ZeroList& zeros, const std::vector<double>& coeffs,
                              const std::vector<DirichletCharacter>& chis, double X, int k,
                              int workers = 1) {
    detail::validate_combination(coeffs, chis, "moment_at_zeros");
    if (k < 1) throw std::invalid_argument("moment_at_zeros: need k >= 1");
    if (zeros.ordinates.empty()) throw std::invalid_argument("moment_at_zeros: empty zero list");
    const auto& g = zeros.ordinates;
    const double total = sum_indexed(g.size(), 256, unsigned(workers), [&](std::size_t i) {
        return std::pow(std::abs(p_L(g[i], coeffs, chis, X).real()), double(k));
    });
    return total / double(g.size());
}

// Measured 2k-th moment of the surrogate against k! times the k-th power of
// the per-prime mass sum. The exponent convention in the source bound is
// ambiguous; the ratio is reported as a diagnostic, not asserted.
inline double moment_ratio_diagnostic(const ZeroList& zeros, const ModelConfig& config, int k,
                                      int workers = 1) {
    if (k < 1) throw std::invalid_argument("moment_ratio_diagnostic: need k >= 1");
    const double m2k = moment_at_zeros(zeros, config.coeffs, config.chis, config.X, 2 * k, workers);
    const double psi = psi_L(config);
    if (!(psi > 0.0)) throw std::invalid_argument("moment_ratio_diagnostic: empty prime sum");
    return m2k / (double(factorial_u64(unsigned(k))) * std::pow(psi, double(k)));
}

struct MomentTransfer {
    double lhs = 0.0;        // sum over zeros up to T of (Re P)^k, signed
    double rhs_main1 = 0.0;  // N(T) times the exact model moment
    double rhs_main2 = 0.0;  // oscillatory prime-power correction
    double gap = 0.0;        // lhs - (rhs_main1 + rhs_main2)
};

namespace detail {

// Model moment with one prime removed, in closed form for order r <= 3:
// odd orders vanish and the second moment is half the remaining mass.
inline double moment_excluding(int r, double psi_total, double nu, double p) {
    switch (r) {
        case 0: return 1.0;
        case 1: return 0.0;
        case 2: return 0.5 * (psi_total - nu * nu / p);
        case 3: return 0.0;
        default: throw std::invalid_argument("moment_excluding: order out of range");
    }
}

}  // namespace detail

// Compare the summed k-th power of the surrogate over zeros in (0, T] with
// the model prediction: a volume term N(T) E[(Re P)^k] plus an oscillatory
// term -(T/pi) sum over primes q and orders 1 <= l <= k of
// (log q / q^{l/2}) E[(Re P)^k Re e(l theta_q)], evaluated in closed form.
inline MomentTransfer moment_transfer_check(const ZeroList& zeros, const ModelConfig& config,
                                            int k, double T, int workers = 1) {
    if (k < 0 || k > 4)
        throw std::invalid_argument("moment_transfer_check: exact combinatorics only for k <= 4");
    if (!(T > 14.0) || !std::isfinite(T))
        throw std::invalid_argument("moment_transfer_check: window top too small");
    if (zeros.t_lo > 14.0 || zeros.t_hi + 1e-9 < T)
        throw coverage_error("moment_transfer_check: zero list does not cover (0, T]");

    const auto& g = zeros.ordinates;
    const auto end = std::upper_bound(g.begin(), g.end(), T);
    const std::size_t n = std::size_t(end - g.begin());

    MomentTransfer out;
    out.lhs = sum_indexed(n, 256, unsigned(workers), [&](std::size_t i) {
        return std::pow(p_L(g[i], config.coeffs, config.chis, config.X).real(), double(k));
    });
    out.rhs_main1 = double(n) * exact_moment(k, config);

    const auto terms = detail::model_terms(config, "moment_transfer_check");
    const double psi = psi_L(config);
    neumaier_sum osc;
    for (const auto& term : terms) {
        const double p = double(term.p);
        const double y = term.nu * term.inv_sqrt;  // nu_q / sqrt q
        for (int l = 1; l <= k; ++l) {
            // E[(Re P)^k Re e(l theta_q)] expands binomially over the power
            // of the q-th summand; only exponents j >= l with j = l (mod 2)
            // survive the phase average.
            double expect = 0.0;
            for (int j = l; j <= k; j += 2) {
                const double pick = binomial(unsigned(k), unsigned(j));
                const double half_binom = binomial(unsigned(j), unsigned((j - l) / 2));
                expect += pick * std::pow(y, double(j)) * half_binom / std::pow(2.0, double(j)) *
                          std::cos(TWO_PI * double(l) * term.beta) *
                          detail::moment_excluding(k - j, psi, term.nu, p);
            }
            if (expect != 0.0)
                osc.add(std::log(p) / std::pow(p, 0.5 * double(l)) * expect);
        }
    }
    out.rhs_main2 = -(T / PI) * osc.value();
    out.gap = out.lhs - (out.rhs_main1 + out.rhs_main2);
    return out;
}

// --------------------------------------------------------------- covariance

struct CovReport {
    std::vector<std::vector<double>> matrix;
    std::size_t n_points = 0;
};

namespace detail {

struct LogLPartial {
    std::vector<std::vector<double>> cols;  // cols[j] = per-zero log |L_j|
    std::vector<double> gammas;             // ordinate per kept row
    std::size_t skipped = 0;
};

// Rows of log |L(1/2 + i gamma, chi_j)| over the listed zeros, computed with
// the bulk evaluator; a zero is dropped (and counted) if any character's
// value sits under the numerical floor.
inline LogLPartial log_l_columns(const ZeroList& zeros,
                                 const std::vector<DirichletCharacter>& chis, LValueCache* cache,
                                 int workers) {
    const auto& g = zeros.ordinates;
    const std::size_t nchi = chis.size();
    auto partials = map_chunks<LogLPartial>(
        g.size(), 64, unsigned(workers), [&](std::size_t, std::size_t b, std::size_t e) {
            LogLPartial part;
            part.cols.resize(nchi);
            std::vector<double> row(nchi);
            for (std::size_t i = b; i < e; ++i) {
                bool ok = true;
                for (std::size_t j = 0; j < nchi; ++j) {
                    const double av = std::abs(l_value_at_zero(chis[j], g[i], cache));
                    if (av < 1e-12) {
                        ok = false;
                        break;
                    }
                    row[j] = std::log(av);
                }
                if (!ok) {
                    ++part.skipped;
                    continue;
                }
                for (std::size_t j = 0; j < nchi; ++j) part.cols[j].push_back(row[j]);
                part.gammas.push_back(g[i]);
            }
            return part;
        });
    LogLPartial all;
    all.cols.resize(nchi);
    for (auto& part : partials) {
        for (std::size_t j = 0; j < nchi; ++j)
            all.cols[j].insert(all.cols[j].end(), part.cols[j].begin(), part.cols[j].end());
        all.gammas.insert(all.gammas.end(), part.gammas.begin(), part.gammas.end());
        all.skipped += part.skipped;
    }
    return all;
}

}  // namespace detail

// Sample covariance of (log |L(rho, chi_j)| / sqrt(half log log T))_j over
// zeros where every character evaluates. Duplicate characters are allowed
// and produce the expected rank deficiency.
inline CovReport covariance_matrix(const ZeroList& zeros,
                                   const std::vector<DirichletCharacter>& chis,
                                   LValueCache* cache = nullptr, int workers = 1) {
    if (chis.size() < 2) throw std::invalid_argument("covariance_matrix: need at least 2 characters");
    for (const auto& chi : chis) detail::require_primitive_nonprincipal(chi, "covariance_matrix");
    if (!(zeros.t_hi >= 16.0))
        throw std::invalid_argument("covariance_matrix: window top below 16");

    auto data = detail::log_l_columns(zeros, chis, cache, workers);
    const std::size_t nchi = chis.size();
    const std::size_t n = data.cols.empty() ? 0 : data.cols.front().size();
    if (n < 2) throw std::invalid_argument("covariance_matrix: fewer than 2 usable zeros");

    const double divisor = std::sqrt(0.5 * std::log(std::log(zeros.t_hi)));
    std::vector<double> mean(nchi, 0.0);
    for (std::size_t j = 0; j < nchi; ++j) {
        neumaier_sum acc;
        for (double v : data.cols[j]) acc.add(v / divisor);
        mean[j] = acc.value() / double(n);
    }

    CovReport report;
    report.n_points = n;
    report.matrix.assign(nchi, std::vector<double>(nchi, 0.0));
    for (std::size_t i = 0; i < nchi; ++i)
        for (std::size_t j = i; j < nchi; ++j) {
            neumaier_sum acc;
            for (std::size_t r = 0; r < n; ++r)
                acc.add((data.cols[i][r] / divisor - mean[i]) *
                        (data.cols[j][r] / divisor - mean[j]));
            const double c = acc.value() / double(n - 1);
            report.matrix[i][j] = c;
            report.matrix[j][i] = c;
        }
    return report;
}

// ---------------------------------------------------------------- dominance

struct DominanceReport {
    double threshold = 0.0;                            // (log log T)^{1/4}
    std::size_t n_zeros = 0;                           // zeros considered
    std::vector<std::vector<std::size_t>> close_pairs; // |log|L_i| - log|L_j|| <= threshold
    std::vector<std::size_t> small_values;             // |log|L_i|| <= threshold
    std::vector<std::size_t> argmax_counts;            // leader index over clean zeros
    std::size_t n_clean = 0;                           // zeros outside every flagged set
    std::size_t n_ties = 0;                            // argmax ties, broken by lowest index
};

// Bookkeeping for the leader analysis: which zeros have two characters of
// comparable size, which have a near-unit |L|, and who leads elsewhere.
inline DominanceReport dominance_sets(const ZeroList& zeros,
                                      const std::vector<DirichletCharacter>& chis, double T,
                                      LValueCache* cache = nullptr, int workers = 1) {
    if (chis.empty()) throw std::invalid_argument("dominance_sets: no characters");
    for (const auto& chi : chis) detail::require_primitive_nonprincipal(chi, "dominance_sets");
    if (!(T >= 16.0)) throw std::invalid_argument("dominance_sets: need T >= 16");

    ZeroList window = zeros;
    window.ordinates.erase(
        std::upper_bound(window.ordinates.begin(), window.ordinates.end(), T),
        window.ordinates.end());
    auto data = detail::log_l_columns(window, chis, cache, workers);

    const std::size_t nchi = chis.size();
    const std::size_t n = data.cols.empty() ? 0 : data.cols.front().size();
    DominanceReport report;
    report.threshold = std::pow(std::log(std::log(T)), 0.25);
    report.n_zeros = n;
    report.close_pairs.assign(nchi, std::vector<std::size_t>(nchi, 0));
    report.small_values.assign(nchi, 0);
    report.argmax_counts.assign(nchi, 0);

    for (std::size_t r = 0; r < n; ++r) {
        bool flagged = false;
        for (std::size_t i = 0; i < nchi; ++i) {
            if (std::abs(data.cols[i][r]) <= report.threshold) {
                ++report.small_values[i];
                flagged = true;
            }
            for (std::size_t j = i + 1; j < nchi; ++j)
                if (std::abs(data.cols[i][r] - data.cols[j][r]) <= report.threshold) {
                    ++report.close_pairs[i][j];
                    ++report.close_pairs[j][i];
                    flagged = true;
                }
        }
        if (flagged) continue;
        ++report.n_clean;
        std::size_t lead = 0;
        bool tie = false;
        for (std::size_t i = 1; i < nchi; ++i) {
            if (data.cols[i][r] > data.cols[lead][r]) {
                lead = i;
                tie = false;
            } else if (data.cols[i][r] == data.cols[lead][r]) {
                tie = true;  // kept at the lowest index
            }
        }
        if (tie) ++report.n_ties;
        ++report.argmax_counts[lead];
    }
    return report;
}

// ----------------------------------------------------------- value density

struct AValueReport {
    cplx a = 0.0;
    std::vector<double> delta_grid;
    std::vector<std::pair<double, double>> windows;  // (lo, hi] ordinate ranges
    std::vector<std::vector<double>> proportions;    // [window][delta]
    std::vector<std::size_t> window_totals;          // zeros per window
    std::vector<std::size_t> window_failures;        // evaluation failures per window
    DominanceReport dominance;
    std::vector<double> factorization_residuals;     // |F| / |c_lead L_lead| - 1, clean zeros
};

// Small-ball proportions of F(rho) = c_1 L(rho, chi_1) + ... + c_N L(rho, chi_N)
// around the target a, per ordinate window and ball radius; plus the leader
// bookkeeping and the per-zero residual of the leader factorization.
inline AValueReport avalue_proportion(const ZeroList& zeros, const std::vector<cplx>& coeffs,
                                      const std::vector<DirichletCharacter>& chis, cplx a,
                                      const std::vector<double>& delta_grid,
                                      const std::vector<std::pair<double, double>>& windows,
                                      LValueCache* cache = nullptr, int workers = 1) {
    if (coeffs.empty() || coeffs.size() != chis.size())
        throw std::invalid_argument("avalue_proportion: need equally many coefficients and characters");
    for (cplx c : coeffs)
        if (c == cplx(0.0, 0.0) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("avalue_proportion: coefficients must be nonzero and finite");
    for (const auto& chi : chis) detail::require_primitive_nonprincipal(chi, "avalue_proportion");
    if (delta_grid.empty()) throw std::invalid_argument("avalue_proportion: empty delta grid");
    for (double d : delta_grid)
        if (!(d > 0.0)) throw std::invalid_argument("avalue_proportion: deltas must be positive");
    if (windows.empty()) throw std::invalid_argument("avalue_proportion: no windows");
    for (const auto& w : windows)
        if (!(w.first < w.second)) throw std::invalid_argument("avalue_proportion: empty window");

    AValueReport report;
    report.a = a;
    report.delta_grid = delta_grid;
    report.windows = windows;

    const auto& g = zeros.ordinates;
    for (const auto& w : windows) {
        const auto lo = std::upper_bound(g.begin(), g.end(), w.first);
        const auto hi = std::upper_bound(g.begin(), g.end(), w.second);
        const std::size_t b = std::size_t(lo - g.begin());
        const std::size_t n = std::size_t(hi - lo);
        if (n == 0) throw std::invalid_argument("avalue_proportion: window holds no zeros");

        struct BallPartial {
            std::vector<std::size_t> hits;
            std::size_t failures = 0;
        };
        auto partials = map_chunks<BallPartial>(
            n, 64, unsigned(workers), [&](std::size_t, std::size_t pb, std::size_t pe) {
                BallPartial part;
                part.hits.assign(delta_grid.size(), 0);
                for (std::size_t i = pb; i < pe; ++i) {
                    cplx f = 0.0;
                    try {
                        neumaier_csum acc;
                        for (std::size_t j = 0; j < coeffs.size(); ++j)
                            acc.add(coeffs[j] * l_value_at_zero(chis[j], g[b + i], cache));
                        f = acc.value();
                    } catch (const numeric_error&) {
                        ++part.failures;
                        continue;
                    }
                    const double dist = std::abs(f - a);
                    for (std::size_t d = 0; d < delta_grid.size(); ++d)
                        if (dist <= delta_grid[d]) ++part.hits[d];
                }
                return part;
            });

        std::vector<double> props(delta_grid.size(), 0.0);
        std::size_t failures = 0;
        for (auto& part : partials) {
            for (std::size_t d = 0; d < delta_grid.size(); ++d)
                props[d] += double(part.hits[d]);
            failures += part.failures;
        }
        for (auto& p : props) p /= double(n);
        report.proportions.push_back(std::move(props));
        report.window_totals.push_back(n);
        report.window_failures.push_back(failures);
    }

    // Leader bookkeeping over everything up to the top window edge, plus the
    // residual of approximating |F| by its largest single term.
    double t_max = 0.0;
    for (const auto& w : windows) t_max = std::max(t_max, w.second);
    report.dominance = dominance_sets(zeros, chis, t_max, cache, workers);

    ZeroList capped = zeros;
    capped.ordinates.erase(
        std::upper_bound(capped.ordinates.begin(), capped.ordinates.end(), t_max),
        capped.ordinates.end());
    auto data = detail::log_l_columns(capped, chis, cache, workers);
    const std::size_t n_all = data.gammas.size();
    for (std::size_t r = 0; r < n_all; ++r) {
        bool flagged = false;
        for (std::size_t i = 0; i < chis.size() && !flagged; ++i) {
            if (std::abs(data.cols[i][r]) <= report.dominance.threshold) flagged = true;
            for (std::size_t j = i + 1; j < chis.size() && !flagged; ++j)
                if (std::abs(data.cols[i][r] - data.cols[j][r]) <= report.dominance.threshold)
                    flagged = true;
        }
        if (flagged) continue;
        std::size_t lead = 0;
        for (std::size_t i = 1; i < chis.size(); ++i)
            if (data.cols[i][r] > data.cols[lead][r]) lead = i;
        // Recompute F and the leading term from cached values.
        neumaier_csum acc;
        for (std::size_t j = 0; j < chis.size(); ++j)
            acc.add(coeffs[j] * l_value_at_zero(chis[j], data.gammas[r], cache));
        const double denom = std::abs(coeffs[lead]) * std::exp(data.cols[lead][r]);
        report.factorization_residuals.push_back(std::abs(acc.value()) / denom - 1.0);
    }
    return report;
}

}  // namespace lvdist
