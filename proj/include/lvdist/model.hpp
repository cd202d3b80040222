#pragma once
// Random Euler-product model: each prime p <= X^2 gets an i.i.d. uniform
// phase theta_p, and the randomized prime sum
//     P_L(theta) = sum_p (a_1 chi_1(p) + ... + a_N chi_N(p)) e^{2 pi i theta_p} / sqrt(p)
// stands in for the deterministic sum at zero ordinates.  The module
// provides sampling, the polar per-prime data (nu_p, beta_p), the variance
// Psi_L, exact moments via phase orthogonality, Bessel-product
// characteristic functions, a Monte Carlo cross-check, and the finite-T
// secondary correction term.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvdist/arith.hpp"
#include "lvdist/bessel.hpp"
#include "lvdist/characters.hpp"
#include "lvdist/lfunc.hpp"
#include "lvdist/numeric.hpp"

namespace lvdist {

// ------------------------------------------------------------------- types

// A model instance: nonzero real coefficients paired with distinct
// primitive nonprincipal characters, a cutoff X (primes run to X^2), and
// the seed all phase draws derive from.
struct ModelConfig {
    std::vector<double> coeffs;
    std::vector<DirichletCharacter> chis;
    double X = 100.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void validate_model(const ModelConfig& c, const char* who) {
    if (c.coeffs.empty() || c.coeffs.size() != c.chis.size())
        throw std::invalid_argument(std::string(who) +
                                    ": coefficient and character lists must have equal nonzero length");
    for (double a : c.coeffs)
        if (a == 0.0 || !std::isfinite(a))
            throw std::invalid_argument(std::string(who) + ": coefficients must be finite and nonzero");
    for (const DirichletCharacter& chi : c.chis) require_primitive_nonprincipal(chi, who);
    for (std::size_t i = 0; i < c.chis.size(); ++i)
        for (std::size_t j = i + 1; j < c.chis.size(); ++j)
            if (c.chis[i].modulus() == c.chis[j].modulus() &&
                c.chis[i].label() == c.chis[j].label())
                throw std::invalid_argument(std::string(who) + ": characters must be pairwise distinct");
    if (!(c.X >= 0.0) || !std::isfinite(c.X))
        throw std::invalid_argument(std::string(who) + ": X must be finite and nonnegative");
}

}  // namespace detail

inline ModelConfig make_model_config(std::vector<double> coeffs,
                                     std::vector<DirichletCharacter> chis, double X,
                                     std::uint64_t seed) {
    ModelConfig c;
    c.coeffs = std::move(coeffs);
    c.chis = std::move(chis);
    c.X = X;
    c.seed = seed;
    detail::validate_model(c, "make_model_config");
    return c;
}

// Polar form of the combined character value at one prime:
// nu e^{2 pi i beta} = a_1 chi_1(p) + ... + a_N chi_N(p), beta in [0, 1),
// with beta = 0 whenever nu = 0.
struct NuBeta {
    std::uint64_t p = 0;
    double nu = 0.0;
    double beta = 0.0;
};

namespace detail {

// Polar decomposition without the primality/domain checks of the public op.
// Sums below 1e-13 * max(1, sum |a_j|) collapse to nu = 0: character values
// are roots of unity evaluated in floating point, so an exact cancellation
// can leave a ~1e-16 remnant whose phase is noise.
inline NuBeta nu_beta_core(std::uint64_t p, const ModelConfig& config) {
    cplx s = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < config.coeffs.size(); ++j) {
        s += config.coeffs[j] * config.chis[j](p);
        scale += std::fabs(config.coeffs[j]);
    }
    NuBeta out;
    out.p = p;
    out.nu = std::abs(s);
    if (out.nu <= 1e-13 * std::max(1.0, scale)) {
        out.nu = 0.0;
        out.beta = 0.0;
        return out;
    }
    double b = std::arg(s) / TWO_PI;
    if (b < 0.0) b += 1.0;
    if (b >= 1.0) b = 0.0;
    out.beta = b;
    return out;
}

// Per-prime model data with the zero-amplitude primes dropped; those
// contribute nothing to sums and a unit factor to products.
struct ModelTerm {
    std::uint64_t p;
    double nu;
    double beta;
    double inv_sqrt;
};

inline std::vector<ModelTerm> model_terms(const ModelConfig& config, const char* who) {
    validate_model(config, who);
    std::vector<ModelTerm> out;
    const double cut = config.X * config.X;
    if (cut < 2.0) return out;
    for (std::uint32_t p : primes_up_to(std::uint64_t(cut))) {
        const NuBeta nb = nu_beta_core(p, config);
        if (nb.nu == 0.0) continue;
        out.push_back({p, nb.nu, nb.beta, 1.0 / std::sqrt(double(p))});
    }
    return out;
}

}  // namespace detail

inline NuBeta nu_beta(std::uint64_t p, const ModelConfig& config) {
    detail::validate_model(config, "nu_beta");
    if (double(p) > config.X * config.X)
        throw std::invalid_argument("nu_beta: p exceeds the cutoff X^2");
    if (p < 2) throw std::invalid_argument("nu_beta: p must be prime");
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("nu_beta: p must be prime");
    return detail::nu_beta_core(p, config);
}

// ------------------------------------------------------------------ phases

// One joint draw of phases, indexed by the primes up to X^2.  Each phase is
// a pure function of (seed, sample_index, p), so draws are reproducible and
// independent across samples without shared RNG state.
struct PhaseAssignment {
    std::vector<std::uint64_t> primes;  // ascending
    std::vector<double> theta;          // matching, each in [0, 1)

    double at_prime(std::uint64_t p) const {
        auto it = std::lower_bound(primes.begin(), primes.end(), p);
        if (it == primes.end() || *it != p)
            throw std::invalid_argument("PhaseAssignment: prime outside domain");
        return theta[std::size_t(it - primes.begin())];
    }

    // Multiplicative extension theta_{mn} = theta_m + theta_n (mod 1):
    // the phase of n is sum_p e_p theta_p over the factorization of n.
    double at(std::uint64_t n) const {
        if (n == 0) throw std::invalid_argument("PhaseAssignment: n must be positive");
        double sum = 0.0;
        std::uint64_t rest = n;
        for (std::size_t i = 0; i < primes.size() && rest > 1; ++i) {
            const std::uint64_t p = primes[i];
            while (rest % p == 0) {
                rest /= p;
                sum += theta[i];
            }
        }
        if (rest > 1)
            throw std::invalid_argument("PhaseAssignment: n has a prime factor outside the domain");
        return sum - std::floor(sum);
    }
};

inline PhaseAssignment draw_phases(const ModelConfig& config, std::uint64_t sample_index) {
    detail::validate_model(config, "draw_phases");
    PhaseAssignment out;
    const double cut = config.X * config.X;
    if (cut < 2.0) return out;
    for (std::uint32_t p : primes_up_to(std::uint64_t(cut))) {
        out.primes.push_back(p);
        out.theta.push_back(u01(counter_rng(config.seed, sample_index, p)));
    }
    return out;
}

// ---------------------------------------------------------------- sampling

// n_samples independent draws of P_L(theta).  Sample i uses phases
// theta_p = u01(counter_rng(seed, i, p)), so the stream is deterministic
// and any subrange can be regenerated in isolation.
inline std::vector<cplx> sample_P_L(const ModelConfig& config, std::uint64_t n_samples,
                                    unsigned workers = 1) {
    if (n_samples < 1) throw std::invalid_argument("sample_P_L: n_samples must be at least 1");
    const auto terms = detail::model_terms(config, "sample_P_L");
    auto partials = map_chunks<std::vector<cplx>>(
        n_samples, 4096, workers, [&](std::size_t, std::size_t b, std::size_t e) {
            std::vector<cplx> vals;
            vals.reserve(e - b);
            for (std::size_t i = b; i < e; ++i) {
                neumaier_csum acc;
                for (const detail::ModelTerm& t : terms) {
                    const double th = u01(counter_rng(config.seed, i, t.p));
                    const double ang = TWO_PI * (th + t.beta);
                    acc.add(cplx(t.nu * t.inv_sqrt * std::cos(ang),
                                 t.nu * t.inv_sqrt * std::sin(ang)));
                }
                vals.push_back(acc.value());
            }
            return vals;
        });
    std::vector<cplx> out;
    out.reserve(n_samples);
    for (auto& part : partials)
        for (cplx v : part) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------- variance

// Psi_L = sum_{p <= X^2} nu_p^2 / p, the exact variance of P_L(theta)
// (twice the variance of its real part).
inline double psi_L(const ModelConfig& config) {
    const auto terms = detail::model_terms(config, "psi_L");
    neumaier_sum acc;
    for (const detail::ModelTerm& t : terms) acc.add(t.nu * t.nu / double(t.p));
    return acc.value();
}

// ----------------------------------------------------------- exact moments

// Exact k-th moment of Re P_L(theta) over the phases.  Expanding
// (z + conj z)^k / 2^k and integrating, a term with j forward factors
// p_1...p_j and k-j conjugate factors q_1...q_{k-j} survives only when the
// two prime multisets coincide, which forces j = k - j.  Odd moments are
// therefore exactly 0, and for k = 2j the moment is
//     C(2j, j) / 4^j * sum over multisets {p_1 <= ... <= p_j}
//                      of b_j^2 * (nu_{p_1}^2 ... nu_{p_j}^2) / (p_1 ... p_j)
// with b_j the number of distinct orderings of the multiset.  Enumeration
// is by nondecreasing prime tuples; the work is C(P + j - 1, j) leaves for
// P admissible primes, so large cutoffs pair with small k.
inline double exact_moment(int k, const ModelConfig& config) {
    if (k < 0) throw std::invalid_argument("exact_moment: k must be nonnegative");
    if (k > 8)
        throw std::invalid_argument("exact_moment: k > 8 refused; use the Monte Carlo path");
    const auto terms = detail::model_terms(config, "exact_moment");
    if (k == 0) return 1.0;
    if (k % 2 == 1) return 0.0;
    const int j = k / 2;

    // Refuse enumerations that would not finish interactively.
    const double p_count = double(terms.size());
    double leaves = 1.0;
    for (int i = 0; i < j; ++i) leaves = leaves * (p_count + i) / double(i + 1);
    if (leaves > 1e8)
        throw std::invalid_argument(
            "exact_moment: multiset enumeration too large; shrink X or use the Monte Carlo path");

    neumaier_sum acc;
    std::vector<std::size_t> idx(static_cast<std::size_t>(j), 0);
    const double bj_full = double(factorial_u64(unsigned(j)));

    // Depth-first walk over nondecreasing index tuples.
    std::size_t level = 0;
    idx[0] = 0;
    while (true) {
        if (idx[level] == terms.size()) {
            if (level == 0) break;
            --level;
            ++idx[level];
            continue;
        }
        if (level + 1 < std::size_t(j)) {
            ++level;
            idx[level] = idx[level - 1];
            continue;
        }
        // Leaf: multiset terms[idx[0]] <= ... <= terms[idx[j-1]].
        double kappa2 = 1.0, n_inv = 1.0, denom = 1.0;
        std::size_t run = 1;
        for (std::size_t t = 0; t < std::size_t(j); ++t) {
            const detail::ModelTerm& mt = terms[idx[t]];
            kappa2 *= mt.nu * mt.nu;
            n_inv /= double(mt.p);
            if (t > 0) {
                run = (idx[t] == idx[t - 1]) ? run + 1 : 1;
                denom *= double(run);
            }
        }
        const double b = bj_full / denom;
        acc.add(b * b * kappa2 * n_inv);
        ++idx[level];
    }

    const double scale = binomial(unsigned(k), unsigned(j)) / std::pow(4.0, double(j));
    return scale * acc.value();
}

// --------------------------------------------------- characteristic function

// Exact characteristic function of Re P_L(theta):
//     E exp(i omega Re P_L) = prod_{p <= X^2} J_0(omega nu_p / sqrt p).
// Real, even in omega, and confined to [-1, 1].
inline double char_fn_model(double omega, const ModelConfig& config) {
    if (!std::isfinite(omega)) throw std::invalid_argument("char_fn_model: omega must be finite");
    const auto terms = detail::model_terms(config, "char_fn_model");
    double prod = 1.0;
    for (const detail::ModelTerm& t : terms) {
        prod *= bessel_J(0, omega * t.nu * t.inv_sqrt);
        if (prod == 0.0) break;
    }
    return prod;
}

// Finite-T correction to the zero-sum Fourier transform: with
// J_l(q) = integral of exp(i omega Re P_L(theta)) e^{2 pi i l theta_q},
// the correction is
//     -(T/pi) sum_{q <= X^2} sum_{1 <= l <= K} (log q / q^{l/2})
//                                              * (J_l(q) + J_{-l}(q)) / 2
// and the bracket evaluates in closed form to
//     i^l cos(2 pi l beta_q) J_l(omega nu_q / sqrt q) prod_{p != q} J_0(...).
// Odd l makes that purely imaginary, so the returned real part keeps the
// even orders with sign (-1)^{l/2}.  Orders beyond 40 sit below 1e-12 by
// the q^{-l/2} decay and are skipped.
inline double secondary_term(double omega, const ModelConfig& config, double T, int K) {
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("secondary_term: omega must be finite and nonnegative");
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("secondary_term: T must be finite and positive");
    if (K < 1) throw std::invalid_argument("secondary_term: K must be at least 1");
    const int k_cap = std::min(K, 40);
    const auto terms = detail::model_terms(config, "secondary_term");
    const std::size_t n = terms.size();
    if (n == 0) return 0.0;

    // prod_{p != q} J_0 via prefix/suffix products (no division: J_0 has
    // real zeros).
    std::vector<double> j0(n), prefix(n), suffix(n);
    for (std::size_t i = 0; i < n; ++i)
        j0[i] = bessel_J(0, omega * terms[i].nu * terms[i].inv_sqrt);
    double run = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i] = run;
        run *= j0[i];
    }
    run = 1.0;
    for (std::size_t i = n; i-- > 0;) {
        suffix[i] = run;
        run *= j0[i];
    }

    neumaier_sum acc;
    for (std::size_t qi = 0; qi < n; ++qi) {
        const detail::ModelTerm& t = terms[qi];
        const double z = omega * t.nu * t.inv_sqrt;
        const double others = prefix[qi] * suffix[qi];
        if (others == 0.0) continue;
        neumaier_sum inner;
        const double inv_q = 1.0 / double(t.p);
        double q_pow = inv_q;  // q^{-l/2} at l = 2
        for (int l = 2; l <= k_cap; l += 2) {
            const double sign = (l % 4 == 0) ? 1.0 : -1.0;
            inner.add(sign * std::cos(TWO_PI * double(l) * t.beta) * bessel_J(l, z) * q_pow);
            q_pow *= inv_q;
        }
        acc.add(std::log(double(t.p)) * inner.value() * others);
    }
    return -(T / PI) * acc.value();
}

// ------------------------------------------------------------- Monte Carlo

struct McCharFn {
    double estimate = 0.0;       // mean of cos(omega Re P_L)
    double std_error = 0.0;
    double imag_mean = 0.0;      // mean of sin(omega Re P_L); ~0 by symmetry
    double imag_std_error = 0.0;
};

// Sample-mean estimate of the characteristic function at omega, using the
// same deterministic phase stream as sample_P_L.
inline McCharFn mc_char_fn(double omega, const ModelConfig& config, std::uint64_t n_samples,
                           unsigned workers = 1) {
    if (n_samples < 1000)
        throw std::invalid_argument("mc_char_fn: n_samples must be at least 1000");
    const auto samples = sample_P_L(config, n_samples, workers);
    neumaier_sum sum_c, sum_s;
    for (cplx v : samples) {
        sum_c.add(std::cos(omega * v.real()));
        sum_s.add(std::sin(omega * v.real()));
    }
    const double n = double(n_samples);
    McCharFn out;
    out.estimate = sum_c.value() / n;
    out.imag_mean = sum_s.value() / n;
    neumaier_sum var_c, var_s;
    for (cplx v : samples) {
        const double dc = std::cos(omega * v.real()) - out.estimate;
        const double ds = std::sin(omega * v.real()) - out.imag_mean;
        var_c.add(dc * dc);
        var_s.add(ds * ds);
    }
    out.std_error = std::sqrt(var_c.value() / (n - 1.0) / n);
    out.imag_std_error = std::sqrt(var_s.value() / (n - 1.0) / n);
    return out;
}

}  // namespace lvdist
