#pragma once

// Shared numeric machinery: compensated summation, a deterministic chunked
// map-reduce, a counter-based uniform RNG, complex log-gamma, and the
// Bernoulli coefficients used by the Euler-Maclaurin evaluators.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace lvdist {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846264338327950288;
inline constexpr double TWO_PI = 2.0 * PI;

// ------------------------------------------------------------------ errors

// A query fell outside the window a dataset actually covers.
struct coverage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation finished but failed its own consistency check
// (count mismatch, failed validation, out-of-band residual).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- summation

// Neumaier's variant of Kahan summation: the carry also absorbs the error
// when the incoming term dominates the running sum.
struct neumaier_sum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct neumaier_csum {
  neumaier_sum re, im;

  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// ------------------------------------------------- deterministic map-reduce

inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Splits [0, n) into fixed-size chunks, maps each chunk to a partial value,
// and returns the partials indexed by chunk. The caller folds them in chunk
// order, so the result is independent of the worker count and of thread
// scheduling. map(chunk_index, begin, end) -> Partial.
template <class Partial, class Map>
std::vector<Partial> map_chunks(std::size_t n, std::size_t chunk_size,
                                unsigned workers, Map map) {
  if (chunk_size == 0) throw std::invalid_argument("map_chunks: chunk_size == 0");
  std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<Partial> partials(n_chunks);
  if (n_chunks == 0) return partials;

  auto run = [&](std::size_t ci) {
    std::size_t b = ci * chunk_size;
    std::size_t e = std::min(n, b + chunk_size);
    partials[ci] = map(ci, b, e);
  };

  if (workers <= 1 || n_chunks == 1) {
    for (std::size_t ci = 0; ci < n_chunks; ++ci) run(ci);
    return partials;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t ci = next.fetch_add(1);
      if (ci >= n_chunks) return;
      run(ci);
    }
  };
  std::vector<std::thread> pool;
  unsigned n_workers = std::min<std::size_t>(workers, n_chunks);
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return partials;
}

// Compensated sum of map(i) over [0, n), folded in chunk order.
template <class Map>
double sum_indexed(std::size_t n, std::size_t chunk_size, unsigned workers,
                   Map map) {
  auto partials = map_chunks<double>(
      n, chunk_size, workers, [&](std::size_t, std::size_t b, std::size_t e) {
        neumaier_sum acc;
        for (std::size_t i = b; i < e; ++i) acc.add(map(i));
        return acc.value();
      });
  neumaier_sum total;
  for (double p : partials) total.add(p);
  return total.value();
}

template <class Map>
cplx csum_indexed(std::size_t n, std::size_t chunk_size, unsigned workers,
                  Map map) {
  auto partials = map_chunks<cplx>(
      n, chunk_size, workers, [&](std::size_t, std::size_t b, std::size_t e) {
        neumaier_csum acc;
        for (std::size_t i = b; i < e; ++i) acc.add(map(i));
        return acc.value();
      });
  neumaier_csum total;
  for (cplx p : partials) total.add(p);
  return total.value();
}

// -------------------------------------------------------- counter-based RNG

// SplitMix64 finalizer. Each draw is a pure function of (seed, stream,
// counter), so parallel consumers never share state.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) {
  std::uint64_t x = mix64(seed + 0x9e3779b97f4a7c15ULL);
  x = mix64(x ^ (stream + 0xbf58476d1ce4e5b9ULL));
  x = mix64(x ^ (counter + 0x94d049bb133111ebULL));
  return x;
}

// Uniform in [0, 1) with 53 random bits.
inline double u01(std::uint64_t r) { return double(r >> 11) * 0x1.0p-53; }

// -------------------------------------------------------- normal distribution

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(TWO_PI);
}

// -------------------------------------------------------------- combinatorics

inline std::uint64_t factorial_u64(unsigned n) {
  if (n > 20) throw std::domain_error("factorial_u64: n > 20 overflows");
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return std::round(r);
}

// --------------------------------------------------------------- Bernoulli

// B_{2k} for k = 1..15 as exact rationals.
inline double bernoulli_2k(unsigned k) {
  static const double num[] = {1.0,      -1.0,      1.0,    -1.0,        5.0,
                               -691.0,   7.0,       -3617.0, 43867.0,    -174611.0,
                               854513.0, -236364091.0, 8553103.0, -23749461029.0,
                               8615841276005.0};
  static const double den[] = {6.0,   30.0, 42.0, 30.0, 66.0,
                               2730.0, 6.0,  510.0, 798.0, 330.0,
                               138.0,  2730.0, 6.0,  870.0, 14322.0};
  if (k < 1 || k > 15) throw std::domain_error("bernoulli_2k: k out of range");
  return num[k - 1] / den[k - 1];
}

// ------------------------------------------------------------- log-gamma

// Principal log-gamma for Re z > 0: Stirling's series after shifting the
// argument so |z| is large enough for the asymptotic tail.
inline cplx log_gamma(cplx z) {
  if (!(z.real() > 0.0))
    throw std::domain_error("log_gamma: requires Re z > 0");
  cplx shift_log = 0.0;
  // Raise the argument until Stirling converges fast: |z| >= 12.
  while (std::abs(z) < 12.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  cplx inv = 1.0 / z;
  cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (unsigned k = 1; k <= 10; ++k) {
    series += bernoulli_2k(k) / double(2 * k * (2 * k - 1)) * p;
    p *= inv2;
  }
  cplx lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(TWO_PI) + series;
  return lg - shift_log;
}

}  // namespace lvdist
