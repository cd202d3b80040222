#pragma once

// Prime sieves, the von Mangoldt function, the tapered cutoff weight used by
// the truncated prime-sum approximations, and the prime-reciprocal sum.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lvdist/numeric.hpp"

namespace lvdist {

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  if (n > 0xFFFFFFFFull) throw std::domain_error("primes_up_to: limit too large");
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (!comp[i])
      for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  for (std::uint64_t i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(std::uint32_t(i));
  return out;
}

// Smallest-prime-factor table; factorization in O(log n) lookups.
struct PrimeTable {
  std::uint32_t limit;
  std::vector<std::uint32_t> spf;
  std::vector<std::uint32_t> primes;

  explicit PrimeTable(std::uint32_t lim) : limit(lim), spf(std::size_t(lim) + 1, 0) {
    for (std::uint32_t i = 2; i <= lim; ++i) {
      if (spf[i] == 0) {
        spf[i] = i;
        primes.push_back(i);
      }
      for (std::uint32_t p : primes) {
        if (p > spf[i] || std::uint64_t(p) * i > lim) break;
        spf[std::size_t(p) * i] = p;
      }
    }
  }

  bool is_prime(std::uint32_t n) const {
    if (n < 2 || n > limit) return false;
    return spf[n] == n;
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> factor(std::uint32_t n) const {
    if (n == 0 || n > limit) throw std::domain_error("PrimeTable::factor: out of range");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    while (n > 1) {
      std::uint32_t p = spf[n], e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
    return out;
  }
};

// log p when n = p^k, else 0.
inline double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw std::domain_error("von_mangoldt: n == 0");
  if (n == 1) return 0.0;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(double(p)) : 0.0;
  }
  return std::log(double(n));  // n itself prime
}

// Tapered cutoff: 1 on [1, X], log(X^2/n)/log X on (X, X^2), 0 beyond.
// Evaluated on log n so X^2 is never formed.
inline double weight_w(double X, std::uint64_t n) {
  if (!(X >= 4.0)) throw std::domain_error("weight_w: X < 4");
  if (n == 0) throw std::domain_error("weight_w: n == 0");
  double ln = std::log(double(n));
  double lX = std::log(X);
  if (ln <= lX) return 1.0;
  if (ln >= 2.0 * lX) return 0.0;
  return 2.0 - ln / lX;
}

inline double lambda_X(double X, std::uint64_t n) {
  double w = weight_w(X, n);
  return w == 0.0 ? 0.0 : von_mangoldt(n) * w;
}

// Sum of 1/p over primes p <= Y; 0 below the first prime.
inline double psi(double Y) {
  if (Y < 2.0) return 0.0;
  auto ps = primes_up_to(std::uint64_t(Y));
  neumaier_sum acc;
  for (std::uint32_t p : ps) acc.add(1.0 / double(p));
  return acc.value();
}

}  // namespace lvdist
