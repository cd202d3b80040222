#pragma once

// Dirichlet characters with exact values: each chi(n) is a root of unity
// stored as a rational phase (angle in turns), so conjugation, products and
// orthogonality work without accumulated trig error.
//
// The unit group mod m is decomposed into cyclic factors with explicit
// generators: for 2^e (e >= 3) the pair (-1, 5) with orders (2, 2^{e-2}),
// for 2^2 the residue -1, and for each odd prime power the smallest
// primitive root. A character is the exponent vector of its values on those
// generators, and its label is the mixed-radix index of that vector, so
// label 0 is always the principal character. Characters are addressed as
// "m.label" in text form.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvdist/numeric.hpp"

namespace lvdist {

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

namespace detail {

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1, r = std::int64_t(m), nr = std::int64_t(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return std::uint64_t(t < 0 ? t + std::int64_t(m) : t);
}

inline std::uint32_t primitive_root_mod_p(std::uint32_t p) {
  if (p == 2) return 1;
  std::uint32_t phi = p - 1, n = phi;
  std::vector<std::uint32_t> qs;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      qs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) qs.push_back(n);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint32_t q : qs)
      if (powmod(g, phi / q, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root_mod_p: none found");
}

// Primitive root mod p^e for odd p; a root mod p works for p^e once it is
// not a root of unity of deficient order mod p^2.
inline std::uint64_t primitive_root_mod_pe(std::uint32_t p, std::uint32_t e) {
  std::uint64_t g = primitive_root_mod_p(p);
  if (e == 1) return g;
  std::uint64_t p2 = std::uint64_t(p) * p;
  if (powmod(g, p - 1, p2) == 1) g += p;
  return g;
}

}  // namespace detail

struct CyclicFactor {
  std::uint64_t prime_power;  // the factor q = p^e of m this generator acts on
  std::uint64_t gen;          // generator lifted mod m (== 1 on other factors)
  std::uint64_t order;
};

// Decomposition of (Z/mZ)^* with discrete-log tables per factor.
class UnitGroup {
 public:
  explicit UnitGroup(std::uint32_t m) : m_(m) {
    if (m == 0) throw std::domain_error("UnitGroup: modulus 0");
    if (m > (1u << 24)) throw std::domain_error("UnitGroup: modulus too large");
    std::uint32_t rest = m, two = 1;
    while (rest % 2 == 0) { rest /= 2; two *= 2; }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> local;  // (q, local gen)
    if (two >= 4) {
      if (two == 4) {
        local.emplace_back(4, 3);
      } else {
        local.emplace_back(two, two - 1);
        local.emplace_back(two, 5);
      }
    }
    for (std::uint32_t p = 3; std::uint64_t(p) * p <= rest; p += 2)
      if (rest % p == 0) {
        std::uint64_t q = 1;
        std::uint32_t e = 0;
        while (rest % p == 0) { rest /= p; q *= p; ++e; }
        local.emplace_back(q, detail::primitive_root_mod_pe(p, e));
      }
    if (rest > 1) local.emplace_back(rest, detail::primitive_root_mod_p(rest));

    std::size_t i2 = 0;
    for (auto [q, g] : local) {
      CyclicFactor f;
      f.prime_power = q;
      bool is_two_part = (q % 2 == 0);
      if (is_two_part && two >= 8)
        f.order = (i2++ == 0) ? 2 : two / 4;
      else if (is_two_part)
        f.order = 2;
      else {
        std::uint64_t p = smallest_prime(q);
        f.order = q / p * (p - 1);
      }
      f.gen = lift(g, q);
      factors_.push_back(f);
      dlog_.emplace_back(build_dlog(q, g, f.order));
    }
    phi_ = 1;
    for (auto& f : factors_) phi_ *= f.order;
  }

  std::uint32_t modulus() const { return m_; }
  std::uint64_t phi() const { return phi_; }
  const std::vector<CyclicFactor>& factors() const { return factors_; }

  bool coprime(std::uint64_t n) const { return std::gcd(n % m_, std::uint64_t(m_)) == 1; }

  // Exponent vector of n on the generators; requires gcd(n, m) = 1.
  std::vector<std::uint64_t> dlog(std::uint64_t n) const {
    if (!coprime(n)) throw std::domain_error("UnitGroup::dlog: not coprime");
    std::vector<std::uint64_t> out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t r = n % factors_[i].prime_power;
      out[i] = dlog_[i][std::size_t(r)];
    }
    // The 2^e (e >= 3) part shares one table keyed by both generators.
    return out;
  }

  static const UnitGroup& get(std::uint32_t m) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<UnitGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
      it = cache.emplace(m, std::make_unique<UnitGroup>(m)).first;
    return *it->second;
  }

 private:
  static std::uint64_t smallest_prime(std::uint64_t q) {
    for (std::uint64_t p = 2; p * p <= q; ++p)
      if (q % p == 0) return p;
    return q;
  }

  std::uint64_t lift(std::uint64_t a, std::uint64_t q) const {
    std::uint64_t r = m_ / q;
    if (r == 1) return a % m_;
    // x = a (mod q), x = 1 (mod r)
    std::uint64_t x = (a % q) * r % m_ * detail::inv_mod(r % q, q) % m_;
    x = (x + q * detail::inv_mod(q % r, r)) % m_;
    return x;
  }

  // Table over residues mod q mapping x -> exponent of the local generator.
  // For 2^e (e >= 3) the two factors index the same q; each table stores the
  // exponent of its own generator in the (-1, 5) decomposition.
  std::vector<std::uint64_t> build_dlog(std::uint64_t q, std::uint64_t g,
                                        std::uint64_t order) {
    std::vector<std::uint64_t> table(std::size_t(q), 0);
    if (q % 2 == 0 && q >= 8) {
      std::size_t which = dlog_.size();  // 0: exponent of -1, 1: exponent of 5
      // Decompose x = (-1)^s * 5^k mod 2^e.
      std::uint64_t e2 = q / 4;  // order of 5
      for (std::uint64_t k = 0, x = 1; k < e2; ++k, x = x * 5 % q) {
        std::uint64_t y = q - x;  // x * (-1)
        if (which == 0) {
          table[std::size_t(x)] = 0;
          table[std::size_t(y)] = 1;
        } else {
          table[std::size_t(x)] = k;
          table[std::size_t(y)] = k;
        }
      }
      return table;
    }
    std::uint64_t x = 1 % q;
    for (std::uint64_t k = 0; k < order; ++k, x = x * g % q) table[std::size_t(x)] = k;
    return table;
  }

  std::uint32_t m_;
  std::uint64_t phi_ = 1;
  std::vector<CyclicFactor> factors_;
  std::vector<std::vector<std::uint64_t>> dlog_;
};

// Exact phase of a character value: chi(n) = e^{2 pi i num/den}, or zero.
struct CharPhase {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool zero = false;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::uint32_t m, std::uint64_t label)
      : grp_(&UnitGroup::get(m)), label_(label) {
    if (label >= grp_->phi())
      throw std::domain_error("DirichletCharacter: label out of range");
    auto& fs = grp_->factors();
    exps_.resize(fs.size());
    std::uint64_t rest = label;
    for (std::size_t i = fs.size(); i-- > 0;) {
      exps_[i] = rest % fs[i].order;
      rest /= fs[i].order;
    }
  }

  std::uint32_t modulus() const { return grp_->modulus(); }
  std::uint64_t label() const { return label_; }
  const std::vector<std::uint64_t>& exponents() const { return exps_; }
  bool is_principal() const { return label_ == 0; }

  CharPhase phase(std::uint64_t n) const {
    CharPhase ph;
    if (!grp_->coprime(n)) {
      ph.zero = true;
      return ph;
    }
    if (grp_->factors().empty()) return ph;  // m = 1 or m = 2
    auto lg = grp_->dlog(n);
    // Sum of k_i * lg_i / d_i as an exact rational mod 1.
    std::int64_t den = 1;
    for (auto& f : grp_->factors()) den = std::lcm(den, std::int64_t(f.order));
    std::int64_t num = 0;
    auto& fs = grp_->factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      std::int64_t contrib = std::int64_t(exps_[i] * lg[i] % fs[i].order);
      num = (num + contrib * (den / std::int64_t(fs[i].order))) % den;
    }
    std::int64_t g = std::gcd(num, den);
    ph.num = num / g;
    ph.den = den / g;
    return ph;
  }

  cplx operator()(std::uint64_t n) const {
    CharPhase ph = phase(n);
    if (ph.zero) return {0.0, 0.0};
    switch (ph.den) {
      case 1: return {1.0, 0.0};
      case 2: return {-1.0, 0.0};
      case 4: return ph.num == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
      default: {
        double a = TWO_PI * double(ph.num) / double(ph.den);
        return {std::cos(a), std::sin(a)};
      }
    }
  }

  // 0 when chi(-1) = 1, 1 when chi(-1) = -1.
  int parity() const {
    if (modulus() <= 2) return 0;
    CharPhase ph = phase(modulus() - 1);
    if (ph.den == 1) return 0;
    if (ph.den == 2) return 1;
    throw std::logic_error("parity: chi(-1) not a square root of 1");
  }

  DirichletCharacter conjugate() const {
    auto& fs = grp_->factors();
    std::uint64_t lbl = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
      lbl = lbl * fs[i].order + (fs[i].order - exps_[i]) % fs[i].order;
    return {modulus(), lbl};
  }

  DirichletCharacter operator*(const DirichletCharacter& o) const {
    if (o.modulus() != modulus())
      throw std::domain_error("character product: moduli differ");
    auto& fs = grp_->factors();
    std::uint64_t lbl = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
      lbl = lbl * fs[i].order + (exps_[i] + o.exps_[i]) % fs[i].order;
    return {modulus(), lbl};
  }

  bool operator==(const DirichletCharacter& o) const {
    return modulus() == o.modulus() && label_ == o.label_;
  }

  // Smallest d | m with chi trivial on {n = 1 mod d, gcd(n, m) = 1}.
  std::uint32_t conductor() const {
    std::uint32_t m = modulus();
    for (std::uint32_t d = 1; d <= m; ++d) {
      if (m % d) continue;
      bool trivial = true;
      for (std::uint64_t n = 1; n < m; n += d) {
        if (!grp_->coprime(n)) continue;
        CharPhase ph = phase(n);
        if (ph.num != 0) { trivial = false; break; }
      }
      if (trivial) return d;
    }
    return m;
  }

  bool is_primitive() const { return conductor() == modulus(); }

  // The primitive character mod conductor() that induces this one.
  DirichletCharacter primitive_part() const {
    std::uint32_t f = conductor();
    const UnitGroup& gf = UnitGroup::get(f);
    std::uint64_t lbl = 0;
    for (auto& fac : gf.factors()) {
      // Find n = gen (mod f) with gcd(n, m) = 1; chi*(gen) = chi(n).
      std::uint64_t n = fac.gen;
      while (!grp_->coprime(n)) n += f;
      CharPhase ph = phase(n);
      if (ph.zero || std::int64_t(fac.order) % ph.den != 0)
        throw std::logic_error("primitive_part: phase does not fit factor");
      std::uint64_t k = std::uint64_t((ph.num % ph.den + ph.den) % ph.den) *
                        std::uint64_t(std::int64_t(fac.order) / ph.den);
      lbl = lbl * fac.order + k;
    }
    return {f, lbl};
  }

  // This character read mod a multiple m2 of the modulus.
  DirichletCharacter induced_to(std::uint32_t m2) const {
    if (m2 % modulus() != 0)
      throw std::domain_error("induced_to: target not a multiple of modulus");
    const UnitGroup& g2 = UnitGroup::get(m2);
    std::uint64_t lbl = 0;
    for (auto& fac : g2.factors()) {
      CharPhase ph = phase(fac.gen);
      if (ph.zero || std::int64_t(fac.order) % ph.den != 0)
        throw std::logic_error("induced_to: phase does not fit factor");
      std::uint64_t k = std::uint64_t((ph.num % ph.den + ph.den) % ph.den) *
                        std::uint64_t(std::int64_t(fac.order) / ph.den);
      lbl = lbl * fac.order + k;
    }
    return {m2, lbl};
  }

  cplx gauss_sum() const {
    std::uint32_t m = modulus();
    neumaier_csum acc;
    for (std::uint64_t a = 1; a <= m; ++a) {
      CharPhase ph = phase(a);
      if (ph.zero) continue;
      // chi(a) e^{2 pi i a / m} combined as one exact rational phase.
      std::int64_t den = std::lcm(ph.den, std::int64_t(m));
      std::int64_t num = (ph.num * (den / ph.den) + std::int64_t(a) * (den / std::int64_t(m))) % den;
      acc.add(cplx{std::cos(TWO_PI * double(num) / double(den)),
                   std::sin(TWO_PI * double(num) / double(den))});
    }
    return acc.value();
  }

 private:
  const UnitGroup* grp_;
  std::uint64_t label_;
  std::vector<std::uint64_t> exps_;
};

inline std::vector<DirichletCharacter> enumerate_characters(std::uint32_t m) {
  const UnitGroup& g = UnitGroup::get(m);
  std::vector<DirichletCharacter> out;
  out.reserve(std::size_t(g.phi()));
  for (std::uint64_t k = 0; k < g.phi(); ++k) out.emplace_back(m, k);
  return out;
}

// Parses the "m.label" text form.
inline DirichletCharacter parse_character(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= s.size())
    throw std::invalid_argument("character label must look like m.k");
  std::size_t used = 0;
  unsigned long m = std::stoul(s.substr(0, dot), &used);
  if (used != dot) throw std::invalid_argument("bad modulus in character label");
  unsigned long long k = std::stoull(s.substr(dot + 1), &used);
  if (used != s.size() - dot - 1)
    throw std::invalid_argument("bad index in character label");
  return {std::uint32_t(m), std::uint64_t(k)};
}

inline std::string character_name(const DirichletCharacter& chi) {
  return std::to_string(chi.modulus()) + "." + std::to_string(chi.label());
}

}  // namespace lvdist
