#pragma once

/**
 * @file factorize.hpp
 * @brief Prime signatures of nonzero rationals.
 *
 * Small factors are stripped by trial division against a sieve of the primes
 * below 10^6, which is built once on first use. Cofactors that survive are
 * split with Miller-Rabin and Pollard-Brent (native 64-bit arithmetic when
 * they fit, cpp_int otherwise).
 */

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "infodilog/rational.hpp"

namespace infodilog {

struct PrimeSignature {
  int sign = 1;
  std::map<BigInt, std::int64_t> exponents;

  Rational reconstruct() const {
    BigInt num = 1;
    BigInt den = 1;
    for (const auto& [p, e] : exponents) {
      BigInt pe = boost::multiprecision::pow(p, static_cast<unsigned>(e > 0 ? e : -e));
      if (e > 0) {
        num *= pe;
      } else {
        den *= pe;
      }
    }
    return Rational(sign < 0 ? BigInt(-num) : num, den);
  }

  friend bool operator==(const PrimeSignature&, const PrimeSignature&) = default;
};

namespace detail {

inline constexpr std::uint32_t kSieveLimit = 1'000'000;

inline std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(80'000);
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit n with this witness set.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::uint64_t pollard_brent_u64(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_u64(std::uint64_t n, std::int64_t mult, std::map<BigInt, std::int64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[BigInt(n)] += mult;
    return;
  }
  const std::uint64_t d = pollard_brent_u64(n);
  split_u64(d, mult, out);
  split_u64(n / d, mult, out);
}

inline BigInt pollard_rho_big(const BigInt& n) {
  if (n % 2 == 0) return BigInt(2);
  for (unsigned c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = boost::multiprecision::gcd(x > y ? BigInt(x - y) : BigInt(y - x), n);
    }
    if (d != n) return d;
  }
}

// Largest r with r^k <= n, by bisection.
inline BigInt integer_root(const BigInt& n, unsigned k) {
  BigInt lo = 1, hi = BigInt(1) << (boost::multiprecision::msb(n) / k + 1);
  while (lo < hi) {
    const BigInt mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, k) <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

inline void split_big(const BigInt& n, std::int64_t mult, std::map<BigInt, std::int64_t>& out) {
  if (n == 1) return;
  // rho is hopeless on p^k with a large p, so peel off perfect powers first.
  // Every prime factor left here exceeds the sieve limit (about 2^20).
  for (unsigned k = 2; 20 * k <= boost::multiprecision::msb(n) + 1; ++k) {
    const BigInt r = integer_root(n, k);
    if (boost::multiprecision::pow(r, k) == n) {
      split_big(r, mult * k, out);
      return;
    }
  }
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    split_u64(n.convert_to<std::uint64_t>(), mult, out);
    return;
  }
  if (boost::multiprecision::miller_rabin_test(n, 25)) {
    out[n] += mult;
    return;
  }
  const BigInt d = pollard_rho_big(n);
  split_big(d, mult, out);
  split_big(BigInt(n / d), mult, out);
}

// Adds mult * (exponent of p in n) to out[p] for every prime p | n, n > 0.
inline void factor_positive(BigInt n, std::int64_t mult, std::map<BigInt, std::int64_t>& out) {
  constexpr std::uint64_t kLimitSq = std::uint64_t{kSieveLimit} * kSieveLimit;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    std::uint64_t m = n.convert_to<std::uint64_t>();
    for (std::uint32_t p : small_primes()) {
      if (std::uint64_t{p} * p > m) break;
      if (m % p) continue;
      std::int64_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      out[BigInt(p)] += mult * e;
    }
    if (m > 1) {
      if (m < kLimitSq) {
        out[BigInt(m)] += mult;
      } else {
        split_u64(m, mult, out);
      }
    }
    return;
  }
  for (std::uint32_t p : small_primes()) {
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
      factor_positive(std::move(n), mult, out);
      return;
    }
    BigInt q, r;
    boost::multiprecision::divide_qr(n, BigInt(p), q, r);
    if (r != 0) continue;
    std::int64_t e = 0;
    while (r == 0) {
      n = q;
      ++e;
      boost::multiprecision::divide_qr(n, BigInt(p), q, r);
    }
    out[BigInt(p)] += mult * e;
  }
  split_big(n, mult, out);
}

}  // namespace detail

/// Sign and prime exponents of a nonzero rational; deterministic.
inline PrimeSignature factorize(const Rational& q) {
  if (q.is_zero()) throw DomainError("cannot factorize zero");
  PrimeSignature sig;
  sig.sign = q.sign();
  detail::factor_positive(q.sign() < 0 ? BigInt(-q.num()) : q.num(), 1, sig.exponents);
  detail::factor_positive(q.den(), -1, sig.exponents);
  std::erase_if(sig.exponents, [](const auto& kv) { return kv.second == 0; });
  return sig;
}

}  // namespace infodilog
