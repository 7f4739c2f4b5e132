#pragma once

// Seeded samplers. Every trial draws from its own generator derived from
// (seed, stream, index), so results do not depend on trial order.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "infodilog/rational.hpp"

namespace infodilog {

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    gen_.seed(seq);
  }

  std::mt19937_64& engine() { return gen_; }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  /// n/d with n in [-max_num, max_num], d in [1, max_den].
  Rational rational(std::int64_t max_num = 200, std::int64_t max_den = 200) {
    const std::int64_t n = integer(-max_num, max_num);
    const std::int64_t d = integer(1, max_den);
    return Rational(BigInt(n), BigInt(d));
  }

  /// Redraws until ok(value) holds.
  template <class Pred>
  Rational rational_where(Pred ok, std::int64_t max_num = 200, std::int64_t max_den = 200) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      Rational r = rational(max_num, max_den);
      if (ok(r)) return r;
    }
    throw std::runtime_error("rejection sampling gave up");
  }

  /// Nonzero rational outside {0, 1}.
  Rational off_unit() {
    return rational_where([](const Rational& r) { return !r.is_zero() && !r.is_one(); });
  }

  Rational nonzero() {
    return rational_where([](const Rational& r) { return !r.is_zero(); });
  }

  /// Exact probability vector of length n with positive entries.
  std::vector<Rational> distribution(std::size_t n, std::int64_t max_weight = 200) {
    std::vector<BigInt> w(n);
    BigInt total = 0;
    for (auto& x : w) {
      x = integer(1, max_weight);
      total += x;
    }
    std::vector<Rational> out;
    out.reserve(n);
    for (const auto& x : w) out.emplace_back(x, total);
    return out;
  }

  /// Exact n x m probability table with positive entries.
  std::vector<std::vector<Rational>> table(std::size_t n, std::size_t m, std::int64_t max_weight = 200) {
    auto flat = distribution(n * m, max_weight);
    std::vector<std::vector<Rational>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].assign(flat.begin() + i * m, flat.begin() + (i + 1) * m);
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace infodilog
