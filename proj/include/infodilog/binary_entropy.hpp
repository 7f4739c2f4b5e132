#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "infodilog/errors.hpp"

namespace infodilog {

/// Logarithm base for entropy values. Natural log unless stated otherwise.
class LogBase {
 public:
  constexpr LogBase() = default;

  static LogBase e() { return LogBase(); }
  static LogBase two() { return custom(2.0, "2"); }
  static LogBase ten() { return custom(10.0, "10"); }

  static LogBase custom(double base, std::string label = {}) {
    if (!(base > 1.0) || !std::isfinite(base)) {
      throw InputError("logarithm base must be a finite real > 1");
    }
    LogBase b;
    b.base_ = base;
    b.ln_base_ = std::log(base);
    b.label_ = label.empty() ? std::to_string(base) : std::move(label);
    return b;
  }

  // "e", "2", "10" or any real > 1.
  static LogBase parse(const std::string& text) {
    if (text == "e") return e();
    if (text == "2") return two();
    if (text == "10") return ten();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw InputError("malformed logarithm base '" + text + "'");
    }
    if (used != text.size()) throw InputError("malformed logarithm base '" + text + "'");
    return custom(v, text);
  }

  double value() const { return base_; }
  const std::string& label() const { return label_; }

  // Converts a quantity measured in nats into this base.
  double from_nats(double nats) const { return nats / ln_base_; }

 private:
  double base_ = std::numbers::e;
  double ln_base_ = 1.0;
  std::string label_ = "e";
};

namespace detail {

// -x log|x| - (1-x) log|1-x| in nats, for |x| <= 1/2.
inline double h_small(double x) { return -x * std::log(std::fabs(x)) - (1.0 - x) * std::log1p(-x); }

}  // namespace detail

/// H(p) = -p log|p| - (1-p) log|1-p| on all of R, with H(0) = H(1) = 0.
inline double h_extended(double p, const LogBase& base = {}) {
  if (p == 0.0 || p == 1.0) return 0.0;
  double nats = 0.0;
  // H(p) = H(1-p), so fold onto x <= 1/2.
  const double x = p > 0.5 ? 1.0 - p : p;
  if (x >= -0.5) {
    nats = x == 0.0 ? 0.0 : detail::h_small(x);
  } else {
    // y = 1 - x > 3/2: H(y) = -log y + (y - 1) log1p(-1/y).
    const double y = p > 0.5 ? p : 1.0 - p;
    nats = -std::log(y) + (y - 1.0) * std::log1p(-1.0 / y);
  }
  return base.from_nats(nats);
}

}  // namespace infodilog
