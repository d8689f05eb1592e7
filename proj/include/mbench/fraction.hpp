#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace mbench {

// Exact rational for the decimal parameters (heterogeneity h, intensity q).
// Grid values are decimals like 0.3, and expressions such as floor(h * bmax)
// must not be evaluated in binary floating point: 0.3 * 1080 rounds to one
// ulp below 324 and floors to 323. All floor/round/remainder arithmetic on
// these parameters is therefore done on int64 numerator/denominator pairs.
class Fraction {
 public:
  constexpr Fraction() = default;

  Fraction(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ <= 0) throw std::invalid_argument("Fraction: denominator must be positive");
    if (num_ < 0) throw std::invalid_argument("Fraction: negative value");
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  // Snaps a double to the nearest rational with up to nine decimal digits,
  // so that values parsed from decimal text are recovered exactly.
  static Fraction from_decimal(double x) {
    if (!(x >= 0.0) || !(x <= 4.0e9)) throw std::invalid_argument("Fraction: value out of range");
    return Fraction(static_cast<std::int64_t>(std::llround(x * 1e9)), 1'000'000'000);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }

  Fraction halved() const { return Fraction(num_, 2 * den_); }

  // floor(f * m) for m >= 0
  std::int64_t floor_scaled(std::int64_t m) const { return num_ * m / den_; }

  // numerator of the fractional part of f * m, on the common denominator;
  // comparable across calls with the same fraction
  std::int64_t remainder_scaled(std::int64_t m) const { return num_ * m % den_; }

  // round-half-up(f * m) for m >= 0
  std::int64_t round_scaled(std::int64_t m) const { return (2 * num_ * m + den_) / (2 * den_); }

  friend bool operator==(const Fraction&, const Fraction&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace mbench
