#pragma once

// Exact rationals. Every concrete value the engine manipulates (endpoints,
// moves, bounds) is a Rat; there is no floating point in the core.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cantor {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long n, long d);
  Rat(const BigInt& n, const BigInt& d);
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses the wire form "num/den" (optional leading '-'). Rejects anything
  /// that is not already in lowest terms, a zero or negative denominator,
  /// decimal points, and a missing slash.
  static Rat parse(std::string_view s);

  std::string str() const;

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

enum class Ordering { Less, Equal, Greater };

Ordering rat_cmp(const Rat& x, const Rat& y);

Rat midpoint(const Rat& a, const Rat& b);

/// (p+r)/(q+s) for normalized a = p/q, b = r/s. Lies strictly between a and b
/// when a < b.
Rat mediant(const Rat& a, const Rat& b);

/// 2^k as a Rat.
Rat pow2(unsigned k);

/// 1 / 2^k.
Rat inv_pow2(unsigned k);

}  // namespace cantor

template <>
struct std::hash<cantor::Rat> {
  std::size_t operator()(const cantor::Rat& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
