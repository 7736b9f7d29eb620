#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace hcx {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (canonical zero is 0/1).
class Rat {
 public:
  Rat() = default;

  template <std::integral T>
  Rat(T v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rat(long num, long den);

  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses `[+-]int` or `[+-]p/q` with q > 0. Throws Error(SyntaxError).
  static Rat parse(std::string_view text);

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  Rat operator-() const { return Rat(mpq_class(-q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Rat abs() const { return Rat(mpq_class(::abs(q_))); }

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  double to_double() const { return q_.get_d(); }
  const mpq_class& raw() const { return q_; }

  /// Canonical `p` or `p/q` form.
  std::string str() const;

  std::size_t hash() const;

 private:
  mpq_class q_{0};
};

inline Rat abs(const Rat& r) { return r.abs(); }
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

/// 2^-k, used for iteration tolerances.
Rat pow2_neg(unsigned k);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace hcx

template <>
struct std::hash<hcx::Rat> {
  std::size_t operator()(const hcx::Rat& r) const noexcept { return r.hash(); }
};
