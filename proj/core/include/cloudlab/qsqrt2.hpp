#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cloudlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// An element p + q*sqrt(2) of the quadratic field Q(sqrt 2), with exact
/// rational parts.
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long long p) : p_(p) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational p, Rational q = Rational(0)) : p_(std::move(p)), q_(std::move(q)) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rational(0), Rational(1)); }

  /// Parses `R`, `R*r2`, `R+R*r2` or `R-R*r2`, where R is an optionally
  /// signed integer or int/int. A bare `r2` or `-r2` is also accepted.
  /// Throws std::invalid_argument on malformed input.
  static QSqrt2 parse(std::string_view text);

  const Rational& rational_part() const noexcept { return p_; }
  const Rational& sqrt2_part() const noexcept { return q_; }

  bool is_zero() const { return p_ == 0 && q_ == 0; }
  bool is_rational() const { return q_ == 0; }
  QSqrt2 conjugate() const { return QSqrt2(p_, -q_); }
  /// Field norm p^2 - 2q^2; zero only for zero.
  Rational norm() const { return p_ * p_ - 2 * q_ * q_; }
  /// Exact sign: -1, 0 or 1.
  int sign() const;
  double to_double() const;

  QSqrt2 operator-() const { return QSqrt2(-p_, -q_); }
  QSqrt2& operator+=(const QSqrt2& o);
  QSqrt2& operator-=(const QSqrt2& o);
  QSqrt2& operator*=(const QSqrt2& o);
  /// Throws std::domain_error on division by zero.
  QSqrt2& operator/=(const QSqrt2& o);

  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { return a /= b; }

  friend bool operator==(const QSqrt2& a, const QSqrt2& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const QSqrt2& a, const QSqrt2& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Renders in the same grammar parse() accepts.
  std::string to_string() const;

 private:
  Rational p_{0};
  Rational q_{0};
};

std::string rational_to_string(const Rational& r);

}  // namespace cloudlab
