#include "cloudlab/qsqrt2.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cloudlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Unsigned integer or int/int.
Rational parse_unsigned_rational(std::string_view s, std::string_view whole) {
  const auto slash = s.find('/');
  auto fail = [&] { throw std::invalid_argument("malformed scalar '" + std::string(whole) + "'"); };
  if (slash == std::string_view::npos) {
    if (!all_digits(s)) fail();
    return Rational(BigInt(std::string(s)));
  }
  auto num = s.substr(0, slash);
  auto den = s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) fail();
  BigInt d(std::string{den});
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
  return Rational(BigInt(std::string(num)), d);
}

// Optionally signed R, or R*r2, or bare r2.
QSqrt2 parse_term(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  QSqrt2 value;
  constexpr std::string_view kRoot = "r2";
  if (s == kRoot) {
    value = QSqrt2::sqrt2();
  } else if (s.size() > 3 && s.substr(s.size() - 3) == "*r2") {
    value = QSqrt2(Rational(0), parse_unsigned_rational(s.substr(0, s.size() - 3), whole));
  } else {
    value = QSqrt2(parse_unsigned_rational(s, whole));
  }
  return negative ? -value : value;
}

}  // namespace

QSqrt2 QSqrt2::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) throw std::invalid_argument("empty scalar");
  std::string_view s = compact;
  // The split point is a sign after the first character that is not the
  // sign of an exponent; exponents do not occur in this grammar.
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') {
      const QSqrt2 head = parse_term(s.substr(0, i), text);
      const QSqrt2 tail = parse_term(s.substr(i), text);
      if (!head.is_rational() || tail.is_rational()) {
        throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
      }
      return head + tail;
    }
  }
  return parse_term(s, text);
}

int QSqrt2::sign() const {
  const int sp = p_.sign();
  const int sq = q_.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with 2 q^2.
  const Rational lhs = p_ * p_;
  const Rational rhs = 2 * q_ * q_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

double QSqrt2::to_double() const {
  return p_.convert_to<double>() + q_.convert_to<double>() * std::sqrt(2.0);
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
  p_ += o.p_;
  q_ += o.q_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
  p_ -= o.p_;
  q_ -= o.q_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  Rational p = p_ * o.p_ + 2 * q_ * o.q_;
  Rational q = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(sqrt 2)");
  const Rational n = o.norm();
  *this *= o.conjugate();
  p_ /= n;
  q_ /= n;
  return *this;
}

std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string QSqrt2::to_string() const {
  if (q_ == 0) return rational_to_string(p_);
  auto root = [](const Rational& q) {
    return q == 1 ? std::string("r2") : rational_to_string(q) + "*r2";
  };
  if (p_ == 0) return q_ < 0 ? "-" + root(-q_) : root(q_);
  const std::string head = rational_to_string(p_);
  return q_ < 0 ? head + "-" + root(-q_) : head + "+" + root(q_);
}

}  // namespace cloudlab
