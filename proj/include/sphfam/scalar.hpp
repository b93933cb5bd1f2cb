#pragma once

// Exact arithmetic over Q and the real quadratic fields Q(sqrt(D)).

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

#include "sphfam/error.hpp"

namespace sphfam {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// An element a + b*sqrt(D) of Q(sqrt(D)); D must be square-free and > 1.
template <int D>
class Quadratic {
  static_assert(D > 1, "radicand must exceed 1");

 public:
  Quadratic() = default;
  Quadratic(long a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a) : a_(std::move(a)), b_(0) {}  // NOLINT
  Quadratic(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Quadratic sqrt_d() { return Quadratic(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  Quadratic conjugate() const { return Quadratic(a_, -b_); }
  // Field norm a^2 - D b^2; zero only for the zero element.
  Rational norm() const { return a_ * a_ - D * b_ * b_; }

  // Sign of the real number a + b*sqrt(D), decided without radicals.
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const Rational lhs = a_ * a_;
    const Rational rhs = D * b_ * b_;
    return lhs > rhs ? sa : sb;
  }

  double to_double() const;

  Quadratic operator-() const { return Quadratic(-a_, -b_); }

  Quadratic& operator+=(const Quadratic& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Quadratic& operator-=(const Quadratic& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Quadratic& operator*=(const Quadratic& o) {
    Rational a = a_ * o.a_ + D * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Quadratic& operator/=(const Quadratic& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    const Rational n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend Quadratic operator+(Quadratic x, const Quadratic& y) { return x += y; }
  friend Quadratic operator-(Quadratic x, const Quadratic& y) { return x -= y; }
  friend Quadratic operator*(Quadratic x, const Quadratic& y) { return x *= y; }
  friend Quadratic operator/(Quadratic x, const Quadratic& y) { return x /= y; }

  friend bool operator==(const Quadratic& x, const Quadratic& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const Quadratic& x, const Quadratic& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

template <int D>
double Quadratic<D>::to_double() const {
  static const double root = __builtin_sqrt(static_cast<double>(D));
  return a_.get_d() + b_.get_d() * root;
}

using QScalar = Quadratic<5>;

// "p/q" for rationals; "p/q+r/s*r5" when the radical part is nonzero.
template <int D>
std::string to_string(const Quadratic<D>& x) {
  const std::string suffix = "*r" + std::to_string(D);
  if (x.is_rational()) return to_string(x.rational_part());
  const Rational& b = x.radical_part();
  if (sgn(x.rational_part()) == 0) return to_string(b) + suffix;
  std::string out = to_string(x.rational_part());
  out += sgn(b) > 0 ? "+" : "-";
  out += to_string(Rational(abs(b)));
  out += suffix;
  return out;
}

QScalar parse_qscalar(std::string_view text);

/// The golden ratio (1 + sqrt5) / 2.
inline QScalar golden_ratio() { return QScalar(Rational(1, 2), Rational(1, 2)); }

}  // namespace sphfam
