#include <doctest.h>

#include <cmath>
#include <random>

#include "sphfam/scalar.hpp"

using namespace sphfam;

namespace {

QScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 12);
  Rational a(num(rng), den(rng));
  Rational b(num(rng), den(rng));
  a.canonicalize();
  b.canonicalize();
  return QScalar(a, b);
}

}  // namespace

TEST_CASE("quadratic arithmetic examples") {
  const QScalar r5 = QScalar::sqrt_d();
  CHECK((QScalar(1) + r5) * (QScalar(1) - r5) == QScalar(-4));
  const QScalar phi = golden_ratio();
  CHECK(phi * phi == phi + QScalar(1));
  CHECK(QScalar(Rational(3, 8), Rational(1, 8)) + QScalar(Rational(3, 8), Rational(-1, 8)) ==
        QScalar(Rational(3, 4)));
  CHECK_THROWS_AS(QScalar(1) / QScalar(0), std::domain_error);
}

TEST_CASE("sign examples") {
  CHECK(QScalar(0).sign() == 0);
  CHECK(QScalar(Rational(-9, 4), Rational(1)).sign() == -1);
  CHECK(QScalar(Rational(-2), Rational(1)).sign() == 1);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const QScalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    if (!x.is_zero()) CHECK(x * (QScalar(1) / x) == QScalar(1));
  }
}

TEST_CASE("sign agrees with floating point away from zero") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const QScalar x = random_scalar(rng);
    const long double v = x.rational_part().get_d() + x.radical_part().get_d() * std::sqrt(5.0L);
    CHECK((-x).sign() == -x.sign());
    if (std::fabs(v) < 1e-9L) continue;
    CHECK(x.sign() == (v > 0 ? 1 : -1));
    ++checked;
  }
  CHECK(checked > 9000);
}

TEST_CASE("text round trip") {
  CHECK(to_string(QScalar(Rational(3, 8), Rational(-1, 8))) == "3/8-1/8*r5");
  CHECK(to_string(QScalar(Rational(-2))) == "-2");
  CHECK(to_string(QScalar(Rational(0), Rational(1, 2))) == "1/2*r5");
  for (const char* s : {"0", "-7/3", "1/2+1/2*r5", "-1/4-3/4*r5", "5*r5", "-1/2*r5"})
    CHECK(to_string(parse_qscalar(s)) == s);
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_qscalar("abc"), ParseError);
  CHECK_THROWS_AS(parse_qscalar("1+x*r5"), ParseError);
}
