#include <random>

#include "doctest.h"
#include "qtor/exactnum.hpp"

using namespace qtor;

namespace {

// Schoolbook long division on dense coefficient vectors (lowest degree first).
std::vector<Rational> oracle_div(std::vector<Rational> a, const std::vector<Rational>& b) {
  std::vector<Rational> q(a.size() - b.size() + 1, Rational(0));
  for (std::size_t k = a.size(); k-- >= b.size();) {
    Rational c = a[k] / b.back();
    q[k - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k - b.size() + 1 + j] -= c * b[j];
    if (k == b.size() - 1) break;
  }
  for (const auto& r : a) CHECK(r == 0);
  return q;
}

QScalar random_q(std::mt19937& rng, int span = 4, int nterms = 3) {
  std::uniform_int_distribution<int> e(-span, span), c(-3, 3);
  QScalar x;
  for (int t = 0; t < nterms; ++t) x += QScalar::q_pow(e(rng), c(rng));
  return x;
}

}  // namespace

TEST_CASE("q_int small values") {
  CHECK(q_int(2) == QScalar::q_pow(1) + QScalar::q_pow(-1));
  CHECK(q_int(-1) == QScalar(-1));
  CHECK(q_int(0).is_zero());
  CHECK(q_int(3).str() == "q^2 + 1 + q^-2");
  for (int l = -6; l <= 6; ++l) CHECK(q_int(-l) == -q_int(l));
}

TEST_CASE("q_binom(4,2) against long division") {
  // [4][3]/[2] as ordinary polynomials after multiplying by q^3 and q^1.
  // q^3[4] = 1+q^2+q^4+q^6, q^2[3] = 1+q^2+q^4, q[2] = 1+q^2
  std::vector<Rational> p4{1, 0, 1, 0, 1, 0, 1}, p3{1, 0, 1, 0, 1}, p2{1, 0, 1};
  std::vector<Rational> prod(p4.size() + p3.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p4.size(); ++i)
    for (std::size_t j = 0; j < p3.size(); ++j) prod[i + j] += p4[i] * p3[j];
  auto quot = oracle_div(prod, p2);  // q^4 * binom
  QScalar expect;
  for (std::size_t k = 0; k < quot.size(); ++k)
    expect += QScalar::q_pow(static_cast<int>(k) - 4, quot[k]);
  CHECK(q_binom(4, 2) == expect);
  CHECK(q_binom(4, 2).str() == "q^4 + q^2 + 2 + q^-2 + q^-4");
  CHECK_THROWS_AS(q_binom(3, 4), InputError);
  CHECK_THROWS_AS(q_binom(3, -1), InputError);
}

TEST_CASE("q_binom symmetry and positivity") {
  for (int s = 0; s <= 8; ++s)
    for (int k = 0; k <= s; ++k) {
      auto b = q_binom(s, k);
      CHECK(b == q_binom(s, s - k));
      for (const auto& [e, c] : b.terms()) {
        CHECK(c > 0);
        CHECK(c.get_den() == 1);
      }
    }
}

TEST_CASE("divide_exact rejects non-divisors") {
  CHECK_THROWS_AS(q_int(3).divide_exact(q_int(2)), DomainError);
  CHECK(q_int(4).divide_exact(q_int(2)) == QScalar::q_pow(2) + QScalar::q_pow(-2));
  CHECK_THROWS_AS(q_int(2).inverse(), DomainError);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Rational>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Rational>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Rational>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Rational>{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic_specialize examples") {
  CHECK(cyclotomic_specialize(q_int(2), 4).is_zero());
  auto ctx4 = make_cyc_context(4);
  CHECK(cyclotomic_specialize(QScalar::q_pow(4), ctx4) == CycScalar(ctx4, Rational(1)));
  // x + x^5 mod x^2 - x + 1: x^3 = -1 so x^5 = -x^2 = -(x - 1) = 1 - x; sum = 1.
  auto ctx6 = make_cyc_context(6);
  CHECK(cyclotomic_specialize(q_int(2), ctx6) == CycScalar(ctx6, Rational(1)));
  CHECK_THROWS_AS(cyclotomic_specialize(q_int(2), 0), InputError);
}

TEST_CASE("cyclotomic mixed orders are rejected") {
  auto a = CycScalar::eps_pow(make_cyc_context(4), 1);
  auto b = CycScalar::eps_pow(make_cyc_context(8), 1);
  CHECK_THROWS_AS(a + b, DomainError);
  CHECK_THROWS_AS(a * b, DomainError);
}

TEST_CASE("cyclotomic specialization is a ring morphism") {
  std::mt19937 rng(7);
  for (int N : {1, 2, 3, 4, 5, 8, 12}) {
    auto ctx = make_cyc_context(N);
    for (int trial = 0; trial < 30; ++trial) {
      auto x = random_q(rng), y = random_q(rng);
      CHECK(cyclotomic_specialize(x * y, ctx) ==
            cyclotomic_specialize(x, ctx) * cyclotomic_specialize(y, ctx));
      CHECK(cyclotomic_specialize(x + y, ctx) ==
            cyclotomic_specialize(x, ctx) + cyclotomic_specialize(y, ctx));
    }
  }
}

TEST_CASE("cyclotomic inverse") {
  std::mt19937 rng(11);
  for (int N : {3, 4, 5, 8, 12}) {
    auto ctx = make_cyc_context(N);
    for (int trial = 0; trial < 20; ++trial) {
      auto x = cyclotomic_specialize(random_q(rng), ctx);
      if (x.is_zero()) {
        CHECK_THROWS_AS(x.inverse(), DomainError);
        continue;
      }
      CHECK(x * x.inverse() == CycScalar(ctx, Rational(1)));
    }
  }
  auto ctx = make_cyc_context(8);
  CHECK(CycScalar::eps_pow(ctx, 3) * CycScalar::eps_pow(ctx, 5) == CycScalar(ctx, Rational(1)));
}

TEST_CASE("series windows") {
  GenericQField F;
  TruncSeries<QScalar> a('z', 0, 5, F.zero()), b('z', 1, 3, F.zero());
  auto p = a * b;
  CHECK(p.lo() == 1);
  CHECK(p.hi() == 3);  // min(5+1, 3+0)
  CHECK_THROWS_AS(p.coeff(5), RangeError);
  CHECK_THROWS_AS(p.coeff(0), RangeError);
  TruncSeries<QScalar> c('u', 0, 5, F.zero());
  CHECK_THROWS_AS(a + c, DomainError);
}

TEST_CASE("log of constant series") {
  GenericQField F;
  TruncSeries<QScalar> f('z', 0, 4, F.zero());
  f.set(0, QScalar(3));
  for (const auto& c : series_log_coeffs(F, f, 4)) CHECK(c.is_zero());
  TruncSeries<QScalar> z('z', 0, 2, F.zero());
  CHECK_THROWS_AS(series_log_coeffs(F, z, 2), DomainError);
  f.set(0, QScalar(1));
  CHECK_THROWS_AS(series_log_coeffs(F, f, 5), RangeError);
}

TEST_CASE("log of geometric series") {
  // 1/(1 - a z) = sum a^m z^m, log = sum a^m/m z^m.
  GenericQField F;
  const QScalar a = QScalar::q_pow(2, 3);
  TruncSeries<QScalar> f('z', 0, 6, F.zero());
  QScalar pw(1);
  for (int m = 0; m <= 6; ++m) {
    f.set(m, pw);
    pw *= a;
  }
  auto c = series_log_coeffs(F, f, 6);
  QScalar am(1);
  for (int m = 1; m <= 6; ++m) {
    am *= a;
    CHECK(c[m - 1] == am * Rational(1, m));
  }
}

TEST_CASE("exp and log round trip") {
  std::mt19937 rng(3);
  GenericQField F;
  for (int trial = 0; trial < 20; ++trial) {
    TruncSeries<QScalar> f('z', 0, 5, F.zero());
    f.set(0, QScalar::q_pow(trial % 3 - 1, 2));
    for (int m = 1; m <= 5; ++m)
      if (rng() % 2) f.set(m, random_q(rng, 3, 2));
    auto c = series_log_coeffs(F, f, 5);
    auto g = series_exp(F, f.coeff(0), c);
    for (int m = 0; m <= 5; ++m) CHECK(g.coeff(m) == f.coeff(m));
  }
  CyclotomicField K(8);
  TruncSeries<CycScalar> f('z', 0, 4, K.zero());
  for (int m = 0; m <= 4; ++m) f.set(m, K.q_pow(m * 3 + 1));
  auto g = series_exp(K, f.coeff(0), series_log_coeffs(K, f, 4));
  for (int m = 0; m <= 4; ++m) CHECK(g.coeff(m) == f.coeff(m));
}

TEST_CASE("rational field") {
  RationalField R(Rational(2));
  CHECK(R.q_pow(-2) == Rational(1, 4));
  CHECK(R.from_q(q_int(2)) == Rational(5, 2));
  CHECK_THROWS_AS(R.divide(Rational(1), Rational(0)), DomainError);
}
