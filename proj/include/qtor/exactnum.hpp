#pragma once

// Exact scalars: Laurent polynomials in q over Q, elements of cyclotomic
// fields Q(eps), and truncated formal series with an explicit validity window.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qtor/error.hpp"

namespace qtor {

using Rational = mpq_class;

std::string to_string(const Rational& r);

// ---------------------------------------------------------------------------
// QScalar

/// Laurent polynomial in q with rational coefficients, in normal form
/// (no stored zero coefficients).
class QScalar {
 public:
  QScalar() = default;
  QScalar(long c);  // NOLINT(google-explicit-constructor): integers embed
  explicit QScalar(const Rational& c);

  static QScalar q_pow(int e, const Rational& coeff = 1);

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational coeff(int e) const;
  int min_degree() const;
  int max_degree() const;

  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator*=(const Rational& c);
  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator*(QScalar a, const Rational& c) { return a *= c; }
  friend QScalar operator*(const Rational& c, QScalar a) { return a *= c; }
  QScalar operator-() const;
  bool operator==(const QScalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  /// Inverse of a single-term element; DomainError otherwise.
  QScalar inverse() const;
  /// Exact quotient a / b; DomainError if b does not divide a in Q[q, q^-1].
  QScalar divide_exact(const QScalar& b) const;
  /// q -> q^k substitution.
  QScalar substitute_power(int k) const;
  Rational evaluate(const Rational& q) const;

  std::string str() const;

 private:
  void add_term(int e, const Rational& c);
  std::map<int, Rational> terms_;
};

/// [l]_q = (q^l - q^-l)/(q - q^-1).
QScalar q_int(int l);
QScalar q_factorial(int s);
/// Gaussian binomial via exact division of q-factorials; InputError unless 0 <= k <= s.
QScalar q_binom(int s, int k);

// ---------------------------------------------------------------------------
// CycScalar

/// Shared immutable data for Q(eps), eps a primitive N-th root of unity.
struct CycContext {
  int order = 1;
  std::vector<Rational> phi;  // monic Phi_N, phi[k] = coefficient of x^k
  std::vector<std::vector<Rational>> powers;  // residues of eps^e, 0 <= e < N
  int degree() const { return static_cast<int>(phi.size()) - 1; }
};

using CycContextPtr = std::shared_ptr<const CycContext>;

CycContextPtr make_cyc_context(int order);
std::vector<Rational> cyclotomic_polynomial(int order);

/// Element of Q[x]/Phi_N. A default-constructed value is a field-agnostic zero
/// that adopts the order of whatever it is combined with.
class CycScalar {
 public:
  CycScalar() = default;
  CycScalar(CycContextPtr ctx, const Rational& c);
  CycScalar(CycContextPtr ctx, std::vector<Rational> residue);

  static CycScalar eps_pow(const CycContextPtr& ctx, long e, const Rational& coeff = 1);

  int order() const { return ctx_ ? ctx_->order : 0; }
  const CycContextPtr& context() const { return ctx_; }
  const std::vector<Rational>& residue() const { return residue_; }
  bool is_zero() const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator*=(const Rational& c);
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator*(CycScalar a, const Rational& c) { return a *= c; }
  friend CycScalar operator*(const Rational& c, CycScalar a) { return a *= c; }
  CycScalar operator-() const;
  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  /// Field inverse; DomainError on zero.
  CycScalar inverse() const;

  std::string str() const;

 private:
  void adopt(const CycScalar& o);
  void normalize();
  CycContextPtr ctx_;
  std::vector<Rational> residue_;  // empty or size degree()
};

CycScalar cyclotomic_specialize(const QScalar& x, const CycContextPtr& ctx);
CycScalar cyclotomic_specialize(const QScalar& x, int order);

// ---------------------------------------------------------------------------
// Scalar fields used by the generic algorithms.
//
// Each field names its scalar type and knows how to embed integers, rationals
// and Laurent polynomials in q, and how to divide.

struct GenericQField {
  using Scalar = QScalar;
  Scalar zero() const { return QScalar(); }
  Scalar one() const { return QScalar(1); }
  Scalar from_rational(const Rational& c) const { return QScalar(c); }
  Scalar from_q(const QScalar& x) const { return x; }
  Scalar q_pow(int e) const { return QScalar::q_pow(e); }
  Scalar divide(const Scalar& a, const Scalar& b) const { return a.divide_exact(b); }
  bool is_zero(const Scalar& a) const { return a.is_zero(); }
  std::string name() const { return "Q(q)"; }
};

struct CyclotomicField {
  explicit CyclotomicField(int order) : ctx(make_cyc_context(order)) {}
  CycContextPtr ctx;
  using Scalar = CycScalar;
  int order() const { return ctx->order; }
  Scalar zero() const { return CycScalar(ctx, Rational(0)); }
  Scalar one() const { return CycScalar(ctx, Rational(1)); }
  Scalar from_rational(const Rational& c) const { return CycScalar(ctx, c); }
  Scalar from_q(const QScalar& x) const { return cyclotomic_specialize(x, ctx); }
  Scalar q_pow(long e) const { return CycScalar::eps_pow(ctx, e); }
  Scalar divide(const Scalar& a, const Scalar& b) const { return a * b.inverse(); }
  bool is_zero(const Scalar& a) const { return a.is_zero(); }
  std::string name() const { return "Q(eps_" + std::to_string(ctx->order) + ")"; }
};

/// Q with q instantiated at a fixed nonzero rational.
struct RationalField {
  explicit RationalField(Rational q_value) : q(std::move(q_value)) {}
  Rational q;
  using Scalar = Rational;
  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  Scalar from_rational(const Rational& c) const { return c; }
  Scalar from_q(const QScalar& x) const { return x.evaluate(q); }
  Scalar q_pow(int e) const;
  Scalar divide(const Scalar& a, const Scalar& b) const;
  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  std::string name() const { return "Q[q=" + to_string(q) + "]"; }
};

// ---------------------------------------------------------------------------
// TruncSeries

/// Laurent series sum_e c_e t^e known exactly for lo <= e <= hi. The series
/// has no terms below lo; coefficients above hi are unknown and reading them
/// is an error. T is any ring-like type (scalar or operator matrix).
template <class T>
class TruncSeries {
 public:
  TruncSeries(char var, int lo, int hi, T zero)
      : var_(var), lo_(lo), hi_(hi), zero_(std::move(zero)) {
    if (hi_ >= lo_) coeffs_.assign(static_cast<std::size_t>(hi_ - lo_ + 1), zero_);
  }

  char variable() const { return var_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool empty_window() const { return hi_ < lo_; }
  const T& zero() const { return zero_; }

  const T& coeff(int e) const {
    if (e < lo_ || e > hi_)
      throw RangeError("series coefficient " + std::to_string(e) + " outside window [" +
                       std::to_string(lo_) + "," + std::to_string(hi_) + "]");
    return coeffs_[static_cast<std::size_t>(e - lo_)];
  }
  T& coeff_mut(int e) {
    if (e < lo_ || e > hi_)
      throw RangeError("series coefficient " + std::to_string(e) + " outside window");
    return coeffs_[static_cast<std::size_t>(e - lo_)];
  }
  void set(int e, T value) { coeff_mut(e) = std::move(value); }

  /// Keep only exponents <= new_hi.
  TruncSeries truncated(int new_hi) const {
    TruncSeries out(var_, lo_, std::min(hi_, new_hi), zero_);
    for (int e = out.lo_; e <= out.hi_; ++e) out.set(e, coeff(e));
    return out;
  }

  TruncSeries shifted(int by) const {
    TruncSeries out(var_, lo_ + by, hi_ + by, zero_);
    for (int e = lo_; e <= hi_; ++e) out.set(e + by, coeff(e));
    return out;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    check_var(a, b);
    const int lo = std::min(a.lo_, b.lo_);
    const int hi = std::min(a.hi_, b.hi_);
    TruncSeries out(a.var_, lo, hi, a.zero_);
    for (int e = lo; e <= hi; ++e) {
      T v = a.zero_;
      if (e >= a.lo_) v = v + a.coeff(e);
      if (e >= b.lo_) v = v + b.coeff(e);
      out.set(e, std::move(v));
    }
    return out;
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    return a + b.scaled_neg();
  }

  /// Window of the product: [lo_a + lo_b, min(hi_a + lo_b, hi_b + lo_a)].
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    check_var(a, b);
    const int lo = a.lo_ + b.lo_;
    const int hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
    TruncSeries out(a.var_, lo, hi, a.zero_ * b.zero_);
    for (int e = lo; e <= hi; ++e) {
      T acc = out.zero_;
      for (int i = a.lo_; i <= a.hi_ && i <= e - b.lo_; ++i) {
        const int j = e - i;
        if (j > b.hi_) continue;
        acc = acc + a.coeff(i) * b.coeff(j);
      }
      out.set(e, std::move(acc));
    }
    return out;
  }

  template <class Fn>
  TruncSeries map(Fn&& fn) const {
    TruncSeries out(var_, lo_, hi_, fn(zero_));
    for (int e = lo_; e <= hi_; ++e) out.set(e, fn(coeff(e)));
    return out;
  }

 private:
  TruncSeries scaled_neg() const {
    return map([](const T& x) { return x * Rational(-1); });
  }
  static void check_var(const TruncSeries& a, const TruncSeries& b) {
    if (a.var_ != b.var_) throw DomainError("series in different variables");
  }

  char var_;
  int lo_;
  int hi_;
  T zero_;
  std::vector<T> coeffs_;
};

/// Coefficients c_1..c_M with f = f(0) exp(sum_m c_m t^m) modulo t^{M+1}.
template <class Field>
std::vector<typename Field::Scalar> series_log_coeffs(
    const Field& field, const TruncSeries<typename Field::Scalar>& f, int M) {
  using S = typename Field::Scalar;
  if (f.lo() != 0) throw DomainError("series_log_coeffs needs a power series starting at t^0");
  if (M > f.hi()) throw RangeError("series_log_coeffs: order beyond the series window");
  const S& f0 = f.coeff(0);
  if (field.is_zero(f0)) throw DomainError("series_log_coeffs: constant term is zero");
  std::vector<S> g(static_cast<std::size_t>(M + 1), field.zero());
  for (int m = 0; m <= M; ++m) g[m] = field.divide(f.coeff(m), f0);
  std::vector<S> c(static_cast<std::size_t>(M + 1), field.zero());
  for (int m = 1; m <= M; ++m) {
    S acc = g[m] * Rational(m);
    for (int j = 1; j < m; ++j) acc = acc - c[j] * g[m - j] * Rational(j);
    c[m] = acc * Rational(1, m);
  }
  return {c.begin() + 1, c.end()};
}

/// f0 * exp(sum_m c_m t^m) truncated at t^M, with c given as c_1..c_M.
template <class Field>
TruncSeries<typename Field::Scalar> series_exp(const Field& field,
                                               const typename Field::Scalar& f0,
                                               const std::vector<typename Field::Scalar>& c,
                                               char var = 'z') {
  using S = typename Field::Scalar;
  const int M = static_cast<int>(c.size());
  std::vector<S> g(static_cast<std::size_t>(M + 1), field.zero());
  g[0] = field.one();
  for (int m = 1; m <= M; ++m) {
    S acc = field.zero();
    for (int j = 1; j <= m; ++j) acc = acc + c[j - 1] * g[m - j] * Rational(j);
    g[m] = acc * Rational(1, m);
  }
  TruncSeries<S> out(var, 0, M, field.zero());
  for (int m = 0; m <= M; ++m) out.set(m, f0 * g[m]);
  return out;
}

}  // namespace qtor
