#include "qtor/exactnum.hpp"

#include <sstream>

namespace qtor {

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

using Poly = std::vector<Rational>;  // dense, index = degree

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {Poly{}, a};
  Poly quot(a.size() - db, Rational(0));
  const Rational lead = b.back();
  for (std::size_t k = a.size(); k-- > db;) {
    if (sgn(a[k]) == 0) continue;
    const Rational c = a[k] / lead;
    quot[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

}  // namespace

// ---------------------------------------------------------------------------
// QScalar

QScalar::QScalar(long c) { add_term(0, Rational(c)); }
QScalar::QScalar(const Rational& c) { add_term(0, c); }

QScalar QScalar::q_pow(int e, const Rational& coeff) {
  QScalar out;
  out.add_term(e, coeff);
  return out;
}

void QScalar::add_term(int e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational QScalar::coeff(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int QScalar::min_degree() const {
  if (terms_.empty()) throw DomainError("degree of zero");
  return terms_.begin()->first;
}

int QScalar::max_degree() const {
  if (terms_.empty()) throw DomainError("degree of zero");
  return terms_.rbegin()->first;
}

QScalar& QScalar::operator+=(const QScalar& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

QScalar& QScalar::operator*=(const QScalar& o) {
  QScalar out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
  terms_ = std::move(out.terms_);
  return *this;
}

QScalar& QScalar::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

QScalar QScalar::operator-() const {
  QScalar out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

QScalar QScalar::inverse() const {
  if (!is_monomial()) throw DomainError("QScalar " + str() + " is not invertible");
  const auto& [e, c] = *terms_.begin();
  return q_pow(-e, Rational(1) / c);
}

QScalar QScalar::divide_exact(const QScalar& b) const {
  if (b.is_zero()) throw DomainError("division by zero");
  if (is_zero()) return {};
  if (b.is_monomial()) return *this * b.inverse();
  const int amin = min_degree();
  const int bmin = b.min_degree();
  Poly pa(static_cast<std::size_t>(max_degree() - amin + 1), Rational(0));
  Poly pb(static_cast<std::size_t>(b.max_degree() - bmin + 1), Rational(0));
  for (const auto& [e, c] : terms_) pa[e - amin] = c;
  for (const auto& [e, c] : b.terms_) pb[e - bmin] = c;
  auto [quot, rem] = poly_divmod(pa, pb);
  if (!rem.empty()) throw DomainError(str() + " is not divisible by " + b.str());
  QScalar out;
  for (std::size_t k = 0; k < quot.size(); ++k)
    out.add_term(static_cast<int>(k) + amin - bmin, quot[k]);
  return out;
}

QScalar QScalar::substitute_power(int k) const {
  QScalar out;
  for (const auto& [e, c] : terms_) out.add_term(e * k, c);
  return out;
}

Rational QScalar::evaluate(const Rational& q) const {
  if (sgn(q) == 0) throw DomainError("evaluation at q = 0");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational p = 1;
    const Rational base = e >= 0 ? q : Rational(1) / q;
    for (int i = 0; i < std::abs(e); ++i) p *= base;
    acc += c * p;
  }
  return acc;
}

std::string QScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const int e = it->first;
    Rational c = it->second;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    } else if (sgn(c) < 0 && e != 0 && c == -1) {
      os << "-";
      c = 1;
    }
    first = false;
    if (e == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

QScalar q_int(int l) {
  if (l == 0) return {};
  QScalar out;
  const int n = std::abs(l);
  for (int k = -(n - 1); k <= n - 1; k += 2) out += QScalar::q_pow(k);
  return l > 0 ? out : -out;
}

QScalar q_factorial(int s) {
  if (s < 0) throw InputError("q_factorial of a negative integer");
  QScalar out(1);
  for (int k = 1; k <= s; ++k) out *= q_int(k);
  return out;
}

QScalar q_binom(int s, int k) {
  if (k < 0 || k > s) throw InputError("q_binom(" + std::to_string(s) + "," + std::to_string(k) +
                                       ") requires 0 <= k <= s");
  return q_factorial(s).divide_exact(q_factorial(s - k) * q_factorial(k));
}

// ---------------------------------------------------------------------------
// Cyclotomic fields

std::vector<Rational> cyclotomic_polynomial(int order) {
  if (order < 1) throw InputError("cyclotomic order must be >= 1");
  Poly num(static_cast<std::size_t>(order + 1), Rational(0));
  num[0] = -1;
  num[order] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d != 0) continue;
    num = poly_divmod(num, cyclotomic_polynomial(d)).first;
  }
  return num;
}

CycContextPtr make_cyc_context(int order) {
  auto ctx = std::make_shared<CycContext>();
  ctx->order = order;
  ctx->phi = cyclotomic_polynomial(order);
  const int deg = ctx->degree();
  ctx->powers.reserve(static_cast<std::size_t>(order));
  for (int e = 0; e < order; ++e) {
    Poly xe(static_cast<std::size_t>(e + 1), Rational(0));
    xe[e] = 1;
    Poly r = poly_divmod(xe, ctx->phi).second;
    r.resize(static_cast<std::size_t>(deg), Rational(0));
    ctx->powers.push_back(std::move(r));
  }
  return ctx;
}

CycScalar::CycScalar(CycContextPtr ctx, const Rational& c) : ctx_(std::move(ctx)) {
  residue_.assign(static_cast<std::size_t>(ctx_->degree()), Rational(0));
  residue_[0] = c;
}

CycScalar::CycScalar(CycContextPtr ctx, std::vector<Rational> residue)
    : ctx_(std::move(ctx)), residue_(std::move(residue)) {
  normalize();
}

CycScalar CycScalar::eps_pow(const CycContextPtr& ctx, long e, const Rational& coeff) {
  const long n = ctx->order;
  const long r = ((e % n) + n) % n;
  CycScalar out(ctx, ctx->powers[static_cast<std::size_t>(r)]);
  if (coeff != 1) out *= coeff;
  return out;
}

void CycScalar::normalize() {
  const std::size_t deg = static_cast<std::size_t>(ctx_->degree());
  if (residue_.size() > deg) {
    Poly p = residue_;
    trim(p);
    residue_ = p.size() > deg ? poly_divmod(p, ctx_->phi).second : p;
  }
  residue_.resize(deg, Rational(0));
}

void CycScalar::adopt(const CycScalar& o) {
  if (!o.ctx_) return;
  if (!ctx_) {
    ctx_ = o.ctx_;
    residue_.assign(static_cast<std::size_t>(ctx_->degree()), Rational(0));
    return;
  }
  if (ctx_->order != o.ctx_->order)
    throw DomainError("mixed cyclotomic orders " + std::to_string(ctx_->order) + " and " +
                      std::to_string(o.ctx_->order));
}

bool CycScalar::is_zero() const {
  for (const auto& c : residue_)
    if (sgn(c) != 0) return false;
  return true;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  adopt(o);
  for (std::size_t i = 0; i < o.residue_.size(); ++i) residue_[i] += o.residue_[i];
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  adopt(o);
  for (std::size_t i = 0; i < o.residue_.size(); ++i) residue_[i] -= o.residue_[i];
  return *this;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  adopt(o);
  if (!ctx_) return *this;
  if (!o.ctx_) {
    for (auto& c : residue_) c = 0;
    return *this;
  }
  const std::size_t deg = residue_.size();
  Poly prod(2 * deg, Rational(0));
  for (std::size_t i = 0; i < deg; ++i) {
    if (sgn(residue_[i]) == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) prod[i + j] += residue_[i] * o.residue_[j];
  }
  // Reduce by the monic Phi_N from the top.
  for (std::size_t k = prod.size(); k-- > deg;) {
    if (sgn(prod[k]) == 0) continue;
    const Rational c = prod[k];
    for (std::size_t j = 0; j <= deg; ++j) prod[k - deg + j] -= c * ctx_->phi[j];
  }
  prod.resize(deg);
  residue_ = std::move(prod);
  return *this;
}

CycScalar& CycScalar::operator*=(const Rational& c) {
  for (auto& r : residue_) r *= c;
  return *this;
}

CycScalar CycScalar::operator-() const {
  CycScalar out = *this;
  for (auto& r : out.residue_) r = -r;
  return out;
}

bool CycScalar::operator==(const CycScalar& o) const {
  if (ctx_ && o.ctx_ && ctx_->order != o.ctx_->order)
    throw DomainError("comparison across cyclotomic orders");
  if (!ctx_ || !o.ctx_) return is_zero() && o.is_zero();
  return residue_ == o.residue_;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in cyclotomic field");
  // Extended Euclid: s*a + t*phi = g, g a nonzero constant.
  Poly r0 = ctx_->phi, r1 = residue_;
  trim(r1);
  Poly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1);
    Poly s2 = poly_sub(s0, poly_mul(quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw AlgorithmError("cyclotomic inverse: gcd is not constant");
  const Rational g = r0[0];
  for (auto& c : s0) c /= g;
  return CycScalar(ctx_, s0);
}

std::string CycScalar::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = residue_.size(); k-- > 0;) {
    const Rational& c = residue_[k];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    const Rational a = first ? c : Rational(abs(c));
    first = false;
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a == -1)
      os << "-";
    else if (a != 1)
      os << a.get_str() << "*";
    os << "eps";
    if (k != 1) os << "^" << k;
  }
  return first ? "0" : os.str();
}

CycScalar cyclotomic_specialize(const QScalar& x, const CycContextPtr& ctx) {
  CycScalar out(ctx, Rational(0));
  for (const auto& [e, c] : x.terms()) out += CycScalar::eps_pow(ctx, e, c);
  return out;
}

CycScalar cyclotomic_specialize(const QScalar& x, int order) {
  if (order < 1) throw InputError("cyclotomic order must be >= 1");
  return cyclotomic_specialize(x, make_cyc_context(order));
}

Rational RationalField::q_pow(int e) const { return QScalar::q_pow(e).evaluate(q); }

Rational RationalField::divide(const Rational& a, const Rational& b) const {
  if (sgn(b) == 0) throw DomainError("division by zero");
  return a / b;
}

}  // namespace qtor
