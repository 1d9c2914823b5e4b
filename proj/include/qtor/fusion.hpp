#pragma once

// The deformed Drinfeld coproduct as truncated u-series of operators. A
// SeriesModule gives each generator an action series; tensor products of
// series modules apply Delta_{u^t} recursively, so nested products realize
// both sides of the twisted coassociativity identity.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qtor/modrep.hpp"

namespace qtor {

/// Formal sum of simple tensors of generator names with rational coefficients.
struct FormalTensor {
  std::map<std::vector<std::string>, Rational> terms;

  static FormalTensor leg(const std::string& name) { return FormalTensor{{{{name}, Rational(1)}}}; }
  bool is_zero() const { return terms.empty(); }
  friend FormalTensor operator+(FormalTensor a, const FormalTensor& b);
  friend FormalTensor operator*(FormalTensor a, const Rational& c);
  friend FormalTensor kron(const FormalTensor& a, const FormalTensor& b);
  bool operator==(const FormalTensor& o) const { return terms == o.terms; }
  std::string str() const;
};

inline bool scalar_is_zero(const FormalTensor& x) { return x.is_zero(); }
template <class S>
bool scalar_is_zero(const SparseMatrix<S>& m) { return m.is_zero(); }

template <class S>
requires(!std::is_same_v<S, Rational>)
SparseMatrix<S> operator*(const SparseMatrix<S>& a, const Rational& c) {
  return a.scaled(c);
}

/// Lower edges of action series are bounded by the slope s: x+-_{i,r} starts
/// at or above min(0, s r), phi-_{i,-m} at or above -s m, everything else at 0.
template <class Coef>
class SeriesModule {
 public:
  virtual ~SeriesModule() = default;
  virtual int slope() const = 0;
  virtual Coef identity() const = 0;
  virtual Coef zero() const = 0;
  /// Action of g as a u-series on [lower_edge(g), hi].
  virtual TruncSeries<Coef> action(const Generator& g, int hi) const = 0;

  int lower_edge(const Generator& g) const {
    switch (g.kind) {
      case GenKind::XPlus:
      case GenKind::XMinus: return std::min(0, slope() * g.index);
      case GenKind::PhiMinus: return -slope() * g.index;
      default: return 0;
    }
  }
  TruncSeries<Coef> identity_series(int hi) const {
    TruncSeries<Coef> s('u', 0, hi, zero());
    if (hi >= 0) s.set(0, identity());
    return s;
  }
};

template <class Coef>
using SeriesModulePtr = std::shared_ptr<const SeriesModule<Coef>>;

/// A u-independent module.
template <class Coef>
class ConstantSeriesModule : public SeriesModule<Coef> {
 public:
  using OpFn = std::function<Coef(const Generator&)>;
  ConstantSeriesModule(OpFn op, Coef id, Coef zero) : op_(std::move(op)), id_(std::move(id)), zero_(std::move(zero)) {}
  int slope() const override { return 0; }
  Coef identity() const override { return id_; }
  Coef zero() const override { return zero_; }
  TruncSeries<Coef> action(const Generator& g, int hi) const override {
    TruncSeries<Coef> s('u', 0, hi, zero_);
    if (hi >= 0) s.set(0, op_(g));
    return s;
  }

 private:
  OpFn op_;
  Coef id_, zero_;
};

/// A (x) B with generators acting through Delta_{u^t}.
template <class Coef>
class TensorSeriesModule : public SeriesModule<Coef> {
 public:
  TensorSeriesModule(SeriesModulePtr<Coef> a, SeriesModulePtr<Coef> b, int twist)
      : a_(std::move(a)), b_(std::move(b)), t_(twist) {
    if (t_ <= a_->slope())
      throw DomainError("twist " + std::to_string(t_) + " must exceed the left factor's slope " +
                        std::to_string(a_->slope()) + " for the u-series to be locally finite");
  }
  int slope() const override { return std::max(a_->slope(), t_ + b_->slope()); }
  Coef identity() const override { return kron(a_->identity(), b_->identity()); }
  Coef zero() const override { return kron(a_->zero(), b_->zero()); }
  int twist() const { return t_; }

  TruncSeries<Coef> action(const Generator& g, int hi) const override {
    auto it = cache_.find(g);
    if (it != cache_.end() && it->second.hi() >= hi) return it->second.truncated(hi);
    TruncSeries<Coef> out('u', this->lower_edge(g), hi, zero());
    const int t = t_;
    const int sa = a_->slope(), sb = b_->slope();
    switch (g.kind) {
      case GenKind::K:
      case GenKind::KInv: term(out, 0, &g, &g); break;
      case GenKind::PhiPlus:
        for (int l = 0; l <= g.index; ++l) {
          const auto x = Generator::phip(g.node, g.index - l), y = Generator::phip(g.node, l);
          term(out, t * l, &x, &y);
        }
        break;
      case GenKind::PhiMinus:
        for (int l = 0; l <= g.index; ++l) {
          const auto x = Generator::phim(g.node, g.index - l), y = Generator::phim(g.node, l);
          term(out, -t * l, &x, &y);
        }
        break;
      case GenKind::XPlus: {
        const int s = g.index;
        term(out, 0, &g, nullptr);
        for (int l = 0; (t - sa) * l + t * s + std::min(0, sb * s) <= hi; ++l) {
          const auto x = Generator::phim(g.node, l), y = Generator::xp(g.node, s + l);
          term(out, t * (s + l), &x, &y);
        }
        break;
      }
      case GenKind::XMinus: {
        const int s = g.index;
        term(out, t * s, nullptr, &g);
        for (int l = 0; (t - sa) * l + std::min(0, sa * s) <= hi; ++l) {
          const auto x = Generator::xm(g.node, s - l), y = Generator::phip(g.node, l);
          term(out, t * l, &x, &y);
        }
        break;
      }
      case GenKind::H: throw DomainError("the deformed coproduct is not given on h generators");
    }
    cache_.insert_or_assign(g, out);
    return out;
  }

 private:
  /// out += u^e (A(ga) (x) B(gb)); a null generator is the identity.
  void term(TruncSeries<Coef>& out, int e, const Generator* ga, const Generator* gb) const {
    const int la = ga ? a_->lower_edge(*ga) : 0;
    const int lb = gb ? b_->lower_edge(*gb) : 0;
    const int hi = out.hi();
    if (e + la + lb > hi) return;
    const auto A = ga ? a_->action(*ga, hi - e - lb) : a_->identity_series(hi - e - lb);
    const auto B = gb ? b_->action(*gb, hi - e - la) : b_->identity_series(hi - e - la);
    for (int i = A.lo(); i <= A.hi(); ++i) {
      if (scalar_is_zero(A.coeff(i))) continue;
      for (int j = B.lo(); j <= B.hi() && e + i + j <= hi; ++j) {
        if (scalar_is_zero(B.coeff(j))) continue;
        out.set(e + i + j, out.coeff(e + i + j) + kron(A.coeff(i), B.coeff(j)));
      }
    }
  }

  SeriesModulePtr<Coef> a_, b_;
  int t_;
  mutable std::map<Generator, TruncSeries<Coef>> cache_;
};

/// Wrap a realization; fails if any needed image would leave its window.
template <class Field>
SeriesModulePtr<SparseMatrix<typename Field::Scalar>> series_module(const ModuleRealization<Field>& M);

/// Formal single-leg module: each generator acts as its own name.
SeriesModulePtr<FormalTensor> formal_module();

template <class Coef>
SeriesModulePtr<Coef> tensor(SeriesModulePtr<Coef> a, SeriesModulePtr<Coef> b, int twist) {
  return std::make_shared<TensorSeriesModule<Coef>>(std::move(a), std::move(b), twist);
}

// ---------------------------------------------------------------------------

template <class Field>
struct UCoproductImage {
  Generator gen;
  TruncSeries<SparseMatrix<typename Field::Scalar>> series;
  /// Every nonzero term of the full image lies inside the window.
  bool closed = false;
};

template <class Field>
UCoproductImage<Field> coproduct_generator(const Generator& g, const ModuleRealization<Field>& M1,
                                           const ModuleRealization<Field>& M2, int lo, int hi);

/// Specialization u -> 1; only allowed on closed images.
template <class Field>
SparseMatrix<typename Field::Scalar> evaluate_at_u1(const UCoproductImage<Field>& img);

/// Each defining relation with generators replaced by their Delta_u images,
/// checked to vanish coefficientwise up to u^order.
template <class Field>
RelationReport coproduct_relation_check(const ModuleRealization<Field>& M1,
                                        const ModuleRealization<Field>& M2, int order, int r_bound,
                                        int m_bound);

struct CoassocResult {
  std::string generator;
  bool symbolic_equal = false;
  bool matrix_equal = false;
  long symbolic_terms = 0;
  std::string mismatch;
};

struct CoassocReport {
  int r = 1, r2 = 1, order = 0;
  std::vector<CoassocResult> results;
  bool all_pass() const;
};

/// Mixed sample of k, x and phi generators used by the command-line tool and
/// the acceptance run.
inline std::vector<Generator> coassoc_sample_generators() {
  return {Generator::k(0),      Generator::xp(1, 0),  Generator::xp(1, 1),   Generator::xp(2, -1),
          Generator::xm(1, 1),  Generator::xm(3, -1), Generator::phip(1, 2), Generator::phim(1, 2)};
}

/// (Id (x) Delta_{u^r'}) o Delta_{u^r} against (Delta_{u^r} (x) Id) o Delta_{u^{r+r'}},
/// formally and as operators on M1 (x) M2 (x) M3, up to u^order. Needs r, r' >= 1.
template <class Field>
CoassocReport twisted_coassoc_check(const ModuleRealization<Field>& M1, const ModuleRealization<Field>& M2,
                                    const ModuleRealization<Field>& M3, int r, int r2, int order,
                                    const std::vector<Generator>& gens);

}  // namespace qtor
