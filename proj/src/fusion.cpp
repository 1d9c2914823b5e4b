#include "qtor/fusion.hpp"

#include <algorithm>

namespace qtor {

FormalTensor operator+(FormalTensor a, const FormalTensor& b) {
  for (const auto& [k, c] : b.terms) {
    auto [it, fresh] = a.terms.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) a.terms.erase(it);
    }
  }
  return a;
}

FormalTensor operator*(FormalTensor a, const Rational& c) {
  if (sgn(c) == 0) return {};
  for (auto& [k, v] : a.terms) v *= c;
  return a;
}

FormalTensor kron(const FormalTensor& a, const FormalTensor& b) {
  FormalTensor out;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      auto k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out = out + FormalTensor{{{k, ca * cb}}};
    }
  return out;
}

std::string FormalTensor::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    if (c != 1) s += c.get_str() + "*";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "(x)" : "") + k[i];
  }
  return s;
}

SeriesModulePtr<FormalTensor> formal_module() {
  return std::make_shared<ConstantSeriesModule<FormalTensor>>(
      [](const Generator& g) { return FormalTensor::leg(g.str()); }, FormalTensor::leg("1"), FormalTensor{});
}

template <class Field>
SeriesModulePtr<SparseMatrix<typename Field::Scalar>> series_module(const ModuleRealization<Field>& M) {
  using Mat = SparseMatrix<typename Field::Scalar>;
  const auto* mp = &M;
  return std::make_shared<ConstantSeriesModule<Mat>>(
      [mp](const Generator& g) {
        const auto& t = mp->table(g);
        if (std::find(t.escapes.begin(), t.escapes.end(), true) != t.escapes.end())
          throw RangeError("generator " + g.str() + " leaves the module's window");
        return t.mat;
      },
      Mat::identity(M.dim(), M.field().one()), Mat(M.dim(), M.dim()));
}

template <class Field>
UCoproductImage<Field> coproduct_generator(const Generator& g, const ModuleRealization<Field>& M1,
                                           const ModuleRealization<Field>& M2, int lo, int hi) {
  using Mat = SparseMatrix<typename Field::Scalar>;
  const auto T = tensor(series_module(M1), series_module(M2), 1);
  const int edge = T->lower_edge(g);
  if (lo > edge)
    throw RangeError("u-window starts at " + std::to_string(lo) + " above the lower edge " +
                     std::to_string(edge) + " of the image of " + g.str());
  const auto s = T->action(g, hi);
  TruncSeries<Mat> out('u', lo, hi, T->zero());
  for (int e = s.lo(); e <= s.hi(); ++e) out.set(e, s.coeff(e));
  bool closed = false;
  switch (g.kind) {
    case GenKind::K:
    case GenKind::KInv: closed = true; break;
    case GenKind::PhiPlus: closed = hi >= g.index; break;
    case GenKind::PhiMinus: closed = hi >= 0; break;
    default: closed = false;
  }
  return {g, std::move(out), closed};
}

template <class Field>
SparseMatrix<typename Field::Scalar> evaluate_at_u1(const UCoproductImage<Field>& img) {
  if (!img.closed)
    throw DomainError("u -> 1 requested for " + img.gen.str() + " outside a closed window");
  auto acc = img.series.zero();
  for (int e = img.series.lo(); e <= img.series.hi(); ++e) acc = acc + img.series.coeff(e);
  return acc;
}

namespace {

template <class Coef>
TruncSeries<Coef> word_series(const SeriesModule<Coef>& T, const std::vector<Generator>& w, int H) {
  if (w.empty()) return T.identity_series(H);
  int lo_sum = 0;
  for (const auto& g : w) lo_sum += T.lower_edge(g);
  std::optional<TruncSeries<Coef>> acc;
  for (const auto& g : w) {
    auto f = T.action(g, H - (lo_sum - T.lower_edge(g)));
    acc = acc ? (*acc) * f : f;
  }
  return *acc;
}

template <class S>
std::string first_entry(const SparseMatrix<S>& m) {
  for (int c = 0; c < m.cols(); ++c)
    if (!m.col(c).empty())
      return "entry (" + std::to_string(m.col(c).begin()->first) + "," + std::to_string(c) +
             ") = " + scalar_str(m.col(c).begin()->second) + ", nnz " + std::to_string(m.nnz());
  return "0";
}

}  // namespace

template <class Field>
RelationReport coproduct_relation_check(const ModuleRealization<Field>& M1,
                                        const ModuleRealization<Field>& M2, int order, int r_bound,
                                        int m_bound) {
  using S = typename Field::Scalar;
  using Mat = SparseMatrix<S>;
  const auto T = tensor(series_module(M1), series_module(M2), 1);
  RelationReport rep;
  for (const auto& fam : coproduct_relation_families()) {
    FamilyResult fr;
    fr.family = fam;
    fr.ranges = "|r| <= " + std::to_string(r_bound) + ", m <= " + std::to_string(m_bound) +
                ", u-order <= " + std::to_string(order);
    for (const auto& inst : relation_instances(M1.field(), M1.cartan(), fam, r_bound, m_bound)) {
      ++fr.instances;
      TruncSeries<Mat> res('u', 0, order, T->zero());
      for (const auto& [c, w] : inst.terms) {
        const S cc = c;
        res = res + word_series(*T, w, order).map([&cc](const Mat& m) { return m * cc; });
      }
      for (int e = res.lo(); e <= res.hi(); ++e) {
        ++fr.evaluations;
        if (!res.coeff(e).is_zero() && fr.pass) {
          fr.pass = false;
          fr.witness = RelationWitness{inst.label, "u^" + std::to_string(e), first_entry(res.coeff(e))};
        }
      }
    }
    rep.families.push_back(std::move(fr));
  }
  return rep;
}

bool CoassocReport::all_pass() const {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const CoassocResult& c) {
    return c.symbolic_equal && c.matrix_equal;
  });
}

namespace {

template <class Coef>
std::optional<std::string> compare_series(const TruncSeries<Coef>& a, const TruncSeries<Coef>& b,
                                          int order) {
  const int lo = std::min(a.lo(), b.lo());
  for (int e = lo; e <= order; ++e) {
    const Coef& za = a.zero();
    const Coef x = e >= a.lo() ? a.coeff(e) : za;
    const Coef y = e >= b.lo() ? b.coeff(e) : za;
    if (!(x == y)) return "u^" + std::to_string(e);
  }
  return std::nullopt;
}

}  // namespace

template <class Field>
CoassocReport twisted_coassoc_check(const ModuleRealization<Field>& M1, const ModuleRealization<Field>& M2,
                                    const ModuleRealization<Field>& M3, int r, int r2, int order,
                                    const std::vector<Generator>& gens) {
  if (r < 1 || r2 < 1)
    throw DomainError("twisted coassociativity is checked for r, r' >= 1 (locally finite u-series)");
  CoassocReport rep{r, r2, order, {}};
  const auto f = formal_module();
  const auto fl = tensor(f, tensor(f, f, r2), r);
  const auto fr = tensor(tensor(f, f, r), f, r + r2);
  const auto a = series_module(M1), b = series_module(M2), c = series_module(M3);
  const auto ml = tensor(a, tensor(b, c, r2), r);
  const auto mr = tensor(tensor(a, b, r), c, r + r2);
  for (const auto& g : gens) {
    CoassocResult res;
    res.generator = g.str();
    const auto sl = fl->action(g, order), sr = fr->action(g, order);
    for (int e = sl.lo(); e <= sl.hi(); ++e) res.symbolic_terms += static_cast<long>(sl.coeff(e).terms.size());
    const auto sym = compare_series(sl, sr, order);
    res.symbolic_equal = !sym;
    const auto mat = compare_series(ml->action(g, order), mr->action(g, order), order);
    res.matrix_equal = !mat;
    if (sym) res.mismatch = "formal " + *sym;
    if (mat) res.mismatch += (res.mismatch.empty() ? "" : "; ") + std::string("operator ") + *mat;
    rep.results.push_back(std::move(res));
  }
  return rep;
}

#define QTOR_FUSION_INST(F)                                                                             \
  template SeriesModulePtr<SparseMatrix<F::Scalar>> series_module<F>(const ModuleRealization<F>&);       \
  template UCoproductImage<F> coproduct_generator<F>(const Generator&, const ModuleRealization<F>&,      \
                                                     const ModuleRealization<F>&, int, int);             \
  template SparseMatrix<F::Scalar> evaluate_at_u1<F>(const UCoproductImage<F>&);                         \
  template RelationReport coproduct_relation_check<F>(const ModuleRealization<F>&,                       \
                                                      const ModuleRealization<F>&, int, int, int);       \
  template CoassocReport twisted_coassoc_check<F>(const ModuleRealization<F>&, const ModuleRealization<F>&, \
                                                  const ModuleRealization<F>&, int, int, int,            \
                                                  const std::vector<Generator>&);

QTOR_FUSION_INST(GenericQField)
QTOR_FUSION_INST(CyclotomicField)

}  // namespace qtor
