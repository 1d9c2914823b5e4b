#include "qtor/modrep.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

#include "qtor/crystal.hpp"

namespace qtor {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

/// [n]_t with t = q^step, for any integer n.
QScalar qnum(int n, int step = 1) {
  if (n < 0) return -qnum(-n, step);
  QScalar out;
  for (int j = 0; j < n; ++j) out += QScalar::q_pow(step * (n - 1 - 2 * j));
  return out;
}

/// Gaussian binomial in t = q^step.
QScalar qbinom(int n, int k, int step) {
  if (k < 0 || k > n) return QScalar();
  if (k == 0 || k == n) return QScalar(1);
  return QScalar::q_pow(step * k) * qbinom(n - 1, k, step) +
         QScalar::q_pow(-step * (n - k)) * qbinom(n - 1, k - 1, step);
}

template <class Field>
typename Field::Scalar qp(const Field& F, long e) {
  if constexpr (std::is_same_v<Field, CyclotomicField>)
    return F.q_pow(e);
  else
    return F.q_pow(static_cast<int>(e));
}

}  // namespace

std::string Generator::str() const {
  switch (kind) {
    case GenKind::XPlus: return "x+[" + std::to_string(node) + "," + std::to_string(index) + "]";
    case GenKind::XMinus: return "x-[" + std::to_string(node) + "," + std::to_string(index) + "]";
    case GenKind::PhiPlus: return "phi+[" + std::to_string(node) + "," + std::to_string(index) + "]";
    case GenKind::PhiMinus: return "phi-[" + std::to_string(node) + "," + std::to_string(-index) + "]";
    case GenKind::K: return "k[" + std::to_string(node) + "]";
    case GenKind::KInv: return "k^-1[" + std::to_string(node) + "]";
    case GenKind::H: return "h[" + std::to_string(node) + "," + std::to_string(index) + "]";
  }
  return "?";
}

std::string BasisLabel::str() const {
  return "v[" + std::to_string(a) + "," + std::to_string(p) + "]";
}

// ---------------------------------------------------------------------------
// ModuleRealization

template <class Field>
ModuleRealization<Field>::ModuleRealization(Field field, std::shared_ptr<const CartanData> cartan,
                                            ModuleKind kind, std::vector<BasisLabel> basis,
                                            Rule rule)
    : field_(std::move(field)),
      cartan_(std::move(cartan)),
      kind_(kind),
      basis_(std::move(basis)),
      rule_(std::move(rule)) {
  for (int i = 0; i < dim(); ++i) index_[basis_[i]] = i;
}

template <class Field>
std::optional<int> ModuleRealization<Field>::index_of(const BasisLabel& b) const {
  auto it = index_.find(b);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

template <class Field>
const OperatorTable<Field>& ModuleRealization<Field>::table(const Generator& g) const {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  if (!cartan_->has_node(g.node))
    throw RangeError("generator " + g.str() + ": node not in the diagram");

  OperatorTable<Field> t{SparseMatrix<S>(dim(), dim()), std::vector<bool>(dim(), false)};
  const bool phi0 = (g.kind == GenKind::PhiPlus || g.kind == GenKind::PhiMinus) && g.index == 0;
  if (phi0) {
    // phi+-_{i,0} = k_i^{+-r_i}
    const auto& k = table(g.kind == GenKind::PhiPlus ? Generator::k(g.node) : Generator::kinv(g.node));
    auto m = SparseMatrix<S>::identity(dim(), field_.one());
    for (int s = 0; s < cartan_->r(g.node); ++s) m = k.mat * m;
    t.mat = m;
  } else if (g.kind == GenKind::H) {
    if (g.index == 0) throw RangeError("h_{i,0} is not a generator");
    const bool plus = g.index > 0;
    const int M = plus ? g.index : -g.index;
    const S qq = field_.from_q(QScalar::q_pow(1) - QScalar::q_pow(-1));
    std::vector<const OperatorTable<Field>*> phis;
    for (int k = 0; k <= M; ++k)
      phis.push_back(&table(plus ? Generator::phip(g.node, k) : Generator::phim(g.node, k)));
    for (int j = 0; j < dim(); ++j) {
      TruncSeries<S> f(plus ? 'z' : 'w', 0, M, field_.zero());
      for (int k = 0; k <= M; ++k) {
        const auto& col = phis[k]->mat.col(j);
        if (col.size() > 1 || (col.size() == 1 && col.begin()->first != j))
          throw DomainError("phi operators are not diagonal at " + basis_[j].str());
        f.set(k, phis[k]->mat.get(j, j));
      }
      const auto c = series_log_coeffs(field_, f, M);
      S h = field_.divide(c[M - 1], qq);
      if (!plus) h = h * Rational(-1);
      t.mat.set(j, j, h);
    }
  } else {
    for (int j = 0; j < dim(); ++j) {
      for (const auto& [lab, v] : rule_(g, basis_[j])) {
        auto idx = index_of(lab);
        if (!idx)
          t.escapes[j] = true;
        else
          t.mat.add(*idx, j, v);
      }
    }
  }
  return cache_.emplace(g, std::move(t)).first->second;
}

template <class Field>
void ModuleRealization<Field>::override_entry(const Generator& g, int row, int col, const S& value) {
  table(g);
  cache_[g].mat.set(row, col, value);
  for (auto it = cache_.begin(); it != cache_.end();)
    it = (it->first.kind == GenKind::H && !(it->first == g)) ? cache_.erase(it) : std::next(it);
}

// ---------------------------------------------------------------------------
// Builders

namespace {

/// The action formulas on v_{c,p}, c in 1..n+1, with v_{0,p} = v_{n+1,p-1}
/// and v_{n+2,p} = v_{1,p+1}. L > 0 identifies p with p + L.
template <class Field>
typename ModuleRealization<Field>::Rule loop_rule(Field F, int n, int L) {
  using S = typename Field::Scalar;
  const int N1 = n + 1;
  auto norm = [N1, L](int c, int p) {
    if (c == 0) c = N1, --p;
    if (c == N1 + 1) c = 1, ++p;
    if (L > 0) p = mod(p, L);
    return BasisLabel{c, p};
  };
  return [F, N1, norm](const Generator& g, const BasisLabel& lab) {
    typename ModuleRealization<Field>::Image out;
    const int a = g.node;
    const int b = mod(lab.a - a, N1);
    const int t = (a + b - lab.a) / N1;
    const int pp = lab.p - t;
    const long E = static_cast<long>(N1) * pp + a - 1;
    const int s = (b == 0 ? 1 : 0) - (b == 1 ? 1 : 0);
    const S qq = F.from_q(QScalar::q_pow(1) - QScalar::q_pow(-1));
    switch (g.kind) {
      case GenKind::XPlus:
        if (b == 1) out.push_back({norm(a, pp), qp(F, g.index * E)});
        break;
      case GenKind::XMinus:
        if (b == 0) out.push_back({norm(a + 1, pp), qp(F, g.index * E)});
        break;
      case GenKind::PhiPlus:
        if (s != 0) out.push_back({lab, qq * qp(F, g.index * E) * Rational(s)});
        break;
      case GenKind::PhiMinus:
        if (s != 0) out.push_back({lab, qq * qp(F, -g.index * E) * Rational(-s)});
        break;
      case GenKind::K: out.push_back({lab, qp(F, s)}); break;
      case GenKind::KInv: out.push_back({lab, qp(F, -s)}); break;
      case GenKind::H: break;
    }
    return out;
  };
}

}  // namespace

GenericModule build_extremal_loop(int p_min, int p_max, int n) {
  if (p_min > p_max) throw InputError("extremal loop window is empty");
  if (n < 2) throw InputError("extremal loop needs n >= 2");
  auto C = std::make_shared<const CartanData>(CartanData::preset("Ator:" + std::to_string(n)));
  std::vector<BasisLabel> basis;
  for (int p = p_min; p <= p_max; ++p)
    for (int a = 1; a <= n + 1; ++a) basis.push_back({a, p});
  GenericQField F;
  GenericModule M(F, C, ModuleKind::ExtremalLoop, std::move(basis), loop_rule(F, n, 0));
  M.n = n;
  M.p_min = p_min;
  M.p_max = p_max;
  return M;
}

CycModule build_root_of_unity(int L) {
  if (L < 1) throw InputError("root-of-unity module needs L >= 1");
  auto C = std::make_shared<const CartanData>(CartanData::preset("A3tor"));
  std::vector<BasisLabel> basis;
  for (int p = 0; p < L; ++p)
    for (int a = 1; a <= 4; ++a) basis.push_back({a, p});
  CyclotomicField F(4 * L);
  CycModule M(F, C, ModuleKind::RootOfUnity, std::move(basis), loop_rule(F, 3, L));
  M.L = L;
  return M;
}

template <class Field>
ModuleRealization<Field> build_trivial(Field field, std::shared_ptr<const CartanData> cartan) {
  auto one = field.one();
  auto rule = [one](const Generator& g, const BasisLabel& lab) {
    typename ModuleRealization<Field>::Image out;
    if (g.kind == GenKind::K || g.kind == GenKind::KInv) out.push_back({lab, one});
    return out;
  };
  return ModuleRealization<Field>(std::move(field), std::move(cartan), ModuleKind::Trivial,
                                  {BasisLabel{0, 0}}, rule);
}

// ---------------------------------------------------------------------------
// Relations

bool RelationReport::all_pass() const {
  return std::all_of(families.begin(), families.end(), [](const FamilyResult& f) { return f.pass; });
}

const FamilyResult* RelationReport::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.family == name) return &f;
  return nullptr;
}

namespace {

template <class Field>
struct InstanceBuilder {
  const Field& F;
  RelationInstance<Field> inst;
  InstanceBuilder(const Field& f, std::string fam, std::string label) : F(f) {
    inst.family = std::move(fam);
    inst.label = std::move(label);
  }
  InstanceBuilder& add(const typename Field::Scalar& c, std::vector<Generator> w) {
    inst.terms.push_back({c, std::move(w)});
    return *this;
  }
  InstanceBuilder& add(long c, std::vector<Generator> w) { return add(F.from_rational(c), std::move(w)); }
  /// c * [a, b]
  InstanceBuilder& commutator(const typename Field::Scalar& c, const Generator& a, const Generator& b) {
    add(c, {a, b});
    return add(c * Rational(-1), {b, a});
  }
};

std::string idx(std::initializer_list<std::pair<const char*, int>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += std::string(s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

Generator xgen(bool plus, int i, int r) { return plus ? Generator::xp(i, r) : Generator::xm(i, r); }

}  // namespace

template <class Field>
std::vector<RelationInstance<Field>> relation_instances(const Field& F, const CartanData& C,
                                                        const std::string& family, int rb, int mb) {
  using S = typename Field::Scalar;
  std::vector<RelationInstance<Field>> out;
  const auto nodes = C.nodes();
  auto B = [&](int i, int j) { return C.r(i) * C.entry(i, j); };
  auto emit = [&](InstanceBuilder<Field>& b) { out.push_back(std::move(b.inst)); };

  if (family == "cartan") {
    for (int i : nodes) {
      InstanceBuilder<Field> b(F, family, "k" + std::to_string(i) + " k^-1" + std::to_string(i) + " = 1");
      b.add(1, {Generator::k(i), Generator::kinv(i)}).add(-1, {});
      emit(b);
      for (int j : nodes) {
        if (i < j) {
          InstanceBuilder<Field> c(F, family, "[k" + std::to_string(i) + ",k" + std::to_string(j) + "]");
          c.commutator(F.one(), Generator::k(i), Generator::k(j));
          emit(c);
        }
        for (int sgn : {1, -1})
          for (int r = -rb; r <= rb; ++r) {
            const auto x = xgen(sgn > 0, j, r);
            InstanceBuilder<Field> c(F, family, "k x k^-1: " + idx({{"i", i}, {"j", j}, {"r", r}, {"sign", sgn}}));
            c.add(1, {Generator::k(i), x, Generator::kinv(i)});
            c.add(qp(F, static_cast<long>(sgn) * C.entry(i, j)) * Rational(-1), {x});
            emit(c);
          }
        for (int m = 0; m <= mb; ++m)
          for (bool plus : {true, false}) {
            const auto ph = plus ? Generator::phip(j, m) : Generator::phim(j, m);
            InstanceBuilder<Field> c(F, family, "[k," + ph.str() + "] " + idx({{"i", i}}));
            c.commutator(F.one(), Generator::k(i), ph);
            emit(c);
          }
      }
    }
  } else if (family == "h-h") {
    for (int i : nodes)
      for (int j : nodes)
        for (int m = -mb; m <= mb; ++m)
          for (int m2 = -mb; m2 <= mb; ++m2) {
            if (m == 0 || m2 == 0) continue;
            InstanceBuilder<Field> b(F, family, "[h,h] " + idx({{"i", i}, {"m", m}, {"j", j}, {"m'", m2}}));
            b.commutator(F.one(), Generator::h(i, m), Generator::h(j, m2));
            emit(b);
          }
  } else if (family == "h-x") {
    for (int i : nodes)
      for (int j : nodes)
        for (int m = -mb; m <= mb; ++m) {
          if (m == 0) continue;
          for (int sgn : {1, -1})
            for (int r = -rb; r <= rb; ++r) {
              InstanceBuilder<Field> b(F, family,
                                       "m[h,x] = +-[mB]x: " +
                                           idx({{"i", i}, {"m", m}, {"j", j}, {"r", r}, {"sign", sgn}}));
              b.commutator(F.from_rational(m), Generator::h(i, m), xgen(sgn > 0, j, r));
              b.add(F.from_q(qnum(m * B(i, j))) * Rational(-sgn), {xgen(sgn > 0, j, m + r)});
              emit(b);
            }
        }
  } else if (family == "phi-phi") {
    for (int i : nodes)
      for (int j : nodes)
        for (int m = 0; m <= mb; ++m)
          for (int m2 = 0; m2 <= mb; ++m2)
            for (int pk = 0; pk < 4; ++pk) {
              const auto a = (pk & 1) ? Generator::phim(i, m) : Generator::phip(i, m);
              const auto c = (pk & 2) ? Generator::phim(j, m2) : Generator::phip(j, m2);
              InstanceBuilder<Field> b(F, family, "[" + a.str() + "," + c.str() + "]");
              b.commutator(F.one(), a, c);
              emit(b);
            }
  } else if (family == "phi-x") {
    // mode form of phi_i(z) x_j(w) phi_i(z)^-1 = q^{+-B} (1 - q^{-+B} zw)/(1 - q^{+-B} zw) x_j(w)
    for (int i : nodes)
      for (int j : nodes)
        for (int sgn : {1, -1})
          for (bool plus : {true, false}) {
            const long e = plus ? sgn * B(i, j) : -sgn * B(i, j);
            const S qb = qp(F, e) * Rational(-1);
            const int step = plus ? 1 : -1;
            for (int m = 0; m < mb; ++m)
              for (int r = -rb; r <= rb; ++r) {
                const auto ph1 = plus ? Generator::phip(i, m + 1) : Generator::phim(i, m + 1);
                const auto ph0 = plus ? Generator::phip(i, m) : Generator::phim(i, m);
                const bool pl = sgn > 0;
                InstanceBuilder<Field> b(F, family,
                                         std::string(plus ? "phi+" : "phi-") + " x " +
                                             idx({{"i", i}, {"m", m}, {"j", j}, {"r", r}, {"sign", sgn}}));
                b.add(1, {ph1, xgen(pl, j, r)});
                b.add(qb, {ph0, xgen(pl, j, r + step)});
                b.add(qb, {xgen(pl, j, r), ph1});
                b.add(1, {xgen(pl, j, r + step), ph0});
                emit(b);
              }
          }
  } else if (family == "x+x-") {
    for (int i : nodes)
      for (int j : nodes)
        for (int r = -rb; r <= rb; ++r)
          for (int r2 = -rb; r2 <= rb; ++r2) {
            const int ri = C.r(i);
            InstanceBuilder<Field> b(F, family, "[x+,x-] " + idx({{"i", i}, {"r", r}, {"j", j}, {"r'", r2}}));
            b.commutator(F.from_q(QScalar::q_pow(ri) - QScalar::q_pow(-ri)), Generator::xp(i, r),
                         Generator::xm(j, r2));
            if (i == j) {
              const int s = r + r2;
              if (s >= 0) b.add(-1, {Generator::phip(i, s)});
              if (s <= 0) b.add(1, {Generator::phim(i, -s)});
            }
            emit(b);
          }
  } else if (family == "quadratic") {
    for (int i : nodes)
      for (int j : nodes)
        for (int sgn : {1, -1}) {
          const S qb = qp(F, static_cast<long>(sgn) * B(i, j));
          for (int r = -rb; r <= rb; ++r)
            for (int r2 = -rb; r2 <= rb; ++r2) {
              const bool pl = sgn > 0;
              InstanceBuilder<Field> b(F, family,
                                       "quadratic " + idx({{"i", i}, {"r", r}, {"j", j}, {"r'", r2}, {"sign", sgn}}));
              b.add(1, {xgen(pl, i, r + 1), xgen(pl, j, r2)});
              b.add(qb * Rational(-1), {xgen(pl, j, r2), xgen(pl, i, r + 1)});
              b.add(qb * Rational(-1), {xgen(pl, i, r), xgen(pl, j, r2 + 1)});
              b.add(1, {xgen(pl, j, r2 + 1), xgen(pl, i, r)});
              emit(b);
            }
        }
  } else if (family == "serre") {
    for (int i : nodes)
      for (int j : nodes) {
        if (i == j) continue;
        const int s = 1 - C.entry(i, j);
        if (s > 3) throw DomainError("Drinfeld-Serre check supports s <= 3");
        std::vector<int> rs(static_cast<std::size_t>(s), -rb);
        for (;;) {
          for (int r2 = -rb; r2 <= rb; ++r2)
            for (int sgn : {1, -1}) {
              const bool pl = sgn > 0;
              std::string lab = "serre " + idx({{"i", i}, {"j", j}, {"r'", r2}, {"sign", sgn}}) + " r=(";
              for (std::size_t t = 0; t < rs.size(); ++t) lab += (t ? "," : "") + std::to_string(rs[t]);
              InstanceBuilder<Field> b(F, family, lab + ")");
              std::vector<int> perm(rs.size());
              for (std::size_t t = 0; t < perm.size(); ++t) perm[t] = static_cast<int>(t);
              do {
                for (int k = 0; k <= s; ++k) {
                  std::vector<Generator> w;
                  for (int t = 0; t < k; ++t) w.push_back(xgen(pl, i, rs[perm[t]]));
                  w.push_back(xgen(pl, j, r2));
                  for (int t = k; t < s; ++t) w.push_back(xgen(pl, i, rs[perm[t]]));
                  b.add(F.from_q(qbinom(s, k, C.r(i))) * Rational(k % 2 ? -1 : 1), std::move(w));
                }
              } while (std::next_permutation(perm.begin(), perm.end()));
              emit(b);
            }
          // next nondecreasing tuple
          int t = s - 1;
          while (t >= 0 && rs[t] == rb) --t;
          if (t < 0) break;
          ++rs[t];
          for (int u = t + 1; u < s; ++u) rs[u] = rs[t];
        }
      }
  } else {
    throw InputError("unknown relation family '" + family + "'");
  }
  return out;
}

namespace {

template <class Field>
struct Evaluator {
  const ModuleRealization<Field>& M;
  using S = typename Field::Scalar;
  using Col = typename SparseMatrix<S>::Column;

  /// Returns nullopt when the evaluation touches the window boundary.
  std::optional<Col> eval(const RelationInstance<Field>& inst, int j) const {
    Col acc;
    for (const auto& [c, word] : inst.terms) {
      Col v{{j, M.field().one()}};
      for (auto g = word.rbegin(); g != word.rend() && !v.empty(); ++g) {
        const auto& t = M.table(*g);
        for (const auto& [k, x] : v)
          if (t.escapes[k]) return std::nullopt;
        v = t.mat.apply(v);
      }
      for (const auto& [k, x] : v) {
        auto [it, fresh] = acc.try_emplace(k, x * c);
        if (!fresh) it->second = it->second + x * c;
      }
    }
    for (auto it = acc.begin(); it != acc.end();)
      it = scalar_is_zero(it->second) ? acc.erase(it) : std::next(it);
    return acc;
  }

  std::string col_str(const Col& c) const {
    std::string s;
    for (const auto& [k, x] : c)
      s += std::string(s.empty() ? "" : " + ") + "(" + scalar_str(x) + ")" + M.basis()[k].str();
    return s.empty() ? "0" : s;
  }
};

}  // namespace

template <class Field>
RelationReport verify_relations(const ModuleRealization<Field>& M, int r_bound, int m_bound,
                                int series_order, const std::vector<std::string>& families) {
  if (series_order < m_bound)
    throw RangeError("series order must cover the h index bound");
  RelationReport rep;
  Evaluator<Field> ev{M};
  for (const auto& fam : families) {
    FamilyResult fr;
    fr.family = fam;
    fr.ranges = "|r| <= " + std::to_string(r_bound) + ", 1 <= |m| <= " + std::to_string(m_bound);
    for (const auto& inst : relation_instances(M.field(), M.cartan(), fam, r_bound, m_bound)) {
      ++fr.instances;
      for (int j = 0; j < M.dim(); ++j) {
        auto res = ev.eval(inst, j);
        if (!res) {
          ++fr.skipped;
          continue;
        }
        ++fr.evaluations;
        if (!res->empty() && fr.pass) {
          fr.pass = false;
          fr.witness = RelationWitness{inst.label, M.basis()[j].str(), ev.col_str(*res)};
        }
      }
    }
    if (fr.evaluations == 0) fr.pass = false;
    rep.families.push_back(std::move(fr));
  }
  return rep;
}

template <class Field>
int generated_algebra_dim(const Field& F, const std::vector<SparseMatrix<typename Field::Scalar>>& gens,
                          int n) {
  using S = typename Field::Scalar;
  using Mat = SparseMatrix<S>;
  // echelon rows of flattened matrices keyed by pivot
  std::map<int, std::vector<S>> rows;
  auto flatten = [&](const Mat& m) {
    std::vector<S> v(static_cast<std::size_t>(n * n), F.zero());
    for (int c = 0; c < n; ++c)
      for (const auto& [r, x] : m.col(c)) v[r * n + c] = x;
    return v;
  };
  auto insert = [&](std::vector<S> v) {
    for (const auto& [p, row] : rows) {
      if (F.is_zero(v[p])) continue;
      const S f = v[p];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = v[k] - f * row[k];
    }
    int p = -1;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!F.is_zero(v[k])) {
        p = static_cast<int>(k);
        break;
      }
    if (p < 0) return false;
    const S inv = F.divide(F.one(), v[p]);
    for (auto& x : v) x = x * inv;
    for (auto& [q, row] : rows) {
      if (F.is_zero(row[p])) continue;
      const S f = row[p];
      for (std::size_t k = 0; k < row.size(); ++k) row[k] = row[k] - f * v[k];
    }
    rows.emplace(p, std::move(v));
    return true;
  };
  std::vector<Mat> queue{Mat::identity(n, F.one())};
  insert(flatten(queue[0]));
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (const auto& g : gens) {
      Mat w = g * queue[at];
      if (insert(flatten(w))) queue.push_back(std::move(w));
    }
  return static_cast<int>(rows.size());
}

// ---------------------------------------------------------------------------
// l-characters

YMonomial display_monomial(const BasisLabel& b) {
  const int a = b.a;
  return YMonomial::Y(a % 4, 4 * b.p + a - 1) * YMonomial::Y(a - 1, 4 * b.p + a, -1);
}

namespace {

template <class Field>
bool series_match(const Field& F, const CartanData& C, const YMonomial& m, int i,
                  const TruncSeries<typename Field::Scalar>& fp,
                  const TruncSeries<typename Field::Scalar>& fm, int order) {
  const auto sp = phi_series(F, C, m, i, order, true);
  const auto sm = phi_series(F, C, m, i, order, false);
  for (int k = 0; k <= order; ++k)
    if (!F.is_zero(sp.coeff(k) - fp.coeff(k)) || !F.is_zero(sm.coeff(k) - fm.coeff(k))) return false;
  return true;
}

}  // namespace

template <class Field>
LCharacterReport l_character(const ModuleRealization<Field>& M, int order) {
  using S = typename Field::Scalar;
  if (order < 1) throw RangeError("l_character needs series order >= 1");
  const auto& F = M.field();
  const auto& C = M.cartan();
  LCharacterReport rep;
  int N = 0;
  if constexpr (std::is_same_v<Field, CyclotomicField>) N = F.order();
  rep.modulus = N;

  for (int j = 0; j < M.dim(); ++j) {
    YMonomial mono;
    for (int i : C.nodes()) {
      TruncSeries<S> fp('z', 0, order, F.zero()), fm('w', 0, order, F.zero());
      for (int k = 0; k <= order; ++k) {
        for (bool plus : {true, false}) {
          const auto& t = M.op(plus ? Generator::phip(i, k) : Generator::phim(i, k));
          const auto& col = t.col(j);
          if (col.size() > 1 || (col.size() == 1 && col.begin()->first != j))
            throw DomainError("phi operators are not diagonal at " + M.basis()[j].str());
          (plus ? fp : fm).set(k, t.get(j, j));
        }
      }
      std::optional<YMonomial> part;
      if constexpr (std::is_same_v<Field, GenericQField>) {
        // P_1 = sum_s u_s q^s from the first log coefficient
        const auto c = series_log_coeffs(F, fp, 1);
        const int ri = C.r(i);
        QScalar P1;
        try {
          P1 = c[0].divide_exact(QScalar::q_pow(ri) - QScalar::q_pow(-ri));
        } catch (const DomainError&) {
          throw DomainError("phi eigenvalues at " + M.basis()[j].str() + " are not of monomial type");
        }
        std::vector<YFactor> fs;
        for (const auto& [s, u] : P1.terms()) {
          if (u.get_den() != 1 || !u.get_num().fits_slong_p())
            throw DomainError("non-integral l-weight exponent at " + M.basis()[j].str());
          fs.push_back({i, s, static_cast<int>(u.get_num().get_si())});
        }
        part = YMonomial::from_factors(std::move(fs));
        if (!series_match(F, C, *part, i, fp, fm, order)) part.reset();
      } else {
        // candidate search over node parts with at most two factors
        std::vector<YMonomial> cands{YMonomial()};
        for (int s = 0; s < N; ++s)
          for (int e : {1, -1, 2, -2}) cands.push_back(YMonomial::Y(i, s, e));
        for (int s = 0; s < N; ++s)
          for (int s2 = s + 1; s2 < N; ++s2)
            for (int e : {1, -1})
              for (int e2 : {1, -1}) cands.push_back(YMonomial::Y(i, s, e) * YMonomial::Y(i, s2, e2));
        for (const auto& cand : cands)
          if (series_match(F, C, cand, i, fp, fm, order)) {
            if (part) {
              rep.note += "ambiguous l-weight at " + M.basis()[j].str() + " node " + std::to_string(i) + "; ";
              break;
            }
            part = cand;
          }
      }
      if (!part)
        throw DomainError("phi eigenvalues at " + M.basis()[j].str() + " node " + std::to_string(i) +
                          " are not of monomial type");
      mono *= *part;
    }
    if (N > 0) mono = reduce_mod(mono, N);
    rep.per_vector.push_back({M.basis()[j], mono});
    ++rep.terms[mono];
  }

  rep.has_display = (M.kind() == ModuleKind::ExtremalLoop && M.n == 3) || M.kind() == ModuleKind::RootOfUnity;
  if (rep.has_display && !rep.per_vector.empty()) {
    auto canon = [N](const YMonomial& m) { return N > 0 ? reduce_mod(m, N) : m; };
    const auto& [b0, m0] = rep.per_vector.front();
    const YMonomial d0 = display_monomial(b0);
    if (m0.factors().empty() || d0.factors().empty())
      throw AlgorithmError("l_character: empty monomial where the display has one");
    long c = static_cast<long>(m0.factors()[0].l) - d0.factors()[0].l;
    if (N > 0) c = ((c % N) + N) % N;
    for (const auto& [b, m] : rep.per_vector)
      if (canon(display_monomial(b).shifted(static_cast<int>(c))) != m)
        throw AlgorithmError("l_character: no constant spectral shift matches the display at " + b.str());
    rep.shift = c;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hecke companion

HeckeCompanion hecke_companion(int L) {
  if (L < 1) throw InputError("hecke companion needs L >= 1");
  HeckeCompanion H{L, CyclotomicField(4 * L), {}, {}, {}, {}, false, false, false, {}, {}};
  const auto& F = H.field;
  const auto e4 = [&](long k) { return F.q_pow(4 * k); };
  using Mat = SparseMatrix<CycScalar>;
  H.X = Mat(L, L);
  H.Y = Mat(L, L);
  H.Xm = Mat(L, L);
  H.Ym = Mat(L, L);
  for (int i = 1; i <= L; ++i) {
    H.X.set(i - 1, i - 1, e4(i));
    H.Y.set(i % L, i - 1, F.one());
    H.Xm.set(mod(i - 2, L), i - 1, F.one());
    H.Ym.set(i - 1, i - 1, e4(i));
  }
  H.relation_holds = (H.X * H.Y) == (H.Y * H.X * e4(1));

  DenseMatrix<CycScalar> P(static_cast<std::size_t>(L), std::vector<CycScalar>(static_cast<std::size_t>(L)));
  for (int j = 1; j <= L; ++j)
    for (int i = 1; i <= L; ++i) P[j - 1][i - 1] = e4(static_cast<long>(i) * j);
  const auto Pinv = inverse(F, P);
  if (Pinv) {
    auto conj = [&](const Mat& A) { return to_sparse(mat_mul(mat_mul(P, to_dense(A), F.zero()), *Pinv, F.zero())); };
    H.m_basis_matches = conj(H.X) == H.Xm && conj(H.Y) == H.Ym;
  }
  for (int i = 0; i < L; ++i) {
    H.x_spectrum.push_back(H.X.get(i, i));
    H.y_spectrum.push_back(H.Ym.get(i, i));
  }
  auto is_expected = [&](std::vector<CycScalar> spec) {
    for (int j = 0; j < L; ++j) {
      auto it = std::find(spec.begin(), spec.end(), e4(j));
      if (it == spec.end()) return false;
      spec.erase(it);
    }
    return spec.empty();
  };
  H.spectra_match = H.m_basis_matches && is_expected(H.x_spectrum) && is_expected(H.y_spectrum);
  return H;
}

// ---------------------------------------------------------------------------
// Instantiations

template class ModuleRealization<GenericQField>;
template class ModuleRealization<CyclotomicField>;

#define QTOR_MODREP_INST(F)                                                                        \
  template ModuleRealization<F> build_trivial<F>(F, std::shared_ptr<const CartanData>);           \
  template std::vector<RelationInstance<F>> relation_instances<F>(const F&, const CartanData&,    \
                                                                  const std::string&, int, int); \
  template RelationReport verify_relations<F>(const ModuleRealization<F>&, int, int, int,          \
                                              const std::vector<std::string>&);        \
  template int generated_algebra_dim<F>(const F&, const std::vector<SparseMatrix<F::Scalar>>&,     \
                                        int);                                                      \
  template LCharacterReport l_character<F>(const ModuleRealization<F>&, int);

QTOR_MODREP_INST(GenericQField)
QTOR_MODREP_INST(CyclotomicField)
QTOR_MODREP_INST(RationalField)

}  // namespace qtor
