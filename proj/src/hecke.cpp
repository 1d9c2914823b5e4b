#include "qtor/hecke.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "qtor/modrep.hpp"

namespace qtor {

// ---------------------------------------------------------------------------
// Permutations

Perm perm_identity(int l) {
  Perm w(static_cast<std::size_t>(l));
  std::iota(w.begin(), w.end(), 0);
  return w;
}

int perm_length(const Perm& w) {
  int n = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) n += w[i] > w[j];
  return n;
}

Perm perm_times_s(const Perm& w, int i) {
  Perm out = w;
  std::swap(out.at(static_cast<std::size_t>(i - 1)), out.at(static_cast<std::size_t>(i)));
  return out;
}

std::vector<int> reduced_word(const Perm& w) {
  std::vector<int> word;
  Perm u = w;
  for (;;) {
    int d = 0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
      if (u[i] > u[i + 1]) {
        d = static_cast<int>(i) + 1;
        break;
      }
    if (d == 0) break;
    word.push_back(d);
    u = perm_times_s(u, d);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<Perm> all_perms(int l) {
  std::vector<Perm> out;
  Perm w = perm_identity(l);
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::string perm_label(const Perm& w) {
  const auto word = reduced_word(w);
  if (word.empty()) return "1";
  std::string s;
  for (int i : word) s += "s" + std::to_string(i);
  return s;
}

// ---------------------------------------------------------------------------
// Affine Hecke algebra

template <class Field>
AffineHecke<Field>::AffineHecke(Field field, int l)
    : F_(std::move(field)), l_(l), qq_(F_.from_q(QScalar::q_pow(1) - QScalar::q_pow(-1))) {
  if (l < 0) throw InputError("affine Hecke rank must be >= 0");
}

template <class Field>
void AffineHecke<Field>::add(Elem& e, const Key& k, const S& c) {
  if (scalar_is_zero(c)) return;
  auto [it, fresh] = e.try_emplace(k, c);
  if (!fresh) {
    it->second = it->second + c;
    if (scalar_is_zero(it->second)) e.erase(it);
  }
}

template <class Field>
typename AffineHecke<Field>::Elem AffineHecke<Field>::basis(const Perm& w) const {
  Elem e;
  e[{std::vector<int>(static_cast<std::size_t>(l_), 0), w}] = F_.one();
  return e;
}

template <class Field>
typename AffineHecke<Field>::Elem AffineHecke<Field>::times_sigma(const Elem& e, int i) const {
  if (i < 1 || i >= l_) throw RangeError("sigma_" + std::to_string(i) + " out of range");
  Elem out;
  for (const auto& [k, c] : e) {
    const auto& [lam, u] = k;
    const Perm us = perm_times_s(u, i);
    if (u[i - 1] < u[i]) {
      add(out, {lam, us}, c);
    } else {
      // T_u T_s = (q - q^-1) T_u + T_{us}
      add(out, {lam, u}, c * qq_);
      add(out, {lam, us}, c);
    }
  }
  return out;
}

template <class Field>
const typename AffineHecke<Field>::Elem& AffineHecke<Field>::push(const Perm& u, int j) const {
  auto it = memo_.find({u, j});
  if (it != memo_.end()) return it->second;
  Elem out;
  const auto word = reduced_word(u);
  if (word.empty()) {
    std::vector<int> lam(static_cast<std::size_t>(l_), 0);
    lam[j - 1] = 1;
    out[{lam, u}] = F_.one();
  } else {
    const int i = word.back();
    const Perm up = perm_times_s(u, i);
    // T_u z_j = T_{u'} (T_{s_i} z_j)
    auto then_sigma = [&](int k, const S& c) {
      for (const auto& [key, d] : times_sigma(push(up, k), i)) add(out, key, c * d);
    };
    auto plain = [&](int k, const S& c) {
      for (const auto& [key, d] : push(up, k)) add(out, key, c * d);
    };
    if (j == i) {
      then_sigma(i + 1, F_.one());
      plain(i + 1, qq_ * Rational(-1));
    } else if (j == i + 1) {
      then_sigma(i, F_.one());
      plain(i + 1, qq_);
    } else {
      then_sigma(j, F_.one());
    }
  }
  return memo_.emplace(std::pair{u, j}, std::move(out)).first->second;
}

template <class Field>
typename AffineHecke<Field>::Elem AffineHecke<Field>::times_z(const Elem& e, int j) const {
  if (j < 1 || j > l_) throw RangeError("z_" + std::to_string(j) + " out of range");
  Elem out;
  for (const auto& [k, c] : e) {
    const auto& [lam, u] = k;
    for (const auto& [k2, d] : push(u, j)) {
      std::vector<int> mu = lam;
      for (int t = 0; t < l_; ++t) mu[t] += k2.first[t];
      add(out, {mu, k2.second}, c * d);
    }
  }
  return out;
}

template <class Field>
std::map<Perm, typename Field::Scalar> AffineHecke<Field>::evaluate(const Elem& e,
                                                                     const std::vector<S>& a) const {
  std::map<Perm, S> out;
  for (const auto& [k, c] : e) {
    S v = c;
    for (int t = 0; t < l_; ++t)
      for (int p = 0; p < k.first[t]; ++p) v = v * a[t];
    auto [it, fresh] = out.try_emplace(k.second, v);
    if (!fresh) it->second = it->second + v;
  }
  for (auto it = out.begin(); it != out.end();) it = scalar_is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

// ---------------------------------------------------------------------------
// Modules

template <class Field>
std::vector<SparseMatrix<typename Field::Scalar>> HeckeModule<Field>::generators() const {
  std::vector<SparseMatrix<S>> g = sigma;
  g.insert(g.end(), z.begin(), z.end());
  return g;
}

template <class Field>
HeckeModule<Field> build_MA(const Field& F, const std::vector<typename Field::Scalar>& A) {
  using S = typename Field::Scalar;
  const int l = static_cast<int>(A.size());
  if (l < 1 || l > 4) throw InputError("build_MA supports 1 <= l <= 4");
  AffineHecke<Field> H(F, l);
  const auto ws = all_perms(l);
  std::map<Perm, int> index;
  HeckeModule<Field> M{F, l, {}, {}, {}, A};
  for (const auto& w : ws) {
    index[w] = static_cast<int>(M.labels.size());
    M.labels.push_back(perm_label(w));
  }
  const int n = M.dim();
  auto fill = [&](auto&& act) {
    SparseMatrix<S> R(n, n);
    for (const auto& w : ws)
      for (const auto& [v, c] : H.evaluate(act(H.basis(w)), A)) R.set(index[w], index.at(v), c);
    return R;
  };
  for (int i = 1; i < l; ++i) M.sigma.push_back(fill([&](const auto& e) { return H.times_sigma(e, i); }));
  for (int j = 1; j <= l; ++j) M.z.push_back(fill([&](const auto& e) { return H.times_z(e, j); }));
  return M;
}

template <class Field>
HeckeModule<Field> trivial_hecke(const Field& F) {
  return HeckeModule<Field>{F, 0, {"1"}, {}, {}, {}};
}

bool HeckeRelationReport::all_pass() const {
  return std::all_of(relations.begin(), relations.end(), [](const auto& kv) { return kv.second; });
}

template <class Field>
HeckeRelationReport check_hecke_relations(const HeckeModule<Field>& M) {
  using S = typename Field::Scalar;
  using Mat = SparseMatrix<S>;
  const auto& F = M.field;
  const S qq = F.from_q(QScalar::q_pow(1) - QScalar::q_pow(-1));
  const Mat I = Mat::identity(M.dim(), F.one());
  HeckeRelationReport rep;
  auto note = [&](const std::string& name, bool ok) {
    auto [it, fresh] = rep.relations.try_emplace(name, ok);
    if (!fresh) it->second = it->second && ok;
  };
  note("quadratic", true);
  note("braid", true);
  note("sigma far commute", true);
  note("z commute", true);
  note("sigma z_i sigma = z_{i+1}", true);
  note("sigma z_j = z_j sigma", true);
  for (int i = 1; i < M.l; ++i) {
    const Mat& s = M.sig(i);
    note("quadratic", (s * s) == (s * qq) + I);
    for (int k = i + 1; k < M.l; ++k) {
      const Mat& t = M.sig(k);
      if (k == i + 1)
        note("braid", s * t * s == t * s * t);
      else
        note("sigma far commute", s * t == t * s);
    }
    note("sigma z_i sigma = z_{i+1}", s * M.zz(i) * s == M.zz(i + 1));
    for (int j = 1; j <= M.l; ++j)
      if (j != i && j != i + 1) note("sigma z_j = z_j sigma", s * M.zz(j) == M.zz(j) * s);
  }
  for (int j = 1; j <= M.l; ++j)
    for (int k = j + 1; k <= M.l; ++k) note("z commute", M.zz(j) * M.zz(k) == M.zz(k) * M.zz(j));
  return rep;
}

template <class Field>
HeckeModule<Field> zelevinsky_product(const HeckeModule<Field>& M1, const HeckeModule<Field>& M2) {
  using S = typename Field::Scalar;
  using Mat = SparseMatrix<S>;
  const auto& F = M1.field;
  const int l1 = M1.l, l2 = M2.l, l = l1 + l2;
  if (l > 4) throw InputError("zelevinsky_product supports l1 + l2 <= 4");
  const int d1 = M1.dim(), d2 = M2.dim();
  const Mat I1 = Mat::identity(d1, F.one()), I2 = Mat::identity(d2, F.one());

  // parabolic generators on M1 (x) M2
  auto par_sigma = [&](int i) { return i < l1 ? kron(M1.sig(i), I2) : kron(I1, M2.sig(i - l1)); };
  auto par_z = [&](int j) { return j <= l1 ? kron(M1.zz(j), I2) : kron(I1, M2.zz(j - l1)); };

  // u = p w with w minimal in its coset: relabel values block by block in position order
  auto decompose = [&](const Perm& u) {
    Perm w(u.size());
    int next1 = 0, next2 = l1;
    for (std::size_t x = 0; x < u.size(); ++x) w[x] = u[x] < l1 ? next1++ : next2++;
    Perm p(u.size());
    for (std::size_t x = 0; x < u.size(); ++x) p[w[x]] = u[x];
    return std::pair{p, w};
  };

  std::vector<Perm> reps;
  for (const auto& u : all_perms(l))
    if (decompose(u).second == u) reps.push_back(u);
  std::map<Perm, int> rep_index;
  for (std::size_t t = 0; t < reps.size(); ++t) rep_index[reps[t]] = static_cast<int>(t);
  const int nd = static_cast<int>(reps.size());

  HeckeModule<Field> out{F, l, {}, {}, {}, M1.params};
  out.params.insert(out.params.end(), M2.params.begin(), M2.params.end());
  for (int k1 = 0; k1 < d1; ++k1)
    for (int k2 = 0; k2 < d2; ++k2)
      for (const auto& w : reps) out.labels.push_back(M1.labels[k1] + "(x)" + M2.labels[k2] + "(x)T" + perm_label(w));
  const int n = out.dim();

  AffineHecke<Field> H(F, l);
  std::map<std::pair<std::vector<int>, Perm>, Mat> cache;
  auto parabolic_matrix = [&](const std::vector<int>& lam, const Perm& p) -> const Mat& {
    auto it = cache.find({lam, p});
    if (it != cache.end()) return it->second;
    Mat R = Mat::identity(d1 * d2, F.one());
    for (int j = 1; j <= l; ++j)
      for (int e = 0; e < lam[j - 1]; ++e) R = R * par_z(j);
    for (int i : reduced_word(p)) R = R * par_sigma(i);
    return cache.emplace(std::pair{lam, p}, std::move(R)).first->second;
  };
  auto fill = [&](auto&& act) {
    Mat R(n, n);
    for (int k = 0; k < d1 * d2; ++k)
      for (int t = 0; t < nd; ++t) {
        const int row = k * nd + t;
        for (const auto& [key, c] : act(H.basis(reps[t]))) {
          const auto [p, w] = decompose(key.second);
          const Mat& P = parabolic_matrix(key.first, p);
          const int tw = rep_index.at(w);
          for (int col = 0; col < P.cols(); ++col) {
            const S v = P.get(k, col);
            if (!scalar_is_zero(v)) R.add(row, col * nd + tw, c * v);
          }
        }
      }
    return R;
  };
  for (int i = 1; i < l; ++i) out.sigma.push_back(fill([&](const auto& e) { return H.times_sigma(e, i); }));
  for (int j = 1; j <= l; ++j) out.z.push_back(fill([&](const auto& e) { return H.times_z(e, j); }));
  return out;
}

template <class Field>
std::optional<DenseMatrix<typename Field::Scalar>> find_isomorphism(const HeckeModule<Field>& M1,
                                                                    const HeckeModule<Field>& M2) {
  using S = typename Field::Scalar;
  const auto& F = M1.field;
  if (M1.dim() != M2.dim() || M1.l != M2.l) return std::nullopt;
  const int n = M1.dim();
  const auto g1 = M1.generators(), g2 = M2.generators();
  DenseMatrix<S> eq;
  for (std::size_t g = 0; g < g1.size(); ++g) {
    const auto A = to_dense(g1[g]), B = to_dense(g2[g]);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        std::vector<S> row(static_cast<std::size_t>(n * n), F.zero());
        // (A Phi)_{ik} - (Phi B)_{ik}
        for (int j = 0; j < n; ++j) {
          row[j * n + k] = row[j * n + k] + A[i][j];
          row[i * n + j] = row[i * n + j] - B[j][k];
        }
        eq.push_back(std::move(row));
      }
  }
  const auto ns = nullspace(F, eq, n * n);
  if (ns.empty()) return std::nullopt;
  for (int attempt = 0; attempt < 8; ++attempt) {
    DenseMatrix<S> phi(static_cast<std::size_t>(n), std::vector<S>(static_cast<std::size_t>(n), F.zero()));
    for (std::size_t b = 0; b < ns.size(); ++b) {
      const S c = F.from_rational(Rational(static_cast<long>((b + 1) * (attempt + 1) + b * b * attempt)));
      for (int e = 0; e < n * n; ++e) phi[e / n][e % n] = phi[e / n][e % n] + c * ns[b][e];
    }
    if (inverse(F, phi)) return phi;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Submodules

namespace {

template <class Field>
struct Echelon {
  using S = typename Field::Scalar;
  const Field& F;
  std::map<int, std::vector<S>> rows;  // pivot -> normalized row

  bool insert(std::vector<S> v) {
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
  }
  Subspace<S> subspace() const {
    Subspace<S> s;
    for (const auto& [p, r] : rows) s.rows.push_back(r);
    return s;
  }
};

template <class S>
std::vector<S> row_times(const std::vector<S>& v, const DenseMatrix<S>& R, const S& zero) {
  std::vector<S> out(R.empty() ? 0 : R[0].size(), zero);
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (scalar_is_zero(v[r])) continue;
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = out[c] + v[r] * R[r][c];
  }
  return out;
}

template <class Field>
Subspace<typename Field::Scalar> closure(const Field& F, const std::vector<DenseMatrix<typename Field::Scalar>>& G,
                                         const std::vector<std::vector<typename Field::Scalar>>& seeds) {
  Echelon<Field> E{F, {}};
  std::vector<std::vector<typename Field::Scalar>> queue;
  for (const auto& s : seeds)
    if (E.insert(s)) queue.push_back(s);
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (const auto& R : G) {
      auto y = row_times(queue[at], R, F.zero());
      if (E.insert(y)) queue.push_back(std::move(y));
    }
  return E.subspace();
}

template <class Field>
bool same(const Subspace<typename Field::Scalar>& a, const Subspace<typename Field::Scalar>& b) {
  return a.dim() == b.dim() && mat_equal(a.rows, b.rows);
}

template <class Field>
bool contains(const Field& F, const Subspace<typename Field::Scalar>& big, const Subspace<typename Field::Scalar>& small) {
  Echelon<Field> E{F, {}};
  for (const auto& r : big.rows) E.insert(r);
  for (const auto& r : small.rows)
    if (E.insert(r)) return false;
  return true;
}

template <class Field>
Subspace<typename Field::Scalar> intersect(const Field& F, const Subspace<typename Field::Scalar>& a,
                                           const Subspace<typename Field::Scalar>& b, int n) {
  using S = typename Field::Scalar;
  // x a-coords, y b-coords with x A = y B
  const int da = a.dim(), db = b.dim();
  if (da == 0 || db == 0) return {};
  DenseMatrix<S> eq(static_cast<std::size_t>(n), std::vector<S>(static_cast<std::size_t>(da + db), F.zero()));
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < da; ++i) eq[c][i] = a.rows[i][c];
    for (int j = 0; j < db; ++j) eq[c][da + j] = F.zero() - b.rows[j][c];
  }
  Echelon<Field> E{F, {}};
  for (const auto& sol : nullspace(F, eq, da + db)) {
    std::vector<S> v(static_cast<std::size_t>(n), F.zero());
    for (int i = 0; i < da; ++i)
      for (int c = 0; c < n; ++c) v[c] = v[c] + sol[i] * a.rows[i][c];
    E.insert(v);
  }
  return E.subspace();
}

}  // namespace

template <class Field>
SubmoduleLattice<Field> invariant_subspaces(const HeckeModule<Field>& M) {
  using S = typename Field::Scalar;
  const auto& F = M.field;
  const int n = M.dim();
  SubmoduleLattice<Field> L;
  L.dim = n;
  std::vector<DenseMatrix<S>> G;
  for (const auto& g : M.generators()) G.push_back(to_dense(g));

  // seeds: joint eigenvectors of the z's
  std::vector<std::vector<S>> atoms;
  std::vector<S> vals;
  for (const auto& a : M.params)
    if (std::none_of(vals.begin(), vals.end(), [&](const S& b) { return F.is_zero(a - b); })) vals.push_back(a);
  if (M.l == 0 || vals.empty()) {
    for (int i = 0; i < n; ++i) {
      std::vector<S> e(static_cast<std::size_t>(n), F.zero());
      e[i] = F.one();
      atoms.push_back(e);
    }
  } else {
    std::vector<int> choice(static_cast<std::size_t>(M.l), 0);
    for (;;) {
      DenseMatrix<S> eq;
      for (int j = 0; j < M.l; ++j) {
        const auto& Z = G[M.sigma.size() + j];
        for (int c = 0; c < n; ++c) {
          std::vector<S> row(static_cast<std::size_t>(n), F.zero());
          for (int r = 0; r < n; ++r) row[r] = Z[r][c];
          row[c] = row[c] - vals[choice[j]];
          eq.push_back(std::move(row));
        }
      }
      const auto ns = nullspace(F, eq, n);
      if (ns.size() > 1) L.note += "joint z-eigenspace of dimension " + std::to_string(ns.size()) + "; ";
      for (const auto& v : ns) atoms.push_back(v);
      int t = 0;
      while (t < M.l && ++choice[t] == static_cast<int>(vals.size())) choice[t++] = 0;
      if (t == M.l) break;
    }
  }

  std::vector<Subspace<S>> subs{Subspace<S>{}, closure(F, G, [&] {
                                  std::vector<std::vector<S>> all;
                                  for (int i = 0; i < n; ++i) {
                                    std::vector<S> e(static_cast<std::size_t>(n), F.zero());
                                    e[i] = F.one();
                                    all.push_back(e);
                                  }
                                  return all;
                                }())};
  auto add_sub = [&](Subspace<S> s) {
    for (const auto& t : subs)
      if (same<Field>(t, s)) return false;
    subs.push_back(std::move(s));
    return true;
  };
  for (const auto& a : atoms) add_sub(closure(F, G, {a}));
  for (bool grew = true; grew && subs.size() < 64;) {
    grew = false;
    const std::size_t cur = subs.size();
    for (std::size_t i = 0; i < cur; ++i)
      for (std::size_t j = i + 1; j < cur; ++j) {
        auto rows = subs[i].rows;
        rows.insert(rows.end(), subs[j].rows.begin(), subs[j].rows.end());
        grew |= add_sub(closure(F, G, rows));
        grew |= add_sub(intersect(F, subs[i], subs[j], n));
      }
  }
  std::stable_sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.dim() < b.dim(); });
  L.submodules = subs;
  L.irreducible = n > 0 && subs.size() == 2;
  L.algebra_dim = generated_algebra_dim(F, M.generators(), n);
  L.consistent = L.irreducible == (L.algebra_dim == n * n);

  // one maximal chain through the lattice
  Subspace<S> cur;
  while (cur.dim() < n) {
    const Subspace<S>* next = nullptr;
    for (const auto& s : subs)
      if (s.dim() > cur.dim() && contains(F, s, cur) && (!next || s.dim() < next->dim())) next = &s;
    L.composition_dims.push_back(next->dim() - cur.dim());
    cur = *next;
  }
  // socle from minimal nonzero submodules
  std::vector<std::vector<S>> soc;
  for (const auto& s : subs) {
    if (s.dim() == 0) continue;
    bool minimal = true;
    for (const auto& t : subs)
      if (t.dim() > 0 && t.dim() < s.dim() && contains(F, s, t)) minimal = false;
    if (minimal) soc.insert(soc.end(), s.rows.begin(), s.rows.end());
  }
  Echelon<Field> E{F, {}};
  for (auto& r : soc) E.insert(r);
  L.semisimple = static_cast<int>(E.rows.size()) == n;
  return L;
}

template <class Field>
StableLineReport<Field> stable_line(const Field& F, const typename Field::Scalar& a, bool a_first) {
  using S = typename Field::Scalar;
  const S eps = F.from_q(QScalar::q_pow(2));
  const S q = F.from_q(QScalar::q_pow(1)), qinv = F.from_q(QScalar::q_pow(-1));
  const auto M = build_MA(F, a_first ? std::vector<S>{a, a * eps} : std::vector<S>{a * eps, a});
  StableLineReport<Field> rep;
  rep.generator = a_first ? std::vector<S>{q * Rational(-1), F.one()} : std::vector<S>{qinv, F.one()};
  rep.generator_text = a_first ? "sigma - q" : "sigma + q^-1";
  rep.t_normalization = a_first ? "T - eps (T = q sigma)" : "1 + T (T = q sigma)";
  auto eigen = [&](const SparseMatrix<S>& R, S& out) {
    const auto w = row_times(rep.generator, to_dense(R), F.zero());
    // generator has a 1 in the sigma slot
    out = w[1];
    return F.is_zero(w[0] - out * rep.generator[0]);
  };
  rep.stable = eigen(M.sig(1), rep.sigma_eigenvalue) && eigen(M.zz(1), rep.z1_eigenvalue) &&
               eigen(M.zz(2), rep.z2_eigenvalue);
  const auto L = invariant_subspaces(M);
  rep.composition_dims = L.composition_dims;
  rep.non_split = L.submodules.size() == 3 && !L.semisimple && L.composition_dims == std::vector<int>{1, 1};
  return rep;
}

std::vector<ReducibilityTrial> reducibility_trials(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<ReducibilityTrial> out;
  for (int t = 0; t < trials; ++t) {
    Rational q(rnd(2, 9), rnd(1, 7));
    q.canonicalize();
    if (q == 1) q = Rational(3, 2);
    if (rnd(0, 1)) q = -q;
    Rational a1(rnd(1, 12), rnd(1, 12));
    a1.canonicalize();
    if (rnd(0, 1)) a1 = -a1;
    const Rational eps = q * q;
    Rational a2;
    switch (t % 3) {
      case 0: a2 = a1 * eps; break;
      case 1: a2 = a1 / eps; break;
      default: a2 = Rational(rnd(1, 20), rnd(1, 20)) * (rnd(0, 1) ? 1 : -1); a2.canonicalize();
    }
    RationalField F(q);
    const auto L = invariant_subspaces(build_MA(F, {a1, a2}));
    ReducibilityTrial tr;
    tr.q = q.get_str();
    tr.a1 = a1.get_str();
    tr.a2 = a2.get_str();
    tr.ratio_is_eps = a2 == a1 * eps || a2 * eps == a1;
    tr.reducible = !L.irreducible;
    out.push_back(tr);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Segments

std::vector<int> Segment::elements() const {
  std::vector<int> out;
  for (int k = 0; k < length; ++k) out.push_back(center + 1 - length + 2 * k);
  return out;
}

DrinfeldFromSegments segments_to_drinfeld(const std::vector<Segment>& S, int n) {
  DrinfeldFromSegments out;
  out.n = n;
  for (int i = 1; i <= n; ++i) out.centers[i];
  for (const auto& s : S) {
    if (s.length < 1) throw InputError("segment length must be >= 1");
    if (s.length > n) {
      out.warnings.push_back("segment of length " + std::to_string(s.length) + " exceeds n = " +
                             std::to_string(n) + "; outside the range of the equivalence");
      continue;
    }
    out.centers[s.length].push_back(s.center);
  }
  for (auto& [i, c] : out.centers) std::sort(c.begin(), c.end());
  return out;
}

std::string DrinfeldFromSegments::str() const {
  std::string s;
  for (const auto& [i, c] : centers) {
    s += (s.empty() ? "" : ", ") + std::string("P_") + std::to_string(i) + " = ";
    if (c.empty()) s += "1";
    for (int a : c) s += "(u q^" + std::to_string(a) + " - 1)";
  }
  return s;
}

// ---------------------------------------------------------------------------

template class AffineHecke<RationalField>;
template class AffineHecke<CyclotomicField>;
template class AffineHecke<GenericQField>;

#define QTOR_HECKE_INST(F)                                                                    \
  template struct HeckeModule<F>;                                                             \
  template HeckeModule<F> build_MA<F>(const F&, const std::vector<F::Scalar>&);               \
  template HeckeModule<F> trivial_hecke<F>(const F&);                                         \
  template HeckeRelationReport check_hecke_relations<F>(const HeckeModule<F>&);               \
  template HeckeModule<F> zelevinsky_product<F>(const HeckeModule<F>&, const HeckeModule<F>&);

QTOR_HECKE_INST(RationalField)
QTOR_HECKE_INST(CyclotomicField)
QTOR_HECKE_INST(GenericQField)

#define QTOR_HECKE_FIELD_INST(F)                                                                  \
  template std::optional<DenseMatrix<F::Scalar>> find_isomorphism<F>(const HeckeModule<F>&,       \
                                                                     const HeckeModule<F>&);      \
  template SubmoduleLattice<F> invariant_subspaces<F>(const HeckeModule<F>&);                    \
  template StableLineReport<F> stable_line<F>(const F&, const F::Scalar&, bool);

QTOR_HECKE_FIELD_INST(RationalField)
QTOR_HECKE_FIELD_INST(CyclotomicField)

}  // namespace qtor
