#include "qtor/qchar.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace qtor {

std::int64_t QCharacter::coeff(const YMonomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? 0 : it->second.coeff;
}

std::vector<YMonomial> QCharacter::dominant_monomials() const {
  std::vector<YMonomial> out;
  for (const auto& [m, t] : terms)
    if (m.is_dominant()) out.push_back(m);
  return out;
}

QCharacter QCharacter::truncated(int d) const {
  QCharacter out{cartan, top, std::min(depth, d), {}};
  for (const auto& [m, t] : terms)
    if (t.height <= d) out.terms.emplace(m, t);
  return out;
}

std::map<YMonomial, std::int64_t> QCharacter::term_map(int max_height) const {
  std::map<YMonomial, std::int64_t> out;
  for (const auto& [m, t] : terms)
    if (t.height <= max_height) out.emplace(m, t.coeff);
  return out;
}

namespace {

struct Rank1Term {
  int n_a = 0;
  std::int64_t mult = 0;
};

// Character of the simple U_q(sl_2^) module carried by the node-i part of m,
// written as ratios to m: map ratio -> (number of A^{-1}, multiplicity).
std::map<YMonomial, Rank1Term> rank1_expansion(const CartanData& C, const YMonomial& m, int i) {
  const int r = C.r(i);
  std::map<int, int> pool;
  for (const auto& [l, e] : m.node_part(i)) pool[l] += e;
  std::map<YMonomial, Rank1Term> acc{{YMonomial(), {0, 1}}};
  while (!pool.empty()) {
    const int a = pool.begin()->first;
    int len = 0;
    for (auto it = pool.find(a); it != pool.end(); it = pool.find(a + 2 * r * len)) {
      if (--it->second == 0) pool.erase(it);
      ++len;
    }
    std::vector<YMonomial> string_terms{YMonomial()};
    for (int j = 0; j < len; ++j)
      string_terms.push_back(string_terms.back() *
                             a_monomial(C, i, a + 2 * r * (len - 1 - j) + r).inverse());
    std::map<YMonomial, Rank1Term> next;
    for (const auto& [ratio, t] : acc)
      for (int s = 0; s <= len; ++s) {
        auto& slot = next[ratio * string_terms[s]];
        slot.n_a = t.n_a + s;
        slot.mult += t.mult;
      }
    acc = std::move(next);
  }
  return acc;
}

struct FmInfo {
  std::int64_t s = 0;
  std::map<int, std::int64_t> si;
  int height = 0;
};

}  // namespace

QCharacter fm_expand(std::shared_ptr<const CartanData> C, const YMonomial& mtop, int depth,
                     const FmOptions& opt) {
  if (!C) throw InputError("fm_expand: missing Cartan data");
  if (depth < 0) throw InputError("fm_expand: depth must be >= 0");
  if (!mtop.is_dominant()) throw InputError("fm_expand: top monomial " + mtop.str() + " is not dominant");
  if (!quantized_cartan_condition(*C))
    throw InputError("fm_expand: quantized Cartan condition fails for " + C->name());
  for (int i : mtop.nodes())
    if (!C->has_node(i)) throw InputError("fm_expand: node " + std::to_string(i) + " not in diagram");

  std::map<YMonomial, FmInfo> info;
  info[mtop] = {1, {}, 0};
  std::vector<std::set<YMonomial>> layers(static_cast<std::size_t>(depth) + 1);
  layers[0].insert(mtop);
  std::mt19937_64 rng(opt.shuffle_seed.value_or(0));

  for (int h = 0; h <= depth; ++h) {
    std::vector<YMonomial> order(layers[h].begin(), layers[h].end());
    if (opt.shuffle_seed) std::shuffle(order.begin(), order.end(), rng);
    for (const auto& m : order) {
      FmInfo& I = info.at(m);
      for (int i : m.nodes()) {
        const std::int64_t si = I.si[i];
        if (!m.is_i_dominant(i)) {
          if (si < I.s)
            throw AlgorithmError("fm_expand: " + m.str() + " is not " + std::to_string(i) +
                                 "-dominant but owes multiplicity " + std::to_string(I.s - si));
          continue;
        }
        if (si >= I.s) continue;
        const std::int64_t owed = I.s - si;
        for (const auto& [ratio, t] : rank1_expansion(*C, m, i)) {
          if (t.n_a == 0) {
            I.si[i] += owed * t.mult;
            continue;
          }
          const int hh = h + t.n_a;
          if (hh > depth) continue;
          const YMonomial m2 = m * ratio;
          auto [it, fresh] = info.try_emplace(m2);
          FmInfo& J = it->second;
          if (fresh) {
            J.height = hh;
            layers[hh].insert(m2);
          } else if (J.height != hh) {
            throw AlgorithmError("fm_expand: inconsistent height for " + m2.str());
          }
          J.si[i] += owed * t.mult;
          J.s = std::max(J.s, J.si[i]);
        }
      }
    }
  }
  QCharacter out{C, mtop, depth, {}};
  for (const auto& [m, I] : info)
    if (I.s > 0) out.terms.emplace(m, QTerm{I.s, I.height});
  return out;
}

YMonomial kr_top(const CartanData& C, int i, int k, int l) {
  if (k < 0) throw InputError("KR module needs k >= 0");
  YMonomial m;
  for (int s = 0; s < k; ++s) m *= YMonomial::Y(i, l + 2 * C.r(i) * s);
  return m;
}

QCharacter kr_qchar(std::shared_ptr<const CartanData> C, int i, int k, int l, int depth,
                    const FmOptions& opt) {
  return fm_expand(C, kr_top(*C, i, k, l), depth, opt);
}

QCharacter truncated_product(const QCharacter& a, const QCharacter& b, int depth) {
  QCharacter out{a.cartan, a.top * b.top, std::min({depth, a.depth, b.depth}), {}};
  for (const auto& [ma, ta] : a.terms)
    for (const auto& [mb, tb] : b.terms) {
      const int h = ta.height + tb.height;
      if (h > out.depth) continue;
      auto& slot = out.terms[ma * mb];
      slot.coeff += ta.coeff * tb.coeff;
      slot.height = h;
    }
  return out;
}

STerm s_term(const CartanData& C, int i, int k, int l) {
  if (k < 1) throw InputError("s_term needs k >= 1");
  STerm out;
  out.nu.fundamental[i] += k;
  out.nu.roots[i] -= k;
  for (int j : C.neighbors(i)) {
    const int cji = C.entry(j, i), cij = C.entry(i, j);
    if (cji >= 0) continue;
    for (int lp = 1; lp <= -cij; ++lp) {
      const int num = C.r(i) * (k - lp);
      const int den = C.r(j);
      const int floor_div = num >= 0 ? num / den : -((-num + den - 1) / den);
      const int K = -cji + floor_div;
      const int shift_num = C.r(j) * (2 * lp - 1);
      if (shift_num % (-cij) != 0)
        throw DomainError("s_term: spectral shift " + std::to_string(shift_num) + "/" +
                          std::to_string(-cij) + " is off the q-lattice");
      out.factors.push_back({j, K, l + shift_num / (-cij)});
      out.nu.fundamental[j] -= K;
      if (out.nu.fundamental[j] == 0) out.nu.fundamental.erase(j);
    }
  }
  return out;
}

IdentityReport verify_product_identity(std::shared_ptr<const CartanData> C,
                                       const std::vector<KrSpec>& lhs,
                                       const std::vector<std::vector<KrSpec>>& rhs, int depth) {
  if (depth < 0) throw InputError("depth must be >= 0");
  IdentityReport rep;
  rep.depth = depth;
  auto product_of = [&](const std::vector<KrSpec>& fs, int d) {
    QCharacter acc{C, YMonomial(), d, {{YMonomial(), {1, 0}}}};
    for (const auto& f : fs) acc = truncated_product(acc, kr_qchar(C, f.node, f.k, f.l, d), d);
    return acc;
  };
  YMonomial top;
  for (const auto& f : lhs) top *= kr_top(*C, f.node, f.k, f.l);
  const auto left = product_of(lhs, depth).term_map(depth);
  rep.lhs_terms = left.size();

  std::map<YMonomial, std::int64_t> right;
  const int cap = depth + 256;
  for (const auto& term : rhs) {
    YMonomial t;
    for (const auto& f : term) t *= kr_top(*C, f.node, f.k, f.l);
    auto off = dominance_leq(*C, t, top, cap);
    if (!off) {
      rep.holds = false;
      rep.notes.push_back("right-hand top " + t.str() + " is not below " + top.str());
      continue;
    }
    const int o = static_cast<int>(off->size());
    if (o > depth) continue;
    for (const auto& [m, c] : product_of(term, depth - o).term_map(depth - o)) right[m] += c;
  }
  std::set<YMonomial> keys;
  for (const auto& [m, c] : left) keys.insert(m);
  for (const auto& [m, c] : right) keys.insert(m);
  for (const auto& m : keys) {
    const auto l = left.count(m) ? left.at(m) : 0;
    const auto r = right.count(m) ? right.at(m) : 0;
    if (l != r) rep.mismatches.push_back({m, l, r});
  }
  if (!rep.mismatches.empty()) rep.holds = false;
  return rep;
}

TSystemReport verify_tsystem(std::shared_ptr<const CartanData> C, int i, int k, int l, int depth) {
  if (k < 1) throw InputError("verify_tsystem needs k >= 1");
  if (depth < 1) throw InputError("verify_tsystem needs depth >= 1");
  const int r = C->r(i);
  TSystemReport rep;
  rep.s = s_term(*C, i, k, l);
  static_cast<IdentityReport&>(rep) = verify_product_identity(
      C, {{i, k, l}, {i, k, l + 2 * r}}, {rep.s.factors, {{i, k + 1, l}, {i, k - 1, l + 2 * r}}}, depth);

  YMonomial stop;
  for (const auto& f : rep.s.factors) stop *= kr_top(*C, f.node, f.k, f.l);
  std::vector<int> at{i};
  for (int j : C->neighbors(i)) at.push_back(j);
  WeightVector shifted = rep.s.nu;
  for (const auto& f : rep.s.factors) shifted.fundamental[f.node] += f.k;
  const auto sums = stop.node_sums();
  for (const auto& [j, v] : shifted.pairing(*C, at)) {
    const long y = sums.count(j) ? sums.at(j) : 0;
    if (v != y) rep.nu_defect[j] = v - y;
  }
  return rep;
}

YMonomial r_shift(const CartanData& C, const YMonomial& m, int steps) {
  const int n = C.cycle_length();
  return m.relabeled([&](int node) { return ((node + steps) % n + n) % n; });
}

QCharacter r_shift(const QCharacter& x, int steps) {
  QCharacter out{x.cartan, r_shift(*x.cartan, x.top, steps), x.depth, {}};
  for (const auto& [m, t] : x.terms) out.terms.emplace(r_shift(*x.cartan, m, steps), t);
  return out;
}

bool is_special(const QCharacter& x) {
  const auto dom = x.dominant_monomials();
  return dom.size() == 1 && x.coeff(dom.front()) == 1;
}

OctahedronReport octahedron_verify(int depth, int i_lo, int i_hi, int k_lo, int k_hi, int t_lo,
                                   int t_hi) {
  if (k_lo < 1) throw InputError("octahedron_verify needs k >= 1");
  auto C = std::make_shared<const CartanData>(CartanData::infinite_a());
  auto T = [](int i, int k, int t) { return KrSpec{i, k, t + 1 - k}; };
  OctahedronReport rep;
  for (int i = i_lo; i <= i_hi; ++i)
    for (int k = k_lo; k <= k_hi; ++k)
      for (int t = t_lo; t <= t_hi; ++t) {
        ++rep.cells;
        auto r = verify_product_identity(C, {T(i, k, t - 1), T(i, k, t + 1)},
                                         {{T(i + 1, k, t), T(i - 1, k, t)},
                                          {T(i, k + 1, t), T(i, k - 1, t)}},
                                         depth);
        if (!r.holds) {
          rep.holds = false;
          std::string msg = "cell (i=" + std::to_string(i) + ",k=" + std::to_string(k) +
                            ",t=" + std::to_string(t) + ")";
          if (!r.mismatches.empty())
            msg += ": " + r.mismatches.front().monomial.str() + " lhs " +
                   std::to_string(r.mismatches.front().lhs) + " rhs " +
                   std::to_string(r.mismatches.front().rhs);
          rep.failures.push_back(msg);
        }
      }
  return rep;
}

std::vector<QEdge> character_edges(const QCharacter& x) {
  std::vector<QEdge> out;
  for (const auto& [m, t] : x.terms)
    for (const auto& [m2, t2] : x.terms) {
      if (t2.height != t.height + 1) continue;
      auto f = dominance_leq(*x.cartan, m2, m, 1);
      if (f && f->size() == 1) out.push_back({m, m2, f->front().first, f->front().second});
    }
  return out;
}

}  // namespace qtor
