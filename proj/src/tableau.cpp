#include "qtor/tableau.hpp"

#include <functional>
#include <sstream>

namespace qtor {

int StabTableau::value(int i, int j) const {
  auto it = deviations.find({i, j});
  return it == deviations.end() ? i : it->second;
}

int StabTableau::excess() const {
  int e = 0;
  for (const auto& [ij, t] : deviations) e += t - ij.first;
  return e;
}

bool StabTableau::valid() const {
  int lowest = 0;
  for (const auto& [ij, t] : deviations) {
    if (ij.first > 0 || ij.second < 1 || ij.second > width || t == ij.first) return false;
    lowest = std::min(lowest, ij.first);
  }
  for (int i = lowest - 1; i <= 0; ++i)
    for (int j = 1; j <= width; ++j) {
      if (j < width && value(i, j) > value(i, j + 1)) return false;
      if (i < 0 && value(i, j) >= value(i + 1, j)) return false;
    }
  return true;
}

std::string StabTableau::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [ij, t] : deviations) {
    if (!first) os << ", ";
    first = false;
    os << "T[" << ij.first << "," << ij.second << "]=" << t;
  }
  os << "}";
  return os.str();
}

namespace {

using Partition = std::vector<int>;

void partitions_upto(int budget, int max_part, Partition& cur, std::vector<Partition>& out) {
  out.push_back(cur);
  for (int p = std::min(budget, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_upto(budget - p, p, cur, out);
    cur.pop_back();
  }
}

bool contains(const Partition& big, const Partition& small) {
  if (small.size() > big.size()) return false;
  for (std::size_t r = 0; r < small.size(); ++r)
    if (small[r] > big[r]) return false;
  return true;
}

int size_of(const Partition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

int cls(int t, int n) {
  const int m = n + 1;
  return ((t % m) + m) % m;
}

// box(t)_b = Y_{[t-1], b+t}^{-1} Y_{[t], b+t-1}
YMonomial box(int t, int b, int n, int shift) {
  return YMonomial::Y(cls(t - 1 + shift, n), b + t, -1) * YMonomial::Y(cls(t + shift, n), b + t - 1);
}

}  // namespace

std::vector<StabTableau> enumerate_tableaux(int k, int max_excess) {
  if (k < 1) throw InputError("tableau width must be >= 1");
  if (max_excess < 0) throw InputError("max_excess must be >= 0");
  std::vector<Partition> parts;
  Partition cur;
  partitions_upto(max_excess, max_excess, cur, parts);
  std::vector<StabTableau> out;
  // Column j deviations read downward from row 0 form a partition; the
  // columns are nested from left to right.
  std::vector<const Partition*> chain;
  std::function<void(int, int)> rec = [&](int j, int budget) {
    if (j > k) {
      StabTableau T;
      T.width = k;
      for (int c = 1; c <= k; ++c) {
        const auto& p = *chain[c - 1];
        for (std::size_t r = 0; r < p.size(); ++r) {
          const int i = -static_cast<int>(r);
          T.deviations[{i, c}] = i + p[r];
        }
      }
      out.push_back(std::move(T));
      return;
    }
    for (const auto& p : parts) {
      const int s = size_of(p);
      if (s > budget) continue;
      if (!chain.empty() && !contains(p, *chain.back())) continue;
      chain.push_back(&p);
      rec(j + 1, budget - s);
      chain.pop_back();
    }
  };
  rec(1, max_excess);
  return out;
}

YMonomial tableau_monomial(const StabTableau& T, int n, int l, int shift) {
  if (n < 2) throw InputError("tableau formula needs n >= 2");
  YMonomial m;
  for (int j = 1; j <= T.width; ++j) m *= YMonomial::Y(cls(shift, n), l + 2 * j - 1);
  for (const auto& [ij, t] : T.deviations) {
    const auto [i, j] = ij;
    const int b = l + 2 * (j - i);
    m *= box(t, b, n, shift) * box(i, b, n, shift).inverse();
  }
  return m;
}

YMonomial tableau_monomial_explicit(const StabTableau& T, int n, int l, int shift, int M) {
  if (n < 2) throw InputError("tableau formula needs n >= 2");
  YMonomial m;
  for (int i = -M; i <= 0; ++i)
    for (int j = 1; j <= T.width; ++j) m *= box(T.value(i, j), l + 2 * (j - i), n, shift);
  return m;
}

TableauCompareReport tableau_qchar_compare(int n, int k, int shift, int l, int depth) {
  if (depth < 0) throw InputError("depth must be >= 0");
  TableauCompareReport rep;
  rep.n = n;
  rep.k = k;
  rep.shift = shift;
  rep.l = l;
  rep.depth = depth;
  auto C = std::make_shared<const CartanData>(CartanData::preset("Ator:" + std::to_string(n)));
  const int node = cls(shift, n);
  const auto x = kr_qchar(C, node, k, l + 1, depth);
  rep.qchar_terms = x.terms.size();

  auto collect = [&](int bound, std::map<YMonomial, std::int64_t>& count,
                     std::map<YMonomial, std::string>& example) {
    rep.excess_bound_used = bound;
    rep.tableaux = 0;
    for (const auto& T : enumerate_tableaux(k, bound)) {
      const auto m = tableau_monomial(T, n, l, shift);
      const auto f = dominance_leq(*C, m, x.top, bound + depth + 8);
      const int h = f ? static_cast<int>(f->size()) : -1;
      if (h != T.excess()) rep.excess_is_height = false;
      if (h < 0 || h > depth) continue;
      ++rep.tableaux;
      ++count[m];
      example.emplace(m, T.str());
    }
  };
  std::map<YMonomial, std::int64_t> count;
  std::map<YMonomial, std::string> example;
  collect(depth, count, example);
  if (!rep.excess_is_height) {
    count.clear();
    example.clear();
    collect(2 * depth + 2, count, example);
  }
  const auto q = x.term_map(depth);
  std::map<YMonomial, int> keys;
  for (const auto& [m, c] : count) keys[m];
  for (const auto& [m, c] : q) keys[m];
  for (const auto& [m, unused] : keys) {
    const auto a = count.count(m) ? count.at(m) : 0;
    const auto b = q.count(m) ? q.at(m) : 0;
    if (a != b) rep.mismatches.push_back({m, a, b, example.count(m) ? example.at(m) : ""});
  }
  rep.agree = rep.mismatches.empty();
  return rep;
}

}  // namespace qtor
