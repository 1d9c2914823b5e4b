#include "qtor/crystal.hpp"

#include <algorithm>
#include <numeric>

namespace qtor {

namespace {

struct Extremes {
  int phi = 0, eps = 0;
  int l_f = 0, l_e = 0;
  bool tie_f = false, tie_e = false;
};

Extremes extremes(const YMonomial& m, int i) {
  const auto part = m.node_part(i);
  Extremes x;
  int best = 0, prefix = 0;
  bool have = false;
  for (const auto& [l, e] : part) {
    prefix += e;
    if (!have || prefix > best) {
      best = prefix;
      x.l_f = l;
      x.tie_f = false;
      have = true;
    } else if (prefix == best) {
      x.tie_f = true;
    }
  }
  x.phi = std::max(0, have ? best : 0);
  best = 0;
  have = false;
  int suffix = 0;
  for (auto it = part.rbegin(); it != part.rend(); ++it) {
    suffix += it->second;
    if (!have || -suffix > best) {
      best = -suffix;
      x.l_e = it->first;
      x.tie_e = false;
      have = true;
    } else if (-suffix == best) {
      x.tie_e = true;
    }
  }
  x.eps = std::max(0, have ? best : 0);
  return x;
}

}  // namespace

std::pair<int, int> phi_eps(const YMonomial& m, int i) {
  const auto x = extremes(m, i);
  return {x.phi, x.eps};
}

std::pair<bool, bool> kashiwara_ties(const YMonomial& m, int i) {
  const auto x = extremes(m, i);
  return {x.tie_f, x.tie_e};
}

std::optional<YMonomial> kashiwara_apply(const CartanData& C, const YMonomial& m, int i,
                                         KashiwaraDir dir) {
  const auto x = extremes(m, i);
  if (dir == KashiwaraDir::F) {
    if (x.phi == 0) return std::nullopt;
    return m * a_monomial(C, i, x.l_f + C.r(i)).inverse();
  }
  if (x.eps == 0) return std::nullopt;
  return m * a_monomial(C, i, x.l_e - C.r(i));
}

WalkResult orbit_walk(const CartanData& C, const YMonomial& seed, const std::vector<int>& op_cycle,
                      int steps) {
  if (steps < 0) throw InputError("steps must be >= 0");
  if (op_cycle.empty() && steps > 0) throw InputError("empty operator cycle");
  WalkResult out;
  out.path.push_back(seed);
  for (int s = 0; s < steps; ++s) {
    const int i = op_cycle[static_cast<std::size_t>(s) % op_cycle.size()];
    if (kashiwara_ties(out.path.back(), i).first) out.ties.push_back(s);
    auto next = kashiwara_apply(C, out.path.back(), i, KashiwaraDir::F);
    if (!next) {
      out.dead_end = std::make_pair(s, i);
      break;
    }
    out.path.push_back(std::move(*next));
  }
  return out;
}

YMonomial reduce_mod(const YMonomial& m, int N) {
  if (N < 1) throw InputError("root-of-unity order must be >= 1");
  std::vector<YFactor> f;
  for (const auto& x : m.factors()) f.push_back({x.node, ((x.l % N) + N) % N, x.e});
  return YMonomial::from_factors(std::move(f));
}

int root_of_unity_period(const CartanData& C, const YMonomial& seed,
                         const std::vector<int>& op_cycle, int N) {
  if (N < 1) throw InputError("root-of-unity order must be >= 1");
  const int max_period = static_cast<int>(op_cycle.size()) * N * 4;
  const auto walk = orbit_walk(C, seed, op_cycle, 3 * max_period);
  if (walk.dead_end)
    throw AlgorithmError("walk dead-ends at step " + std::to_string(walk.dead_end->first) +
                         " (node " + std::to_string(walk.dead_end->second) + ")");
  std::vector<YMonomial> red;
  for (const auto& m : walk.path) red.push_back(reduce_mod(m, N));
  for (int p = 1; p <= max_period; ++p) {
    bool ok = true;
    for (std::size_t s = 0; s + p < red.size() && ok; ++s) ok = red[s] == red[s + p];
    if (ok) return p;
  }
  throw AlgorithmError("no period up to " + std::to_string(max_period));
}

}  // namespace qtor
