#include <random>

#include "doctest.h"
#include "qtor/crystal.hpp"

using namespace qtor;

namespace {

YMonomial M(const char* s) { return YMonomial::parse(s); }

// prefix/suffix sums computed over an explicit dense range
std::pair<int, int> oracle_phi_eps(const YMonomial& m, int i) {
  int lo = 0, hi = 0;
  for (const auto& f : m.factors()) {
    lo = std::min(lo, f.l);
    hi = std::max(hi, f.l);
  }
  int phi = 0, eps = 0;
  for (int L = lo; L <= hi; ++L) {
    int s = 0, t = 0;
    for (int l = lo; l <= L; ++l) s += m.exponent(i, l);
    for (int l = L; l <= hi; ++l) t += m.exponent(i, l);
    phi = std::max(phi, s);
    eps = std::max(eps, -t);
  }
  return {phi, eps};
}

// node i spectral values restricted to l = i + 1 mod 2
YMonomial random_parity_mono(std::mt19937& rng) {
  std::vector<YFactor> f;
  const int nf = 1 + static_cast<int>(rng() % 5);
  for (int t = 0; t < nf; ++t) {
    const int node = static_cast<int>(rng() % 4);
    const int l = 2 * (static_cast<int>(rng() % 9) - 4) + (node + 1) % 2;
    f.push_back({node, l, static_cast<int>(rng() % 5) - 2});
  }
  return YMonomial::from_factors(f);
}

}  // namespace

TEST_CASE("phi and eps examples") {
  CHECK(phi_eps(M("Y[1,0]Y[0,1]^-1"), 1) == std::pair{1, 0});
  CHECK(phi_eps(M("Y[2,1]Y[1,2]^-1"), 1) == std::pair{0, 1});
  for (int i = 0; i < 4; ++i) CHECK(phi_eps(YMonomial(), i) == std::pair{0, 0});
  CHECK(phi_eps(M("Y[0,0]^-1 Y[0,2]^2"), 0) == std::pair{1, 0});
  CHECK(phi_eps(M("Y[0,0]^2 Y[0,2]^-3"), 0) == std::pair{2, 3});
}

TEST_CASE("Kashiwara operators on the chain") {
  auto C = CartanData::preset("A3tor");
  CHECK(kashiwara_apply(C, M("Y[1,0]Y[0,1]^-1"), 1, KashiwaraDir::F) == M("Y[2,1]Y[1,2]^-1"));
  CHECK(kashiwara_apply(C, M("Y[2,1]Y[1,2]^-1"), 1, KashiwaraDir::E) == M("Y[1,0]Y[0,1]^-1"));
  CHECK_FALSE(kashiwara_apply(C, M("Y[1,2]^-1 Y[2,1]"), 1, KashiwaraDir::F));
  CHECK_FALSE(kashiwara_apply(C, M("Y[1,0]Y[0,1]^-1"), 1, KashiwaraDir::E));
}

TEST_CASE("chain walk") {
  auto C = CartanData::preset("A3tor");
  const auto seed = M("Y[1,0]Y[0,1]^-1");
  auto w = orbit_walk(C, seed, {1, 2, 3, 0}, 8);
  CHECK_FALSE(w.dead_end);
  REQUIRE(w.path.size() == 9);
  const char* shown[] = {"Y[1,0]Y[0,1]^-1", "Y[2,1]Y[1,2]^-1", "Y[3,2]Y[2,3]^-1",
                         "Y[0,3]Y[3,4]^-1", "Y[1,4]Y[0,5]^-1"};
  for (int s = 0; s < 5; ++s) CHECK(w.path[s] == M(shown[s]));
  for (int s = 0; s <= 8; ++s)
    CHECK(w.path[s] == YMonomial::Y((1 + s) % 4, s) * YMonomial::Y(s % 4, s + 1, -1));
  // one cycle shifts spectral exponents by 4
  for (int s = 0; s + 4 <= 8; ++s) CHECK(w.path[s + 4] == w.path[s].shifted(4));
  CHECK(orbit_walk(C, seed, {1, 2, 3, 0}, 0).path == std::vector<YMonomial>{seed});
  auto dead = orbit_walk(C, seed, {2}, 3);
  REQUIRE(dead.dead_end);
  CHECK(dead.dead_end->first == 0);
  CHECK(dead.dead_end->second == 2);
}

TEST_CASE("root of unity periods") {
  auto C = CartanData::preset("A3tor");
  const auto seed = M("Y[1,0]Y[0,1]^-1");
  CHECK(root_of_unity_period(C, seed, {1, 2, 3, 0}, 4) == 4);
  for (int L = 1; L <= 3; ++L) CHECK(root_of_unity_period(C, seed, {1, 2, 3, 0}, 4 * L) == 4 * L);
  CHECK(root_of_unity_period(C, seed, {1, 2, 3, 0}, 1) == 4);
  // at q = i the displayed cycle: exponents 0,1 / 1,2 / 2,3 / 3,0
  auto w = orbit_walk(C, seed, {1, 2, 3, 0}, 4);
  const char* at_i[] = {"Y[1,0]Y[0,1]^-1", "Y[2,1]Y[1,2]^-1", "Y[3,2]Y[2,3]^-1",
                        "Y[0,3]Y[3,0]^-1", "Y[1,0]Y[0,1]^-1"};
  for (int s = 0; s < 5; ++s) CHECK(reduce_mod(w.path[s], 4) == M(at_i[s]));
  CHECK_THROWS_AS(root_of_unity_period(C, seed, {2}, 4), AlgorithmError);
}

TEST_CASE("phi - eps equals the node sum, on random monomials") {
  std::mt19937 rng(17);
  for (int t = 0; t < 1000; ++t) {
    auto m = random_parity_mono(rng);
    for (int i = 0; i < 4; ++i) {
      auto [phi, eps] = phi_eps(m, i);
      CHECK(phi - eps == m.node_sums()[i]);
      CHECK(std::pair{phi, eps} == oracle_phi_eps(m, i));
    }
  }
}

TEST_CASE("e and f are mutually inverse on the parity lattice") {
  auto C = CartanData::preset("A3tor");
  std::mt19937 rng(23);
  for (int t = 0; t < 1000; ++t) {
    auto m = random_parity_mono(rng);
    for (int i = 0; i < 4; ++i) {
      if (auto f = kashiwara_apply(C, m, i, KashiwaraDir::F)) {
        auto back = kashiwara_apply(C, *f, i, KashiwaraDir::E);
        REQUIRE(back);
        CHECK(*back == m);
        auto s0 = m.node_sums(), s1 = f->node_sums();
        for (int j = 0; j < 4; ++j) CHECK(s1[j] - s0[j] == -C.entry(j, i));
      }
      if (auto e = kashiwara_apply(C, m, i, KashiwaraDir::E)) {
        auto back = kashiwara_apply(C, *e, i, KashiwaraDir::F);
        REQUIRE(back);
        CHECK(*back == m);
      }
    }
  }
}
