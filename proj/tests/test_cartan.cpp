#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "qtor/cartan.hpp"

using namespace qtor;

namespace {

// Positive integer symmetrizer by brute force over a small box.
std::vector<int> oracle_symmetrizer(const std::vector<std::vector<int>>& c, int bound = 12) {
  const std::size_t n = c.size();
  std::vector<int> r(n, 1);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = r[i] * c[i][j] == r[j] * c[j][i];
    if (ok) return r;
    std::size_t k = 0;
    while (k < n && ++r[k] > bound) r[k++] = 1;
    if (k == n) return {};
  }
}

std::vector<std::vector<int>> permuted(const std::vector<std::vector<int>>& c,
                                       const std::vector<int>& p) {
  std::vector<std::vector<int>> out(c.size(), std::vector<int>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out[p[i]][p[j]] = c[i][j];
  return out;
}

}  // namespace

TEST_CASE("five-node cyclic matrix is affine with trivial symmetrizer") {
  auto C = CartanData::preset("Ator:4");
  CHECK(C.type() == CartanType::Affine);
  for (int i : C.nodes()) CHECK(C.r(i) == 1);
  CHECK(C.is_cyclic_a());
  CHECK(C.cycle_length() == 5);
}

TEST_CASE("rank one and finite types") {
  auto C = CartanData::from_matrix({{2}}, 1);
  CHECK(C.type() == CartanType::Finite);
  CHECK(C.r(1) == 1);
  CHECK(CartanData::preset("A:5").type() == CartanType::Finite);
  CHECK(CartanData::preset("D:4").type() == CartanType::Finite);
  CHECK(CartanData::parse_text("2 -1 0\n-1 2 -3\n0 -2 2").type() == CartanType::Indefinite);
}

TEST_CASE("B_{n,p} symmetrizer") {
  auto C = CartanData::preset("Bnp:2,3");
  CHECK(C.entry(2, 1) == -3);
  CHECK(C.entry(1, 2) == -1);
  auto oracle = oracle_symmetrizer(C.window(C.nodes()));
  REQUIRE(oracle.size() == 2);
  CHECK(C.r(1) == oracle[0]);
  CHECK(C.r(2) == oracle[1]);
  CHECK(C.r(1) == 3);
  CHECK(C.r(2) == 1);
  CHECK(C.type() == CartanType::Finite);
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p <= 4; ++p) {
      auto B = CartanData::preset("Bnp:" + std::to_string(n) + "," + std::to_string(p));
      auto o = oracle_symmetrizer(B.window(B.nodes()), 8);
      REQUIRE(!o.empty());
      for (int i = 1; i <= n; ++i) CHECK(B.r(i) == o[i - 1]);
    }
}

TEST_CASE("axiom violations") {
  CHECK_THROWS_AS(CartanData::from_matrix({{2, 1}, {-1, 2}}), InputError);
  CHECK_THROWS_AS(CartanData::from_matrix({{2, 0}, {-1, 2}}), InputError);
  CHECK_THROWS_AS(CartanData::from_matrix({{3}}), InputError);
  CHECK_THROWS_AS(CartanData::from_matrix({{2, -1}}), InputError);
  // cycle with inconsistent ratios
  CHECK_THROWS_AS(CartanData::parse_text("2 -1 -1\n-2 2 -1\n-1 -1 2"), InputError);
  CHECK_THROWS_AS(CartanData::parse_text("2 x\n-1 2"), InputError);
  CHECK_THROWS_AS(CartanData::preset("E8"), InputError);
}

TEST_CASE("quantized Cartan condition") {
  CHECK(quantized_cartan_condition(CartanData::preset("A3tor")));
  CHECK(quantized_cartan_condition(CartanData::preset("A1tor")));
  auto plain = CartanData::from_matrix({{2, -2}, {-2, 2}});
  CHECK(plain.r(0) == 1);
  CHECK_FALSE(quantized_cartan_condition(plain));
  // C_12 = -3, C_21 = -1: r = (1, 3); check -C_21 = 1 <= r_1.
  auto C = CartanData::from_matrix({{2, -3}, {-1, 2}}, 1);
  CHECK(C.r(1) == 1);
  CHECK(C.r(2) == 3);
  CHECK(quantized_cartan_condition(C) == (1 <= C.r(1)));
  CHECK(quantized_cartan_condition(CartanData::infinite_a()));
}

TEST_CASE("node geometry examples") {
  for (const auto& [i, info] : node_geometry(CartanData::preset("A3tor"))) {
    CHECK_FALSE(info.extremal);
    CHECK_FALSE(info.special);
    CHECK(info.d.infinite);
    CHECK(info.small_bound(2));
    CHECK_FALSE(info.small_bound(3));
  }
  auto a5 = node_geometry(CartanData::preset("A:5"));
  CHECK(a5[1].extremal);
  CHECK(a5[1].d == ExtNat::inf());
  for (int k = 1; k <= 10; ++k) CHECK(a5[1].small_bound(k));
  auto d4 = node_geometry(CartanData::preset("D:4"));
  CHECK(d4[2].special);
  CHECK(d4[2].d == ExtNat::of(1));
  for (int leaf : {1, 3, 4}) {
    CHECK(d4[leaf].extremal);
    CHECK(d4[leaf].d == ExtNat::of(2));
    CHECK(d4[leaf].small_bound(3));
    CHECK_FALSE(d4[leaf].small_bound(4));
  }
  auto b = node_info(CartanData::preset("Bnp:2,3"), 1);
  CHECK_THROWS_AS(b.small_bound(3), DomainError);
}

TEST_CASE("symmetrizer minimal and B = DC symmetric") {
  for (const char* p : {"A3tor", "A:4", "D:5", "Bnp:3,2", "Bnp:2,3", "Bnp:4,4"}) {
    auto C = CartanData::preset(p);
    int g = 0;
    for (int i : C.nodes()) g = std::gcd(g, C.r(i));
    CHECK(g == 1);
    for (int i : C.nodes())
      for (int j : C.nodes()) CHECK(C.r(i) * C.entry(i, j) == C.r(j) * C.entry(j, i));
  }
}

TEST_CASE("node geometry is invariant under relabeling") {
  std::mt19937 rng(5);
  for (const char* p : {"D:5", "A:4", "A3tor", "D:4"}) {
    auto C = CartanData::preset(p);
    auto base = C.window(C.nodes());
    auto geo = node_geometry(CartanData::from_matrix(base));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> perm(base.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto g2 = node_geometry(CartanData::from_matrix(permuted(base, perm)));
      for (std::size_t i = 0; i < base.size(); ++i) {
        const auto& a = geo.at(static_cast<int>(i));
        const auto& b = g2.at(perm[i]);
        CHECK(a.extremal == b.extremal);
        CHECK(a.special == b.special);
        CHECK(a.d == b.d);
      }
    }
  }
}

TEST_CASE("infinite A windows are tridiagonal") {
  auto C = CartanData::infinite_a();
  CHECK(C.type() == CartanType::InfiniteA);
  for (int lo : {-7, 0, 100}) {
    std::vector<int> labels{lo, lo + 1, lo + 2, lo + 3};
    auto w = C.window(labels);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(w[i][j] == (i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0)));
  }
  CHECK_THROWS_AS(C.size(), DomainError);
  auto info = node_info(C, 3);
  CHECK(info.d.infinite);
  CHECK_FALSE(info.extremal);
}

TEST_CASE("minimal affinization coefficients") {
  auto C = CartanData::preset("Bnp:2,3");
  std::map<int, long> zero;
  // c_1(0) = q^{r_1 - C_12 - 1}
  const int e0 = chari_pressley_exponent(C, zero, 1);
  CHECK(e0 == C.r(1) - C.entry(1, 2) - 1);
  CHECK(minimal_affinization_check(C, zero, std::vector<int>{0, e0}));
  CHECK_FALSE(minimal_affinization_check(C, zero, std::vector<int>{0, 0}));
  std::map<int, long> l1{{1, 1}};
  const int e1 = C.r(1) * 1 + C.r(1) - C.entry(1, 2) - 1;
  CHECK(minimal_affinization_check(C, l1, std::vector<int>{5, 5 + e1}));
  CHECK(minimal_affinization_check(C, l1, std::vector<QScalar>{QScalar::q_pow(5, 7), QScalar::q_pow(5 + e1, 7)}));
  CHECK_THROWS_AS(minimal_affinization_check(C, l1, std::vector<QScalar>{QScalar(1), q_int(2)}), DomainError);
  CHECK_THROWS_AS(minimal_affinization_check(C, l1, std::vector<QScalar>{QScalar(1), QScalar::q_pow(1, 2)}), DomainError);

  std::mt19937 rng(9);
  auto B = CartanData::preset("Bnp:4,3");
  for (int trial = 0; trial < 50; ++trial) {
    std::map<int, long> lam;
    for (int i = 1; i <= 4; ++i) lam[i] = static_cast<long>(rng() % 4);
    std::vector<int> a{static_cast<int>(rng() % 7) - 3};
    for (int s = 1; s < 4; ++s) a.push_back(a.back() + chari_pressley_exponent(B, lam, s));
    CHECK(minimal_affinization_check(B, lam, a));
    auto bad = a;
    bad[1 + rng() % 3] += (rng() % 2) ? 1 : -1;
    CHECK_FALSE(minimal_affinization_check(B, lam, bad));
  }
}

TEST_CASE("weight vectors") {
  auto C = CartanData::preset("A3tor");
  WeightVector w;
  w.fundamental[0] = 2;
  w.roots[0] = 1;
  auto p = w.pairing(C, C.nodes());
  CHECK(p[0] == 4);
  CHECK(p[1] == -1);
  CHECK(p[3] == -1);
  CHECK_FALSE(w.dominant(C, C.nodes()));
  CHECK((w - w).str() == "0");
}
