#include <doctest.h>

#include "qtor/crystal.hpp"
#include "qtor/modrep.hpp"

using namespace qtor;

namespace {

QScalar qq() { return QScalar::q_pow(1) - QScalar::q_pow(-1); }

template <class M>
int idx(const M& mod, int a, int p) { return *mod.index_of({a, p}); }

}  // namespace

TEST_CASE("extremal loop action entries") {
  const auto M = build_extremal_loop(-3, 3);
  CHECK(M.dim() == 28);
  for (int p = -2; p <= 3; ++p)
    for (int r = -2; r <= 2; ++r) {
      // x+_{0,r} v_{1,p} = q^{r(4p-1)} v_{4,p-1}
      const auto& x = M.op(Generator::xp(0, r));
      CHECK(x.get(idx(M, 4, p - 1), idx(M, 1, p)) == QScalar::q_pow(r * (4 * p - 1)));
      CHECK(x.col(idx(M, 1, p)).size() == 1);
    }
  for (int p = -3; p <= 3; ++p) {
    CHECK(M.op(Generator::k(2)).get(idx(M, 2, p), idx(M, 2, p)) == QScalar::q_pow(1));
    CHECK(M.op(Generator::k(2)).get(idx(M, 3, p), idx(M, 3, p)) == QScalar::q_pow(-1));
    CHECK(M.op(Generator::k(2)).get(idx(M, 1, p), idx(M, 1, p)) == QScalar(1));
  }
  // boundary: x+_{0,r} v_{1,-3} leaves the window
  CHECK(M.table(Generator::xp(0, 1)).escapes[idx(M, 1, -3)]);
  CHECK_FALSE(M.table(Generator::xp(0, 1)).escapes[idx(M, 1, -2)]);
}

TEST_CASE("hand-composed x+x- and phi on v_{1,p}") {
  const auto M = build_extremal_loop(-2, 2);
  for (int p = -2; p <= 2; ++p) {
    const int j = idx(M, 1, p);
    // x-_{1,0} v_{1,p} = v_{2,p}; x+_{1,0} v_{2,p} = v_{1,p}; x+_{1,0} v_{1,p} = 0
    CHECK(M.op(Generator::xm(1, 0)).get(idx(M, 2, p), j) == QScalar(1));
    CHECK(M.op(Generator::xp(1, 0)).get(j, idx(M, 2, p)) == QScalar(1));
    CHECK(M.op(Generator::xp(1, 0)).col(j).empty());
    const auto comm = M.op(Generator::xp(1, 0)) * M.op(Generator::xm(1, 0)) -
                      M.op(Generator::xm(1, 0)) * M.op(Generator::xp(1, 0));
    CHECK(comm.get(j, j) == QScalar(1));
    const QScalar phi_diff =
        M.op(Generator::phip(1, 0)).get(j, j) - M.op(Generator::phim(1, 0)).get(j, j);
    CHECK(phi_diff.divide_exact(qq()) == QScalar(1));
  }
}

TEST_CASE("root of unity L=1 reproduces the explicit 4-dimensional action") {
  const auto M = build_root_of_unity(1);
  CHECK(M.dim() == 4);
  const auto& F = M.field();
  const auto i = F.q_pow(1);
  auto ipow = [&](long e) { return F.q_pow(((e % 4) + 4) % 4); };
  for (int a = 0; a < 4; ++a)
    for (int r = -3; r <= 3; ++r) {
      const int src = (a + 1) % 4 == 0 ? 4 : (a + 1) % 4;  // v_{[a+1]}
      const int dst = a == 0 ? 4 : a;                       // v_{[a]}
      const auto& xp = M.op(Generator::xp(a, r));
      CHECK(xp.get(idx(M, dst, 0), idx(M, src, 0)) == ipow(static_cast<long>(r) * (a - 1)));
      CHECK(xp.nnz() == 1);
      const auto& xm = M.op(Generator::xm(a, r));
      CHECK(xm.get(idx(M, src, 0), idx(M, dst, 0)) == ipow(static_cast<long>(r) * (a - 1)));
      CHECK(xm.nnz() == 1);
    }
  for (int a = 0; a < 4; ++a)
    for (int m = 1; m <= 4; ++m) {
      const int on = a == 0 ? 4 : a;
      const int off = (a + 1) % 4 == 0 ? 4 : (a + 1) % 4;
      // +-2(delta - delta) i^{1 +- m(a-1)}
      const auto two = F.from_rational(2);
      CHECK(M.op(Generator::phip(a, m)).get(idx(M, on, 0), idx(M, on, 0)) == two * ipow(1 + m * (a - 1)));
      CHECK(M.op(Generator::phip(a, m)).get(idx(M, off, 0), idx(M, off, 0)) ==
            two * ipow(1 + m * (a - 1)) * Rational(-1));
      CHECK(M.op(Generator::phim(a, m)).get(idx(M, on, 0), idx(M, on, 0)) ==
            two * ipow(1 - m * (a - 1)) * Rational(-1));
    }
  CHECK(M.op(Generator::k(1)).get(idx(M, 1, 0), idx(M, 1, 0)) == i);
}

TEST_CASE("L=2 module: dimension 8 and k of order dividing 8") {
  const auto M = build_root_of_unity(2);
  CHECK(M.dim() == 8);
  for (int a = 0; a < 4; ++a) {
    auto k = M.op(Generator::k(a));
    auto p = SparseMatrix<CycScalar>::identity(8, M.field().one());
    for (int t = 0; t < 8; ++t) p = k * p;
    CHECK(p == SparseMatrix<CycScalar>::identity(8, M.field().one()));
    CHECK((k * M.op(Generator::kinv(a))) == SparseMatrix<CycScalar>::identity(8, M.field().one()));
  }
}

TEST_CASE("quotient equals the specialized extremal loop mod L") {
  for (int L : {1, 2, 3}) {
    const auto Q = build_root_of_unity(L);
    const auto G = build_extremal_loop(-L - 1, 2 * L + 1);
    std::vector<Generator> gens;
    for (int a = 0; a < 4; ++a) {
      gens.push_back(Generator::k(a));
      for (int r = -3; r <= 3; ++r) gens.push_back(Generator::xp(a, r)), gens.push_back(Generator::xm(a, r));
      for (int m = 0; m <= 3; ++m) gens.push_back(Generator::phip(a, m)), gens.push_back(Generator::phim(a, m));
    }
    for (const auto& g : gens) {
      const auto& tg = G.table(g);
      const auto& tq = Q.op(g);
      for (int j = 0; j < G.dim(); ++j) {
        if (tg.escapes[j]) continue;
        const auto& lab = G.basis()[j];
        const int jq = idx(Q, lab.a, ((lab.p % L) + L) % L);
        std::map<int, CycScalar> folded;
        for (const auto& [r, v] : tg.mat.col(j)) {
          const auto& t = G.basis()[r];
          folded[idx(Q, t.a, ((t.p % L) + L) % L)] += cyclotomic_specialize(v, Q.field().ctx);
        }
        for (auto it = folded.begin(); it != folded.end();)
          it = it->second.is_zero() ? folded.erase(it) : std::next(it);
        const auto& col = tq.col(jq);
        CHECK(col.size() == folded.size());
        for (const auto& [r, v] : folded) CHECK(tq.get(r, jq) == v);
      }
    }
  }
}

TEST_CASE("relations hold on the extremal loop window") {
  const auto M = build_extremal_loop(-3, 3);
  const auto rep = verify_relations(M, 3, 3, 3);
  for (const auto& f : rep.families) {
    INFO(f.family << " " << (f.witness ? f.witness->relation + " @ " + f.witness->vector : ""));
    CHECK(f.pass);
    CHECK(f.evaluations > 0);
    CHECK(f.instances > 0);
  }
  CHECK(rep.all_pass());
  CHECK(rep.family("quadratic")->skipped > 0);
}

TEST_CASE("relations hold at roots of unity") {
  for (int L : {1, 2}) {
    const auto M = build_root_of_unity(L);
    const auto rep = verify_relations(M, 4, 4, 4);
    for (const auto& f : rep.families) {
      INFO(L << " " << f.family);
      CHECK(f.pass);
      CHECK(f.skipped == 0);
    }
  }
}

TEST_CASE("a single sign flip is caught by the h-x family") {
  auto M = build_root_of_unity(1);
  const Generator g = Generator::xp(1, 1);
  const auto& col = M.op(g).col(idx(M, 2, 0));
  REQUIRE(col.size() == 1);
  const auto [row, v] = *col.begin();
  M.override_entry(g, row, idx(M, 2, 0), v * Rational(-1));
  const auto rep = verify_relations(M, 2, 2, 2);
  const auto* hx = rep.family("h-x");
  REQUIRE(hx);
  CHECK_FALSE(hx->pass);
  REQUIRE(hx->witness.has_value());
  CHECK(hx->witness->vector == "v[2,0]");
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.family("cartan")->pass);
}

TEST_CASE("l-character of the extremal loop has a constant shift") {
  const auto M = build_extremal_loop(-2, 2);
  const auto rep = l_character(M, 4);
  REQUIRE(rep.shift.has_value());
  CHECK(*rep.shift == -1);
  CHECK(rep.per_vector.size() == 20);
  // v_{1,p} -> Y[1,4p-1] Y[0,4p]^-1
  for (const auto& [b, m] : rep.per_vector)
    if (b.a == 1) CHECK(m == YMonomial::Y(1, 4 * b.p - 1) * YMonomial::Y(0, 4 * b.p, -1));
  for (const auto& [m, c] : rep.terms) CHECK(c == 1);
}

TEST_CASE("l-character at roots of unity") {
  const auto M1 = build_root_of_unity(1);
  const auto r1 = l_character(M1, 4);
  CHECK(r1.terms.size() == 4);
  REQUIRE(r1.shift.has_value());
  CHECK(*r1.shift == 3);
  CHECK(r1.modulus == 4);
  // the 4-term chi_i up to the global shift
  for (const auto& [b, m] : r1.per_vector) CHECK(reduce_mod(display_monomial(b).shifted(-1), 4) == m);
  const auto r2 = l_character(build_root_of_unity(2), 4);
  REQUIRE(r2.shift.has_value());
  CHECK(*r2.shift == 7);
  CHECK(r2.terms.size() == 8);
}

TEST_CASE("trivial module has the empty l-weight") {
  auto C = std::make_shared<const CartanData>(CartanData::preset("A3tor"));
  const auto T = build_trivial(GenericQField{}, C);
  const auto rep = l_character(T, 3);
  REQUIRE(rep.per_vector.size() == 1);
  CHECK(rep.per_vector[0].second.is_identity());
  CHECK_FALSE(rep.shift.has_value());
  CHECK(verify_relations(T, 2, 2, 2).all_pass());
}

TEST_CASE("hecke companion") {
  for (int L = 1; L <= 5; ++L) {
    const auto H = hecke_companion(L);
    CHECK(H.relation_holds);
    CHECK(H.m_basis_matches);
    CHECK(H.spectra_match);
  }
}

TEST_CASE("L=1: x+-_{a,0} generate all of End(V)") {
  const auto M = build_root_of_unity(1);
  std::vector<SparseMatrix<CycScalar>> gens;
  for (int a = 0; a < 4; ++a) gens.push_back(M.op(Generator::xp(a, 0))), gens.push_back(M.op(Generator::xm(a, 0)));
  CHECK(generated_algebra_dim(M.field(), gens, 4) == 16);
  // a reducible control: only node 1
  CHECK(generated_algebra_dim(M.field(), {gens[2], gens[3]}, 4) < 16);
}

TEST_CASE("phi-mode families hold on the modules") {
  const std::vector<std::string> fams = {"phi-phi", "phi-x"};
  CHECK(verify_relations(build_extremal_loop(-3, 3), 3, 3, 3, fams).all_pass());
  CHECK(verify_relations(build_root_of_unity(1), 3, 3, 3, fams).all_pass());
  CHECK(verify_relations(build_root_of_unity(2), 3, 3, 3, fams).all_pass());
}

TEST_CASE("phi-x catches a corrupted phi table") {
  auto M = build_root_of_unity(1);
  const Generator g = Generator::phip(2, 1);
  const int j = *M.index_of({2, 0});
  M.override_entry(g, j, j, M.op(g).get(j, j) * Rational(-1));
  CHECK_FALSE(verify_relations(M, 1, 2, 2, {"phi-x"}).all_pass());
}
