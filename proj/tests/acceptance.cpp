// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "qtor/io.hpp"

using namespace qtor;

namespace {

using Clock = std::chrono::steady_clock;

struct Line {
  bool ok = true;
  std::ostringstream msg;
  void require(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      msg << " [failed: " << what << "]";
    }
  }
};

YMonomial M(const char* s) { return YMonomial::parse(s); }
std::shared_ptr<const CartanData> preset(const char* p) {
  return std::make_shared<const CartanData>(CartanData::preset(p));
}

// ---------------------------------------------------------------------------

void c1(Line& L) {
  // fundamental A3tor character, by height
  const std::vector<std::vector<std::pair<const char*, int>>> fig = {
      {{"Y[0,0]", 1}},
      {{"Y[0,2]^-1 Y[1,1] Y[3,1]", 1}},
      {{"Y[3,3]^-1 Y[1,1] Y[2,2]", 1}, {"Y[1,3]^-1 Y[2,2] Y[3,1]", 1}},
      {{"Y[2,4]^-1 Y[1,1] Y[1,3]", 1}, {"Y[1,3]^-1 Y[2,2]^2 Y[3,3]^-1 Y[0,2]", 1}, {"Y[2,4]^-1 Y[3,1] Y[3,3]", 1}},
      {{"Y[1,1] Y[1,5]^-1 Y[0,4]", 1}, {"Y[0,4]^-1 Y[2,2]^2", 1}, {"Y[2,2] Y[2,4]^-1 Y[0,2]", 2}, {"Y[3,5]^-1 Y[3,1] Y[0,4]", 1}},
  };
  const auto x = fm_expand(preset("A3tor"), M("Y[0,0]"), 4);
  int found = 0, shown = 0;
  for (std::size_t h = 0; h < fig.size(); ++h)
    for (const auto& [t, c] : fig[h]) {
      ++shown;
      const bool ok = x.coeff(M(t)) == c && x.terms.at(M(t)).height == static_cast<int>(h);
      found += ok;
      L.require(ok, t);
    }
  std::size_t low = 0;
  for (const auto& [m, t] : x.terms) low += t.height <= 3;
  L.require(low == 7, "heights <= 3 have extra terms");
  L.require(x.coeff(M("Y[2,2] Y[2,4]^-1 Y[0,2]")) == 2, "multiplicity 2");
  L.msg << found << "/" << shown << " displayed monomials, heights<=3 exact (" << low << " terms)";
}

void c2(Line& L) {
  int ok = 0, total = 0;
  for (int k : {1, 2}) {
    ++total;
    const auto r = verify_tsystem(preset("A3tor"), 0, k, 0, 4);
    ok += r.holds;
    L.require(r.holds, "A3tor k=" + std::to_string(k));
  }
  for (int k : {1, 2}) {
    ++total;
    const auto r = verify_tsystem(preset("Ainf"), 0, k, 0, 3);
    ok += r.holds;
    L.require(r.holds, "Ainf k=" + std::to_string(k));
  }
  L.msg << ok << "/" << total << " T-system instances hold exactly";
}

void c3(Line& L) {
  int ok = 0;
  for (int k : {1, 2})
    for (int s : {0, 1}) {
      const auto r = tableau_qchar_compare(3, k, s, 0, 4);
      ok += r.agree;
      L.require(r.agree, "k=" + std::to_string(k) + " shift=" + std::to_string(s));
      for (const auto& w : r.mismatches)
        L.msg << " witness " << w.monomial.str() << " tableaux=" << w.tableau_count << " qchar=" << w.qchar_coeff << ";";
    }
  L.msg << ok << "/4 (k, shift) cases agree as multisets with the FM expansion";
}

void c4(Line& L) {
  const auto C = CartanData::preset("A3tor");
  const auto seed = M("Y[1,0]Y[0,1]^-1");
  const auto w = orbit_walk(C, seed, {1, 2, 3, 0}, 8);
  const char* generic[] = {"Y[1,0]Y[0,1]^-1", "Y[2,1]Y[1,2]^-1", "Y[3,2]Y[2,3]^-1", "Y[0,3]Y[3,4]^-1", "Y[1,4]Y[0,5]^-1"};
  const char* at_i[] = {"Y[1,0]Y[0,1]^-1", "Y[2,1]Y[1,2]^-1", "Y[3,2]Y[2,3]^-1", "Y[0,3]Y[3,0]^-1", "Y[1,0]Y[0,1]^-1"};
  L.require(!w.dead_end && w.path.size() == 9, "walk length");
  int hits = 0;
  for (int s = 0; s < 5 && s < static_cast<int>(w.path.size()); ++s) {
    hits += w.path[s] == M(generic[s]);
    hits += reduce_mod(w.path[s], 4) == M(at_i[s]);
  }
  // steps 5..8 continue the displayed pattern one period later
  for (int s = 5; s < static_cast<int>(w.path.size()); ++s) hits += w.path[s] == w.path[s - 4].shifted(4);
  L.require(hits == 14, "displayed monomials");
  std::vector<int> periods;
  for (int N : {4, 4, 8, 12}) periods.push_back(root_of_unity_period(C, seed, {1, 2, 3, 0}, N));
  L.require(periods == std::vector<int>{4, 4, 8, 12}, "periods");
  L.msg << "chain: 5/5 generic and 5/5 at q=i displayed monomials, 4 further steps periodic; periods N=4,4L(L=1..3): "
        << periods[0] << "," << periods[1] << "," << periods[2] << "," << periods[3];
}

void c5(Line& L) {
  const auto rep = verify_relations(build_extremal_loop(-3, 3), 3, 3, 3);
  L.require(rep.all_pass(), "extremal loop");
  long ev = 0;
  for (const auto& f : rep.families) {
    ev += f.evaluations;
    if (!f.pass) L.msg << " " << f.family << " fails at " << f.witness->vector << ";";
  }
  L.msg << "extremal loop [-3,3]: " << rep.families.size() << " families, " << ev << " evaluations";
  for (int Lv : {1, 2}) {
    const auto r = verify_relations(build_root_of_unity(Lv), 4, 4, 4);
    L.require(r.all_pass(), "L=" + std::to_string(Lv));
    L.msg << "; L=" << Lv << (r.all_pass() ? " pass" : " FAIL");
  }
}

void c6(Line& L) {
  // display oracle: v_{a,p} -> Y[a mod 4, 4p+a-1] Y[a-1, 4p+a]^-1
  auto shown = [](int a, int p, int c) {
    return YMonomial::Y(a % 4, 4 * p + a - 1 + c) * YMonomial::Y(a - 1, 4 * p + a + c, -1);
  };
  const auto r = l_character(build_extremal_loop(-3, 3), 4);
  L.require(r.shift.has_value(), "constant shift");
  const long c = r.shift.value_or(99);
  int match = 0;
  for (const auto& [b, m] : r.per_vector) match += m == shown(b.a, b.p, static_cast<int>(c));
  L.require(match == static_cast<int>(r.per_vector.size()), "per-vector l-weights");
  L.require(c == -1, "frozen value c = -1");
  L.require(c >= -1 && c <= 1, "|c| <= 1");
  const auto r1 = l_character(build_root_of_unity(1), 4);
  int m1 = 0;
  for (const auto& [b, m] : r1.per_vector) m1 += reduce_mod(shown(b.a, 0, static_cast<int>(c)), 4) == m;
  L.require(r1.terms.size() == 4 && m1 == 4, "L=1 quotient");
  L.require(r1.shift && ((*r1.shift - c) % 4 + 4) % 4 == 0, "L=1 shift");
  L.msg << "c = " << c << " for all " << match << " vectors of the window; L=1: " << m1 << "/4 terms of chi_i under the same shift";
}

void c7(Line& L) {
  const RationalField F(Rational(3, 2));
  bool dims = true;
  for (int l = 1, f = 1; l <= 3; ++l) {
    f *= l;
    std::vector<Rational> A;
    for (int j = 0; j < l; ++j) A.push_back(Rational(2 * j + 5, 7));
    dims = dims && build_MA(F, A).dim() == f;
  }
  L.require(dims, "dim = l!");
  const auto trials = reducibility_trials(30, 2024);
  int agree = 0;
  for (const auto& t : trials) agree += t.agree();
  L.require(agree == 30, "reducibility criterion");
  const auto s1 = stable_line(F, Rational(5), true), s2 = stable_line(F, Rational(5), false);
  L.require(s1.stable && s1.non_split && s1.composition_dims == std::vector<int>{1, 1}, "(a, a eps)");
  L.require(s2.stable && s2.non_split && s2.composition_dims == std::vector<int>{1, 1}, "(a eps, a)");
  int comp = 0;
  for (int Lv = 1; Lv <= 4; ++Lv) {
    const auto h = hecke_companion(Lv);
    comp += h.relation_holds && h.spectra_match;
  }
  L.require(comp == 4, "companion");
  L.msg << "dim l! for l<=3; " << agree << "/30 random trials agree; stable lines " << s1.generator_text << " and "
        << s2.generator_text << " (= " << s1.t_normalization << ", " << s2.t_normalization
        << ") give non-split 1+1 series; companion L=1..4: " << comp << "/4";
}

void c8(Line& L) {
  const auto M = build_root_of_unity(1);
  const auto rep = coproduct_relation_check(M, M, 4, 2, 2);
  L.require(rep.all_pass(), "relations under Delta_u");
  int ok = 0;
  for (auto [r, r2] : {std::pair{1, 1}, std::pair{1, 2}}) {
    const auto c = twisted_coassoc_check(M, M, M, r, r2, 3, coassoc_sample_generators());
    ok += c.all_pass();
    L.require(c.all_pass(), "coassociativity " + std::to_string(r) + "," + std::to_string(r2));
  }
  L.msg << rep.families.size() << " families pass to u^4 on (L=1)x(L=1); twisted coassociativity " << ok
        << "/2 twist pairs to u^3";
}

void c9(Line& L) {
  const auto r = octahedron_verify(3, -2, 2, 1, 2, 0, 2);
  L.require(r.holds, "octahedron");
  L.msg << r.cells << " cells hold exactly";
}

void c10(Line& L) {
  int checks = 0;
  // dominance / highest weight
  for (const char* p : {"A3tor", "A1tor", "Ainf", "D:4", "Bnp:2,3"}) {
    const auto C = preset(p);
    const auto nodes = C->is_infinite() ? std::vector<int>{0} : C->nodes();
    for (int i : nodes)
      for (int k = 1; k <= 2; ++k) {
        const auto x = kr_qchar(C, i, k, 0, 3);
        for (const auto& [m, t] : x.terms) {
          const auto f = dominance_leq(*C, m, x.top, 3);
          L.require(f && static_cast<int>(f->size()) == t.height && t.coeff > 0, std::string("dominance ") + p);
          ++checks;
        }
      }
  }
  // fm determinism
  const auto C = preset("A3tor");
  const auto base = fm_expand(C, M("Y[0,0] Y[2,1]"), 4).term_map(4);
  for (std::uint64_t s = 1; s <= 8; ++s) L.require(fm_expand(C, M("Y[0,0] Y[2,1]"), 4, {s}).term_map(4) == base, "fm determinism");
  // excess = height
  for (int k = 1; k <= 3; ++k) L.require(tableau_qchar_compare(3, k, 0, 0, 4).excess_is_height, "excess = height");
  // phi/eps and e/f inversion on random monomials
  std::mt19937 rng(99);
  const auto& CD = *C;
  for (int t = 0; t < 1000; ++t) {
    std::vector<YFactor> f;
    for (int n = 1 + static_cast<int>(rng() % 5); n > 0; --n) {
      const int node = static_cast<int>(rng() % 4);
      f.push_back({node, 2 * (static_cast<int>(rng() % 9) - 4) + (node + 1) % 2, static_cast<int>(rng() % 5) - 2});
    }
    const auto m = YMonomial::from_factors(f);
    for (int i = 0; i < 4; ++i) {
      const auto [ph, ep] = phi_eps(m, i);
      L.require(ph - ep == m.node_sums()[i], "phi - eps");
      if (auto g = kashiwara_apply(CD, m, i, KashiwaraDir::F)) {
        const auto back = kashiwara_apply(CD, *g, i, KashiwaraDir::E);
        L.require(back && *back == m, "e f = id");
      }
      if (auto g = kashiwara_apply(CD, m, i, KashiwaraDir::E)) {
        const auto back = kashiwara_apply(CD, *g, i, KashiwaraDir::F);
        L.require(back && *back == m, "f e = id");
      }
    }
    L.require(monomial_from_json(Json::parse(Json(monomial_json(m)).dump())) == m, "monomial round trip");
  }
  // q_binom positivity
  for (int s = 0; s <= 8; ++s)
    for (int k = 0; k <= s; ++k) {
      const auto b = q_binom(s, k);
      for (const auto& [e, c] : b.terms()) L.require(c > 0, "q_binom positivity");
    }
  // q-character round trip
  const auto x = fm_expand(C, M("Y[0,0]"), 4);
  const auto y = qchar_from_json(Json::parse(qchar_json(x).dump()), C);
  L.require(qchar_json(y).dump() == qchar_json(x).dump(), "q-character round trip");
  L.msg << checks << " dominance checks, 8 shuffled schedules, 1000 random monomials, q_binom s<=8, JSON round trips";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Line&)> run;
    double limit_s;  // 0: none
  };
  const std::vector<Criterion> all = {
      {"1 fundamental character graph", c1, 1},     {"2 T-system", c2, 30},
      {"3 tableau formula", c3, 60},        {"4 crystal chain", c4, 0},
      {"5 module relations", c5, 120},      {"6 l-character shift", c6, 0},
      {"7 Hecke modules", c7, 0},           {"8 deformed coproduct", c8, 0},
      {"9 octahedron recurrence", c9, 0},   {"10 property suites", c10, 0},
  };
  int failed = 0;
  for (const auto& c : all) {
    Line L;
    const auto t0 = Clock::now();
    try {
      c.run(L);
    } catch (const std::exception& e) {
      L.ok = false;
      L.msg << " [exception: " << e.what() << "]";
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_s > 0 && s >= c.limit_s) {
      L.ok = false;
      L.msg << " [over the " << c.limit_s << " s limit]";
    }
    failed += !L.ok;
    std::printf("%s  criterion %s: %s (%.2f s)\n", L.ok ? "PASS" : "FAIL", c.name, L.msg.str().c_str(), s);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
