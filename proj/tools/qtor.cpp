#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <sstream>

#include "qtor/io.hpp"

using namespace qtor;

namespace {

enum Exit { kPass = 0, kFail = 1, kError = 2 };

struct Options {
  std::string type = "A3tor";
  int node = 0;
  int k = 1;
  int spectral = 0;
  int depth = 4;
  std::string format = "json";
  std::string seed;
  std::vector<int> ops{1, 2, 3, 0};
  int steps = 8;
  int root_of_unity = 0;
  std::string window = "-3,3";
  int r_range = 3;
  int series_order = 3;
  int L = 0;
  int u_order = 4;
  int l = 2;
  std::string a;
  std::string q = "2";
  std::string twist;
  std::uint64_t trials_seed = 0;
  int trials = 0;
  bool timing = false;
};

std::pair<int, int> int_pair(const std::string& s, const char* what) {
  std::istringstream is(s);
  int x = 0, y = 0;
  char comma = 0;
  if (!(is >> x >> comma >> y) || comma != ',' || !is.eof())
    throw InputError(std::string(what) + " expects two integers 'a,b'");
  return {x, y};
}

Rational rational(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    if (r.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("not a rational number: '" + s + "'");
  }
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(rational(tok));
  return out;
}

std::shared_ptr<const CartanData> cartan(const Options& o) {
  return std::make_shared<const CartanData>(CartanData::preset(o.type));
}

struct Outcome {
  bool pass = true;
  Json payload;
  std::string text;  // raw output (dot)
};

Outcome run_qchar(const Options& o) {
  const auto x = kr_qchar(cartan(o), o.node, o.k, o.spectral, o.depth);
  if (o.format == "dot") return {true, {}, qchar_dot(x)};
  return {true, qchar_json(x), {}};
}

Outcome run_tsystem(const Options& o) {
  const auto r = verify_tsystem(cartan(o), o.node, o.k, o.spectral, o.depth);
  return {r.holds, tsystem_json(r), {}};
}

Outcome run_tableau(const Options& o) {
  const auto C = cartan(o);
  if (!C->is_cyclic_a()) throw InputError("tableau needs a toroidal type A preset (A3tor, Ator:n)");
  const int n = C->cycle_length() - 1;
  const auto r = tableau_qchar_compare(n, o.k, o.node, o.spectral, o.depth);
  return {r.agree && r.excess_is_height, tableau_json(r), {}};
}

Outcome run_crystal(const Options& o) {
  const auto C = cartan(o);
  const auto seed = YMonomial::parse(o.seed.empty() ? "Y[1,0]Y[0,1]^-1" : o.seed);
  const auto w = orbit_walk(*C, seed, o.ops, o.steps);
  Json j = walk_json(seed, o.ops, w);
  if (o.root_of_unity > 0) j["period"] = root_of_unity_period(*C, seed, o.ops, o.root_of_unity);
  return {!w.dead_end, j, {}};
}

Outcome run_repcheck(const Options& o) {
  const int L = o.L > 0 ? o.L : o.root_of_unity;
  Json j;
  RelationReport rep;
  if (L > 0) {
    const auto M = build_root_of_unity(L);
    rep = verify_relations(M, o.r_range, o.r_range, o.series_order);
    j["module"] = {{"kind", "root_of_unity"}, {"L", L}, {"dim", M.dim()}, {"field", M.field().name()}};
    j["l_character"] = lcharacter_json(l_character(M, o.series_order));
  } else {
    const auto [lo, hi] = int_pair(o.window, "--window");
    const auto M = build_extremal_loop(lo, hi);
    rep = verify_relations(M, o.r_range, o.r_range, o.series_order);
    j["module"] = {{"kind", "extremal_loop"}, {"window", {lo, hi}}, {"dim", M.dim()}, {"field", M.field().name()}};
    j["l_character"] = lcharacter_json(l_character(M, o.series_order));
  }
  j["relations"] = relation_report_json(rep);
  return {rep.all_pass(), j, {}};
}

Outcome run_fusion(const Options& o) {
  const int L = o.L > 0 ? o.L : 1;
  const auto M = build_root_of_unity(L);
  const auto rep = coproduct_relation_check(M, M, o.u_order, o.r_range, o.r_range);
  Json j{{"L", L}, {"u_order", o.u_order}, {"relations", relation_report_json(rep)}};
  bool pass = rep.all_pass();
  if (!o.twist.empty()) {
    const auto [r, r2] = int_pair(o.twist, "--twist");
    const auto c = twisted_coassoc_check(M, M, M, r, r2, o.u_order, coassoc_sample_generators());
    j["coassociativity"] = coassoc_json(c);
    pass = pass && c.all_pass();
  }
  return {pass, j, {}};
}

Outcome run_hecke(const Options& o) {
  const RationalField F(rational(o.q));
  if (F.q == 0 || F.q * F.q == 1) throw InputError("--q must avoid 0 and +-1");
  std::vector<Rational> A = o.a.empty() ? std::vector<Rational>{} : rational_list(o.a);
  if (A.empty())
    for (int j = 0; j < o.l; ++j) A.push_back(Rational(j + 2));
  if (static_cast<int>(A.size()) != o.l) throw InputError("--a must list exactly --l parameters");
  if (o.l < 1 || o.l > 3) throw InputError("--l must be 1, 2 or 3");
  const auto M = build_MA(F, A);
  const auto rel = check_hecke_relations(M);
  const auto lat = invariant_subspaces(M);
  Json rels = Json::object();
  for (const auto& [name, ok] : rel.relations) rels[name] = ok;
  Json j{{"q", F.q.get_str()}, {"module", hecke_module_json(M)}, {"relations", rels}, {"submodules", lattice_json(lat)}};
  bool pass = rel.all_pass() && lat.consistent;
  if (o.trials > 0) {
    const auto t = reducibility_trials(o.trials, o.trials_seed);
    j["reducibility_trials"] = trials_json(t);
    for (const auto& x : t) pass = pass && x.agree();
  }
  return {pass, j, {}};
}

Outcome run_octahedron(const Options& o) {
  const auto r = octahedron_verify(o.depth, -2, 2, 1, 2, 0, 2);
  return {r.holds, octahedron_json(r), {}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qtor: q-characters, crystals and explicit representations of quantum toroidal algebras"};
  app.require_subcommand(1, 1);
  Options o;
  std::function<Outcome(const Options&)> fn;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    s->add_flag("--timing", o.timing, "include elapsed time in the output");
  };
  auto cartan_opts = [&](CLI::App* s) {
    s->add_option("--type", o.type, "Cartan preset (A3tor, A1tor, Ainf, Ator:n, A:n, D:n, Bnp:n,p, file:PATH)");
    s->add_option("--node", o.node, "node index");
    s->add_option("--k", o.k, "KR level")->check(CLI::NonNegativeNumber);
    s->add_option("--spectral", o.spectral, "spectral exponent l");
    s->add_option("--depth", o.depth, "truncation depth")->check(CLI::NonNegativeNumber);
  };

  auto* qc = app.add_subcommand("qchar", "Frenkel-Mukhin q-character of a KR module");
  cartan_opts(qc);
  common(qc);
  qc->callback([&] { fn = run_qchar; });

  auto* ts = app.add_subcommand("tsystem", "verify the T-system identity");
  cartan_opts(ts);
  common(ts);
  ts->callback([&] { fn = run_tsystem; });

  auto* tb = app.add_subcommand("tableau", "compare the tableau sum with the q-character (--node is the shift)");
  cartan_opts(tb);
  common(tb);
  tb->callback([&] { fn = run_tableau; });

  auto* cr = app.add_subcommand("crystal", "walk Kashiwara operators from a seed monomial");
  cr->add_option("--type", o.type, "Cartan preset");
  cr->add_option("--seed", o.seed, "seed monomial");
  cr->add_option("--ops", o.ops, "operator cycle")->delimiter(',');
  cr->add_option("--steps", o.steps, "number of steps")->check(CLI::NonNegativeNumber);
  cr->add_option("--root-of-unity", o.root_of_unity, "also report the period mod N");
  common(cr);
  cr->callback([&] { fn = run_crystal; });

  auto* rc = app.add_subcommand("repcheck", "defining relations and l-character of an explicit module");
  rc->add_option("--window", o.window, "extremal loop window 'pmin,pmax'");
  rc->add_option("--root-of-unity,--L", o.root_of_unity, "use the 4L-dimensional quotient instead");
  rc->add_option("--r-range", o.r_range, "mode index bound")->check(CLI::NonNegativeNumber);
  rc->add_option("--series-order", o.series_order, "phi series order")->check(CLI::PositiveNumber);
  common(rc);
  rc->callback([&] { fn = run_repcheck; });

  auto* fu = app.add_subcommand("fusion", "relations under the deformed coproduct");
  fu->add_option("--L", o.L, "root-of-unity module size")->check(CLI::PositiveNumber);
  fu->add_option("--u-order", o.u_order, "u truncation order")->check(CLI::NonNegativeNumber);
  fu->add_option("--r-range", o.r_range, "mode index bound")->check(CLI::NonNegativeNumber);
  fu->add_option("--twist", o.twist, "also check twisted coassociativity for 'r,r2'");
  common(fu);
  fu->callback([&] { fn = run_fusion; });

  auto* he = app.add_subcommand("hecke", "affine Hecke module M_A and its submodules");
  he->add_option("--l", o.l, "rank");
  he->add_option("--a", o.a, "parameters a_1,...,a_l (rationals)");
  he->add_option("--q", o.q, "value of q (rational)");
  he->add_option("--seed", o.trials_seed, "seed for randomized reducibility trials");
  he->add_option("--trials", o.trials, "number of randomized trials")->check(CLI::NonNegativeNumber);
  common(he);
  he->callback([&] { fn = run_hecke; });

  auto* oc = app.add_subcommand("octahedron", "octahedron recurrence on the sl_infinity diagram");
  oc->add_option("--depth", o.depth, "truncation depth")->check(CLI::NonNegativeNumber);
  common(oc);
  oc->callback([&] { fn = run_octahedron; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
  const auto t0 = std::chrono::steady_clock::now();
  Json out;
  out["command"] = echo;
  int code = kPass;
  try {
    if (o.format == "dot" && app.got_subcommand("qchar") == false)
      throw InputError("--format dot is only available for qchar");
    Outcome r = fn(o);
    if (!r.text.empty()) {
      std::cout << r.text;
      return kPass;
    }
    out["status"] = r.pass ? "pass" : "fail";
    out["payload"] = std::move(r.payload);
    code = r.pass ? kPass : kFail;
  } catch (const InputError& e) {
    out["status"] = "error";
    out["error"] = e.what();
    code = kError;
  } catch (const std::exception& e) {
    out["status"] = "error";
    out["error"] = e.what();
    code = kError;
  }
  if (o.timing)
    out["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << out.dump(2) << "\n";
  return code;
}
