#include "qtor/cartan.hpp"

#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qtor {

std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::Finite: return "Finite";
    case CartanType::Affine: return "Affine";
    case CartanType::Indefinite: return "Indefinite";
    case CartanType::InfiniteA: return "InfiniteA";
  }
  return "?";
}

long long integer_det(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1].get_si();
}

int CartanData::idx(int i) const {
  if (!has_node(i)) throw InputError("node " + std::to_string(i) + " not in diagram " + name_);
  return i - base_;
}

int CartanData::size() const {
  if (is_infinite()) throw DomainError("infinite diagram has no finite size");
  return static_cast<int>(c_.size());
}

std::vector<int> CartanData::nodes() const {
  std::vector<int> out(static_cast<std::size_t>(size()));
  std::iota(out.begin(), out.end(), base_);
  return out;
}

bool CartanData::has_node(int i) const {
  return is_infinite() || (i >= base_ && i < base_ + static_cast<int>(c_.size()));
}

int CartanData::entry(int i, int j) const {
  if (is_infinite()) return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
  return c_[idx(i)][idx(j)];
}

int CartanData::r(int i) const {
  if (is_infinite()) return 1;
  return r_[idx(i)];
}

std::vector<int> CartanData::neighbors(int i) const {
  if (is_infinite()) return {i - 1, i + 1};
  std::vector<int> out;
  const int ii = idx(i);
  for (int j = 0; j < static_cast<int>(c_.size()); ++j)
    if (j != ii && c_[ii][j] < 0) out.push_back(j + base_);
  return out;
}

bool CartanData::simply_laced() const {
  if (is_infinite()) return true;
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (i != j && c_[i][j] < -1) return false;
  return true;
}

bool CartanData::is_cyclic_a() const {
  if (is_infinite() || base_ != 0) return false;
  const int n = static_cast<int>(c_.size());
  if (n == 2) return c_[0][1] == -2 && c_[1][0] == -2;
  if (n < 3) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = ((j - i) % n + n) % n;
      const int expect = i == j ? 2 : (d == 1 || d == n - 1 ? -1 : 0);
      if (c_[i][j] != expect) return false;
    }
  return true;
}

int CartanData::cycle_length() const {
  if (!is_cyclic_a()) throw DomainError("diagram " + name_ + " is not cyclic type A");
  return static_cast<int>(c_.size());
}

std::vector<std::vector<int>> CartanData::window(const std::vector<int>& labels) const {
  std::vector<std::vector<int>> out;
  for (int i : labels) {
    std::vector<int> row;
    for (int j : labels) row.push_back(entry(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

CartanData CartanData::from_matrix(const std::vector<std::vector<int>>& rows, int label_base,
                                   std::string name) {
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("empty Cartan matrix");
  for (const auto& row : rows)
    if (row.size() != n) throw InputError("Cartan matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 2) throw InputError("diagonal entry C_ii must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rows[i][j] > 0) throw InputError("off-diagonal entries must be <= 0");
      if ((rows[i][j] == 0) != (rows[j][i] == 0))
        throw InputError("C_ij = 0 must be equivalent to C_ji = 0");
    }
  }
  // Symmetrizer: r_j = r_i C_ij / C_ji along a spanning forest, then check.
  std::vector<Rational> r(n, Rational(0));
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    r[s] = 1;
    comp[s] = ncomp;
    std::deque<std::size_t> todo{s};
    while (!todo.empty()) {
      const std::size_t i = todo.front();
      todo.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || rows[i][j] == 0 || comp[j] >= 0) continue;
        r[j] = r[i] * rows[i][j] / rows[j][i];
        comp[j] = ncomp;
        todo.push_back(j);
      }
    }
    ++ncomp;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i] * rows[i][j] != r[j] * rows[j][i]) throw InputError("Cartan matrix is not symmetrizable");
  CartanData out;
  out.r_.assign(n, 0);
  for (int c = 0; c < ncomp; ++c) {
    mpz_class l = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) l = lcm(l, r[i].get_den());
    mpz_class g = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) g = gcd(g, mpz_class(r[i].get_num() * (l / r[i].get_den())));
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c)
        out.r_[i] = static_cast<int>(mpz_class(r[i].get_num() * (l / r[i].get_den()) / g).get_si());
  }
  out.c_ = rows;
  out.base_ = label_base;
  out.name_ = std::move(name);
  bool lead_positive = true;
  for (std::size_t m = 1; m < n; ++m) {
    std::vector<std::vector<int>> sub(m, std::vector<int>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sub[i][j] = rows[i][j];
    if (integer_det(sub) <= 0) lead_positive = false;
  }
  const long long det = integer_det(rows);
  if (lead_positive && det > 0)
    out.type_ = CartanType::Finite;
  else if (lead_positive && det == 0)
    out.type_ = CartanType::Affine;
  else
    out.type_ = CartanType::Indefinite;
  return out;
}

CartanData CartanData::infinite_a() {
  CartanData out;
  out.type_ = CartanType::InfiniteA;
  out.name_ = "Ainf";
  return out;
}

CartanData CartanData::with_a1_convention() const {
  if (is_infinite() || c_.size() != 2 || c_[0][1] != -2 || c_[1][0] != -2)
    throw DomainError("the r_0 = r_1 = 2 convention applies to A_1^(1) only");
  CartanData out = *this;
  out.r_ = {2, 2};
  return out;
}

CartanData CartanData::parse_text(const std::string& text, int label_base) {
  std::vector<std::vector<int>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream is(line);
    std::vector<int> row;
    std::string tok;
    while (is >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw InputError("bad matrix entry '" + tok + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return from_matrix(rows, label_base);
}

namespace {

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("bad parameter list in preset " + what);
    }
  }
  return out;
}

std::vector<std::vector<int>> path_matrix(int n) {
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    c[i][i] = 2;
    if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
  }
  return c;
}

}  // namespace

CartanData CartanData::preset(const std::string& spec) {
  if (spec == "A3tor") return preset("Ator:3");
  if (spec == "A1tor")
    return from_matrix({{2, -2}, {-2, 2}}, 0, "A1tor").with_a1_convention();
  if (spec == "Ainf") return infinite_a();
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw InputError("cannot read matrix file " + spec.substr(5));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("unknown Cartan preset '" + spec + "'");
  const std::string head = spec.substr(0, colon);
  const auto args = parse_int_list(spec.substr(colon + 1), spec);
  if (head == "Ator" && args.size() == 1 && args[0] >= 2) {
    const int n = args[0] + 1;
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      c[i][i] = 2;
      c[i][(i + 1) % n] = c[(i + 1) % n][i] = -1;
    }
    return from_matrix(c, 0, args[0] == 3 ? "A3tor" : spec);
  }
  if (head == "A" && args.size() == 1 && args[0] >= 1) return from_matrix(path_matrix(args[0]), 1, spec);
  if (head == "D" && args.size() == 1 && args[0] >= 4) {
    const int n = args[0];
    auto c = path_matrix(n);
    c[n - 2][n - 1] = c[n - 1][n - 2] = 0;
    c[n - 3][n - 1] = c[n - 1][n - 3] = -1;
    return from_matrix(c, 1, spec);
  }
  if (head == "Bnp" && args.size() == 2 && args[0] >= 2 && args[1] >= 1) {
    const int n = args[0], p = args[1];
    auto c = path_matrix(n);
    c[n - 1][n - 2] -= p - 1;
    return from_matrix(c, 1, spec);
  }
  throw InputError("unknown Cartan preset '" + spec + "'");
}

bool quantized_cartan_condition(const CartanData& C) {
  if (C.is_infinite()) return true;
  for (int i : C.nodes())
    for (int j : C.nodes())
      if (i != j && C.entry(i, j) < -1 && -C.entry(j, i) > C.r(i)) return false;
  return true;
}

bool NodeInfo::small_bound(int k) const {
  if (!simply_laced) throw DomainError("smallness criterion requires a simply-laced diagram");
  if (k <= 2) return true;
  return extremal && (d.infinite || k <= d.value + 1);
}

NodeInfo node_info(const CartanData& C, int i) {
  NodeInfo info;
  info.node = i;
  info.simply_laced = C.simply_laced();
  info.degree = static_cast<int>(C.neighbors(i).size());
  info.extremal = info.degree == 1;
  info.special = info.degree >= 3;
  if (C.is_infinite()) return info;  // no special node anywhere
  std::map<int, int> dist{{i, 1}};
  std::deque<int> todo{i};
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop_front();
    if (C.neighbors(v).size() >= 3) {
      info.d = ExtNat::of(dist[v]);
      break;
    }
    for (int w : C.neighbors(v))
      if (dist.emplace(w, dist[v] + 1).second) todo.push_back(w);
  }
  return info;
}

std::map<int, NodeInfo> node_geometry(const CartanData& C) {
  std::map<int, NodeInfo> out;
  for (int i : C.nodes()) out.emplace(i, node_info(C, i));
  return out;
}

WeightVector& WeightVector::operator+=(const WeightVector& o) {
  for (const auto& [j, v] : o.fundamental)
    if ((fundamental[j] += v) == 0) fundamental.erase(j);
  for (const auto& [j, v] : o.roots)
    if ((roots[j] += v) == 0) roots.erase(j);
  return *this;
}

WeightVector& WeightVector::operator-=(const WeightVector& o) { return *this += o.scaled(-1); }

WeightVector WeightVector::scaled(long k) const {
  WeightVector out;
  if (k == 0) return out;
  for (const auto& [j, v] : fundamental) out.fundamental[j] = v * k;
  for (const auto& [j, v] : roots) out.roots[j] = v * k;
  return out;
}

bool WeightVector::operator==(const WeightVector& o) const {
  return fundamental == o.fundamental && roots == o.roots;
}

std::map<int, long> WeightVector::pairing(const CartanData& C, const std::vector<int>& at) const {
  std::map<int, long> out;
  for (int j : at) {
    long v = 0;
    if (auto it = fundamental.find(j); it != fundamental.end()) v += it->second;
    for (const auto& [i, a] : roots) v += a * C.entry(j, i);
    out[j] = v;
  }
  return out;
}

bool WeightVector::dominant(const CartanData& C, const std::vector<int>& at) const {
  for (const auto& [j, v] : pairing(C, at))
    if (v < 0) return false;
  return true;
}

std::string WeightVector::str() const {
  std::ostringstream os;
  bool first = true;
  auto put = [&](long v, const char* sym, int j) {
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    first = false;
    if (std::abs(v) != 1) os << std::abs(v) << "*";
    os << sym << "_" << j;
  };
  for (const auto& [j, v] : fundamental) put(v, "L", j);
  for (const auto& [j, v] : roots) put(v, "a", j);
  return first ? "0" : os.str();
}

int chari_pressley_exponent(const CartanData& C, const std::map<int, long>& lambda, int s) {
  auto lam = [&](int i) {
    auto it = lambda.find(i);
    return it == lambda.end() ? 0L : it->second;
  };
  return static_cast<int>(C.r(s) * lam(s) + C.r(s + 1) * lam(s + 1) + C.r(s) - C.entry(s, s + 1) - 1);
}

bool minimal_affinization_check(const CartanData& C, const std::map<int, long>& lambda,
                                const std::vector<QScalar>& a) {
  const auto labels = C.nodes();
  if (a.size() != labels.size()) throw InputError("one spectral parameter per node is required");
  std::vector<int> ex;
  for (const auto& ai : a) {
    if (!ai.is_monomial()) throw DomainError("spectral parameter " + ai.str() + " is not a q-power");
    ex.push_back(ai.min_degree());
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const QScalar ratio = a[j] * a[i].inverse();
      if (!ratio.is_monomial() || ratio.terms().begin()->second != 1)
        throw DomainError("ratio " + ratio.str() + " is not a power of q");
    }
  return minimal_affinization_check(C, lambda, ex);
}

bool minimal_affinization_check(const CartanData& C, const std::map<int, long>& lambda,
                                const std::vector<int>& a_exponents) {
  const auto labels = C.nodes();
  if (a_exponents.size() != labels.size())
    throw InputError("one spectral parameter per node is required");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    long acc = 0;
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      acc += chari_pressley_exponent(C, lambda, labels[j - 1]);
      if (a_exponents[j] - a_exponents[i] != acc) return false;
    }
  }
  return true;
}

}  // namespace qtor
