#include "qtor/ymono.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace qtor {

namespace {

bool key_less(const YFactor& a, const YFactor& b) {
  return a.node != b.node ? a.node < b.node : a.l < b.l;
}

}  // namespace

YMonomial YMonomial::Y(int node, int l, int e) {
  YMonomial m;
  if (e != 0) m.f_.push_back({node, l, e});
  return m;
}

YMonomial YMonomial::from_factors(std::vector<YFactor> f) {
  std::sort(f.begin(), f.end(), key_less);
  YMonomial m;
  for (const auto& x : f) {
    if (!m.f_.empty() && m.f_.back().node == x.node && m.f_.back().l == x.l)
      m.f_.back().e += x.e;
    else
      m.f_.push_back(x);
    if (m.f_.back().e == 0) m.f_.pop_back();
  }
  return m;
}

YMonomial YMonomial::parse(std::string_view s) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*')) ++pos;
  };
  auto expect = [&](char c) {
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  };
  auto integer = [&]() {
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw ParseError("expected integer", start);
    if (pos - digits > 9) throw ParseError("integer too large", start);
    return std::stoi(std::string(s.substr(start, pos - start)));
  };
  skip();
  if (pos < s.size() && s[pos] == '1') {
    ++pos;
    skip();
    if (pos != s.size()) throw ParseError("unexpected text after '1'", pos);
    return {};
  }
  std::vector<YFactor> f;
  while (true) {
    skip();
    if (pos == s.size()) break;
    expect('Y');
    skip();
    expect('[');
    const int node = integer();
    expect(',');
    skip();
    const int l = integer();
    expect(']');
    int e = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      const std::size_t at = pos;
      e = integer();
      if (e == 0) throw ParseError("zero exponent", at);
    }
    f.push_back({node, l, e});
  }
  if (f.empty()) throw ParseError("empty monomial text", pos);
  return from_factors(std::move(f));
}

int YMonomial::exponent(int node, int l) const {
  auto it = std::lower_bound(f_.begin(), f_.end(), YFactor{node, l, 0}, key_less);
  return it != f_.end() && it->node == node && it->l == l ? it->e : 0;
}

bool YMonomial::is_dominant() const {
  return std::all_of(f_.begin(), f_.end(), [](const YFactor& x) { return x.e > 0; });
}

bool YMonomial::is_i_dominant(int i) const {
  return std::all_of(f_.begin(), f_.end(), [i](const YFactor& x) { return x.node != i || x.e > 0; });
}

std::vector<int> YMonomial::nodes() const {
  std::vector<int> out;
  for (const auto& x : f_)
    if (out.empty() || out.back() != x.node) out.push_back(x.node);
  return out;
}

std::map<int, long> YMonomial::node_sums() const {
  std::map<int, long> out;
  for (const auto& x : f_) out[x.node] += x.e;
  return out;
}

std::vector<std::pair<int, int>> YMonomial::node_part(int i) const {
  std::vector<std::pair<int, int>> out;
  for (const auto& x : f_)
    if (x.node == i) out.emplace_back(x.l, x.e);
  return out;
}

YMonomial& YMonomial::operator*=(const YMonomial& o) {
  if (o.f_.empty()) return *this;
  std::vector<YFactor> out;
  out.reserve(f_.size() + o.f_.size());
  auto a = f_.cbegin();
  auto b = o.f_.cbegin();
  while (a != f_.cend() || b != o.f_.cend()) {
    if (b == o.f_.end() || (a != f_.end() && key_less(*a, *b))) {
      out.push_back(*a++);
    } else if (a == f_.end() || key_less(*b, *a)) {
      out.push_back(*b++);
    } else {
      const int e = a->e + b->e;
      if (e != 0) out.push_back({a->node, a->l, e});
      ++a;
      ++b;
    }
  }
  f_ = std::move(out);
  return *this;
}

YMonomial YMonomial::inverse() const { return pow(-1); }

YMonomial YMonomial::pow(int k) const {
  YMonomial m;
  if (k == 0) return m;
  m.f_ = f_;
  for (auto& x : m.f_) x.e *= k;
  return m;
}

YMonomial YMonomial::shifted(int dl) const {
  YMonomial m = *this;
  for (auto& x : m.f_) x.l += dl;
  return m;
}

bool YMonomial::operator<(const YMonomial& o) const {
  return std::lexicographical_compare(
      f_.begin(), f_.end(), o.f_.begin(), o.f_.end(), [](const YFactor& a, const YFactor& b) {
        if (a.node != b.node) return a.node < b.node;
        if (a.l != b.l) return a.l < b.l;
        return a.e < b.e;
      });
}

std::string YMonomial::str() const {
  if (f_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < f_.size(); ++k) {
    if (k) os << ' ';
    os << "Y[" << f_[k].node << ',' << f_[k].l << ']';
    if (f_[k].e != 1) os << '^' << f_[k].e;
  }
  return os.str();
}

YMonomial a_monomial(const CartanData& C, int i, int l) {
  const int ri = C.r(i);
  std::vector<YFactor> f{{i, l - ri, 1}, {i, l + ri, 1}};
  for (int j : C.neighbors(i)) {
    const int cji = C.entry(j, i);
    for (int k = cji + 1; k <= -cji - 1; k += 2) f.push_back({j, l + k, -1});
  }
  return YMonomial::from_factors(std::move(f));
}

std::optional<std::vector<std::pair<int, int>>> dominance_leq(const CartanData& C,
                                                               const YMonomial& m,
                                                               const YMonomial& mtop,
                                                               int depth_cap) {
  if (depth_cap < 0) throw InputError("depth_cap must be >= 0");
  YMonomial rest = mtop * m.inverse();  // must equal a product of A's
  std::vector<std::pair<int, int>> used;
  while (!rest.is_identity()) {
    int lowest = rest.factors().front().l;
    for (const auto& x : rest.factors()) lowest = std::min(lowest, x.l);
    YMonomial step;
    for (const auto& x : rest.factors()) {
      if (x.l != lowest) continue;
      if (x.e < 0 || !C.has_node(x.node)) return std::nullopt;
      if (static_cast<int>(used.size()) + x.e > depth_cap) return std::nullopt;
      const int at = x.l + C.r(x.node);
      for (int t = 0; t < x.e; ++t) used.emplace_back(x.node, at);
      step *= a_monomial(C, x.node, at).pow(x.e);
    }
    rest *= step.inverse();
  }
  std::sort(used.begin(), used.end());
  return used;
}

DrinfeldFraction drinfeld_fraction(const YMonomial& m) {
  DrinfeldFraction out;
  for (const auto& x : m.factors()) {
    auto& roots = x.e > 0 ? out.Q[x.node] : out.R[x.node];
    for (int t = 0; t < std::abs(x.e); ++t) roots.push_back(x.l);
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> drinfeld_fraction(const YMonomial& m, int i) {
  auto f = drinfeld_fraction(m);
  return {f.Q[i], f.R[i]};
}

YMonomial from_drinfeld_fraction(const DrinfeldFraction& f) {
  std::vector<YFactor> g;
  for (const auto& [i, roots] : f.Q)
    for (int l : roots) g.push_back({i, l, 1});
  for (const auto& [i, roots] : f.R)
    for (int l : roots) g.push_back({i, l, -1});
  return YMonomial::from_factors(std::move(g));
}

}  // namespace qtor
