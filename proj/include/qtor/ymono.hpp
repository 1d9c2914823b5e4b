#pragma once

// l-weight monomials in the variables Y_{i,q^l}, the A_{i,q^l} monomials,
// the dominance order, and the Drinfeld-fraction dictionary.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtor/cartan.hpp"
#include "qtor/exactnum.hpp"

namespace qtor {

struct YFactor {
  int node = 0;
  int l = 0;
  int e = 0;
  bool operator==(const YFactor& o) const = default;
};

/// Finitely supported exponent map (node, l) -> nonzero integer, stored as a
/// vector sorted by (node, l).
class YMonomial {
 public:
  YMonomial() = default;
  static YMonomial Y(int node, int l, int e = 1);
  static YMonomial from_factors(std::vector<YFactor> f);
  /// Grammar: "1" or factors Y[i,l] with optional ^e, separated by spaces or '*'.
  static YMonomial parse(std::string_view text);

  const std::vector<YFactor>& factors() const { return f_; }
  bool is_identity() const { return f_.empty(); }
  int exponent(int node, int l) const;
  /// All exponents nonnegative.
  bool is_dominant() const;
  /// All node-i exponents nonnegative.
  bool is_i_dominant(int i) const;
  std::vector<int> nodes() const;
  /// Exponent sum per node, i.e. the pairing with each alpha_j^vee.
  std::map<int, long> node_sums() const;
  /// Spectral values (with exponents) for one node, sorted by l.
  std::vector<std::pair<int, int>> node_part(int i) const;

  YMonomial& operator*=(const YMonomial& o);
  friend YMonomial operator*(YMonomial a, const YMonomial& b) { return a *= b; }
  YMonomial inverse() const;
  YMonomial pow(int k) const;
  YMonomial shifted(int dl) const;
  /// Apply node -> fn(node) to every factor.
  template <class Fn>
  YMonomial relabeled(Fn&& fn) const {
    std::vector<YFactor> g;
    for (const auto& x : f_) g.push_back({fn(x.node), x.l, x.e});
    return from_factors(std::move(g));
  }

  bool operator==(const YMonomial& o) const { return f_ == o.f_; }
  bool operator!=(const YMonomial& o) const { return !(f_ == o.f_); }
  bool operator<(const YMonomial& o) const;

  std::string str() const;

 private:
  std::vector<YFactor> f_;
};

/// A_{i,q^l} = Y_{i,l-r_i} Y_{i,l+r_i} prod_{j: C_ji <= -1} prod_k Y_{j,l+k}^{-1},
/// k in {C_ji+1, C_ji+3, ..., -C_ji-1}.
YMonomial a_monomial(const CartanData& C, int i, int l);

/// Factor list (i, l) with m = mtop * prod A_{i,l}^{-1}, at most depth_cap
/// factors, or nullopt. Requires the quantized Cartan condition: the factor of
/// lowest spectral value in mtop/m then determines the next A-factor.
std::optional<std::vector<std::pair<int, int>>> dominance_leq(const CartanData& C,
                                                               const YMonomial& m,
                                                               const YMonomial& mtop,
                                                               int depth_cap);

/// Roots of Q_i (positive exponents) and R_i (negative exponents) per node, as
/// spectral exponents with multiplicity, sorted.
struct DrinfeldFraction {
  std::map<int, std::vector<int>> Q;
  std::map<int, std::vector<int>> R;
  bool operator==(const DrinfeldFraction& o) const = default;
};

DrinfeldFraction drinfeld_fraction(const YMonomial& m);
/// Single node restriction.
std::pair<std::vector<int>, std::vector<int>> drinfeld_fraction(const YMonomial& m, int i);
YMonomial from_drinfeld_fraction(const DrinfeldFraction& f);

/// Expansion of gamma(phi_i^{+}(z)) (plus = true) in z, or of gamma(phi_i^{-}(z))
/// in w = z^{-1}, to order M, for the l-weight of monomial m.
template <class Field>
TruncSeries<typename Field::Scalar> phi_series(const Field& field, const CartanData& C,
                                               const YMonomial& m, int i, int M, bool plus) {
  using S = typename Field::Scalar;
  const int ri = C.r(i);
  long total = 0;
  for (const auto& [l, e] : m.node_part(i)) total += e;
  std::vector<S> c;
  for (int k = 1; k <= M; ++k) {
    // log coefficient: (1/k) sum_s u_s q^{+-sk} (q_i^{+-k} - q_i^{-+k})
    QScalar acc;
    for (const auto& [l, e] : m.node_part(i))
      acc += QScalar::q_pow(plus ? l * k : -l * k, e);
    const QScalar diff = plus ? QScalar::q_pow(ri * k) - QScalar::q_pow(-ri * k)
                              : QScalar::q_pow(-ri * k) - QScalar::q_pow(ri * k);
    c.push_back(field.from_q(acc * diff * Rational(1, k)));
  }
  const S f0 = field.from_q(QScalar::q_pow(static_cast<int>(plus ? ri * total : -ri * total)));
  return series_exp(field, f0, c, plus ? 'z' : 'w');
}

}  // namespace qtor
