#pragma once

// Generalized Cartan matrices, symmetrizers and Dynkin-node combinatorics.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtor/exactnum.hpp"

namespace qtor {

enum class CartanType { Finite, Affine, Indefinite, InfiniteA };

std::string to_string(CartanType t);

/// Symmetrizable generalized Cartan matrix on a finite labelled node set, or
/// the sl_infinity diagram indexed by all of Z.
class CartanData {
 public:
  /// Rows indexed by label_base, label_base+1, ... InputError on axiom
  /// violation or when no symmetrizer exists.
  static CartanData from_matrix(const std::vector<std::vector<int>>& rows, int label_base = 0,
                                std::string name = "custom");
  /// The tridiagonal 2/-1 matrix on Z.
  static CartanData infinite_a();
  /// Presets: A3tor, A1tor, Ainf, Ator:n, A:n, D:n, Bnp:n,p, file:PATH.
  static CartanData preset(const std::string& spec);
  /// Whitespace separated integer rows, one row per line.
  static CartanData parse_text(const std::string& text, int label_base = 0);

  /// A_1^(1) convention: overwrite the symmetrizer with r_0 = r_1 = 2.
  CartanData with_a1_convention() const;

  const std::string& name() const { return name_; }
  CartanType type() const { return type_; }
  bool is_infinite() const { return type_ == CartanType::InfiniteA; }
  int size() const;
  int label_base() const { return base_; }
  std::vector<int> nodes() const;
  bool has_node(int i) const;

  int entry(int i, int j) const;
  int r(int i) const;
  /// j != i with C_{i,j} < 0, sorted.
  std::vector<int> neighbors(int i) const;
  bool simply_laced() const;
  /// A_n^(1) with n >= 2 (or A1tor) on labels 0..n in cyclic order.
  bool is_cyclic_a() const;
  /// Number of nodes of a cyclic type A diagram.
  int cycle_length() const;
  /// Finite window of the matrix (rows/cols in the given label order).
  std::vector<std::vector<int>> window(const std::vector<int>& labels) const;

 private:
  std::string name_ = "custom";
  CartanType type_ = CartanType::Finite;
  int base_ = 0;
  std::vector<std::vector<int>> c_;
  std::vector<int> r_;
  int idx(int i) const;
};

/// Integer determinant (Bareiss).
long long integer_det(const std::vector<std::vector<int>>& m);

bool quantized_cartan_condition(const CartanData& C);

/// Natural number or +infinity.
struct ExtNat {
  bool infinite = true;
  int value = 0;
  static ExtNat inf() { return {}; }
  static ExtNat of(int v) { return {false, v}; }
  bool operator==(const ExtNat& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

struct NodeInfo {
  int node = 0;
  int degree = 0;
  bool extremal = false;
  bool special = false;
  ExtNat d;
  bool simply_laced = true;
  /// k <= 2 or (extremal and k <= d + 1); DomainError unless simply laced.
  bool small_bound(int k) const;
};

NodeInfo node_info(const CartanData& C, int i);
/// One record per node of a finite diagram.
std::map<int, NodeInfo> node_geometry(const CartanData& C);

/// lambda(alpha_j^vee) coordinates plus an optional expression in simple roots.
struct WeightVector {
  std::map<int, long> fundamental;  // coefficients of Lambda_j
  std::map<int, long> roots;        // coefficients of alpha_j

  WeightVector& operator+=(const WeightVector& o);
  WeightVector& operator-=(const WeightVector& o);
  friend WeightVector operator+(WeightVector a, const WeightVector& b) { return a += b; }
  friend WeightVector operator-(WeightVector a, const WeightVector& b) { return a -= b; }
  WeightVector scaled(long k) const;
  bool operator==(const WeightVector& o) const;

  /// <lambda, alpha_j^vee> for the listed nodes.
  std::map<int, long> pairing(const CartanData& C, const std::vector<int>& at) const;
  bool dominant(const CartanData& C, const std::vector<int>& at) const;
  std::string str() const;
};

/// Exponent of q in c_s(lambda), s and s+1 consecutive labels.
int chari_pressley_exponent(const CartanData& C, const std::map<int, long>& lambda, int s);

/// For all i < j: a_j / a_i = prod_{i <= s < j} c_s(lambda). The a_i are given
/// per node (in label order) as elements of Q[q, q^-1]; a ratio that is not a
/// power of q is a DomainError.
bool minimal_affinization_check(const CartanData& C, const std::map<int, long>& lambda,
                                const std::vector<QScalar>& a);
bool minimal_affinization_check(const CartanData& C, const std::map<int, long>& lambda,
                                const std::vector<int>& a_exponents);

}  // namespace qtor
