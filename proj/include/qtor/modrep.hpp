#pragma once

// Explicit representations of the toroidal sl_4 algebra: the extremal loop
// module on a window of p, its 4L-dimensional quotient at a primitive 4L-th
// root of unity, a defining-relation checker, l-character extraction, and the
// rank-1 Hecke companion.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtor/cartan.hpp"
#include "qtor/exactnum.hpp"
#include "qtor/linalg.hpp"
#include "qtor/ymono.hpp"

namespace qtor {

enum class GenKind { XPlus, XMinus, PhiPlus, PhiMinus, K, KInv, H };

/// One Drinfeld generator. index is r for x, m >= 0 for phi+_{i,m} and
/// phi-_{i,-m}, and a nonzero m for h_{i,m}; unused for k.
struct Generator {
  GenKind kind = GenKind::K;
  int node = 0;
  int index = 0;

  static Generator xp(int i, int r) { return {GenKind::XPlus, i, r}; }
  static Generator xm(int i, int r) { return {GenKind::XMinus, i, r}; }
  static Generator phip(int i, int m) { return {GenKind::PhiPlus, i, m}; }
  static Generator phim(int i, int m) { return {GenKind::PhiMinus, i, m}; }
  static Generator k(int i) { return {GenKind::K, i, 0}; }
  static Generator kinv(int i) { return {GenKind::KInv, i, 0}; }
  static Generator h(int i, int m) { return {GenKind::H, i, m}; }

  auto key() const { return std::tuple(static_cast<int>(kind), node, index); }
  bool operator<(const Generator& o) const { return key() < o.key(); }
  bool operator==(const Generator& o) const { return key() == o.key(); }
  std::string str() const;
};

/// Basis label v_{a,p}; for quotient modules p is a residue mod L.
struct BasisLabel {
  int a = 0;
  int p = 0;
  auto operator<=>(const BasisLabel&) const = default;
  std::string str() const;
};

enum class ModuleKind { ExtremalLoop, RootOfUnity, Trivial };

template <class Field>
struct OperatorTable {
  SparseMatrix<typename Field::Scalar> mat;
  std::vector<bool> escapes;  // basis vectors whose image leaves the window
};

template <class Field>
class ModuleRealization {
 public:
  using S = typename Field::Scalar;
  using Image = std::vector<std::pair<BasisLabel, S>>;
  using Rule = std::function<Image(const Generator&, const BasisLabel&)>;

  ModuleRealization(Field field, std::shared_ptr<const CartanData> cartan, ModuleKind kind,
                    std::vector<BasisLabel> basis, Rule rule);

  const Field& field() const { return field_; }
  const CartanData& cartan() const { return *cartan_; }
  std::shared_ptr<const CartanData> cartan_ptr() const { return cartan_; }
  ModuleKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisLabel>& basis() const { return basis_; }
  std::optional<int> index_of(const BasisLabel& b) const;

  /// Operator table, built from the action formulas on first use. h-tables
  /// are derived from the phi+- eigenvalues through a truncated logarithm.
  const OperatorTable<Field>& table(const Generator& g) const;
  const SparseMatrix<S>& op(const Generator& g) const { return table(g).mat; }

  /// Replace one matrix entry of a generator's table (mutation testing).
  void override_entry(const Generator& g, int row, int col, const S& value);

  // Extremal loop parameters; L for quotients.
  int n = 3;
  int p_min = 0, p_max = 0;
  int L = 0;

 private:
  Field field_;
  std::shared_ptr<const CartanData> cartan_;
  ModuleKind kind_;
  std::vector<BasisLabel> basis_;
  std::map<BasisLabel, int> index_;
  Rule rule_;
  mutable std::map<Generator, OperatorTable<Field>> cache_;
};

using GenericModule = ModuleRealization<GenericQField>;
using CycModule = ModuleRealization<CyclotomicField>;

/// v_{a,p}, a in 1..n+1, p_min <= p <= p_max, over generic q. n != 3 is an
/// unverified generalization of the same formulas.
GenericModule build_extremal_loop(int p_min, int p_max, int n = 3);

/// 4L-dimensional quotient over Q(eps), eps a primitive 4L-th root of unity.
CycModule build_root_of_unity(int L);

/// One-dimensional module with x = 0 and phi+-, k acting by 1.
template <class Field>
ModuleRealization<Field> build_trivial(Field field, std::shared_ptr<const CartanData> cartan);

// ---------------------------------------------------------------------------
// Relation checking

/// Linear combination of words; a word lists generators left to right and is
/// applied right to left.
template <class Field>
struct RelationInstance {
  std::string family;
  std::string label;
  std::vector<std::pair<typename Field::Scalar, std::vector<Generator>>> terms;
};

struct RelationWitness {
  std::string relation;
  std::string vector;
  std::string residual;
};

struct FamilyResult {
  std::string family;
  std::string ranges;
  long instances = 0;
  long evaluations = 0;
  long skipped = 0;  // touched the window boundary
  bool pass = true;
  std::optional<RelationWitness> witness;
};

struct RelationReport {
  std::vector<FamilyResult> families;
  bool all_pass() const;
  const FamilyResult* family(const std::string& name) const;
};

inline const std::vector<std::string>& relation_families() {
  static const std::vector<std::string> f = {"cartan", "h-h", "h-x", "x+x-", "quadratic", "serre"};
  return f;
}

/// Families used under the deformed coproduct, where h has no given image.
inline const std::vector<std::string>& coproduct_relation_families() {
  static const std::vector<std::string> f = {"cartan", "phi-phi", "phi-x", "x+x-", "quadratic", "serre"};
  return f;
}

template <class Field>
std::vector<RelationInstance<Field>> relation_instances(const Field& field, const CartanData& C,
                                                        const std::string& family, int r_bound,
                                                        int m_bound);

template <class Field>
RelationReport verify_relations(const ModuleRealization<Field>& M, int r_bound, int m_bound,
                                int series_order,
                                const std::vector<std::string>& families = relation_families());

/// Burnside-style dimension of the unital algebra generated by the matrices.
template <class Field>
int generated_algebra_dim(const Field& F, const std::vector<SparseMatrix<typename Field::Scalar>>& gens,
                          int n);

// ---------------------------------------------------------------------------
// l-characters

struct LCharacterReport {
  std::vector<std::pair<BasisLabel, YMonomial>> per_vector;
  std::map<YMonomial, long> terms;
  int modulus = 0;  // spectral indices are taken mod this when nonzero
  bool has_display = false;
  std::optional<long> shift;  // c with computed = display shifted by c
  std::string note;
};

/// The monomial displayed for v_{a,p} (a in 1..4).
YMonomial display_monomial(const BasisLabel& b);

template <class Field>
LCharacterReport l_character(const ModuleRealization<Field>& M, int series_order = 4);

// ---------------------------------------------------------------------------
// Rank-1 Hecke companion

struct HeckeCompanion {
  int L = 1;
  CyclotomicField field;
  SparseMatrix<CycScalar> X, Y;      // on w_1..w_L
  SparseMatrix<CycScalar> Xm, Ym;    // on m_1..m_L
  bool relation_holds = false;       // XY = eps^4 YX
  bool m_basis_matches = false;      // conjugation reproduces the m-action
  bool spectra_match = false;        // both spectra are {eps^{4j}}
  std::vector<CycScalar> x_spectrum, y_spectrum;
};

HeckeCompanion hecke_companion(int L);

extern template class ModuleRealization<GenericQField>;
extern template class ModuleRealization<CyclotomicField>;

}  // namespace qtor
