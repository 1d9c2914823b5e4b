#pragma once

// Affine Hecke algebras of small rank: the modules M_A, their submodules,
// Zelevinsky products and the segment-to-Drinfeld-polynomial map.
//
// Modules are right modules written on row vectors: entry (r, c) of the
// matrix of g is the coefficient of basis vector c in e_r . g, so the matrix
// of a product gh is R(g) R(h).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtor/exactnum.hpp"
#include "qtor/linalg.hpp"

namespace qtor {

using Perm = std::vector<int>;  // one-line notation on 0..l-1

Perm perm_identity(int l);
int perm_length(const Perm& w);
/// w s_i (swap positions i-1 and i), i 1-based.
Perm perm_times_s(const Perm& w, int i);
/// Reduced word i_1..i_k with w = s_{i_1} ... s_{i_k}.
std::vector<int> reduced_word(const Perm& w);
std::vector<Perm> all_perms(int l);
std::string perm_label(const Perm& w);

template <class Field>
struct HeckeModule {
  using S = typename Field::Scalar;
  Field field;
  int l = 0;
  std::vector<std::string> labels;
  std::vector<SparseMatrix<S>> sigma;  // sigma[i-1] for sigma_i
  std::vector<SparseMatrix<S>> z;      // z[j-1] for z_j
  std::vector<S> params;               // candidate z-eigenvalues

  int dim() const { return static_cast<int>(labels.size()); }
  const SparseMatrix<S>& sig(int i) const { return sigma.at(static_cast<std::size_t>(i - 1)); }
  const SparseMatrix<S>& zz(int j) const { return z.at(static_cast<std::size_t>(j - 1)); }
  std::vector<SparseMatrix<S>> generators() const;
};

/// Element of the affine Hecke algebra in the normal form sum c z^lambda T_w.
template <class Field>
class AffineHecke {
 public:
  using S = typename Field::Scalar;
  using Key = std::pair<std::vector<int>, Perm>;
  using Elem = std::map<Key, S>;

  AffineHecke(Field field, int l);
  int rank() const { return l_; }
  const Field& field() const { return F_; }

  Elem basis(const Perm& w) const;
  Elem times_sigma(const Elem& e, int i) const;
  Elem times_z(const Elem& e, int j) const;
  /// Replace z^lambda by prod a_j^lambda_j; result indexed by w.
  std::map<Perm, S> evaluate(const Elem& e, const std::vector<S>& a) const;

 private:
  const Elem& push(const Perm& u, int j) const;  // T_u z_j
  static void add(Elem& e, const Key& k, const S& c);
  Field F_;
  int l_;
  S qq_;  // q - q^-1
  mutable std::map<std::pair<Perm, int>, Elem> memo_;
};

/// M_A with basis T_w, w in S_l (l = A.size() <= 3 by contract, up to 4 allowed).
template <class Field>
HeckeModule<Field> build_MA(const Field& F, const std::vector<typename Field::Scalar>& A);

/// One-dimensional module of the rank-0 algebra.
template <class Field>
HeckeModule<Field> trivial_hecke(const Field& F);

struct HeckeRelationReport {
  std::map<std::string, bool> relations;
  bool all_pass() const;
};

template <class Field>
HeckeRelationReport check_hecke_relations(const HeckeModule<Field>& M);

/// Induction along S_{l1} x S_{l2} -> S_{l1+l2}.
template <class Field>
HeckeModule<Field> zelevinsky_product(const HeckeModule<Field>& M1, const HeckeModule<Field>& M2);

/// Invertible Phi with R1(g) Phi = Phi R2(g) for all generators, if any.
template <class Field>
std::optional<DenseMatrix<typename Field::Scalar>> find_isomorphism(const HeckeModule<Field>& M1,
                                                                    const HeckeModule<Field>& M2);

template <class S>
struct Subspace {
  DenseMatrix<S> rows;  // reduced row echelon basis
  int dim() const { return static_cast<int>(rows.size()); }
};

template <class Field>
struct SubmoduleLattice {
  using S = typename Field::Scalar;
  int dim = 0;
  std::vector<Subspace<S>> submodules;  // sorted by dimension, includes 0 and M
  int algebra_dim = 0;                  // Burnside
  bool irreducible = false;
  bool consistent = true;               // lattice and Burnside agree
  std::vector<int> composition_dims;    // along one maximal chain
  bool semisimple = false;
  std::string note;
};

template <class Field>
SubmoduleLattice<Field> invariant_subspaces(const HeckeModule<Field>& M);

/// For l = 2 and A = (a, a eps) or (a eps, a): the stable line, its
/// eigenvalues and the shape of the composition series.
template <class Field>
struct StableLineReport {
  using S = typename Field::Scalar;
  std::vector<S> generator;  // coordinates on (1, sigma)
  std::string generator_text;
  std::string t_normalization;  // same line written with T = q sigma
  S sigma_eigenvalue, z1_eigenvalue, z2_eigenvalue;
  bool stable = false;
  bool non_split = false;
  std::vector<int> composition_dims;
};

template <class Field>
StableLineReport<Field> stable_line(const Field& F, const typename Field::Scalar& a, bool a_first);

struct ReducibilityTrial {
  std::string q, a1, a2;
  bool ratio_is_eps = false;
  bool reducible = false;
  bool agree() const { return ratio_is_eps == reducible; }
};

/// Random exact instantiations over Q: q and a_1 random, a_2 one of
/// a_1 eps, a_1/eps or random, eps = q^2.
std::vector<ReducibilityTrial> reducibility_trials(int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Segments

struct Segment {
  int center = 0;  // a = q^center
  int length = 1;
  std::vector<int> elements() const;  // exponents center+1-l, ..., center+l-1
};

struct DrinfeldFromSegments {
  int n = 0;
  std::map<int, std::vector<int>> centers;  // node i -> exponents of a_r, P_i = prod (u a_r - 1)
  std::vector<std::string> warnings;
  std::string str() const;
};

DrinfeldFromSegments segments_to_drinfeld(const std::vector<Segment>& S, int n);

extern template class AffineHecke<RationalField>;
extern template class AffineHecke<CyclotomicField>;
extern template class AffineHecke<GenericQField>;

}  // namespace qtor
