#pragma once

// Truncated q-characters: Frenkel-Mukhin expansion, Kirillov-Reshetikhin
// characters, T-system and octahedron checks.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtor/cartan.hpp"
#include "qtor/ymono.hpp"

namespace qtor {

struct QTerm {
  std::int64_t coeff = 0;
  int height = 0;  // number of A^{-1} factors below the top
};

/// Sum of monomials with positive multiplicities, exact for heights <= depth.
struct QCharacter {
  std::shared_ptr<const CartanData> cartan;
  YMonomial top;
  int depth = 0;
  std::map<YMonomial, QTerm> terms;

  std::int64_t coeff(const YMonomial& m) const;
  std::vector<YMonomial> dominant_monomials() const;
  /// Terms of height <= d.
  QCharacter truncated(int d) const;
  std::map<YMonomial, std::int64_t> term_map(int max_height) const;
};

struct FmOptions {
  /// Shuffle the processing order inside each height layer.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Frenkel-Mukhin expansion of the dominant monomial mtop, truncated at depth.
/// InputError for non-dominant mtop or when the quantized Cartan condition
/// fails; AlgorithmError if a monomial is reached that is not i-dominant for
/// some node i still owing multiplicity.
QCharacter fm_expand(std::shared_ptr<const CartanData> C, const YMonomial& mtop, int depth,
                     const FmOptions& opt = {});

YMonomial kr_top(const CartanData& C, int i, int k, int l);
QCharacter kr_qchar(std::shared_ptr<const CartanData> C, int i, int k, int l, int depth,
                    const FmOptions& opt = {});

/// Product with heights added; terms above depth are dropped.
QCharacter truncated_product(const QCharacter& a, const QCharacter& b, int depth);

struct KrSpec {
  int node = 0;
  int k = 0;
  int l = 0;
  bool operator==(const KrSpec& o) const = default;
};

struct STerm {
  std::vector<KrSpec> factors;
  WeightVector nu;
};

STerm s_term(const CartanData& C, int i, int k, int l);

struct Mismatch {
  YMonomial monomial;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

struct IdentityReport {
  bool holds = true;
  int depth = 0;
  std::size_t lhs_terms = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> notes;
};

/// prod(lhs) = sum_t prod(rhs[t]) on monomials within depth of the lhs top.
IdentityReport verify_product_identity(std::shared_ptr<const CartanData> C,
                                       const std::vector<KrSpec>& lhs,
                                       const std::vector<std::vector<KrSpec>>& rhs, int depth);

struct TSystemReport : IdentityReport {
  STerm s;
  /// Pairing of nu + sum K Lambda_j minus the S-term top's weight
  /// (2k Lambda_i - k alpha_i, read on the node sums).
  std::map<int, long> nu_defect;
};

TSystemReport verify_tsystem(std::shared_ptr<const CartanData> C, int i, int k, int l, int depth);

YMonomial r_shift(const CartanData& C, const YMonomial& m, int steps);
QCharacter r_shift(const QCharacter& x, int steps);

/// Exactly one dominant monomial, of coefficient 1, within the truncation.
bool is_special(const QCharacter& x);

struct OctahedronReport {
  bool holds = true;
  int cells = 0;
  std::vector<std::string> failures;
};

/// T_{i,k,t} = chi_q(W^{(i)}_{k, q^{t+1-k}}) on the sl_infinity diagram.
OctahedronReport octahedron_verify(int depth, int i_lo, int i_hi, int k_lo, int k_hi, int t_lo,
                                   int t_hi);

/// Edges m -> m A_{i,l}^{-1} between terms of consecutive heights.
struct QEdge {
  YMonomial from;
  YMonomial to;
  int node = 0;
  int l = 0;
};
std::vector<QEdge> character_edges(const QCharacter& x);

}  // namespace qtor
