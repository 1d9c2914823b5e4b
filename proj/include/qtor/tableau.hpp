#pragma once

// Stabilized tableaux and the tableau-sum formula for toroidal type A
// Kirillov-Reshetikhin characters.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtor/qchar.hpp"

namespace qtor {

/// Tableau (T_{i,j})_{i <= 0, 1 <= j <= k} with T_{i,j} = i for i << 0. Only
/// deviating boxes (T_{i,j} != i) are stored.
struct StabTableau {
  int width = 1;
  std::map<std::pair<int, int>, int> deviations;  // (i, j) -> T_{i,j}

  int value(int i, int j) const;
  int excess() const;
  bool valid() const;
  std::string str() const;
  bool operator==(const StabTableau& o) const = default;
};

/// All tableaux of width k with excess <= max_excess, each once.
std::vector<StabTableau> enumerate_tableaux(int k, int max_excess);

/// prod_{i,j} box(T_{i,j})_{q^{l+2(j-i)}} with the ground columns telescoped,
/// nodes taken mod n+1 and shifted by R^shift.
YMonomial tableau_monomial(const StabTableau& T, int n, int l, int shift);
/// Same product taken literally over rows -M <= i <= 0.
YMonomial tableau_monomial_explicit(const StabTableau& T, int n, int l, int shift, int M);

struct TableauCompareReport {
  bool agree = true;
  int n = 0, k = 0, shift = 0, l = 0, depth = 0;
  std::size_t tableaux = 0;
  std::size_t qchar_terms = 0;
  bool excess_is_height = true;
  int excess_bound_used = 0;
  struct Witness {
    YMonomial monomial;
    std::int64_t tableau_count = 0;
    std::int64_t qchar_coeff = 0;
    std::string tableau;  // one tableau producing the monomial, if any
  };
  std::vector<Witness> mismatches;
};

/// Tableau multiset against kr_qchar(node = shift, k, l + 1) on heights <= depth.
TableauCompareReport tableau_qchar_compare(int n, int k, int shift, int l, int depth);

}  // namespace qtor
