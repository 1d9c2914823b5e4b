#pragma once

// Monomial crystal: Kashiwara operators on Y-monomials, walks and
// root-of-unity periodicity.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtor/ymono.hpp"

namespace qtor {

enum class KashiwaraDir { F, E };

/// (phi_i, eps_i) from the partial sums of the node-i exponents.
std::pair<int, int> phi_eps(const YMonomial& m, int i);

/// f~_i: m A_{i, l_f + r_i}^{-1}, l_f the smallest maximizer of the prefix sums;
/// e~_i: m A_{i, l_e - r_i}, l_e the largest maximizer of minus the suffix sums.
std::optional<YMonomial> kashiwara_apply(const CartanData& C, const YMonomial& m, int i,
                                         KashiwaraDir dir);

/// Whether the maximizer defining f~_i (first) or e~_i (second) is not unique.
std::pair<bool, bool> kashiwara_ties(const YMonomial& m, int i);

struct CrystalStep {
  int node = 0;
  KashiwaraDir dir = KashiwaraDir::F;
};

struct CrystalState {
  YMonomial monomial;
  std::vector<CrystalStep> history;
};

struct WalkResult {
  std::vector<YMonomial> path;
  /// Step index and node where f~ was undefined.
  std::optional<std::pair<int, int>> dead_end;
  /// Steps whose maximizer was tied.
  std::vector<int> ties;
};

WalkResult orbit_walk(const CartanData& C, const YMonomial& seed, const std::vector<int>& op_cycle,
                      int steps);

/// Spectral exponents reduced mod N into [0, N).
YMonomial reduce_mod(const YMonomial& m, int N);

/// Least period of the walk with spectral exponents reduced mod N.
int root_of_unity_period(const CartanData& C, const YMonomial& seed,
                         const std::vector<int>& op_cycle, int N);

}  // namespace qtor
