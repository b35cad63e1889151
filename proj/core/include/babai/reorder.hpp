#pragma once

// Column-reordering strategies on an upper-triangular factor: the LLL
// permutation-only strategy (LLL-P), sorted QR (SQRD), V-BLAST, and the full
// LLL reduction with exact unimodular bookkeeping.

#include <cstddef>
#include <optional>
#include <vector>

#include "babai/matrix.hpp"

namespace babai {

/// Result of a permutation strategy applied to R. `perm[j]` is the original
/// column of R that ended up at position j, so that with P the corresponding
/// permutation matrix, qbar' * R * P = rbar whenever qbar is accumulated.
struct PermutedFactors {
  UpperTriangular rbar;
  std::vector<std::size_t> perm;
  std::optional<DenseMatrix> qbar;
};

/// Full LLL output. z is unimodular, u = z^-1 exactly, and rbar satisfies the
/// Lovasz condition for the configured delta plus size reduction.
struct UnimodularReduction {
  UpperTriangular rbar;
  IntMatrix z;
  IntMatrix u;
};

/// LLL-P: repeated adjacent-column swaps (each via a Givens retriangularization)
/// until delta * rbar[k-1][k-1]^2 <= rbar[k-1][k]^2 + rbar[k][k]^2 for all k.
/// delta must lie in (0.25, 1].
PermutedFactors lll_p(const UpperTriangular& r, double delta = 1.0, bool want_q = false);

/// Sorted QR: columns chosen first to last, each step picking the remaining
/// column that minimizes the resulting |rbar_kk|. Ties pick the lowest
/// original column index.
PermutedFactors sqrd(const UpperTriangular& r, bool want_q = false);

/// V-BLAST: columns chosen last to first, each step picking the remaining
/// column that maximizes the resulting |rbar_kk|. Ties pick the lowest
/// original column index.
PermutedFactors vblast(const UpperTriangular& r, bool want_q = false);

/// Full LLL reduction of R with integer-exact accumulation of the unimodular
/// transform. Aborts with NonTerminationError after 1e6 iterations.
UnimodularReduction lll_reduce(const UpperTriangular& r, double delta = 1.0);

}  // namespace babai
