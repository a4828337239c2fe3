#pragma once

#include <utility>
#include <vector>

#include "mixfrac/blockmatrix.hpp"

namespace mixfrac {

/// Non-increasing ranks of the nested tail stacks, with a terminal zero.
/// Kind T indexes blocks 2..m+2 (r_k = rank of (A_{k,m+1};...;A_{m+1,m+1}),
/// r_{m+2} = 0); kind J indexes 1..m+1 (gamma_i = rank of (D_i;...;D_m),
/// gamma_{m+1} = 0). drops lists the block indices where the rank strictly
/// decreases; their decrease amounts sum to the first rank.
struct RankProfile {
    BlockKind kind;
    int n;
    int firstIndex; // 2 for kind T, 1 for kind J
    std::vector<int> ranks;
    std::vector<int> drops;

    int nu() const { return int(drops.size()); }
    int rankAt(int blockIndex) const; // throws IndexOutOfRange outside the profile
    int dropAmount(int blockIndex) const;
};

RankProfile rank_profile_T(const BlockMatrix& A);
RankProfile rank_profile_J(const BlockMatrix& D);

/// The (block, coordinate) pairs picked by the drops: each drop at block i
/// with decrease c contributes (i, n+1-c), ..., (i, n). Sorted by block then
/// coordinate; size equals the first rank, which must be n (NotFullRank
/// otherwise).
struct PivotIndexSet {
    std::vector<std::pair<int, int>> pairs;
};

PivotIndexSet pivot_index_set(const RankProfile& profile);

/// Row-selection certificate for a full-rank stacked column D: P is unit
/// upper triangular, P*D vanishes exactly off the selected rows, the selected
/// rows stack to an invertible n x n matrix, and the count selected in block
/// i equals gamma_i - gamma_{i+1}. Equivalently P*(D, -I) = (P*D, -U) with U
/// unit upper triangular up to sign (diagonal -1).
struct CanonicalForm {
    std::vector<std::vector<int>> selectedRows; // per block, 1-based rows within the block
    RatMatrix P;                                // mn x mn, unit upper triangular
    std::vector<int> zeroRows;                  // 1-based global rows where P*D = 0
};

/// Greedy bottom-up row selection (global rows mn..1): keep a row when it
/// enlarges the span of the rows kept so far, then eliminate each discarded
/// row against the kept rows strictly below it. Requires rank(D) = n
/// (NotFullRank otherwise). All certificate claims are re-verified exactly
/// before returning.
CanonicalForm reduce_kernel(const BlockMatrix& D);

} // namespace mixfrac
