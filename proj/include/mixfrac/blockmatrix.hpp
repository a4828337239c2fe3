#pragma once

#include "mixfrac/ratmatrix.hpp"

namespace mixfrac {

enum class BlockKind { T, J };

/// Square (m+1)n x (m+1)n coefficient matrix in n x n blocks (kind T), or the
/// stacked mn x n column of maps D_1..D_m (kind J). Block accessors are
/// 1-based to match the index conventions of the decision procedures.
class BlockMatrix {
  public:
    BlockMatrix(BlockKind kind, int m, int n, RatMatrix base);

    BlockKind kind() const { return kind_; }
    int m() const { return m_; }
    int n() const { return n_; }
    const RatMatrix& base() const { return base_; }

    /// Kind T: the n x n block A_{i,j}, 1 <= i,j <= m+1.
    RatMatrix block(int i, int j) const;

    /// Kind J: the n x n block D_i, 1 <= i <= m.
    RatMatrix blockJ(int i) const;

    /// Kind T: rows i..m of the stacked blocks (D_i; ...; D_m) for kind J, or
    /// the stacked last-column blocks (A_{k,m+1}; ...; A_{m+1,m+1}) for kind T
    /// starting at block-row k. Used by the rank profiles.
    RatMatrix tailStack(int from) const;

    /// Kind T only: the mn x mn minor (A_{i,j})_{2<=i<=m+1, 1<=j<=m}.
    RatMatrix lowerLeftMinor() const;

  private:
    BlockKind kind_;
    int m_, n_;
    RatMatrix base_;
};

/// Exact check of the block-inverse identity: writing A in blocks
///   A = [[A1 (n1 x n2), A2 (n1 x n1)], [A3 (n2 x n2), A4 (n2 x n1)]]
/// and its inverse as
///   Ai = [[Ai1 (n2 x n1), Ai2 (n2 x n2)], [Ai3 (n1 x n1), Ai4 (n1 x n2)]],
/// verifies that A3 is invertible iff Ai3 is, and in that case
///   (Ai2 - Ai1 Ai3^{-1} Ai4)^{-1} Ai1 Ai3^{-1} = -A4.
/// Throws SingularMatrix when A itself has no inverse.
bool schur_identity_check(const RatMatrix& A, int n1, int n2);

/// Exact check that the leading mn x mn corner of A^{-1} has full rank mn
/// exactly when the block A_{m+1,m+1} has full rank n (kind T input).
bool corner_rank_equiv_check(const BlockMatrix& A);

} // namespace mixfrac
