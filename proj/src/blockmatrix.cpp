#include "mixfrac/blockmatrix.hpp"

#include "mixfrac/errors.hpp"

namespace mixfrac {

BlockMatrix::BlockMatrix(BlockKind kind, int m, int n, RatMatrix base)
    : kind_(kind), m_(m), n_(n), base_(std::move(base)) {
    if (m < 1 || n < 1) throw ShapeMismatch("block matrix needs m >= 1 and n >= 1");
    const int wantRows = kind == BlockKind::T ? (m + 1) * n : m * n;
    const int wantCols = kind == BlockKind::T ? (m + 1) * n : n;
    if (base_.rows() != wantRows || base_.cols() != wantCols) {
        throw ShapeMismatch("base is " + std::to_string(base_.rows()) + "x" + std::to_string(base_.cols()) +
                            ", expected " + std::to_string(wantRows) + "x" + std::to_string(wantCols));
    }
}

RatMatrix BlockMatrix::block(int i, int j) const {
    if (kind_ != BlockKind::T) throw ShapeMismatch("block(i,j) is a kind-T accessor");
    if (i < 1 || i > m_ + 1 || j < 1 || j > m_ + 1) throw IndexOutOfRange("block index out of range");
    return base_.slice((i - 1) * n_, (j - 1) * n_, n_, n_);
}

RatMatrix BlockMatrix::blockJ(int i) const {
    if (kind_ != BlockKind::J) throw ShapeMismatch("blockJ(i) is a kind-J accessor");
    if (i < 1 || i > m_) throw IndexOutOfRange("block index out of range");
    return base_.slice((i - 1) * n_, 0, n_, n_);
}

RatMatrix BlockMatrix::tailStack(int from) const {
    if (kind_ == BlockKind::J) {
        if (from < 1 || from > m_) throw IndexOutOfRange("tail stack start out of range");
        return base_.slice((from - 1) * n_, 0, (m_ - from + 1) * n_, n_);
    }
    if (from < 2 || from > m_ + 1) throw IndexOutOfRange("tail stack start out of range");
    return base_.slice((from - 1) * n_, m_ * n_, (m_ + 1 - from + 1) * n_, n_);
}

RatMatrix BlockMatrix::lowerLeftMinor() const {
    if (kind_ != BlockKind::T) throw ShapeMismatch("minor is a kind-T accessor");
    return base_.slice(n_, 0, m_ * n_, m_ * n_);
}

bool schur_identity_check(const RatMatrix& A, int n1, int n2) {
    if (n1 < 1 || n2 < 1 || A.rows() != n1 + n2 || A.cols() != n1 + n2)
        throw ShapeMismatch("schur check needs a square (n1+n2) matrix");
    RatMatrix Ai = A.inverse(); // throws SingularMatrix when A is singular

    RatMatrix A3 = A.slice(n1, 0, n2, n2);
    RatMatrix A4 = A.slice(n1, n2, n2, n1);
    RatMatrix Ai1 = Ai.slice(0, 0, n2, n1);
    RatMatrix Ai2 = Ai.slice(0, n1, n2, n2);
    RatMatrix Ai3 = Ai.slice(n2, 0, n1, n1);
    RatMatrix Ai4 = Ai.slice(n2, n1, n1, n2);

    const bool a3inv = A3.rank() == n2;
    const bool ai3inv = Ai3.rank() == n1;
    if (a3inv != ai3inv) return false;
    if (!ai3inv) return true; // the identity is asserted only when Ai3 is invertible

    RatMatrix Ai3inv = Ai3.inverse();
    RatMatrix core(Ai2.rows(), Ai2.cols());
    {
        RatMatrix prod = Ai1 * Ai3inv * Ai4;
        for (int i = 0; i < core.rows(); ++i)
            for (int j = 0; j < core.cols(); ++j) core.at(i, j) = Ai2.at(i, j) - prod.at(i, j);
    }
    if (core.rank() != core.rows()) return false;
    return core.inverse() * Ai1 * Ai3inv == -A4;
}

bool corner_rank_equiv_check(const BlockMatrix& A) {
    if (A.kind() != BlockKind::T) throw ShapeMismatch("corner rank check takes a kind-T matrix");
    const int m = A.m(), n = A.n();
    RatMatrix inv = A.base().inverse(); // throws SingularMatrix when A is singular
    const bool cornerFull = inv.slice(0, 0, m * n, m * n).rank() == m * n;
    const bool tailFull = A.block(m + 1, m + 1).rank() == n;
    return cornerFull == tailFull;
}

} // namespace mixfrac
