#pragma once

#include <vector>

#include "mixfrac/rational.hpp"

namespace mixfrac {

/// Dense matrix over exact rationals. Entry access is 0-based; the index-set
/// submatrix op is 1-based to match the block-index conventions used by the
/// decision procedures.
class RatMatrix {
  public:
    RatMatrix(int rows, int cols);
    static RatMatrix identity(int n);
    static RatMatrix zero(int rows, int cols) { return RatMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c);
    const Rational& at(int r, int c) const;

    RatMatrix operator*(const RatMatrix& other) const;
    RatMatrix operator-() const;
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    bool isZero() const;
    bool isSquare() const { return rows_ == cols_; }
    RatMatrix transpose() const;

    /// Rank by fraction-free (Bareiss) elimination on a row-scaled integer copy.
    int rank() const;

    /// Exact determinant (square only; Bareiss with swap-sign tracking).
    Rational det() const;
    bool invertible() const { return isSquare() && det() != 0; }

    /// Exact inverse by rational Gauss-Jordan elimination. Throws
    /// SingularMatrix when no inverse exists.
    RatMatrix inverse() const;

    /// Rows/cols are 1-based, strictly increasing index sets. Throws
    /// IndexOutOfRange on bad indices, ShapeMismatch on non-increasing sets.
    RatMatrix submatrix(const std::vector<int>& rows1, const std::vector<int>& cols1) const;

    /// Contiguous 0-based block [r0, r0+h) x [c0, c0+w).
    RatMatrix slice(int r0, int c0, int h, int w) const;

    /// Stack this on top of other (same column count).
    RatMatrix stackBelow(const RatMatrix& other) const;

    std::string str() const;

  private:
    int rows_, cols_;
    std::vector<Rational> e_;
};

} // namespace mixfrac
