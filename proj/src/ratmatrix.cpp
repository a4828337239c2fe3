#include "mixfrac/ratmatrix.hpp"

#include <sstream>

#include "mixfrac/errors.hpp"

namespace mixfrac {

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, Rational(0)) {
    if (rows < 0 || cols < 0) throw ShapeMismatch("negative matrix dimensions");
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Rational& RatMatrix::at(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw IndexOutOfRange("matrix entry out of range");
    return e_[size_t(r) * cols_ + c];
}

const Rational& RatMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw IndexOutOfRange("matrix entry out of range");
    return e_[size_t(r) * cols_ + c];
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
    if (cols_ != other.rows_) throw ShapeMismatch("matrix product shape mismatch");
    RatMatrix out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = e_[size_t(i) * cols_ + k];
            if (a == 0) continue;
            for (int j = 0; j < other.cols_; ++j) {
                out.at(i, j) += a * other.at(k, j);
            }
        }
    }
    return out;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix out(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
    return out;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

bool RatMatrix::isZero() const {
    for (const auto& v : e_) {
        if (v != 0) return false;
    }
    return true;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

namespace {

/// Row-scale to integers: multiply each row by the lcm of its denominators.
/// Rank is unchanged; the determinant picks up the product of the scales.
std::vector<mpz_class> scaled_integer_copy(const RatMatrix& m, mpz_class& scaleProduct) {
    scaleProduct = 1;
    std::vector<mpz_class> w(size_t(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class l(1);
        for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        scaleProduct *= l;
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& v = m.at(i, j);
            w[size_t(i) * m.cols() + j] = v.get_num() * (l / v.get_den());
        }
    }
    return w;
}

/// Fraction-free elimination. Returns the pivot count; when detOut is given
/// the matrix must be square and *detOut receives the exact determinant of
/// the integer matrix (0 when rank-deficient).
int bareiss(std::vector<mpz_class>& w, int rows, int cols, mpz_class* detOut) {
    mpz_class prev(1);
    int sign = 1;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i) {
            if (w[size_t(i) * cols + col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != row) {
            for (int j = 0; j < cols; ++j) std::swap(w[size_t(pivot) * cols + j], w[size_t(row) * cols + j]);
            sign = -sign;
        }
        const mpz_class& p = w[size_t(row) * cols + col];
        for (int i = row + 1; i < rows; ++i) {
            mpz_class& lead = w[size_t(i) * cols + col];
            for (int j = col + 1; j < cols; ++j) {
                mpz_class t = p * w[size_t(i) * cols + j] - lead * w[size_t(row) * cols + j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w[size_t(i) * cols + j] = t;
            }
            lead = 0;
        }
        prev = p;
        ++row;
    }
    if (detOut) {
        if (row < rows) {
            *detOut = 0;
        } else {
            *detOut = sign * prev;
        }
    }
    return row;
}

} // namespace

int RatMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    mpz_class scale;
    auto w = scaled_integer_copy(*this, scale);
    return bareiss(w, rows_, cols_, nullptr);
}

Rational RatMatrix::det() const {
    if (!isSquare()) throw ShapeMismatch("determinant of non-square matrix");
    if (rows_ == 0) return Rational(1);
    mpz_class scale;
    auto w = scaled_integer_copy(*this, scale);
    mpz_class d;
    bareiss(w, rows_, cols_, &d);
    Rational out(d, scale);
    out.canonicalize();
    return out;
}

RatMatrix RatMatrix::inverse() const {
    if (!isSquare()) throw ShapeMismatch("inverse of non-square matrix");
    const int n = rows_;
    RatMatrix work(*this);
    RatMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (work.at(i, col) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw SingularMatrix("matrix is singular");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        Rational p = work.at(col, col);
        for (int j = 0; j < n; ++j) {
            work.at(col, j) /= p;
            inv.at(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            Rational f = work.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                work.at(i, j) -= f * work.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

RatMatrix RatMatrix::submatrix(const std::vector<int>& rows1, const std::vector<int>& cols1) const {
    auto validate = [](const std::vector<int>& idx, int limit, const char* which) {
        int last = 0;
        for (int v : idx) {
            if (v < 1 || v > limit) throw IndexOutOfRange(std::string(which) + " index out of range");
            if (v <= last) throw ShapeMismatch(std::string(which) + " indices must strictly increase");
            last = v;
        }
    };
    validate(rows1, rows_, "row");
    validate(cols1, cols_, "column");
    RatMatrix out(int(rows1.size()), int(cols1.size()));
    for (size_t i = 0; i < rows1.size(); ++i)
        for (size_t j = 0; j < cols1.size(); ++j) out.at(int(i), int(j)) = at(rows1[i] - 1, cols1[j] - 1);
    return out;
}

RatMatrix RatMatrix::slice(int r0, int c0, int h, int w) const {
    if (r0 < 0 || c0 < 0 || h < 0 || w < 0 || r0 + h > rows_ || c0 + w > cols_)
        throw IndexOutOfRange("slice out of range");
    RatMatrix out(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) out.at(i, j) = at(r0 + i, c0 + j);
    return out;
}

RatMatrix RatMatrix::stackBelow(const RatMatrix& other) const {
    if (cols_ != other.cols_) throw ShapeMismatch("stack with different column counts");
    RatMatrix out(rows_ + other.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int i = 0; i < other.rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = other.at(i, j);
    return out;
}

std::string RatMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << format_rational(at(i, j));
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

} // namespace mixfrac
