#include "mixfrac/profile.hpp"

#include "mixfrac/errors.hpp"

namespace mixfrac {

int RankProfile::rankAt(int blockIndex) const {
    int off = blockIndex - firstIndex;
    if (off < 0 || off >= int(ranks.size())) throw IndexOutOfRange("profile index out of range");
    return ranks[off];
}

int RankProfile::dropAmount(int blockIndex) const { return rankAt(blockIndex) - rankAt(blockIndex + 1); }

namespace {

RankProfile profile_from_stacks(const BlockMatrix& src, BlockKind kind, int first, int last) {
    RankProfile prof;
    prof.kind = kind;
    prof.n = src.n();
    prof.firstIndex = first;
    for (int k = first; k <= last; ++k) prof.ranks.push_back(src.tailStack(k).rank());
    prof.ranks.push_back(0);
    for (size_t i = 0; i + 1 < prof.ranks.size(); ++i) {
        if (prof.ranks[i] < prof.ranks[i + 1]) throw Error("rank profile not non-increasing");
        if (prof.ranks[i] > prof.ranks[i + 1]) prof.drops.push_back(first + int(i));
    }
    return prof;
}

} // namespace

RankProfile rank_profile_T(const BlockMatrix& A) {
    if (A.kind() != BlockKind::T) throw ShapeMismatch("rank_profile_T takes a kind-T matrix");
    return profile_from_stacks(A, BlockKind::T, 2, A.m() + 1);
}

RankProfile rank_profile_J(const BlockMatrix& D) {
    if (D.kind() != BlockKind::J) throw ShapeMismatch("rank_profile_J takes a kind-J matrix");
    return profile_from_stacks(D, BlockKind::J, 1, D.m());
}

PivotIndexSet pivot_index_set(const RankProfile& profile) {
    if (profile.ranks.empty() || profile.ranks.front() != profile.n)
        throw NotFullRank("pivot index set needs first rank equal to n");
    PivotIndexSet out;
    for (int d : profile.drops) {
        int c = profile.dropAmount(d);
        for (int t = profile.n + 1 - c; t <= profile.n; ++t) out.pairs.emplace_back(d, t);
    }
    // drops are found in increasing block order, coordinates increase within
    // each drop, so the pairs are already sorted.
    return out;
}

namespace {

/// Reduced rational row basis for incremental span membership tests.
class RowSpan {
  public:
    explicit RowSpan(int cols) : cols_(cols) {}

    bool contains(const std::vector<Rational>& row) const {
        std::vector<Rational> r = row;
        reduce(r);
        for (const auto& v : r)
            if (v != 0) return false;
        return true;
    }

    void add(const std::vector<Rational>& row) {
        std::vector<Rational> r = row;
        reduce(r);
        int lead = leadIndex(r);
        if (lead < 0) return;
        Rational p = r[lead];
        for (auto& v : r) v /= p;
        basis_.push_back(std::move(r));
    }

  private:
    static int leadIndex(const std::vector<Rational>& r) {
        for (size_t j = 0; j < r.size(); ++j)
            if (r[j] != 0) return int(j);
        return -1;
    }

    void reduce(std::vector<Rational>& r) const {
        for (const auto& b : basis_) {
            int lead = leadIndex(b);
            if (lead < 0 || r[lead] == 0) continue;
            Rational f = r[lead] / b[lead];
            for (int j = 0; j < cols_; ++j) r[j] -= f * b[j];
        }
    }

    int cols_;
    std::vector<std::vector<Rational>> basis_;
};

std::vector<Rational> matrix_row(const RatMatrix& m, int r) {
    std::vector<Rational> out(m.cols());
    for (int j = 0; j < m.cols(); ++j) out[j] = m.at(r, j);
    return out;
}

/// Solve c^T G = target for the coefficient vector c, where G stacks the
/// given rows of D. The system is consistent by construction of the greedy
/// scan; solved exactly by Gaussian elimination on G^T c = target^T.
std::vector<Rational> combination_coefficients(const RatMatrix& D, const std::vector<int>& rows,
                                               const std::vector<Rational>& target) {
    const int k = int(rows.size());
    const int n = D.cols();
    // augmented n x (k+1) system
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(k + 1, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) aug[i][j] = D.at(rows[j], i);
        aug[i][k] = target[i];
    }
    std::vector<int> pivotCol(n, -1);
    int row = 0;
    for (int col = 0; col < k && row < n; ++col) {
        int pr = -1;
        for (int i = row; i < n; ++i) {
            if (aug[i][col] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(aug[pr], aug[row]);
        Rational p = aug[row][col];
        for (int j = col; j <= k; ++j) aug[row][j] /= p;
        for (int i = 0; i < n; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rational f = aug[i][col];
            for (int j = col; j <= k; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivotCol[row] = col;
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (aug[i][k] != 0) throw Error("inconsistent elimination system in reduce_kernel");
    std::vector<Rational> c(k, Rational(0));
    for (int i = 0; i < row; ++i) c[pivotCol[i]] = aug[i][k];
    return c;
}

} // namespace

CanonicalForm reduce_kernel(const BlockMatrix& D) {
    if (D.kind() != BlockKind::J) throw ShapeMismatch("reduce_kernel takes a kind-J stack");
    const int m = D.m(), n = D.n();
    const RatMatrix& base = D.base();
    const int total = m * n;
    if (base.rank() != n) throw NotFullRank("reduce_kernel needs rank(D) = n");

    // Greedy bottom-up selection.
    std::vector<bool> selected(total, false);
    RowSpan span(n);
    std::vector<int> keptBelow; // global 0-based indices, kept rows, bottom-up order
    for (int r = total - 1; r >= 0; --r) {
        auto row = matrix_row(base, r);
        if (!span.contains(row)) {
            span.add(row);
            selected[r] = true;
        }
    }

    CanonicalForm out{{}, RatMatrix::identity(total), {}};
    out.selectedRows.assign(m, {});
    for (int r = 0; r < total; ++r) {
        if (selected[r]) out.selectedRows[r / n].push_back(r % n + 1);
    }

    for (int r = 0; r < total; ++r) {
        if (selected[r]) continue;
        std::vector<int> below;
        for (int s = r + 1; s < total; ++s)
            if (selected[s]) below.push_back(s);
        auto coeff = combination_coefficients(base, below, matrix_row(base, r));
        for (size_t j = 0; j < below.size(); ++j) out.P.at(r, below[j]) = -coeff[j];
        out.zeroRows.push_back(r + 1);
    }

    // Certificate verification, all exact.
    RatMatrix PD = out.P * base;
    for (int r = 0; r < total; ++r) {
        bool zero = true;
        for (int j = 0; j < n; ++j)
            if (PD.at(r, j) != 0) zero = false;
        if (zero == selected[r]) throw Error("reduce_kernel certificate: wrong zero pattern");
    }
    for (int r = 0; r < total; ++r) {
        if (out.P.at(r, r) != 1) throw Error("reduce_kernel certificate: diagonal not unit");
        for (int c = 0; c < r; ++c)
            if (out.P.at(r, c) != 0) throw Error("reduce_kernel certificate: not upper triangular");
    }
    {
        std::vector<int> sel1;
        for (int r = 0; r < total; ++r)
            if (selected[r]) sel1.push_back(r + 1);
        std::vector<int> all;
        for (int j = 1; j <= n; ++j) all.push_back(j);
        if (base.submatrix(sel1, all).rank() != n) throw Error("reduce_kernel certificate: selected rows singular");
    }
    {
        RankProfile prof = rank_profile_J(D);
        for (int i = 1; i <= m; ++i) {
            if (int(out.selectedRows[i - 1].size()) != prof.dropAmount(i))
                throw Error("reduce_kernel certificate: per-block count mismatch");
        }
    }
    return out;
}

} // namespace mixfrac
