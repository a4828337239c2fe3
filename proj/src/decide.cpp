#include "mixfrac/decide.hpp"

#include <algorithm>

#include "mixfrac/errors.hpp"

namespace mixfrac {

ProblemT::ProblemT(int m_, int n_, BlockMatrix A_, ExponentVector p_, Exponent q_, Order lambda_)
    : m(m_), n(n_), A(std::move(A_)), p(std::move(p_)), q(std::move(q_)), lambda(std::move(lambda_)) {
    if (A.kind() != BlockKind::T || A.m() != m || A.n() != n) throw ShapeMismatch("problem matrix shape mismatch");
    if (int(p.size()) != m + 1) throw ShapeMismatch("kind T needs m+1 exponents");
}

ProblemJ::ProblemJ(int m_, int n_, BlockMatrix D_, ExponentVector p_, Exponent q_, Order lambda_)
    : m(m_), n(n_), D(std::move(D_)), p(std::move(p_)), q(std::move(q_)), lambda(std::move(lambda_)) {
    if (D.kind() != BlockKind::J || D.m() != m || D.n() != n) throw ShapeMismatch("problem matrix shape mismatch");
    if (int(p.size()) != m) throw ShapeMismatch("kind J needs m exponents");
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Bounded: return "Bounded";
        case Status::Unbounded: return "Unbounded";
        case Status::OutsideTheoremScope: return "OutsideTheoremScope";
    }
    return "?";
}

namespace {

struct TraceBuilder {
    std::vector<TraceEntry> entries;

    bool add(const std::string& id, const std::string& item, bool pass, const std::string& witness) {
        entries.push_back({id, item, pass, witness});
        return pass;
    }

    Verdict finish(Status statusWhenFailed = Status::Unbounded) const {
        for (const auto& e : entries) {
            if (!e.pass) return {statusWhenFailed, e.id + ": " + e.witness, entries};
        }
        return {Status::Bounded, "all characterization conditions hold", entries};
    }
};

std::string homog_witness(const ExponentVector& ps, const Exponent& q, const Order& lambda, int m, int n) {
    Rational lhs = reciprocal_sum(ps);
    Rational rhs = q.reciprocal() + (Rational(m) * n - lambda.value) / n;
    return "sum(1/p_i) = " + format_rational(lhs) + ", 1/q + (m*n - lambda)/n = " + format_rational(rhs);
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

void require_order_window(const Order& lambda, int m, int n) {
    if (lambda.value <= 0 || lambda.value >= Rational(m) * n)
        throw DomainError("lambda must lie in (0, m*n), got " + lambda.str());
}

} // namespace

Verdict decide_riesz_classic(const Exponent& p, const Exponent& q, const Order& lambda, int n) {
    if (n < 1) throw ShapeMismatch("n must be positive");
    require_order_window(lambda, 1, n);
    TraceBuilder t;
    t.add("HOMOG", "dimensional balance 1/p = 1/q + (n - lambda)/n",
          check_homogeneity({p}, q, lambda, 1, n, OpKind::J), homog_witness({p}, q, lambda, 1, n));
    t.add("EXIST-PK", "source exponent strictly between 1 and infinity",
          p.greaterThanOne() && p.isFinite(), "p = " + p.str());
    t.add("MIN-DROP", "p strictly below q", p < q, "p = " + p.str() + ", q = " + q.str());
    t.add("MAX-DROP", "q finite", q.isFinite(), "q = " + q.str());
    return t.finish();
}

Verdict decide_J(const ProblemJ& prob) {
    const int m = prob.m, n = prob.n;
    require_order_window(prob.lambda, m, n);
    RankProfile prof = rank_profile_J(prob.D);

    TraceBuilder t;
    bool tailrank = t.add("TAILRANK", "stacked column D has full rank n", prof.ranks.front() == n,
                          "rank(D) = " + std::to_string(prof.ranks.front()) + ", n = " + std::to_string(n));
    t.add("HOMOG", "dimensional balance sum(1/p_i) = 1/q + (m*n - lambda)/n",
          check_homogeneity(prob.p, prob.q, prob.lambda, m, n, OpKind::J),
          homog_witness(prob.p, prob.q, prob.lambda, m, n));

    int i0 = 0; // largest i with p_i > 1 (0 when none)
    for (int i = 1; i <= m; ++i)
        if (prob.p[i - 1].greaterThanOne()) i0 = i;
    bool exist = false;
    for (const auto& pi : prob.p) exist = exist || (pi.greaterThanOne() && pi.isFinite());
    t.add("EXIST-PK", "some slot i has 1 < p_i < infinity", exist,
          exist ? "i_0 = " + std::to_string(i0) + ", p_{i_0} = " + prob.p[i0 - 1].str()
                : "no slot with 1 < p_i < infinity");

    if (tailrank && exist && prof.nu() >= 1) {
        Exponent minDrop = prob.p[prof.drops.front() - 1];
        Exponent maxAll = prob.p[i0 - 1];
        for (int d : prof.drops) {
            minDrop = std::min(minDrop, prob.p[d - 1]);
            maxAll = std::max(maxAll, prob.p[d - 1]);
        }
        t.add("MIN-DROP", "min over drop slots of p strictly below q", minDrop < prob.q,
              "drops = {" + join_ints(prof.drops) + "}, min p = " + minDrop.str() + ", q = " + prob.q.str());
        t.add("MAX-DROP", "max over i_0 and drop slots of p at most q, with q finite",
              maxAll <= prob.q && prob.q.isFinite(),
              "max p = " + maxAll.str() + ", q = " + prob.q.str());
    }
    return t.finish();
}

Verdict decide_J_identity(int m, int n, const ExponentVector& p, const Exponent& q, const Order& lambda) {
    if (int(p.size()) != m) throw ShapeMismatch("kind J needs m exponents");
    require_order_window(lambda, m, n);
    TraceBuilder t;
    t.add("HOMOG", "dimensional balance sum(1/p_i) = 1/q + (m*n - lambda)/n",
          check_homogeneity(p, q, lambda, m, n, OpKind::J), homog_witness(p, q, lambda, m, n));
    int i0 = 0;
    for (int i = 1; i <= m; ++i)
        if (p[i - 1].greaterThanOne()) i0 = i;
    bool exist = false;
    for (const auto& pi : p) exist = exist || (pi.greaterThanOne() && pi.isFinite());
    t.add("EXIST-PK", "some slot i has 1 < p_i < infinity", exist,
          exist ? "i_0 = " + std::to_string(i0) + ", p_{i_0} = " + p[i0 - 1].str()
                : "no slot with 1 < p_i < infinity");
    if (exist) {
        const std::string which = i0 == m ? "case i_0 = m" : "case i_0 < m";
        if (i0 == m) {
            t.add("MIN-DROP", "identity stack, p_m strictly below q", p[m - 1] < q,
                  which + ": p_m = " + p[m - 1].str() + ", q = " + q.str());
            t.add("MAX-DROP", "q finite", q.isFinite(), which + ": q = " + q.str());
        } else {
            t.add("MIN-DROP", "identity stack, p_m strictly below q", p[m - 1] < q,
                  which + ": p_m = " + p[m - 1].str() + ", q = " + q.str());
            t.add("MAX-DROP", "p_{i_0} at most q, with q finite", p[i0 - 1] <= q && q.isFinite(),
                  which + ": p_{i_0} = " + p[i0 - 1].str() + ", q = " + q.str());
        }
    }
    return t.finish();
}

namespace {

Verdict decide_T_general(const ProblemT& prob, TraceBuilder t) {
    const int m = prob.m, n = prob.n;
    bool ainv = t.add("A-INV", "coefficient matrix invertible", prob.A.base().rank() == (m + 1) * n,
                      "A is " + std::to_string((m + 1) * n) + "x" + std::to_string((m + 1) * n) +
                          (prob.A.base().rank() == (m + 1) * n ? ", full rank" : ", rank deficient"));
    if (!ainv) return t.finish();

    RatMatrix minor = prob.A.lowerLeftMinor();
    bool minorInv = minor.rank() == m * n;
    t.add("MINOR", "lower-left minor (block rows 2..m+1, block columns 1..m) invertible", minorInv,
          minorInv ? "minor has full rank" : "minor is rank deficient; instance not characterized");
    if (!minorInv) return t.finish(Status::OutsideTheoremScope);

    RankProfile prof = rank_profile_T(prob.A);
    bool tailrank = t.add("TAILRANK", "stacked last-column blocks have full rank n", prof.ranks.front() == n,
                          "r_2 = " + std::to_string(prof.ranks.front()) + ", n = " + std::to_string(n));

    int k0 = 0; // largest k in [2, m+1] with p_k > 1
    for (int k = 2; k <= m + 1; ++k)
        if (prob.p[k - 1].greaterThanOne()) k0 = k;
    bool exist = false;
    for (int k = 2; k <= m + 1; ++k)
        exist = exist || (prob.p[k - 1].greaterThanOne() && prob.p[k - 1].isFinite());
    t.add("EXIST-PK", "some integrated slot k in [2, m+1] has 1 < p_k < infinity", exist,
          exist ? "k_0 = " + std::to_string(k0) + ", p_{k_0} = " + prob.p[k0 - 1].str()
                : "no integrated slot with 1 < p_k < infinity");

    if (tailrank && exist && prof.nu() >= 1) {
        Exponent minDrop = prob.p[prof.drops.front() - 1];
        Exponent maxAll = prob.p[k0 - 1];
        for (int d : prof.drops) {
            minDrop = std::min(minDrop, prob.p[d - 1]);
            maxAll = std::max(maxAll, prob.p[d - 1]);
        }
        t.add("MIN-DROP", "min over drop slots of p strictly below q", minDrop < prob.q,
              "drops = {" + join_ints(prof.drops) + "}, min p = " + minDrop.str() + ", q = " + prob.q.str());
        t.add("MAX-DROP", "max over k_0 and drop slots of p at most q", maxAll <= prob.q,
              "max p = " + maxAll.str() + ", q = " + prob.q.str());
    }
    {
        bool pass = prob.q < prob.p[0];
        std::string w = "q = " + prob.q.str() + ", p_1 = " + prob.p[0].str();
        if (prob.q.isInfinite()) w += " (boundary interpretation: q = inf fails the strict comparison)";
        t.add("Q-LT-P1", "q strictly below p_1", pass, w);
    }
    return t.finish();
}

} // namespace

Verdict decide_T(const ProblemT& prob) {
    require_order_window(prob.lambda, prob.m, prob.n);
    TraceBuilder t;
    bool homog = t.add("HOMOG", "dimensional balance sum(1/p_i) = 1/q + (m*n - lambda)/n",
                       check_homogeneity(prob.p, prob.q, prob.lambda, prob.m, prob.n, OpKind::T),
                       homog_witness(prob.p, prob.q, prob.lambda, prob.m, prob.n));
    if (!homog) return t.finish();
    if (prob.m == 1) {
        Verdict inner = decide_T_m1(prob);
        inner.trace.insert(inner.trace.begin(), t.entries.begin(), t.entries.end());
        return inner;
    }
    if (prob.n == 1) {
        Verdict inner = decide_T_n1(prob);
        inner.trace.insert(inner.trace.begin(), t.entries.begin(), t.entries.end());
        return inner;
    }
    return decide_T_general(prob, std::move(t));
}

Verdict decide_T_m1(const ProblemT& prob) {
    if (prob.m != 1) throw ShapeMismatch("decide_T_m1 needs m = 1");
    require_order_window(prob.lambda, 1, prob.n);
    if (!check_homogeneity(prob.p, prob.q, prob.lambda, 1, prob.n, OpKind::T))
        throw PreconditionViolated("decide_T_m1 requires the balance identity to hold");

    TraceBuilder t;
    t.add("A-INV", "coefficient matrix invertible", prob.A.base().rank() == 2 * prob.n,
          prob.A.base().rank() == 2 * prob.n ? "A has full rank" : "A is rank deficient");
    t.add("MINOR", "block A_{2,1} invertible", prob.A.block(2, 1).rank() == prob.n,
          prob.A.block(2, 1).rank() == prob.n ? "A_{2,1} has full rank" : "A_{2,1} is rank deficient");
    t.add("TAILRANK", "block A_{2,2} invertible", prob.A.block(2, 2).rank() == prob.n,
          prob.A.block(2, 2).rank() == prob.n ? "A_{2,2} has full rank" : "A_{2,2} is rank deficient");
    t.add("EXIST-PK", "1 < p_2 < infinity", prob.p[1].greaterThanOne() && prob.p[1].isFinite(),
          "p_2 = " + prob.p[1].str());
    t.add("MIN-DROP", "p_2 strictly below q", prob.p[1] < prob.q,
          "p_2 = " + prob.p[1].str() + ", q = " + prob.q.str());
    {
        bool pass = prob.q < prob.p[0];
        std::string w = "q = " + prob.q.str() + ", p_1 = " + prob.p[0].str();
        if (prob.q.isInfinite()) w += " (boundary interpretation: q = inf fails the strict comparison)";
        t.add("Q-LT-P1", "q strictly below p_1", pass, w);
    }
    return t.finish();
}

std::optional<M0Result> search_m0(const BlockMatrix& A) {
    if (A.kind() != BlockKind::T || A.n() != 1) throw ShapeMismatch("search_m0 needs a kind-T matrix with n = 1");
    const int m = A.m();
    const RatMatrix& base = A.base();
    for (int mt = m; mt >= 1; --mt) {
        // tail (A_{m-mt+2, m+1}, ..., A_{m+1, m+1}) must not vanish; it does
        // not depend on the column subset.
        bool tailNonzero = false;
        for (int i = m - mt + 2; i <= m + 1; ++i) tailNonzero = tailNonzero || base.at(i - 1, m) != 0;
        if (!tailNonzero) continue;

        std::vector<int> rows1, rows2;
        for (int i = m - mt + 2; i <= m + 1; ++i) rows1.push_back(i);
        for (int i = m - mt + 1; i <= m + 1; ++i) rows2.push_back(i);

        std::vector<int> subset(mt);
        for (int i = 0; i < mt; ++i) subset[i] = i + 1;
        while (true) {
            std::vector<int> colsExt = subset;
            colsExt.push_back(m + 1);
            if (base.submatrix(rows1, subset).rank() == mt && base.submatrix(rows2, colsExt).rank() == mt + 1) {
                int k1 = 0;
                for (int i = m - mt + 2; i <= m + 1; ++i)
                    if (base.at(i - 1, m) != 0) k1 = i;
                return M0Result{mt, subset, k1};
            }
            // next lexicographic mt-subset of {1..m}
            int pos = mt - 1;
            while (pos >= 0 && subset[pos] == m - (mt - 1 - pos)) --pos;
            if (pos < 0) break;
            ++subset[pos];
            for (int j = pos + 1; j < mt; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return std::nullopt;
}

Verdict decide_T_n1(const ProblemT& prob) {
    if (prob.n != 1) throw ShapeMismatch("decide_T_n1 needs n = 1");
    const int m = prob.m;
    require_order_window(prob.lambda, m, 1);
    if (!check_homogeneity(prob.p, prob.q, prob.lambda, m, 1, OpKind::T))
        throw PreconditionViolated("decide_T_n1 requires the balance identity to hold");

    TraceBuilder t;
    bool ainv = t.add("A-INV", "coefficient matrix invertible", prob.A.base().rank() == m + 1,
                      prob.A.base().rank() == m + 1 ? "A has full rank" : "A is rank deficient");
    if (!ainv) return t.finish();

    auto found = search_m0(prob.A);
    t.add("M0-SEARCH", "some mtilde admits invertible selected minors and a nonzero tail",
          found.has_value(),
          found ? "m_0 = " + std::to_string(found->m0) + ", columns {" + join_ints(found->subset) +
                      "}, k_1 = " + std::to_string(found->k1)
                : "no admissible mtilde");
    if (!found) return t.finish();
    const int m0 = found->m0, k1 = found->k1;

    int k0 = 0;
    for (int k = m - m0 + 2; k <= m + 1; ++k)
        if (prob.p[k - 1].greaterThanOne()) k0 = k;
    bool exist = k0 != 0;
    t.add("EXIST-PK", "some slot k >= m - m_0 + 2 has p_k > 1", exist,
          exist ? "k_0 = " + std::to_string(k0) + ", p_{k_0} = " + prob.p[k0 - 1].str()
                : "all p_k = 1 for k >= m - m_0 + 2");

    {
        Rational head(0);
        for (int i = 1; i <= m - m0; ++i) head += Rational(1) - prob.p[i - 1].reciprocal();
        Rational gap = prob.lambda.value - head;
        t.add("LAMBDA-WINDOW", "0 < lambda - sum_{i <= m-m_0} 1/p_i' < m_0",
              gap > 0 && gap < m0,
              "lambda - sum = " + format_rational(gap) + ", m_0 = " + std::to_string(m0));
    }
    if (exist) {
        bool pass = prob.p[k1 - 1] < prob.q && prob.p[k0 - 1] <= prob.q && prob.q < prob.p[m - m0];
        t.add("N1-INEQ", "p_{k_1} < q, p_{k_0} <= q < p_{m-m_0+1}", pass,
              "p_{k_1} = " + prob.p[k1 - 1].str() + ", p_{k_0} = " + prob.p[k0 - 1].str() + ", q = " +
                  prob.q.str() + ", p_{m-m_0+1} = " + prob.p[m - m0].str());
    }
    return t.finish();
}

} // namespace mixfrac
