#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixfrac/blockmatrix.hpp"
#include "mixfrac/exponents.hpp"
#include "mixfrac/profile.hpp"

namespace mixfrac {

/// Instance of the multilinear operator with full coefficient matrix A:
/// integrate f(Ax) against the kernel (sum_i |x_i|)^{-lambda} over x_1..x_m,
/// with x_{m+1} the free variable. Arity checks happen at construction.
struct ProblemT {
    int m, n;
    BlockMatrix A; // kind T
    ExponentVector p; // length m+1
    Exponent q;
    Order lambda;

    ProblemT(int m_, int n_, BlockMatrix A_, ExponentVector p_, Exponent q_, Order lambda_);
};

/// Instance of the potential with stacked column D = (D_1;...;D_m):
/// integrate f(y) against (sum_i |D_i x - y_i|)^{-lambda} over y in R^{mn}.
struct ProblemJ {
    int m, n;
    BlockMatrix D; // kind J
    ExponentVector p; // length m
    Exponent q;
    Order lambda;

    ProblemJ(int m_, int n_, BlockMatrix D_, ExponentVector p_, Exponent q_, Order lambda_);
};

enum class Status { Bounded, Unbounded, OutsideTheoremScope };

const char* status_name(Status s);

/// One checked condition. id is a stable machine key (HOMOG, A-INV, MINOR,
/// TAILRANK, EXIST-PK, MIN-DROP, MAX-DROP, Q-LT-P1, M0-SEARCH,
/// LAMBDA-WINDOW, N1-INEQ); item names the characterization clause and
/// witness carries the concrete numbers behind the pass/fail.
struct TraceEntry {
    std::string id;
    std::string item;
    bool pass;
    std::string witness;
};

struct Verdict {
    Status status;
    std::string reason; // "<id>: <text>" for the first failing condition
    std::vector<TraceEntry> trace;

    bool bounded() const { return status == Status::Bounded; }
};

/// Classic one-function potential on R^n: bounded from L^p to L^q exactly
/// when 1 < p < q < infinity and 1/p = 1/q + (n - lambda)/n. Requires
/// 0 < lambda < n (DomainError otherwise).
Verdict decide_riesz_classic(const Exponent& p, const Exponent& q, const Order& lambda, int n);

/// Full characterization for the stacked-column potential. Requires
/// 0 < lambda < mn.
Verdict decide_J(const ProblemJ& prob);

/// Identity-stack corollary (every D_i = I_n); trace notes which of the two
/// exponent cases applied. Must agree with decide_J on the identity stack.
Verdict decide_J_identity(int m, int n, const ExponentVector& p, const Exponent& q, const Order& lambda);

/// Decision for the multilinear operator. Requires 0 < lambda < mn. The
/// m = 1 and n = 1 instances delegate to the complete characterizations
/// below; otherwise a singular lower-left minor leaves the instance outside
/// the characterized class (OutsideTheoremScope).
Verdict decide_T(const ProblemT& prob);

/// Complete bilinear (m = 1) characterization: bounded iff
/// 1 < p_2 < q < p_1 <= infinity and A, A_{2,1}, A_{2,2} are invertible.
/// Precondition: homogeneity holds (PreconditionViolated otherwise).
Verdict decide_T_m1(const ProblemT& prob);

/// One-dimensional (n = 1) complete characterization. Precondition:
/// homogeneity holds (PreconditionViolated otherwise).
Verdict decide_T_n1(const ProblemT& prob);

/// Search for the largest mtilde <= m admitting column indices
/// j_1 < ... < j_mtilde with A_{(m-mtilde+2..m+1)}^{(j...)} invertible,
/// A_{(m-mtilde+1..m+1)}^{(j...,m+1)} invertible, and the tail entries
/// (A_{m-mtilde+2,m+1},...,A_{m+1,m+1}) not all zero. Scans mtilde
/// decreasing, subsets lexicographically; first hit wins. k1 is the largest
/// i in [m-m0+2, m+1] with A_{i,m+1} nonzero.
struct M0Result {
    int m0;
    std::vector<int> subset; // 1-based column indices, increasing
    int k1;
};

std::optional<M0Result> search_m0(const BlockMatrix& A);

} // namespace mixfrac
