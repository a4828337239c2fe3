#pragma once

#include <string>
#include <vector>

#include "mixfrac/decide.hpp"
#include "mixfrac/grid.hpp"
#include "mixfrac/operators.hpp"

namespace mixfrac {

/// Closed-form descriptor h(x) = |x|^{-power} (log 1/|x|)^{-logPower} on
/// |x| < 1/2 and 0 elsewhere, with |x| the Euclidean norm on n coordinates.
struct LogPowerDescriptor {
    int n;
    double power;    // n/q'
    double logPower; // (1+eps)/q'
    double operator()(const std::vector<double>& x) const;
    double radial(double r) const;
};

/// The endpoint witness profile: power n/q', log power (1+eps)/q'.
/// DomainError unless q > 1 and eps > 0.
LogPowerDescriptor logpower_counterexample(int n, const Exponent& q, const Rational& eps);

/// Default eps = (q'/p'_{k0} - 1)/2, positive exactly when q < p_{k0}
/// (DomainError otherwise): it keeps (1+eps) p'_{k0}/q' < 1, which is what
/// makes the witness norm diverge.
Rational logpower_default_eps(const Exponent& q, const Exponent& pk0);

enum class ProbeFamily { Dilation, Translation, LogPower, BoxE };

ProbeFamily parse_family(const std::string& name); // ParseError on unknown names
std::string family_name(ProbeFamily f);

struct ProbePoint {
    std::string parameter; // exact rational string
    double opNorm = 0.0;
    double inNorm = 0.0;
    double ratio = 0.0;
    bool skipped = false; // zero input, ratio undefined
    long dropped = 0;     // near-singular quadrature samples skipped
    long samples = 0;
};

struct ProbeReport {
    std::string family;
    std::vector<ProbePoint> points;
    std::vector<int> inputCounts; // base grid; dilation points rescale halfwidths by 1/a
    std::vector<std::string> inputHalfwidths;
    std::vector<int> outputCounts;
    std::vector<std::string> outputHalfwidths;
    uint64_t seed = 0;
    bool qmc = false;
    std::string problemHash; // filled by the report layer
};

struct ProbeOptions {
    int gridCount = 0;             // per input axis; 0 = family/dimension default
    Rational gridHalfwidth = 0;    // 0 = default
    int outCount = 0;              // output points per axis; 0 = default (255)
    uint64_t seed = 0;
    std::vector<Rational> params;  // empty = family default list
    double tau = 0.0;              // log exponent of the band profile (logpower family)
    Rational delta0 = Rational(5, 16); // outer cutoff of the band families
    int threads = 0;
};

/// Evaluate ||J f||_q / ||f||_p over the family. Evidence only: no verdict.
ProbeReport ratio_probe(const ProblemJ& prob, ProbeFamily family, const ProbeOptions& opt = {});

/// T version. Dilation and translation families only.
ProbeReport ratio_probe(const ProblemT& prob, ProbeFamily family, const ProbeOptions& opt = {});

struct MinkowskiCheck {
    double lhs = 0.0, rhs = 0.0;
    bool holds = false;
};

/// lhs = mixed norm with groups i, i+1 swapped in the nesting order, rhs =
/// standard mixed norm. Needs p_i >= p_{i+1} (PreconditionViolated
/// otherwise); then lhs <= rhs up to 1e-12 relative.
MinkowskiCheck minkowski_swap_check(const GridFunction& f, const std::vector<int>& groupSizes,
                                    const ExponentVector& p, int i);

struct TailScalingRow {
    double R = 0.0;
    double norm = 0.0;
    double compensated = 0.0; // norm * R^{alpha - sum n_i/p_i}
};

/// Analytic mixed norm of chi_{sum|x_i| >= R} (sum|x_i|)^{-alpha}, compensated
/// by the predicted power of R. Closed forms cover: all exponents equal and
/// finite (any block dims), and m <= 2 with finite exponents and 1-d blocks.
/// DomainError when alpha <= sum n_i/p_i (the norm is infinite) or outside
/// the closed-form table.
std::vector<TailScalingRow> tail_scaling_check(const std::vector<int>& groupDims,
                                               const ExponentVector& p, const Rational& alpha,
                                               const std::vector<Rational>& Rs);

} // namespace mixfrac
