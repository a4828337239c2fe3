#pragma once

#include <string>
#include <vector>

#include "mixfrac/rational.hpp"

namespace mixfrac {

/// Extended Lebesgue exponent: an exact rational in [1, inf) or the symbol
/// infinity. The constructor rejects finite values below 1; the conjugate
/// map sends 1 <-> inf and p -> p/(p-1) otherwise.
class Exponent {
  public:
    explicit Exponent(Rational value);
    static Exponent infinity();
    static Exponent parse(const std::string& text); // "p/q" | "k" | "inf"

    bool isInfinite() const { return infinite_; }
    bool isFinite() const { return !infinite_; }
    const Rational& finiteValue() const; // throws DomainError when infinite

    /// 1/p as an exact rational; 0 when p = inf.
    Rational reciprocal() const;
    Exponent conjugate() const;

    bool greaterThanOne() const; // p > 1, infinity included
    bool isOne() const { return !infinite_ && value_ == 1; }

    std::string str() const; // canonical text form, "inf" for infinity

    friend bool operator==(const Exponent& a, const Exponent& b);
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
    friend bool operator<(const Exponent& a, const Exponent& b);
    friend bool operator<=(const Exponent& a, const Exponent& b);
    friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
    friend bool operator>=(const Exponent& a, const Exponent& b) { return b <= a; }

  private:
    Exponent() : value_(0), infinite_(true) {}
    Rational value_;
    bool infinite_;
};

using ExponentVector = std::vector<Exponent>;

/// Positive rational order of the kernel singularity (lambda).
struct Order {
    Rational value;
    explicit Order(Rational v);
    static Order parse(const std::string& text);
    std::string str() const { return format_rational(value); }
};

/// Operator shape selector: T takes m+1 exponents, J takes m.
enum class OpKind { T, J };

/// Sum of reciprocals 1/p_1 + ... + 1/p_len as an exact rational.
Rational reciprocal_sum(const ExponentVector& ps);

/// Exact test of the dimensional-balance identity
///   sum_i 1/p_i = 1/q + (m*n - lambda)/n
/// with arity m+1 (kind T) or m (kind J). Throws ShapeMismatch when the
/// exponent count does not match the declared arity.
bool check_homogeneity(const ExponentVector& ps, const Exponent& q, const Order& lambda,
                       int m, int n, OpKind kind);

/// The q solving the balance identity for the given left-hand side, when it
/// is an admissible exponent (1/q in [0,1]; 0 maps to infinity). Returns
/// false when no admissible q exists.
bool homogeneous_q(const ExponentVector& ps, const Order& lambda, int m, int n, OpKind kind,
                   Exponent& out);

} // namespace mixfrac
