#include "mixfrac/exponents.hpp"

#include "mixfrac/errors.hpp"

namespace mixfrac {

Exponent::Exponent(Rational value) : value_(std::move(value)), infinite_(false) {
    if (value_ < 1) {
        throw DomainError("exponent below 1: " + format_rational(value_));
    }
}

Exponent Exponent::infinity() { return Exponent(); }

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    return Exponent(parse_rational(text));
}

const Rational& Exponent::finiteValue() const {
    if (infinite_) throw DomainError("infinite exponent has no finite value");
    return value_;
}

Rational Exponent::reciprocal() const {
    if (infinite_) return Rational(0);
    return Rational(1) / value_;
}

Exponent Exponent::conjugate() const {
    if (infinite_) return Exponent(Rational(1));
    if (value_ == 1) return infinity();
    return Exponent(value_ / (value_ - 1));
}

bool Exponent::greaterThanOne() const { return infinite_ || value_ > 1; }

std::string Exponent::str() const {
    if (infinite_) return "inf";
    return format_rational(value_);
}

bool operator==(const Exponent& a, const Exponent& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

bool operator<(const Exponent& a, const Exponent& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
}

bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }

Order::Order(Rational v) : value(std::move(v)) {
    if (value <= 0) throw DomainError("order must be positive: " + format_rational(value));
}

Order Order::parse(const std::string& text) { return Order(parse_rational(text)); }

Rational reciprocal_sum(const ExponentVector& ps) {
    Rational s(0);
    for (const auto& p : ps) s += p.reciprocal();
    return s;
}

static int expected_arity(int m, OpKind kind) { return kind == OpKind::T ? m + 1 : m; }

bool check_homogeneity(const ExponentVector& ps, const Exponent& q, const Order& lambda,
                       int m, int n, OpKind kind) {
    if (static_cast<int>(ps.size()) != expected_arity(m, kind)) {
        throw ShapeMismatch("exponent count " + std::to_string(ps.size()) +
                            " does not match arity " + std::to_string(expected_arity(m, kind)));
    }
    if (m < 1 || n < 1) throw ShapeMismatch("m and n must be positive");
    Rational rhs = q.reciprocal() + (Rational(m) * n - lambda.value) / n;
    return reciprocal_sum(ps) == rhs;
}

bool homogeneous_q(const ExponentVector& ps, const Order& lambda, int m, int n, OpKind kind,
                   Exponent& out) {
    if (static_cast<int>(ps.size()) != expected_arity(m, kind)) {
        throw ShapeMismatch("exponent count " + std::to_string(ps.size()) +
                            " does not match arity " + std::to_string(expected_arity(m, kind)));
    }
    Rational recip = reciprocal_sum(ps) - (Rational(m) * n - lambda.value) / n;
    if (recip < 0 || recip > 1) return false;
    out = recip == 0 ? Exponent::infinity() : Exponent(Rational(1) / recip);
    return true;
}

} // namespace mixfrac
