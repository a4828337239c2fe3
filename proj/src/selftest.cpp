#include "mixfrac/selftest.hpp"

#include <cmath>
#include <sstream>

#include "mixfrac/blockmatrix.hpp"
#include "mixfrac/errors.hpp"
#include "mixfrac/grid.hpp"
#include "mixfrac/probes.hpp"
#include "mixfrac/rng.hpp"

namespace mixfrac {

namespace {

Rational random_rational(SplitMix64& rng) {
    long num = rng.range(-4, 4);
    long den = rng.range(1, 3);
    Rational v(num, den);
    v.canonicalize(); // the two-argument mpq constructor does not reduce
    return v;
}

RatMatrix random_matrix(SplitMix64& rng, int rows, int cols) {
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = random_rational(rng);
    return m;
}

RatMatrix random_invertible(SplitMix64& rng, int n) {
    for (int tries = 0; tries < 200; ++tries) {
        RatMatrix m = random_matrix(rng, n, n);
        if (m.det() != 0) return m;
    }
    throw DomainError("failed to sample an invertible matrix");
}

SelftestResult suite_block_inverse(SplitMix64& rng) {
    SelftestResult res{"block-inverse", 500, 0, ""};
    for (int i = 0; i < res.total; ++i) {
        int n1 = int(rng.range(1, 3));
        int n2 = int(rng.range(1, 3));
        RatMatrix a = random_invertible(rng, n1 + n2);
        bool ok = false;
        try {
            ok = schur_identity_check(a, n1, n2);
        } catch (const Error& e) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) {
            std::ostringstream os;
            os << "instance " << i << " (n1=" << n1 << ", n2=" << n2 << "): " << a.str();
            res.firstFailure = os.str();
        }
    }
    return res;
}

SelftestResult suite_corner_rank(SplitMix64& rng) {
    SelftestResult res{"corner-rank", 500, 0, ""};
    for (int i = 0; i < res.total; ++i) {
        int m = int(rng.range(1, 3));
        int n = int(rng.range(1, 3));
        RatMatrix base = random_invertible(rng, (m + 1) * n);
        BlockMatrix a(BlockKind::T, m, n, base);
        bool ok = false;
        try {
            ok = corner_rank_equiv_check(a);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) {
            std::ostringstream os;
            os << "instance " << i << " (m=" << m << ", n=" << n << "): " << base.str();
            res.firstFailure = os.str();
        }
    }
    return res;
}

SelftestResult suite_translation_limit(SplitMix64& rng) {
    SelftestResult res{"translation-limit", 0, 0, ""};
    ExponentVector p{Exponent(Rational(2)), Exponent(Rational(3))};
    std::vector<int> groups{1, 1};
    std::vector<Axis> axes(2, Axis{256, Rational(4)});
    GridFunction f = GridFunction::indicatorBox(axes, {Rational(-1), Rational(-1)},
                                                {Rational(1), Rational(1)});
    for (int k = 1; k <= 2; ++k) {
        for (int rep = 0; rep < 5; ++rep) {
            // any whole-cell shift at least the support diameter
            Rational jitter(rng.range(0, 31), 32);
            jitter.canonicalize();
            Rational a = Rational(2) + jitter;
            ++res.total;
            double expected = std::pow(2.0, 1.0 / to_double(p[size_t(k) - 1].finiteValue()));
            auto pts = translation_limit_probe(f, groups, p, k, {a});
            double got = pts.at(0).second;
            if (!(std::fabs(got - expected) < 1e-12)) {
                if (res.failures++ == 0) {
                    std::ostringstream os;
                    os << "k=" << k << " a=" << format_rational(a) << " ratio=" << got
                       << " expected=" << expected;
                    res.firstFailure = os.str();
                }
            }
        }
    }
    return res;
}

SelftestResult suite_minkowski(SplitMix64& rng) {
    SelftestResult res{"minkowski-swap", 1000, 0, ""};
    ExponentVector p{Exponent(Rational(3)), Exponent(Rational(2))};
    std::vector<int> groups{1, 1};
    for (int i = 0; i < res.total; ++i) {
        int n = int(rng.range(4, 24));
        std::vector<Axis> axes(2, Axis{n, Rational(1)});
        GridFunction f = GridFunction::zeros(axes);
        for (double& v : f.values())
            v = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
        MinkowskiCheck chk = minkowski_swap_check(f, groups, p, 1);
        if (!chk.holds && res.failures++ == 0) {
            std::ostringstream os;
            os << "instance " << i << ": lhs=" << chk.lhs << " rhs=" << chk.rhs;
            res.firstFailure = os.str();
        }
    }
    return res;
}

SelftestResult suite_tail_scaling() {
    SelftestResult res{"tail-scaling", 0, 0, ""};
    auto record = [&res](bool ok, const std::string& what) {
        ++res.total;
        if (!ok && res.failures++ == 0) res.firstFailure = what;
    };

    std::vector<Rational> rs;
    for (int e = 0; e <= 10; ++e) rs.push_back(Rational(1 << e));

    auto rows1 = tail_scaling_check({1}, {Exponent(Rational(2))}, Rational(1), rs);
    for (const auto& row : rows1)
        record(std::fabs(row.compensated - std::sqrt(2.0)) < 1e-9,
               "1-d compensated " + std::to_string(row.compensated) + " at R=" +
                   std::to_string(row.R));

    auto rows2 = tail_scaling_check({1, 1}, {Exponent(Rational(2)), Exponent(Rational(2))},
                                    Rational(2), rs);
    double lo = rows2.front().compensated, hi = lo;
    for (const auto& row : rows2) {
        lo = std::min(lo, row.compensated);
        hi = std::max(hi, row.compensated);
    }
    record(hi <= 2.0 * lo && lo > 0.0, "2-group compensated spread");

    auto rows3 = tail_scaling_check({1, 1}, {Exponent(Rational(2)), Exponent(Rational(3))},
                                    Rational(2), rs);
    lo = hi = rows3.front().compensated;
    for (const auto& row : rows3) {
        lo = std::min(lo, row.compensated);
        hi = std::max(hi, row.compensated);
    }
    record(hi <= 2.0 * lo && lo > 0.0, "unequal-exponent compensated spread");

    bool threw = false;
    try {
        tail_scaling_check({1}, {Exponent(Rational(2))}, Rational(1, 2), {Rational(1)});
    } catch (const DomainError&) {
        threw = true;
    }
    record(threw, "divergent tail accepted");
    return res;
}

} // namespace

std::vector<SelftestResult> run_selftests(uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<SelftestResult> out;
    out.push_back(suite_block_inverse(rng));
    out.push_back(suite_corner_rank(rng));
    out.push_back(suite_translation_limit(rng));
    out.push_back(suite_minkowski(rng));
    out.push_back(suite_tail_scaling());
    return out;
}

bool selftests_ok(const std::vector<SelftestResult>& results) {
    for (const auto& r : results)
        if (r.failures > 0) return false;
    return true;
}

} // namespace mixfrac
