#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "mixfrac/errors.hpp"
#include "mixfrac/grid.hpp"
#include "mixfrac/operators.hpp"

using namespace mixfrac;

namespace {

Axis ax(int count, const Rational& halfwidth) { return Axis{count, halfwidth}; }

GridFunction unit_box(const std::vector<Axis>& axes) {
    std::vector<Rational> lo(axes.size(), Rational(-1)), hi(axes.size(), Rational(1));
    return GridFunction::indicatorBox(axes, lo, hi);
}

double rel_err(double got, double expect) { return std::fabs(got - expect) / std::fabs(expect); }

} // namespace

TEST_CASE("grid geometry") {
    GridFunction f = GridFunction::zeros({ax(8, Rational(2)), ax(4, Rational(1))});
    CHECK(f.dims() == 2);
    CHECK(f.size() == 32);
    CHECK(f.axisStep(0) == 0.5);
    CHECK(f.axisStep(1) == 0.5);
    CHECK(f.cellVolume() == 0.25);
    CHECK(f.midpoint(0, 0) == -1.75);
    CHECK(f.midpoint(0, 7) == 1.75);
    CHECK(f.midpoint(1, 2) == 0.25);

    CHECK_THROWS_AS(GridFunction::zeros({ax(0, Rational(1))}), ShapeMismatch);
    CHECK_THROWS_AS(GridFunction::zeros({ax(4, Rational(0))}), ShapeMismatch);
    CHECK_THROWS_AS(GridFunction::zeros({ax(4, Rational(-1, 2))}), ShapeMismatch);
}

TEST_CASE("sampling hits the midpoints") {
    GridFunction f = GridFunction::sample({ax(4, Rational(2))},
                                          [](const std::vector<double>& x) { return x[0] + 2.0; });
    CHECK(f.values()[0] == 0.5);  // midpoint -1.5
    CHECK(f.values()[3] == 3.5);  // midpoint 1.5
    f.validate();

    GridFunction g = GridFunction::zeros({ax(2, Rational(1))});
    g.values()[0] = -1.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g.values()[0] = std::nan("");
    CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("interpolation is exact at nodes and zero far outside") {
    GridFunction f = GridFunction::zeros({ax(4, Rational(2))});
    f.values() = {0.0, 1.0, 3.0, 0.0};
    CHECK(f.interpolate({-0.5}) == 1.0);
    CHECK(f.interpolate({0.5}) == 3.0);
    CHECK(f.interpolate({0.0}) == 2.0); // halfway between the 1 and 3 cells
    CHECK(f.interpolate({25.0}) == 0.0);
    CHECK(f.interpolate({-25.0}) == 0.0);
    CHECK_THROWS_AS(f.interpolate({0.0, 0.0}), ShapeMismatch);
}

TEST_CASE("aligned indicators have exact norms") {
    // axis [-2,2], 8 cells: the box (-1,1) covers exactly 4 cells
    GridFunction f = unit_box({ax(8, Rational(2))});
    double mass = 0;
    for (double v : f.values()) mass += v;
    CHECK(mass == 4.0);
    CHECK(mixed_norm(f, {1}, {Exponent::parse("2")}) == std::sqrt(2.0));
    CHECK(mixed_norm(f, {1}, {Exponent::parse("1")}) == 2.0);
    CHECK(lebesgue_norm(f, Exponent::infinity()) == 1.0);
    CHECK(lebesgue_norm(f, Exponent::parse("2")) == std::sqrt(2.0));

    // two axes, mixed (2,3): separable value 2^{1/2} * 2^{1/3}
    GridFunction g = unit_box({ax(8, Rational(2)), ax(8, Rational(2))});
    double got = mixed_norm(g, {1, 1}, {Exponent::parse("2"), Exponent::parse("3")});
    CHECK(rel_err(got, std::pow(2.0, 5.0 / 6.0)) < 1e-13);

    // infinity in the outer slot takes a max over the inner norms
    double gotInf = mixed_norm(g, {1, 1}, {Exponent::parse("2"), Exponent::infinity()});
    CHECK(rel_err(gotInf, std::sqrt(2.0)) < 1e-13);

    CHECK_THROWS_AS(mixed_norm(g, {1}, {Exponent::parse("2")}), ShapeMismatch);
    CHECK_THROWS_AS(mixed_norm(g, {1, 2}, {Exponent::parse("2"), Exponent::parse("2")}),
                    ShapeMismatch);
}

TEST_CASE("norm ordering helper") {
    GridFunction g = unit_box({ax(8, Rational(2)), ax(8, Rational(2))});
    ExponentVector p = {Exponent::parse("2"), Exponent::parse("3")};
    CHECK(mixed_norm_ordered(g, {1, 1}, p, {1, 2}) == mixed_norm(g, {1, 1}, p));
    // swapping the reduction order of a separable indicator changes nothing
    double swapped = mixed_norm_ordered(g, {1, 1}, p, {2, 1});
    CHECK(rel_err(swapped, mixed_norm(g, {1, 1}, p)) < 1e-13);
    CHECK_THROWS_AS(mixed_norm_ordered(g, {1, 1}, p, {1, 1}), ShapeMismatch);
    CHECK_THROWS_AS(mixed_norm_ordered(g, {1, 1}, p, {1}), ShapeMismatch);
}

TEST_CASE("dilation family preserves the source norm") {
    GridFunction f = unit_box({ax(64, Rational(4)), ax(64, Rational(4))});
    ExponentVector p = {Exponent::parse("2"), Exponent::parse("3")};
    double base = mixed_norm(f, {1, 1}, p);
    for (const char* as : {"1/2", "2", "3/4", "4"}) {
        Rational a = parse_rational(as);
        GridFunction fa = dilation_family(f, p, 1, a);
        CHECK(fa.axes()[0].halfwidth == Rational(4) / a);
        double scaled = mixed_norm(fa, {1, 1}, p);
        CHECK(rel_err(scaled, base) < 1e-12);
    }
    CHECK_THROWS_AS(dilation_family(f, p, 1, Rational(0)), IncompatibleGrid);
    CHECK_THROWS_AS(dilation_family(f, p, 1, Rational(-2)), IncompatibleGrid);
    CHECK_THROWS_AS(dilation_family(f, p, 2, Rational(2)), ShapeMismatch);
}

TEST_CASE("cell shifts are exact") {
    GridFunction f = GridFunction::zeros({ax(6, Rational(3))});
    f.values() = {1, 2, 3, 4, 5, 6};
    GridFunction s = shift_cells(f, 0, 2);
    CHECK(s.values() == std::vector<double>{0, 0, 1, 2, 3, 4});
    GridFunction b = shift_cells(f, 0, -3);
    CHECK(b.values() == std::vector<double>{4, 5, 6, 0, 0, 0});
    CHECK(shift_cells(f, 0, 9).values() == std::vector<double>(6, 0.0));
    CHECK_THROWS_AS(shift_cells(f, 1, 1), IndexOutOfRange);
}

TEST_CASE("translation probe reaches the disjoint-support constant") {
    GridFunction f = unit_box({ax(256, Rational(4)), ax(256, Rational(4))});
    ExponentVector p = {Exponent::parse("2"), Exponent::parse("3")};

    auto r1 = translation_limit_probe(f, {1, 1}, p, 1, {Rational(3)});
    CHECK(std::fabs(r1.at(0).second - std::pow(2.0, 0.5)) < 1e-12);
    auto r2 = translation_limit_probe(f, {1, 1}, p, 2, {Rational(3)});
    CHECK(std::fabs(r2.at(0).second - std::pow(2.0, 1.0 / 3.0)) < 1e-12);

    // zero shift doubles the function
    auto r0 = translation_limit_probe(f, {1, 1}, p, 1, {Rational(0)});
    CHECK(std::fabs(r0.at(0).second - 2.0) < 1e-12);

    CHECK_THROWS_AS(translation_limit_probe(f, {1, 1}, p, 1, {Rational(1, 3)}), IncompatibleGrid);
    CHECK_THROWS_AS(translation_limit_probe(f, {1, 1}, p, 3, {Rational(1)}), IndexOutOfRange);
    GridFunction z = GridFunction::zeros({ax(8, Rational(1))});
    CHECK_THROWS_AS(translation_limit_probe(z, {1}, {Exponent::parse("2")}, 1, {Rational(1)}),
                    DomainError);
}

TEST_CASE("staggered output axes interleave the input grid") {
    GridFunction f = unit_box({ax(8, Rational(2))});
    std::vector<Axis> out = staggered_output_axes(f, 1);
    REQUIRE(out.size() == 1);
    CHECK(out[0].count == 7);
    CHECK(out[0].halfwidth == Rational(7, 4));

    GridFunction g = GridFunction::zeros(out);
    CHECK(g.axisStep(0) == f.axisStep(0));
    bool sawZero = false;
    for (int k = 0; k < 7; ++k) {
        double om = g.midpoint(0, k);
        if (om == 0.0) sawZero = true;
        for (int j = 0; j < 8; ++j) CHECK(om != f.midpoint(0, j));
    }
    CHECK(sawZero);
    CHECK_THROWS_AS(staggered_output_axes(unit_box({ax(1, Rational(1))}), 1), ShapeMismatch);
}

TEST_CASE("potential evaluation matches the closed form at the origin") {
    // one block, identity map, lambda = 1/2: at x = 0 the integral over
    // [-1,1] of |y|^{-1/2} is 4; midpoint quadrature at 2048 cells lands
    // within one percent.
    BlockMatrix D(BlockKind::J, 1, 1, RatMatrix::identity(1));
    Order lambda = Order::parse("1/2");
    GridFunction f = unit_box({ax(2048, Rational(1))});
    EvalStats stats;
    GridFunction out = eval_J(D, lambda, f, {ax(1, Rational(1, 2))}, {}, &stats);
    REQUIRE(out.size() == 1);
    CHECK(rel_err(out.values()[0], 4.0) < 0.01);
    CHECK_FALSE(stats.qmc);
    CHECK(stats.dropped == 0);
    CHECK(stats.samples == 2048);

    // refinement shrinks the deficit
    GridFunction coarse = unit_box({ax(512, Rational(1))});
    GridFunction outC = eval_J(D, lambda, coarse, {ax(1, Rational(1, 2))});
    CHECK(rel_err(outC.values()[0], 4.0) > rel_err(out.values()[0], 4.0));
}

TEST_CASE("potential evaluation is reflection symmetric") {
    BlockMatrix D(BlockKind::J, 1, 1, RatMatrix::identity(1));
    GridFunction f = unit_box({ax(256, Rational(2))});
    GridFunction out = eval_J(D, Order::parse("1/2"), f, {ax(6, Rational(3, 2))});
    for (int k = 0; k < 3; ++k) {
        double a = out.values()[size_t(k)], b = out.values()[size_t(5 - k)];
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(a, b));
    }
}

TEST_CASE("operator evaluation matches the closed form at the origin") {
    // A = [[1,-1],[1,1]]: T f(x) = integral f(t - x, t + x) |t|^{-1/2} dt; at
    // x = 0 with f the unit square this is again 4.
    RatMatrix base(2, 2);
    base.at(0, 0) = Rational(1);
    base.at(0, 1) = Rational(-1);
    base.at(1, 0) = Rational(1);
    base.at(1, 1) = Rational(1);
    BlockMatrix A(BlockKind::T, 1, 1, base);
    GridFunction f = unit_box({ax(2048, Rational(1)), ax(2048, Rational(1))});
    EvalStats stats;
    GridFunction out = eval_T(A, Order::parse("1/2"), f, {ax(1, Rational(1, 2))}, {}, &stats);
    REQUIRE(out.size() == 1);
    CHECK(rel_err(out.values()[0], 4.0) < 0.01);
    CHECK_FALSE(stats.qmc);

    CHECK_THROWS_AS(eval_T(A, Order::parse("1/2"), unit_box({ax(8, Rational(1))}),
                           {ax(1, Rational(1, 2))}),
                    ShapeMismatch);
    BlockMatrix DJ(BlockKind::J, 1, 1, RatMatrix::identity(1));
    CHECK_THROWS_AS(eval_T(DJ, Order::parse("1/2"), f, {ax(1, Rational(1, 2))}), ShapeMismatch);
    CHECK_THROWS_AS(eval_J(A, Order::parse("1/2"), f, {ax(1, Rational(1, 2))}), ShapeMismatch);
}

TEST_CASE("high-dimensional path is quasi-random and deterministic") {
    // two 2-d blocks: integration dimension 4 switches to Halton sampling
    RatMatrix base(4, 2);
    base.at(0, 0) = Rational(1);
    base.at(1, 1) = Rational(1);
    base.at(2, 0) = Rational(1);
    base.at(3, 1) = Rational(1);
    BlockMatrix D(BlockKind::J, 2, 2, base);
    GridFunction f = unit_box({ax(8, Rational(2)), ax(8, Rational(2)), ax(8, Rational(2)), ax(8, Rational(2))});
    std::vector<Axis> outAxes = {ax(1, Rational(1)), ax(1, Rational(1))};

    EvalOptions opt;
    opt.qmcSamples = 20000;
    opt.seed = 11;
    EvalStats s1, s2, s3;
    GridFunction a = eval_J(D, Order::parse("2"), f, outAxes, opt, &s1);
    GridFunction b = eval_J(D, Order::parse("2"), f, outAxes, opt, &s2);
    CHECK(s1.qmc);
    CHECK(a.values() == b.values());
    CHECK(s1.samples == s2.samples);
    CHECK(a.values()[0] > 0.0);

    opt.seed = 12;
    GridFunction c = eval_J(D, Order::parse("2"), f, outAxes, opt, &s3);
    CHECK(a.values() != c.values());

    // threading does not change the result: per-point sums are sequential
    opt.seed = 11;
    opt.threads = 3;
    GridFunction d = eval_J(D, Order::parse("2"), f, outAxes, opt);
    CHECK(a.values() == d.values());
}
