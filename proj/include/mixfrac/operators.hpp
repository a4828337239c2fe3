#pragma once

#include <cstdint>

#include "mixfrac/blockmatrix.hpp"
#include "mixfrac/exponents.hpp"
#include "mixfrac/grid.hpp"

namespace mixfrac {

struct EvalOptions {
    uint64_t seed = 0;            // offset seed for the Halton path
    long qmcSamples = 200000;     // nodes when integration dimension >= 4
    double singularGuard = 1e-12; // drop samples with kernel distance < guard * cell diameter
    int threads = 0;              // 0 = hardware concurrency
};

struct EvalStats {
    long dropped = 0; // near-singular samples skipped
    long samples = 0; // kernel evaluations that contributed
    bool qmc = false; // quasi-random path taken
};

/// J f(x) = integral of f(y) / (sum_i |D_i x - y_i|)^lambda over y in R^{mn},
/// midpoint tensor quadrature over f's own grid (Halton sampling with
/// multilinear interpolation once mn >= 4). Block distances are Euclidean.
/// Output values at the midpoints of outAxes (n axes).
GridFunction eval_J(const BlockMatrix& D, const Order& lambda, const GridFunction& f,
                    const std::vector<Axis>& outAxes, const EvalOptions& opt = {},
                    EvalStats* stats = nullptr);

/// T f(x) = integral of f(A(t_1,..,t_m,x)) / (sum_i |t_i|)^lambda over t in
/// R^{mn}. Quadrature nodes are the midpoints of f's first mn axes; the
/// composed argument is evaluated by multilinear interpolation on f's grid,
/// zero outside.
GridFunction eval_T(const BlockMatrix& A, const Order& lambda, const GridFunction& f,
                    const std::vector<Axis>& outAxes, const EvalOptions& opt = {},
                    EvalStats* stats = nullptr);

/// Output axes staggered half a cell against the input grid: axis j copies
/// input axis j's step but drops one cell (count N-1, halfwidth L*(N-1)/N), so
/// output midpoints sit on input cell boundaries. With D = identity no output
/// point can coincide with an input midpoint, and 0 is always an output point.
std::vector<Axis> staggered_output_axes(const GridFunction& f, int n);

} // namespace mixfrac
