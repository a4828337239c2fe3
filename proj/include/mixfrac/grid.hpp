#pragma once

#include <functional>
#include <vector>

#include "mixfrac/exponents.hpp"
#include "mixfrac/rational.hpp"

namespace mixfrac {

/// One tensor-grid axis: count midpoint cells on [-halfwidth, halfwidth].
/// Halfwidths stay exact rationals so dilation and translation alignment
/// checks are exact; midpoints and cell widths are consumed as doubles.
struct Axis {
    int count;
    Rational halfwidth;
};

/// Tensor midpoint-grid sample of a nonnegative function. Values are stored
/// with axis 0 fastest-varying, so the innermost nesting group of a mixed
/// norm is a contiguous block. Midpoint k of an axis sits at
/// -L + (k + 1/2) * (2L/count); cell-aligned indicators are therefore summed
/// without quadrature error, which is what the exact-ratio translation tests
/// rely on.
class GridFunction {
  public:
    static GridFunction zeros(std::vector<Axis> axes);
    static GridFunction sample(std::vector<Axis> axes, const std::function<double(const std::vector<double>&)>& fn);
    /// Indicator of the open box prod_a (lo_a, hi_a), sampled at midpoints.
    static GridFunction indicatorBox(std::vector<Axis> axes, const std::vector<Rational>& lo,
                                     const std::vector<Rational>& hi);

    const std::vector<Axis>& axes() const { return axes_; }
    int dims() const { return int(axes_.size()); }
    size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double axisStep(int a) const;     // 2L/count
    double midpoint(int a, int k) const;
    double cellVolume() const;        // product of steps

    /// Multilinear interpolation at an arbitrary point, zero outside the box.
    double interpolate(const std::vector<double>& x) const;

    /// Checks values are finite and nonnegative; throws DomainError.
    void validate() const;

  private:
    GridFunction(std::vector<Axis> axes, std::vector<double> values);
    std::vector<Axis> axes_;
    std::vector<double> values_;
};

/// Nested norm, innermost group first: groupSizes[i] axes form group i+1 and
/// p[i] is its exponent (infinity takes a max). groupSizes must partition the
/// axes in order; ShapeMismatch otherwise. Summation order is fixed
/// (axis-major), so results are bit-reproducible.
double mixed_norm(const GridFunction& f, const std::vector<int>& groupSizes, const ExponentVector& p);

/// Same norm but reducing the groups in the given order (a permutation of
/// 1..#groups); order[j] is the group reduced at step j. mixed_norm is the
/// identity order.
double mixed_norm_ordered(const GridFunction& f, const std::vector<int>& groupSizes, const ExponentVector& p,
                          const std::vector<int>& order);

/// Single-exponent norm over all axes (the output side of the operators).
double lebesgue_norm(const GridFunction& f, const Exponent& q);

/// L^{p...}-normalized dilation f_a(x) = a^{n*sum(1/p_i)} f(a x), represented
/// on the rescaled grid (halfwidths L/a, same counts, same sample indices) so
/// midpoints map to midpoints exactly for every rational a > 0. Throws
/// IncompatibleGrid when a <= 0, ShapeMismatch when the axes are not m groups
/// of n.
GridFunction dilation_family(const GridFunction& f, const ExponentVector& p, int n, const Rational& a);

/// Shift f by `cells` grid cells along one axis (f(x - cells*h*e_axis)),
/// zero-filling what moves in from outside.
GridFunction shift_cells(const GridFunction& f, int axis, long cells);

/// Ratios ||f + f(. - a e)|| / ||f|| for each shift a, where e is the first
/// axis of group k. Each a must be an integer number of cells
/// (IncompatibleGrid otherwise); for compactly supported f and shifts beyond
/// the support diameter the ratio equals 2^{1/p_k} exactly. DomainError when
/// ||f|| = 0.
std::vector<std::pair<double, double>> translation_limit_probe(const GridFunction& f,
                                                               const std::vector<int>& groupSizes,
                                                               const ExponentVector& p, int k,
                                                               const std::vector<Rational>& shifts);

} // namespace mixfrac
