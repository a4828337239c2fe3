#include "mixfrac/grid.hpp"

#include <cmath>

#include "mixfrac/errors.hpp"

namespace mixfrac {

namespace {

size_t total_size(const std::vector<Axis>& axes) {
    size_t n = 1;
    for (const auto& a : axes) {
        if (a.count < 1) throw ShapeMismatch("axis count must be positive");
        if (a.halfwidth <= 0) throw ShapeMismatch("axis halfwidth must be positive");
        n *= size_t(a.count);
    }
    return n;
}

void check_groups(const std::vector<Axis>& axes, const std::vector<int>& groupSizes, const ExponentVector& p) {
    if (groupSizes.size() != p.size()) throw ShapeMismatch("one exponent per group required");
    int sum = 0;
    for (int g : groupSizes) {
        if (g < 1) throw ShapeMismatch("group sizes must be positive");
        sum += g;
    }
    if (sum != int(axes.size())) throw ShapeMismatch("group sizes must partition the axes");
}

} // namespace

GridFunction::GridFunction(std::vector<Axis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {}

GridFunction GridFunction::zeros(std::vector<Axis> axes) {
    size_t n = total_size(axes);
    return GridFunction(std::move(axes), std::vector<double>(n, 0.0));
}

GridFunction GridFunction::sample(std::vector<Axis> axes,
                                  const std::function<double(const std::vector<double>&)>& fn) {
    GridFunction out = zeros(std::move(axes));
    const int d = out.dims();
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    for (int a = 0; a < d; ++a) x[a] = out.midpoint(a, 0);
    for (size_t flat = 0; flat < out.size(); ++flat) {
        out.values_[flat] = fn(x);
        for (int a = 0; a < d; ++a) {
            if (++idx[a] < out.axes_[a].count) {
                x[a] = out.midpoint(a, idx[a]);
                break;
            }
            idx[a] = 0;
            x[a] = out.midpoint(a, 0);
        }
    }
    out.validate();
    return out;
}

GridFunction GridFunction::indicatorBox(std::vector<Axis> axes, const std::vector<Rational>& lo,
                                        const std::vector<Rational>& hi) {
    if (lo.size() != axes.size() || hi.size() != axes.size())
        throw ShapeMismatch("indicator bounds must match axis count");
    std::vector<double> lod(lo.size()), hid(hi.size());
    for (size_t a = 0; a < lo.size(); ++a) {
        lod[a] = to_double(lo[a]);
        hid[a] = to_double(hi[a]);
    }
    return sample(std::move(axes), [&](const std::vector<double>& x) {
        for (size_t a = 0; a < x.size(); ++a)
            if (!(x[a] > lod[a] && x[a] < hid[a])) return 0.0;
        return 1.0;
    });
}

double GridFunction::axisStep(int a) const { return 2.0 * to_double(axes_[a].halfwidth) / axes_[a].count; }

double GridFunction::midpoint(int a, int k) const {
    return -to_double(axes_[a].halfwidth) + (k + 0.5) * axisStep(a);
}

double GridFunction::cellVolume() const {
    double v = 1.0;
    for (int a = 0; a < dims(); ++a) v *= axisStep(a);
    return v;
}

double GridFunction::interpolate(const std::vector<double>& x) const {
    const int d = dims();
    if (int(x.size()) != d) throw ShapeMismatch("interpolation point has wrong dimension");
    std::vector<int> base(d);
    std::vector<double> frac(d);
    for (int a = 0; a < d; ++a) {
        double t = (x[a] + to_double(axes_[a].halfwidth)) / axisStep(a) - 0.5;
        double fl = std::floor(t);
        base[a] = int(fl);
        frac[a] = t - fl;
    }
    double acc = 0.0;
    for (int corner = 0; corner < (1 << d); ++corner) {
        double w = 1.0;
        size_t flat = 0;
        size_t stride = 1;
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            int k = base[a] + ((corner >> a) & 1);
            w *= ((corner >> a) & 1) ? frac[a] : 1.0 - frac[a];
            if (k < 0 || k >= axes_[a].count) {
                inside = false;
                break;
            }
            flat += stride * size_t(k);
            stride *= size_t(axes_[a].count);
        }
        if (inside && w != 0.0) acc += w * values_[flat];
    }
    return acc;
}

void GridFunction::validate() const {
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("grid values must be nonnegative finite");
    }
}

namespace {

/// Reduce the contiguous axis range [a0, a0+len) of a value array with the
/// given dims, applying the p-norm with the supplied cell volume. Iteration
/// order is fixed: outer block, then inner offset, then the reduced range.
std::vector<double> reduce_range(const std::vector<double>& v, std::vector<int>& dims, int a0, int len,
                                 const Exponent& p, double vol) {
    size_t inner = 1, mid = 1, outer = 1;
    for (int a = 0; a < a0; ++a) inner *= size_t(dims[a]);
    for (int a = a0; a < a0 + len; ++a) mid *= size_t(dims[a]);
    for (int a = a0 + len; a < int(dims.size()); ++a) outer *= size_t(dims[a]);

    std::vector<double> out(inner * outer);
    const bool inf = p.isInfinite();
    const double pd = inf ? 0.0 : to_double(p.finiteValue());
    for (size_t o = 0; o < outer; ++o) {
        for (size_t i = 0; i < inner; ++i) {
            double acc = 0.0;
            for (size_t k = 0; k < mid; ++k) {
                double val = v[i + inner * (k + mid * o)];
                if (inf) {
                    acc = std::max(acc, val);
                } else {
                    acc += std::pow(val, pd);
                }
            }
            out[i + inner * o] = inf ? acc : std::pow(acc * vol, 1.0 / pd);
        }
    }
    dims.erase(dims.begin() + a0, dims.begin() + a0 + len);
    return out;
}

} // namespace

double mixed_norm_ordered(const GridFunction& f, const std::vector<int>& groupSizes, const ExponentVector& p,
                          const std::vector<int>& order) {
    check_groups(f.axes(), groupSizes, p);
    const int g = int(groupSizes.size());
    if (int(order.size()) != g) throw ShapeMismatch("order must list every group once");
    std::vector<bool> seen(g, false);
    for (int o : order) {
        if (o < 1 || o > g || seen[o - 1]) throw ShapeMismatch("order must be a permutation of 1..groups");
        seen[o - 1] = true;
    }

    // Per-group cell volumes and axis offsets in the original layout.
    std::vector<double> vol(g, 1.0);
    std::vector<int> offset(g, 0);
    {
        int a = 0;
        for (int gi = 0; gi < g; ++gi) {
            offset[gi] = a;
            for (int j = 0; j < groupSizes[gi]; ++j) vol[gi] *= f.axisStep(a++);
        }
    }

    std::vector<double> work = f.values();
    std::vector<int> dims;
    for (const auto& ax : f.axes()) dims.push_back(ax.count);
    std::vector<bool> reduced(g, false);
    for (int step = 0; step < g; ++step) {
        int gi = order[step] - 1;
        int a0 = 0;
        for (int before = 0; before < gi; ++before)
            if (!reduced[before]) a0 += groupSizes[before];
        work = reduce_range(work, dims, a0, groupSizes[gi], p[gi], vol[gi]);
        reduced[gi] = true;
    }
    return work[0];
}

double mixed_norm(const GridFunction& f, const std::vector<int>& groupSizes, const ExponentVector& p) {
    std::vector<int> order(groupSizes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i) + 1;
    return mixed_norm_ordered(f, groupSizes, p, order);
}

double lebesgue_norm(const GridFunction& f, const Exponent& q) {
    return mixed_norm(f, {f.dims()}, {q});
}

GridFunction dilation_family(const GridFunction& f, const ExponentVector& p, int n, const Rational& a) {
    if (a <= 0) throw IncompatibleGrid("dilation parameter must be positive");
    if (n < 1 || f.dims() % n != 0 || int(p.size()) * n != f.dims())
        throw ShapeMismatch("dilation needs the axes to split into one group of n per exponent");
    Rational exponent = reciprocal_sum(p) * n;
    double prefactor = std::pow(to_double(a), to_double(exponent));
    std::vector<Axis> axes = f.axes();
    for (auto& ax : axes) ax.halfwidth /= a;
    GridFunction out = GridFunction::zeros(std::move(axes));
    for (size_t i = 0; i < f.size(); ++i) out.values()[i] = prefactor * f.values()[i];
    return out;
}

GridFunction shift_cells(const GridFunction& f, int axis, long cells) {
    if (axis < 0 || axis >= f.dims()) throw IndexOutOfRange("shift axis out of range");
    GridFunction out = GridFunction::zeros(f.axes());
    size_t stride = 1;
    for (int a = 0; a < axis; ++a) stride *= size_t(f.axes()[a].count);
    const long count = f.axes()[axis].count;
    const size_t block = stride * size_t(count);
    for (size_t start = 0; start < f.size(); start += block) {
        for (long k = 0; k < count; ++k) {
            long src = k - cells; // g(x) = f(x - shift) pulls from the left
            if (src < 0 || src >= count) continue;
            for (size_t i = 0; i < stride; ++i)
                out.values()[start + size_t(k) * stride + i] = f.values()[start + size_t(src) * stride + i];
        }
    }
    return out;
}

std::vector<std::pair<double, double>> translation_limit_probe(const GridFunction& f,
                                                               const std::vector<int>& groupSizes,
                                                               const ExponentVector& p, int k,
                                                               const std::vector<Rational>& shifts) {
    check_groups(f.axes(), groupSizes, p);
    if (k < 1 || k > int(groupSizes.size())) throw IndexOutOfRange("group index out of range");
    int axis = 0;
    for (int g = 0; g < k - 1; ++g) axis += groupSizes[g];

    const double base = mixed_norm(f, groupSizes, p);
    if (base == 0.0) throw DomainError("translation probe needs a nonzero function");

    const Axis& ax = f.axes()[axis];
    std::vector<std::pair<double, double>> out;
    for (const auto& a : shifts) {
        Rational cellsExact = a * ax.count / (2 * ax.halfwidth);
        if (cellsExact.get_den() != 1) throw IncompatibleGrid("shift is not a whole number of cells");
        long cells = long(cellsExact.get_num().get_si());
        GridFunction shifted = shift_cells(f, axis, cells);
        for (size_t i = 0; i < shifted.size(); ++i) shifted.values()[i] += f.values()[i];
        out.emplace_back(to_double(a), mixed_norm(shifted, groupSizes, p) / base);
    }
    return out;
}

} // namespace mixfrac
