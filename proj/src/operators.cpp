#include "mixfrac/operators.hpp"

#include <cmath>
#include <thread>

#include "mixfrac/errors.hpp"
#include "mixfrac/rng.hpp"

namespace mixfrac {

namespace {

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double cell_diameter(const GridFunction& f, int dims) {
    double s = 0.0;
    for (int a = 0; a < dims; ++a) s += f.axisStep(a) * f.axisStep(a);
    return std::sqrt(s);
}

std::vector<std::vector<double>> midpoint_table(const GridFunction& f, int dims) {
    std::vector<std::vector<double>> t(dims);
    for (int a = 0; a < dims; ++a) {
        t[a].resize(f.axes()[a].count);
        for (int k = 0; k < f.axes()[a].count; ++k) t[a][k] = f.midpoint(a, k);
    }
    return t;
}

std::vector<double> dense_matrix(const RatMatrix& m) {
    std::vector<double> out(size_t(m.rows()) * m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[size_t(r) * m.cols() + c] = to_double(m.at(r, c));
    return out;
}

double radical_inverse(int base, uint64_t index) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (index > 0) {
        r += f * double(index % uint64_t(base));
        index /= uint64_t(base);
        f *= inv;
    }
    return r;
}

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

/// One output point of J: midpoint quadrature over f's cells, skipping zero
/// values and near-singular samples.
double point_J(const std::vector<double>& dx, // m*n doubles: D_i x stacked
               const GridFunction& f, const std::vector<std::vector<double>>& mids, int m, int n,
               double lambdaD, double guard, long& dropped, long& used) {
    const std::vector<double>& v = f.values();
    const int d = m * n;
    std::vector<int> idx(d, 0);
    KahanSum acc;
    for (size_t flat = 0; flat < v.size(); ++flat) {
        if (v[flat] != 0.0) {
            double dist = 0.0;
            for (int i = 0; i < m; ++i) {
                double block = 0.0;
                for (int c = 0; c < n; ++c) {
                    double diff = dx[size_t(i) * n + c] - mids[i * n + c][idx[i * n + c]];
                    block += diff * diff;
                }
                dist += std::sqrt(block);
            }
            if (dist < guard) {
                ++dropped;
            } else {
                acc.add(v[flat] * std::pow(dist, -lambdaD));
                ++used;
            }
        }
        for (int a = 0; a < d; ++a) {
            if (++idx[a] < f.axes()[a].count) break;
            idx[a] = 0;
        }
    }
    return acc.sum * f.cellVolume();
}

/// One output point of T: quadrature over the t-grid (f's first mn axes),
/// integrand f(A(t,x)) by interpolation.
double point_T(const std::vector<double>& x, const std::vector<double>& a, // (m+1)n square, row-major
               const GridFunction& f, const std::vector<std::vector<double>>& mids, int m, int n,
               double lambdaD, double guard, double tCellVolume, long& dropped, long& used) {
    const int d = m * n;
    const int full = (m + 1) * n;
    std::vector<int> idx(d, 0);
    std::vector<double> s(full), z(full);
    for (int c = 0; c < n; ++c) s[d + c] = x[c];
    size_t cells = 1;
    for (int a2 = 0; a2 < d; ++a2) cells *= size_t(f.axes()[a2].count);
    KahanSum acc;
    for (size_t flat = 0; flat < cells; ++flat) {
        double dist = 0.0;
        for (int i = 0; i < m; ++i) {
            double block = 0.0;
            for (int c = 0; c < n; ++c) {
                double t = mids[i * n + c][idx[i * n + c]];
                s[i * n + c] = t;
                block += t * t;
            }
            dist += std::sqrt(block);
        }
        if (dist < guard) {
            ++dropped;
        } else {
            for (int r = 0; r < full; ++r) {
                double dot = 0.0;
                for (int c = 0; c < full; ++c) dot += a[size_t(r) * full + c] * s[c];
                z[r] = dot;
            }
            double fv = f.interpolate(z);
            if (fv != 0.0) {
                acc.add(fv * std::pow(dist, -lambdaD));
                ++used;
            }
        }
        for (int a2 = 0; a2 < d; ++a2) {
            if (++idx[a2] < f.axes()[a2].count) break;
            idx[a2] = 0;
        }
    }
    return acc.sum * tCellVolume;
}

void run_parallel(size_t points, int threads, const std::function<void(size_t, size_t)>& chunk) {
    int hw = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (hw == 1 || points < 2) {
        chunk(0, points);
        return;
    }
    size_t per = (points + size_t(hw) - 1) / size_t(hw);
    std::vector<std::thread> pool;
    for (size_t start = 0; start < points; start += per) {
        size_t stop = std::min(points, start + per);
        pool.emplace_back([&chunk, start, stop] { chunk(start, stop); });
    }
    for (auto& t : pool) t.join();
}

std::vector<double> output_point(const GridFunction& out, size_t flat) {
    std::vector<double> x(out.dims());
    size_t rest = flat;
    for (int a = 0; a < out.dims(); ++a) {
        x[a] = out.midpoint(a, int(rest % size_t(out.axes()[a].count)));
        rest /= size_t(out.axes()[a].count);
    }
    return x;
}

} // namespace

std::vector<Axis> staggered_output_axes(const GridFunction& f, int n) {
    if (n < 1 || n > f.dims()) throw ShapeMismatch("output dimension out of range");
    std::vector<Axis> out;
    for (int a = 0; a < n; ++a) {
        const Axis& in = f.axes()[a];
        if (in.count < 2) throw ShapeMismatch("staggered output needs at least two input cells");
        out.push_back({in.count - 1, in.halfwidth * (in.count - 1) / in.count});
    }
    return out;
}

GridFunction eval_J(const BlockMatrix& D, const Order& lambda, const GridFunction& f,
                    const std::vector<Axis>& outAxes, const EvalOptions& opt, EvalStats* stats) {
    if (D.kind() != BlockKind::J) throw ShapeMismatch("eval_J needs a kind-J block matrix");
    const int m = D.m(), n = D.n();
    if (f.dims() != m * n) throw ShapeMismatch("f must live on mn axes");
    if (int(outAxes.size()) != n) throw ShapeMismatch("output grid must have n axes");

    const double lambdaD = to_double(lambda.value);
    const double guard = opt.singularGuard * cell_diameter(f, f.dims());
    std::vector<std::vector<double>> dBlocks;
    for (int i = 1; i <= m; ++i) dBlocks.push_back(dense_matrix(D.blockJ(i)));

    GridFunction out = GridFunction::zeros(outAxes);
    const size_t points = out.size();
    const bool qmc = f.dims() >= 4;
    std::vector<long> droppedPer(points, 0), usedPer(points, 0);
    auto mids = midpoint_table(f, f.dims());

    run_parallel(points, opt.threads, [&](size_t lo, size_t hi) {
        std::vector<double> dx(size_t(m) * n);
        for (size_t flat = lo; flat < hi; ++flat) {
            std::vector<double> x = output_point(out, flat);
            for (int i = 0; i < m; ++i)
                for (int r = 0; r < n; ++r) {
                    double dot = 0.0;
                    for (int c = 0; c < n; ++c) dot += dBlocks[i][size_t(r) * n + c] * x[c];
                    dx[size_t(i) * n + r] = dot;
                }
            if (!qmc) {
                out.values()[flat] =
                    point_J(dx, f, mids, m, n, lambdaD, guard, droppedPer[flat], usedPer[flat]);
            } else {
                double boxVolume = 1.0;
                for (int a = 0; a < f.dims(); ++a) boxVolume *= 2.0 * to_double(f.axes()[a].halfwidth);
                SplitMix64 rot(opt.seed);
                std::vector<double> shift(f.dims());
                for (auto& sh : shift) sh = rot.uniform();
                KahanSum acc;
                std::vector<double> y(f.dims());
                for (long s = 0; s < opt.qmcSamples; ++s) {
                    for (int a = 0; a < f.dims(); ++a) {
                        double u = radical_inverse(kHaltonBases[a], uint64_t(s) + 1) + shift[a];
                        u -= std::floor(u);
                        y[a] = (2.0 * u - 1.0) * to_double(f.axes()[a].halfwidth);
                    }
                    double fv = f.interpolate(y);
                    if (fv == 0.0) continue;
                    double dist = 0.0;
                    for (int i = 0; i < m; ++i) {
                        double block = 0.0;
                        for (int c = 0; c < n; ++c) {
                            double diff = dx[size_t(i) * n + c] - y[size_t(i) * n + c];
                            block += diff * diff;
                        }
                        dist += std::sqrt(block);
                    }
                    if (dist < guard) {
                        ++droppedPer[flat];
                        continue;
                    }
                    acc.add(fv * std::pow(dist, -lambdaD));
                    ++usedPer[flat];
                }
                out.values()[flat] = acc.sum * boxVolume / double(opt.qmcSamples);
            }
        }
    });

    if (stats) {
        stats->qmc = qmc;
        for (size_t i = 0; i < points; ++i) {
            stats->dropped += droppedPer[i];
            stats->samples += usedPer[i];
        }
    }
    return out;
}

GridFunction eval_T(const BlockMatrix& A, const Order& lambda, const GridFunction& f,
                    const std::vector<Axis>& outAxes, const EvalOptions& opt, EvalStats* stats) {
    if (A.kind() != BlockKind::T) throw ShapeMismatch("eval_T needs a kind-T block matrix");
    const int m = A.m(), n = A.n();
    if (f.dims() != (m + 1) * n) throw ShapeMismatch("f must live on (m+1)n axes");
    if (int(outAxes.size()) != n) throw ShapeMismatch("output grid must have n axes");

    const double lambdaD = to_double(lambda.value);
    const double guard = opt.singularGuard * cell_diameter(f, m * n);
    const std::vector<double> a = dense_matrix(A.base());

    double tCellVolume = 1.0;
    for (int ax = 0; ax < m * n; ++ax) tCellVolume *= f.axisStep(ax);

    GridFunction out = GridFunction::zeros(outAxes);
    const size_t points = out.size();
    const bool qmc = m * n >= 4;
    std::vector<long> droppedPer(points, 0), usedPer(points, 0);
    auto mids = midpoint_table(f, m * n);

    run_parallel(points, opt.threads, [&](size_t lo, size_t hi) {
        const int full = (m + 1) * n;
        for (size_t flat = lo; flat < hi; ++flat) {
            std::vector<double> x = output_point(out, flat);
            if (!qmc) {
                out.values()[flat] = point_T(x, a, f, mids, m, n, lambdaD, guard, tCellVolume,
                                             droppedPer[flat], usedPer[flat]);
            } else {
                double boxVolume = 1.0;
                for (int ax = 0; ax < m * n; ++ax) boxVolume *= 2.0 * to_double(f.axes()[ax].halfwidth);
                SplitMix64 rot(opt.seed);
                std::vector<double> shift(m * n);
                for (auto& sh : shift) sh = rot.uniform();
                KahanSum acc;
                std::vector<double> s(full), z(full);
                for (int c = 0; c < n; ++c) s[size_t(m) * n + c] = x[c];
                for (long smp = 0; smp < opt.qmcSamples; ++smp) {
                    double dist = 0.0;
                    for (int i = 0; i < m; ++i) {
                        double block = 0.0;
                        for (int c = 0; c < n; ++c) {
                            int ax = i * n + c;
                            double u = radical_inverse(kHaltonBases[ax], uint64_t(smp) + 1) + shift[ax];
                            u -= std::floor(u);
                            double t = (2.0 * u - 1.0) * to_double(f.axes()[ax].halfwidth);
                            s[ax] = t;
                            block += t * t;
                        }
                        dist += std::sqrt(block);
                    }
                    if (dist < guard) {
                        ++droppedPer[flat];
                        continue;
                    }
                    for (int r = 0; r < full; ++r) {
                        double dot = 0.0;
                        for (int c = 0; c < full; ++c) dot += a[size_t(r) * full + c] * s[c];
                        z[r] = dot;
                    }
                    double fv = f.interpolate(z);
                    if (fv == 0.0) continue;
                    acc.add(fv * std::pow(dist, -lambdaD));
                    ++usedPer[flat];
                }
                out.values()[flat] = acc.sum * boxVolume / double(opt.qmcSamples);
            }
        }
    });

    if (stats) {
        stats->qmc = qmc;
        for (size_t i = 0; i < points; ++i) {
            stats->dropped += droppedPer[i];
            stats->samples += usedPer[i];
        }
    }
    return out;
}

} // namespace mixfrac
