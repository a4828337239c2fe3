#include "mixfrac/probes.hpp"

#include <algorithm>
#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/profile.hpp"

namespace mixfrac {

double LogPowerDescriptor::radial(double r) const {
    if (r <= 0.0 || r >= 0.5) return 0.0;
    return std::pow(r, -power) * std::pow(std::log(1.0 / r), -logPower);
}

double LogPowerDescriptor::operator()(const std::vector<double>& x) const {
    double s = 0.0;
    for (double c : x) s += c * c;
    return radial(std::sqrt(s));
}

LogPowerDescriptor logpower_counterexample(int n, const Exponent& q, const Rational& eps) {
    if (n < 1) throw DomainError("dimension must be positive");
    if (!q.greaterThanOne()) throw DomainError("the witness profile needs q > 1");
    if (eps <= 0) throw DomainError("the witness profile needs eps > 0");
    double qcd = to_double(q.conjugate().finiteValue()); // finite since q > 1
    return LogPowerDescriptor{n, double(n) / qcd, (1.0 + to_double(eps)) / qcd};
}

Rational logpower_default_eps(const Exponent& q, const Exponent& pk0) {
    if (!q.greaterThanOne() || q.isInfinite())
        throw DomainError("default eps needs 1 < q < infinity");
    if (!pk0.greaterThanOne()) throw DomainError("default eps needs p_{k0} > 1");
    if (!(q < pk0)) throw DomainError("default eps witnesses q < p_{k0} only");
    Rational qc = q.conjugate().finiteValue();
    Rational pc = pk0.isInfinite() ? Rational(1) : pk0.conjugate().finiteValue();
    return (qc / pc - 1) / 2;
}

ProbeFamily parse_family(const std::string& name) {
    if (name == "dilation") return ProbeFamily::Dilation;
    if (name == "translation") return ProbeFamily::Translation;
    if (name == "logpower") return ProbeFamily::LogPower;
    if (name == "boxE") return ProbeFamily::BoxE;
    throw ParseError("unknown probe family: " + name);
}

std::string family_name(ProbeFamily f) {
    switch (f) {
        case ProbeFamily::Dilation: return "dilation";
        case ProbeFamily::Translation: return "translation";
        case ProbeFamily::LogPower: return "logpower";
        case ProbeFamily::BoxE: return "boxE";
    }
    throw DomainError("unreachable family");
}

namespace {

struct GridChoice {
    int count;
    Rational halfwidth;
};

GridChoice input_defaults(int dims, ProbeFamily fam) {
    if (fam == ProbeFamily::LogPower || fam == ProbeFamily::BoxE) {
        if (dims <= 2) return {1024, Rational(1)};
        if (dims == 3) return {256, Rational(1)};
        return {64, Rational(1)};
    }
    if (dims <= 2) return {256, Rational(4)};
    if (dims == 3) return {64, Rational(4)};
    return {32, Rational(4)};
}

int default_out_count(int n) {
    if (n == 1) return 255;
    if (n == 2) return 63;
    if (n == 3) return 15;
    return 9;
}

std::vector<Axis> resolve_input_axes(int dims, ProbeFamily fam, const ProbeOptions& opt) {
    GridChoice g = input_defaults(dims, fam);
    if (opt.gridCount > 0) g.count = opt.gridCount;
    if (opt.gridHalfwidth > 0) g.halfwidth = opt.gridHalfwidth;
    return std::vector<Axis>(size_t(dims), Axis{g.count, g.halfwidth});
}

/// Output points on input cell boundaries: odd count c, step an integer
/// multiple of the input step, 0 always included, no midpoint coincidences.
std::vector<Axis> probe_output_axes(const GridFunction& f, int n, int c) {
    std::vector<Axis> out;
    for (int a = 0; a < n; ++a) {
        int nc = f.axes()[a].count;
        int cc = c;
        if (cc >= nc) cc = nc - 1;
        if (cc % 2 == 0) --cc;
        if (cc < 1) throw ShapeMismatch("input grid too coarse for a staggered output grid");
        int k = nc / cc;
        Rational step = f.axes()[a].halfwidth * 2 / nc;
        out.push_back({cc, step * k * cc / 2});
    }
    return out;
}

std::vector<Rational> default_params(ProbeFamily fam) {
    switch (fam) {
        case ProbeFamily::Dilation:
            return {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4)};
        case ProbeFamily::Translation: return {Rational(0), Rational(1), Rational(2), Rational(3)};
        case ProbeFamily::LogPower:
        case ProbeFamily::BoxE:
            return {Rational(1, 4),  Rational(1, 8),  Rational(1, 16), Rational(1, 32),
                    Rational(1, 64), Rational(1, 128), Rational(1, 256)};
    }
    throw DomainError("unreachable family");
}

std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    auto a = std::vector<std::vector<Rational>>(size_t(rows), std::vector<Rational>(size_t(cols)));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) a[r][c] = m.at(r, c);
    std::vector<int> pivotCol;
    int prow = 0;
    for (int c = 0; c < cols && prow < rows; ++c) {
        int sel = -1;
        for (int r = prow; r < rows; ++r)
            if (a[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[prow]);
        Rational lead = a[prow][c];
        for (int cc = c; cc < cols; ++cc) a[prow][cc] /= lead;
        for (int r = 0; r < rows; ++r) {
            if (r == prow || a[r][c] == 0) continue;
            Rational factor = a[r][c];
            for (int cc = c; cc < cols; ++cc) a[r][cc] -= factor * a[prow][cc];
        }
        pivotCol.push_back(c);
        ++prow;
    }
    std::vector<bool> isPivot(size_t(cols), false);
    for (int c : pivotCol) isPivot[size_t(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (isPivot[size_t(fc)]) continue;
        std::vector<Rational> v(size_t(cols), Rational(0));
        v[size_t(fc)] = 1;
        for (size_t pr = 0; pr < pivotCol.size(); ++pr) v[size_t(pivotCol[pr])] = -a[pr][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Direction z with the tail blocks after the last rank drop annihilated and
/// the drop block alive, turned into a per-axis whole-cell shift vector:
/// component a of the result is the number of cells a unit parameter moves
/// along axis a.
std::vector<long> translation_cells(const std::vector<RatMatrix>& blocks, const RatMatrix* tail,
                                    int dropBlock, const Rational& step) {
    const int n = blocks.front().cols();
    std::vector<std::vector<Rational>> basis;
    if (tail == nullptr || tail->rows() == 0) {
        for (int c = 0; c < n; ++c) {
            std::vector<Rational> e(size_t(n), Rational(0));
            e[size_t(c)] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = kernel_basis(*tail);
    }
    const RatMatrix& alive = blocks[size_t(dropBlock)];
    std::vector<Rational> z;
    for (const auto& v : basis) {
        bool hit = false;
        for (int r = 0; r < alive.rows() && !hit; ++r) {
            Rational dot = 0;
            for (int c = 0; c < n; ++c) dot += alive.at(r, c) * v[size_t(c)];
            if (dot != 0) hit = true;
        }
        if (hit) {
            z = v;
            break;
        }
    }
    if (z.empty()) throw DomainError("no translation direction survives the tail blocks");

    std::vector<Rational> shift;
    Rational maxAbs = 0;
    for (const auto& b : blocks)
        for (int r = 0; r < b.rows(); ++r) {
            Rational dot = 0;
            for (int c = 0; c < n; ++c) dot += b.at(r, c) * z[size_t(c)];
            shift.push_back(dot);
            if (abs(dot) > maxAbs) maxAbs = abs(dot);
        }
    if (maxAbs == 0) throw DomainError("translation direction is annihilated by every block");

    mpz_class denLcm = 1;
    std::vector<Rational> cells(shift.size());
    for (size_t i = 0; i < shift.size(); ++i) {
        cells[i] = shift[i] / maxAbs / step; // cells per unit parameter
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), cells[i].get_den().get_mpz_t());
    }
    std::vector<long> out(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        mpz_class v = cells[i].get_num() * (denLcm / cells[i].get_den());
        if (!v.fits_slong_p()) throw DomainError("translation direction overflows the cell grid");
        out[i] = v.get_si();
    }
    return out;
}

struct BandSampler {
    std::vector<double> p;      // dense row-major reduce_kernel P
    std::vector<bool> isPivot;  // per global row
    int dim;
    double sigma, tau, deltaLo, deltaHi;

    double operator()(const std::vector<double>& y) const {
        double w = 0.0, pivMax = 0.0;
        for (int r = 0; r < dim; ++r) {
            double dot = 0.0;
            for (int c = 0; c < dim; ++c) dot += p[size_t(r) * dim + c] * y[size_t(c)];
            if (isPivot[size_t(r)]) {
                pivMax = std::max(pivMax, std::fabs(dot));
            } else {
                w += std::fabs(dot);
            }
        }
        if (!(w > deltaLo && w < deltaHi && pivMax <= deltaHi)) return 0.0;
        double v = std::pow(w, -sigma);
        if (tau != 0.0) v *= std::pow(std::log(1.0 / w), -tau);
        return v;
    }
};

BandSampler make_band_sampler(const BlockMatrix& d, double lambda, double tau, double deltaLo,
                              double deltaHi, bool indicator) {
    CanonicalForm cf = reduce_kernel(d);
    const int dim = d.m() * d.n();
    BandSampler s;
    s.dim = dim;
    s.p.resize(size_t(dim) * dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) s.p[size_t(r) * dim + c] = to_double(cf.P.at(r, c));
    s.isPivot.assign(size_t(dim), true);
    for (int zr : cf.zeroRows) s.isPivot[size_t(zr - 1)] = false;
    if (!indicator && cf.zeroRows.empty())
        throw DomainError("the band family needs a rank drop before the last block");
    s.sigma = indicator ? 0.0 : lambda - d.n();
    s.tau = indicator ? 0.0 : tau;
    s.deltaLo = deltaLo;
    s.deltaHi = deltaHi;
    return s;
}

struct PointInputs {
    GridFunction f;
    std::string parameter;
};

template <typename EvalFn>
ProbeReport run_family(const std::vector<Axis>& baseAxes, const std::vector<int>& groups,
                       const ExponentVector& p, const Exponent& q, int n, const ProbeOptions& opt,
                       ProbeFamily fam, const std::vector<PointInputs>& inputs, EvalFn&& evalOp) {
    ProbeReport rep;
    rep.family = family_name(fam);
    rep.seed = opt.seed;
    for (const auto& ax : baseAxes) {
        rep.inputCounts.push_back(ax.count);
        rep.inputHalfwidths.push_back(format_rational(ax.halfwidth));
    }
    int outCount = opt.outCount > 0 ? opt.outCount : default_out_count(n);
    GridFunction probeBase = GridFunction::zeros(baseAxes);
    for (const auto& ax : probe_output_axes(probeBase, n, outCount)) {
        rep.outputCounts.push_back(ax.count);
        rep.outputHalfwidths.push_back(format_rational(ax.halfwidth));
    }

    for (const auto& in : inputs) {
        ProbePoint pt;
        pt.parameter = in.parameter;
        pt.inNorm = mixed_norm(in.f, groups, p);
        if (pt.inNorm == 0.0) {
            pt.skipped = true;
            rep.points.push_back(pt);
            continue;
        }
        EvalStats stats;
        GridFunction g = evalOp(in.f, probe_output_axes(in.f, n, outCount), &stats);
        pt.opNorm = lebesgue_norm(g, q);
        pt.ratio = pt.opNorm / pt.inNorm;
        pt.dropped = stats.dropped;
        pt.samples = stats.samples;
        rep.qmc = rep.qmc || stats.qmc;
        rep.points.push_back(pt);
    }
    return rep;
}

std::vector<Rational> family_params(const ProbeOptions& opt, ProbeFamily fam) {
    return opt.params.empty() ? default_params(fam) : opt.params;
}

GridFunction translated_pair(const GridFunction& base, const std::vector<long>& cells,
                             const Rational& k) {
    if (k.get_den() != 1 || !k.get_num().fits_slong_p())
        throw DomainError("translation parameters are integer step multipliers");
    long mult = k.get_num().get_si();
    GridFunction shifted = base;
    for (size_t a = 0; a < cells.size(); ++a)
        if (cells[a] != 0) shifted = shift_cells(shifted, int(a), cells[a] * mult);
    GridFunction sum = GridFunction::zeros(base.axes());
    for (size_t i = 0; i < sum.size(); ++i) sum.values()[i] = base.values()[i] + shifted.values()[i];
    return sum;
}

} // namespace

ProbeReport ratio_probe(const ProblemJ& prob, ProbeFamily fam, const ProbeOptions& opt) {
    const int dims = prob.m * prob.n;
    std::vector<Axis> axes = resolve_input_axes(dims, fam, opt);
    std::vector<int> groups(size_t(prob.m), prob.n);
    std::vector<Rational> params = family_params(opt, fam);
    EvalOptions eo;
    eo.seed = opt.seed;
    eo.threads = opt.threads;

    std::vector<PointInputs> inputs;
    switch (fam) {
        case ProbeFamily::Dilation: {
            GridFunction base = GridFunction::indicatorBox(
                axes, std::vector<Rational>(size_t(dims), Rational(-1)),
                std::vector<Rational>(size_t(dims), Rational(1)));
            for (const auto& a : params)
                inputs.push_back({dilation_family(base, prob.p, prob.n, a), format_rational(a)});
            break;
        }
        case ProbeFamily::Translation: {
            GridFunction base = GridFunction::indicatorBox(
                axes, std::vector<Rational>(size_t(dims), Rational(-1)),
                std::vector<Rational>(size_t(dims), Rational(1)));
            RankProfile rp = rank_profile_J(prob.D);
            if (rp.drops.empty()) throw DomainError("translation family needs a rank drop");
            int drop = rp.drops.back();
            std::vector<RatMatrix> blocks;
            for (int i = 1; i <= prob.m; ++i) blocks.push_back(prob.D.blockJ(i));
            RatMatrix tail = RatMatrix::zero(0, prob.n);
            bool haveTail = drop < prob.m;
            if (haveTail) tail = prob.D.tailStack(drop + 1);
            Rational step = axes[0].halfwidth * 2 / axes[0].count;
            std::vector<long> cells =
                translation_cells(blocks, haveTail ? &tail : nullptr, drop - 1, step);
            for (const auto& k : params)
                inputs.push_back({translated_pair(base, cells, k), format_rational(k)});
            break;
        }
        case ProbeFamily::LogPower:
        case ProbeFamily::BoxE: {
            double lambdaD = to_double(prob.lambda.value);
            double deltaHi = to_double(opt.delta0);
            bool indicator = fam == ProbeFamily::BoxE;
            for (const auto& d : params) {
                double lo = to_double(d);
                BandSampler s = make_band_sampler(prob.D, lambdaD, opt.tau,
                                                  indicator ? -1.0 : lo,
                                                  indicator ? lo : deltaHi, indicator);
                inputs.push_back(
                    {GridFunction::sample(axes, [&s](const std::vector<double>& y) { return s(y); }),
                     format_rational(d)});
            }
            break;
        }
    }

    return run_family(axes, groups, prob.p, prob.q, prob.n, opt, fam, inputs,
                      [&](const GridFunction& f, const std::vector<Axis>& out, EvalStats* st) {
                          return eval_J(prob.D, prob.lambda, f, out, eo, st);
                      });
}

ProbeReport ratio_probe(const ProblemT& prob, ProbeFamily fam, const ProbeOptions& opt) {
    const int dims = (prob.m + 1) * prob.n;
    std::vector<Axis> axes = resolve_input_axes(dims, fam, opt);
    std::vector<int> groups(size_t(prob.m) + 1, prob.n);
    std::vector<Rational> params = family_params(opt, fam);
    EvalOptions eo;
    eo.seed = opt.seed;
    eo.threads = opt.threads;

    std::vector<PointInputs> inputs;
    switch (fam) {
        case ProbeFamily::Dilation: {
            GridFunction base = GridFunction::indicatorBox(
                axes, std::vector<Rational>(size_t(dims), Rational(-1)),
                std::vector<Rational>(size_t(dims), Rational(1)));
            for (const auto& a : params)
                inputs.push_back({dilation_family(base, prob.p, prob.n, a), format_rational(a)});
            break;
        }
        case ProbeFamily::Translation: {
            GridFunction base = GridFunction::indicatorBox(
                axes, std::vector<Rational>(size_t(dims), Rational(-1)),
                std::vector<Rational>(size_t(dims), Rational(1)));
            RankProfile rp = rank_profile_T(prob.A);
            if (rp.drops.empty()) throw DomainError("translation family needs a rank drop");
            int drop = rp.drops.back();
            std::vector<RatMatrix> blocks;
            for (int k = 1; k <= prob.m + 1; ++k) blocks.push_back(prob.A.block(k, prob.m + 1));
            RatMatrix tail = RatMatrix::zero(0, prob.n);
            bool haveTail = drop < prob.m + 1;
            if (haveTail) tail = prob.A.tailStack(drop + 1);
            Rational step = axes[0].halfwidth * 2 / axes[0].count;
            std::vector<long> cells =
                translation_cells(blocks, haveTail ? &tail : nullptr, drop - 1, step);
            for (const auto& k : params)
                inputs.push_back({translated_pair(base, cells, k), format_rational(k)});
            break;
        }
        case ProbeFamily::LogPower:
        case ProbeFamily::BoxE:
            throw DomainError("band families need the potential form (kind J)");
    }

    return run_family(axes, groups, prob.p, prob.q, prob.n, opt, fam, inputs,
                      [&](const GridFunction& f, const std::vector<Axis>& out, EvalStats* st) {
                          return eval_T(prob.A, prob.lambda, f, out, eo, st);
                      });
}

MinkowskiCheck minkowski_swap_check(const GridFunction& f, const std::vector<int>& groupSizes,
                                    const ExponentVector& p, int i) {
    if (i < 1 || i + 1 > int(groupSizes.size())) throw IndexOutOfRange("swap position out of range");
    if (p[size_t(i) - 1] < p[size_t(i)])
        throw PreconditionViolated("the swap inequality needs p_i >= p_{i+1}");
    std::vector<int> order(groupSizes.size());
    for (size_t g = 0; g < order.size(); ++g) order[g] = int(g) + 1;
    std::swap(order[size_t(i) - 1], order[size_t(i)]);
    MinkowskiCheck out;
    out.lhs = mixed_norm_ordered(f, groupSizes, p, order);
    out.rhs = mixed_norm(f, groupSizes, p);
    out.holds = out.lhs <= out.rhs + 1e-12 * out.rhs;
    return out;
}

namespace {

double sphere_area(int n) {
    // |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

} // namespace

std::vector<TailScalingRow> tail_scaling_check(const std::vector<int>& groupDims,
                                               const ExponentVector& p, const Rational& alpha,
                                               const std::vector<Rational>& Rs) {
    if (groupDims.empty() || groupDims.size() != p.size())
        throw ShapeMismatch("one exponent per block required");
    for (int d : groupDims)
        if (d < 1) throw ShapeMismatch("block dimensions must be positive");
    for (const auto& e : p)
        if (e.isInfinite())
            throw DomainError("infinite exponents are outside the closed-form table");

    Rational recipSum = 0;
    int bigN = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        recipSum += Rational(groupDims[i]) * p[i].reciprocal();
        bigN += groupDims[i];
    }
    if (alpha <= recipSum) throw DomainError("tail norm is infinite when alpha <= sum n_i/p_i");

    bool allEqual = true;
    for (size_t i = 1; i < p.size(); ++i)
        if (!(p[i] == p[0])) allEqual = false;

    const double alphaD = to_double(alpha);
    const double comp = to_double(alpha - recipSum);
    std::vector<TailScalingRow> rows;

    if (allEqual) {
        // Radial path: the level sets of sum|x_i| carry measure C s^{N-1} ds.
        double pd = to_double(p[0].finiteValue());
        double logC = 0.0;
        for (int d : groupDims) logC += std::log(sphere_area(d)) + std::lgamma(double(d));
        logC -= std::lgamma(double(bigN));
        double c = std::exp(logC);
        for (const auto& r : Rs) {
            double rd = to_double(r);
            if (rd <= 0) throw DomainError("R must be positive");
            double normP = c * std::pow(rd, double(bigN) - alphaD * pd) / (alphaD * pd - bigN);
            TailScalingRow row;
            row.R = rd;
            row.norm = std::pow(normP, 1.0 / pd);
            row.compensated = row.norm * std::pow(rd, comp);
            rows.push_back(row);
        }
        return rows;
    }

    if (p.size() == 2 && groupDims[0] == 1 && groupDims[1] == 1) {
        // Two stages: the inner norm is a plateau R^{(1-alpha p1)/p1} inside
        // |x_2| < R and a power |x_2|^{(1-alpha p1)/p1} outside.
        double p1 = to_double(p[0].finiteValue());
        double p2 = to_double(p[1].finiteValue());
        double c1 = std::pow(2.0 / (alphaD * p1 - 1.0), 1.0 / p1);
        double beta = (1.0 - alphaD * p1) / p1;
        for (const auto& r : Rs) {
            double rd = to_double(r);
            if (rd <= 0) throw DomainError("R must be positive");
            double plateau = 2.0 * rd * std::pow(rd, beta * p2);
            double tailPart = 2.0 * std::pow(rd, beta * p2 + 1.0) / (-beta * p2 - 1.0);
            TailScalingRow row;
            row.R = rd;
            row.norm = c1 * std::pow(plateau + tailPart, 1.0 / p2);
            row.compensated = row.norm * std::pow(rd, comp);
            rows.push_back(row);
        }
        return rows;
    }

    throw DomainError("unequal exponents with these block dimensions are outside the closed-form table");
}

} // namespace mixfrac
