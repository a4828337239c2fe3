// Acceptance gate: ten checks covering the decision engine against
// independent oracles and the numerical lab against closed forms. Prints one
// pass/fail line per criterion; the exit code is the number of failures.
//
// argv[1] is the path of the command-line tool (used by the reproducibility
// check). Tolerances and runtime budgets are pinned below.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mixfrac/blockmatrix.hpp"
#include "mixfrac/decide.hpp"
#include "mixfrac/grid.hpp"
#include "mixfrac/probes.hpp"
#include "mixfrac/rng.hpp"
#include "oracles.hpp"

using namespace mixfrac;

namespace {

constexpr double kDilationSpreadMax = 1.05; // max/min probe ratio, bounded instance
constexpr double kBlowupGrowthMin = 3.0;    // last/first probe ratio, unbounded instance
constexpr double kTranslationTol = 1e-12;   // exact-norm path float error
constexpr double kTailConstTol = 1e-9;      // single-block compensated norm vs sqrt(2)
constexpr double kTailSpreadMax = 2.0;      // two-block compensated norm spread
constexpr double kBudgetOracleSweep = 1.0;  // seconds
constexpr double kBudgetScalarSweep = 10.0;
constexpr double kBudgetDilation = 30.0;
constexpr double kBudgetBlowup = 60.0;

const char* kPool[] = {"1", "6/5", "4/3", "3/2", "2", "3", "4", "6", "inf"};

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& d) {
        if (pass) detail = d;
        pass = false;
    }
    void note(const std::string& d) {
        if (pass) detail = d;
    }
};

ProblemJ stacked_pair(const char* q, const Rational& lambda) {
    RatMatrix base(2, 1);
    base.at(0, 0) = Rational(1);
    base.at(1, 0) = Rational(1);
    return ProblemJ(2, 1, BlockMatrix(BlockKind::J, 2, 1, base),
                    {Exponent::parse("2"), Exponent::parse("2")}, Exponent::parse(q),
                    Order(lambda));
}

Outcome bilinear_window_oracle() {
    Outcome out;
    auto t0 = Clock::now();
    RatMatrix base(2, 2);
    base.at(0, 0) = Rational(1);
    base.at(0, 1) = Rational(-1);
    base.at(1, 0) = Rational(1);
    base.at(1, 1) = Rational(1);
    BlockMatrix A(BlockKind::T, 1, 1, base);

    int tested = 0;
    for (const char* p1s : kPool)
        for (const char* p2s : kPool)
            for (int k = 1; k <= 7; ++k) {
                Exponent p1 = Exponent::parse(p1s), p2 = Exponent::parse(p2s);
                Rational lambda(k, 8);
                lambda.canonicalize();
                auto q = oracles::derived_q({p1, p2}, lambda, 1, 1);
                if (!q) continue;
                ++tested;
                Verdict v = decide_T(ProblemT(1, 1, A, {p1, p2}, *q, Order(lambda)));
                if (v.bounded() != oracles::bilinear_bounded(A, p1, p2, *q))
                    out.fail("disagrees at p=(" + std::string(p1s) + "," + p2s +
                             "), lambda=" + std::to_string(k) + "/8");
            }
    if (tested < 200) out.fail("grid too sparse: " + std::to_string(tested));
    double dt = secs(t0);
    if (dt >= kBudgetOracleSweep) out.fail("over budget: " + fmt("%.2f s", dt));
    out.note(std::to_string(tested) + " combinations, " + fmt("%.2f s", dt));
    return out;
}

Outcome potential_collapse_agreement() {
    Outcome out;
    SplitMix64 rng(0x5eed0002u);
    std::vector<std::pair<int, RatMatrix>> dims;
    for (const char* s : {"1", "3/2", "-2"}) {
        RatMatrix d(1, 1);
        d.at(0, 0) = parse_rational(s);
        dims.emplace_back(1, d);
    }
    dims.emplace_back(2, RatMatrix::identity(2));
    dims.emplace_back(2, oracles::random_invertible(rng, 2));

    int tested = 0;
    for (const auto& [n, D] : dims)
        for (const char* ps : kPool)
            for (int k = 1; k <= 7; ++k) {
                Exponent p = Exponent::parse(ps);
                Rational lambda(k, 8);
                lambda.canonicalize();
                lambda *= n;
                auto q = oracles::derived_q({p}, lambda, 1, n);
                if (!q) continue;
                ++tested;
                Verdict classic = decide_riesz_classic(p, *q, Order(lambda), n);
                Verdict viaJ = decide_J(
                    ProblemJ(1, n, BlockMatrix(BlockKind::J, 1, n, D), {p}, *q, Order(lambda)));
                if (classic.status != viaJ.status)
                    out.fail("status split at n=" + std::to_string(n) + ", p=" + ps +
                             ", lambda index " + std::to_string(k));
            }
    if (tested < 100) out.fail("grid too sparse: " + std::to_string(tested));
    out.note(std::to_string(tested) + " combinations");
    return out;
}

Outcome scalar_window_consistency() {
    Outcome out;
    auto t0 = Clock::now();
    SplitMix64 rng(0x5eed0003u);
    int instances = 0;
    long comparisons = 0;
    while (instances < 200) {
        int m = int(rng.range(2, 3));
        RatMatrix base = oracles::random_matrix(rng, m + 1, m + 1);
        if (base.det() == 0) continue;
        BlockMatrix A(BlockKind::T, m, 1, base);
        if (A.lowerLeftMinor().det() == 0) continue;
        bool tail = false;
        for (int i = 2; i <= m + 1; ++i) tail = tail || base.at(i - 1, m) != 0;
        if (!tail) continue;
        ++instances;

        int tuples = 0;
        while (tuples < 50) {
            ExponentVector p;
            for (int i = 0; i <= m; ++i) p.push_back(Exponent::parse(kPool[rng.range(0, 8)]));
            Exponent q = Exponent::parse(kPool[rng.range(0, 8)]);
            Rational lambda = Rational(m) - reciprocal_sum(p) + q.reciprocal();
            if (lambda <= 0 || lambda >= m) continue;
            ++tuples;
            ++comparisons;
            ProblemT prob(m, 1, A, p, q, Order(lambda));
            if (decide_T_n1(prob).bounded() != oracles::scalar_main_bounded(base, p, q))
                out.fail("disagrees at instance " + std::to_string(instances) + ", tuple " +
                         std::to_string(tuples));
        }
    }
    if (comparisons != 200L * 50L)
        out.fail("expected 10000 comparisons, ran " + std::to_string(comparisons));
    double dt = secs(t0);
    if (dt >= kBudgetScalarSweep) out.fail("over budget: " + fmt("%.2f s", dt));
    out.note(std::to_string(comparisons) + " comparisons, " + fmt("%.2f s", dt));
    return out;
}

Outcome exact_matrix_lemmas() {
    Outcome out;
    SplitMix64 rng(0x5eed0004u);
    for (int rep = 0; rep < 500 && out.pass; ++rep) {
        int n1 = int(rng.range(1, 3)), n2 = int(rng.range(1, 3));
        RatMatrix M = oracles::random_invertible(rng, n1 + n2);
        if (!schur_identity_check(M, n1, n2))
            out.fail("block determinant identity fails at rep " + std::to_string(rep));
    }
    for (int rep = 0; rep < 500 && out.pass; ++rep) {
        int m = int(rng.range(1, 3)), n = int(rng.range(1, 3));
        RatMatrix base = oracles::random_invertible(rng, (m + 1) * n);
        if (!corner_rank_equiv_check(BlockMatrix(BlockKind::T, m, n, base)))
            out.fail("corner rank equivalence fails at rep " + std::to_string(rep));
    }
    out.note("500 + 500 instances, exact arithmetic");
    return out;
}

Outcome translation_mass_ratio() {
    Outcome out;
    std::vector<Axis> axes = {Axis{256, Rational(4)}, Axis{256, Rational(4)}};
    GridFunction f = GridFunction::indicatorBox(axes, {Rational(-1), Rational(-1)},
                                                {Rational(1), Rational(1)});
    ExponentVector p = {Exponent::parse("2"), Exponent::parse("3")};
    double expect[2] = {std::pow(2.0, 1.0 / 2.0), std::pow(2.0, 1.0 / 3.0)};
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
        auto rows = translation_limit_probe(f, {1, 1}, p, k, {Rational(3)});
        double err = std::fabs(rows[0].second - expect[k - 1]);
        worst = std::max(worst, err);
        if (err >= kTranslationTol)
            out.fail("group " + std::to_string(k) + " off by " + fmt("%.3g", err));
    }
    out.note("worst error " + fmt("%.3g", worst));
    return out;
}

Outcome dilation_self_similarity() {
    Outcome out;
    auto t0 = Clock::now();
    ProbeReport rep = ratio_probe(stacked_pair("4", Rational(5, 4)), ProbeFamily::Dilation, {});
    if (rep.points.size() != 5) {
        out.fail("expected 5 probe points");
        return out;
    }
    double lo = 0.0, hi = 0.0;
    for (const auto& pt : rep.points) {
        if (pt.skipped || pt.ratio <= 0.0) {
            out.fail("degenerate point at parameter " + pt.parameter);
            return out;
        }
        lo = lo == 0.0 ? pt.ratio : std::min(lo, pt.ratio);
        hi = std::max(hi, pt.ratio);
    }
    if (hi / lo > kDilationSpreadMax) out.fail("spread " + fmt("%.4f", hi / lo));
    double dt = secs(t0);
    if (dt >= kBudgetDilation) out.fail("over budget: " + fmt("%.2f s", dt));
    out.note("spread " + fmt("%.6f", hi / lo) + ", " + fmt("%.2f s", dt));
    return out;
}

Outcome endpoint_blowup_growth() {
    Outcome out;
    auto t0 = Clock::now();
    ProbeReport rep = ratio_probe(stacked_pair("2", Rational(3, 2)), ProbeFamily::LogPower, {});
    if (rep.points.size() < 3) {
        out.fail("too few probe points");
        return out;
    }
    for (const auto& pt : rep.points)
        if (pt.skipped || pt.ratio <= 0.0) {
            out.fail("degenerate point at parameter " + pt.parameter);
            return out;
        }
    for (size_t i = 0; i + 1 < rep.points.size(); ++i)
        if (!(rep.points[i].ratio < rep.points[i + 1].ratio))
            out.fail("not monotone at step " + std::to_string(i + 1));
    double growth = rep.points.back().ratio / rep.points.front().ratio;
    if (growth < kBlowupGrowthMin) out.fail("growth only " + fmt("%.3f", growth));
    double dt = secs(t0);
    if (dt >= kBudgetBlowup) out.fail("over budget: " + fmt("%.2f s", dt));
    out.note("growth " + fmt("%.2f", growth) + " over " +
             std::to_string(rep.points.size()) + " points, " + fmt("%.2f s", dt));
    return out;
}

Outcome norm_swap_inequality() {
    Outcome out;
    SplitMix64 rng(0x5eed0008u);
    ExponentVector p = {Exponent::parse("3"), Exponent::parse("2")};
    for (int rep = 0; rep < 1000; ++rep) {
        int n0 = int(rng.range(4, 16)), n1 = int(rng.range(4, 16));
        GridFunction f = GridFunction::zeros({Axis{n0, Rational(1)}, Axis{n1, Rational(1)}});
        for (auto& v : f.values()) v = rng.range(0, 9) < 3 ? 0.0 : rng.uniform();
        MinkowskiCheck c = minkowski_swap_check(f, {1, 1}, p, 1);
        if (!c.holds) {
            out.fail("violated at rep " + std::to_string(rep) + ": lhs " + fmt("%.17g", c.lhs) +
                     " rhs " + fmt("%.17g", c.rhs));
            return out;
        }
    }
    out.note("1000 random grids");
    return out;
}

Outcome tail_scaling_constants() {
    Outcome out;
    std::vector<Rational> Rs;
    for (int k = 0; k <= 10; ++k) Rs.push_back(Rational(1 << k));

    const double root2 = std::sqrt(2.0);
    double worst = 0.0;
    for (const auto& row : tail_scaling_check({1}, {Exponent::parse("2")}, Rational(1), Rs)) {
        double err = std::fabs(row.compensated - root2);
        worst = std::max(worst, err);
        if (err > kTailConstTol) out.fail("single block drifts by " + fmt("%.3g", err));
    }

    double lo = 0.0, hi = 0.0;
    for (const auto& row : tail_scaling_check({1, 1}, {Exponent::parse("2"), Exponent::parse("2")},
                                              Rational(2), Rs)) {
        lo = lo == 0.0 ? row.compensated : std::min(lo, row.compensated);
        hi = std::max(hi, row.compensated);
    }
    if (hi / lo > kTailSpreadMax) out.fail("two-block spread " + fmt("%.3f", hi / lo));
    out.note("worst drift " + fmt("%.3g", worst) + ", spread " + fmt("%.4f", hi / lo));
    return out;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome report_reproducibility(const std::string& cli) {
    Outcome out;
    if (cli.empty()) {
        out.fail("no tool path on the command line");
        return out;
    }
    const std::string prob = "/tmp/mixfrac_accept_problem.json";
    {
        std::ofstream f(prob, std::ios::binary | std::ios::trunc);
        f << R"({"kind":"J","m":2,"n":1,"matrix":[["1"],["1"]],)"
          << R"("p":["2","2"],"q":"4","lambda":"5/4"})";
    }
    auto run = [&](const std::string& args, int expectExit) {
        std::string cmd = "\"" + cli + "\" " + args + " >/dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == expectExit;
    };

    const std::string d1 = "/tmp/mixfrac_accept_d1.txt", d2 = "/tmp/mixfrac_accept_d2.txt";
    if (!run("decide --problem " + prob + " --out " + d1, 0) ||
        !run("decide --problem " + prob + " --out " + d2, 0)) {
        out.fail("decide run failed");
        return out;
    }
    std::string b1 = read_bytes(d1);
    if (b1.empty() || b1 != read_bytes(d2)) out.fail("decide reports differ between reruns");
    if (b1.find("verdict = Bounded") == std::string::npos) out.fail("unexpected decide verdict");

    const std::string p1 = "/tmp/mixfrac_accept_p1.txt", p2 = "/tmp/mixfrac_accept_p2.txt";
    const std::string probeArgs = "probe --problem " + prob +
                                  " --family dilation --grid-n 32 --seed 9 --out ";
    if (!run(probeArgs + p1, 0) || !run(probeArgs + p2, 0)) {
        out.fail("probe run failed");
        return out;
    }
    std::string q1 = read_bytes(p1);
    if (q1.empty() || q1 != read_bytes(p2)) out.fail("probe reports differ between reruns");
    if (q1.find("probe.family = dilation") == std::string::npos)
        out.fail("probe report missing the family section");
    out.note("decide and probe reruns byte-identical");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    struct Row {
        const char* name;
        Outcome out;
    };
    Row rows[] = {
        {"bilinear window oracle", bilinear_window_oracle()},
        {"potential collapse agreement", potential_collapse_agreement()},
        {"scalar window consistency", scalar_window_consistency()},
        {"exact matrix lemma suite", exact_matrix_lemmas()},
        {"translation mass ratio", translation_mass_ratio()},
        {"dilation self-similarity", dilation_self_similarity()},
        {"endpoint blow-up growth", endpoint_blowup_growth()},
        {"norm swap inequality", norm_swap_inequality()},
        {"tail scaling constants", tail_scaling_constants()},
        {"report reproducibility", report_reproducibility(cli)},
    };

    int failures = 0;
    int idx = 0;
    for (const Row& row : rows) {
        ++idx;
        if (!row.out.pass) ++failures;
        std::printf("[%2d] %-30s %s%s%s\n", idx, row.name, row.out.pass ? "pass" : "FAIL",
                    row.out.detail.empty() ? "" : "  ", row.out.detail.c_str());
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
