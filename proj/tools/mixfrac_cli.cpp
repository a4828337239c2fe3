#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mixfrac/errors.hpp"
#include "mixfrac/problemio.hpp"
#include "mixfrac/report.hpp"
#include "mixfrac/selftest.hpp"

namespace {

constexpr const char* kToolVersion = "mixfrac 0.1.0";

constexpr int kExitBounded = 0;
constexpr int kExitUnbounded = 10;
constexpr int kExitOutsideScope = 20;
constexpr int kExitInputError = 2;

struct CommonFlags {
    std::string problemPath;
    std::string outPath;
    int gridN = 0;
    std::string gridL;
    std::optional<uint64_t> seed;
    std::string family;
    std::string params;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool probeFlags) {
    cmd->add_option("--problem", f.problemPath, "problem file (JSON)")->required();
    cmd->add_option("--out", f.outPath, "write the report here instead of stdout");
    if (probeFlags) {
        cmd->add_option("--grid-n", f.gridN, "input grid cells per axis");
        cmd->add_option("--grid-l", f.gridL, "input grid halfwidth (rational)");
        cmd->add_option("--seed", f.seed, "probe seed (overrides the file)");
        cmd->add_option("--family", f.family, "probe family (overrides the file)");
        cmd->add_option("--params", f.params, "comma-separated rational parameter list");
    }
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mixfrac::ParseError(path + ": cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& report, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream out(outPath, std::ios::binary | std::ios::trunc);
    if (!out) throw mixfrac::ParseError(outPath + ": cannot write file");
    out << report;
}

int verdict_exit(const mixfrac::Verdict& v) {
    switch (v.status) {
        case mixfrac::Status::Bounded: return kExitBounded;
        case mixfrac::Status::Unbounded: return kExitUnbounded;
        case mixfrac::Status::OutsideTheoremScope: return kExitOutsideScope;
    }
    return kExitInputError;
}

mixfrac::Verdict decide_spec(const mixfrac::ProblemSpec& spec) {
    if (spec.kind == "T") return mixfrac::decide_T(*spec.problemT);
    if (spec.kind == "J") return mixfrac::decide_J(*spec.problemJ);
    return mixfrac::decide_riesz_classic(*spec.rieszP, *spec.rieszQ, *spec.rieszLambda,
                                         spec.rieszN);
}

mixfrac::BlockMatrix analysis_stack(const mixfrac::ProblemSpec& spec) {
    if (spec.kind == "T") return spec.problemT->A;
    if (spec.kind == "J") return spec.problemJ->D;
    // classic potential: one identity block
    return mixfrac::BlockMatrix(mixfrac::BlockKind::J, 1, spec.rieszN,
                                mixfrac::RatMatrix::identity(spec.rieszN));
}

std::vector<mixfrac::Rational> parse_params(const std::string& text) {
    std::vector<mixfrac::Rational> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw mixfrac::ParseError("--params: empty entry");
        out.push_back(mixfrac::parse_rational(item.substr(a, b - a + 1)));
    }
    if (out.empty()) throw mixfrac::ParseError("--params: empty list");
    return out;
}

int run_decide(const CommonFlags& flags, bool withAnalysis, bool withProbe) {
    std::string bytes = read_bytes(flags.problemPath);
    mixfrac::ProblemSpec spec = mixfrac::parse_problem_text(bytes, flags.problemPath);

    mixfrac::ReportInputs rep;
    rep.toolVersion = kToolVersion;
    rep.inputHash = mixfrac::fnv1a64(bytes);
    rep.kind = spec.kind;

    mixfrac::Verdict verdict = decide_spec(spec);
    rep.verdict = &verdict;

    std::optional<mixfrac::RankProfile> profile;
    std::optional<mixfrac::PivotIndexSet> pivots;
    std::optional<mixfrac::CanonicalForm> canonical;
    if (withAnalysis) {
        mixfrac::BlockMatrix stack = analysis_stack(spec);
        profile = stack.kind() == mixfrac::BlockKind::T ? mixfrac::rank_profile_T(stack)
                                                        : mixfrac::rank_profile_J(stack);
        rep.profile = &*profile;
        try {
            pivots = mixfrac::pivot_index_set(*profile);
            rep.pivots = &*pivots;
        } catch (const mixfrac::NotFullRank&) {
            // rank-deficient stack has no pivot set; the trace already says so
        }
        if (stack.kind() == mixfrac::BlockKind::J) {
            try {
                canonical = mixfrac::reduce_kernel(stack);
                rep.canonical = &*canonical;
            } catch (const mixfrac::NotFullRank&) {
            }
        }
    }

    std::optional<mixfrac::ProbeReport> probe;
    if (withProbe) {
        if (spec.kind == "riesz")
            throw mixfrac::ParseError(flags.problemPath +
                                      ": probes need an explicit matrix (kind T or J)");
        mixfrac::ProbeSpec pspec = spec.probe.value_or(mixfrac::ProbeSpec{});
        if (!flags.family.empty()) pspec.family = mixfrac::parse_family(flags.family);
        if (!pspec.family)
            throw mixfrac::ParseError(flags.problemPath +
                                      ": no probe family (file probe section or --family)");
        if (flags.gridN > 0) pspec.options.gridCount = flags.gridN;
        if (!flags.gridL.empty()) pspec.options.gridHalfwidth = mixfrac::parse_rational(flags.gridL);
        if (!flags.params.empty()) pspec.options.params = parse_params(flags.params);
        if (flags.seed) pspec.options.seed = *flags.seed;
        rep.seed = pspec.options.seed;

        probe = spec.kind == "T"
                    ? mixfrac::ratio_probe(*spec.problemT, *pspec.family, pspec.options)
                    : mixfrac::ratio_probe(*spec.problemJ, *pspec.family, pspec.options);
        probe->problemHash = rep.inputHash;
        rep.probe = &*probe;
    }

    emit(mixfrac::render_report(rep), flags.outPath);
    return verdict_exit(verdict);
}

int run_selftest(uint64_t seed) {
    auto results = mixfrac::run_selftests(seed);
    for (const auto& r : results) {
        std::cout << r.suite << ": " << (r.total - r.failures) << "/" << r.total << " passed\n";
        if (r.failures > 0) std::cout << "  first failure: " << r.firstFailure << "\n";
    }
    bool ok = mixfrac::selftests_ok(results);
    std::cout << (ok ? "selftest OK" : "selftest FAILED") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision engine and numerical probes for multilinear fractional integrals"};
    app.require_subcommand(1);

    CommonFlags decideFlags, analyzeFlags, probeFlags;
    uint64_t selftestSeed = 0;

    CLI::App* cmdDecide = app.add_subcommand("decide", "verdict + trace for a problem file");
    add_common(cmdDecide, decideFlags, false);

    CLI::App* cmdAnalyze =
        app.add_subcommand("analyze", "verdict plus rank profile, pivots and canonical form");
    add_common(cmdAnalyze, analyzeFlags, false);

    CLI::App* cmdProbe = app.add_subcommand("probe", "verdict plus a ratio-probe family run");
    add_common(cmdProbe, probeFlags, true);

    CLI::App* cmdSelftest = app.add_subcommand("selftest", "run the property suites");
    cmdSelftest->add_option("--seed", selftestSeed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (cmdDecide->parsed()) return run_decide(decideFlags, false, false);
        if (cmdAnalyze->parsed()) return run_decide(analyzeFlags, true, false);
        if (cmdProbe->parsed()) return run_decide(probeFlags, false, true);
        return run_selftest(selftestSeed);
    } catch (const mixfrac::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
}
