#include "mixfrac/report.hpp"

#include <cstdio>
#include <sstream>

namespace mixfrac {

std::string fnv1a64(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void join_ints(std::ostringstream& os, const std::vector<int>& v) {
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    if (v.empty()) os << "-";
}

void join_strs(std::ostringstream& os, const std::vector<std::string>& v) {
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    if (v.empty()) os << "-";
}

} // namespace

std::string render_report(const ReportInputs& in) {
    std::ostringstream os;
    os << "mixfrac-report 1\n";
    os << "tool = " << in.toolVersion << "\n";
    os << "input = " << in.inputHash << "\n";
    os << "seed = " << in.seed << "\n";
    os << "kind = " << in.kind << "\n";

    if (in.verdict != nullptr) {
        os << "verdict = " << status_name(in.verdict->status) << "\n";
        os << "reason = " << (in.verdict->reason.empty() ? "-" : in.verdict->reason) << "\n";
        os << "trace = " << in.verdict->trace.size() << " items\n";
        for (size_t i = 0; i < in.verdict->trace.size(); ++i) {
            const TraceEntry& t = in.verdict->trace[i];
            os << "  [" << (i + 1) << "] " << t.id << " " << (t.pass ? "pass" : "fail") << " | "
               << t.item << " | " << t.witness << "\n";
        }
    }

    if (in.profile != nullptr) {
        os << "analysis.firstIndex = " << in.profile->firstIndex << "\n";
        os << "analysis.ranks = ";
        join_ints(os, in.profile->ranks);
        os << "\n";
        os << "analysis.drops = ";
        join_ints(os, in.profile->drops);
        os << "\n";
    }
    if (in.pivots != nullptr) {
        os << "analysis.pivots =";
        if (in.pivots->pairs.empty()) os << " -";
        for (const auto& pr : in.pivots->pairs) os << " (" << pr.first << "," << pr.second << ")";
        os << "\n";
    }
    if (in.canonical != nullptr) {
        os << "analysis.selectedRows =";
        for (size_t b = 0; b < in.canonical->selectedRows.size(); ++b) {
            os << " block" << (b + 1) << ":[";
            const auto& rows = in.canonical->selectedRows[b];
            for (size_t r = 0; r < rows.size(); ++r) os << (r ? " " : "") << rows[r];
            os << "]";
        }
        os << "\n";
        os << "analysis.zeroRows = ";
        join_ints(os, in.canonical->zeroRows);
        os << "\n";
        os << "analysis.P =";
        const RatMatrix& p = in.canonical->P;
        for (int r = 0; r < p.rows(); ++r) {
            os << (r ? "; " : " ");
            for (int c = 0; c < p.cols(); ++c)
                os << (c ? " " : "") << format_rational(p.at(r, c));
        }
        os << "\n";
    }

    if (in.probe != nullptr) {
        const ProbeReport& pr = *in.probe;
        os << "probe.family = " << pr.family << "\n";
        os << "probe.input.counts = ";
        join_ints(os, pr.inputCounts);
        os << "\n";
        os << "probe.input.halfwidths = ";
        join_strs(os, pr.inputHalfwidths);
        os << "\n";
        os << "probe.output.counts = ";
        join_ints(os, pr.outputCounts);
        os << "\n";
        os << "probe.output.halfwidths = ";
        join_strs(os, pr.outputHalfwidths);
        os << "\n";
        os << "probe.qmc = " << (pr.qmc ? "true" : "false") << "\n";
        os << "probe.points = " << pr.points.size() << " items\n";
        for (size_t i = 0; i < pr.points.size(); ++i) {
            const ProbePoint& pt = pr.points[i];
            os << "  [" << (i + 1) << "] param=" << pt.parameter;
            if (pt.skipped) {
                os << " skipped\n";
                continue;
            }
            os << " inNorm=" << format_double(pt.inNorm) << " opNorm=" << format_double(pt.opNorm)
               << " ratio=" << format_double(pt.ratio) << " dropped=" << pt.dropped
               << " samples=" << pt.samples << "\n";
        }
    }

    return os.str();
}

} // namespace mixfrac
