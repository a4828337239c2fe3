#include "mixfrac/problemio.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mixfrac/errors.hpp"

namespace mixfrac {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& field,
                       const std::string& what) {
    throw ParseError(source + ": field '" + field + "': " + what);
}

std::string get_string(const json& j, const std::string& source, const std::string& field) {
    if (!j.is_string()) fail(source, field, "expected a string");
    return j.get<std::string>();
}

int get_int(const json& j, const std::string& source, const std::string& field) {
    if (!j.is_number_integer()) fail(source, field, "expected an integer");
    return j.get<int>();
}

Rational get_rational(const json& j, const std::string& source, const std::string& field) {
    std::string s = get_string(j, source, field);
    try {
        return parse_rational(s);
    } catch (const Error& e) {
        fail(source, field, e.what());
    }
}

Exponent get_exponent(const json& j, const std::string& source, const std::string& field) {
    std::string s = get_string(j, source, field);
    try {
        return Exponent::parse(s);
    } catch (const Error& e) {
        fail(source, field, e.what());
    }
}

RatMatrix get_matrix(const json& j, int rows, int cols, const std::string& source) {
    if (!j.is_array() || int(j.size()) != rows)
        fail(source, "matrix", "expected " + std::to_string(rows) + " rows");
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[size_t(r)];
        if (!row.is_array() || int(row.size()) != cols)
            fail(source, "matrix[" + std::to_string(r) + "]",
                 "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m.at(r, c) = get_rational(row[size_t(c)], source,
                                      "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

ExponentVector get_exponents(const json& j, int count, const std::string& source,
                             const std::string& field) {
    if (!j.is_array() || int(j.size()) != count)
        fail(source, field, "expected " + std::to_string(count) + " entries");
    ExponentVector out;
    for (int i = 0; i < count; ++i)
        out.push_back(get_exponent(j[size_t(i)], source, field + "[" + std::to_string(i) + "]"));
    return out;
}

ProbeSpec get_probe(const json& j, const std::string& source) {
    if (!j.is_object()) fail(source, "probe", "expected an object");
    ProbeSpec spec;
    for (const auto& [key, val] : j.items()) {
        if (key == "family") {
            try {
                spec.family = parse_family(get_string(val, source, "probe.family"));
            } catch (const ParseError& e) {
                fail(source, "probe.family", e.what());
            }
        } else if (key == "params") {
            if (!val.is_array()) fail(source, "probe.params", "expected an array");
            for (size_t i = 0; i < val.size(); ++i)
                spec.options.params.push_back(get_rational(
                    val[i], source, "probe.params[" + std::to_string(i) + "]"));
        } else if (key == "grid") {
            if (!val.is_object()) fail(source, "probe.grid", "expected an object");
            for (const auto& [gk, gv] : val.items()) {
                if (gk == "count")
                    spec.options.gridCount = get_int(gv, source, "probe.grid.count");
                else if (gk == "halfwidth")
                    spec.options.gridHalfwidth = get_rational(gv, source, "probe.grid.halfwidth");
                else if (gk == "outCount")
                    spec.options.outCount = get_int(gv, source, "probe.grid.outCount");
                else
                    fail(source, "probe.grid." + gk, "unknown key");
            }
        } else if (key == "seed") {
            if (!val.is_number_unsigned() && !val.is_number_integer())
                fail(source, "probe.seed", "expected an integer");
            spec.options.seed = val.get<uint64_t>();
        } else if (key == "tau") {
            if (!val.is_number()) fail(source, "probe.tau", "expected a number");
            spec.options.tau = val.get<double>();
        } else if (key == "delta0") {
            spec.options.delta0 = get_rational(val, source, "probe.delta0");
        } else if (key == "threads") {
            spec.options.threads = get_int(val, source, "probe.threads");
        } else {
            fail(source, "probe." + key, "unknown key");
        }
    }
    return spec;
}

} // namespace

ProblemSpec parse_problem_text(const std::string& text, const std::string& sourceName) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(sourceName + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(sourceName + ": top level must be an object");

    static const char* known[] = {"kind", "m",      "n",     "matrix", "p",
                                  "q",    "lambda", "probe"};
    for (const auto& [key, val] : j.items()) {
        (void)val;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(sourceName, key, "unknown key");
    }

    if (!j.contains("kind")) fail(sourceName, "kind", "missing");
    ProblemSpec spec;
    spec.kind = get_string(j["kind"], sourceName, "kind");
    if (spec.kind != "T" && spec.kind != "J" && spec.kind != "riesz")
        fail(sourceName, "kind", "expected \"T\", \"J\" or \"riesz\"");

    for (const char* req : {"n", "p", "q", "lambda"})
        if (!j.contains(req)) fail(sourceName, req, "missing");
    int n = get_int(j["n"], sourceName, "n");
    if (n < 1) fail(sourceName, "n", "must be positive");
    Exponent q = get_exponent(j["q"], sourceName, "q");
    Order lambda = [&] {
        try {
            return Order(get_rational(j["lambda"], sourceName, "lambda"));
        } catch (const DomainError& e) {
            fail(sourceName, "lambda", e.what());
        }
    }();

    try {
        if (spec.kind == "riesz") {
            ExponentVector p = get_exponents(j["p"], 1, sourceName, "p");
            spec.rieszN = n;
            spec.rieszP = p[0];
            spec.rieszQ = q;
            spec.rieszLambda = lambda;
        } else {
            if (!j.contains("m")) fail(sourceName, "m", "missing");
            if (!j.contains("matrix")) fail(sourceName, "matrix", "missing");
            int m = get_int(j["m"], sourceName, "m");
            if (m < 1) fail(sourceName, "m", "must be positive");
            if (spec.kind == "T") {
                int d = (m + 1) * n;
                RatMatrix base = get_matrix(j["matrix"], d, d, sourceName);
                ExponentVector p = get_exponents(j["p"], m + 1, sourceName, "p");
                spec.problemT.emplace(m, n, BlockMatrix(BlockKind::T, m, n, base), p, q, lambda);
            } else {
                RatMatrix base = get_matrix(j["matrix"], m * n, n, sourceName);
                ExponentVector p = get_exponents(j["p"], m, sourceName, "p");
                spec.problemJ.emplace(m, n, BlockMatrix(BlockKind::J, m, n, base), p, q, lambda);
            }
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(sourceName + ": " + e.what());
    }

    if (j.contains("probe")) spec.probe = get_probe(j["probe"], sourceName);
    return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str(), path);
}

} // namespace mixfrac
