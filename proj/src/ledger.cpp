#include "bmdist/ledger.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "bmdist/bounds.hpp"
#include "bmdist/certify.hpp"
#include "bmdist/errors.hpp"
#include "bmdist/gauge.hpp"

namespace bmdist {

std::string iso8601_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string matrix_digest(const SquareMatrix& m) {
    std::string canon = std::to_string(m.n);
    char buf[40];
    for (double v : m.entries) {
        std::snprintf(buf, sizeof buf, ";%.17g", v);
        canon += buf;
    }
    return fnv1a_hex(canon);
}

nlohmann::json bound_result_to_json(const BoundResult& b) {
    nlohmann::json j{
        {"type", "bound"},
        {"p", b.p.str()},
        {"n", b.n},
        {"value", b.value},
        {"method", std::string(method_name(b.method))},
        {"certified", b.certified},
    };
    if (b.witness) {
        j["witness"] = {{"n", b.witness->n}, {"entries", b.witness->entries}};
        j["witness_digest"] = matrix_digest(*b.witness);
    }
    return j;
}

BoundResult bound_result_from_json(const nlohmann::json& j) {
    BoundResult b;
    b.p = Exponent::parse(j.at("p").get<std::string>());
    b.n = j.at("n").get<int>();
    b.value = j.at("value").get<double>();
    b.method = method_from_name(j.at("method").get<std::string>());
    b.certified = j.at("certified").get<bool>();
    if (j.contains("witness")) {
        SquareMatrix w;
        w.n = j["witness"].at("n").get<int>();
        w.entries = j["witness"].at("entries").get<std::vector<double>>();
        if (w.entries.size() != static_cast<size_t>(w.n) * w.n)
            throw ParseError("run record: witness entry count does not match n");
        b.witness = std::move(w);
    }
    return b;
}

nlohmann::json run_record_to_json(const RunRecord& r) {
    return nlohmann::json{
        {"timestamp", r.timestamp}, {"command", r.command},       {"parameters", r.parameters},
        {"result", r.result},       {"tool_version", r.tool_version},
    };
}

RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.timestamp = j.at("timestamp").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters");
    r.result = j.at("result");
    r.tool_version = j.at("tool_version").get<std::string>();
    return r;
}

void append_run_record(const std::string& path, const RunRecord& r) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ParseError("cannot open ledger '" + path + "' for append");
    out << run_record_to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_run_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ledger '" + path + "'");
    std::vector<RunRecord> records;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ParseError("ledger line " + std::to_string(lineno) + ": invalid record");
        records.push_back(run_record_from_json(j));
    }
    return records;
}

namespace {

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool reverify_bound(const RunRecord& r) {
    const BoundResult b = bound_result_from_json(r.result);
    if (b.witness) return close_rel(objective(*b.witness, b.p), b.value, 1e-9);
    switch (b.method) {
        case Method::exact:
        case Method::analytic_lp:
        case Method::chained:
            return close_rel(best_upper_bound(b.p).value, b.value, 1e-12);
        case Method::taschuk:
            return close_rel(reference_bound(b.n, ReferenceKind::taschuk), b.value, 1e-12);
        case Method::youssef:
            return close_rel(reference_bound(b.n, ReferenceKind::youssef), b.value, 1e-12);
        case Method::xue_l1:
            return close_rel(reference_bound(b.n, ReferenceKind::xue_l1), b.value, 1e-12);
        case Method::sqrt_pow2:
            return close_rel(reference_bound(b.n, ReferenceKind::sqrt_pow2), b.value, 1e-12);
        default:
            return false;  // witness/optimizer results must carry their witness
    }
}

}  // namespace

bool reverify_record(const RunRecord& r) {
    try {
        const std::string type = r.result.value("type", "");
        if (type == "bound") return reverify_bound(r);
        if (type == "borsuk")
            return close_rel(borsuk_bound(Exponent::parse(r.parameters.at("p").get<std::string>())),
                             r.result.at("value").get<double>(), 1e-12);
        if (type == "certification") {
            const int precision = r.result.at("precision").get<int>();
            return certify_nine_fifths(precision).all_pass == r.result.at("all_pass").get<bool>();
        }
        return false;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace bmdist
