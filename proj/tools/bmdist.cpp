// Command-line front end: evaluates g_p(A) for matrices, searches for good
// witnesses, prints certified and closed-form bounds on d(p), and appends
// re-verifiable run records to a ledger.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bmdist/bounds.hpp"
#include "bmdist/certify.hpp"
#include "bmdist/errors.hpp"
#include "bmdist/gauge.hpp"
#include "bmdist/ledger.hpp"
#include "bmdist/matrix_io.hpp"
#include "bmdist/optimizer.hpp"
#include "bmdist/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSingular = 3;
constexpr int kExitTolerance = 4;

// d(p) estimates used as reproduction targets by the table command
const std::vector<std::pair<double, double>> kReferenceEstimates = {
    {1.0, 1.8000}, {1.2, 1.71533}, {1.4, 1.67744},
    {1.6, 1.67601}, {1.8, 1.69732}, {2.0, 1.73205},
};

struct Options {
    std::string ledger_path;
    bool json = false;

    std::string matrix_file;
    std::string p_text = "2";
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    int precision = 128;
    std::vector<std::string> p_list;
    double sweep_from = 1.0;
    double sweep_to = 2.0;
    double sweep_step = 1e-3;
    std::string out_file;
};

bmdist::OptimizerConfig make_config(const Options& opt) {
    bmdist::OptimizerConfig cfg;
    if (!opt.config_file.empty()) cfg = bmdist::load_optimizer_config(opt.config_file);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.restarts) cfg.restarts = *opt.restarts;
    cfg.validate();
    return cfg;
}

void persist(const Options& opt, const std::string& command, nlohmann::json parameters,
             nlohmann::json result) {
    if (opt.ledger_path.empty()) return;
    bmdist::RunRecord record;
    record.timestamp = bmdist::iso8601_utc_now();
    record.command = command;
    record.parameters = std::move(parameters);
    record.result = std::move(result);
    record.tool_version = bmdist::kToolVersion;
    bmdist::append_run_record(opt.ledger_path, record);
}

void print_bound(const Options& opt, const bmdist::BoundResult& b) {
    if (opt.json) {
        std::cout << bmdist::bound_result_to_json(b).dump(2) << "\n";
        return;
    }
    if (b.p.is_infinite())
        std::printf("p          = inf\n");
    else
        std::printf("p          = %.10g\n", b.p.value());
    std::printf("bound      = %.10g\n", b.value);
    std::printf("method     = %s\n", std::string(bmdist::method_name(b.method)).c_str());
    std::printf("certified  = %s\n", b.certified ? "true" : "false");
    if (b.witness) {
        std::printf("witness    (digest %s)\n", bmdist::matrix_digest(*b.witness).c_str());
        for (int i = 0; i < b.witness->n; ++i) {
            std::printf("  ");
            for (int j = 0; j < b.witness->n; ++j) std::printf(" %.10g", b.witness->at(i, j));
            std::printf("\n");
        }
    }
}

int cmd_eval(const Options& opt) {
    const bmdist::ParsedMatrix parsed = bmdist::read_matrix_file(opt.matrix_file);
    const bmdist::SquareMatrix a = bmdist::to_square(parsed);
    const bmdist::Exponent p = bmdist::Exponent::parse(opt.p_text);
    const bmdist::GaugeData g = bmdist::decompose(a);
    if (bmdist::nearly_singular(g)) {
        std::fprintf(stderr, "error: matrix is singular (det = %.10g)\n", g.det);
        return kExitSingular;
    }
    const bmdist::GaugePair gp = bmdist::gauges(g, p);
    std::printf("objective = %.10g\n", bmdist::objective(g, p));
    std::printf("gamma1    = %.10g\n", gp.gamma1);
    std::printf("gamma2    = %.10g\n", gp.gamma2);
    std::printf("det       = %.10g\n", g.det);
    return kExitOk;
}

int cmd_optimize(const Options& opt) {
    const bmdist::Exponent p = bmdist::Exponent::parse(opt.p_text);
    const bmdist::OptimizerConfig cfg = make_config(opt);
    const bmdist::BoundResult b = bmdist::estimate_distance(p, cfg);
    print_bound(opt, b);
    persist(opt, "optimize",
            {{"p", p.str()},
             {"n", 3},
             {"seed", cfg.seed},
             {"config_digest", bmdist::fnv1a_hex(bmdist::config_canonical(cfg))}},
            bmdist::bound_result_to_json(b));
    return kExitOk;
}

int cmd_bound(const Options& opt) {
    const bmdist::Exponent p = bmdist::Exponent::parse(opt.p_text);
    const bmdist::BoundResult b = bmdist::best_upper_bound(p);
    print_bound(opt, b);
    persist(opt, "bound", {{"p", p.str()}, {"n", 3}}, bmdist::bound_result_to_json(b));
    return kExitOk;
}

int cmd_borsuk(const Options& opt) {
    const bmdist::Exponent p = bmdist::Exponent::parse(opt.p_text);
    const double piece = bmdist::borsuk_bound(p);
    if (opt.json)
        std::cout << nlohmann::json{{"type", "borsuk"}, {"p", p.str()}, {"pieces", 8}, {"value", piece}}
                         .dump(2)
                  << "\n";
    else
        std::printf("piece diameter bound (8 pieces) = %.10g\n", piece);
    persist(opt, "borsuk", {{"p", p.str()}, {"n", 3}},
            {{"type", "borsuk"}, {"p", p.str()}, {"pieces", 8}, {"value", piece}});
    return kExitOk;
}

nlohmann::json report_to_json(const bmdist::CertificationReport& report) {
    nlohmann::json links = nlohmann::json::array();
    for (const auto& link : report.links)
        links.push_back({{"name", link.name},
                         {"detail", link.detail},
                         {"lo", link.enclosure.lo_str},
                         {"hi", link.enclosure.hi_str},
                         {"threshold", link.threshold_str},
                         {"pass", link.pass}});
    return {{"type", "certification"},
            {"precision", report.precision},
            {"links", links},
            {"all_pass", report.all_pass}};
}

int cmd_certify(const Options& opt) {
    const bmdist::CertificationReport report = bmdist::certify_nine_fifths(opt.precision);
    if (opt.json)
        std::cout << report_to_json(report).dump(2) << "\n";
    else
        std::cout << bmdist::report_to_text(report);
    persist(opt, "certify", {{"precision", opt.precision}}, report_to_json(report));
    return report.all_pass ? kExitOk : kExitTolerance;
}

int cmd_table(const Options& opt) {
    const bmdist::OptimizerConfig cfg = make_config(opt);
    std::vector<std::pair<double, double>> rows;
    if (opt.p_list.empty()) {
        rows = kReferenceEstimates;
    } else {
        for (const std::string& text : opt.p_list) {
            const double p = bmdist::Exponent::parse(text).value();
            double target = 0.0;
            for (const auto& [rp, rt] : kReferenceEstimates)
                if (rp == p) target = rt;
            if (target == 0.0) throw bmdist::OutOfRange("table: no reference estimate for p = " + text);
            rows.emplace_back(p, target);
        }
    }

    std::printf("p,value,method,certified,witness_digest,target,gap\n");
    bool within = true;
    for (const auto& [pv, target] : rows) {
        const bmdist::Exponent p(pv);
        std::string digest;
        double value = 0.0;
        bool feasible = true;
        try {
            const bmdist::BoundResult b = bmdist::estimate_distance(p, cfg);
            value = b.value;
            digest = b.witness ? bmdist::matrix_digest(*b.witness) : "";
            persist(opt, "table",
                    {{"p", p.str()},
                     {"n", 3},
                     {"seed", cfg.seed},
                     {"config_digest", bmdist::fnv1a_hex(bmdist::config_canonical(cfg))},
                     {"target", target}},
                    bmdist::bound_result_to_json(b));
        } catch (const bmdist::InfeasibleSearch&) {
            feasible = false;
        }
        const double gap = feasible ? value - target : std::numeric_limits<double>::infinity();
        if (!(gap <= 5e-3)) within = false;
        std::printf("%.4g,%.10g,optimizer,false,%s,%.6g,%.4g\n", pv, value, digest.c_str(), target,
                    gap);
    }
    return within ? kExitOk : kExitTolerance;
}

int cmd_sweep(const Options& opt) {
    std::vector<bmdist::Exponent> grid;
    if (!opt.p_list.empty()) {
        for (const std::string& text : opt.p_list) grid.push_back(bmdist::Exponent::parse(text));
    } else {
        if (!(opt.sweep_step > 0.0) || opt.sweep_to < opt.sweep_from)
            throw bmdist::OutOfRange("sweep: need from <= to and step > 0");
        const long count = std::lround((opt.sweep_to - opt.sweep_from) / opt.sweep_step);
        for (long k = 0; k <= count; ++k)
            grid.push_back(bmdist::Exponent(
                k == count ? opt.sweep_to : opt.sweep_from + static_cast<double>(k) * opt.sweep_step));
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opt.out_file.empty()) {
        file.open(opt.out_file);
        if (!file) throw bmdist::ParseError("cannot open '" + opt.out_file + "' for writing");
        out = &file;
    }
    *out << "p,value,method,certified,witness_digest\n";
    char buf[64];
    for (const bmdist::Exponent p : grid) {
        const bmdist::BoundResult b = bmdist::best_upper_bound(p);
        std::snprintf(buf, sizeof buf, "%.12g", b.value);
        *out << p.str() << ',' << buf << ',' << bmdist::method_name(b.method) << ','
             << (b.certified ? "true" : "false") << ','
             << (b.witness ? bmdist::matrix_digest(*b.witness) : "") << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"upper bounds on the Banach-Mazur distance d(l_p^3, l_inf^3)"};
    app.require_subcommand(1);
    app.fallthrough();  // global options (--ledger) may follow the subcommand

    Options opt;
    if (const char* env = std::getenv("BMDIST_LEDGER")) opt.ledger_path = env;
    app.add_option("--ledger", opt.ledger_path, "append run records to this file (JSON lines)");

    CLI::App* eval = app.add_subcommand("eval", "evaluate g_p(A) for a matrix file");
    eval->add_option("matrix", opt.matrix_file, "matrix file: n, then n^2 entries")->required();
    eval->add_option("--p", opt.p_text, "exponent in [1, inf]; 'inf' and 'oo' accepted")->required();

    CLI::App* optimize = app.add_subcommand("optimize", "search for a witness minimizing g_p");
    optimize->add_option("--p", opt.p_text)->required();
    optimize->add_option("--config", opt.config_file, "optimizer config file (key = value lines)");
    optimize->add_option("--seed", opt.seed);
    optimize->add_option("--restarts", opt.restarts);
    optimize->add_flag("--json", opt.json);

    CLI::App* bound = app.add_subcommand("bound", "best proven upper bound on d(p)");
    bound->add_option("--p", opt.p_text)->required();
    bound->add_flag("--json", opt.json);

    CLI::App* borsuk = app.add_subcommand("borsuk", "8-piece partition diameter bound in l_p^3");
    borsuk->add_option("--p", opt.p_text)->required();
    borsuk->add_flag("--json", opt.json);

    CLI::App* certify = app.add_subcommand("certify", "rigorously certify the 9/5 bound chain");
    certify->add_option("--precision", opt.precision, "working precision in bits")
        ->check(CLI::Range(2, 1 << 20));
    certify->add_flag("--json", opt.json);

    CLI::App* table = app.add_subcommand("table", "reproduce the reference estimates of d(p)");
    table->add_option("--config", opt.config_file);
    table->add_option("--seed", opt.seed);
    table->add_option("--restarts", opt.restarts);
    table->add_option("--p-list", opt.p_list, "restrict to these p values")->delimiter(',');

    CLI::App* sweep = app.add_subcommand("sweep", "CSV of best bounds over a grid of p");
    sweep->add_option("--from", opt.sweep_from);
    sweep->add_option("--to", opt.sweep_to);
    sweep->add_option("--step", opt.sweep_step);
    sweep->add_option("--p-list", opt.p_list, "explicit p values instead of a range")->delimiter(',');
    sweep->add_option("--out", opt.out_file, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(opt);
        if (optimize->parsed()) return cmd_optimize(opt);
        if (bound->parsed()) return cmd_bound(opt);
        if (borsuk->parsed()) return cmd_borsuk(opt);
        if (certify->parsed()) return cmd_certify(opt);
        if (table->parsed()) return cmd_table(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
    } catch (const bmdist::SingularMatrix& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSingular;
    } catch (const bmdist::InfeasibleSearch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitTolerance;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
