#include "bmdist/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "bmdist/errors.hpp"
#include "bmdist/gauge.hpp"

namespace bmdist {

double default_feasibility_threshold() noexcept {
    return std::sqrt(2.0 * (std::sqrt(5.0) + 11.0)) / 2.0;
}

void OptimizerConfig::validate() const {
    if (!(nm_reflection > 0.0)) throw ConfigError("nm_reflection must be > 0");
    if (!(nm_expansion > 1.0)) throw ConfigError("nm_expansion must be > 1");
    if (!(nm_contraction > 0.0 && nm_contraction < 1.0)) throw ConfigError("nm_contraction must be in (0, 1)");
    if (!(nm_shrink > 0.0 && nm_shrink < 1.0)) throw ConfigError("nm_shrink must be in (0, 1)");
    if (nm_max_iters <= 0) throw ConfigError("nm_max_iters must be positive");
    if (!(nm_tol >= 0.0)) throw ConfigError("nm_tol must be nonnegative");
    if (pso_swarm <= 0) throw ConfigError("pso_swarm must be positive");
    if (pso_iters < 0) throw ConfigError("pso_iters must be nonnegative");
    if (!(search_box > 0.0)) throw ConfigError("search_box must be > 0");
    if (restarts <= 0) throw ConfigError("restarts must be positive");
    if (!(feasibility_threshold > 1.0)) throw ConfigError("feasibility_threshold must be > 1");
}

namespace {

struct Field {
    const char* key;
    enum class Kind { real, integer, unsigned64 } kind;
    double OptimizerConfig::* real = nullptr;
    long OptimizerConfig::* integer = nullptr;
    int OptimizerConfig::* small = nullptr;
    std::uint64_t OptimizerConfig::* u64 = nullptr;
};

const Field kFields[] = {
    {"nm_reflection", Field::Kind::real, &OptimizerConfig::nm_reflection},
    {"nm_expansion", Field::Kind::real, &OptimizerConfig::nm_expansion},
    {"nm_contraction", Field::Kind::real, &OptimizerConfig::nm_contraction},
    {"nm_shrink", Field::Kind::real, &OptimizerConfig::nm_shrink},
    {"nm_max_iters", Field::Kind::integer, nullptr, &OptimizerConfig::nm_max_iters},
    {"nm_tol", Field::Kind::real, &OptimizerConfig::nm_tol},
    {"pso_swarm", Field::Kind::integer, nullptr, nullptr, &OptimizerConfig::pso_swarm},
    {"pso_iters", Field::Kind::integer, nullptr, &OptimizerConfig::pso_iters},
    {"pso_inertia", Field::Kind::real, &OptimizerConfig::pso_inertia},
    {"pso_cognitive", Field::Kind::real, &OptimizerConfig::pso_cognitive},
    {"pso_social", Field::Kind::real, &OptimizerConfig::pso_social},
    {"search_box", Field::Kind::real, &OptimizerConfig::search_box},
    {"seed", Field::Kind::unsigned64, nullptr, nullptr, nullptr, &OptimizerConfig::seed},
    {"restarts", Field::Kind::integer, nullptr, nullptr, &OptimizerConfig::restarts},
    {"feasibility_threshold", Field::Kind::real, &OptimizerConfig::feasibility_threshold},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void apply_field(OptimizerConfig& cfg, const std::string& key, const std::string& value) {
    for (const Field& f : kFields) {
        if (key != f.key) continue;
        try {
            switch (f.kind) {
                case Field::Kind::real: cfg.*(f.real) = std::stod(value); return;
                case Field::Kind::integer:
                    if (f.integer) cfg.*(f.integer) = std::stol(value);
                    else cfg.*(f.small) = std::stoi(value);
                    return;
                case Field::Kind::unsigned64: cfg.*(f.u64) = std::stoull(value); return;
            }
        } catch (const std::exception&) {
            throw ConfigError("config: bad value '" + value + "' for key '" + key + "'");
        }
    }
    throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

OptimizerConfig parse_optimizer_config(std::istream& in) {
    OptimizerConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_field(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

OptimizerConfig load_optimizer_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_optimizer_config(in);
}

std::string config_canonical(const OptimizerConfig& cfg) {
    std::ostringstream out;
    char buf[64];
    auto real = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g\n", k, v);
        out << buf;
    };
    real("nm_reflection", cfg.nm_reflection);
    real("nm_expansion", cfg.nm_expansion);
    real("nm_contraction", cfg.nm_contraction);
    real("nm_shrink", cfg.nm_shrink);
    out << "nm_max_iters=" << cfg.nm_max_iters << "\n";
    real("nm_tol", cfg.nm_tol);
    out << "pso_swarm=" << cfg.pso_swarm << "\n";
    out << "pso_iters=" << cfg.pso_iters << "\n";
    real("pso_inertia", cfg.pso_inertia);
    real("pso_cognitive", cfg.pso_cognitive);
    real("pso_social", cfg.pso_social);
    real("search_box", cfg.search_box);
    out << "seed=" << cfg.seed << "\n";
    out << "restarts=" << cfg.restarts << "\n";
    real("feasibility_threshold", cfg.feasibility_threshold);
    return out.str();
}

double penalized_objective(std::span<const double> flat, Exponent p) {
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
    if (n < 2 || static_cast<size_t>(n) * n != flat.size())
        throw OutOfRange("penalized_objective: length is not a perfect square >= 4");
    for (double v : flat)
        if (!std::isfinite(v)) return kSingularSentinel;
    const SquareMatrix a{n, std::vector<double>(flat.begin(), flat.end())};
    const GaugeData g = decompose(a);
    if (nearly_singular(g)) return kSingularSentinel;
    const double value = objective(g, p);
    return std::isfinite(value) ? value : kSingularSentinel;
}

namespace {

// Best-ever tracker shared by both optimizers.
struct BestTracker {
    explicit BestTracker(const std::function<double(std::span<const double>)>& fn) : f(&fn) {}

    const std::function<double(std::span<const double>)>* f;
    std::vector<double> point;
    double value = std::numeric_limits<double>::infinity();
    long evaluations = 0;

    double eval(const std::vector<double>& x) {
        ++evaluations;
        const double v = (*f)(x);
        if (v < value) {
            value = v;
            point = x;
        }
        return v;
    }
};

// Deterministic uniform doubles from a fixed engine (53-bit mantissa).
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

}  // namespace

namespace {

// One pass of the standard simplex loop from `start`, spending at most
// `budget` iterations; returns the iterations used.
long nelder_mead_pass(BestTracker& tracker, std::vector<double> start, long budget,
                      long iter_offset, const OptimizerConfig& cfg, NelderMeadOutcome& out) {
    const int dim = static_cast<int>(start.size());

    std::vector<std::vector<double>> xs(static_cast<size_t>(dim) + 1, start);
    for (int i = 0; i < dim; ++i)
        xs[static_cast<size_t>(i) + 1][static_cast<size_t>(i)] +=
            std::max(0.05 * std::abs(start[static_cast<size_t>(i)]), 0.00025);
    std::vector<double> fs;
    fs.reserve(xs.size());
    for (const auto& x : xs) fs.push_back(tracker.eval(x));

    std::vector<size_t> order(xs.size());
    long iter = 0;
    for (iter = 1; iter <= budget; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fs[a] < fs[b]; });
        const size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];

        double diameter = 0.0;
        for (size_t v = 0; v < xs.size(); ++v)
            if (v != lo)
                for (int d = 0; d < dim; ++d)
                    diameter = std::max(diameter, std::abs(xs[v][static_cast<size_t>(d)] -
                                                           xs[lo][static_cast<size_t>(d)]));
        if (diameter <= cfg.nm_tol && fs[hi] - fs[lo] <= cfg.nm_tol) break;

        std::vector<double> centroid(static_cast<size_t>(dim), 0.0);
        for (size_t v = 0; v < xs.size(); ++v)
            if (v != hi)
                for (int d = 0; d < dim; ++d) centroid[static_cast<size_t>(d)] += xs[v][static_cast<size_t>(d)];
        for (double& c : centroid) c /= dim;

        auto blend = [&](double coef) {
            std::vector<double> x(static_cast<size_t>(dim));
            for (int d = 0; d < dim; ++d)
                x[static_cast<size_t>(d)] =
                    centroid[static_cast<size_t>(d)] +
                    coef * (centroid[static_cast<size_t>(d)] - xs[hi][static_cast<size_t>(d)]);
            return x;
        };

        const std::vector<double> xr = blend(cfg.nm_reflection);
        const double fr = tracker.eval(xr);
        bool shrink = false;
        if (fr < fs[lo]) {
            const std::vector<double> xe = blend(cfg.nm_reflection * cfg.nm_expansion);
            const double fe = tracker.eval(xe);
            if (fe < fr) {
                xs[hi] = xe;
                fs[hi] = fe;
            } else {
                xs[hi] = xr;
                fs[hi] = fr;
            }
        } else if (fr < fs[second]) {
            xs[hi] = xr;
            fs[hi] = fr;
        } else if (fr < fs[hi]) {
            const std::vector<double> xc = blend(cfg.nm_reflection * cfg.nm_contraction);
            const double fc = tracker.eval(xc);
            if (fc <= fr) {
                xs[hi] = xc;
                fs[hi] = fc;
            } else {
                shrink = true;
            }
        } else {
            const std::vector<double> xc = blend(-cfg.nm_contraction);
            const double fc = tracker.eval(xc);
            if (fc < fs[hi]) {
                xs[hi] = xc;
                fs[hi] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (size_t v = 0; v < xs.size(); ++v) {
                if (v == lo) continue;
                for (int d = 0; d < dim; ++d)
                    xs[v][static_cast<size_t>(d)] =
                        xs[lo][static_cast<size_t>(d)] +
                        cfg.nm_shrink * (xs[v][static_cast<size_t>(d)] - xs[lo][static_cast<size_t>(d)]);
                fs[v] = tracker.eval(xs[v]);
            }
        }
        out.trace.emplace_back(iter_offset + iter, tracker.value);
    }
    return std::min(iter, budget);
}

}  // namespace

NelderMeadOutcome nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                       std::vector<double> start, const OptimizerConfig& cfg) {
    BestTracker tracker(f);
    NelderMeadOutcome out;
    tracker.eval(start);
    out.trace.emplace_back(0, tracker.value);

    // A converged simplex is often just collapsed, not at a basin floor:
    // re-seed a fresh simplex at the incumbent until the pass stops paying.
    long used = 0;
    double before = tracker.value;
    while (used < cfg.nm_max_iters) {
        used += nelder_mead_pass(tracker, tracker.point, cfg.nm_max_iters - used, used, cfg, out);
        if (tracker.value >= before - std::max(cfg.nm_tol, 1e-12 * std::abs(before))) break;
        before = tracker.value;
    }

    out.best_point = std::move(tracker.point);
    out.best_value = tracker.value;
    out.evaluations = tracker.evaluations;
    out.iterations = used;
    return out;
}

SearchResult nelder_mead(Exponent p, const SquareMatrix& start, const OptimizerConfig& cfg) {
    cfg.validate();
    const std::function<double(std::span<const double>)> f = [p](std::span<const double> x) {
        return penalized_objective(x, p);
    };
    NelderMeadOutcome out = nelder_mead_minimize(f, start.entries, cfg);
    SearchResult r;
    r.best_matrix = matrix_from_flat(std::move(out.best_point));
    r.best_value = out.best_value;
    r.evaluations = out.evaluations;
    r.trace = std::move(out.trace);
    r.seed_used = cfg.seed;
    return r;
}

namespace {

// Swarm attraction uses a ring neighborhood (radius 2) instead of one global
// best: the landscape's good basins are tiny, and a single attractor collapses
// the swarm onto the seeded identity long before it finds them.
constexpr int kRingRadius = 2;

struct SwarmState {
    std::vector<std::vector<double>> pbest;
    std::vector<double> pbest_value;
    long evaluations = 0;
    std::vector<std::pair<long, double>> trace;
};

SwarmState run_swarm(Exponent p, const OptimizerConfig& cfg, int n) {
    const int dim = n * n;
    const double vmax = cfg.search_box / 2.0;
    std::mt19937_64 eng(cfg.seed);

    const int count = cfg.pso_swarm + 1;  // uniform particles plus the identity seed
    std::vector<std::vector<double>> pos(static_cast<size_t>(count)), vel(static_cast<size_t>(count));
    SwarmState s;
    s.pbest.resize(static_cast<size_t>(count));
    s.pbest_value.resize(static_cast<size_t>(count));

    pos[0] = identity_matrix(n).entries;
    vel[0].assign(static_cast<size_t>(dim), 0.0);
    for (int i = 1; i < count; ++i) {
        auto& x = pos[static_cast<size_t>(i)];
        auto& v = vel[static_cast<size_t>(i)];
        x.resize(static_cast<size_t>(dim));
        v.resize(static_cast<size_t>(dim));
        for (int d = 0; d < dim; ++d) x[static_cast<size_t>(d)] = uniform(eng, -cfg.search_box, cfg.search_box);
        for (int d = 0; d < dim; ++d) v[static_cast<size_t>(d)] = uniform(eng, -vmax, vmax);
    }

    double global_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        ++s.evaluations;
        const double value = penalized_objective(pos[static_cast<size_t>(i)], p);
        s.pbest[static_cast<size_t>(i)] = pos[static_cast<size_t>(i)];
        s.pbest_value[static_cast<size_t>(i)] = value;
        global_best = std::min(global_best, value);
    }
    s.trace.emplace_back(0, global_best);

    std::vector<const std::vector<double>*> local_best(static_cast<size_t>(count));
    for (long iter = 1; iter <= cfg.pso_iters; ++iter) {
        for (int i = 0; i < count; ++i) {
            int bi = i;
            for (int off = -kRingRadius; off <= kRingRadius; ++off) {
                const int j = ((i + off) % count + count) % count;
                if (s.pbest_value[static_cast<size_t>(j)] < s.pbest_value[static_cast<size_t>(bi)]) bi = j;
            }
            local_best[static_cast<size_t>(i)] = &s.pbest[static_cast<size_t>(bi)];
        }
        // index order throughout keeps the run reproducible
        for (int i = 0; i < count; ++i) {
            auto& x = pos[static_cast<size_t>(i)];
            auto& v = vel[static_cast<size_t>(i)];
            const auto& pb = s.pbest[static_cast<size_t>(i)];
            const auto& lb = *local_best[static_cast<size_t>(i)];
            for (int d = 0; d < dim; ++d) {
                const double r1 = uniform01(eng), r2 = uniform01(eng);
                double nv = cfg.pso_inertia * v[static_cast<size_t>(d)] +
                            cfg.pso_cognitive * r1 * (pb[static_cast<size_t>(d)] - x[static_cast<size_t>(d)]) +
                            cfg.pso_social * r2 * (lb[static_cast<size_t>(d)] - x[static_cast<size_t>(d)]);
                nv = std::clamp(nv, -vmax, vmax);
                v[static_cast<size_t>(d)] = nv;
                x[static_cast<size_t>(d)] += nv;
            }
            ++s.evaluations;
            const double value = penalized_objective(x, p);
            if (value < s.pbest_value[static_cast<size_t>(i)]) {
                s.pbest_value[static_cast<size_t>(i)] = value;
                s.pbest[static_cast<size_t>(i)] = x;
            }
            global_best = std::min(global_best, value);
        }
        s.trace.emplace_back(iter, global_best);
    }
    return s;
}

std::vector<size_t> order_by_value(const std::vector<double>& values) {
    std::vector<size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    return idx;
}

}  // namespace

SearchResult particle_swarm(Exponent p, const OptimizerConfig& cfg, int n) {
    cfg.validate();
    SwarmState s = run_swarm(p, cfg, n);
    const size_t best = order_by_value(s.pbest_value).front();
    SearchResult r;
    r.best_matrix = matrix_from_flat(std::move(s.pbest[best]));
    r.best_value = s.pbest_value[best];
    r.evaluations = s.evaluations;
    r.trace = std::move(s.trace);
    r.seed_used = cfg.seed;
    return r;
}

BoundResult estimate_distance(Exponent p, const OptimizerConfig& cfg, int n) {
    cfg.validate();
    constexpr int kPolishCandidates = 3;
    BoundResult best;
    best.p = p;
    best.n = n;
    best.method = Method::optimizer;
    best.value = std::numeric_limits<double>::infinity();
    auto offer = [&](double value, const SquareMatrix& witness) {
        if (value <= cfg.feasibility_threshold && value < best.value) {
            best.value = value;
            best.witness = witness;
        }
    };
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        OptimizerConfig sub = cfg;
        sub.seed = cfg.seed + static_cast<std::uint64_t>(restart);
        SwarmState s = run_swarm(p, sub, n);
        const std::vector<size_t> order = order_by_value(s.pbest_value);
        for (int k = 0; k < kPolishCandidates && k < static_cast<int>(order.size()); ++k) {
            const size_t i = order[static_cast<size_t>(k)];
            if (s.pbest_value[i] >= kSingularSentinel) break;
            offer(s.pbest_value[i], matrix_from_flat(s.pbest[i]));
            const SearchResult polished = nelder_mead(p, matrix_from_flat(s.pbest[i]), sub);
            offer(polished.best_value, polished.best_matrix);
        }
    }
    if (!best.witness)
        throw InfeasibleSearch("estimate_distance: every restart exceeded the feasibility threshold");
    return best;
}

}  // namespace bmdist
