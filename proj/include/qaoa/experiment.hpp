// Instance generation, flat key=value experiment configs,
// and the sweep runner that emits deterministic CSV reports.
//
// Reproducibility contract: a config file and binary version determine the
// CSV byte-exactly. Rows are computed by a worker pool but buffered and
// written in config order; every run-affecting random draw comes from seeds
// derived with mix_seed, and timing is reported as 0 unless record_timing
// is switched on (measured timings would break byte-identical reruns).
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "qubo.hpp"
#include "rng.hpp"
#include "version.hpp"

namespace qaoa {

struct CostDistribution {
    enum class Kind { uniform, integer };
    Kind kind = Kind::uniform;
    double lo = 0.0;
    double hi = 1.0;
};

struct GeneratorSpec {
    std::vector<int> group_sizes;
    CostDistribution cost;
    int extra_free_vars = 0;
    std::uint64_t seed = 1;
};

/// Random assignment-style instance: consecutive index blocks form the
/// one-hot groups, every variable gets a linear cost, and every cross-group
/// pair (free variables included) gets a quadratic coupling. Draw order is
/// fixed (linear by index, pairs lexicographic), so one seed fixes the QUBO.
inline std::pair<QuboProblem, std::vector<OneHotGroup>> generate_instance(
    const GeneratorSpec& spec) {
    if (spec.group_sizes.empty()) throw std::invalid_argument("generator needs group sizes");
    int n = spec.extra_free_vars;
    if (n < 0) throw std::invalid_argument("extra_free_vars must be >= 0");
    std::vector<OneHotGroup> groups;
    int next = 0;
    for (int sz : spec.group_sizes) {
        if (sz < 2) throw std::invalid_argument("group size must be >= 2");
        OneHotGroup g;
        for (int k = 0; k < sz; ++k) g.indices.push_back(next++);
        groups.push_back(std::move(g));
        n += sz;
    }
    if (n > kMaxQubits)
        throw std::invalid_argument("generated instance needs " + std::to_string(n) +
                                    " variables; cap is " + std::to_string(kMaxQubits));
    std::mt19937_64 rng(spec.seed);
    const auto draw = [&] {
        const double u = uniform_unit(rng);
        if (spec.cost.kind == CostDistribution::Kind::uniform)
            return spec.cost.lo + u * (spec.cost.hi - spec.cost.lo);
        // Integer endpoints inclusive.
        return std::floor(spec.cost.lo + u * (spec.cost.hi - spec.cost.lo + 1.0));
    };
    std::vector<int> group_of(n, -1);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (int i : groups[g].indices) group_of[i] = static_cast<int>(g);

    std::vector<std::tuple<int, int, double>> terms;
    for (int i = 0; i < n; ++i) terms.emplace_back(i, i, draw());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (group_of[i] >= 0 && group_of[i] == group_of[j]) continue;
            terms.emplace_back(i, j, draw());
        }
    return {build_qubo(n, terms), std::move(groups)};
}

struct Instance {
    std::string id;
    QuboProblem cost;
    std::vector<OneHotGroup> groups;
};

struct ExperimentConfig {
    // Instance source: a QUBO file (optionally with groups or detection), or
    // the generator when qubo_path is empty.
    std::string qubo_path;
    std::string groups_path;
    bool detect = false;
    std::vector<int> generate_sizes;
    CostDistribution cost_dist;
    int extra_free_vars = 0;
    int instances = 1;

    std::vector<Method> methods;
    int p1 = 1;
    int p2 = 1;
    std::vector<double> lambdas{1.0};
    Topology topology = Topology::ring;
    bool shared_params = false;
    bool sequential_stages = false;
    bool project_feasible = false;
    AnsatzSpec::Stage1Init stage1_init = AnsatzSpec::Stage1Init::uniform;

    OptimizerOptions optimizer;
    std::uint64_t seed = 1;
    std::string out_path;
    bool record_timing = false;
};

namespace detail {

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw std::runtime_error("key " + key + " wants a boolean, got: " + v);
}

inline std::vector<std::string> split_ws(const std::string& v) {
    std::istringstream is(v);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Flat `key = value` lines with `#` comments. Unknown keys are errors so a
/// typo cannot silently fall back to a default.
inline ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>") {
    ExperimentConfig cfg;
    cfg.methods = {Method::standard_penalty, Method::xy_dicke, Method::two_step};
    std::string line;
    int lineno = 0;
    bool lambdas_set = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fail = [&](const std::string& what) -> std::runtime_error {
            return std::runtime_error(source + ":" + std::to_string(lineno) + ": " + what);
        };
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw fail("expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));
        if (key.empty() || val.empty()) throw fail("expected key = value");
        try {
            if (key == "qubo") cfg.qubo_path = val;
            else if (key == "groups") cfg.groups_path = val;
            else if (key == "detect") cfg.detect = detail::parse_bool(val, key);
            else if (key == "generate") {
                for (const auto& tok : detail::split_ws(val))
                    cfg.generate_sizes.push_back(std::stoi(tok));
            } else if (key == "cost_distribution") {
                if (val == "uniform") cfg.cost_dist.kind = CostDistribution::Kind::uniform;
                else if (val == "integer") cfg.cost_dist.kind = CostDistribution::Kind::integer;
                else throw fail("cost_distribution wants uniform or integer");
            } else if (key == "cost_lo") cfg.cost_dist.lo = std::stod(val);
            else if (key == "cost_hi") cfg.cost_dist.hi = std::stod(val);
            else if (key == "extra_free_vars") cfg.extra_free_vars = std::stoi(val);
            else if (key == "instances") cfg.instances = std::stoi(val);
            else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& tok : detail::split_ws(val))
                    cfg.methods.push_back(parse_method(tok));
            } else if (key == "p1") cfg.p1 = std::stoi(val);
            else if (key == "p2") cfg.p2 = std::stoi(val);
            else if (key == "lambda") {
                cfg.lambdas.clear();
                for (const auto& tok : detail::split_ws(val))
                    cfg.lambdas.push_back(std::stod(tok));
                lambdas_set = true;
            } else if (key == "topology") cfg.topology = parse_topology(val);
            else if (key == "shared_params") cfg.shared_params = detail::parse_bool(val, key);
            else if (key == "sequential_stages")
                cfg.sequential_stages = detail::parse_bool(val, key);
            else if (key == "project_feasible")
                cfg.project_feasible = detail::parse_bool(val, key);
            else if (key == "stage1_init") {
                if (val == "uniform") cfg.stage1_init = AnsatzSpec::Stage1Init::uniform;
                else if (val == "dicke") cfg.stage1_init = AnsatzSpec::Stage1Init::one_hot_product;
                else throw fail("stage1_init wants uniform or dicke");
            } else if (key == "optimizer") {
                if (val == "nelder_mead")
                    cfg.optimizer.algorithm = OptimizerOptions::Algorithm::nelder_mead;
                else if (val == "grid") cfg.optimizer.algorithm = OptimizerOptions::Algorithm::grid;
                else throw fail("optimizer wants nelder_mead or grid");
            } else if (key == "n_starts") cfg.optimizer.n_starts = std::stoi(val);
            else if (key == "max_evals") cfg.optimizer.max_evals = std::stoul(val);
            else if (key == "f_tol") cfg.optimizer.f_tol = std::stod(val);
            else if (key == "x_tol") cfg.optimizer.x_tol = std::stod(val);
            else if (key == "grid_resolution") cfg.optimizer.grid_resolution = std::stoul(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "out") cfg.out_path = val;
            else if (key == "record_timing") cfg.record_timing = detail::parse_bool(val, key);
            else throw fail("unknown key: " + key);
        } catch (const std::invalid_argument& e) {
            throw fail(std::string(e.what()));
        } catch (const std::out_of_range&) {
            throw fail("value out of range: " + val);
        }
    }
    if (cfg.methods.empty()) throw std::runtime_error(source + ": methods list is empty");
    if (!lambdas_set) cfg.lambdas = {1.0};
    if (cfg.instances < 1) throw std::runtime_error(source + ": instances must be >= 1");
    if (cfg.qubo_path.empty() && cfg.generate_sizes.empty())
        throw std::runtime_error(source + ": need either qubo = <path> or generate = <sizes>");
    return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in, path);
}

inline std::string path_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base.erase(dot);
    return base;
}

/// Materializes the instance list: one file-backed instance, or `instances`
/// generated ones with per-instance seeds cfg.seed + k.
inline std::vector<Instance> load_instances(const ExperimentConfig& cfg) {
    std::vector<Instance> out;
    if (!cfg.qubo_path.empty()) {
        Instance inst;
        inst.id = path_stem(cfg.qubo_path);
        QuboProblem q = read_qubo_file(cfg.qubo_path);
        if (cfg.detect) {
            auto [groups, scale] = detect_one_hot_groups(q);
            if (groups.empty())
                throw std::runtime_error("no one-hot structure detected in " + cfg.qubo_path);
            ProblemSplit split = split_cost_and_constraints(q, groups, scale);
            inst.cost = std::move(split.cost);
            inst.groups = std::move(split.groups);
        } else {
            inst.cost = std::move(q);
            if (!cfg.groups_path.empty()) inst.groups = read_groups_file(cfg.groups_path);
        }
        out.push_back(std::move(inst));
        return out;
    }
    for (int k = 0; k < cfg.instances; ++k) {
        GeneratorSpec gs;
        gs.group_sizes = cfg.generate_sizes;
        gs.cost = cfg.cost_dist;
        gs.extra_free_vars = cfg.extra_free_vars;
        gs.seed = cfg.seed + static_cast<std::uint64_t>(k);
        auto [q, groups] = generate_instance(gs);
        out.push_back({"gen" + std::to_string(k), std::move(q), std::move(groups)});
    }
    return out;
}

namespace detail {

inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

inline std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

struct RowSpec {
    std::size_t instance = 0;
    Method method = Method::two_step;
    double lambda = 0.0;
    std::uint64_t seed = 0;
};

inline unsigned worker_count(std::size_t rows) {
    unsigned w = std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    if (const char* env = std::getenv("QAOA_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 4096) w = static_cast<unsigned>(v);
    }
    if (w > rows) w = static_cast<unsigned>(rows);
    return w == 0 ? 1 : w;
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "instance_id,method,p1,p2,lambda,topology,expectation,feasible_expectation,"
    "feasibility_probability,ground_state_probability,approximation_ratio,"
    "optimizer_evals,wall_time_s,seed,status";

/// Runs the sweep and writes the CSV report. One row per (instance, method,
/// lambda for standard_penalty); failures become rows with a status message
/// instead of aborting the sweep.
inline void run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
    const std::vector<Instance> instances = load_instances(cfg);

    std::vector<detail::RowSpec> rows;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (Method m : cfg.methods) {
            if (m == Method::standard_penalty) {
                for (double lam : cfg.lambdas) rows.push_back({i, m, lam, 0});
            } else {
                rows.push_back({i, m, 0.0, 0});
            }
        }
    for (std::size_t r = 0; r < rows.size(); ++r)
        rows[r].seed = mix_seed(cfg.seed, r);

    const auto run_row = [&](const detail::RowSpec& row) {
        const Instance& inst = instances[row.instance];
        AnsatzSpec spec;
        spec.method = row.method;
        spec.p1 = cfg.p1;
        spec.p2 = cfg.p2;
        spec.lambda = row.method == Method::standard_penalty ? row.lambda : 1.0;
        spec.topology = cfg.topology;
        spec.shared_params = cfg.shared_params;
        spec.sequential_stages = cfg.sequential_stages;
        spec.project_feasible = cfg.project_feasible;
        spec.stage1_init = cfg.stage1_init;
        OptimizerOptions opts = cfg.optimizer;
        opts.seed = row.seed;
        const RunResult r = run_method(inst.cost, inst.groups, spec, opts);

        std::ostringstream os;
        os << detail::csv_safe(inst.id) << "," << method_name(row.method) << ","
           << (row.method == Method::two_step ? cfg.p1 : 0) << "," << cfg.p2 << ","
           << detail::format_sig12(row.lambda) << "," << topology_name(cfg.topology) << ","
           << detail::format_sig12(r.expectation) << ","
           << detail::format_sig12(r.feasible_expectation) << ","
           << detail::format_sig12(r.feasibility_probability) << ","
           << detail::format_sig12(r.ground_state_probability) << ","
           << detail::format_sig12(r.approximation_ratio) << "," << r.optimizer_evals << ","
           << detail::format_sig12(cfg.record_timing ? r.wall_time_s : 0.0) << ","
           << row.seed << "," << (r.ok ? "ok" : "error: " + detail::csv_safe(r.error));
        return os.str();
    };

    std::vector<std::string> lines(rows.size());
    const unsigned workers = detail::worker_count(rows.size());
    if (workers <= 1) {
        for (std::size_t r = 0; r < rows.size(); ++r) lines[r] = run_row(rows[r]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t r = next.fetch_add(1);
                    if (r >= rows.size()) return;
                    lines[r] = run_row(rows[r]);
                }
            });
        for (auto& t : pool) t.join();
    }

    out << "# version=" << kVersion << "\n" << kCsvHeader << "\n";
    for (const auto& l : lines) out << l << "\n";
}

inline void run_experiment_to_file(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    run_experiment(cfg, out);
}

}  // namespace qaoa
