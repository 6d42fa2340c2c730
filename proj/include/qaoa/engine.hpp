// The three ansatz pipelines and their scalar objectives.
//
//   standard_penalty: uniform init, phase table C + lambda*P, X mixer.
//   xy_dicke:         one-hot product init, phase table C, XY mixer.
//   two_step:         stage 1 = uniform init, phase table P, X mixer;
//                     stage 2 = phase table C, XY mixer, from the stage-1
//                     intermediate state. Joint parameter optimization by
//                     default, sequential per-stage mode on request.
//
// Reported expectation is always <C> on the cost table; the optimizer target
// differs per method (standard_penalty minimizes <C + lambda*P>).
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hamiltonian.hpp"
#include "optimize.hpp"
#include "oracle.hpp"
#include "qubo.hpp"
#include "statevector.hpp"

namespace qaoa {

enum class Method { standard_penalty, xy_dicke, two_step };

inline Method parse_method(const std::string& s) {
    if (s == "standard_penalty") return Method::standard_penalty;
    if (s == "xy_dicke") return Method::xy_dicke;
    if (s == "two_step") return Method::two_step;
    throw std::invalid_argument("unknown method: " + s +
                                " (want standard_penalty, xy_dicke, or two_step)");
}

inline const char* method_name(Method m) {
    switch (m) {
        case Method::standard_penalty: return "standard_penalty";
        case Method::xy_dicke: return "xy_dicke";
        default: return "two_step";
    }
}

struct LayerParams {
    double gamma = 0.0;
    double beta = 0.0;
};

struct AnsatzSpec {
    enum class Stage1Init { uniform, one_hot_product };

    Method method = Method::two_step;
    int p1 = 1;  // stage-1 depth, two_step only
    int p2 = 1;  // stage-2 depth, or the single-stage depth
    double lambda = 1.0;  // standard_penalty only
    Topology topology = Topology::ring;
    bool shared_params = false;      // one (gamma, beta) reused across layers of a stage
    bool sequential_stages = false;  // two_step: optimize stage 1 on <P>, freeze, then stage 2
    bool project_feasible = false;   // two_step diagnostic: post-select intermediate state
    Stage1Init stage1_init = Stage1Init::uniform;
};

struct MixerSpec {
    enum class Kind { x, xy };
    Kind kind = Kind::x;
    std::vector<OneHotGroup> groups;
    Topology topology = Topology::ring;
};

inline void run_layers(StateVector& s, const EnergyTable& t,
                       const std::vector<LayerParams>& layers, const MixerSpec& mixer) {
    for (const auto& l : layers) {
        apply_phase_separator(s, t, l.gamma);
        if (mixer.kind == MixerSpec::Kind::x)
            apply_x_mixer(s, l.beta);
        else
            apply_xy_mixer(s, mixer.groups, l.beta, mixer.topology);
    }
}

/// Cost + one-hot penalties for the given groups; the cost QUBO is kept
/// verbatim, the penalty is built fresh from the groups.
inline ProblemSplit make_split(const QuboProblem& cost, const std::vector<OneHotGroup>& groups,
                               double lambda = 1.0) {
    require_disjoint(groups, cost.n);
    ProblemSplit s;
    s.cost = cost;
    s.groups = groups;
    s.lambda = lambda;
    s.penalty.n = cost.n;
    for (const auto& g : groups) add_scaled(s.penalty, one_hot_penalty(g, cost.n), 1.0);
    return s;
}

inline StateVector stage_one(const ProblemSplit& sp, const std::vector<LayerParams>& params1,
                             AnsatzSpec::Stage1Init init = AnsatzSpec::Stage1Init::uniform) {
    StateVector s = init == AnsatzSpec::Stage1Init::uniform
                        ? init_uniform(sp.cost.n)
                        : init_one_hot_product(sp.cost.n, sp.groups);
    run_layers(s, tabulate(sp.penalty), params1, {MixerSpec::Kind::x, {}, Topology::ring});
    return s;
}

inline void stage_two(StateVector& s, const ProblemSplit& sp,
                      const std::vector<LayerParams>& params2, Topology topology) {
    run_layers(s, tabulate(sp.cost), params2, {MixerSpec::Kind::xy, sp.groups, topology});
}

/// <C> after the full two-stage circuit; theta packs per-layer angles as
/// [g1_1, b1_1, ..., g1_p1, b1_p1, g2_1, b2_1, ..., g2_p2, b2_p2].
inline double two_step_objective(const ProblemSplit& sp, int p1, int p2,
                                 const std::vector<double>& theta, Topology topology) {
    if (p1 < 0 || p2 < 1) throw std::invalid_argument("need p1 >= 0 and p2 >= 1");
    if (theta.size() != static_cast<std::size_t>(2 * (p1 + p2)))
        throw std::invalid_argument("theta length " + std::to_string(theta.size()) +
                                    " does not match 2*(p1+p2) = " +
                                    std::to_string(2 * (p1 + p2)));
    std::vector<LayerParams> l1(p1), l2(p2);
    for (int k = 0; k < p1; ++k) l1[k] = {theta[2 * k], theta[2 * k + 1]};
    for (int k = 0; k < p2; ++k)
        l2[k] = {theta[2 * (p1 + k)], theta[2 * (p1 + k) + 1]};
    StateVector s = stage_one(sp, l1);
    stage_two(s, sp, l2, topology);
    return expectation(s, tabulate(sp.cost));
}

struct RunMetrics {
    double objective_value = 0.0;       // what the optimizer minimized
    double expectation = 0.0;           // <C> on the cost table
    double feasible_expectation = 0.0;  // <C> conditioned on the feasible set
    double feasibility_probability = 0.0;
    double ground_state_probability = 0.0;
    double approximation_ratio = 0.0;
    std::uint64_t best_bitstring = 0;
};

struct RunResult {
    Method method = Method::two_step;
    bool ok = true;
    std::string error;
    std::vector<double> best_params;
    double objective_value = 0.0;
    double expectation = 0.0;
    double feasible_expectation = 0.0;
    double feasibility_probability = 0.0;
    double ground_state_probability = 0.0;
    double approximation_ratio = 0.0;
    std::uint64_t best_bitstring = 0;
    std::size_t optimizer_evals = 0;
    std::size_t param_count = 0;
    std::size_t tuned_quantities = 0;
    double wall_time_s = 0.0;
};

/// One method instance bound to one problem: caches the energy tables and the
/// feasible-set ground truth, and exposes objective / final-state / metrics
/// views over a packed parameter vector.
class MethodPipeline {
  public:
    MethodPipeline(ProblemSplit split, AnsatzSpec spec)
        : split_(std::move(split)), spec_(spec) {
        if (spec_.method != Method::two_step) {
            spec_.p1 = 0;
            spec_.sequential_stages = false;
            spec_.project_feasible = false;
        }
        if (spec_.p1 < 0 || spec_.p2 < 1)
            throw std::invalid_argument("need p1 >= 0 and p2 >= 1");
        if (spec_.method == Method::standard_penalty && !(spec_.lambda > 0.0))
            throw std::invalid_argument("standard_penalty needs lambda > 0");
        if (spec_.method != Method::standard_penalty && split_.groups.empty())
            throw std::invalid_argument(std::string(method_name(spec_.method)) +
                                        " needs at least one one-hot group");
        cost_ = tabulate(split_.cost);
        if (spec_.method != Method::xy_dicke) penalty_ = tabulate(split_.penalty);
        if (spec_.method == Method::standard_penalty) {
            full_ = cost_;
            for (std::size_t z = 0; z < full_.value.size(); ++z)
                full_.value[z] += spec_.lambda * penalty_.value[z];
        }
        truth_ = brute_force_min(cost_, true, split_.groups);
    }

    const AnsatzSpec& spec() const { return spec_; }
    const ProblemSplit& split() const { return split_; }
    const EnergyTable& cost_table() const { return cost_; }
    const GroundTruth& ground_truth() const { return truth_; }

    std::size_t stage1_param_count() const {
        if (spec_.method != Method::two_step || spec_.p1 == 0) return 0;
        return spec_.shared_params ? 2 : 2 * static_cast<std::size_t>(spec_.p1);
    }

    std::size_t stage2_param_count() const {
        return spec_.shared_params ? 2 : 2 * static_cast<std::size_t>(spec_.p2);
    }

    std::size_t param_count() const { return stage1_param_count() + stage2_param_count(); }

    /// Quantities tuned to run the method: the angle vector, plus the penalty
    /// weight for standard_penalty (it has no principled a-priori value).
    std::size_t tuned_quantities() const {
        return param_count() + (spec_.method == Method::standard_penalty ? 1 : 0);
    }

    std::vector<Bounds> bounds() const {
        std::vector<Bounds> b;
        b.reserve(param_count());
        for (std::size_t k = 0; k < param_count() / 2; ++k) {
            b.push_back({0.0, 2.0 * std::numbers::pi});  // gamma
            b.push_back({0.0, std::numbers::pi});        // beta
        }
        return b;
    }

    StateVector final_state(const std::vector<double>& theta) const {
        auto [l1, l2] = expand(theta);
        StateVector s = initial_state();
        if (spec_.method == Method::two_step) {
            run_layers(s, penalty_, l1, {MixerSpec::Kind::x, {}, Topology::ring});
            if (spec_.project_feasible) project_feasible(s, split_.groups);
        }
        run_layers(s, phase_table(), l2, stage2_mixer());
        return s;
    }

    double objective(const std::vector<double>& theta) const {
        return expectation(final_state(theta), objective_table());
    }

    RunMetrics metrics(const std::vector<double>& theta) const {
        return metrics_of(final_state(theta));
    }

    RunMetrics metrics_of(const StateVector& s) const {
        RunMetrics m;
        m.objective_value = expectation(s, objective_table());
        m.expectation = expectation(s, cost_);
        double feas_mass = 0.0, feas_energy = 0.0, ground = 0.0;
        double best_prob = 0.0;
        std::uint64_t best_z = 0;
        bool have_best = false;
        const std::uint64_t dim = std::uint64_t{1} << cost_.n;
        for (std::uint64_t z = 0; z < dim; ++z) {
            if (!is_feasible(z, split_.groups)) continue;
            const double p = std::norm(s.amplitudes[z]);
            feas_mass += p;
            feas_energy += p * cost_.value[z];
            if (cost_.value[z] <= truth_.e_min + 1e-9) ground += p;
            if (!have_best || p > best_prob) {
                best_prob = p;
                best_z = z;
                have_best = true;
            }
        }
        m.feasibility_probability = feas_mass;
        m.feasible_expectation = feas_mass > 0.0
                                     ? feas_energy / feas_mass
                                     : std::numeric_limits<double>::quiet_NaN();
        m.ground_state_probability = ground;
        m.approximation_ratio = approximation_ratio(m.expectation, truth_.e_min, truth_.e_max);
        m.best_bitstring = best_z;
        return m;
    }

    // Sequential-mode pieces: stage 1 is judged on <P>, stage 2 on <C> from a
    // frozen intermediate state.
    StateVector stage1_state(const std::vector<double>& theta1) const {
        require_two_step();
        StateVector s = initial_state();
        run_layers(s, penalty_, stage1_layers(theta1), {MixerSpec::Kind::x, {}, Topology::ring});
        return s;
    }

    double stage1_objective(const std::vector<double>& theta1) const {
        return expectation(stage1_state(theta1), penalty_);
    }

    double stage2_objective_from(const StateVector& intermediate,
                                 const std::vector<double>& theta2) const {
        StateVector s = intermediate;
        run_layers(s, cost_, stage2_layers(theta2), stage2_mixer());
        return expectation(s, cost_);
    }

    std::vector<LayerParams> stage1_layers(const std::vector<double>& theta1) const {
        if (theta1.size() != stage1_param_count())
            throw std::invalid_argument("stage-1 parameter count mismatch");
        return spread_layers(theta1, spec_.p1);
    }

    std::vector<LayerParams> stage2_layers(const std::vector<double>& theta2) const {
        if (theta2.size() != stage2_param_count())
            throw std::invalid_argument("stage-2 parameter count mismatch");
        return spread_layers(theta2, spec_.p2);
    }

  private:
    void require_two_step() const {
        if (spec_.method != Method::two_step)
            throw std::logic_error("stage decomposition applies to two_step only");
    }

    StateVector initial_state() const {
        switch (spec_.method) {
            case Method::standard_penalty:
                return init_uniform(split_.cost.n);
            case Method::xy_dicke:
                return init_one_hot_product(split_.cost.n, split_.groups);
            default:
                return spec_.stage1_init == AnsatzSpec::Stage1Init::uniform
                           ? init_uniform(split_.cost.n)
                           : init_one_hot_product(split_.cost.n, split_.groups);
        }
    }

    const EnergyTable& phase_table() const {
        return spec_.method == Method::standard_penalty ? full_ : cost_;
    }

    const EnergyTable& objective_table() const {
        return spec_.method == Method::standard_penalty ? full_ : cost_;
    }

    MixerSpec stage2_mixer() const {
        if (spec_.method == Method::standard_penalty)
            return {MixerSpec::Kind::x, {}, Topology::ring};
        return {MixerSpec::Kind::xy, split_.groups, spec_.topology};
    }

    // Shared mode reuses one (gamma, beta) across the layers of a stage.
    std::vector<LayerParams> spread_layers(const std::vector<double>& theta, int p) const {
        std::vector<LayerParams> layers(p);
        if (spec_.shared_params) {
            for (int k = 0; k < p; ++k) layers[k] = {theta[0], theta[1]};
        } else {
            for (int k = 0; k < p; ++k) layers[k] = {theta[2 * k], theta[2 * k + 1]};
        }
        return layers;
    }

    std::pair<std::vector<LayerParams>, std::vector<LayerParams>> expand(
        const std::vector<double>& theta) const {
        if (theta.size() != param_count())
            throw std::invalid_argument("parameter vector length " +
                                        std::to_string(theta.size()) + " does not match " +
                                        std::to_string(param_count()));
        const std::size_t n1 = stage1_param_count();
        std::vector<double> t1(theta.begin(), theta.begin() + n1);
        std::vector<double> t2(theta.begin() + n1, theta.end());
        std::vector<LayerParams> l1 =
            spec_.method == Method::two_step && spec_.p1 > 0 ? spread_layers(t1, spec_.p1)
                                                             : std::vector<LayerParams>{};
        return {std::move(l1), spread_layers(t2, spec_.p2)};
    }

    ProblemSplit split_;
    AnsatzSpec spec_;
    EnergyTable cost_;
    EnergyTable penalty_;
    EnergyTable full_;
    GroundTruth truth_;
};

/// Optimizes the method's objective and fills every result metric from the
/// best state found. Optimizer and validation failures come back as ok=false
/// with the message, never as exceptions.
inline RunResult run_method(const ProblemSplit& split, const AnsatzSpec& spec,
                            const OptimizerOptions& opts_in) {
    RunResult r;
    r.method = spec.method;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        MethodPipeline pipe(split, spec);
        OptimizerOptions opts = opts_in;
        if (opts.bounds.empty()) opts.bounds = pipe.bounds();
        if (opts.bounds.size() != pipe.param_count())
            throw std::invalid_argument("bounds dimension does not match parameter count");

        std::vector<double> best;
        std::size_t evals = 0;
        const bool sequential = pipe.spec().sequential_stages && pipe.stage1_param_count() > 0;
        if (sequential) {
            const std::size_t n1 = pipe.stage1_param_count();
            OptimizerOptions o1 = opts;
            o1.bounds.assign(opts.bounds.begin(), opts.bounds.begin() + n1);
            OptResult r1 = multi_start(
                [&](const std::vector<double>& t) { return pipe.stage1_objective(t); }, n1, o1);
            StateVector intermediate = pipe.stage1_state(r1.x);
            if (pipe.spec().project_feasible)
                project_feasible(intermediate, pipe.split().groups);
            OptimizerOptions o2 = opts;
            o2.bounds.assign(opts.bounds.begin() + n1, opts.bounds.end());
            o2.seed = mix_seed(opts.seed, 1);
            OptResult r2 = multi_start(
                [&](const std::vector<double>& t) {
                    return pipe.stage2_objective_from(intermediate, t);
                },
                opts.bounds.size() - n1, o2);
            best = r1.x;
            best.insert(best.end(), r2.x.begin(), r2.x.end());
            evals = r1.evals + r2.evals;
        } else if (opts.algorithm == OptimizerOptions::Algorithm::grid) {
            OptResult g = grid_search(
                [&](const std::vector<double>& t) { return pipe.objective(t); },
                pipe.param_count(), opts.grid_resolution, opts.bounds);
            best = std::move(g.x);
            evals = g.evals;
        } else {
            OptResult m = multi_start(
                [&](const std::vector<double>& t) { return pipe.objective(t); },
                pipe.param_count(), opts);
            best = std::move(m.x);
            evals = m.evals;
        }

        const RunMetrics m = pipe.metrics(best);
        r.best_params = std::move(best);
        r.objective_value = m.objective_value;
        r.expectation = m.expectation;
        r.feasible_expectation = m.feasible_expectation;
        r.feasibility_probability = m.feasibility_probability;
        r.ground_state_probability = m.ground_state_probability;
        r.approximation_ratio = m.approximation_ratio;
        r.best_bitstring = m.best_bitstring;
        r.optimizer_evals = evals;
        r.param_count = pipe.param_count();
        r.tuned_quantities = pipe.tuned_quantities();
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline RunResult run_method(const QuboProblem& cost, const std::vector<OneHotGroup>& groups,
                            const AnsatzSpec& spec, const OptimizerOptions& opts) {
    try {
        return run_method(make_split(cost, groups, spec.lambda), spec, opts);
    } catch (const std::exception& e) {
        RunResult r;
        r.method = spec.method;
        r.ok = false;
        r.error = e.what();
        return r;
    }
}

}  // namespace qaoa
