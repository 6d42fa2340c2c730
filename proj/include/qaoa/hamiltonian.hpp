// Diagonal energy tables over computational basis states,
// feasible-set enumeration, and brute-force reference minima.
//
// Bit convention everywhere: variable i is bit i of the basis index z,
// bit 0 the least significant.
#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qubo.hpp"

namespace qaoa {

/// Energies of all 2^n basis states for a diagonal (classical) Hamiltonian.
struct EnergyTable {
    int n = 0;
    std::vector<double> value;
};

/// Direct evaluation of one bitstring, term by term.
inline double energy_of(const QuboProblem& q, std::uint64_t z) {
    double e = q.offset;
    for (const auto& [i, c] : q.linear)
        if (z >> i & 1) e += c;
    for (const auto& [ij, c] : q.quadratic)
        if ((z >> ij.first & 1) && (z >> ij.second & 1)) e += c;
    return e;
}

/// Number of groups whose Hamming weight in z differs from 1.
inline int violation_count(const std::vector<OneHotGroup>& groups, std::uint64_t z) {
    int v = 0;
    for (const auto& g : groups)
        if (std::popcount(z & group_mask(g)) != 1) ++v;
    return v;
}

/// Tabulates E(z) = offset + sum l_i z_i + sum q_ij z_i z_j for every z.
/// Peeling the lowest set bit reuses E(z without that bit), so each state
/// costs one linear term plus the couplings of that bit into the rest.
inline EnergyTable tabulate(const QuboProblem& q) {
    if (q.n <= 0 || q.n > kMaxQubits)
        throw std::invalid_argument("qubit count outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    std::vector<double> lin(q.n, 0.0);
    std::vector<std::vector<double>> quad(q.n, std::vector<double>(q.n, 0.0));
    for (const auto& [i, c] : q.linear) lin[i] = c;
    for (const auto& [ij, c] : q.quadratic)
        quad[ij.first][ij.second] = quad[ij.second][ij.first] = c;

    EnergyTable t;
    t.n = q.n;
    const std::uint64_t dim = std::uint64_t{1} << q.n;
    t.value.resize(dim);
    t.value[0] = q.offset;
    for (std::uint64_t z = 1; z < dim; ++z) {
        const int low = std::countr_zero(z);
        std::uint64_t rest = z & (z - 1);
        double e = t.value[rest] + lin[low];
        while (rest) {
            const int j = std::countr_zero(rest);
            e += quad[low][j];
            rest &= rest - 1;
        }
        t.value[z] = e;
    }
    return t;
}

/// True when z sets exactly one bit in every group.
inline bool is_feasible(std::uint64_t z, const std::vector<OneHotGroup>& groups) {
    for (const auto& g : groups)
        if (std::popcount(z & group_mask(g)) != 1) return false;
    return true;
}

/// All feasible basis indices, ascending. Bits outside every group are free.
inline std::vector<std::uint64_t> feasible_indices(const std::vector<OneHotGroup>& groups,
                                                   int n) {
    require_disjoint(groups, n);
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<std::uint64_t> out;
    for (std::uint64_t z = 0; z < dim; ++z)
        if (is_feasible(z, groups)) out.push_back(z);
    return out;
}

struct BasisEnergy {
    std::uint64_t z = 0;
    double energy = 0.0;
};

/// Minimum-energy entry over the given states; ties pick the smallest index.
inline BasisEnergy brute_force_min(const EnergyTable& t,
                                   const std::vector<std::uint64_t>& states) {
    if (states.empty()) throw std::invalid_argument("empty state set");
    BasisEnergy best{states[0], t.value[states[0]]};
    for (std::uint64_t z : states)
        if (t.value[z] < best.energy) best = {z, t.value[z]};
    return best;
}

/// Minimum over the full basis.
inline BasisEnergy brute_force_min(const EnergyTable& t) {
    BasisEnergy best{0, t.value[0]};
    for (std::uint64_t z = 1; z < t.value.size(); ++z)
        if (t.value[z] < best.energy) best = {z, t.value[z]};
    return best;
}

struct EnergyRange {
    double min = 0.0;
    double max = 0.0;
};

/// Extremes over a state set, for the approximation-ratio denominator.
inline EnergyRange energy_range(const EnergyTable& t,
                                const std::vector<std::uint64_t>& states) {
    if (states.empty()) throw std::invalid_argument("empty state set");
    EnergyRange r{t.value[states[0]], t.value[states[0]]};
    for (std::uint64_t z : states) {
        if (t.value[z] < r.min) r.min = t.value[z];
        if (t.value[z] > r.max) r.max = t.value[z];
    }
    return r;
}

/// Mean energy under the uniform distribution over all basis states.
inline double uniform_mean(const EnergyTable& t) {
    double s = 0.0;
    for (double v : t.value) s += v;
    return s / static_cast<double>(t.value.size());
}

/// Mean energy under the uniform distribution over the given states.
inline double mean_over(const EnergyTable& t, const std::vector<std::uint64_t>& states) {
    if (states.empty()) throw std::invalid_argument("empty state set");
    double s = 0.0;
    for (std::uint64_t z : states) s += t.value[z];
    return s / static_cast<double>(states.size());
}

}  // namespace qaoa
