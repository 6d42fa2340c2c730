// Exact statevector kernels: initial states, phase
// separator, X mixer, XY mixer, expectation, probability mass, sampling.
//
// Kernels mutate in place; callers copy when they need the input preserved.
// All loops are serial so results are bitwise reproducible.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamiltonian.hpp"
#include "qubo.hpp"
#include "rng.hpp"

namespace qaoa {

using cx = std::complex<double>;

struct StateVector {
    int n = 0;
    std::vector<cx> amplitudes;
};

enum class Topology { ring, complete };

inline Topology parse_topology(const std::string& s) {
    if (s == "ring") return Topology::ring;
    if (s == "complete") return Topology::complete;
    throw std::invalid_argument("unknown topology: " + s + " (want ring or complete)");
}

inline const char* topology_name(Topology t) {
    return t == Topology::ring ? "ring" : "complete";
}

inline void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("qubit count " + std::to_string(n) +
                                    " outside [1, " + std::to_string(kMaxQubits) + "]");
}

inline StateVector init_uniform(int n) {
    check_qubit_count(n);
    StateVector s;
    s.n = n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    s.amplitudes.assign(dim, cx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return s;
}

inline StateVector init_basis(int n, std::uint64_t z) {
    check_qubit_count(n);
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (z >= dim) throw std::invalid_argument("basis index out of range");
    StateVector s;
    s.n = n;
    s.amplitudes.assign(dim, cx(0.0, 0.0));
    s.amplitudes[z] = cx(1.0, 0.0);
    return s;
}

/// Product of single-excitation (W) states, one per group; qubits outside
/// every group stay |0>. Support is exactly the feasible set restricted to
/// zero free bits, amplitude 1/sqrt(prod |g|).
inline StateVector init_one_hot_product(int n, const std::vector<OneHotGroup>& groups) {
    check_qubit_count(n);
    require_disjoint(groups, n);
    if (groups.empty()) throw std::invalid_argument("one-hot product needs a group");
    StateVector s;
    s.n = n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    s.amplitudes.assign(dim, cx(0.0, 0.0));
    double norm2 = 1.0;
    for (const auto& g : groups) norm2 *= static_cast<double>(g.indices.size());
    const double a = 1.0 / std::sqrt(norm2);
    // Odometer over one chosen index per group.
    std::vector<std::size_t> pick(groups.size(), 0);
    for (;;) {
        std::uint64_t z = 0;
        for (std::size_t g = 0; g < groups.size(); ++g)
            z |= std::uint64_t{1} << groups[g].indices[pick[g]];
        s.amplitudes[z] = cx(a, 0.0);
        std::size_t g = 0;
        while (g < groups.size() && ++pick[g] == groups[g].indices.size()) pick[g++] = 0;
        if (g == groups.size()) break;
    }
    return s;
}

inline double norm(const StateVector& s) {
    double t = 0.0;
    for (const cx& a : s.amplitudes) t += std::norm(a);
    return std::sqrt(t);
}

inline void apply_phase_separator(StateVector& s, const EnergyTable& t, double gamma) {
    if (t.n != s.n) throw std::invalid_argument("energy table / state dimension mismatch");
    const std::uint64_t dim = std::uint64_t{1} << s.n;
    for (std::uint64_t z = 0; z < dim; ++z)
        s.amplitudes[z] *= std::polar(1.0, -gamma * t.value[z]);
}

/// e^{-i beta X} on every qubit.
inline void apply_x_mixer(StateVector& s, double beta) {
    const double c = std::cos(beta);
    const double sn = std::sin(beta);
    const cx mis(0.0, -sn);
    const std::uint64_t half = std::uint64_t{1} << (s.n - 1);
    for (int q = 0; q < s.n; ++q) {
        const std::uint64_t mask = std::uint64_t{1} << q;
        const std::uint64_t lo = mask - 1;
        const std::uint64_t hi = ~lo;
        for (std::uint64_t k = 0; k < half; ++k) {
            const std::uint64_t i0 = ((k & hi) << 1) | (k & lo);
            const std::uint64_t i1 = i0 | mask;
            const cx a0 = s.amplitudes[i0];
            const cx a1 = s.amplitudes[i1];
            s.amplitudes[i0] = c * a0 + mis * a1;
            s.amplitudes[i1] = c * a1 + mis * a0;
        }
    }
}

/// e^{-i beta (X_i X_j + Y_i Y_j)/2}: rotates the {|01>,|10>} subspace of the
/// pair, leaves |00> and |11> alone.
inline void apply_xy_pair(StateVector& s, int i, int j, double beta) {
    if (i == j) throw std::invalid_argument("xy pair needs distinct qubits");
    check_index(i, s.n);
    check_index(j, s.n);
    const int p = std::min(i, j);
    const int r = std::max(i, j);
    const double c = std::cos(beta);
    const cx mis(0.0, -std::sin(beta));
    const std::uint64_t mp = std::uint64_t{1} << p;
    const std::uint64_t mr = std::uint64_t{1} << r;
    const std::uint64_t lop = mp - 1;
    const std::uint64_t lor = mr - 1;
    const std::uint64_t quarter = std::uint64_t{1} << (s.n - 2);
    for (std::uint64_t k = 0; k < quarter; ++k) {
        std::uint64_t t = ((k & ~lop) << 1) | (k & lop);
        t = ((t & ~lor) << 1) | (t & lor);
        const std::uint64_t zp = t | mp;
        const std::uint64_t zr = t | mr;
        const cx ap = s.amplitudes[zp];
        const cx ar = s.amplitudes[zr];
        s.amplitudes[zp] = c * ap + mis * ar;
        s.amplitudes[zr] = c * ar + mis * ap;
    }
}

/// Per-group product of pair gates in a fixed order. Ring: (g_0,g_1),
/// (g_1,g_2), ..., (g_{k-1},g_0), collapsing to the single pair when k == 2.
/// Complete: all pairs in lexicographic position order. First-order product
/// formula, not the exact group exponential; every pair gate conserves the
/// group's Hamming weight, so the feasible sector is preserved exactly.
inline void apply_xy_mixer(StateVector& s, const std::vector<OneHotGroup>& groups,
                           double beta, Topology topology) {
    require_disjoint(groups, s.n);
    for (const auto& g : groups) {
        const auto& ix = g.indices;
        const std::size_t k = ix.size();
        if (topology == Topology::ring) {
            if (k == 2) {
                apply_xy_pair(s, ix[0], ix[1], beta);
            } else {
                for (std::size_t t = 0; t < k; ++t)
                    apply_xy_pair(s, ix[t], ix[(t + 1) % k], beta);
            }
        } else {
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = a + 1; b < k; ++b)
                    apply_xy_pair(s, ix[a], ix[b], beta);
        }
    }
}

inline double expectation(const StateVector& s, const EnergyTable& t) {
    if (t.n != s.n) throw std::invalid_argument("energy table / state dimension mismatch");
    double e = 0.0;
    const std::uint64_t dim = std::uint64_t{1} << s.n;
    for (std::uint64_t z = 0; z < dim; ++z) e += std::norm(s.amplitudes[z]) * t.value[z];
    return e;
}

template <typename Pred>
double probability_mass(const StateVector& s, Pred&& keep) {
    double p = 0.0;
    const std::uint64_t dim = std::uint64_t{1} << s.n;
    for (std::uint64_t z = 0; z < dim; ++z)
        if (keep(z)) p += std::norm(s.amplitudes[z]);
    return p;
}

inline double feasibility_probability(const StateVector& s,
                                      const std::vector<OneHotGroup>& groups) {
    return probability_mass(s, [&](std::uint64_t z) { return is_feasible(z, groups); });
}

/// Zeroes infeasible amplitudes and renormalizes. Diagnostic post-selection;
/// fails when essentially no feasible mass remains.
inline void project_feasible(StateVector& s, const std::vector<OneHotGroup>& groups) {
    double mass = 0.0;
    const std::uint64_t dim = std::uint64_t{1} << s.n;
    for (std::uint64_t z = 0; z < dim; ++z) {
        if (is_feasible(z, groups))
            mass += std::norm(s.amplitudes[z]);
        else
            s.amplitudes[z] = cx(0.0, 0.0);
    }
    if (mass < 1e-15)
        throw std::runtime_error("feasible probability mass below 1e-15; cannot project");
    const double scale = 1.0 / std::sqrt(mass);
    for (std::uint64_t z = 0; z < dim; ++z) s.amplitudes[z] *= scale;
}

/// i.i.d. measurement draws from |amplitude|^2 by inverse CDF walk.
inline std::map<std::uint64_t, std::uint64_t> sample(const StateVector& s,
                                                     std::uint64_t shots,
                                                     std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    std::mt19937_64 rng(seed);
    const std::uint64_t dim = std::uint64_t{1} << s.n;
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::uint64_t z = 0; z < dim; ++z) {
        acc += std::norm(s.amplitudes[z]);
        cdf[z] = acc;
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t t = 0; t < shots; ++t) {
        const double u = uniform_unit(rng) * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t z = static_cast<std::uint64_t>(it - cdf.begin());
        if (z >= dim) z = dim - 1;
        ++counts[z];
    }
    return counts;
}

}  // namespace qaoa
