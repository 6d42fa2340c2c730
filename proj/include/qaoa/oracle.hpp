// Exact classical ground truth: exhaustive minima over the full
// or feasible basis, approximation ratios, and dense matrix-exponential gate
// references for verifying the statevector kernels.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hamiltonian.hpp"
#include "qubo.hpp"

namespace qaoa {

struct GroundTruth {
    std::uint64_t z_min = 0;
    double e_min = 0.0;
    double e_max = 0.0;
};

/// Exhaustive scan; ties keep the smallest index. feasible_only restricts the
/// scan to exact one-hot strings for the given groups.
inline GroundTruth brute_force_min(const EnergyTable& t, bool feasible_only,
                                   const std::vector<OneHotGroup>& groups = {}) {
    if (feasible_only) require_disjoint(groups, t.n);
    GroundTruth g;
    bool first = true;
    const std::uint64_t dim = std::uint64_t{1} << t.n;
    for (std::uint64_t z = 0; z < dim; ++z) {
        if (feasible_only && !is_feasible(z, groups)) continue;
        const double e = t.value[z];
        if (first) {
            g = {z, e, e};
            first = false;
        } else {
            if (e < g.e_min) {
                g.e_min = e;
                g.z_min = z;
            }
            if (e > g.e_max) g.e_max = e;
        }
    }
    if (first) throw std::runtime_error("feasible set is empty");
    return g;
}

/// (e_max - e) / (e_max - e_min), clamped to [0,1]; 1 when every state is
/// optimal (e_max == e_min).
inline double approximation_ratio(double e, double e_min, double e_max) {
    if (e_max == e_min) return 1.0;
    if (e_max < e_min) throw std::invalid_argument("e_max below e_min");
    const double r = (e_max - e) / (e_max - e_min);
    return r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
}

// ---------------------------------------------------------------------------
// Dense matrix oracle (tests only, n <= 4). Builds the 2^n x 2^n Hamiltonian
// and exponentiates e^{-i*angle*H} by scaling-and-squaring Taylor series,
// independent of every kernel under test.
// ---------------------------------------------------------------------------

struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> a;

    explicit DenseMatrix(std::size_t d = 0) : dim(d), a(d * d) {}
    std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const {
        return a[r * dim + c];
    }
};

inline constexpr int kOracleMaxQubits = 4;

inline void check_oracle_size(int n) {
    if (n < 1 || n > kOracleMaxQubits)
        throw std::invalid_argument("dense oracle supports 1..4 qubits");
}

inline DenseMatrix identity_matrix(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) m.at(r, r) = 1.0;
    return m;
}

/// H = X on qubit i: flips bit i.
inline DenseMatrix x_hamiltonian(int n, int i) {
    check_oracle_size(n);
    check_index(i, n);
    const std::size_t dim = std::size_t{1} << n;
    DenseMatrix m(dim);
    for (std::size_t z = 0; z < dim; ++z) m.at(z ^ (std::size_t{1} << i), z) = 1.0;
    return m;
}

/// H = (X_i X_j + Y_i Y_j)/2: swaps bits i and j where they differ.
inline DenseMatrix xy_pair_hamiltonian(int n, int i, int j) {
    check_oracle_size(n);
    if (i == j) throw std::invalid_argument("xy pair needs distinct qubits");
    check_index(i, n);
    check_index(j, n);
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t bi = std::size_t{1} << i;
    const std::size_t bj = std::size_t{1} << j;
    DenseMatrix m(dim);
    for (std::size_t z = 0; z < dim; ++z) {
        const bool vi = z & bi;
        const bool vj = z & bj;
        if (vi != vj) m.at(z ^ bi ^ bj, z) = 1.0;
    }
    return m;
}

/// H = diag(E(z)).
inline DenseMatrix diagonal_hamiltonian(const EnergyTable& t) {
    check_oracle_size(t.n);
    const std::size_t dim = std::size_t{1} << t.n;
    DenseMatrix m(dim);
    for (std::size_t z = 0; z < dim; ++z) m.at(z, z) = t.value[z];
    return m;
}

inline DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch");
    DenseMatrix c(a.dim);
    for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const std::complex<double> v = a.at(r, k);
            if (v == std::complex<double>{}) continue;
            for (std::size_t s = 0; s < a.dim; ++s) c.at(r, s) += v * b.at(k, s);
        }
    return c;
}

inline std::vector<std::complex<double>> mat_vec(const DenseMatrix& m,
                                                 const std::vector<std::complex<double>>& v) {
    if (m.dim != v.size()) throw std::invalid_argument("matrix / vector dimension mismatch");
    std::vector<std::complex<double>> out(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
        std::complex<double> acc = 0.0;
        for (std::size_t c = 0; c < m.dim; ++c) acc += m.at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

/// U = e^{-i*angle*H} by Taylor series on A = -i*angle*H / 2^s with
/// ||A||_inf <= 0.5, then s squarings. Series runs to machine-negligible
/// terms, well past the 1e-13 accuracy the tests demand.
inline DenseMatrix expm_minus_i(const DenseMatrix& h, double angle) {
    const std::size_t dim = h.dim;
    DenseMatrix a(dim);
    double row_norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            a.at(r, c) = std::complex<double>(0.0, -angle) * h.at(r, c);
            acc += std::abs(a.at(r, c));
        }
        row_norm = std::max(row_norm, acc);
    }
    int s = 0;
    while (row_norm > 0.5) {
        row_norm /= 2.0;
        ++s;
    }
    const double scale = std::pow(2.0, -s);
    for (auto& v : a.a) v *= scale;

    DenseMatrix u = identity_matrix(dim);
    DenseMatrix term = identity_matrix(dim);
    for (int k = 1; k <= 40; ++k) {
        term = mat_mul(term, a);
        double tnorm = 0.0;
        for (std::size_t idx = 0; idx < term.a.size(); ++idx) {
            term.a[idx] /= static_cast<double>(k);
            tnorm = std::max(tnorm, std::abs(term.a[idx]));
        }
        for (std::size_t idx = 0; idx < u.a.size(); ++idx) u.a[idx] += term.a[idx];
        if (tnorm < 1e-18) break;
    }
    for (int q = 0; q < s; ++q) u = mat_mul(u, u);
    return u;
}

}  // namespace qaoa
