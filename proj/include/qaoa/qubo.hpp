// Quadratic pseudo-Boolean objectives, one-hot penalty structure,
// and the cost/constraint split used by the two-step pipeline.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qaoa {

inline constexpr int kMaxQubits = 24;

/// Quadratic binary objective: offset + sum l_i x_i + sum q_ij x_i x_j.
/// Quadratic keys are canonical (i < j); maps keep deterministic order.
struct QuboProblem {
    int n = 0;
    std::map<int, double> linear;
    std::map<std::pair<int, int>, double> quadratic;
    double offset = 0.0;
};

/// Index set constrained to contain exactly one 1.
struct OneHotGroup {
    std::vector<int> indices;
};

struct ProblemSplit {
    QuboProblem cost;
    QuboProblem penalty;
    std::vector<OneHotGroup> groups;
    double lambda = 1.0;
};

inline void check_index(int i, int n) {
    if (i < 0 || i >= n)
        throw std::invalid_argument("variable index " + std::to_string(i) +
                                    " out of range [0, " + std::to_string(n) + ")");
}

inline std::uint64_t group_mask(const OneHotGroup& g) {
    std::uint64_t m = 0;
    for (int i : g.indices) m |= std::uint64_t{1} << i;
    return m;
}

inline void require_disjoint(const std::vector<OneHotGroup>& groups, int n) {
    std::uint64_t seen = 0;
    for (const auto& g : groups) {
        if (g.indices.size() < 2)
            throw std::invalid_argument("one-hot group needs at least 2 indices");
        for (int i : g.indices) {
            check_index(i, n);
            const std::uint64_t bit = std::uint64_t{1} << i;
            if (seen & bit)
                throw std::invalid_argument("one-hot groups overlap at variable " +
                                            std::to_string(i));
            seen |= bit;
        }
    }
}

/// Accumulates (i, j, coeff) terms; i == j denotes a linear term. Duplicate
/// terms add; pair order is canonicalized; exact-zero sums are dropped.
inline QuboProblem build_qubo(int n,
                              const std::vector<std::tuple<int, int, double>>& terms) {
    if (n <= 0) throw std::invalid_argument("qubo needs at least one variable");
    QuboProblem q;
    q.n = n;
    for (const auto& [i, j, c] : terms) {
        check_index(i, n);
        check_index(j, n);
        if (i == j) {
            q.linear[i] += c;
        } else {
            q.quadratic[{std::min(i, j), std::max(i, j)}] += c;
        }
    }
    std::erase_if(q.linear, [](const auto& kv) { return kv.second == 0.0; });
    std::erase_if(q.quadratic, [](const auto& kv) { return kv.second == 0.0; });
    return q;
}

/// Expansion of (sum_{i in g} x_i - 1)^2 with x^2 = x: linear -1 per member,
/// +2 per member pair, offset +1. Zero exactly on the feasible strings.
inline QuboProblem one_hot_penalty(const OneHotGroup& g, int n) {
    if (g.indices.size() < 2)
        throw std::invalid_argument("one-hot group needs at least 2 indices");
    QuboProblem q;
    q.n = n;
    q.offset = 1.0;
    std::vector<int> sorted = g.indices;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < sorted.size(); ++a) {
        check_index(sorted[a], n);
        if (a + 1 < sorted.size() && sorted[a] == sorted[a + 1])
            throw std::invalid_argument("duplicate index in one-hot group");
        q.linear[sorted[a]] = -1.0;
        for (std::size_t b = a + 1; b < sorted.size(); ++b)
            q.quadratic[{sorted[a], sorted[b]}] = 2.0;
    }
    return q;
}

inline void add_scaled(QuboProblem& q, const QuboProblem& other, double factor) {
    if (q.n != other.n) throw std::invalid_argument("qubo size mismatch");
    q.offset += factor * other.offset;
    for (const auto& [i, c] : other.linear) q.linear[i] += factor * c;
    for (const auto& [ij, c] : other.quadratic) q.quadratic[ij] += factor * c;
}

inline QuboProblem recombine(const ProblemSplit& s) {
    QuboProblem q = s.cost;
    add_scaled(q, s.penalty, s.lambda);
    return q;
}

namespace detail {

// Clusters the positive quadratic coefficients within tol and returns the
// representative (first-seen) value of each cluster, largest first.
inline std::vector<double> coefficient_clusters(const QuboProblem& q, double tol) {
    std::vector<double> reps;
    for (const auto& [ij, c] : q.quadratic) {
        if (c <= tol) continue;
        bool found = false;
        for (double r : reps)
            if (std::abs(c - r) <= tol) { found = true; break; }
        if (!found) reps.push_back(c);
    }
    std::sort(reps.begin(), reps.end(), std::greater<>());
    return reps;
}

struct CliqueCandidate {
    std::vector<int> members;  // ascending
};

// Greedy clique growth over the equal-coefficient graph. The true structure
// (disjoint one-hot cliques, arbitrary other coefficients) is recovered
// exactly; accidental equal-valued cost edges can only add extra candidates,
// which the disjoint selection below resolves deterministically.
inline std::vector<CliqueCandidate> grow_cliques(
    int n, const std::vector<std::vector<bool>>& adj) {
    std::vector<CliqueCandidate> out;
    for (int start = 0; start < n; ++start) {
        std::vector<int> clique{start};
        for (int j = 0; j < n; ++j) {
            if (j == start || !adj[start][j]) continue;
            bool ok = true;
            for (int m : clique)
                if (m != start && !adj[m][j]) { ok = false; break; }
            if (ok) clique.push_back(j);
        }
        if (clique.size() < 2) continue;
        std::sort(clique.begin(), clique.end());
        out.push_back({std::move(clique)});
    }
    std::sort(out.begin(), out.end(), [](const CliqueCandidate& a, const CliqueCandidate& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return a.members < b.members;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.members == b.members; }),
              out.end());
    return out;
}

}  // namespace detail

/// Finds disjoint index sets whose within-set quadratic coefficients all equal
/// a common 2s (s > 0, the embedded scale). Preference on conflicts: larger
/// sets first, then smallest leading index. Returns ({}, 0) when nothing
/// matches. The linear parts are not constrained; any cost residue on group
/// variables is legal and stays with the cost on split.
inline std::pair<std::vector<OneHotGroup>, double>
detect_one_hot_groups(const QuboProblem& q, double tol = 1e-9) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    std::vector<OneHotGroup> best_groups;
    double best_scale = 0.0;
    std::size_t best_cover = 0;
    std::size_t best_edges = 0;
    for (double v : detail::coefficient_clusters(q, tol)) {
        std::vector<std::vector<bool>> adj(q.n, std::vector<bool>(q.n, false));
        std::size_t edges = 0;
        for (const auto& [ij, c] : q.quadratic) {
            if (std::abs(c - v) <= tol) {
                adj[ij.first][ij.second] = adj[ij.second][ij.first] = true;
                ++edges;
            }
        }
        std::vector<OneHotGroup> groups;
        std::uint64_t used = 0;
        std::size_t cover = 0;
        for (auto& cand : detail::grow_cliques(q.n, adj)) {
            bool free_of_overlap = true;
            for (int m : cand.members)
                if (used & (std::uint64_t{1} << m)) { free_of_overlap = false; break; }
            if (!free_of_overlap) continue;
            for (int m : cand.members) used |= std::uint64_t{1} << m;
            cover += cand.members.size();
            groups.push_back({std::move(cand.members)});
        }
        if (groups.empty()) continue;
        std::sort(groups.begin(), groups.end(), [](const OneHotGroup& a, const OneHotGroup& b) {
            return a.indices < b.indices;
        });
        if (cover > best_cover || (cover == best_cover && edges > best_edges)) {
            best_groups = std::move(groups);
            best_scale = v / 2.0;
            best_cover = cover;
            best_edges = edges;
        }
    }
    return {best_groups, best_scale};
}

/// penalty = sum of unit one-hot penalties, cost = q - scale * penalty.
/// Within-group quadratic residue beyond tol means the groups do not match q.
inline ProblemSplit split_cost_and_constraints(const QuboProblem& q,
                                               const std::vector<OneHotGroup>& groups,
                                               double scale, double tol = 1e-9) {
    if (scale <= 0.0) throw std::invalid_argument("scale must be positive");
    require_disjoint(groups, q.n);
    ProblemSplit s;
    s.groups = groups;
    s.lambda = scale;
    s.penalty.n = q.n;
    for (const auto& g : groups) add_scaled(s.penalty, one_hot_penalty(g, q.n), 1.0);
    s.cost = q;
    add_scaled(s.cost, s.penalty, -scale);
    for (const auto& [ij, c] : s.penalty.quadratic) {
        const double residue = s.cost.quadratic.count(ij) ? s.cost.quadratic[ij] : 0.0;
        if (std::abs(residue) > tol)
            throw std::invalid_argument(
                "within-group quadratic residue " + std::to_string(residue) + " at (" +
                std::to_string(ij.first) + "," + std::to_string(ij.second) +
                ") exceeds tol; groups do not match the problem");
        s.cost.quadratic.erase(ij);
    }
    std::erase_if(s.cost.linear, [](const auto& kv) { return kv.second == 0.0; });
    return s;
}

// ---------------------------------------------------------------------------
// Text formats.
//
// QUBO file: optional `#` comment lines; first data line `n <count>`; then one
// term per line `<i> <j> <coeff>`, i == j meaning linear. The writer also
// emits a `# offset <v>` comment that the reader recognizes, so round trips
// preserve the constant term; foreign files without it read as offset 0.
//
// Groups file: one group per line, space-separated indices; `#` comments.
// ---------------------------------------------------------------------------

inline QuboProblem read_qubo(std::istream& in, const std::string& source = "<stream>") {
    QuboProblem q;
    bool have_n = false;
    double offset = 0.0;
    std::string line;
    int lineno = 0;
    std::vector<std::tuple<int, int, double>> terms;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fail = [&](const std::string& what) {
            throw std::runtime_error(source + ":" + std::to_string(lineno) + ": " + what);
        };
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank
        if (first[0] == '#') {
            std::string key;
            double v;
            std::istringstream cs(line.substr(line.find('#') + 1));
            if (cs >> key >> v && key == "offset") offset = v;
            continue;
        }
        if (first == "n") {
            if (have_n) fail("duplicate n line");
            long count;
            if (!(ls >> count)) fail("malformed n line");
            if (count <= 0 || count > kMaxQubits)
                fail("variable count " + std::to_string(count) + " outside [1, " +
                     std::to_string(kMaxQubits) + "]");
            q.n = static_cast<int>(count);
            have_n = true;
            continue;
        }
        if (!have_n) fail("term line before n line");
        int i, j;
        double c;
        std::istringstream ts(line);
        if (!(ts >> i >> j >> c)) fail("malformed term line (want: i j coeff)");
        if (i < 0 || i >= q.n || j < 0 || j >= q.n)
            fail("index out of range [0, " + std::to_string(q.n) + ")");
        terms.emplace_back(i, j, c);
    }
    if (!have_n) throw std::runtime_error(source + ": missing n line");
    q = build_qubo(q.n, terms);
    q.offset = offset;
    return q;
}

inline QuboProblem read_qubo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open qubo file: " + path);
    return read_qubo(in, path);
}

inline void write_qubo(std::ostream& out, const QuboProblem& q) {
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    if (q.offset != 0.0) out << "# offset " << num(q.offset) << "\n";
    out << "n " << q.n << "\n";
    for (const auto& [i, c] : q.linear) out << i << " " << i << " " << num(c) << "\n";
    for (const auto& [ij, c] : q.quadratic)
        out << ij.first << " " << ij.second << " " << num(c) << "\n";
}

inline void write_qubo_file(const std::string& path, const QuboProblem& q) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_qubo(out, q);
}

inline std::vector<OneHotGroup> read_groups(std::istream& in,
                                            const std::string& source = "<stream>") {
    std::vector<OneHotGroup> groups;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        OneHotGroup g;
        int idx;
        while (ls >> idx) g.indices.push_back(idx);
        if (g.indices.empty()) continue;
        if (g.indices.size() < 2)
            throw std::runtime_error(source + ":" + std::to_string(lineno) +
                                     ": group needs at least 2 indices");
        groups.push_back(std::move(g));
    }
    return groups;
}

inline std::vector<OneHotGroup> read_groups_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open groups file: " + path);
    return read_groups(in, path);
}

inline void write_groups(std::ostream& out, const std::vector<OneHotGroup>& groups) {
    for (const auto& g : groups) {
        for (std::size_t k = 0; k < g.indices.size(); ++k)
            out << (k ? " " : "") << g.indices[k];
        out << "\n";
    }
}

inline void write_groups_file(const std::string& path, const std::vector<OneHotGroup>& groups) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_groups(out, groups);
}

}  // namespace qaoa
