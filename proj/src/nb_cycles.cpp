#include "trmt/nb_cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trmt/error.hpp"
#include "trmt/parallel.hpp"

namespace trmt {

double nb_enumeration_cost(int n_vertices, int length) {
    return static_cast<double>(n_vertices) * n_vertices *
           std::pow(std::max(1, n_vertices - 2), std::max(0, length - 2));
}

namespace {

void check_budget(int n_vertices, int length, double budget) {
    if (n_vertices < 3 || length < 2)
        throw Error(ErrorCode::InvalidInput, "cycle enumeration needs N >= 3, L >= 2");
    if (nb_enumeration_cost(n_vertices, length) > budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "cycle enumeration cost exceeds budget " + std::to_string(budget));
}

// DFS extension with the two-back rule; closure conditions checked on
// emission: p_{L-1} != p_0 and p_1, p_{L-2} distinct from the wrap-around.
template <class Visit>
void extend(const int n, const int length, int* seq, int pos, Visit&& visit) {
    if (pos == length) {
        const int last = seq[length - 1];
        if (last == seq[0]) return;
        if (length >= 2 && seq[length - 2] == seq[0]) return;  // p_{L-2} vs p_0
        if (length >= 2 && seq[1] == last) return;             // p_1 vs p_{L-1}
        visit(seq, length);
        return;
    }
    for (int v = 0; v < n; ++v) {
        if (v == seq[pos - 1]) continue;
        if (pos >= 2 && v == seq[pos - 2]) continue;
        seq[pos] = v;
        extend(n, length, seq, pos + 1, visit);
    }
}

}  // namespace

void enumerate_nb_cycles(int n_vertices, int length,
                         const std::function<void(const int*, int)>& visit,
                         double budget) {
    check_budget(n_vertices, length, budget);
    if (length == 2) return;  // (p,q,p) is cyclically backtracking
    std::vector<int> seq(length);
    for (int first = 0; first < n_vertices; ++first) {
        seq[0] = first;
        extend(n_vertices, length, seq.data(), 1, visit);
    }
}

std::complex<double> cycle_weight(const TournamentMatrix& h, const NBCycle& cycle) {
    const int length = cycle.length();
    int sign = 1;
    for (int i = 0; i < length; ++i) {
        const int a = cycle.vertices[i];
        const int b = cycle.vertices[(i + 1) % length];
        sign *= h.sign(a, b);
    }
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return ipow[length % 4] * static_cast<double>(sign);
}

namespace {

// Exact integer sum of sign products over all length-L cycles, optionally
// restricted to Lambda (>= 1 odd-multiplicity edge). Partitioned over the
// first vertex and reduced in index order.
long long signed_cycle_sum(const TournamentMatrix& h, int length, bool lambda_only,
                           double budget, int threads) {
    check_budget(h.size(), length, budget);
    if (length == 2) return 0;
    const int n = h.size();
    if (threads <= 0) threads = default_thread_count();
    std::vector<long long> partial(n, 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t first) {
        std::vector<int> seq(length);
        seq[0] = static_cast<int>(first);
        long long sum = 0;
        extend(n, length, seq.data(), 1, [&](const int* v, int len) {
            int sign = 1;
            for (int i = 0; i < len; ++i) sign *= h.sign(v[i], v[(i + 1) % len]);
            if (lambda_only) {
                // odd-multiplicity test over the traversed undirected edges
                bool any_odd = false;
                for (int i = 0; i < len && !any_odd; ++i) {
                    const int a = std::min(v[i], v[(i + 1) % len]);
                    const int b = std::max(v[i], v[(i + 1) % len]);
                    int count = 0;
                    for (int j = 0; j < len; ++j) {
                        const int c = std::min(v[j], v[(j + 1) % len]);
                        const int d = std::max(v[j], v[(j + 1) % len]);
                        if (a == c && b == d) ++count;
                    }
                    if (count % 2 == 1) any_odd = true;
                }
                if (!any_odd) return;
            }
            sum += sign;
        });
        partial[first] = sum;
    });
    return std::accumulate(partial.begin(), partial.end(), 0LL);
}

std::complex<double> attach_phase(long long sum, int length) {
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return ipow[length % 4] * static_cast<double>(sum);
}

}  // namespace

std::complex<double> cycle_weight_sum(const TournamentMatrix& h, int length, double budget,
                                      int threads) {
    return attach_phase(signed_cycle_sum(h, length, false, budget, threads), length);
}

std::complex<double> lambda_weight_sum(const TournamentMatrix& h, int length, double budget,
                                       int threads) {
    return attach_phase(signed_cycle_sum(h, length, true, budget, threads), length);
}

double cycle_sum_trace(const TournamentMatrix& h, int degree, double budget, int threads) {
    if (degree < 1) throw Error(ErrorCode::InvalidDegree, "degree must be >= 1");
    const int n_vertices = h.size();
    const std::complex<double> sum = cycle_weight_sum(h, degree, budget, threads);
    const double constant = cycle_closure_constant(n_vertices, degree);
    const double scale = 0.5 * std::pow(static_cast<double>(n_vertices - 2), -0.5 * degree);
    return scale * (sum.real() - constant);
}

CycleClassification classify_cycle(const NBCycle& cycle) {
    const int length = cycle.length();
    CycleClassification out;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> counts;
    for (int i = 0; i < length; ++i) {
        const int a = std::min(cycle.vertices[i], cycle.vertices[(i + 1) % length]);
        const int b = std::max(cycle.vertices[i], cycle.vertices[(i + 1) % length]);
        bool found = false;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e] == std::make_pair(a, b)) {
                ++counts[e];
                found = true;
                break;
            }
        if (!found) {
            edges.push_back({a, b});
            counts.push_back(1);
        }
    }
    int odd = 0;
    bool all_once = true;
    for (int c : counts) {
        if (c % 2 == 1) ++odd;
        if (c != 1) all_once = false;
    }
    out.free_edges = odd;
    out.is_lambda = odd > 0;
    out.is_star = all_once && static_cast<int>(edges.size()) == length;

    // first Betti number of (V, E) via union-find
    std::vector<int> verts(cycle.vertices);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int nv = static_cast<int>(verts.size());
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto index_of = [&](int v) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                                verts.begin());
    };
    for (const auto& [a, b] : edges) {
        const int ra = find(index_of(a)), rb = find(index_of(b));
        if (ra != rb) parent[ra] = rb;
    }
    int components = 0;
    for (int v = 0; v < nv; ++v)
        if (find(v) == v) ++components;
    out.betti = static_cast<int>(edges.size()) - nv + components;
    return out;
}

CycleCensus cycle_census(int n_vertices, int length, double budget) {
    CycleCensus census;
    NBCycle cycle;
    enumerate_nb_cycles(
        n_vertices, length,
        [&](const int* v, int len) {
            ++census.total;
            cycle.vertices.assign(v, v + len);
            const CycleClassification c = classify_cycle(cycle);
            if (c.is_lambda) ++census.lambda;
            if (c.is_star) ++census.lambda_star;
        },
        budget);
    return census;
}

bool subgraph_betti_check(const EdgeList& graph, const EdgeList& subgraph) {
    auto vertex_count = [](const EdgeList& edges) {
        std::vector<int> v;
        for (const auto& [a, b] : edges) {
            v.push_back(a);
            v.push_back(b);
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    auto normalized = [](const EdgeList& edges) {
        EdgeList out;
        for (const auto& [a, b] : edges)
            out.push_back({std::min(a, b), std::max(a, b)});
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    const EdgeList g = normalized(graph);
    const EdgeList gp = normalized(subgraph);
    const std::vector<int> gv = vertex_count(g);
    const std::vector<int> gpv = vertex_count(gp);
    if (gpv.empty())
        throw Error(ErrorCode::PreconditionViolation, "subgraph needs at least one vertex");
    for (const auto& e : gp)
        if (!std::binary_search(g.begin(), g.end(), e))
            throw Error(ErrorCode::PreconditionViolation, "subgraph edge not in graph");

    // connectivity of G
    std::vector<int> parent(gv.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto index_of = [&](int v) {
        return static_cast<int>(std::lower_bound(gv.begin(), gv.end(), v) - gv.begin());
    };
    for (const auto& [a, b] : g) {
        const int ra = find(index_of(a)), rb = find(index_of(b));
        if (ra != rb) parent[ra] = rb;
    }
    int components = 0;
    for (std::size_t v = 0; v < gv.size(); ++v)
        if (find(static_cast<int>(v)) == static_cast<int>(v)) ++components;
    if (components != 1)
        throw Error(ErrorCode::PreconditionViolation, "graph must be connected");

    return static_cast<long long>(gp.size()) - static_cast<long long>(gpv.size()) <=
           static_cast<long long>(g.size()) - static_cast<long long>(gv.size());
}

}  // namespace trmt
