#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "trmt/chebyshev.hpp"
#include "trmt/tournament.hpp"

namespace trmt {

// Labelled non-backtracking cycle (p_0,...,p_{L-1}) with implicit closing
// edge; cycles are distinguished by starting vertex and orientation. The
// non-backtracking rule is cyclic (p_{i+2 mod L} != p_i), so L = 2 walks
// (p,q,p) are backtracking and the shortest cycles have L = 3.
struct NBCycle {
    std::vector<int> vertices;
    int length() const { return static_cast<int>(vertices.size()); }
};

struct CycleClassification {
    bool is_lambda = false;  // at least one odd-multiplicity edge
    bool is_star = false;    // every edge traversed exactly once
    int betti = 0;           // |E| - |V| + components of the traced subgraph
    int free_edges = 0;
};

struct CycleCensus {
    std::int64_t total = 0;
    std::int64_t lambda = 0;
    std::int64_t lambda_star = 0;
};

// Work estimate used by the budget guard.
double nb_enumeration_cost(int n_vertices, int length);

// Visits every labelled non-backtracking cycle of the given length on K_N
// exactly once. The visitor receives the vertex array.
void enumerate_nb_cycles(int n_vertices, int length,
                         const std::function<void(const int*, int)>& visit,
                         double budget = 2e9);

// Product of H entries along the cycle, closing edge included; i^L times a
// sign, so real for even L and imaginary for odd L.
std::complex<double> cycle_weight(const TournamentMatrix& h, const NBCycle& cycle);

// Plain and Lambda-restricted weight sums over all length-L cycles,
// accumulated in exact integer arithmetic.
std::complex<double> cycle_weight_sum(const TournamentMatrix& h, int length,
                                      double budget = 2e9, int threads = 0);
std::complex<double> lambda_weight_sum(const TournamentMatrix& h, int length,
                                       double budget = 2e9, int threads = 0);

// Cycle-sum evaluation of Tr T_n(H/(2 sqrt(N-2))). The closure constant
// N(N-3) below is the convention frozen by the eigenvalue-oracle tests.
double cycle_sum_trace(const TournamentMatrix& h, int degree, double budget = 2e9,
                       int threads = 0);

// Constant subtracted from the even-degree cycle sum; odd degrees get zero
// through the (1 + (-1)^n)/2 factor.
inline double cycle_closure_constant(int n_vertices, int degree) {
    if (degree % 2 != 0) return 0.0;
    return static_cast<double>(n_vertices) * (n_vertices - 3);
}

CycleClassification classify_cycle(const NBCycle& cycle);

CycleCensus cycle_census(int n_vertices, int length, double budget = 2e9);

// Lemma check |E(G')| - |V(G')| <= |E(G)| - |V(G)| for connected G and a
// sub-edge-list G' (vertex sets induced by the edges).
using EdgeList = std::vector<std::pair<int, int>>;
bool subgraph_betti_check(const EdgeList& graph, const EdgeList& subgraph);

}  // namespace trmt
