#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "trmt/rng.hpp"
#include "trmt/tournament.hpp"

namespace trmt {

struct EnsembleCensus {
    Ensemble ensemble;
    int n_vertices = 0;
    std::uint64_t count = 0;
};

// Exhaustive-enumeration feasibility limits used by the calibration builder.
constexpr int kIteEnumLimit = 6;   // 2^15 matrices
constexpr int kRiteEnumLimit = 7;  // 2640 matrices; N=9 behind allow_slow

// Visits every regular tournament on N vertices exactly once (backtracking
// with partial row-sum pruning). N must be odd; N = 9 only with allow_slow.
EnsembleCensus enumerate_regular(int n_vertices,
                                 const std::function<void(const TournamentMatrix&)>& visit,
                                 bool allow_slow = false);
EnsembleCensus enumerate_regular(int n_vertices, bool allow_slow = false);

// Visits all 2^(N(N-1)/2) tournaments, N <= kIteEnumLimit.
EnsembleCensus enumerate_ite(int n_vertices,
                             const std::function<void(const TournamentMatrix&)>& visit);

// Exact ensemble mean of g over the full census.
double exact_expectation(Ensemble ensemble, int n_vertices,
                         const std::function<double(const TournamentMatrix&)>& g);

// Ordered vertex pairs (p,q), p != q; H_E = prod H_pq.
using EdgeSet = std::vector<std::pair<int, int>>;

struct ComplexEstimate {
    std::complex<double> value;
    double stderr_value = 0.0;  // 0 for exact paths
    std::int64_t samples = 0;
};

enum class ExpectationMode { Exact, MonteCarlo };

// RITE expectation of H_E; Exact enumerates R_N, MonteCarlo averages
// decorrelated triangle-reversal chain samples.
ComplexEstimate edge_product_expectation(int n_vertices, const EdgeSet& edges,
                                         ExpectationMode mode, std::int64_t budget,
                                         RngStream& rng);

// Leading term of the asymptotic regular-tournament count, evaluated in log
// space: |R_N| ~ 2^((N^2-1)/2) e^(-1/2) / (pi^((N-1)/2) N^(N/2-1)).
double mckay_asymptotic(int n_vertices);
double mckay_asymptotic_log2(int n_vertices);

// Integral representation of E[H_E] over R_N: tensor Gauss-Legendre for
// N <= 5, randomized Halton otherwise. stderr from the shift spread (0 for
// the tensor path).
ComplexEstimate mckay_integral_expectation(int n_vertices, const EdgeSet& edges,
                                           std::int64_t mc_points, RngStream& rng,
                                           double tolerance = 0.0);

// Census cache: packed upper-triangle masks plus a JSON manifest, under
// cache_dir (TRMT_CACHE_DIR from the CLI).
std::string census_cache_write(const std::string& cache_dir, int n_vertices,
                               bool allow_slow = false);
bool census_cache_read(const std::string& cache_dir, int n_vertices,
                       std::vector<std::uint64_t>& masks_out, std::uint64_t& count_out);

}  // namespace trmt
