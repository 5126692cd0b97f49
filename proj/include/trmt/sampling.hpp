#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "trmt/chebyshev.hpp"
#include "trmt/rng.hpp"
#include "trmt/tournament.hpp"

namespace trmt {

// Decorrelated uncentred trace samples; row s, column n-1 holds
// Tr T_{2n}(H_s/sigma). ITE draws i.i.d. matrices; RITE runs a fixed number
// of independent triangle-reversal chains (burn-in plus an odd decorrelation
// gap between records), so output is identical for any thread count.
Eigen::MatrixXd sample_traces(Ensemble ensemble, int n_vertices, int k_max,
                              Scaling scaling, std::int64_t count, RngStream& rng,
                              int threads = 0);

// Decorrelated matrix samples from the ensemble (same chain layout); used
// where the statistic is not a trace.
std::vector<TournamentMatrix> sample_matrices(Ensemble ensemble, int n_vertices,
                                              std::int64_t count, RngStream& rng,
                                              int threads = 0);

}  // namespace trmt
