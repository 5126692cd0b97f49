#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "trmt/error.hpp"
#include "trmt/tournament.hpp"

namespace trmt {

// Normalisation of the Hermitian matrix before taking Chebyshev traces.
//   Theorem: H / sqrt(4N)      (headline Gaussianity statements)
//   Lemma:   H / (2 sqrt(N-2)) (cycle identity and all walk dynamics; exact there)
enum class Scaling { Theorem, Lemma };

const char* scaling_name(Scaling s);
Scaling scaling_from_name(const std::string& name);

double scaling_sigma(Scaling scaling, int n_vertices);

// Exact integer coefficients of T_n: T_n(x) = sum_r coeffs[r] x^(n-2r).
struct ChebyshevCoeffs {
    int degree = 0;
    std::vector<long long> coeffs;
};

// Computed by the three-term recurrence T_{n+1} = 2x T_n - T_{n-1}.
ChebyshevCoeffs chebyshev_coeffs(int degree);

// T_m at a scalar: trig form on [-1,1], recurrence outside (arccos is
// undefined there and the top tournament eigenvalue can scale past 1).
double chebyshev_value(int degree, double x);

// Eigenvalues of H (unscaled), ascending.
Eigen::VectorXd eigenvalues(const TournamentMatrix& h);

// sum_mu T_m(lambda_mu / sigma)
double chebyshev_trace_sum(const Eigen::VectorXd& eigs, int degree, double sigma);

// Uncentred Tr T_{2n}(H/sigma) for n = 1..k_max; out[n-1] is degree 2n.
std::vector<double> eig_traces(const TournamentMatrix& h, int k_max, Scaling scaling);

// Centred statistics Y_n, n = 2..k_max (Y_1 vanishes: Tr(H^2) is constant).
struct TraceVector {
    int k_max = 0;
    Scaling scaling = Scaling::Lemma;
    Eigen::VectorXd values;  // values[n-2] = Y_n

    double y(int n) const { return values[n - 2]; }
};

}  // namespace trmt
