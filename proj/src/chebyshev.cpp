#include "trmt/chebyshev.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace trmt {

const char* scaling_name(Scaling s) { return s == Scaling::Theorem ? "theorem" : "lemma"; }

Scaling scaling_from_name(const std::string& name) {
    if (name == "theorem") return Scaling::Theorem;
    if (name == "lemma") return Scaling::Lemma;
    throw Error(ErrorCode::InvalidInput, "unknown scaling '" + name + "'");
}

double scaling_sigma(Scaling scaling, int n_vertices) {
    if (scaling == Scaling::Theorem) return std::sqrt(4.0 * n_vertices);
    if (n_vertices < 3)
        throw Error(ErrorCode::InvalidDimension, "lemma scaling needs N >= 3");
    return 2.0 * std::sqrt(static_cast<double>(n_vertices - 2));
}

namespace {

ChebyshevCoeffs coeffs_by_recurrence(int degree) {
    // dense coefficient vectors, index = power of x
    std::vector<long long> prev{1};         // T_0
    std::vector<long long> cur{0, 1};       // T_1
    if (degree == 1) return {1, {1}};
    for (int m = 2; m <= degree; ++m) {
        std::vector<long long> next(m + 1, 0);
        for (int i = 0; i + 1 <= m; ++i) next[i + 1] = 2 * cur[i];
        for (int i = 0; i < static_cast<int>(prev.size()); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    ChebyshevCoeffs out;
    out.degree = degree;
    for (int r = 0; 2 * r <= degree; ++r) out.coeffs.push_back(cur[degree - 2 * r]);
    return out;
}

}  // namespace

ChebyshevCoeffs chebyshev_coeffs(int degree) {
    if (degree < 1) throw Error(ErrorCode::InvalidDegree, "degree must be >= 1");
    return coeffs_by_recurrence(degree);
}

double chebyshev_value(int degree, double x) {
    if (std::abs(x) <= 1.0) return std::cos(degree * std::acos(x));
    double t0 = 1.0, t1 = x;
    for (int m = 2; m <= degree; ++m) {
        const double t = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t;
    }
    return degree == 0 ? t0 : t1;
}

Eigen::VectorXd eigenvalues(const TournamentMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense(),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
    return solver.eigenvalues();
}

double chebyshev_trace_sum(const Eigen::VectorXd& eigs, int degree, double sigma) {
    double sum = 0.0;
    for (int i = 0; i < eigs.size(); ++i) sum += chebyshev_value(degree, eigs[i] / sigma);
    return sum;
}

std::vector<double> eig_traces(const TournamentMatrix& h, int k_max, Scaling scaling) {
    if (k_max < 1) throw Error(ErrorCode::InvalidInput, "k_max must be >= 1");
    const double sigma = scaling_sigma(scaling, h.size());
    const Eigen::VectorXd eigs = eigenvalues(h);
    std::vector<double> out(k_max);
    for (int n = 1; n <= k_max; ++n) out[n - 1] = chebyshev_trace_sum(eigs, 2 * n, sigma);
    return out;
}

}  // namespace trmt
