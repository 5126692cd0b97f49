#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>

#include "trmt/chebyshev.hpp"
#include "trmt/rng.hpp"
#include "trmt/tournament.hpp"

namespace trmt {

enum class CalibrationMethod { ExactEnum, MonteCarlo };

struct CalibrationEntry {
    double mean = 0.0;
    double stderr_value = 0.0;  // 0 for exact entries
    CalibrationMethod method = CalibrationMethod::ExactEnum;
    std::int64_t samples = 0;
};

// Stored ensemble means E[Tr T_{2n}(H/sigma)] used to centre Y_n. Persisted
// as JSON blocks {"ensemble","N","scaling","entries":[...]} plus the (seed,
// budget) version stamp; reload is byte-identical.
class CalibrationTable {
  public:
    void set(Ensemble ensemble, int n_vertices, Scaling scaling, int n,
             const CalibrationEntry& entry);
    bool has(Ensemble ensemble, int n_vertices, Scaling scaling, int n) const;
    const CalibrationEntry& entry(Ensemble ensemble, int n_vertices, Scaling scaling,
                                  int n) const;
    double mean(Ensemble ensemble, int n_vertices, Scaling scaling, int n) const;

    void merge(const CalibrationTable& other);

    std::string to_json() const;
    static CalibrationTable from_json(const std::string& text);
    void save(const std::string& path) const;
    static CalibrationTable load(const std::string& path);

    std::uint64_t seed = 0;
    std::int64_t budget = 0;

  private:
    using Key = std::tuple<int, int, int, int>;  // ensemble, N, scaling, n
    std::map<Key, CalibrationEntry> entries_;
};

// Exact E[Tr H^m] over the ITE for any N (zero for odd m): canonical
// closed-walk classes with all-even edge multiplicities carry deterministic
// +-1 weights and are counted by falling factorials.
bool ite_exact_moment_feasible(int walk_length);
double ite_exact_moment(int n_vertices, int walk_length);

// Exact E[Tr T_{2n}(H/sigma)] over the ITE via the moment expansion.
double ite_exact_trace_mean(int n_vertices, int n, Scaling scaling);

// Exact enumeration when the oracle censuses are feasible (ITE N <= 6,
// RITE N <= 7) or the ITE walk-class path applies; Monte Carlo otherwise
// with `budget` decorrelated samples (budget >= 1000).
CalibrationTable build_calibration(Ensemble ensemble, int n_vertices, int k_max,
                                   std::int64_t budget, RngStream& rng, Scaling scaling,
                                   int threads = 0);

// Y_n = Tr T_{2n}(H/sigma) - table mean, n = 2..k_max.
TraceVector centred_statistics(const TournamentMatrix& h, Ensemble ensemble,
                               Scaling scaling, const CalibrationTable& table, int k_max);

}  // namespace trmt
