#include "trmt/calibration.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

#include "trmt/oracle.hpp"
#include "trmt/parallel.hpp"
#include "trmt/sampling.hpp"

namespace trmt {

namespace {

const char* method_name(CalibrationMethod m) {
    return m == CalibrationMethod::ExactEnum ? "EXACT_ENUM" : "MONTE_CARLO";
}

CalibrationMethod method_from_name(const std::string& s) {
    if (s == "EXACT_ENUM") return CalibrationMethod::ExactEnum;
    if (s == "MONTE_CARLO") return CalibrationMethod::MonteCarlo;
    throw Error(ErrorCode::InvalidInput, "unknown calibration method '" + s + "'");
}

}  // namespace

void CalibrationTable::set(Ensemble ensemble, int n_vertices, Scaling scaling, int n,
                           const CalibrationEntry& entry) {
    entries_[{static_cast<int>(ensemble), n_vertices, static_cast<int>(scaling), n}] = entry;
}

bool CalibrationTable::has(Ensemble ensemble, int n_vertices, Scaling scaling, int n) const {
    return entries_.count({static_cast<int>(ensemble), n_vertices,
                           static_cast<int>(scaling), n}) > 0;
}

const CalibrationEntry& CalibrationTable::entry(Ensemble ensemble, int n_vertices,
                                                Scaling scaling, int n) const {
    const auto it = entries_.find(
        {static_cast<int>(ensemble), n_vertices, static_cast<int>(scaling), n});
    if (it == entries_.end())
        throw Error(ErrorCode::CalibrationMiss,
                    std::string(ensemble_name(ensemble)) + " N=" + std::to_string(n_vertices) +
                        " n=" + std::to_string(n) + " (" + scaling_name(scaling) + ")");
    return it->second;
}

double CalibrationTable::mean(Ensemble ensemble, int n_vertices, Scaling scaling,
                              int n) const {
    return entry(ensemble, n_vertices, scaling, n).mean;
}

void CalibrationTable::merge(const CalibrationTable& other) {
    for (const auto& [key, value] : other.entries_) entries_[key] = value;
}

std::string CalibrationTable::to_json() const {
    // group into {"ensemble","N","scaling","entries"} blocks
    nlohmann::json blocks = nlohmann::json::array();
    nlohmann::json* open = nullptr;
    int open_e = -1, open_n = -1, open_s = -1;
    for (const auto& [key, value] : entries_) {
        const auto [e, nv, sc, n] = key;
        if (open == nullptr || e != open_e || nv != open_n || sc != open_s) {
            nlohmann::json block;
            block["ensemble"] = ensemble_name(static_cast<Ensemble>(e));
            block["N"] = nv;
            block["scaling"] = scaling_name(static_cast<Scaling>(sc));
            block["seed"] = seed;
            block["budget"] = budget;
            block["entries"] = nlohmann::json::array();
            blocks.push_back(std::move(block));
            open = &blocks.back();
            open_e = e;
            open_n = nv;
            open_s = sc;
        }
        nlohmann::json row;
        row["n"] = n;
        row["mean"] = value.mean;
        row["stderr"] = value.stderr_value;
        row["method"] = method_name(value.method);
        row["samples"] = value.samples;
        (*open)["entries"].push_back(std::move(row));
    }
    return blocks.dump(2);
}

CalibrationTable CalibrationTable::from_json(const std::string& text) {
    CalibrationTable table;
    const auto blocks = nlohmann::json::parse(text);
    for (const auto& block : blocks) {
        const Ensemble e = ensemble_from_name(block.at("ensemble").get<std::string>());
        const int nv = block.at("N").get<int>();
        const Scaling sc = scaling_from_name(block.at("scaling").get<std::string>());
        if (block.contains("seed")) table.seed = block["seed"].get<std::uint64_t>();
        if (block.contains("budget")) table.budget = block["budget"].get<std::int64_t>();
        for (const auto& row : block.at("entries")) {
            CalibrationEntry entry;
            entry.mean = row.at("mean").get<double>();
            entry.stderr_value = row.at("stderr").get<double>();
            entry.method = method_from_name(row.at("method").get<std::string>());
            entry.samples = row.at("samples").get<std::int64_t>();
            table.set(e, nv, sc, row.at("n").get<int>(), entry);
        }
    }
    return table;
}

void CalibrationTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out.good()) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << to_json() << "\n";
}

CalibrationTable CalibrationTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

// ---------------------------------------------------------------------------
// Exact ITE moments by canonical closed-walk classes.
//
// E[Tr H^m] = sum over closed m-walks of E[H_walk]; independence kills every
// walk with an odd-multiplicity edge and leaves a deterministic +-1 on the
// rest: an edge traversed b times against its reference orientation out of
// nu total contributes (-1)^b (-1)^(nu/2). Walks are enumerated once per m in
// canonical labels (first appearance order) and counted with falling
// factorials N(N-1)...(N-|V|+1).
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxExactWalk = 12;

struct WalkClassSums {
    // signed class count per number of distinct vertices
    std::vector<long long> by_vertices;
};

struct WalkEnumerator {
    int length;
    std::vector<int> seq;
    // edge stats indexed a*length+b with a<b over canonical labels (< length)
    std::vector<int> total;     // traversals of the undirected edge
    std::vector<int> forward;   // traversals min->max
    int odd_edges = 0;
    WalkClassSums sums;

    explicit WalkEnumerator(int m) : length(m), seq(m, 0) {
        total.assign(m * m, 0);
        forward.assign(m * m, 0);
        sums.by_vertices.assign(m + 1, 0);
    }

    void apply(int from, int to, int dir) {
        const int a = std::min(from, to), b = std::max(from, to);
        const int slot = a * length + b;
        total[slot] += dir;
        if (from < to) forward[slot] += dir;
        odd_edges += (total[slot] & 1) ? 1 : -1;
    }

    // placed seq[0..pos]; edges so far = pos; still to place length-1-pos
    // vertices plus the closing edge, i.e. length-pos more parity flips.
    bool feasible(int pos) const {
        const int remaining = length - pos;
        return odd_edges <= remaining && ((odd_edges ^ remaining) & 1) == 0;
    }

    void step(int pos, int used) {
        const int prev = seq[pos - 1];
        const int fresh = used < length ? 1 : 0;
        for (int v = 0; v < used + fresh; ++v) {
            if (v == prev) continue;
            seq[pos] = v;
            apply(prev, v, +1);
            if (feasible(pos)) {
                if (pos + 1 == length)
                    finish(std::max(used, v + 1));
                else
                    step(pos + 1, std::max(used, v + 1));
            }
            apply(prev, v, -1);
        }
    }

    void finish(int used) {
        const int last = seq[length - 1];
        if (last == seq[0]) return;  // closing entry sits on the diagonal
        apply(last, seq[0], +1);
        if (odd_edges == 0) {
            int sign = 1;
            for (int a = 0; a < used; ++a)
                for (int b = a + 1; b < used; ++b) {
                    const int nu = total[a * length + b];
                    if (nu == 0) continue;
                    const int backward = nu - forward[a * length + b];
                    if (((backward + nu / 2) & 1) != 0) sign = -sign;
                }
            sums.by_vertices[used] += sign;
        }
        apply(last, seq[0], -1);
    }

    void run() {
        seq[0] = 0;
        step(1, 1);
    }
};

const WalkClassSums& walk_class_sums(int length) {
    static std::map<int, WalkClassSums> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(length);
    if (it == cache.end()) {
        WalkEnumerator e(length);
        e.run();
        it = cache.emplace(length, std::move(e.sums)).first;
    }
    return it->second;
}

}  // namespace

bool ite_exact_moment_feasible(int walk_length) {
    return walk_length >= 0 && walk_length <= kMaxExactWalk;
}

double ite_exact_moment(int n_vertices, int walk_length) {
    if (walk_length % 2 == 1) return 0.0;
    if (walk_length == 0) return n_vertices;
    if (!ite_exact_moment_feasible(walk_length))
        throw Error(ErrorCode::BudgetExceeded, "exact ITE moment limited to length <= " +
                                                   std::to_string(kMaxExactWalk));
    const WalkClassSums& sums = walk_class_sums(walk_length);
    long double value = 0.0L;
    for (int v = 2; v < static_cast<int>(sums.by_vertices.size()); ++v) {
        if (sums.by_vertices[v] == 0) continue;
        if (v > n_vertices) continue;
        long double falling = 1.0L;
        for (int i = 0; i < v; ++i) falling *= static_cast<long double>(n_vertices - i);
        value += static_cast<long double>(sums.by_vertices[v]) * falling;
    }
    return static_cast<double>(value);
}

double ite_exact_trace_mean(int n_vertices, int n, Scaling scaling) {
    const double sigma = scaling_sigma(scaling, n_vertices);
    const ChebyshevCoeffs coeffs = chebyshev_coeffs(2 * n);
    double mean = 0.0;
    for (int r = 0; r < static_cast<int>(coeffs.coeffs.size()); ++r) {
        const int power = 2 * n - 2 * r;
        mean += static_cast<double>(coeffs.coeffs[r]) *
                ite_exact_moment(n_vertices, power) / std::pow(sigma, power);
    }
    return mean;
}

CalibrationTable build_calibration(Ensemble ensemble, int n_vertices, int k_max,
                                   std::int64_t budget, RngStream& rng, Scaling scaling,
                                   int threads) {
    CalibrationTable table;
    table.seed = rng.seed();
    table.budget = budget;

    const bool enum_feasible = ensemble == Ensemble::ITE ? n_vertices <= kIteEnumLimit
                                                         : n_vertices <= kRiteEnumLimit;
    if (enum_feasible) {
        std::vector<double> sums(k_max, 0.0);
        std::uint64_t count = 0;
        const auto acc = [&](const TournamentMatrix& m) {
            const auto traces = eig_traces(m, k_max, scaling);
            for (int n = 1; n <= k_max; ++n) sums[n - 1] += traces[n - 1];
            ++count;
        };
        if (ensemble == Ensemble::ITE)
            enumerate_ite(n_vertices, acc);
        else
            enumerate_regular(n_vertices, acc);
        for (int n = 1; n <= k_max; ++n)
            table.set(ensemble, n_vertices, scaling, n,
                      {sums[n - 1] / static_cast<double>(count), 0.0,
                       CalibrationMethod::ExactEnum, static_cast<std::int64_t>(count)});
        return table;
    }
    if (ensemble == Ensemble::ITE && ite_exact_moment_feasible(2 * k_max)) {
        for (int n = 1; n <= k_max; ++n)
            table.set(ensemble, n_vertices, scaling, n,
                      {ite_exact_trace_mean(n_vertices, n, scaling), 0.0,
                       CalibrationMethod::ExactEnum, 0});
        return table;
    }
    if (budget < 1000)
        throw Error(ErrorCode::BudgetExceeded, "Monte Carlo calibration needs budget >= 1000");
    const Eigen::MatrixXd traces =
        sample_traces(ensemble, n_vertices, k_max, scaling, budget, rng, threads);
    for (int n = 1; n <= k_max; ++n) {
        const auto col = traces.col(n - 1);
        const double mean = col.mean();
        const double var =
            (col.array() - mean).square().sum() / static_cast<double>(budget - 1);
        table.set(ensemble, n_vertices, scaling, n,
                  {mean, std::sqrt(var / static_cast<double>(budget)),
                   CalibrationMethod::MonteCarlo, budget});
    }
    return table;
}

TraceVector centred_statistics(const TournamentMatrix& h, Ensemble ensemble,
                               Scaling scaling, const CalibrationTable& table, int k_max) {
    if (k_max < 2) throw Error(ErrorCode::InvalidInput, "k_max must be >= 2");
    const auto traces = eig_traces(h, k_max, scaling);
    TraceVector out;
    out.k_max = k_max;
    out.scaling = scaling;
    out.values.resize(k_max - 1);
    for (int n = 2; n <= k_max; ++n)
        out.values[n - 2] = traces[n - 1] - table.mean(ensemble, h.size(), scaling, n);
    return out;
}

}  // namespace trmt
