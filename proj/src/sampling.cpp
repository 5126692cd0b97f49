#include "trmt/sampling.hpp"

#include "trmt/parallel.hpp"

namespace trmt {

namespace {

constexpr int kIteUnits = 64;   // fixed unit counts keep output thread-invariant
constexpr int kRiteChains = 4;

struct Range {
    std::int64_t begin, end;
};

Range unit_range(std::int64_t count, int units, int u) {
    const std::int64_t lo = count * u / units;
    const std::int64_t hi = count * (u + 1) / units;
    return {lo, hi};
}

}  // namespace

Eigen::MatrixXd sample_traces(Ensemble ensemble, int n_vertices, int k_max,
                              Scaling scaling, std::int64_t count, RngStream& rng,
                              int threads) {
    if (threads <= 0) threads = default_thread_count();
    Eigen::MatrixXd out(count, k_max);
    if (ensemble == Ensemble::ITE) {
        parallel_for(kIteUnits, threads, [&](std::size_t u) {
            RngStream local = rng.substream(0x17e0000 + u);
            const Range r = unit_range(count, kIteUnits, static_cast<int>(u));
            for (std::int64_t s = r.begin; s < r.end; ++s) {
                const TournamentMatrix h = sample_ite(n_vertices, local);
                const auto traces = eig_traces(h, k_max, scaling);
                for (int n = 1; n <= k_max; ++n) out(s, n - 1) = traces[n - 1];
            }
        });
        return out;
    }
    const std::int64_t gap = decorrelation_gap(Ensemble::RITE, n_vertices);
    const std::int64_t burn = default_burn_in(Ensemble::RITE, n_vertices);
    parallel_for(kRiteChains, threads, [&](std::size_t c) {
        RngStream local = rng.substream(0x217e0000 + c);
        TournamentMatrix state = seed_regular(n_vertices);
        drive_chain(state, Ensemble::RITE, burn, local,
                    [](const TournamentMatrix&, std::int64_t) {});
        const Range r = unit_range(count, kRiteChains, static_cast<int>(c));
        for (std::int64_t s = r.begin; s < r.end; ++s) {
            drive_chain(state, Ensemble::RITE, gap, local,
                        [](const TournamentMatrix&, std::int64_t) {});
            const auto traces = eig_traces(state, k_max, scaling);
            for (int n = 1; n <= k_max; ++n) out(s, n - 1) = traces[n - 1];
        }
    });
    return out;
}

std::vector<TournamentMatrix> sample_matrices(Ensemble ensemble, int n_vertices,
                                              std::int64_t count, RngStream& rng,
                                              int threads) {
    if (threads <= 0) threads = default_thread_count();
    std::vector<TournamentMatrix> out(static_cast<std::size_t>(count));
    if (ensemble == Ensemble::ITE) {
        parallel_for(kIteUnits, threads, [&](std::size_t u) {
            RngStream local = rng.substream(0x37e0000 + u);
            const Range r = unit_range(count, kIteUnits, static_cast<int>(u));
            for (std::int64_t s = r.begin; s < r.end; ++s)
                out[static_cast<std::size_t>(s)] = sample_ite(n_vertices, local);
        });
        return out;
    }
    const std::int64_t gap = decorrelation_gap(Ensemble::RITE, n_vertices);
    const std::int64_t burn = default_burn_in(Ensemble::RITE, n_vertices);
    parallel_for(kRiteChains, threads, [&](std::size_t c) {
        RngStream local = rng.substream(0x47e0000 + c);
        TournamentMatrix state = seed_regular(n_vertices);
        drive_chain(state, Ensemble::RITE, burn, local,
                    [](const TournamentMatrix&, std::int64_t) {});
        const Range r = unit_range(count, kRiteChains, static_cast<int>(c));
        for (std::int64_t s = r.begin; s < r.end; ++s) {
            drive_chain(state, Ensemble::RITE, gap, local,
                        [](const TournamentMatrix&, std::int64_t) {});
            out[static_cast<std::size_t>(s)] = state;
        }
    });
    return out;
}

}  // namespace trmt
