#include "trmt/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "trmt/error.hpp"

namespace trmt {

namespace {

struct RegularSearch {
    int n;
    TournamentMatrix m;
    std::vector<int> sums;       // running row sums of S
    std::vector<int> remaining;  // unassigned edges incident to each vertex
    const std::function<void(const TournamentMatrix&)>* visit;
    std::uint64_t count = 0;

    explicit RegularSearch(int n_vertices,
                           const std::function<void(const TournamentMatrix&)>* v)
        : n(n_vertices), m(n_vertices), sums(n_vertices, 0),
          remaining(n_vertices, n_vertices - 1), visit(v) {}

    void recurse(int p, int q) {
        if (p == n - 1) {
            ++count;
            if (visit && *visit) (*visit)(m);
            return;
        }
        const int np = p, nq = q;
        for (int s = -1; s <= 1; s += 2) {
            sums[np] += s;
            sums[nq] -= s;
            --remaining[np];
            --remaining[nq];
            if (std::abs(sums[np]) <= remaining[np] && std::abs(sums[nq]) <= remaining[nq]) {
                m.set_sign(np, nq, s);
                if (nq == n - 1)
                    recurse(np + 1, np + 2);
                else
                    recurse(np, nq + 1);
            }
            sums[np] -= s;
            sums[nq] += s;
            ++remaining[np];
            ++remaining[nq];
        }
    }
};

}  // namespace

EnsembleCensus enumerate_regular(int n_vertices,
                                 const std::function<void(const TournamentMatrix&)>& visit,
                                 bool allow_slow) {
    if (n_vertices % 2 == 0)
        throw Error(ErrorCode::ParityViolation, "regular tournaments need odd N");
    const int limit = allow_slow ? 9 : kRiteEnumLimit;
    if (n_vertices < 3 || n_vertices > limit)
        throw Error(ErrorCode::BudgetExceeded,
                    "regular enumeration limited to N <= " + std::to_string(limit));
    RegularSearch search(n_vertices, &visit);
    search.recurse(0, 1);
    return {Ensemble::RITE, n_vertices, search.count};
}

EnsembleCensus enumerate_regular(int n_vertices, bool allow_slow) {
    return enumerate_regular(n_vertices, {}, allow_slow);
}

EnsembleCensus enumerate_ite(int n_vertices,
                             const std::function<void(const TournamentMatrix&)>& visit) {
    if (n_vertices < 2) throw Error(ErrorCode::InvalidDimension, "need N >= 2");
    if (n_vertices > kIteEnumLimit)
        throw Error(ErrorCode::BudgetExceeded,
                    "ITE enumeration limited to N <= " + std::to_string(kIteEnumLimit));
    const int edges = n_vertices * (n_vertices - 1) / 2;
    const std::uint64_t total = 1ULL << edges;
    TournamentMatrix m(n_vertices);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int p = 0, i = 0; p < n_vertices; ++p)
            for (int q = p + 1; q < n_vertices; ++q, ++i)
                m.set_sign(p, q, (mask >> i) & 1ULL ? 1 : -1);
        visit(m);
    }
    return {Ensemble::ITE, n_vertices, total};
}

double exact_expectation(Ensemble ensemble, int n_vertices,
                         const std::function<double(const TournamentMatrix&)>& g) {
    double sum = 0.0;
    std::uint64_t count = 0;
    const auto acc = [&](const TournamentMatrix& m) {
        sum += g(m);
        ++count;
    };
    if (ensemble == Ensemble::ITE)
        enumerate_ite(n_vertices, acc);
    else
        enumerate_regular(n_vertices, acc);
    return sum / static_cast<double>(count);
}

namespace {

std::complex<double> edge_product(const TournamentMatrix& m, const EdgeSet& edges) {
    // prod H_pq = i^k * prod S_pq
    int sign = 1;
    for (const auto& [p, q] : edges) sign *= m.sign(p, q);
    const int k = static_cast<int>(edges.size());
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return ipow[k % 4] * static_cast<double>(sign);
}

void validate_edges(int n_vertices, const EdgeSet& edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& [p, q] = edges[i];
        if (p == q || p < 0 || q < 0 || p >= n_vertices || q >= n_vertices)
            throw Error(ErrorCode::InvalidInput, "edge set has out-of-range or diagonal pair");
        for (std::size_t j = 0; j < i; ++j) {
            const auto& [a, b] = edges[j];
            if ((a == p && b == q) || (a == q && b == p))
                throw Error(ErrorCode::InvalidInput, "edge set repeats an unordered pair");
        }
    }
}

}  // namespace

ComplexEstimate edge_product_expectation(int n_vertices, const EdgeSet& edges,
                                         ExpectationMode mode, std::int64_t budget,
                                         RngStream& rng) {
    validate_edges(n_vertices, edges);
    if (mode == ExpectationMode::Exact) {
        std::complex<double> sum = 0.0;
        std::uint64_t count = 0;
        enumerate_regular(n_vertices, [&](const TournamentMatrix& m) {
            sum += edge_product(m, edges);
            ++count;
        });
        return {sum / static_cast<double>(count), 0.0,
                static_cast<std::int64_t>(count)};
    }
    if (budget < 100)
        throw Error(ErrorCode::BudgetExceeded, "MC edge-product budget too small");
    TournamentMatrix state = seed_regular(n_vertices);
    RngStream chain_rng = rng.substream(0x0edefULL);
    const std::int64_t gap = decorrelation_gap(Ensemble::RITE, n_vertices);
    drive_chain(state, Ensemble::RITE, default_burn_in(Ensemble::RITE, n_vertices), chain_rng,
                [](const TournamentMatrix&, std::int64_t) {});
    std::complex<double> sum = 0.0;
    double sum_sq_re = 0.0, sum_sq_im = 0.0;
    for (std::int64_t s = 0; s < budget; ++s) {
        drive_chain(state, Ensemble::RITE, gap, chain_rng,
                    [](const TournamentMatrix&, std::int64_t) {});
        const std::complex<double> v = edge_product(state, edges);
        sum += v;
        sum_sq_re += v.real() * v.real();
        sum_sq_im += v.imag() * v.imag();
    }
    const double inv = 1.0 / static_cast<double>(budget);
    const std::complex<double> mean = sum * inv;
    const double var_re = std::max(0.0, sum_sq_re * inv - mean.real() * mean.real());
    const double var_im = std::max(0.0, sum_sq_im * inv - mean.imag() * mean.imag());
    const double se = std::sqrt((var_re + var_im) / static_cast<double>(budget));
    return {mean, se, budget};
}

double mckay_asymptotic_log2(int n_vertices) {
    if (n_vertices < 3 || n_vertices % 2 == 0)
        throw Error(ErrorCode::ParityViolation, "McKay count needs odd N >= 3");
    const double n = n_vertices;
    const double ln2 = std::numbers::ln2;
    const double log2e = 1.0 / ln2;
    return (n * n - 1.0) / 2.0 - 0.5 * log2e -
           (n - 1.0) / 2.0 * std::log2(std::numbers::pi) - (n / 2.0 - 1.0) * std::log2(n);
}

double mckay_asymptotic(int n_vertices) {
    return std::exp2(mckay_asymptotic_log2(n_vertices));
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1] via Newton on P_n.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(order);
    weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= order; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

double radical_inverse(std::uint64_t i, int base) {
    double inv = 1.0 / base, f = inv, x = 0.0;
    while (i > 0) {
        x += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return x;
}

}  // namespace

ComplexEstimate mckay_integral_expectation(int n_vertices, const EdgeSet& edges,
                                           std::int64_t mc_points, RngStream& rng,
                                           double tolerance) {
    validate_edges(n_vertices, edges);
    if (n_vertices > 7)
        throw Error(ErrorCode::BudgetExceeded, "integral representation limited to N <= 7");
    const int n = n_vertices;
    const int k = static_cast<int>(edges.size());
    const std::uint64_t r_count = enumerate_regular(n).count;

    // evaluate prod_E sin(tp - tq) * prod_{E^c} cos(tp - tq)
    std::vector<std::pair<int, int>> complement;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            bool in_e = false;
            for (const auto& [a, b] : edges)
                if ((a == p && b == q) || (a == q && b == p)) in_e = true;
            if (!in_e) complement.push_back({p, q});
        }
    auto eval = [&](const double* theta) {
        double prod = 1.0;
        for (const auto& [p, q] : edges) prod *= std::sin(theta[p] - theta[q]);
        for (const auto& [p, q] : complement) prod *= std::cos(theta[p] - theta[q]);
        return prod;
    };

    const double half_pi = std::numbers::pi / 2.0;
    double integral = 0.0;
    double se_integral = 0.0;
    if (n <= 5) {
        const int order = 24;
        std::vector<double> nodes, weights;
        gauss_legendre(order, nodes, weights);
        std::vector<int> digit(n, 0);
        std::vector<double> theta(n);
        double sum = 0.0;
        for (;;) {
            double w = 1.0;
            for (int d = 0; d < n; ++d) {
                theta[d] = half_pi * nodes[digit[d]];
                w *= half_pi * weights[digit[d]];
            }
            sum += w * eval(theta.data());
            int d = 0;
            while (d < n && ++digit[d] == order) digit[d++] = 0;
            if (d == n) break;
        }
        integral = sum;
    } else {
        // randomized Halton: Cranley-Patterson shifts give the error bar
        if (mc_points < 1000)
            throw Error(ErrorCode::BudgetExceeded, "QMC needs at least 1000 points");
        static const int bases[7] = {2, 3, 5, 7, 11, 13, 17};
        const int shifts = 8;
        const std::int64_t per_shift = mc_points / shifts;
        std::vector<double> estimates(shifts, 0.0);
        std::vector<double> shift(n), theta(n);
        const double volume = std::pow(std::numbers::pi, n);
        for (int s = 0; s < shifts; ++s) {
            RngStream srng = rng.substream(0xa110 + s);
            for (int d = 0; d < n; ++d) shift[d] = srng.uniform();
            double sum = 0.0;
            for (std::int64_t i = 0; i < per_shift; ++i) {
                for (int d = 0; d < n; ++d) {
                    double u = radical_inverse(static_cast<std::uint64_t>(i) + 1, bases[d]) +
                               shift[d];
                    if (u >= 1.0) u -= 1.0;
                    theta[d] = half_pi * (2.0 * u - 1.0);
                }
                sum += eval(theta.data());
            }
            estimates[s] = volume * sum / static_cast<double>(per_shift);
        }
        double mean = 0.0;
        for (double e : estimates) mean += e;
        mean /= shifts;
        double var = 0.0;
        for (double e : estimates) var += (e - mean) * (e - mean);
        var /= (shifts - 1);
        integral = mean;
        se_integral = std::sqrt(var / shifts);
    }

    // prefactor: 2^(N(N-1)/2) (-1)^k / (pi^N |R_N|); the paper's i^k is off by
    // (-1)^(k/2) for even k (see the exact N=3,5 cross-checks)
    const double pref = std::exp2(n * (n - 1) / 2.0) * (k % 2 == 0 ? 1.0 : -1.0) /
                        (std::pow(std::numbers::pi, n) * static_cast<double>(r_count));
    const double value = pref * integral;
    const double se = std::abs(pref) * se_integral;
    if (tolerance > 0.0 && se > tolerance)
        throw Error(ErrorCode::NumericalFailure,
                    "integral stderr " + std::to_string(se) + " above tolerance " +
                        std::to_string(tolerance));
    return {std::complex<double>(value, 0.0), se, mc_points};
}

std::string census_cache_write(const std::string& cache_dir, int n_vertices,
                               bool allow_slow) {
    namespace fs = std::filesystem;
    fs::create_directories(cache_dir);
    std::vector<std::uint64_t> masks;
    enumerate_regular(
        n_vertices, [&](const TournamentMatrix& m) { masks.push_back(m.packed_key()); },
        allow_slow);
    const std::string base = cache_dir + "/regular_N" + std::to_string(n_vertices);
    std::ofstream bin(base + ".bin", std::ios::binary);
    std::uint64_t checksum = 0;
    for (std::uint64_t mask : masks) {
        checksum = mix64(checksum ^ mask);
        char bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((mask >> (8 * b)) & 0xff);
        bin.write(bytes, 8);
    }
    bin.close();
    nlohmann::json manifest;
    manifest["N"] = n_vertices;
    manifest["count"] = masks.size();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(checksum));
    manifest["checksum"] = hex;
    std::ofstream man(base + ".json");
    man << manifest.dump(2) << "\n";
    return base;
}

bool census_cache_read(const std::string& cache_dir, int n_vertices,
                       std::vector<std::uint64_t>& masks_out, std::uint64_t& count_out) {
    const std::string base = cache_dir + "/regular_N" + std::to_string(n_vertices);
    std::ifstream man(base + ".json");
    if (!man.good()) return false;
    nlohmann::json manifest;
    man >> manifest;
    count_out = manifest.at("count").get<std::uint64_t>();
    std::ifstream bin(base + ".bin", std::ios::binary);
    if (!bin.good()) return false;
    masks_out.clear();
    masks_out.reserve(count_out);
    char bytes[8];
    std::uint64_t checksum = 0;
    while (bin.read(bytes, 8)) {
        std::uint64_t mask = 0;
        for (int b = 0; b < 8; ++b)
            mask |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[b])) << (8 * b);
        masks_out.push_back(mask);
        checksum = mix64(checksum ^ mask);
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(checksum));
    return masks_out.size() == count_out && manifest.at("checksum").get<std::string>() == hex;
}

}  // namespace trmt
