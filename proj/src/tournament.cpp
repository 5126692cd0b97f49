#include "trmt/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

namespace trmt {

const char* ensemble_name(Ensemble e) { return e == Ensemble::ITE ? "ITE" : "RITE"; }

Ensemble ensemble_from_name(const std::string& name) {
    if (name == "ITE" || name == "ite") return Ensemble::ITE;
    if (name == "RITE" || name == "rite") return Ensemble::RITE;
    throw Error(ErrorCode::InvalidInput, "unknown ensemble '" + name + "'");
}

TournamentMatrix::TournamentMatrix(int n_vertices) : n_(n_vertices) {
    if (n_ < 2) throw Error(ErrorCode::InvalidDimension, "need at least 2 vertices");
    words_.assign((edge_count() + 63) / 64, 0);
}

void TournamentMatrix::set_sign(int p, int q, int s) {
    if (p == q) throw Error(ErrorCode::InvalidMove, "no diagonal entries");
    if (p < q)
        set_bit(edge_index(p, q), s > 0);
    else
        set_bit(edge_index(q, p), s < 0);
}

void TournamentMatrix::flip(int p, int q) {
    const int i = p < q ? edge_index(p, q) : edge_index(q, p);
    words_[i >> 6] ^= 1ULL << (i & 63);
}

Eigen::VectorXi TournamentMatrix::row_sums() const {
    Eigen::VectorXi sums = Eigen::VectorXi::Zero(n_);
    for (int p = 0; p < n_; ++p)
        for (int q = p + 1; q < n_; ++q) {
            const int s = sign(p, q);
            sums[p] += s;
            sums[q] -= s;
        }
    return sums;
}

bool TournamentMatrix::is_regular() const {
    if (n_ % 2 == 0) return false;
    return row_sums().isZero();
}

Eigen::MatrixXcd TournamentMatrix::dense() const {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_, n_);
    for (int p = 0; p < n_; ++p)
        for (int q = p + 1; q < n_; ++q) {
            const double s = sign(p, q);
            h(p, q) = std::complex<double>(0.0, s);
            h(q, p) = std::complex<double>(0.0, -s);
        }
    return h;
}

std::uint64_t TournamentMatrix::packed_key() const {
    if (edge_count() > 64)
        throw Error(ErrorCode::BudgetExceeded, "packed key only for N(N-1)/2 <= 64");
    return words_[0];
}

std::string TournamentMatrix::bits_hex() const {
    static const char* digits = "0123456789abcdef";
    const int bytes = (edge_count() + 7) / 8;
    std::string out(2 * bytes, '0');
    for (int b = 0; b < bytes; ++b) {
        const std::uint64_t word = words_[b / 8];
        const unsigned byte = (word >> (8 * (b % 8))) & 0xffu;
        out[2 * b] = digits[byte >> 4];
        out[2 * b + 1] = digits[byte & 0xf];
    }
    return out;
}

TournamentMatrix TournamentMatrix::from_bits_hex(int n_vertices, const std::string& hex) {
    TournamentMatrix m(n_vertices);
    const int bytes = (m.edge_count() + 7) / 8;
    if (static_cast<int>(hex.size()) != 2 * bytes)
        throw Error(ErrorCode::InvalidInput, "bits hex has wrong length");
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw Error(ErrorCode::InvalidInput, "bad hex digit");
    };
    for (int b = 0; b < bytes; ++b) {
        const unsigned byte = (nibble(hex[2 * b]) << 4) | nibble(hex[2 * b + 1]);
        m.words_[b / 8] |= static_cast<std::uint64_t>(byte) << (8 * (b % 8));
    }
    // reject stray bits past the field so hex -> matrix -> hex is exact
    for (int i = m.edge_count(); i < 8 * bytes; ++i)
        if ((m.words_[i >> 6] >> (i & 63)) & 1ULL)
            throw Error(ErrorCode::InvalidInput, "bits hex has stray bits past the field");
    return m;
}

std::string TournamentMatrix::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["bits"] = bits_hex();
    return j.dump();
}

TournamentMatrix TournamentMatrix::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return from_bits_hex(j.at("n").get<int>(), j.at("bits").get<std::string>());
}

TournamentMatrix sample_ite(int n_vertices, RngStream& rng) {
    if (n_vertices < 2) throw Error(ErrorCode::InvalidDimension, "sample_ite needs N >= 2");
    TournamentMatrix m(n_vertices);
    for (int p = 0; p < n_vertices; ++p)
        for (int q = p + 1; q < n_vertices; ++q)
            m.set_sign(p, q, (rng.next_u64() & 1ULL) ? 1 : -1);
    return m;
}

TournamentMatrix seed_regular(int n_vertices) {
    if (n_vertices < 3 || n_vertices % 2 == 0)
        throw Error(ErrorCode::ParityViolation, "regular tournaments need odd N >= 3");
    TournamentMatrix m(n_vertices);
    const int half = (n_vertices - 1) / 2;
    for (int p = 0; p < n_vertices; ++p)
        for (int q = p + 1; q < n_vertices; ++q) {
            const int d = q - p;  // in 1..N-1
            m.set_sign(p, q, d <= half ? 1 : -1);
        }
    return m;
}

namespace {

bool is_cyclic_triple(const TournamentMatrix& h, int a, int b, int c) {
    const int s = h.sign(a, b);
    return s == h.sign(b, c) && s == h.sign(c, a);
}

}  // namespace

TournamentMatrix apply_move(const TournamentMatrix& h, const MoveProposal& move) {
    TournamentMatrix out = h;
    const int n = h.size();
    if (move.kind == MoveProposal::Kind::EdgeFlip) {
        if (!(0 <= move.v0 && move.v0 < move.v1 && move.v1 < n))
            throw Error(ErrorCode::InvalidMove, "edge flip needs 0 <= p < q < N");
        out.flip(move.v0, move.v1);
        return out;
    }
    const int a = move.v0, b = move.v1, c = move.v2;
    if (a == b || b == c || a == c || a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
        throw Error(ErrorCode::InvalidMove, "triangle vertices must be distinct and in range");
    if (!is_cyclic_triple(h, a, b, c))
        throw Error(ErrorCode::InvalidMove, "triple is not a directed triangle");
    out.flip(a, b);
    out.flip(b, c);
    out.flip(c, a);
    return out;
}

std::int64_t count_directed_triangles(const TournamentMatrix& h) {
    const int n = h.size();
    std::int64_t count = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (is_cyclic_triple(h, a, b, c)) count += 6;
    return count;
}

MoveProposal sample_triangle(const TournamentMatrix& h, RngStream& rng) {
    const int n = h.size();
    for (;;) {
        const int a = rng.uniform_int(n);
        int b = rng.uniform_int(n - 1);
        if (b >= a) ++b;
        int c = rng.uniform_int(n - 2);
        const int lo = std::min(a, b), hi = std::max(a, b);
        if (c >= lo) ++c;
        if (c >= hi) ++c;
        if (is_cyclic_triple(h, a, b, c)) return MoveProposal::triangle_reversal(a, b, c);
    }
}

std::int64_t default_burn_in(Ensemble ensemble, int n_vertices) {
    const double d = ensemble == Ensemble::ITE
                         ? n_vertices * (n_vertices - 1) / 2.0
                         : static_cast<double>(regular_triangle_count(n_vertices));
    return static_cast<std::int64_t>(std::ceil(10.0 * d * std::log(d)));
}

std::int64_t decorrelation_gap(Ensemble ensemble, int n_vertices) {
    std::int64_t d = ensemble == Ensemble::ITE
                         ? static_cast<std::int64_t>(n_vertices) * (n_vertices - 1) / 2
                         : regular_triangle_count(n_vertices);
    return (d % 2 == 0) ? d + 1 : d;
}

namespace detail {

void ite_step(TournamentMatrix& state, RngStream& rng) {
    const int n = state.size();
    const int e = rng.uniform_int(state.edge_count());
    // invert the row-major edge index
    int p = 0, offset = e;
    while (offset >= n - 1 - p) {
        offset -= n - 1 - p;
        ++p;
    }
    state.flip(p, p + 1 + offset);
}

void rite_step(TournamentMatrix& state, RngStream& rng) {
    const MoveProposal move = sample_triangle(state, rng);
    state.flip(move.v0, move.v1);
    state.flip(move.v1, move.v2);
    state.flip(move.v2, move.v0);
}

}  // namespace detail

std::vector<TournamentMatrix> run_chain(const TournamentMatrix& h0, Ensemble ensemble,
                                        std::int64_t steps, RngStream& rng,
                                        std::int64_t thin, std::int64_t burn_in) {
    if (thin < 1) throw Error(ErrorCode::InvalidInput, "thin must be >= 1");
    TournamentMatrix state = h0;
    if (burn_in > 0)
        drive_chain(state, ensemble, burn_in, rng, [](const TournamentMatrix&, std::int64_t) {});
    else if (ensemble == Ensemble::RITE && !state.is_regular())
        throw Error(ErrorCode::ParityViolation, "RITE chain requires zero row sums");

    std::vector<TournamentMatrix> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps / thin) + 1);
    trajectory.push_back(state);
    drive_chain(state, ensemble, steps, rng,
                [&](const TournamentMatrix& h, std::int64_t t) {
                    if ((t + 1) % thin == 0) trajectory.push_back(h);
                });
    return trajectory;
}

}  // namespace trmt
