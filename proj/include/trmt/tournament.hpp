#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trmt/error.hpp"
#include "trmt/rng.hpp"

namespace trmt {

enum class Ensemble { ITE, RITE };

const char* ensemble_name(Ensemble e);
Ensemble ensemble_from_name(const std::string& name);

// Tournament on N vertices stored as the sign matrix S of H = iS. Only the
// upper triangle is kept (row-major bit field), so antisymmetry holds by
// construction. Convention: S_pq = +1 means p beats q.
class TournamentMatrix {
  public:
    TournamentMatrix() = default;
    explicit TournamentMatrix(int n_vertices);

    int size() const { return n_; }
    int edge_count() const { return n_ * (n_ - 1) / 2; }

    // +1/-1 for p != q, 0 on the diagonal.
    int sign(int p, int q) const {
        if (p == q) return 0;
        if (p < q) return bit(edge_index(p, q)) ? 1 : -1;
        return bit(edge_index(q, p)) ? -1 : 1;
    }

    void set_sign(int p, int q, int s);
    void flip(int p, int q);  // negates S_pq (and S_qp)

    // Row sums of S; identically zero on the regular subset.
    Eigen::VectorXi row_sums() const;
    bool is_regular() const;

    // Hermitian matrix H = iS.
    Eigen::MatrixXcd dense() const;

    // Upper-triangle bits packed LSB-first, row-major. For N <= 11 the whole
    // field fits one word (used as a census key).
    const std::vector<std::uint64_t>& words() const { return words_; }
    std::uint64_t packed_key() const;

    std::string bits_hex() const;
    static TournamentMatrix from_bits_hex(int n_vertices, const std::string& hex);

    std::string to_json() const;
    static TournamentMatrix from_json(const std::string& text);

    bool operator==(const TournamentMatrix& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

    int edge_index(int p, int q) const {  // p < q
        return p * (n_ - 1) - p * (p - 1) / 2 + (q - p - 1);
    }

  private:
    bool bit(int i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
    void set_bit(int i, bool v) {
        const std::uint64_t mask = 1ULL << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct MoveProposal {
    enum class Kind { EdgeFlip, TriangleReversal };
    Kind kind;
    int v0 = 0, v1 = 0, v2 = 0;  // EdgeFlip uses (v0, v1) with v0 < v1

    static MoveProposal edge_flip(int p, int q) {
        return {Kind::EdgeFlip, p, q, 0};
    }
    static MoveProposal triangle_reversal(int q0, int q1, int q2) {
        return {Kind::TriangleReversal, q0, q1, q2};
    }
};

// Uniform draw from the ITE: each of the N(N-1)/2 signs independent +-1.
TournamentMatrix sample_ite(int n_vertices, RngStream& rng);

// Circulant regular tournament: p beats q iff (q-p) mod N in {1..(N-1)/2}.
TournamentMatrix seed_regular(int n_vertices);

// Validated functional move application.
TournamentMatrix apply_move(const TournamentMatrix& h, const MoveProposal& move);

// Number of ordered triples (q0,q1,q2) tracing a directed 3-cycle
// (both cyclic listings of each geometric triangle, all starting vertices).
std::int64_t count_directed_triangles(const TournamentMatrix& h);

// d_N = N(N-1)(N+1)/4, the directed-triangle count of any regular tournament.
inline std::int64_t regular_triangle_count(int n_vertices) {
    return static_cast<std::int64_t>(n_vertices) * (n_vertices - 1) * (n_vertices + 1) / 4;
}

// Uniform draw over the d_N labelled directed triangles, by rejection over
// ordered distinct triples (acceptance d_N / (N(N-1)(N-2)) -> 1/4).
MoveProposal sample_triangle(const TournamentMatrix& h, RngStream& rng);

std::int64_t default_burn_in(Ensemble ensemble, int n_vertices);

// Gap that decorrelates successive recorded states: one expected touch per
// move class, rounded up to odd (both chains alternate sign-count parity).
std::int64_t decorrelation_gap(Ensemble ensemble, int n_vertices);

// Streaming chain driver: applies `moves` accepted moves to `state` in place,
// invoking on_state(state, t) after each move. Used by run_chain and by the
// samplers, which only keep summaries.
template <class Fn>
void drive_chain(TournamentMatrix& state, Ensemble ensemble, std::int64_t moves,
                 RngStream& rng, Fn&& on_state);

// Uniform-proposal chain trajectory. Applies `burn_in` moves first, emits the
// state, then emits every `thin`-th of the following `steps` moves.
std::vector<TournamentMatrix> run_chain(const TournamentMatrix& h0, Ensemble ensemble,
                                        std::int64_t steps, RngStream& rng,
                                        std::int64_t thin = 1, std::int64_t burn_in = 0);

// --- implementation of the template driver ---

namespace detail {
void ite_step(TournamentMatrix& state, RngStream& rng);
void rite_step(TournamentMatrix& state, RngStream& rng);
}  // namespace detail

template <class Fn>
void drive_chain(TournamentMatrix& state, Ensemble ensemble, std::int64_t moves,
                 RngStream& rng, Fn&& on_state) {
    if (ensemble == Ensemble::RITE && !state.is_regular())
        throw Error(ErrorCode::ParityViolation, "RITE chain requires zero row sums");
    for (std::int64_t t = 0; t < moves; ++t) {
        if (ensemble == Ensemble::ITE)
            detail::ite_step(state, rng);
        else
            detail::rite_step(state, rng);
        on_state(state, t);
    }
}

}  // namespace trmt
