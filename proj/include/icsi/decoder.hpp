#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icsi/galois.hpp"
#include "icsi/instance.hpp"

namespace icsi {

// Per-receiver syndrome decoding. Receiver i sees y = x L + eps and knows
// x_j for j in X_i; it wants x_f(i).

struct ReceiverView {
    std::size_t i = 0;  // receiver, 0-based
    Vec y;              // received word, length N
    Vec side;           // x_{X_i}, aligned with the sorted X_i
};

struct LocalCode {
    FqMatrix generator;     // rows L_f(i) and L_j for j in Y_i
    FqMatrix parity_check;  // rows span the dual of C_i
};

/// C_i = span({L_f(i)} u {L_j : j in Y_i}) and a parity-check matrix for it.
LocalCode code_Ci(const IcsiInstance& inst, const FqMatrix& L, std::size_t i);

/// beta = H (y - x_{X_i} L_{X_i})^T.
Vec syndrome(const IcsiInstance& inst, const FqMatrix& L, const FqMatrix& H, const ReceiverView& view);

inline constexpr std::uint64_t kDefaultCosetBudget = 1ull << 26;

struct CosetSolution {
    Vec e_hat;
    std::size_t weight_searched = 0;  // largest weight enumerated
    std::uint64_t candidates = 0;     // error patterns tried
};

/// First e with H e^T = beta, enumerating weights 0..delta, supports in
/// lexicographic order and nonzero values in ascending odometer order per
/// support. Throws TooManyErrors when no solution of weight <= delta exists,
/// BudgetExceeded when V_q(N, delta) exceeds `budget`.
CosetSolution min_weight_coset_solution(const FqMatrix& H, std::span<const Elem> beta, std::size_t delta,
                                        std::uint64_t budget = kDefaultCosetBudget);

struct Combiner {
    Vec u;  // length N with L u^T = (v + e_f(i))^T
    Vec v;  // length n, supported inside X_i
};

/// Throws NotAnIndexCode when no combiner exists.
Combiner find_combiner(const IcsiInstance& inst, const FqMatrix& L, std::size_t i);

/// x_f(i) = (y - e_hat) u^T - x_{X_i} v^T.
Elem recover(const IcsiInstance& inst, const FqMatrix& L, const Combiner& comb, const ReceiverView& view,
             std::span<const Elem> e_hat);

/// Solves x L = y - e_hat for x with x_{X_i} fixed to the side information
/// and returns x_f(i). Throws NotAnIndexCode if the system is inconsistent.
Elem recover_by_elimination(const IcsiInstance& inst, const FqMatrix& L, const ReceiverView& view,
                            std::span<const Elem> e_hat);

/// {eps + z : z in span{L_j : j in Y_i}}.
std::vector<Vec> relevant_error_set(const IcsiInstance& inst, const FqMatrix& L, std::size_t i,
                                    std::span<const Elem> eps, std::uint64_t cap = kDefaultSpanCap);

struct DecodeResult {
    Elem x_hat = 0;
    Vec e_hat;
    Vec syndrome;
    Vec combiner;
    std::size_t weight_searched = 0;
    std::uint64_t candidates = 0;
};

/// Decoder bound to one (instance, L, delta). Per-receiver parity checks and
/// combiners are computed once in the constructor and never mutated, so one
/// Decoder may be shared across threads.
class Decoder {
public:
    Decoder(IcsiInstance inst, FqMatrix L, std::size_t delta, std::uint64_t budget = kDefaultCosetBudget);

    DecodeResult decode(const ReceiverView& view) const;

    const IcsiInstance& instance() const { return inst_; }
    const FqMatrix& matrix() const { return L_; }
    std::size_t delta() const { return delta_; }

    /// The view receiver i gets when x is sent and the channel adds eps.
    ReceiverView view_for(std::size_t i, std::span<const Elem> x, std::span<const Elem> eps) const;

private:
    struct PerReceiver {
        FqMatrix H;
        std::optional<Combiner> combiner;
        std::string combiner_error;
    };
    IcsiInstance inst_;
    FqMatrix L_;
    std::size_t delta_;
    std::uint64_t budget_;
    std::vector<PerReceiver> receivers_;
};

DecodeResult decode(const IcsiInstance& inst, const FqMatrix& L, std::size_t delta, const ReceiverView& view);

}  // namespace icsi
