#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icsi/column_search.hpp"
#include "icsi/galois.hpp"
#include "icsi/instance.hpp"

namespace icsi {

// --- verification ---------------------------------------------------------

enum class VerifyMethod {
    Auto,          // span-distance form when every q^|Y_i| fits the cap, else enumeration
    Enumeration,   // stream every z in I(delta,H) and weigh z L
    SpanDistance,  // per receiver: min weight of c L_f(i) + s over s in span{L_j : j in Y_i}
};

const char* to_string(VerifyMethod m);

struct VerifyOptions {
    VerifyMethod method = VerifyMethod::Auto;
    std::uint64_t cap = kDefaultEnumerationCap;
};

struct VerificationReport {
    bool ok = false;
    std::size_t min_weight = 0;  // min weight(z L) over every z in I(delta,H)
    std::optional<Vec> witness;  // a minimum-weight z, present iff !ok
    VerifyMethod method = VerifyMethod::Auto;
    std::uint64_t cost = 0;  // vectors z inspected
};

/// L (n x N) is a (delta, H)-ECIC iff weight(z L) >= 2 delta + 1 for every z
/// in I(delta, H). Both strategies scan all of I, so they agree on ok and
/// min_weight; the witness is the first minimum met in each strategy's order.
VerificationReport verify(const IcsiInstance& inst, const FqMatrix& L, std::size_t delta,
                          const VerifyOptions& opts = {});

/// floor((w_min - 1) / 2); -1 when L is not even an error-free index code.
int max_delta(const IcsiInstance& inst, const FqMatrix& L, const VerifyOptions& opts = {});

// --- min-rank -------------------------------------------------------------

inline constexpr std::uint64_t kDefaultMinRankBudget = 2'000'000'000ull;

struct MinRankWitness {
    std::size_t kappa = 0;
    FqMatrix V;      // m x n, row i = v_i + e_f(i), v_i supported inside X_i
    FqMatrix L_opt;  // n x kappa, columns form a basis of the row space of V
    bool certified = false;  // false: node budget hit, kappa is only an upper bound
    std::uint64_t nodes = 0;
};

/// Exact min-rank by depth-first search over the choices of v_i with an
/// incrementally maintained echelon basis; a branch is cut as soon as its
/// rank reaches the best found. Receivers are visited in descending |X_i|,
/// candidates in ascending code order; the first optimum met is returned.
MinRankWitness min_rank(const IcsiInstance& inst, const FieldSpec& field,
                        std::uint64_t node_budget = kDefaultMinRankBudget);

// --- constructions --------------------------------------------------------

/// L = L_opt * outer. `outer` generates an [N, kappa, >= 2 delta + 1] code;
/// its distance is checked exhaustively when q^kappa <= cap.
FqMatrix construct_concat(const IcsiInstance& inst, const MinRankWitness& witness, const FqMatrix& outer,
                          std::size_t delta, std::uint64_t cap = kDefaultEnumerationCap);

/// Exhaustive minimum distance of the code generated by the rows of g.
std::size_t code_min_distance(const FqMatrix& g, std::uint64_t cap = kDefaultEnumerationCap);

struct LiftViolation {
    Subset K = 0;
    Vec z;  // coefficients on [n], supported on K
};

/// Some z in I(delta,H) with z B = 0, or nothing when B satisfies the lifting
/// condition.
std::optional<LiftViolation> check_lift_basis(const IcsiInstance& inst, const FqMatrix& B,
                                              std::uint64_t cap = kDefaultEnumerationCap);

class LiftConditionError : public std::runtime_error {
public:
    LiftConditionError(const std::string& what, LiftViolation v) : std::runtime_error(what), violation(std::move(v)) {}
    LiftViolation violation;
};

/// L_i = sum_j b_ij outer_j. Throws LiftConditionError if B fails the
/// condition, InvalidInput if outer's distance is below 2 delta + 1.
FqMatrix construct_lift(const IcsiInstance& inst, const FqMatrix& B, const FqMatrix& outer, std::size_t delta,
                        std::uint64_t cap = kDefaultEnumerationCap);

/// Sufficient condition for existence of a length-N ECIC from the union bound
/// over receivers: V_q(N, 2 delta) * sum_i q^|Y_i| < q^N.
bool random_code_condition(const IcsiInstance& inst, unsigned q, std::size_t delta, std::size_t N);
/// Least N satisfying random_code_condition (the condition is monotone in N).
std::size_t random_code_min_length(const IcsiInstance& inst, unsigned q, std::size_t delta);

struct RandomConstruction {
    std::optional<FqMatrix> L;
    std::size_t attempts = 0;
    bool condition_holds = false;      // random_code_condition at the requested N
    std::size_t condition_min_length = 0;
    std::optional<std::size_t> singleton;  // kappa + 2 delta, when kappa was computable
    bool below_singleton = false;
};

RandomConstruction construct_random(const IcsiInstance& inst, const FieldSpec& field, std::size_t delta,
                                    std::size_t N, std::uint64_t seed, std::size_t max_attempts,
                                    std::uint64_t minrank_budget = 10'000'000);

// --- optimal length search -------------------------------------------------

struct SearchOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
    unsigned workers = 1;
    std::size_t start_length = 1;
};

struct LengthSearchResult {
    bool completed = false;              // N_opt certified
    std::optional<std::size_t> N_opt;
    std::optional<FqMatrix> certificate;  // passing L at N_opt
    std::size_t refuted_through = 0;      // every length <= this was exhaustively refuted
    std::optional<std::size_t> upper;     // best passing length seen (when not completed)
    std::uint64_t nodes = 0;
    std::uint64_t candidate_columns = 0;
    bool exceeds_max = false;  // every N <= N_max refuted
};

/// Least N <= N_max admitting a verifying L, with an explicit certificate at
/// N_opt and exhaustive refutation at N_opt - 1.
LengthSearchResult search_min_length(const IcsiInstance& inst, const FieldSpec& field, std::size_t delta,
                                     std::size_t N_max, const SearchOptions& opts = {});

}  // namespace icsi
