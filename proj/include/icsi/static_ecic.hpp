#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "icsi/bounds.hpp"
#include "icsi/galois.hpp"
#include "icsi/instance.hpp"

namespace icsi {

// Static codes: one matrix L serving every receiver that misses at most rho
// of the n messages.

struct RhoDeltaReport {
    bool ok = false;
    std::size_t min_weight = 0;  // over nontrivial combinations of <= rho rows
    std::optional<Vec> witness;  // coefficients on the n rows, present iff !ok
    std::uint64_t cost = 0;
};

/// Every nontrivial combination of at most rho rows of L has weight >= 2 delta + 1.
/// Row subsets are visited by size, then lexicographically; coefficients
/// in ascending odometer order over nonzero values.
RhoDeltaReport verify_rho_delta(const FqMatrix& L, std::size_t rho, std::size_t delta,
                                std::uint64_t cap = kDefaultEnumerationCap);

/// One receiver per subset K of [n] with 1 <= |K| <= rho: it demands min(K)
/// and knows everything outside K.
IcsiInstance canonical_instance(std::size_t n, std::size_t rho, std::size_t max_receivers = 1u << 16);

struct RhoStar {
    std::optional<std::size_t> value;
    std::size_t lower = 0;
    std::size_t upper = 0;
    Provenance provenance = Provenance::Bracket;
};

/// Least N such that an [n, n - N, >= rho + 1]_q code exists.
RhoStar rho_star(std::size_t n, std::size_t rho, unsigned q, const NqOptions& opts = {});

struct StaticReport {
    RhoStar rho_star;
    std::optional<CodeTableEntry> lower_alpha;     // N_q[rho, 2 delta + 1]
    std::optional<std::size_t> lower_singleton;    // rho* + 2 delta
    std::optional<CodeTableEntry> upper;           // N_q[rho*, 2 delta + 1]
    std::optional<std::size_t> exact;              // rho + 2 delta when q >= max(n - 1, rho + 2 delta - 1)
};

StaticReport static_bounds(std::size_t n, std::size_t rho, std::size_t delta, unsigned q, const NqOptions& opts = {});

/// sum_{i=0}^{rho-1} C(n-1, i)(q-1)^i * V_q(N, 2 delta) < q^N.
bool gv_condition(std::size_t n, std::size_t rho, std::size_t delta, unsigned q, std::size_t N);

enum class GreedyOrder { Lexicographic, Seeded };

struct GreedyResult {
    std::optional<FqMatrix> L;  // n x N on success
    FqMatrix partial;           // rows chosen before a dead end (or all n)
    std::size_t rows = 0;
    bool condition_holds = false;
};

/// Appends rows one at a time; a row is admissible when no nontrivial
/// combination of it with at most rho - 1 earlier rows has weight <= 2 delta.
GreedyResult gv_greedy(std::size_t n, std::size_t rho, std::size_t delta, const FieldSpec& field, std::size_t N,
                       GreedyOrder order = GreedyOrder::Lexicographic, std::uint64_t seed = 0);

/// Binary only. x -> L x^T restricted to any rho outputs is balanced for every
/// fixing of any t inputs. Checked from the definition by counting.
bool weak_resilience_check(const FqMatrix& L, std::size_t rho, std::size_t t, std::uint64_t cap = 1ull << 32);

}  // namespace icsi
