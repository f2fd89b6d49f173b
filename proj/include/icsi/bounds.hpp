#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "icsi/column_search.hpp"
#include "icsi/galois.hpp"
#include "icsi/instance.hpp"

namespace icsi {

using BigInt = boost::multiprecision::cpp_int;

BigInt big_pow(unsigned q, std::size_t k);
BigInt binomial(std::size_t n, std::size_t k);

/// V_q(N, r) = sum_{l=0}^{r} C(N, l) (q - 1)^l. Requires r <= N.
BigInt sphere_volume(unsigned q, std::size_t N, std::size_t r);

// --- N_q[k, d] ------------------------------------------------------------

enum class Provenance {
    PaperTable,  // one of the shipped published values
    Searched,    // exhaustive column-multiset search, N - 1 refuted
    MdsRule,     // N = k + d - 1 realised by an explicit MDS generator
    Bracket,     // exact value unknown: [lower, upper]
};
const char* to_string(Provenance p);

enum class NqMode { Table, Search, Auto };
const char* to_string(NqMode m);
NqMode parse_nq_mode(const std::string& s);

struct CodeTableEntry {
    unsigned q = 2;
    std::size_t k = 0;
    std::size_t d = 0;
    std::optional<std::size_t> N;  // exact value, absent for brackets
    std::size_t lower = 0;         // k + d - 1 at least
    std::size_t upper = 0;         // Varshamov length when only bracketed
    Provenance provenance = Provenance::Bracket;
    std::optional<FqMatrix> generator;  // k x N code with distance >= d, when known
    std::uint64_t nodes = 0;            // search effort
    bool budget_exceeded = false;
};

struct NqOptions {
    NqMode mode = NqMode::Auto;
    std::uint64_t node_budget = kDefaultNodeBudget;
    unsigned workers = 1;
};

/// Least N such that an [N, k, >= d]_q linear code exists (k, d >= 1).
CodeTableEntry nq_kd(unsigned q, std::size_t k, std::size_t d, const NqOptions& opts = {});

/// The shipped published values, keyed (q, k, d).
std::optional<std::size_t> nq_table_lookup(unsigned q, std::size_t k, std::size_t d);

/// Smallest N >= k + d - 1 with sum_{i=0}^{d-2} C(N-1, i)(q-1)^i < q^(N-k);
/// an [N, k, >= d]_q code exists at that length.
std::size_t varshamov_length(unsigned q, std::size_t k, std::size_t d);

/// k x N generator of a Reed-Solomon code on the first N field points (in
/// element-code order), with the point at infinity as the last column when
/// N = q + 1. Minimum distance N - k + 1. Requires 1 <= k <= N <= q + 1.
FqMatrix rs_doubly_extended(const FieldSpec& field, std::size_t k, std::size_t N);

/// Generator of an [N, k, >= d] code of shortest known length: MDS when the
/// rule applies, otherwise found by search. nullopt if neither succeeds.
std::optional<FqMatrix> shortest_code_generator(const FieldSpec& field, std::size_t k, std::size_t d,
                                                const NqOptions& opts = {});

// --- bound report ------------------------------------------------------------

struct BoundOptions {
    std::uint64_t minrank_budget = 200'000'000;
    NqOptions nq;
};

struct BoundReport {
    unsigned q = 2;
    std::size_t delta = 0;
    std::optional<std::size_t> alpha;
    std::optional<std::size_t> kappa;
    bool kappa_certified = false;
    std::optional<CodeTableEntry> alpha_bound;  // N_q[alpha, 2 delta + 1]
    std::optional<CodeTableEntry> kappa_bound;  // N_q[kappa, 2 delta + 1]
    std::optional<std::size_t> singleton;       // kappa + 2 delta
    std::size_t random_N = 0;
    std::optional<std::size_t> mds_exact;  // kappa + 2 delta when q >= kappa + 2 delta - 1
};

BoundReport bound_report(const IcsiInstance& inst, const FieldSpec& field, std::size_t delta,
                         const BoundOptions& opts = {});

struct OddCycleComparison {
    std::size_t ell = 0;
    std::size_t delta = 0;
    std::size_t alpha = 0;  // ell
    std::size_t kappa = 0;  // ell + 1
    CodeTableEntry alpha_bound;
    std::size_t singleton = 0;
    bool claim_applies = false;  // only for delta > 0
    bool claim_holds = false;    // alpha_bound >= singleton (lower end of a bracket)
};

/// Compares the alpha-bound with the Singleton-type bound on the binary odd
/// cycle C_{2 ell + 1}.
OddCycleComparison odd_cycle_comparison(std::size_t ell, std::size_t delta, const NqOptions& opts = {});

}  // namespace icsi
