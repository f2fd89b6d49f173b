#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "icsi/galois.hpp"

namespace icsi {

// Subsets of the message set [n] as bit masks (bit j = message j, 0-based).
// Every combinatorial operation here therefore requires n <= 64.
using Subset = std::uint64_t;
inline constexpr std::size_t kMaxMessages = 64;

inline Subset bit(std::size_t j) { return Subset{1} << j; }
std::vector<std::size_t> members(Subset s);
Subset mask_of(std::span<const std::size_t> elems);

/// An ICSI instance (m, n, X, f), 0-based internally: receiver i demands
/// message f[i] and owns the messages listed in X[i] (sorted).
struct IcsiInstance {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::size_t> f;
    std::vector<std::vector<std::size_t>> X;

    bool operator==(const IcsiInstance&) const = default;
};

/// Throws InvalidInput naming the first violated constraint (1-based receiver
/// index in the message).
void validate(const IcsiInstance& inst);

Subset side_mask(const IcsiInstance& inst, std::size_t i);
/// Y_i: messages receiver i neither owns nor demands.
Subset y_mask(const IcsiInstance& inst, std::size_t i);
std::vector<std::size_t> y_set(const IcsiInstance& inst, std::size_t i);

/// K in J(H) iff some receiver i has f(i) in K and K \ {f(i)} inside Y_i.
bool in_J(const IcsiInstance& inst, Subset k);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 24;

/// J(H), deduplicated, ordered by (cardinality, lexicographic on sorted
/// members). Throws BudgetExceeded when sum_i 2^|Y_i| exceeds `cap`.
std::vector<Subset> iter_J(const IcsiInstance& inst, std::uint64_t cap = kDefaultEnumerationCap);

/// Streams I(delta, H): every nonzero z with z zero on some X_i and nonzero at
/// that receiver's f(i). Ordered by support (J order) then values as an
/// odometer over the support. Returns the count visited.
std::uint64_t iter_I(const IcsiInstance& inst, const FieldSpec& field,
                     const std::function<bool(std::span<const Elem>)>& visit,
                     std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Vec> collect_I(const IcsiInstance& inst, const FieldSpec& field,
                           std::uint64_t cap = kDefaultEnumerationCap);
/// Size of I without enumerating it: sum over distinct supports K of (q-1)^|K|.
std::uint64_t count_I(const IcsiInstance& inst, unsigned q, std::uint64_t cap = kDefaultEnumerationCap);

struct GeneralizedIndependence {
    std::size_t alpha = 0;
    Subset witness = 0;  // lexicographically least maximum generalized independent set
};

inline constexpr std::size_t kDefaultSubsetSearchCap = 24;

/// Largest H such that every nonempty subset of H lies in J(H). Exact
/// branch-and-bound; throws BudgetExceeded when n > `max_n`.
GeneralizedIndependence generalized_independence_number(const IcsiInstance& inst,
                                                        std::size_t max_n = kDefaultSubsetSearchCap);
bool is_generalized_independent(const IcsiInstance& inst, Subset h);

// --- instance families --------------------------------------------------

/// m = n, f = id, X_i = empty.
IcsiInstance no_side_information(std::size_t n);
/// m = n, f = id, X_i = [n] \ {i}.
IcsiInstance complete_side_information(std::size_t n);
/// m = n, f = id, X_i = { i + d mod n : d in offsets }.
IcsiInstance circulant_instance(std::size_t n, std::span<const std::size_t> offsets);
/// Side-information graph is the undirected n-cycle: X_i = {i-1, i+1}.
IcsiInstance cycle_instance(std::size_t n);
/// Side-information graph is the complement of the n-cycle.
IcsiInstance cycle_complement_instance(std::size_t n);
/// m = n, f = id, X_i = { j : adj[i] has bit j }.
IcsiInstance instance_from_graph(std::span<const Subset> adjacency);

// --- side-information graph ----------------------------------------------

/// Directed graph G_H on [n]: edge (f(i), v) for every v in X_i.
struct SideInfoGraph {
    std::size_t n = 0;
    std::vector<Subset> out;  // out-neighbour masks
};

/// Requires m = n and f bijective; throws InvalidInput otherwise.
SideInfoGraph side_info_graph(const IcsiInstance& inst);
bool is_symmetric(const SideInfoGraph& g);
/// Undirected complement of the symmetric closure.
SideInfoGraph complement(const SideInfoGraph& g);
/// Independence number of the symmetric closure. Exact; n <= max_n.
std::size_t graph_alpha(const SideInfoGraph& g, std::size_t max_n = kDefaultSubsetSearchCap);
/// Chromatic number of the symmetric closure. Exact; n <= max_n.
std::size_t graph_chromatic(const SideInfoGraph& g, std::size_t max_n = kDefaultSubsetSearchCap);

namespace naive {
// 2^n reference solvers used to cross-check the branch-and-bound versions.
std::size_t graph_alpha(const SideInfoGraph& g);
std::size_t graph_chromatic(const SideInfoGraph& g);
std::size_t generalized_independence_number(const IcsiInstance& inst);
}  // namespace naive

}  // namespace icsi
