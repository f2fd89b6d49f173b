#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "icsi/galois.hpp"

namespace icsi {

// Exhaustive search for a dim x length matrix L whose every test vector z
// satisfies weight(z L) >= min_weight.
//
// weight(z L) counts the columns c with z.c != 0, so only the multiset of
// columns matters, and a column may be replaced by any nonzero multiple of
// itself. Candidates are therefore non-decreasing sequences of projective
// point representatives (first nonzero coordinate 1, ordered by column code
// sum_r c_r q^r). Zero columns never help and are excluded.

inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000'000ull;

struct ColumnSearchSpec {
    FieldSpec field;
    std::size_t dim = 0;
    std::vector<Vec> tests;
    std::size_t min_weight = 0;
    std::size_t length = 0;
    std::uint64_t node_budget = kDefaultNodeBudget;
    unsigned workers = 1;
};

enum class ColumnSearchStatus { Found, Refuted, BudgetExceeded };

struct ColumnSearchResult {
    ColumnSearchStatus status = ColumnSearchStatus::Refuted;
    std::optional<FqMatrix> matrix;  // present iff Found: the least candidate in search order
    std::uint64_t nodes = 0;
    std::uint64_t candidate_columns = 0;
};

/// Runs the search. The result (status and matrix) is independent of
/// `workers`: the space is split by first column and the least successful
/// split wins.
ColumnSearchResult search_columns(const ColumnSearchSpec& spec);

/// Projective point representatives of F_q^dim in ascending column-code order.
std::vector<Vec> projective_points(const FieldSpec& field, std::size_t dim);
/// Scales v so its first nonzero entry is 1.
Vec normalize_projective(const FieldSpec& field, std::span<const Elem> v);
/// Deduplicates vectors up to nonzero scalar multiples; drops zero vectors.
std::vector<Vec> projective_reduce(const FieldSpec& field, const std::vector<Vec>& vs);

}  // namespace icsi
