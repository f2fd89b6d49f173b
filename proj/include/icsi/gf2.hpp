#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "icsi/galois.hpp"

namespace icsi {

/// Word-packed binary matrix. Bit c of row r lives in word c / 64, bit c % 64.
class Gf2Matrix {
public:
    Gf2Matrix(std::size_t rows, std::size_t cols);
    static Gf2Matrix from(const FqMatrix& m);
    FqMatrix to_fq() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }

    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v);
    std::span<const std::uint64_t> row(std::size_t r) const { return {bits_.data() + r * words_, words_}; }
    std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * words_, words_}; }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> reduce();

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

namespace gf2 {
std::size_t rank(const FqMatrix& m);
FqMatrix kernel_basis(const FqMatrix& a);
std::optional<Vec> solve_one(const FqMatrix& a, std::span<const Elem> b);
}  // namespace gf2

}  // namespace icsi
