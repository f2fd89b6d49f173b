#include "icsi/gf2.hpp"

#include <bit>
#include <utility>

#include "icsi/error.hpp"

namespace icsi {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

Gf2Matrix Gf2Matrix::from(const FqMatrix& m) {
    if (m.field().q() != 2) throw InvalidInput("packed GF(2) matrix needs a binary field");
    Gf2Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c)) out.set(r, c, true);
    return out;
}

FqMatrix Gf2Matrix::to_fq() const {
    FqMatrix out(FieldSpec::make(2), rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, get(r, c) ? 1 : 0);
    return out;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool v) {
    auto& w = row(r)[c >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    w = v ? (w | bit) : (w & ~bit);
}

std::vector<std::size_t> Gf2Matrix::reduce() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t sel = r;
        while (sel < rows_ && !get(sel, c)) ++sel;
        if (sel == rows_) continue;
        if (sel != r)
            for (std::size_t w = 0; w < words_; ++w) std::swap(row(r)[w], row(sel)[w]);
        for (std::size_t o = 0; o < rows_; ++o) {
            if (o == r || !get(o, c)) continue;
            auto dst = row(o);
            auto src = row(r);
            for (std::size_t w = c >> 6; w < words_; ++w) dst[w] ^= src[w];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

namespace gf2 {

std::size_t rank(const FqMatrix& m) {
    Gf2Matrix g = Gf2Matrix::from(m);
    return g.reduce().size();
}

FqMatrix kernel_basis(const FqMatrix& a) {
    Gf2Matrix g = Gf2Matrix::from(a);
    const auto pivots = g.reduce();
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    FqMatrix basis(a.field(), 0, a.cols());
    Vec v(a.cols());
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = g.get(r, free) ? 1 : 0;
        basis.append_row(v);
    }
    return basis;
}

std::optional<Vec> solve_one(const FqMatrix& a, std::span<const Elem> b) {
    if (b.size() != a.rows()) throw InvalidInput("solve_one: right-hand side has wrong length");
    const std::size_t n = a.cols();
    Gf2Matrix g(a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c)
            if (a.at(r, c)) g.set(r, c, true);
        if (b[r]) g.set(r, n, true);
    }
    const auto pivots = g.reduce();
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    Vec x(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = g.get(r, n) ? 1 : 0;
    return x;
}

}  // namespace gf2

}  // namespace icsi
