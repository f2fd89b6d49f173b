#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace icsi {

// Field elements are integer codes 0..q-1. Code 0 is the additive identity,
// code 1 the multiplicative identity. In an extension field GF(p^e) the code
// is the base-p expansion of the polynomial coefficients, constant term least
// significant.
using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

inline constexpr unsigned kDefaultFieldCap = 1u << 16;

/// Finite field F_q, q = p^e. Immutable; copies share the arithmetic tables.
class FieldSpec {
public:
    /// GF(2).
    FieldSpec();

    /// Builds GF(p^e). When `modulus` is empty for e > 1 a shipped default
    /// polynomial is used (or, above the shipped range, the least monic
    /// irreducible). `modulus` lists coefficients constant-first and must be
    /// monic of degree e. Throws InvalidInput on a non-prime p, reducible
    /// modulus or q above `cap`.
    static FieldSpec make(unsigned p, unsigned e = 1, std::optional<std::vector<unsigned>> modulus = std::nullopt,
                          unsigned cap = kDefaultFieldCap);

    /// Convenience: GF(q) for a prime power q with the default modulus.
    static FieldSpec of_order(unsigned q);

    unsigned p() const { return tables_->p; }
    unsigned e() const { return tables_->e; }
    unsigned q() const { return tables_->q; }
    bool is_binary() const { return tables_->q == 2; }
    // Constant-first coefficients of the degree-e modulus; empty when e = 1.
    const std::vector<unsigned>& modulus() const { return tables_->modulus; }

    Elem add(Elem a, Elem b) const {
        if (tables_->e == 1) {
            const Elem s = a + b;
            return s >= tables_->q ? s - tables_->q : s;
        }
        if (tables_->p == 2) return a ^ b;
        return add_digits(a, b);
    }
    Elem neg(Elem a) const { return tables_->neg[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (tables_->e == 1)
            return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % tables_->q);
        unsigned s = tables_->log[a] + tables_->log[b];
        if (s >= tables_->q - 1) s -= tables_->q - 1;
        return tables_->exp[s];
    }
    /// Multiplicative inverse; a must be nonzero.
    Elem inv(Elem a) const { return tables_->inv[a]; }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const;

    bool operator==(const FieldSpec& other) const {
        return tables_ == other.tables_ ||
               (q() == other.q() && modulus() == other.modulus());
    }

private:
    struct Tables {
        unsigned p = 2;
        unsigned e = 1;
        unsigned q = 2;
        std::vector<unsigned> modulus;
        std::vector<Elem> neg;
        std::vector<Elem> inv;
        std::vector<unsigned> log;  // extension fields only
        std::vector<Elem> exp;      // extension fields only
    };

    explicit FieldSpec(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
    Elem add_digits(Elem a, Elem b) const;

    std::shared_ptr<const Tables> tables_;
};

bool is_prime(unsigned v);

/// True iff the monic polynomial (constant-first coefficients over F_p) has no
/// monic factor of degree 1..deg/2. Exhaustive trial division.
bool is_irreducible(unsigned p, std::span<const unsigned> poly);

/// Dense row-major matrix over F_q.
class FqMatrix {
public:
    FqMatrix() = default;  // 0 x 0 over GF(2)
    FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols);
    FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);
    static FqMatrix from_rows(FieldSpec field, const std::vector<Vec>& rows, std::size_t cols = 0);
    static FqMatrix identity(FieldSpec field, std::size_t n);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Elem v) { data_[r * cols_ + c] = v; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
    Vec col_vec(std::size_t c) const;
    const std::vector<Elem>& entries() const { return data_; }

    FqMatrix transpose() const;
    FqMatrix select_rows(std::span<const std::size_t> indices) const;
    FqMatrix select_cols(std::span<const std::size_t> indices) const;
    /// [this | other]
    FqMatrix hconcat(const FqMatrix& other) const;
    /// rows of this followed by rows of other
    FqMatrix vconcat(const FqMatrix& other) const;
    void append_row(std::span<const Elem> r);

    bool operator==(const FqMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);

// --- vectors -------------------------------------------------------------

std::size_t weight(std::span<const Elem> v);
/// Row vector times matrix: z * M, |z| = rows(M).
Vec vec_mat(std::span<const Elem> z, const FqMatrix& m);
/// Matrix times column vector: M * x^T, |x| = cols(M).
Vec mat_vec(const FqMatrix& m, std::span<const Elem> x);
/// acc += c * v
void axpy(const FieldSpec& f, Elem c, std::span<const Elem> v, std::span<Elem> acc);
Elem dot(const FieldSpec& f, std::span<const Elem> a, std::span<const Elem> b);

/// Advances `digits` as a base-q odometer with the last position fastest.
/// Returns false after wrapping back to all-zero.
bool odometer_next(std::span<Elem> digits, unsigned q);

// --- linear algebra ------------------------------------------------------

struct Echelon {
    FqMatrix reduced;                 // reduced row echelon form, zero rows removed
    std::vector<std::size_t> pivots;  // pivot column of each row of `reduced`
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. Pivot = first nonzero entry in ascending column
/// order.
Echelon row_reduce(const FqMatrix& m);

std::size_t rank(const FqMatrix& m);

/// Rows form a basis of {x : A x^T = 0}; row count = cols(A) - rank(A).
FqMatrix kernel_basis(const FqMatrix& a);

/// Calls `visit` with every solution x of A x^T = b^T, free variables (the
/// non-pivot columns) swept as a base-q odometer in ascending column order,
/// the first free variable most significant. Stops early when `visit`
/// returns false. Returns the number of solutions visited.
std::uint64_t solve_affine(const FqMatrix& a, std::span<const Elem> b,
                           const std::function<bool(std::span<const Elem>)>& visit);
std::vector<Vec> solve_affine_all(const FqMatrix& a, std::span<const Elem> b, std::uint64_t cap = 1u << 24);
/// First solution in the enumeration order of solve_affine (all free
/// variables zero), if the system is consistent.
std::optional<Vec> solve_one(const FqMatrix& a, std::span<const Elem> b);

inline constexpr std::uint64_t kDefaultSpanCap = 1ull << 24;

/// Enumerates every vector of span(rows) exactly once (q^rank vectors, zero
/// first) in basis-odometer order. Throws BudgetExceeded when q^rank > cap.
std::uint64_t span_iter(const FqMatrix& rows, const std::function<bool(std::span<const Elem>)>& visit,
                        std::uint64_t cap = kDefaultSpanCap);

/// q^k saturating at UINT64_MAX.
std::uint64_t pow_saturating(std::uint64_t q, std::uint64_t k);

/// Incrementally maintained echelon basis supporting push/pop, used by
/// depth-first searches. Row k is zero at the pivots of rows 0..k-1.
class IncrementalEchelon {
public:
    IncrementalEchelon(FieldSpec field, std::size_t width);
    /// Reduces `v` against the basis in place; returns true if it became zero.
    bool reduce(std::span<Elem> v) const;
    bool in_span(std::span<const Elem> v) const;
    /// Adds v if independent; returns whether rank increased.
    bool push(std::span<const Elem> v);
    void pop();
    std::size_t rank() const { return pivots_.size(); }

private:
    FieldSpec field_;
    std::size_t width_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
    mutable Vec scratch_;
};

namespace generic {
// Reference implementations that ignore the GF(2) fast path.
std::size_t rank(const FqMatrix& m);
FqMatrix kernel_basis(const FqMatrix& a);
std::optional<Vec> solve_one(const FqMatrix& a, std::span<const Elem> b);
}  // namespace generic

}  // namespace icsi
