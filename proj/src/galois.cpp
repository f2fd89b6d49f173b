#include "icsi/galois.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "icsi/error.hpp"
#include "icsi/gf2.hpp"

namespace icsi {

namespace {

using Poly = std::vector<unsigned>;  // constant-first coefficients over F_p

// Conway polynomials for every extension field with q <= 256.
const std::map<std::pair<unsigned, unsigned>, Poly>& shipped_moduli() {
    static const std::map<std::pair<unsigned, unsigned>, Poly> table = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 2}, {2, 7, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return table;
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(unsigned p, Poly a, const Poly& m) {
    const std::size_t dm = m.size() - 1;
    for (std::size_t k = a.size(); k-- > dm;) {
        const unsigned c = a[k] % p;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dm; ++j) {
            const std::size_t idx = k - dm + j;
            a[idx] = (a[idx] + (p - c) * m[j]) % p;
        }
    }
    a.resize(std::min(a.size(), dm));
    return a;
}

Poly code_to_poly(unsigned p, unsigned e, Elem code) {
    Poly out(e, 0);
    for (unsigned k = 0; k < e; ++k) {
        out[k] = code % p;
        code /= p;
    }
    return out;
}

Elem poly_to_code(unsigned p, const Poly& a) {
    Elem code = 0;
    for (std::size_t k = a.size(); k-- > 0;) code = code * p + a[k];
    return code;
}

Elem slow_mul(unsigned p, unsigned e, const Poly& modulus, Elem a, Elem b) {
    const Poly pa = code_to_poly(p, e, a);
    const Poly pb = code_to_poly(p, e, b);
    Poly prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
    Poly r = poly_mod(p, prod, modulus);
    r.resize(e, 0);
    return poly_to_code(p, r);
}

std::vector<unsigned> prime_factors(unsigned v) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

Poly least_irreducible(unsigned p, unsigned e) {
    Poly poly(e + 1, 0);
    poly[e] = 1;
    const std::uint64_t total = pow_saturating(p, e);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (unsigned k = 0; k < e; ++k) {
            poly[k] = static_cast<unsigned>(c % p);
            c /= p;
        }
        if (poly[0] != 0 && is_irreducible(p, poly)) return poly;
    }
    throw InvalidInput("no irreducible polynomial found");  // unreachable for valid (p, e)
}

}  // namespace

bool is_prime(unsigned v) {
    if (v < 2) return false;
    for (unsigned d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

bool is_irreducible(unsigned p, std::span<const unsigned> poly_in) {
    Poly poly(poly_in.begin(), poly_in.end());
    while (poly.size() > 1 && poly.back() % p == 0) poly.pop_back();
    const std::size_t deg = poly.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    // Normalise to monic.
    if (poly.back() != 1) {
        unsigned lead = poly.back(), inv = 1;
        while ((lead * inv) % p != 1) ++inv;
        for (auto& c : poly) c = (c * inv) % p;
    }
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        Poly div(d + 1, 0);
        div[d] = 1;
        const std::uint64_t total = pow_saturating(p, d);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (std::size_t k = 0; k < d; ++k) {
                div[k] = static_cast<unsigned>(c % p);
                c /= p;
            }
            const Poly r = poly_mod(p, poly, div);
            if (std::all_of(r.begin(), r.end(), [](unsigned x) { return x == 0; })) return false;
        }
    }
    return true;
}

std::uint64_t pow_saturating(std::uint64_t q, std::uint64_t k) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (q != 0 && out > UINT64_MAX / q) return UINT64_MAX;
        out *= q;
    }
    return out;
}

FieldSpec FieldSpec::make(unsigned p, unsigned e, std::optional<std::vector<unsigned>> modulus, unsigned cap) {
    if (!is_prime(p)) throw InvalidInput("field characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw InvalidInput("extension degree must be >= 1");
    const std::uint64_t q64 = pow_saturating(p, e);
    if (q64 > cap) throw InvalidInput("field order " + std::to_string(q64) + " exceeds cap " + std::to_string(cap));

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->e = e;
    t->q = static_cast<unsigned>(q64);
    const unsigned q = t->q;

    if (e > 1) {
        if (modulus) {
            const Poly& m = *modulus;
            if (m.size() != e + 1 || m.back() != 1)
                throw InvalidInput("modulus must be monic of degree " + std::to_string(e));
            if (std::any_of(m.begin(), m.end(), [p](unsigned c) { return c >= p; }))
                throw InvalidInput("modulus coefficient out of range");
            if (!is_irreducible(p, m)) throw InvalidInput("modulus is reducible over F_" + std::to_string(p));
            t->modulus = m;
        } else {
            auto it = shipped_moduli().find({p, e});
            t->modulus = it != shipped_moduli().end() ? it->second : least_irreducible(p, e);
        }
    } else if (modulus && !modulus->empty()) {
        throw InvalidInput("a prime field takes no modulus");
    }

    t->neg.resize(q);
    t->inv.assign(q, 0);
    if (e == 1) {
        for (unsigned a = 0; a < q; ++a) t->neg[a] = (q - a) % q;
        for (unsigned a = 1; a < q; ++a) {
            // Fermat: a^(q-2)
            std::uint64_t r = 1, b = a, k = q - 2;
            while (k) {
                if (k & 1) r = r * b % q;
                b = b * b % q;
                k >>= 1;
            }
            t->inv[a] = static_cast<Elem>(r);
        }
    } else {
        for (unsigned a = 0; a < q; ++a) {
            Poly d = code_to_poly(p, e, a);
            for (auto& c : d) c = (p - c) % p;
            t->neg[a] = poly_to_code(p, d);
        }
        // Find a generator of the multiplicative group, then tabulate.
        const auto factors = prime_factors(q - 1);
        auto slow_pow = [&](Elem a, std::uint64_t k) {
            Elem r = 1;
            while (k) {
                if (k & 1) r = slow_mul(p, e, t->modulus, r, a);
                a = slow_mul(p, e, t->modulus, a, a);
                k >>= 1;
            }
            return r;
        };
        Elem gen = 0;
        for (Elem g = 2; g < q && gen == 0; ++g) {
            bool primitive = true;
            for (unsigned r : factors)
                if (slow_pow(g, (q - 1) / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) gen = g;
        }
        if (q == 2) gen = 1;
        t->exp.resize(q - 1);
        t->log.assign(q, 0);
        Elem x = 1;
        for (unsigned k = 0; k + 1 < q; ++k) {
            t->exp[k] = x;
            t->log[x] = k;
            x = slow_mul(p, e, t->modulus, x, gen);
        }
        for (unsigned a = 1; a < q; ++a) t->inv[a] = t->exp[(q - 1 - t->log[a]) % (q - 1)];
    }

    return FieldSpec(std::shared_ptr<const Tables>(std::move(t)));
}

FieldSpec::FieldSpec() {
    static const FieldSpec binary = make(2);
    tables_ = binary.tables_;
}

FieldSpec FieldSpec::of_order(unsigned q) {
    for (unsigned p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        if (!is_prime(p)) break;
        unsigned e = 0, v = q;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (v != 1) break;
        return make(p, e);
    }
    throw InvalidInput("field order " + std::to_string(q) + " is not a prime power");
}

Elem FieldSpec::add_digits(Elem a, Elem b) const {
    const unsigned p = tables_->p;
    Elem out = 0, scale = 1;
    for (unsigned k = 0; k < tables_->e; ++k) {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

Elem FieldSpec::pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

// --- FqMatrix ------------------------------------------------------------

FqMatrix::FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FqMatrix::FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw InvalidInput("matrix entry count " + std::to_string(data_.size()) + " != " + std::to_string(rows_) +
                           "x" + std::to_string(cols_));
    for (Elem v : data_)
        if (v >= field_.q()) throw InvalidInput("matrix entry " + std::to_string(v) + " outside field");
}

FqMatrix FqMatrix::from_rows(FieldSpec field, const std::vector<Vec>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    std::vector<Elem> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw InvalidInput("ragged matrix rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return FqMatrix(std::move(field), rows.size(), cols, std::move(data));
}

FqMatrix FqMatrix::identity(FieldSpec field, std::size_t n) {
    FqMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Vec FqMatrix::col_vec(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

FqMatrix FqMatrix::select_rows(std::span<const std::size_t> indices) const {
    FqMatrix out(field_, indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= rows_) throw InvalidInput("row index out of range");
        std::copy(row(indices[k]).begin(), row(indices[k]).end(), out.row(k).begin());
    }
    return out;
}

FqMatrix FqMatrix::select_cols(std::span<const std::size_t> indices) const {
    FqMatrix out(field_, rows_, indices.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] >= cols_) throw InvalidInput("column index out of range");
            out.set(r, k, at(r, indices[k]));
        }
    return out;
}

FqMatrix FqMatrix::hconcat(const FqMatrix& other) const {
    if (other.rows_ != rows_) throw InvalidInput("hconcat row mismatch");
    FqMatrix out(field_, rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::copy(row(r).begin(), row(r).end(), out.row(r).begin());
        std::copy(other.row(r).begin(), other.row(r).end(), out.row(r).begin() + static_cast<long>(cols_));
    }
    return out;
}

FqMatrix FqMatrix::vconcat(const FqMatrix& other) const {
    if (other.cols_ != cols_) throw InvalidInput("vconcat column mismatch");
    FqMatrix out = *this;
    out.data_.insert(out.data_.end(), other.data_.begin(), other.data_.end());
    out.rows_ += other.rows_;
    return out;
}

void FqMatrix::append_row(std::span<const Elem> r) {
    if (r.size() != cols_) throw InvalidInput("append_row width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidInput("matrix product dimension mismatch");
    const FieldSpec& f = a.field();
    FqMatrix out(f, a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem c = a.at(r, k);
            if (c != 0) axpy(f, c, b.row(k), out.row(r));
        }
    return out;
}

// --- vectors -------------------------------------------------------------

std::size_t weight(std::span<const Elem> v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

Vec vec_mat(std::span<const Elem> z, const FqMatrix& m) {
    if (z.size() != m.rows()) throw InvalidInput("vector-matrix dimension mismatch");
    Vec out(m.cols(), 0);
    for (std::size_t r = 0; r < z.size(); ++r)
        if (z[r] != 0) axpy(m.field(), z[r], m.row(r), out);
    return out;
}

Vec mat_vec(const FqMatrix& m, std::span<const Elem> x) {
    if (x.size() != m.cols()) throw InvalidInput("matrix-vector dimension mismatch");
    Vec out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot(m.field(), m.row(r), x);
    return out;
}

void axpy(const FieldSpec& f, Elem c, std::span<const Elem> v, std::span<Elem> acc) {
    if (c == 0) return;
    if (c == 1) {
        for (std::size_t k = 0; k < v.size(); ++k) acc[k] = f.add(acc[k], v[k]);
        return;
    }
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) acc[k] = f.add(acc[k], f.mul(c, v[k]));
}

Elem dot(const FieldSpec& f, std::span<const Elem> a, std::span<const Elem> b) {
    Elem s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != 0 && b[k] != 0) s = f.add(s, f.mul(a[k], b[k]));
    return s;
}

bool odometer_next(std::span<Elem> digits, unsigned q) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < q) return true;
        digits[k] = 0;
    }
    return false;
}

// --- linear algebra ------------------------------------------------------

Echelon row_reduce(const FqMatrix& m) {
    const FieldSpec& f = m.field();
    FqMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = r;
        while (sel < a.rows() && a.at(sel, c) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != r)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                const Elem t = a.at(r, k);
                a.set(r, k, a.at(sel, k));
                a.set(sel, k, t);
            }
        const Elem inv = f.inv(a.at(r, c));
        for (std::size_t k = 0; k < a.cols(); ++k) a.set(r, k, f.mul(a.at(r, k), inv));
        for (std::size_t o = 0; o < a.rows(); ++o) {
            if (o == r || a.at(o, c) == 0) continue;
            axpy(f, f.neg(a.at(o, c)), a.row(r), a.row(o));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::size_t> keep(r);
    for (std::size_t k = 0; k < r; ++k) keep[k] = k;
    return Echelon{a.select_rows(keep), std::move(pivots)};
}

namespace generic {

std::size_t rank(const FqMatrix& m) { return row_reduce(m).rank(); }

FqMatrix kernel_basis(const FqMatrix& a) {
    const Echelon ech = row_reduce(a);
    const FieldSpec& f = a.field();
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : ech.pivots) is_pivot[c] = true;
    FqMatrix basis(f, 0, a.cols());
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < ech.rank(); ++r) v[ech.pivots[r]] = f.neg(ech.reduced.at(r, free));
        basis.append_row(v);
    }
    return basis;
}

std::optional<Vec> solve_one(const FqMatrix& a, std::span<const Elem> b) {
    std::optional<Vec> out;
    icsi::solve_affine(a, b, [&](std::span<const Elem> x) {
        out = Vec(x.begin(), x.end());
        return false;
    });
    return out;
}

}  // namespace generic

std::size_t rank(const FqMatrix& m) { return m.field().is_binary() ? gf2::rank(m) : generic::rank(m); }

FqMatrix kernel_basis(const FqMatrix& a) {
    return a.field().is_binary() ? gf2::kernel_basis(a) : generic::kernel_basis(a);
}

std::optional<Vec> solve_one(const FqMatrix& a, std::span<const Elem> b) {
    return a.field().is_binary() ? gf2::solve_one(a, b) : generic::solve_one(a, b);
}

std::uint64_t solve_affine(const FqMatrix& a, std::span<const Elem> b,
                           const std::function<bool(std::span<const Elem>)>& visit) {
    if (b.size() != a.rows()) throw InvalidInput("solve_affine: right-hand side has wrong length");
    const FieldSpec& f = a.field();
    FqMatrix aug = a.hconcat(FqMatrix(f, a.rows(), 1, Vec(b.begin(), b.end())));
    const Echelon ech = row_reduce(aug);
    const std::size_t n = a.cols();
    if (!ech.pivots.empty() && ech.pivots.back() == n) return 0;  // 0 = 1 row

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : ech.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Vec assignment(free_cols.size(), 0);
    Vec x(n, 0);
    std::uint64_t count = 0;
    do {
        for (std::size_t k = 0; k < free_cols.size(); ++k) x[free_cols[k]] = assignment[k];
        for (std::size_t r = 0; r < ech.rank(); ++r) {
            Elem v = ech.reduced.at(r, n);
            for (std::size_t k = 0; k < free_cols.size(); ++k)
                if (assignment[k] != 0) v = f.sub(v, f.mul(ech.reduced.at(r, free_cols[k]), assignment[k]));
            x[ech.pivots[r]] = v;
        }
        ++count;
        if (!visit(x)) break;
    } while (odometer_next(assignment, f.q()));
    return count;
}

std::vector<Vec> solve_affine_all(const FqMatrix& a, std::span<const Elem> b, std::uint64_t cap) {
    std::vector<Vec> out;
    const std::size_t nullity = a.cols() - rank(a);
    if (pow_saturating(a.field().q(), nullity) > cap) throw BudgetExceeded("solution set exceeds cap");
    solve_affine(a, b, [&](std::span<const Elem> x) {
        out.emplace_back(x.begin(), x.end());
        return true;
    });
    return out;
}

std::uint64_t span_iter(const FqMatrix& rows, const std::function<bool(std::span<const Elem>)>& visit,
                        std::uint64_t cap) {
    const Echelon ech = row_reduce(rows);
    const FieldSpec& f = rows.field();
    if (pow_saturating(f.q(), ech.rank()) > cap)
        throw BudgetExceeded("span of rank " + std::to_string(ech.rank()) + " exceeds enumeration cap");
    Vec coeffs(ech.rank(), 0);
    Vec v(rows.cols(), 0);
    std::uint64_t count = 0;
    do {
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) axpy(f, coeffs[k], ech.reduced.row(k), v);
        ++count;
        if (!visit(v)) break;
    } while (odometer_next(coeffs, f.q()));
    return count;
}

// --- IncrementalEchelon --------------------------------------------------

IncrementalEchelon::IncrementalEchelon(FieldSpec field, std::size_t width)
    : field_(std::move(field)), width_(width), scratch_(width) {}

bool IncrementalEchelon::reduce(std::span<Elem> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Elem c = v[pivots_[k]];
        if (c != 0) axpy(field_, field_.neg(c), rows_[k], v);
    }
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

bool IncrementalEchelon::in_span(std::span<const Elem> v) const {
    std::copy(v.begin(), v.end(), scratch_.begin());
    return reduce(scratch_);
}

bool IncrementalEchelon::push(std::span<const Elem> v) {
    Vec r(v.begin(), v.end());
    if (reduce(r)) return false;
    std::size_t piv = 0;
    while (r[piv] == 0) ++piv;
    const Elem inv = field_.inv(r[piv]);
    for (auto& x : r) x = field_.mul(x, inv);
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
}

void IncrementalEchelon::pop() {
    rows_.pop_back();
    pivots_.pop_back();
}

}  // namespace icsi
