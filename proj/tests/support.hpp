#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// deliberately avoid the library's search and elimination code: they work
// from the definitions by enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "icsi/galois.hpp"
#include "icsi/instance.hpp"
#include "icsi/io.hpp"

namespace testsupport {

using namespace icsi;

inline std::string data_path(const std::string& name) { return std::string(ICSI_TEST_DATA) + "/" + name; }

inline IcsiInstance load_inst(const std::string& name) { return load_instance(data_path(name)).inst; }
inline FqMatrix load_mat(const std::string& name) { return load_matrix(data_path(name)); }

inline FqMatrix mat(unsigned q, std::size_t rows, std::size_t cols, std::vector<Elem> entries) {
    return FqMatrix(FieldSpec::of_order(q), rows, cols, std::move(entries));
}

inline Vec bits(const std::string& s) {
    Vec v;
    for (char c : s) v.push_back(static_cast<Elem>(c - '0'));
    return v;
}

// --- random inputs -----------------------------------------------------------

inline FqMatrix random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> pick(0, f.q() - 1);
    std::vector<Elem> e(rows * cols);
    for (auto& x : e) x = pick(rng);
    return FqMatrix(f, rows, cols, std::move(e));
}

/// Random instance: n messages, m receivers, each demand random, each other
/// message in X_i with probability 1/2.
inline IcsiInstance random_instance(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    IcsiInstance inst;
    inst.n = n;
    inst.m = m;
    std::uniform_int_distribution<std::size_t> msg(0, n - 1);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < m; ++i) {
        inst.f.push_back(msg(rng));
        std::vector<std::size_t> side;
        for (std::size_t j = 0; j < n; ++j)
            if (j != inst.f.back() && coin(rng)) side.push_back(j);
        inst.X.push_back(side);
    }
    return inst;
}

/// Undirected random graph as adjacency masks.
inline std::vector<Subset> random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<Subset> adj(n, 0);
    std::bernoulli_distribution coin(p);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (coin(rng)) {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
    return adj;
}

// --- oracles -----------------------------------------------------------------

namespace oracle {

/// Product in F_p[x]/(modulus) on element codes (base-p digits, constant
/// term least significant), by schoolbook multiplication and long division.
inline Elem poly_mul(unsigned p, const std::vector<unsigned>& modulus, Elem a, Elem b) {
    const std::size_t e = modulus.size() - 1;
    std::vector<unsigned> x(e), y(e), prod(2 * e, 0);
    for (std::size_t k = 0; k < e; ++k) {
        x[k] = a % p;
        a /= p;
        y[k] = b % p;
        b /= p;
    }
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (std::size_t k = prod.size(); k-- > e;) {
        const unsigned c = prod[k];
        if (!c) continue;
        for (std::size_t j = 0; j <= e; ++j) prod[k - e + j] = (prod[k - e + j] + (p - c) * modulus[j] % p) % p;
    }
    Elem out = 0;
    for (std::size_t k = e; k-- > 0;) out = out * p + prod[k];
    return out;
}

inline Vec combine(const FieldSpec& f, const FqMatrix& m, const Vec& coeffs) {
    Vec out(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] = f.add(out[c], f.mul(coeffs[r], m.at(r, c)));
    return out;
}

inline bool next_digits(Vec& d, unsigned q) {
    for (std::size_t k = d.size(); k-- > 0;) {
        if (++d[k] < q) return true;
        d[k] = 0;
    }
    return false;
}

/// Every vector of the row space, as a set.
inline std::set<Vec> row_space(const FqMatrix& m) {
    std::set<Vec> out;
    Vec c(m.rows(), 0);
    do out.insert(combine(m.field(), m, c));
    while (next_digits(c, m.field().q()));
    return out;
}

/// log_q |row space|.
inline std::size_t rank_by_span(const FqMatrix& m) {
    std::size_t size = row_space(m).size(), r = 0;
    while (size > 1) {
        size /= m.field().q();
        ++r;
    }
    return r;
}

inline std::size_t weight_of(const Vec& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

/// Decodability straight from the definition: receiver i can tell apart any
/// two messages agreeing on X_i but differing at f(i) after delta errors,
/// i.e. every difference z with z_{X_i} = 0 and z_f(i) != 0 has
/// weight(z L) >= 2 delta + 1. Returns the minimum such weight.
inline std::size_t min_distinguishing_weight(const IcsiInstance& inst, const FqMatrix& L) {
    const FieldSpec& f = L.field();
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < inst.m; ++i) {
        Vec z(inst.n, 0);
        do {
            if (z[inst.f[i]] == 0) continue;
            bool on_side = false;
            for (std::size_t j : inst.X[i]) on_side |= z[j] != 0;
            if (on_side) continue;
            best = std::min(best, weight_of(combine(f, L, z)));
        } while (next_digits(z, f.q()));
    }
    return best;
}

inline bool decodable(const IcsiInstance& inst, const FqMatrix& L, std::size_t delta) {
    return min_distinguishing_weight(inst, L) >= 2 * delta + 1;
}

/// J(H) by its definition: {f(i)} union any subset of Y_i.
inline std::set<Subset> J_by_definition(const IcsiInstance& inst) {
    std::set<Subset> out;
    for (std::size_t i = 0; i < inst.m; ++i) {
        Subset owned = 0;
        for (std::size_t j : inst.X[i]) owned |= bit(j);
        std::vector<std::size_t> ys;
        for (std::size_t j = 0; j < inst.n; ++j)
            if (j != inst.f[i] && !(owned & bit(j))) ys.push_back(j);
        for (Subset s = 0; s < (Subset{1} << ys.size()); ++s) {
            Subset k = bit(inst.f[i]);
            for (std::size_t b = 0; b < ys.size(); ++b)
                if (s & (Subset{1} << b)) k |= bit(ys[b]);
            out.insert(k);
        }
    }
    return out;
}

/// Largest H with every nonempty subset in J(H).
inline std::size_t alpha_by_definition(const IcsiInstance& inst) {
    const auto J = J_by_definition(inst);
    std::size_t best = 0;
    for (Subset h = 1; h < (Subset{1} << inst.n); ++h) {
        bool ok = true;
        for (Subset k = h; k && ok; k = (k - 1) & h) ok = J.count(k) > 0;
        if (ok) best = std::max<std::size_t>(best, std::popcount(h));
    }
    return best;
}

/// Min-rank by trying every assignment of side-information coefficients.
inline std::size_t min_rank_brute(const IcsiInstance& inst, const FieldSpec& f) {
    std::size_t total = 0;
    for (const auto& x : inst.X) total += x.size();
    Vec digits(total, 0);
    std::size_t best = SIZE_MAX;
    do {
        FqMatrix V(f, inst.m, inst.n);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < inst.m; ++i) {
            V.set(i, inst.f[i], 1);
            for (std::size_t j : inst.X[i]) V.set(i, j, digits[pos++]);
        }
        best = std::min(best, rank_by_span(V));
    } while (next_digits(digits, f.q()));
    return best;
}

/// Minimum nonzero codeword weight of the row space (0 if rows are dependent).
inline std::size_t distance_brute(const FqMatrix& g) {
    std::size_t best = SIZE_MAX;
    Vec c(g.rows(), 0);
    while (next_digits(c, g.field().q())) best = std::min(best, weight_of(combine(g.field(), g, c)));
    return best;
}

/// Whether some binary k x N matrix generates a code of distance >= d.
inline bool binary_code_exists(std::size_t k, std::size_t N, std::size_t d) {
    const FieldSpec f = FieldSpec::of_order(2);
    const std::uint64_t total = std::uint64_t{1} << (k * N);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Elem> e(k * N);
        for (std::size_t b = 0; b < k * N; ++b) e[b] = (code >> b) & 1u;
        if (distance_brute(FqMatrix(f, k, N, e)) >= d) return true;
    }
    return false;
}

/// Smallest weight of a nontrivial combination of at most rho rows.
inline std::size_t min_weight_rho(const FqMatrix& L, std::size_t rho) {
    std::size_t best = SIZE_MAX;
    Vec c(L.rows(), 0);
    while (next_digits(c, L.field().q()))
        if (weight_of(c) <= rho) best = std::min(best, weight_of(combine(L.field(), L, c)));
    return best;
}

/// Whether n binary rows of length N exist with every combination of at
/// most rho of them of weight >= d. Plain backtracking over increasing rows.
inline bool binary_rho_rows_exist(std::size_t n, std::size_t N, std::size_t rho, std::size_t d) {
    const FieldSpec f = FieldSpec::of_order(2);
    std::vector<Elem> chosen;
    std::function<bool(std::uint32_t)> go = [&](std::uint32_t from) {
        if (chosen.size() == n * N) return true;
        for (std::uint32_t v = from; v < (1u << N); ++v) {
            for (std::size_t b = 0; b < N; ++b) chosen.push_back((v >> b) & 1u);
            const std::size_t r = chosen.size() / N;
            if (min_weight_rho(FqMatrix(f, r, N, chosen), rho) >= d && go(v)) return true;
            chosen.resize(chosen.size() - N);
        }
        return false;
    };
    return go(1);
}

inline std::size_t graph_alpha_brute(const std::vector<Subset>& adj) {
    const std::size_t n = adj.size();
    std::size_t best = 0;
    for (Subset s = 0; s < (Subset{1} << n); ++s) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v)
            if ((s & bit(v)) && (adj[v] & s)) ok = false;
        if (ok) best = std::max<std::size_t>(best, std::popcount(s));
    }
    return best;
}

}  // namespace oracle
}  // namespace testsupport
