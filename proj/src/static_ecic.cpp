#include "icsi/static_ecic.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>

#include "icsi/error.hpp"

namespace icsi {

namespace {

// Advances c (strictly increasing, values < n) to the next combination in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    return c;
}

}  // namespace

RhoDeltaReport verify_rho_delta(const FqMatrix& L, std::size_t rho, std::size_t delta, std::uint64_t cap) {
    const FieldSpec& f = L.field();
    const std::size_t n = L.rows();
    const std::size_t top = std::min(rho, n);
    BigInt total = 0;
    for (std::size_t s = 1; s <= top; ++s) total += binomial(n, s) * big_pow(f.q() - 1, s);
    if (total > cap) throw BudgetExceeded("too many row combinations to check");

    RhoDeltaReport out;
    out.min_weight = SIZE_MAX;
    Vec word(L.cols());
    for (std::size_t s = 1; s <= top; ++s) {
        auto rows = first_combination(s);
        do {
            Vec digits(s, 0);  // coefficient - 1
            do {
                ++out.cost;
                std::fill(word.begin(), word.end(), 0);
                for (std::size_t k = 0; k < s; ++k) axpy(f, digits[k] + 1, L.row(rows[k]), word);
                const std::size_t w = weight(word);
                if (w < out.min_weight) {
                    out.min_weight = w;
                    Vec z(n, 0);
                    for (std::size_t k = 0; k < s; ++k) z[rows[k]] = digits[k] + 1;
                    out.witness = std::move(z);
                }
            } while (odometer_next(digits, f.q() - 1));
        } while (next_combination(rows, n));
    }
    if (top == 0) out.min_weight = L.cols() + 1;
    out.ok = out.min_weight >= 2 * delta + 1;
    if (out.ok) out.witness.reset();
    return out;
}

IcsiInstance canonical_instance(std::size_t n, std::size_t rho, std::size_t max_receivers) {
    if (n == 0 || n > kMaxMessages) throw InvalidInput("message count out of range");
    if (rho < 1 || rho > n) throw InvalidInput("rho must lie in [1, n]");
    BigInt count = 0;
    for (std::size_t s = 1; s <= rho; ++s) count += binomial(n, s);
    if (count > max_receivers) throw BudgetExceeded("canonical instance has too many receivers");

    IcsiInstance inst;
    inst.n = n;
    for (std::size_t s = 1; s <= rho; ++s) {
        auto K = first_combination(s);
        do {
            inst.f.push_back(K.front());
            std::vector<std::size_t> side;
            for (std::size_t j = 0, k = 0; j < n; ++j) {
                if (k < K.size() && K[k] == j) {
                    ++k;
                    continue;
                }
                side.push_back(j);
            }
            inst.X.push_back(std::move(side));
        } while (next_combination(K, n));
    }
    inst.m = inst.f.size();
    return inst;
}

RhoStar rho_star(std::size_t n, std::size_t rho, unsigned q, const NqOptions& opts) {
    if (rho < 1 || rho > n) throw InvalidInput("rho must lie in [1, n]");
    RhoStar out;
    if (opts.mode != NqMode::Search) {
        if (q == 2 && n == 20 && rho == 10) {
            out.value = out.lower = out.upper = 17;
            out.provenance = Provenance::PaperTable;
            return out;
        }
        if (q + 1 >= n) {
            out.value = out.lower = out.upper = rho;
            out.provenance = Provenance::MdsRule;
            return out;
        }
    }
    // rho* = n - K with K the largest dimension of an [n, K, >= rho + 1] code.
    std::size_t k_lo = 0, k_hi = 0;
    bool searched = false;
    for (std::size_t k = 1; k + rho <= n; ++k) {
        const auto e = nq_kd(q, k, rho + 1, opts);
        if (e.provenance == Provenance::Searched) searched = true;
        if (e.lower > n) break;
        k_hi = k;
        if (e.upper <= n) k_lo = k;
    }
    out.lower = n - k_hi;
    out.upper = n - k_lo;
    if (k_lo == k_hi) {
        out.value = out.lower;
        out.provenance = searched ? Provenance::Searched : Provenance::MdsRule;
    }
    return out;
}

StaticReport static_bounds(std::size_t n, std::size_t rho, std::size_t delta, unsigned q, const NqOptions& opts) {
    StaticReport r;
    r.rho_star = rho_star(n, rho, q, opts);
    r.lower_alpha = nq_kd(q, rho, 2 * delta + 1, opts);
    if (r.rho_star.value) {
        r.lower_singleton = *r.rho_star.value + 2 * delta;
        r.upper = nq_kd(q, *r.rho_star.value, 2 * delta + 1, opts);
    }
    if (q + 1 >= n && q + 1 >= rho + 2 * delta) r.exact = rho + 2 * delta;
    return r;
}

bool gv_condition(std::size_t n, std::size_t rho, std::size_t delta, unsigned q, std::size_t N) {
    BigInt lhs = 0;
    for (std::size_t i = 0; i < rho; ++i) lhs += binomial(n - 1, i) * big_pow(q - 1, i);
    lhs *= sphere_volume(q, N, std::min(N, 2 * delta));
    return lhs < big_pow(q, N);
}

GreedyResult gv_greedy(std::size_t n, std::size_t rho, std::size_t delta, const FieldSpec& field, std::size_t N,
                       GreedyOrder order, std::uint64_t seed) {
    if (rho < 1 || rho > n) throw InvalidInput("rho must lie in [1, n]");
    if (N == 0) throw InvalidInput("code length must be at least 1");
    const unsigned q = field.q();
    const std::uint64_t space = pow_saturating(q, N);
    if (space > (1ull << 24)) throw BudgetExceeded("ambient space too large for the greedy construction");

    // Vector <-> code, first coordinate most significant.
    auto encode = [&](std::span<const Elem> v) {
        std::uint64_t c = 0;
        for (Elem x : v) c = c * q + x;
        return c;
    };
    auto decode_vec = [&](std::uint64_t c) {
        Vec v(N);
        for (std::size_t j = N; j-- > 0;) {
            v[j] = static_cast<Elem>(c % q);
            c /= q;
        }
        return v;
    };

    std::vector<Vec> ball;
    for (std::uint64_t c = 0; c < space; ++c) {
        Vec v = decode_vec(c);
        if (weight(v) <= 2 * delta) ball.push_back(std::move(v));
    }
    std::vector<std::uint8_t> forbidden(space, 0);
    Vec tmp(N);
    auto forbid_around = [&](std::span<const Elem> s) {
        for (const auto& b : ball) {
            for (std::size_t j = 0; j < N; ++j) tmp[j] = field.add(b[j], s[j]);
            forbidden[encode(tmp)] = 1;
        }
    };
    forbid_around(Vec(N, 0));

    std::vector<std::uint64_t> candidates(space - 1);
    std::iota(candidates.begin(), candidates.end(), 1);
    if (order == GreedyOrder::Seeded) {
        std::mt19937_64 rng(seed);
        std::shuffle(candidates.begin(), candidates.end(), rng);
    }

    GreedyResult out;
    out.condition_holds = gv_condition(n, rho, delta, q, N);
    std::vector<Vec> chosen;
    while (chosen.size() < n) {
        auto it = std::find_if(candidates.begin(), candidates.end(), [&](std::uint64_t c) { return !forbidden[c]; });
        if (it == candidates.end()) break;
        Vec r = decode_vec(*it);
        // New shifts: c r + (combination of <= rho - 2 earlier rows).
        if (rho >= 2) {
            Vec acc(N);
            std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t left) {
                for (Elem c = 1; c < q; ++c) {
                    Vec s = acc;
                    axpy(field, c, r, s);
                    forbid_around(s);
                }
                if (left == 0) return;
                for (std::size_t j = from; j < chosen.size(); ++j) {
                    for (Elem c = 1; c < q; ++c) {
                        axpy(field, c, chosen[j], acc);
                        extend(j + 1, left - 1);
                        axpy(field, field.neg(c), chosen[j], acc);
                    }
                }
            };
            extend(0, rho - 2);
        }
        chosen.push_back(std::move(r));
    }
    out.rows = chosen.size();
    out.partial = FqMatrix::from_rows(field, chosen, N);
    if (chosen.size() == n) {
        if (!verify_rho_delta(out.partial, rho, delta).ok) throw Error("internal: greedy output fails re-verification");
        out.L = out.partial;
    }
    return out;
}

bool weak_resilience_check(const FqMatrix& L, std::size_t rho, std::size_t t, std::uint64_t cap) {
    if (L.field().q() != 2) throw InvalidInput("weak resilience is defined for binary matrices only");
    const std::size_t n = L.rows(), N = L.cols();
    if (rho > n) throw InvalidInput("rho exceeds the number of outputs");
    if (t > N) throw InvalidInput("t exceeds the number of inputs");
    if (N > 30) throw BudgetExceeded("too many inputs for the definitional check");
    const BigInt work = binomial(n, rho) * binomial(N, t) * big_pow(2, N);
    if (work > cap) throw BudgetExceeded("weak resilience check exceeds budget");
    if (rho == 0) return true;
    if (N - t < rho) return false;

    std::vector<std::uint32_t> masks(n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (L.at(r, c)) masks[r] |= 1u << c;

    const std::uint64_t expected = std::uint64_t{1} << (N - t - rho);
    std::vector<std::uint64_t> counts;
    auto R = first_combination(rho);
    do {
        auto T = first_combination(t);
        do {
            counts.assign(std::size_t{1} << (t + rho), 0);
            for (std::uint32_t x = 0; x < (1u << N); ++x) {
                std::size_t fix = 0;
                for (std::size_t k = 0; k < t; ++k) fix |= static_cast<std::size_t>((x >> T[k]) & 1u) << k;
                std::size_t out = 0;
                for (std::size_t k = 0; k < rho; ++k)
                    out |= static_cast<std::size_t>(std::popcount(masks[R[k]] & x) & 1) << k;
                ++counts[(fix << rho) | out];
            }
            for (auto c : counts)
                if (c != expected) return false;
        } while (next_combination(T, N));
    } while (next_combination(R, n));
    return true;
}

}  // namespace icsi
