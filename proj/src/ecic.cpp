#include "icsi/ecic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "icsi/bounds.hpp"
#include "icsi/error.hpp"

namespace icsi {

const char* to_string(VerifyMethod m) {
    switch (m) {
        case VerifyMethod::Auto: return "auto";
        case VerifyMethod::Enumeration: return "enumeration";
        case VerifyMethod::SpanDistance: return "span-distance";
    }
    return "?";
}

namespace {

void check_matrix(const IcsiInstance& inst, const FqMatrix& L) {
    validate(inst);
    if (L.rows() != inst.n)
        throw InvalidInput("matrix has " + std::to_string(L.rows()) + " rows, instance has " +
                           std::to_string(inst.n) + " messages");
}

struct MinTracker {
    std::size_t min_weight = SIZE_MAX;
    std::optional<Vec> argmin;
    std::uint64_t cost = 0;

    void offer(std::size_t w, const Vec& z) {
        ++cost;
        if (w < min_weight) {
            min_weight = w;
            argmin = z;
        }
    }
};

void verify_by_enumeration(const IcsiInstance& inst, const FqMatrix& L, std::uint64_t cap, MinTracker& t) {
    Vec zbuf;
    iter_I(
        inst, L.field(),
        [&](std::span<const Elem> z) {
            zbuf.assign(z.begin(), z.end());
            t.offer(weight(vec_mat(z, L)), zbuf);
            return true;
        },
        cap);
}

void verify_by_span_distance(const IcsiInstance& inst, const FqMatrix& L, std::uint64_t cap, MinTracker& t) {
    const FieldSpec& f = L.field();
    const std::size_t N = L.cols();
    Vec s(N), word(N), z(inst.n);
    for (std::size_t i = 0; i < inst.m; ++i) {
        const auto ys = y_set(inst, i);
        if (pow_saturating(f.q(), ys.size()) > cap)
            throw BudgetExceeded("span of {L_j : j in Y_" + std::to_string(i + 1) + "} exceeds enumeration cap");
        const std::size_t fi = inst.f[i];
        Vec coeffs(ys.size(), 0);
        do {
            std::fill(s.begin(), s.end(), 0);
            for (std::size_t k = 0; k < ys.size(); ++k) axpy(f, coeffs[k], L.row(ys[k]), s);
            for (Elem c = 1; c < f.q(); ++c) {
                word = s;
                axpy(f, c, L.row(fi), word);
                std::fill(z.begin(), z.end(), 0);
                z[fi] = c;
                for (std::size_t k = 0; k < ys.size(); ++k) z[ys[k]] = coeffs[k];
                t.offer(weight(word), z);
            }
        } while (odometer_next(coeffs, f.q()));
    }
}

}  // namespace

VerificationReport verify(const IcsiInstance& inst, const FqMatrix& L, std::size_t delta, const VerifyOptions& opts) {
    check_matrix(inst, L);
    VerifyMethod method = opts.method;
    if (method == VerifyMethod::Auto) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < inst.m && total <= opts.cap; ++i)
            total += pow_saturating(L.field().q(), static_cast<std::uint64_t>(std::popcount(y_mask(inst, i))));
        method = total <= opts.cap ? VerifyMethod::SpanDistance : VerifyMethod::Enumeration;
    }
    MinTracker t;
    if (method == VerifyMethod::SpanDistance)
        verify_by_span_distance(inst, L, opts.cap, t);
    else
        verify_by_enumeration(inst, L, opts.cap, t);

    VerificationReport r;
    r.method = method;
    r.cost = t.cost;
    r.min_weight = t.min_weight;
    r.ok = t.min_weight >= 2 * delta + 1;
    if (!r.ok) r.witness = t.argmin;
    return r;
}

int max_delta(const IcsiInstance& inst, const FqMatrix& L, const VerifyOptions& opts) {
    const auto r = verify(inst, L, 0, opts);
    if (r.min_weight == 0) return -1;
    return static_cast<int>((r.min_weight - 1) / 2);
}

// --- min-rank -------------------------------------------------------------

namespace {

struct MinRankSearch {
    const IcsiInstance& inst;
    const FieldSpec& field;
    std::vector<std::size_t> order;
    std::vector<std::vector<Vec>> candidates;  // per position in `order`
    IncrementalEchelon echelon;
    std::vector<std::size_t> choice;
    std::vector<std::size_t> best_choice;
    std::size_t best = SIZE_MAX;
    std::size_t lower = 1;
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;
    bool aborted = false;

    bool done() const { return aborted || best <= lower; }

    void run(std::size_t depth) {
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        if (depth == order.size()) {
            if (echelon.rank() < best) {
                best = echelon.rank();
                best_choice = choice;
            }
            return;
        }
        for (std::size_t c = 0; c < candidates[depth].size() && !done(); ++c) {
            const bool grew = echelon.push(candidates[depth][c]);
            if (echelon.rank() < best) {
                choice[depth] = c;
                run(depth + 1);
            }
            if (grew) echelon.pop();
        }
    }
};

}  // namespace

MinRankWitness min_rank(const IcsiInstance& inst, const FieldSpec& field, std::uint64_t node_budget) {
    validate(inst);
    MinRankSearch s{inst, field, {}, {}, IncrementalEchelon(field, inst.n), {}, {}, SIZE_MAX, 1, 0, node_budget, false};
    s.order.resize(inst.m);
    std::iota(s.order.begin(), s.order.end(), 0);
    std::stable_sort(s.order.begin(), s.order.end(),
                     [&](std::size_t a, std::size_t b) { return inst.X[a].size() > inst.X[b].size(); });
    for (std::size_t i : s.order) {
        const auto& xs = inst.X[i];
        if (pow_saturating(field.q(), xs.size()) > (1u << 20))
            throw BudgetExceeded("receiver " + std::to_string(i + 1) + " has too many side-information choices");
        std::vector<Vec> cands;
        Vec digits(xs.size(), 0);
        do {
            Vec row(inst.n, 0);
            row[inst.f[i]] = 1;
            for (std::size_t k = 0; k < xs.size(); ++k) row[xs[k]] = digits[k];
            cands.push_back(std::move(row));
        } while (odometer_next(digits, field.q()));
        s.candidates.push_back(std::move(cands));
    }
    s.choice.assign(inst.m, 0);
    if (inst.n <= kDefaultSubsetSearchCap) s.lower = std::max<std::size_t>(1, generalized_independence_number(inst).alpha);
    s.run(0);

    MinRankWitness w;
    w.nodes = s.nodes;
    w.certified = !s.aborted;
    if (s.best_choice.empty()) {
        // Budget hit before any leaf: fall back to v_i = 0.
        s.best_choice.assign(inst.m, 0);
    }
    std::vector<Vec> rows(inst.m);
    for (std::size_t d = 0; d < inst.m; ++d) rows[s.order[d]] = s.candidates[d][s.best_choice[d]];
    w.V = FqMatrix::from_rows(field, rows);
    const Echelon ech = row_reduce(w.V);
    w.kappa = ech.rank();
    w.L_opt = ech.reduced.transpose();
    return w;
}

// --- constructions --------------------------------------------------------

std::size_t code_min_distance(const FqMatrix& g, std::uint64_t cap) {
    const FieldSpec& f = g.field();
    if (pow_saturating(f.q(), g.rows()) > cap) throw BudgetExceeded("code too large for exhaustive distance");
    std::size_t best = g.cols() + 1;
    Vec coeffs(g.rows(), 0);
    while (odometer_next(coeffs, f.q())) {
        // Only projective representatives: leading coefficient 1.
        auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](Elem x) { return x != 0; });
        if (*lead != 1) continue;
        best = std::min(best, weight(vec_mat(coeffs, g)));
    }
    return best;
}

FqMatrix construct_concat(const IcsiInstance& inst, const MinRankWitness& witness, const FqMatrix& outer,
                          std::size_t delta, std::uint64_t cap) {
    validate(inst);
    if (outer.rows() != witness.kappa)
        throw InvalidInput("outer code dimension " + std::to_string(outer.rows()) + " != min-rank " +
                           std::to_string(witness.kappa));
    if (pow_saturating(outer.field().q(), outer.rows()) <= cap) {
        const std::size_t d = code_min_distance(outer, cap);
        if (d < 2 * delta + 1)
            throw InvalidInput("outer code distance " + std::to_string(d) + " below " + std::to_string(2 * delta + 1));
    }
    return witness.L_opt * outer;
}

std::optional<LiftViolation> check_lift_basis(const IcsiInstance& inst, const FqMatrix& B, std::uint64_t cap) {
    check_matrix(inst, B);
    std::optional<LiftViolation> out;
    iter_I(
        inst, B.field(),
        [&](std::span<const Elem> z) {
            if (weight(vec_mat(z, B)) != 0) return true;
            Subset k = 0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (z[j]) k |= bit(j);
            out = LiftViolation{k, Vec(z.begin(), z.end())};
            return false;
        },
        cap);
    return out;
}

FqMatrix construct_lift(const IcsiInstance& inst, const FqMatrix& B, const FqMatrix& outer, std::size_t delta,
                        std::uint64_t cap) {
    check_matrix(inst, B);
    if (B.cols() != outer.rows()) throw InvalidInput("lifting basis width must equal outer code dimension");
    if (auto v = check_lift_basis(inst, B, cap)) {
        std::string ks;
        for (std::size_t j : members(v->K)) ks += (ks.empty() ? "" : ",") + std::to_string(j + 1);
        throw LiftConditionError("lifting condition fails for K = {" + ks + "}", *v);
    }
    if (pow_saturating(outer.field().q(), outer.rows()) <= cap) {
        const std::size_t d = code_min_distance(outer, cap);
        if (d < 2 * delta + 1)
            throw InvalidInput("outer code distance " + std::to_string(d) + " below " + std::to_string(2 * delta + 1));
    }
    return B * outer;
}

bool random_code_condition(const IcsiInstance& inst, unsigned q, std::size_t delta, std::size_t N) {
    BigInt lhs = 0;
    for (std::size_t i = 0; i < inst.m; ++i) lhs += big_pow(q, static_cast<std::size_t>(std::popcount(y_mask(inst, i))));
    lhs *= sphere_volume(q, N, std::min(N, 2 * delta));
    return lhs < big_pow(q, N);
}

std::size_t random_code_min_length(const IcsiInstance& inst, unsigned q, std::size_t delta) {
    std::size_t N = 1;
    while (!random_code_condition(inst, q, delta, N)) ++N;
    return N;
}

RandomConstruction construct_random(const IcsiInstance& inst, const FieldSpec& field, std::size_t delta,
                                    std::size_t N, std::uint64_t seed, std::size_t max_attempts,
                                    std::uint64_t minrank_budget) {
    validate(inst);
    if (N == 0) throw InvalidInput("code length must be at least 1");
    RandomConstruction out;
    out.condition_holds = random_code_condition(inst, field.q(), delta, N);
    out.condition_min_length = random_code_min_length(inst, field.q(), delta);
    try {
        const auto mr = min_rank(inst, field, minrank_budget);
        if (mr.certified) {
            out.singleton = mr.kappa + 2 * delta;
            out.below_singleton = N < *out.singleton;
        }
    } catch (const BudgetExceeded&) {
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> pick(0, field.q() - 1);
    std::vector<Elem> entries(inst.n * N);
    for (out.attempts = 1; out.attempts <= max_attempts; ++out.attempts) {
        for (auto& e : entries) e = pick(rng);
        FqMatrix L(field, inst.n, N, entries);
        if (verify(inst, L, delta).ok) {
            out.L = std::move(L);
            return out;
        }
    }
    out.attempts = max_attempts;
    return out;
}

// --- optimal length search -------------------------------------------------

LengthSearchResult search_min_length(const IcsiInstance& inst, const FieldSpec& field, std::size_t delta,
                                     std::size_t N_max, const SearchOptions& opts) {
    validate(inst);
    const auto tests = projective_reduce(field, collect_I(inst, field));
    LengthSearchResult out;

    auto attempt = [&](std::size_t N) {
        ColumnSearchSpec spec{field, inst.n, tests, 2 * delta + 1, N,
                              opts.node_budget > out.nodes ? opts.node_budget - out.nodes : 0, opts.workers};
        auto r = search_columns(spec);
        out.nodes += r.nodes;
        out.candidate_columns = r.candidate_columns;
        return r;
    };

    std::size_t N = std::max<std::size_t>(1, opts.start_length);
    if (N > 1) {
        // Walk down until the length below the start is refuted.
        while (N > 1) {
            auto r = attempt(N - 1);
            if (r.status == ColumnSearchStatus::BudgetExceeded) {
                out.upper = std::nullopt;
                return out;
            }
            if (r.status == ColumnSearchStatus::Refuted) break;
            --N;
        }
        out.refuted_through = N - 1;
    }
    for (; N <= N_max; ++N) {
        auto r = attempt(N);
        if (r.status == ColumnSearchStatus::BudgetExceeded) return out;
        if (r.status == ColumnSearchStatus::Refuted) {
            out.refuted_through = N;
            continue;
        }
        out.N_opt = N;
        out.upper = N;
        out.certificate = std::move(r.matrix);
        out.completed = true;
        if (!verify(inst, *out.certificate, delta).ok) throw Error("internal: search certificate failed verification");
        return out;
    }
    out.exceeds_max = true;
    return out;
}

}  // namespace icsi
