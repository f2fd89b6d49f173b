#include "icsi/bounds.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "icsi/ecic.hpp"
#include "icsi/error.hpp"

namespace icsi {

BigInt big_pow(unsigned q, std::size_t k) {
    BigInt out = 1;
    for (std::size_t i = 0; i < k; ++i) out *= q;
    return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

BigInt sphere_volume(unsigned q, std::size_t N, std::size_t r) {
    if (r > N) throw InvalidInput("sphere radius exceeds length");
    BigInt out = 0, power = 1;
    for (std::size_t l = 0; l <= r; ++l) {
        out += binomial(N, l) * power;
        power *= q - 1;
    }
    return out;
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::PaperTable: return "table";
        case Provenance::Searched: return "searched";
        case Provenance::MdsRule: return "mds-rule";
        case Provenance::Bracket: return "bracket";
    }
    return "?";
}

const char* to_string(NqMode m) {
    switch (m) {
        case NqMode::Table: return "table";
        case NqMode::Search: return "search";
        case NqMode::Auto: return "auto";
    }
    return "?";
}

NqMode parse_nq_mode(const std::string& s) {
    if (s == "table") return NqMode::Table;
    if (s == "search") return NqMode::Search;
    if (s == "auto") return NqMode::Auto;
    throw InvalidInput("unknown mode '" + s + "'");
}

std::optional<std::size_t> nq_table_lookup(unsigned q, std::size_t k, std::size_t d) {
    static const std::map<std::tuple<unsigned, std::size_t, std::size_t>, std::size_t> table = {
        {{2, 2, 5}, 8},
        {{2, 3, 5}, 10},
        {{2, 10, 3}, 14},
        {{2, 17, 3}, 22},
    };
    auto it = table.find({q, k, d});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::size_t varshamov_length(unsigned q, std::size_t k, std::size_t d) {
    for (std::size_t N = k + d - 1;; ++N) {
        BigInt lhs = 0, power = 1;
        for (std::size_t i = 0; i + 2 <= d; ++i) {
            lhs += binomial(N - 1, i) * power;
            power *= q - 1;
        }
        if (lhs < big_pow(q, N - k)) return N;
    }
}

FqMatrix rs_doubly_extended(const FieldSpec& field, std::size_t k, std::size_t N) {
    if (k < 1 || k > N || N > static_cast<std::size_t>(field.q()) + 1)
        throw InvalidInput("doubly-extended Reed-Solomon needs 1 <= k <= N <= q + 1");
    FqMatrix g(field, k, N);
    const std::size_t finite = std::min<std::size_t>(N, field.q());
    for (std::size_t c = 0; c < finite; ++c) {
        Elem power = 1;
        for (std::size_t r = 0; r < k; ++r) {
            g.set(r, c, power);
            power = field.mul(power, static_cast<Elem>(c));
        }
    }
    if (N == static_cast<std::size_t>(field.q()) + 1) g.set(k - 1, N - 1, 1);
    return g;
}

namespace {

// MDS generator of length k + d - 1 when one is known to exist over F_q.
std::optional<FqMatrix> mds_generator(const FieldSpec& field, std::size_t k, std::size_t d) {
    const std::size_t N = k + d - 1;
    if (d == 1) return FqMatrix::identity(field, k);
    if (k == 1) {
        FqMatrix g(field, 1, N);
        for (std::size_t c = 0; c < N; ++c) g.set(0, c, 1);
        return g;
    }
    if (d == 2) {
        FqMatrix g(field, k, N);
        for (std::size_t r = 0; r < k; ++r) {
            g.set(r, r, 1);
            g.set(r, k, 1);
        }
        return g;
    }
    if (field.q() + 2 >= k + d) return rs_doubly_extended(field, k, N);
    return std::nullopt;
}

void search_entry(CodeTableEntry& e, const NqOptions& opts) {
    const FieldSpec field = FieldSpec::of_order(e.q);
    ColumnSearchSpec spec;
    spec.field = field;
    spec.dim = e.k;
    spec.tests = projective_points(field, e.k);
    spec.min_weight = e.d;
    spec.workers = opts.workers;
    e.upper = varshamov_length(e.q, e.k, e.d);
    for (std::size_t N = e.k + e.d - 1; N <= e.upper; ++N) {
        spec.length = N;
        spec.node_budget = opts.node_budget > e.nodes ? opts.node_budget - e.nodes : 0;
        auto r = search_columns(spec);
        e.nodes += r.nodes;
        if (r.status == ColumnSearchStatus::BudgetExceeded) {
            e.budget_exceeded = true;
            e.provenance = Provenance::Bracket;
            e.lower = N;
            return;
        }
        if (r.status == ColumnSearchStatus::Found) {
            e.N = N;
            e.lower = e.upper = N;
            e.generator = std::move(r.matrix);
            e.provenance = Provenance::Searched;
            return;
        }
    }
    throw Error("internal: no code found at the Varshamov length");
}

}  // namespace

CodeTableEntry nq_kd(unsigned q, std::size_t k, std::size_t d, const NqOptions& opts) {
    if (k < 1 || d < 1) throw InvalidInput("N_q[k,d] needs k >= 1 and d >= 1");
    const FieldSpec field = FieldSpec::of_order(q);
    CodeTableEntry e;
    e.q = q;
    e.k = k;
    e.d = d;
    e.lower = k + d - 1;

    if (opts.mode != NqMode::Search) {
        if (auto n = nq_table_lookup(q, k, d)) {
            e.N = *n;
            e.lower = e.upper = *n;
            e.provenance = Provenance::PaperTable;
            return e;
        }
        if (auto g = mds_generator(field, k, d)) {
            e.N = e.lower = e.upper = k + d - 1;
            e.generator = std::move(g);
            e.provenance = Provenance::MdsRule;
            return e;
        }
    }
    const bool try_search =
        opts.mode == NqMode::Search || (opts.mode == NqMode::Auto && pow_saturating(q, k) <= 256);
    if (try_search) {
        search_entry(e, opts);
        return e;
    }
    e.upper = varshamov_length(q, k, d);
    e.provenance = Provenance::Bracket;
    return e;
}

std::optional<FqMatrix> shortest_code_generator(const FieldSpec& field, std::size_t k, std::size_t d,
                                                const NqOptions& opts) {
    if (auto g = mds_generator(field, k, d)) return g;
    NqOptions search = opts;
    search.mode = NqMode::Search;
    try {
        auto e = nq_kd(field.q(), k, d, search);
        if (e.generator) {
            // The searched generator is over the canonical field of order q;
            // re-home the entries on the caller's field.
            return FqMatrix(field, e.generator->rows(), e.generator->cols(), e.generator->entries());
        }
    } catch (const BudgetExceeded&) {
    }
    return std::nullopt;
}

BoundReport bound_report(const IcsiInstance& inst, const FieldSpec& field, std::size_t delta,
                         const BoundOptions& opts) {
    validate(inst);
    BoundReport r;
    r.q = field.q();
    r.delta = delta;
    const std::size_t d = 2 * delta + 1;
    if (inst.n <= kDefaultSubsetSearchCap) {
        r.alpha = generalized_independence_number(inst).alpha;
        if (*r.alpha >= 1) r.alpha_bound = nq_kd(field.q(), *r.alpha, d, opts.nq);
    }
    try {
        const auto mr = min_rank(inst, field, opts.minrank_budget);
        r.kappa_certified = mr.certified;
        if (mr.certified) {
            r.kappa = mr.kappa;
            if (mr.kappa >= 1) r.kappa_bound = nq_kd(field.q(), mr.kappa, d, opts.nq);
            r.singleton = mr.kappa + 2 * delta;
            if (field.q() + 1 >= mr.kappa + 2 * delta) r.mds_exact = r.singleton;
        }
    } catch (const BudgetExceeded&) {
    }
    r.random_N = random_code_min_length(inst, field.q(), delta);
    return r;
}

OddCycleComparison odd_cycle_comparison(std::size_t ell, std::size_t delta, const NqOptions& opts) {
    if (ell < 2) throw InvalidInput("odd cycle comparison needs ell >= 2");
    OddCycleComparison c;
    c.ell = ell;
    c.delta = delta;
    c.alpha = ell;
    c.kappa = ell + 1;
    c.alpha_bound = nq_kd(2, ell, 2 * delta + 1, opts);
    c.singleton = c.kappa + 2 * delta;
    c.claim_applies = delta > 0;
    const std::size_t low = c.alpha_bound.N ? *c.alpha_bound.N : c.alpha_bound.lower;
    c.claim_holds = low >= c.singleton;
    return c;
}

}  // namespace icsi
