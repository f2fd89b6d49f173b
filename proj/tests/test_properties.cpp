#include "doctest.h"

#include <numeric>

#include "icsi/bounds.hpp"
#include "icsi/decoder.hpp"
#include "icsi/ecic.hpp"
#include "icsi/harness.hpp"
#include "support.hpp"

using namespace icsi;
using namespace testsupport;

namespace {

IcsiInstance random_symmetric(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<Subset> adj(n, 0);
    std::bernoulli_distribution edge(p);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (edge(rng)) {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
    return instance_from_graph(adj);
}

}  // namespace

TEST_CASE("rank of a matrix equals rank of its transpose") {
    std::mt19937_64 rng(100);
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u}) {
        const auto f = FieldSpec::of_order(q);
        for (int t = 0; t < 100; ++t) {
            const auto a = random_matrix(f, 1 + rng() % 6, 1 + rng() % 6, rng);
            REQUIRE(rank(a) == rank(a.transpose()));
        }
    }
}

TEST_CASE("affine solutions: all valid and q^(cols - rank) of them") {
    std::mt19937_64 rng(101);
    for (unsigned q : {2u, 3u, 4u}) {
        const auto f = FieldSpec::of_order(q);
        for (int t = 0; t < 60; ++t) {
            const auto a = random_matrix(f, 1 + rng() % 4, 1 + rng() % 5, rng);
            Vec x(a.cols());
            for (auto& v : x) v = static_cast<Elem>(rng() % q);
            const Vec b = mat_vec(a, x);
            const auto all = solve_affine_all(a, b);
            REQUIRE(all.size() == pow_saturating(q, a.cols() - rank(a)));
            for (const auto& s : all) REQUIRE(mat_vec(a, s) == b);
        }
    }
}

TEST_CASE("kernel rows are orthogonal to every row") {
    std::mt19937_64 rng(102);
    for (unsigned q : {2u, 5u, 9u}) {
        const auto f = FieldSpec::of_order(q);
        for (int t = 0; t < 60; ++t) {
            const auto a = random_matrix(f, 1 + rng() % 5, 1 + rng() % 7, rng);
            const auto k = kernel_basis(a);
            for (std::size_t r = 0; r < k.rows(); ++r)
                for (std::size_t s = 0; s < a.rows(); ++s) REQUIRE(dot(f, a.row(s), k.row(r)) == 0);
        }
    }
}

TEST_CASE("J membership and the supports of I") {
    std::mt19937_64 rng(103);
    const auto f2 = FieldSpec::of_order(2);
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = 1 + rng() % 8;
        const auto inst = random_instance(n, 1 + rng() % 8, rng);
        const auto J = iter_J(inst);
        const std::set<Subset> Jset(J.begin(), J.end());
        REQUIRE(Jset.size() == J.size());
        for (Subset k = 1; k < bit(n); ++k) REQUIRE(in_J(inst, k) == (Jset.count(k) > 0));
        if (n <= 6) {
            std::map<Subset, int> per_support;
            for (const auto& z : collect_I(inst, f2)) {
                Subset s = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if (z[j]) s |= bit(j);
                ++per_support[s];
            }
            REQUIRE(per_support.size() == Jset.size());
            for (const auto& [s, c] : per_support) {
                REQUIRE(Jset.count(s));
                REQUIRE(c == 1);
            }
        }
        const auto a = generalized_independence_number(inst);
        for (Subset k = a.witness; k; k = (k - 1) & a.witness) REQUIRE(in_J(inst, k));
    }
}

TEST_CASE("symmetric instances: generalized independence is graph independence, and the sandwich") {
    std::mt19937_64 rng(104);
    const auto f2 = FieldSpec::of_order(2);
    for (int t = 0; t < 100; ++t) {
        const auto inst = random_symmetric(1 + rng() % 7, 0.2 + 0.15 * (t % 5), rng);
        const auto g = side_info_graph(inst);
        REQUIRE(is_symmetric(g));
        const std::size_t a = graph_alpha(g);
        REQUIRE(generalized_independence_number(inst).alpha == a);
        if (inst.n <= 6) {
            const auto w = min_rank(inst, f2);
            REQUIRE(w.certified);
            REQUIRE(a <= w.kappa);
            REQUIRE(w.kappa <= graph_chromatic(complement(g)));
        }
    }
}

TEST_CASE("delta = 0 verification is the span condition") {
    std::mt19937_64 rng(105);
    for (unsigned q : {2u, 3u}) {
        const auto f = FieldSpec::of_order(q);
        for (int t = 0; t < 100; ++t) {
            const std::size_t n = 1 + rng() % 5;
            const auto inst = random_instance(n, 1 + rng() % 5, rng);
            const auto L = random_matrix(f, n, 1 + rng() % 5, rng);
            bool span_ok = true;
            for (std::size_t i = 0; i < inst.m && span_ok; ++i) {
                const auto ys = y_set(inst, i);
                const auto Y = L.select_rows(ys);
                auto with = ys;
                with.push_back(inst.f[i]);
                span_ok = rank(L.select_rows(with)) > (ys.empty() ? 0 : rank(Y));
            }
            REQUIRE(verify(inst, L, 0).ok == span_ok);
        }
    }
}

TEST_CASE("no error-free code is shorter than the min-rank") {
    std::mt19937_64 rng(106);
    const auto f2 = FieldSpec::of_order(2);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + rng() % 4;
        const auto inst = random_instance(n, 1 + rng() % 4, rng);
        const auto w = min_rank(inst, f2);
        REQUIRE(verify(inst, w.L_opt, 0).ok);
        const std::size_t N = w.kappa - 1;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * N)); ++code) {
            std::vector<Elem> e(n * N);
            for (std::size_t b = 0; b < n * N; ++b) e[b] = (code >> b) & 1u;
            REQUIRE_FALSE(oracle::decodable(inst, FqMatrix(f2, n, N, e), 0));
        }
    }
}

TEST_CASE("optimal length lies between the alpha and kappa bounds and above the Singleton bound") {
    std::mt19937_64 rng(107);
    const auto f2 = FieldSpec::of_order(2);
    for (int t = 0; t < 30; ++t) {
        const auto inst = random_instance(1 + rng() % 4, 1 + rng() % 5, rng);
        const std::size_t delta = rng() % 2;
        const auto r = search_min_length(inst, f2, delta, 12);
        if (!r.completed) continue;
        const auto b = bound_report(inst, f2, delta);
        REQUIRE(*b.alpha_bound->N <= *r.N_opt);
        REQUIRE(*r.N_opt <= *b.kappa_bound->N);
        REQUIRE(*r.N_opt >= *b.kappa + 2 * delta);
        REQUIRE(*b.alpha_bound->N <= *b.kappa_bound->N);
    }
}

TEST_CASE("permuting the rows of a code can break it") {
    const auto inst = load_inst("pentagon.json");
    const auto L = load_mat("pentagon_L.txt");
    std::vector<std::size_t> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    bool broken = false;
    while (std::next_permutation(perm.begin(), perm.end()) && !broken)
        broken = !verify(inst, L.select_rows(perm), 2).ok;
    CHECK(broken);
}

TEST_CASE("searched code table entries are genuine codes") {
    for (unsigned q : {2u, 3u})
        for (std::size_t k = 1; k <= 3; ++k)
            for (std::size_t d = 1; d <= 5; ++d) {
                const auto e = nq_kd(q, k, d, {NqMode::Search});
                if (!e.N) continue;
                REQUIRE(*e.N >= k + d - 1);
                REQUIRE(e.generator);
                REQUIRE(e.generator->cols() == *e.N);
                REQUIRE(oracle::distance_brute(*e.generator) >= d);
            }
}

TEST_CASE("random-coding length is the first length meeting the condition") {
    std::mt19937_64 rng(108);
    for (int t = 0; t < 40; ++t) {
        const auto inst = random_instance(1 + rng() % 6, 1 + rng() % 6, rng);
        const unsigned q = (t % 2) ? 3 : 2;
        const std::size_t delta = rng() % 3;
        const std::size_t N = random_code_min_length(inst, q, delta);
        REQUIRE(random_code_condition(inst, q, delta, N));
        if (N > 1) REQUIRE_FALSE(random_code_condition(inst, q, delta, N - 1));
    }
}

TEST_CASE("searched codes decode every error within their radius") {
    std::mt19937_64 rng(109);
    const auto f2 = FieldSpec::of_order(2);
    for (int t = 0; t < 15; ++t) {
        const auto inst = random_instance(1 + rng() % 4, 1 + rng() % 4, rng);
        const auto r = search_min_length(inst, f2, 1, 12);
        if (!r.completed) continue;
        const Decoder dec(inst, *r.certificate, 1);
        const auto s = exhaustive_campaign(dec, 1);
        REQUIRE(s.successes == s.trials);
    }
}
