#include "doctest.h"

#include "icsi/error.hpp"
#include "icsi/gf2.hpp"
#include "support.hpp"

using namespace icsi;
using namespace testsupport;

TEST_CASE("prime field arithmetic") {
    const auto f = FieldSpec::of_order(7);
    CHECK(f.p() == 7);
    CHECK(f.e() == 1);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.neg(0) == 0);
    CHECK(f.pow(3, 6) == 1);
    CHECK(f.pow(0, 0) == 1);
}

TEST_CASE("GF(4) with x^2 + x + 1: x * x = x + 1") {
    const auto f = FieldSpec::of_order(4);
    CHECK(f.modulus() == std::vector<unsigned>{1, 1, 1});
    CHECK(f.mul(2, 2) == 3);
    CHECK(f.add(2, 3) == 1);
    CHECK(f.inv(2) == 3);
}

TEST_CASE("extension multiplication matches polynomial arithmetic") {
    for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {2, 8}}) {
        CAPTURE(p);
        CAPTURE(e);
        const auto f = FieldSpec::make(p, e);
        for (Elem a = 0; a < f.q(); ++a)
            for (Elem b = 0; b < f.q(); ++b) REQUIRE(f.mul(a, b) == oracle::poly_mul(p, f.modulus(), a, b));
    }
}

TEST_CASE("field axioms hold exhaustively for small fields") {
    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
        CAPTURE(q);
        const auto f = FieldSpec::of_order(q);
        for (Elem a = 0; a < q; ++a) {
            REQUIRE(f.add(a, f.neg(a)) == 0);
            if (a) REQUIRE(f.mul(a, f.inv(a)) == 1);
            for (Elem b = 0; b < q; ++b) {
                REQUIRE(f.add(a, b) == f.add(b, a));
                REQUIRE(f.mul(a, b) == f.mul(b, a));
                for (Elem c = 0; c < q; ++c) REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

TEST_CASE("explicit modulus and rejected parameters") {
    const auto f = FieldSpec::make(2, 3, std::vector<unsigned>{1, 0, 1, 1});  // x^3 + x^2 + 1
    CHECK(f.mul(2, 4) == oracle::poly_mul(2, {1, 0, 1, 1}, 2, 4));
    CHECK_THROWS_AS(FieldSpec::make(4), InvalidInput);
    CHECK_THROWS_AS(FieldSpec::make(2, 2, std::vector<unsigned>{1, 0, 1}), InvalidInput);  // (x+1)^2
    CHECK_THROWS_AS(FieldSpec::of_order(6), InvalidInput);
    CHECK(is_irreducible(2, std::vector<unsigned>{1, 1, 1}));
    CHECK_FALSE(is_irreducible(2, std::vector<unsigned>{1, 0, 1}));
}

TEST_CASE("a field beyond the shipped moduli falls back to an irreducible") {
    const auto f = FieldSpec::make(2, 9);
    CHECK(f.q() == 512);
    CHECK(is_irreducible(2, f.modulus()));
    for (Elem a = 1; a < 40; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("matrix entries outside the field are rejected") {
    CHECK_THROWS_AS(mat(2, 1, 2, {1, 2}), InvalidInput);
    CHECK_THROWS_AS(mat(3, 2, 2, {1, 2, 0}), InvalidInput);
}

TEST_CASE("matrix product, transpose and selection") {
    const auto a = mat(3, 2, 3, {1, 2, 0, 0, 1, 1});
    const auto b = mat(3, 3, 1, {1, 1, 1});
    CHECK((a * b) == mat(3, 2, 1, {0, 2}));
    CHECK(a.transpose().transpose() == a);
    const std::vector<std::size_t> r{1};
    CHECK(a.select_rows(r) == mat(3, 1, 3, {0, 1, 1}));
    CHECK(vec_mat(Vec{1, 1}, a) == Vec{1, 0, 1});
    CHECK(mat_vec(a, Vec{1, 1, 1}) == Vec{0, 2});
}

TEST_CASE("rank equals log_q of the row-space size") {
    std::mt19937_64 rng(11);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const auto f = FieldSpec::of_order(q);
        for (int t = 0; t < 40; ++t) {
            const auto m = random_matrix(f, 1 + rng() % 4, 1 + rng() % 5, rng);
            REQUIRE(rank(m) == oracle::rank_by_span(m));
        }
    }
}

TEST_CASE("row reduction: pivot is the first nonzero column") {
    const auto e = row_reduce(mat(2, 3, 4, {0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0}));
    CHECK(e.pivots == std::vector<std::size_t>{0, 1, 3});
    CHECK(e.reduced == mat(2, 3, 4, {1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1}));
}

TEST_CASE("kernel basis annihilates and has the right dimension") {
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 3u, 4u, 7u}) {
        const auto f = FieldSpec::of_order(q);
        for (int t = 0; t < 30; ++t) {
            const auto a = random_matrix(f, 1 + rng() % 4, 1 + rng() % 6, rng);
            const auto k = kernel_basis(a);
            REQUIRE(k.rows() == a.cols() - rank(a));
            REQUIRE(k.cols() == a.cols());
            for (std::size_t r = 0; r < k.rows(); ++r) REQUIRE(weight(mat_vec(a, k.row(r))) == 0);
            if (k.rows()) REQUIRE(rank(k) == k.rows());
        }
    }
}

TEST_CASE("solve_affine enumerates q^free solutions in order") {
    const auto a = mat(3, 1, 3, {1, 1, 0});
    const auto all = solve_affine_all(a, Vec{2});
    REQUIRE(all.size() == 9);
    CHECK(all.front() == Vec{2, 0, 0});
    CHECK(all[1] == Vec{2, 0, 1});
    CHECK(all[3] == Vec{1, 1, 0});
    for (const auto& x : all) CHECK(mat_vec(a, x) == Vec{2});
    CHECK(solve_one(a, Vec{2}) == Vec{2, 0, 0});
    CHECK_FALSE(solve_one(mat(2, 2, 1, {1, 1}), Vec{0, 1}).has_value());
}

TEST_CASE("span_iter visits the row space exactly once") {
    std::mt19937_64 rng(3);
    const auto f = FieldSpec::of_order(3);
    for (int t = 0; t < 20; ++t) {
        const auto m = random_matrix(f, 1 + rng() % 3, 4, rng);
        std::set<Vec> seen;
        std::uint64_t visits = span_iter(m, [&](std::span<const Elem> v) {
            seen.insert(Vec(v.begin(), v.end()));
            return true;
        });
        const auto expected = oracle::row_space(m);
        REQUIRE(visits == expected.size());
        REQUIRE(seen == expected);
    }
    CHECK_THROWS_AS(span_iter(
                        FqMatrix::identity(FieldSpec::of_order(2), 30), [](auto) { return true; }, 1 << 10),
                    BudgetExceeded);
}

TEST_CASE("incremental echelon push/pop tracks rank") {
    std::mt19937_64 rng(8);
    const auto f = FieldSpec::of_order(5);
    IncrementalEchelon ech(f, 4);
    std::vector<Vec> rows;
    std::vector<bool> grew;
    for (int t = 0; t < 6; ++t) {
        Vec v(4);
        for (auto& x : v) x = static_cast<Elem>(rng() % 5);
        if (t == 3) v = rows[0];  // dependent
        const bool g = ech.push(v);
        rows.push_back(v);
        grew.push_back(g);
        REQUIRE(ech.rank() == rank(FqMatrix::from_rows(f, rows)));
    }
    CHECK_FALSE(grew[3]);
    CHECK(ech.in_span(rows[1]));
    while (!rows.empty()) {
        if (grew.back()) ech.pop();
        rows.pop_back();
        grew.pop_back();
        REQUIRE(ech.rank() == (rows.empty() ? 0 : rank(FqMatrix::from_rows(f, rows, 4))));
    }
}

TEST_CASE("binary fast path agrees with the generic elimination") {
    std::mt19937_64 rng(21);
    const auto f = FieldSpec::of_order(2);
    for (int t = 0; t < 200; ++t) {
        const auto a = random_matrix(f, 1 + rng() % 9, 1 + rng() % 130, rng);
        REQUIRE(gf2::rank(a) == generic::rank(a));
        REQUIRE(gf2::kernel_basis(a) == generic::kernel_basis(a));
        Vec b(a.rows());
        for (auto& x : b) x = static_cast<Elem>(rng() & 1);
        REQUIRE(gf2::solve_one(a, b) == generic::solve_one(a, b));
    }
    CHECK(Gf2Matrix::from(mat(2, 2, 3, {1, 0, 1, 1, 1, 0})).to_fq() == mat(2, 2, 3, {1, 0, 1, 1, 1, 0}));
}

TEST_CASE("odometer and saturating powers") {
    Vec d{0, 1};
    CHECK(odometer_next(d, 2));
    CHECK(d == Vec{1, 0});
    d = {1, 1};
    CHECK_FALSE(odometer_next(d, 2));
    CHECK(d == Vec{0, 0});
    CHECK(pow_saturating(2, 10) == 1024);
    CHECK(pow_saturating(7, 100) == UINT64_MAX);
}
