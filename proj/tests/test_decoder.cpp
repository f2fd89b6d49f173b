#include "doctest.h"

#include "icsi/decoder.hpp"
#include "icsi/ecic.hpp"
#include "icsi/error.hpp"
#include "support.hpp"

using namespace icsi;
using namespace testsupport;

namespace {

// x = (1,0,1), error on coordinate 1, receiver 1: y = 1101, side (x2,x3) = (0,1).
ReceiverView example1_view() { return {0, bits("1101"), Vec{0, 1}}; }

}  // namespace

TEST_CASE("local code of a receiver with full side information") {
    const auto lc = code_Ci(load_inst("example1.json"), load_mat("example1_L.txt"), 0);
    CHECK(lc.generator == mat(2, 1, 4, {1, 1, 1, 0}));
    CHECK(lc.parity_check.rows() == 3);
    CHECK(rank(lc.parity_check) == 3);
    CHECK(weight(mat_vec(lc.parity_check, bits("1110"))) == 0);
}

TEST_CASE("local code spanned by the demanded row and Y_i") {
    const auto L = load_mat("pentagon_L.txt");
    const auto lc = code_Ci(load_inst("pentagon.json"), L, 0);
    const std::vector<std::size_t> rows{0, 2, 3};
    CHECK(lc.generator == L.select_rows(rows));
    CHECK(lc.parity_check.rows() == 9 - rank(lc.generator));
    for (std::size_t r = 0; r < 3; ++r) CHECK(weight(mat_vec(lc.parity_check, lc.generator.row(r))) == 0);
}

TEST_CASE("local code is everything when nothing is known") {
    const auto inst = no_side_information(3);
    const auto L = mat(2, 3, 5, {1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1});
    const auto lc = code_Ci(inst, L, 1);
    CHECK(lc.parity_check.rows() == 5 - rank(L));
}

TEST_CASE("syndrome of the hand-traced word") {
    const auto inst = load_inst("example1.json");
    const auto L = load_mat("example1_L.txt");
    const auto H = code_Ci(inst, L, 0).parity_check;
    const auto beta = syndrome(inst, L, H, example1_view());
    CHECK(beta == mat_vec(H, bits("0110")));
    CHECK(weight(beta) != 0);
    // Without the error the syndrome vanishes.
    const ReceiverView clean{0, bits("0101"), Vec{0, 1}};
    CHECK(weight(syndrome(inst, L, H, clean)) == 0);
    // Flipping coordinate 3 shifts beta by column 3 of H.
    ReceiverView flipped = example1_view();
    flipped.y[2] ^= 1;
    const auto shifted = syndrome(inst, L, H, flipped);
    for (std::size_t r = 0; r < H.rows(); ++r) CHECK(shifted[r] == (beta[r] ^ H.at(r, 2)));
}

TEST_CASE("coset leader search") {
    const auto inst = load_inst("example1.json");
    const auto L = load_mat("example1_L.txt");
    const auto H = code_Ci(inst, L, 0).parity_check;
    const auto sol = min_weight_coset_solution(H, mat_vec(H, bits("0110")), 1);
    CHECK(sol.e_hat == bits("1000"));
    CHECK(sol.weight_searched == 1);
    CHECK(min_weight_coset_solution(H, Vec(H.rows(), 0), 1).e_hat == bits("0000"));
    CHECK_THROWS_AS(min_weight_coset_solution(H, mat_vec(H, bits("0110")), 0), TooManyErrors);
    CHECK_THROWS_AS(min_weight_coset_solution(H, Vec(H.rows(), 0), 3, 4), BudgetExceeded);
}

TEST_CASE("coset leader is the lexicographically first minimum") {
    // Over GF(3) with H = [1 1 1]: syndrome 2 is hit by 2 at position 1 first.
    const auto H = mat(3, 1, 3, {1, 1, 1});
    CHECK(min_weight_coset_solution(H, Vec{2}, 1).e_hat == Vec{2, 0, 0});
    const auto H2 = mat(2, 1, 3, {0, 1, 1});
    CHECK(min_weight_coset_solution(H2, Vec{1}, 1).e_hat == Vec{0, 1, 0});
}

TEST_CASE("recovery on the hand-traced word") {
    const auto inst = load_inst("example1.json");
    const auto L = load_mat("example1_L.txt");
    const auto comb = find_combiner(inst, L, 0);
    CHECK(mat_vec(L, comb.u) == [&] {
        Vec t = comb.v;
        t[0] = 1;
        return t;
    }());
    CHECK(recover(inst, L, comb, example1_view(), bits("1000")) == 1);
    CHECK(recover_by_elimination(inst, L, example1_view(), bits("1000")) == 1);
    const auto r = decode(inst, L, 1, example1_view());
    CHECK(r.x_hat == 1);
    CHECK(r.e_hat == bits("1000"));
}

TEST_CASE("rank-one code: the receiver subtracts what it knows") {
    const auto inst = load_inst("example1.json");
    const auto L = load_mat("example1_Lprime.txt");
    const Decoder dec(inst, L, 0);
    Vec x(3, 0);
    do {
        const Elem s = x[0] ^ x[1] ^ x[2];
        const auto v = dec.view_for(0, x, Vec(3, 0));
        CHECK(v.y == Vec{s, s, s});
        CHECK(dec.decode(v).x_hat == (s ^ x[1] ^ x[2]));
    } while (odometer_next(x, 2));
}

TEST_CASE("a receiver that cannot decode is reported") {
    const auto inst = no_side_information(2);
    const auto L = mat(2, 2, 1, {1, 1});
    CHECK_THROWS_AS(find_combiner(inst, L, 0), NotAnIndexCode);
    const Decoder dec(inst, L, 0);
    CHECK_THROWS_AS(dec.decode({0, Vec{1}, {}}), NotAnIndexCode);
}

TEST_CASE("views are checked") {
    const auto inst = load_inst("example1.json");
    const auto L = load_mat("example1_L.txt");
    const Decoder dec(inst, L, 1);
    CHECK_THROWS_AS(dec.decode({0, bits("110"), Vec{0, 1}}), InvalidInput);
    CHECK_THROWS_AS(dec.decode({0, bits("1101"), Vec{0}}), InvalidInput);
    CHECK_THROWS_AS(dec.decode({5, bits("1101"), Vec{0, 1}}), InvalidInput);
}

TEST_CASE("relevant error set") {
    const auto L = load_mat("pentagon_L.txt");
    const auto pent = load_inst("pentagon.json");
    const Vec zero(9, 0);
    const auto set = relevant_error_set(pent, L, 0, zero);
    CHECK(set.size() == 4);
    const std::vector<std::size_t> rows{2, 3};
    CHECK(std::set<Vec>(set.begin(), set.end()) == oracle::row_space(L.select_rows(rows)));
    const auto one = relevant_error_set(load_inst("example1.json"), load_mat("example1_L.txt"), 0, bits("1000"));
    CHECK(one == std::vector<Vec>{bits("1000")});
}

TEST_CASE("every error in the relevant set leads to the same symbol") {
    const auto inst = load_inst("pentagon.json");
    const auto L = load_mat("pentagon_L.txt");
    const Decoder dec(inst, L, 2);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 60; ++t) {
        Vec x(5), eps(9, 0);
        for (auto& v : x) v = rng() & 1;
        for (int k = 0; k < 2; ++k) eps[rng() % 9] = 1;
        const std::size_t i = rng() % 5;
        const auto view = dec.view_for(i, x, eps);
        const auto comb = find_combiner(inst, L, i);
        for (const auto& e : relevant_error_set(inst, L, i, eps)) {
            REQUIRE(recover(inst, L, comb, view, e) == x[i]);
            REQUIRE(recover_by_elimination(inst, L, view, e) == x[i]);
        }
        // The chosen coset leader is itself relevant.
        const auto r = dec.decode(view);
        const auto rel = relevant_error_set(inst, L, i, eps);
        REQUIRE(std::find(rel.begin(), rel.end(), r.e_hat) != rel.end());
        REQUIRE(r.x_hat == x[i]);
    }
}

TEST_CASE("decoding is deterministic") {
    const auto inst = load_inst("pentagon.json");
    const auto L = load_mat("pentagon_L.txt");
    const Decoder a(inst, L, 2), b(inst, L, 2);
    const auto v = a.view_for(3, bits("10110"), bits("010000010"));
    const auto ra = a.decode(v), rb = b.decode(v);
    CHECK(ra.x_hat == rb.x_hat);
    CHECK(ra.e_hat == rb.e_hat);
    CHECK(ra.syndrome == rb.syndrome);
    CHECK(ra.combiner == rb.combiner);
    CHECK(ra.candidates == rb.candidates);
}

TEST_CASE("decoding over GF(5) with a concatenated code") {
    const auto inst = load_inst("pentagon.json");
    const auto f = FieldSpec::of_order(5);
    const auto w = min_rank(inst, f);
    FqMatrix outer(f, 3, 5);
    for (std::size_t c = 0; c < 5; ++c) {
        Elem p = 1;
        for (std::size_t r = 0; r < 3; ++r) {
            outer.set(r, c, p);
            p = f.mul(p, static_cast<Elem>(c));
        }
    }
    const auto L = construct_concat(inst, w, outer, 1);
    const Decoder dec(inst, L, 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        Vec x(5), eps(5, 0);
        for (auto& v : x) v = rng() % 5;
        eps[rng() % 5] = 1 + rng() % 4;
        for (std::size_t i = 0; i < 5; ++i) REQUIRE(dec.decode(dec.view_for(i, x, eps)).x_hat == x[i]);
    }
}
