#include "doctest.h"

#include "icsi/error.hpp"
#include "icsi/io.hpp"
#include "support.hpp"

using namespace icsi;
using namespace testsupport;

TEST_CASE("instance files are 1-based on disk and 0-based in memory") {
    const auto file = load_instance(data_path("example1.json"));
    CHECK(file.inst.n == 3);
    CHECK(file.inst.f == std::vector<std::size_t>{0, 1, 2});
    CHECK(file.inst.X[0] == std::vector<std::size_t>{1, 2});
    REQUIRE(file.field);
    CHECK(file.field->q() == 2);
    CHECK(load_instance(data_path("c5_complement_q7.json")).field->q() == 7);
}

TEST_CASE("instance round trip") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        const auto inst = random_instance(1 + rng() % 6, 1 + rng() % 6, rng);
        const auto back = parse_instance(format_instance(inst));
        CHECK(back.inst == inst);
        CHECK_FALSE(back.field);
        const auto f = FieldSpec::of_order(9);
        const auto with = parse_instance(format_instance(inst, f));
        CHECK(with.inst == inst);
        CHECK(with.field->q() == 9);
        CHECK(with.field->modulus() == f.modulus());
    }
}

TEST_CASE("malformed instance files are rejected") {
    CHECK_THROWS_AS(parse_instance("{"), InvalidInput);
    CHECK_THROWS_AS(parse_instance(R"({"m":1,"n":2,"f":[1]})"), InvalidInput);
    CHECK_THROWS_AS(parse_instance(R"({"m":1,"n":2,"f":[0],"X":[[]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_instance(R"({"m":1,"n":2,"f":[1],"X":[[1]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_instance(R"({"q":6,"m":1,"n":2,"f":[1],"X":[[2]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_instance(R"({"q":4,"p":3,"e":1,"m":1,"n":2,"f":[1],"X":[[2]]})"), InvalidInput);
    CHECK_THROWS_AS(load_instance(data_path("missing.json")), InvalidInput);
}

TEST_CASE("instance hash is stable and separates instances") {
    const auto a = load_inst("pentagon.json");
    CHECK(instance_hash(a).size() == 16);
    CHECK(instance_hash(a) == instance_hash(cycle_instance(5)));
    CHECK(instance_hash(a) != instance_hash(cycle_complement_instance(5)));
    CHECK(instance_hash(a) == instance_hash(parse_instance(format_instance(a)).inst));
}

TEST_CASE("matrix text format") {
    const auto L = load_mat("example1_L.txt");
    CHECK(L == mat(2, 3, 4, {1, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1}));
    CHECK(parse_matrix(format_matrix(L)) == L);
    std::mt19937_64 rng(2);
    const auto f = FieldSpec::of_order(8);
    const auto R = random_matrix(f, 4, 5, rng);
    CHECK(parse_matrix(format_matrix(R), f) == R);
    CHECK(parse_matrix("0 3 2\n").rows() == 0);
}

TEST_CASE("malformed matrices are rejected") {
    CHECK_THROWS_AS(parse_matrix("2 2 2\n1 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("1 2 2\n1 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("1 2 2\n1 x\n"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("1 1 6\n1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("1 1 3\n1\n", FieldSpec::of_order(2)), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("1 1 2\n1 1\n"), InvalidInput);
}

TEST_CASE("received words") {
    const auto w = load_received(data_path("example1_received.txt"));
    CHECK(w.receiver == 0);
    CHECK(w.y == bits("1101"));
    REQUIRE(w.side.size() == 2);
    CHECK(w.side[0] == std::pair<std::size_t, Elem>{1, 0});
    const auto back = parse_received(format_received(w));
    CHECK(back.receiver == w.receiver);
    CHECK(back.y == w.y);
    CHECK(back.side == w.side);
    const auto inst = load_inst("example1.json");
    const auto v = to_view(inst, w);
    CHECK(v.side == Vec{0, 1});
    auto shuffled = w;
    std::swap(shuffled.side[0], shuffled.side[1]);
    CHECK(to_view(inst, shuffled).side == Vec{0, 1});
    auto missing = w;
    missing.side.pop_back();
    CHECK_THROWS_AS(to_view(inst, missing), InvalidInput);
    CHECK_THROWS_AS(parse_received("1 4 2\n1 1 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_received("1 2 2\n1 1\n2-0\n"), InvalidInput);
}

TEST_CASE("certificate envelope round trip") {
    const CertificateEnvelope env{"0123456789abcdef", 2, 9, true, "search"};
    const auto back = parse_envelope(format_envelope(env));
    CHECK(back.instance_hash == env.instance_hash);
    CHECK(back.delta == 2);
    CHECK(back.N == 9);
    CHECK(back.certified);
    CHECK(back.method == "search");
    CHECK_THROWS_AS(parse_envelope("[]"), InvalidInput);
}
