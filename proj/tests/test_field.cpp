#include "doctest.h"

#include "shukla/field.hpp"

#include <random>

using namespace shukla;

TEST_CASE("prime field basic arithmetic") {
    PrimeField F(5);
    CHECK(F.add(3, 4) == 2);
    CHECK(F.sub(1, 3) == 3);
    CHECK(F.mul(3, 4) == 2);
    CHECK(F.neg(2) == 3);
    CHECK(F.inv(2) == 3);
    CHECK(F.inv(4) == 4);
    CHECK(F.from_int(-7) == 3);
    CHECK(F.one() == 1);
    CHECK_THROWS_AS(F.inv(0), Error);
}

TEST_CASE("prime field rejects composite and tiny moduli") {
    CHECK_THROWS_AS(PrimeField(1), Error);
    CHECK_THROWS_AS(PrimeField(4), Error);
    CHECK_THROWS_AS(PrimeField(91), Error);  // 7*13
    CHECK_NOTHROW(PrimeField(2));
    CHECK_NOTHROW(PrimeField(97));
    CHECK_NOTHROW(PrimeField(1000003));
}

TEST_CASE("prime field inverse: a * inv(a) == 1 across the field") {
    PrimeField F(101);
    for (std::uint64_t a = 1; a < 101; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("large prime multiplication does not overflow") {
    std::uint64_t p = (1ull << 61) - 1;  // Mersenne prime
    PrimeField F(p);
    std::uint64_t a = p - 2, b = p - 3;
    // (p-2)(p-3) = p^2 -5p + 6 ≡ 6 (mod p)
    CHECK(F.mul(a, b) == 6);
    CHECK(F.mul(F.inv(a), a) == 1);
}

TEST_CASE("rational arithmetic canonicalizes") {
    RationalField Q;
    auto half = Q.parse("1/2");
    auto third = Q.parse("1/3");
    CHECK(Q.render(Q.add(half, third)) == "5/6");
    CHECK(Q.render(Q.mul(half, Q.from_int(2))) == "1");
    CHECK(Q.render(Q.parse("-2/4")) == "-1/2");
    CHECK(Q.render(Q.parse("6/3")) == "2");
    CHECK(Q.render(Q.neg(Q.parse("0"))) == "0");
    CHECK(Q.is_zero(Q.sub(half, half)));
    CHECK(Q.render(Q.inv(Q.parse("-2/3"))) == "-3/2");
}

TEST_CASE("scalar parsing: syntax errors and zero denominators") {
    RationalField Q;
    PrimeField F(5);
    for (const char* bad : {"", "x", "1.5", "1/", "/2", "1/2/3", "1e3", " 1", "1 ", "--2", "2/-3"}) {
        CHECK_THROWS_AS(Q.parse(bad), Error);
        CHECK_THROWS_AS(F.parse(bad), Error);
    }
    CHECK_THROWS_AS(Q.parse("1/0"), Error);
    CHECK_THROWS_AS(F.parse("1/0"), Error);
    CHECK_THROWS_AS(F.parse("1/10"), Error);  // denominator ≡ 0 mod 5
    CHECK(F.parse("7") == 2);
    CHECK(F.parse("-1") == 4);
    CHECK(F.parse("1/2") == 3);
    CHECK(F.parse("+3") == 3);
}

TEST_CASE("field specifier parsing") {
    CHECK(FieldSpec::parse("Q").kind == FieldSpec::Kind::Rationals);
    auto f5 = FieldSpec::parse("Fp:5");
    CHECK(f5.kind == FieldSpec::Kind::Prime);
    CHECK(f5.p == 5);
    CHECK(FieldSpec::parse("F7").p == 7);
    CHECK(FieldSpec::parse("GF(2)").p == 2);
    CHECK(FieldSpec::parse("Fp:5").name() == "F5");
    CHECK(FieldSpec::parse("Q").name() == "Q");
    CHECK_THROWS_AS(FieldSpec::parse("R"), Error);
    CHECK_THROWS_AS(FieldSpec::parse("Fp:6"), Error);
    CHECK_THROWS_AS(FieldSpec::parse("Fp:"), Error);
    // usage errors carry exit code 64
    try {
        FieldSpec::parse("Fp:6");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.exit_code() == 64);
    }
}

TEST_CASE("field axioms hold on random samples") {
    std::mt19937_64 rng(12345);
    auto check_axioms = [&](auto F, auto rand_elem) {
        for (int iter = 0; iter < 200; ++iter) {
            auto a = rand_elem(), b = rand_elem(), c = rand_elem();
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, F.neg(a)) == F.zero());
            CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
            CHECK(F.mul(a, F.one()) == a);
            if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
        }
    };
    PrimeField F13(13);
    check_axioms(F13, [&]() { return F13.from_int(static_cast<long long>(rng() % 1000) - 500); });
    RationalField Q;
    check_axioms(Q, [&]() {
        long long num = static_cast<long long>(rng() % 2001) - 1000;
        long long den = 1 + static_cast<long long>(rng() % 30);
        return Q.mul(Q.from_int(num), Q.inv(Q.from_int(den)));
    });
}

TEST_CASE("render-parse roundtrip") {
    RationalField Q;
    std::mt19937_64 rng(777);
    for (int i = 0; i < 100; ++i) {
        long long num = static_cast<long long>(rng() % 2001) - 1000;
        long long den = 1 + static_cast<long long>(rng() % 50);
        auto x = Q.mul(Q.from_int(num), Q.inv(Q.from_int(den)));
        CHECK(Q.parse(Q.render(x)) == x);
    }
    PrimeField F(97);
    for (std::uint64_t a = 0; a < 97; ++a) CHECK(F.parse(F.render(a)) == a);
}

TEST_CASE("with_field dispatch") {
    auto name = with_field(FieldSpec::parse("Fp:5"),
                           [](auto F) { return F.render(F.add(F.from_int(3), F.from_int(4))); });
    CHECK(name == "2");
    auto q = with_field(FieldSpec{}, [](auto F) { return F.render(F.inv(F.from_int(-2))); });
    CHECK(q == "-1/2");
}
