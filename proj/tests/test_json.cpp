#include <fstream>
#include <functional>

#include "doctest.h"
#include "shukla/builtins.hpp"
#include "shukla/json_io.hpp"

using namespace shukla;

namespace {
const FieldSpec kQ{FieldSpec::Kind::Rationals, 0};
const FieldSpec kF5{FieldSpec::Kind::Prime, 5};

ErrorCategory category_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.category();
    }
    FAIL("expected an error");
    return ErrorCategory::Internal;
}
}  // namespace

TEST_CASE("malformed documents are rejected with category Rejection") {
    RationalField f;
    json good = builtin_doc("dual_numbers", Slot::A, nullptr, nullptr);

    SUBCASE("unknown key") {
        json j = good;
        j["extra"] = 1;
        CHECK(category_of([&] { parse_algebra_doc(f, kQ, j, std::nullopt, "A"); }) ==
              ErrorCategory::Rejection);
    }
    SUBCASE("wrong mult shape") {
        json j = good;
        j["mult"][0].erase(1);
        CHECK_THROWS_AS(parse_algebra_doc(f, kQ, j, std::nullopt, "A"), Error);
    }
    SUBCASE("numeric scalar entries") {
        json j = good;
        j["mult"][0][0][0] = 1;
        CHECK_THROWS_AS(parse_algebra_doc(f, kQ, j, std::nullopt, "A"), Error);
    }
    SUBCASE("scalar syntax") {
        json j = good;
        j["mult"][0][0][0] = "1.5";
        CHECK(category_of([&] { parse_algebra_doc(f, kQ, j, std::nullopt, "A"); }) ==
              ErrorCategory::Rejection);
    }
    SUBCASE("division by zero") {
        json j = good;
        j["mult"][0][0][0] = "1/0";
        CHECK(category_of([&] { parse_algebra_doc(f, kQ, j, std::nullopt, "A"); }) ==
              ErrorCategory::Rejection);
    }
    SUBCASE("labels length") {
        json j = good;
        j["labels"] = {"only"};
        CHECK_THROWS_AS(parse_algebra_doc(f, kQ, j, std::nullopt, "A"), Error);
    }
    SUBCASE("field mismatch") {
        json j = good;
        j["field"] = "Fp:5";
        CHECK_THROWS_AS(parse_algebra_doc(f, kQ, j, std::nullopt, "A"), Error);
        PrimeField f5(5);
        CHECK_NOTHROW(parse_algebra_doc(f5, kF5, j, std::nullopt, "A"));
    }
    SUBCASE("kind mismatch") {
        json j = good;
        j["kind"] = "module";
        CHECK_THROWS_AS(parse_algebra_doc(f, kQ, j, std::nullopt, "A"), Error);
    }
    SUBCASE("a_action on the A slot") {
        json j = good;
        j["a_action"] = json::array();
        CHECK_THROWS_AS(parse_algebra_doc(f, kQ, j, std::nullopt, "A"), Error);
    }
}

TEST_CASE("fp parsing of rational strings in documents") {
    PrimeField f(5);
    json j = builtin_doc("dual_numbers", Slot::A, nullptr, nullptr);
    j["mult"][1][1] = {"1/2", "7"};  // e*e = 3 + 2e over F5
    auto parsed = parse_algebra_doc(f, kF5, j, std::nullopt, "A");
    CHECK(f.render(parsed.alg.mult.at(1, 1, 0)) == "3");
    CHECK(f.render(parsed.alg.mult.at(1, 1, 1)) == "2");
}

TEST_CASE("cochain serialization round-trips") {
    RationalField f;
    SparseVec<RationalField> v{{0, f.parse("2/3")}, {7, f.parse("-1")}};
    auto j = cochain_to_json(f, 2, {2, 2, 2}, v);
    CHECK(j["degree"] == 2);
    CHECK(j["entries"].size() == 2);
    auto back = cochain_from_json(f, json(j), 8, "cochain");
    CHECK(back == v);

    SUBCASE("out-of-range index") {
        json bad = json(j);
        bad["entries"][1][0] = 99;
        CHECK_THROWS_AS(cochain_from_json(f, bad, 8, "cochain"), Error);
    }
    SUBCASE("merged duplicate entries") {
        json dup = json(j);
        dup["entries"].push_back({0, "1/3"});
        auto merged = cochain_from_json(f, dup, 8, "cochain");
        REQUIRE(merged.size() == 2);
        CHECK(f.render(merged[0].second) == "1");
    }
}

TEST_CASE("matrix export formats") {
    PrimeField f(7);
    SparseMatrix<PrimeField> m{2, 3, {}};
    m.entries = {{0, 1, f.from_int(3)}, {1, 2, f.from_int(6)}};
    m.canonicalize(f);
    auto j = matrix_to_json(f, m);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    CHECK(j["entries"][0] == ojson::array({0, 1, "3"}));
    auto mm = matrix_to_matrixmarket(f, m);
    CHECK(mm.find("%%MatrixMarket matrix coordinate integer general\n2 3 2\n") == 0);
    CHECK(mm.find("1 2 3\n") != std::string::npos);
    CHECK(mm.find("2 3 6\n") != std::string::npos);
}

TEST_CASE("load_json_file reports missing and malformed files") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/x.json"), Error);
    const char* path = "test_bad_doc.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK(category_of([&] { load_json_file(path); }) == ErrorCategory::Usage);
    {
        std::ofstream out(path);
        out << "[1,2,3]";
    }
    CHECK_THROWS_AS(load_json_file(path), Error);
    std::remove(path);
}
