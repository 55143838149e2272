#include "doctest.h"

#include "shukla/builtins.hpp"
#include "shukla/extension_io.hpp"
#include "shukla/extensions.hpp"
#include "shukla/json_io.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

using namespace shukla;

namespace {

template <class F>
AssocContext<F> make_context(const F& f, FieldSpec spec, const std::string& a,
                             const std::string& r, const std::string& m) {
    json a_doc = builtin_doc(a, Slot::A, nullptr, nullptr);
    json r_doc = builtin_doc(r, Slot::R, &a_doc, nullptr);
    json m_doc = builtin_doc(m, Slot::M, &a_doc, &r_doc);
    return context_from_docs(f, spec, a_doc, r_doc, m_doc);
}

template <class F>
TwoCocycleDatum<F> datum_sub(const F& f, const TwoCocycleDatum<F>& x,
                             const TwoCocycleDatum<F>& y) {
    auto minus = f.neg(f.one());
    return {lin_add(f, x.f, lin_scale(f, minus, y.f)), lin_add(f, x.g, lin_scale(f, minus, y.g))};
}

template <class F>
ThreeCocycleDatum<F> datum3_sub(const F& f, const ThreeCocycleDatum<F>& x,
                                const ThreeCocycleDatum<F>& y) {
    auto minus = f.neg(f.one());
    return {lin_add(f, x.f, lin_scale(f, minus, y.f)), lin_add(f, x.g, lin_scale(f, minus, y.g)),
            lin_add(f, x.h, lin_scale(f, minus, y.h))};
}

// The nonsplit extension S = K[e]/(e^2) of R = K by M = K over A = K[e]/(e^2):
// the inclusion sends the module generator to e, the projection is the
// augmentation, and A acts on S by multiplication.
template <class F>
AbelianExtension<F> dual_total_algebra(const F& f) {
    AbelianExtension<F> e;
    e.S.dim = 2;
    e.S.labels = {"1", "e"};
    e.S.mult = Cube<F>(f, 2, 2, 2);
    e.S.mult.at(0, 0, 0) = f.one();
    e.S.mult.at(0, 1, 1) = f.one();
    e.S.mult.at(1, 0, 1) = f.one();
    e.S.unit = {f.one(), f.zero()};
    e.a_on_s = e.S.mult;
    e.iota = SparseMatrix<F>{2, 1, {{1, 0, f.one()}}};
    e.pi = SparseMatrix<F>{1, 2, {{0, 0, f.one()}}};
    return e;
}

// The same algebra in the basis {1, 1 + e}.  The projection hits both basis
// vectors, so the forward and backward scans pick genuinely different
// sections.
template <class F>
AbelianExtension<F> dual_total_algebra_shifted(const F& f) {
    auto one = f.one();
    auto two = f.add(one, one);
    auto neg = f.neg(one);
    AbelianExtension<F> e;
    e.S.dim = 2;
    e.S.labels = {"1", "u"};
    e.S.mult = Cube<F>(f, 2, 2, 2);
    e.S.mult.at(0, 0, 0) = one;
    e.S.mult.at(0, 1, 1) = one;
    e.S.mult.at(1, 0, 1) = one;
    e.S.mult.at(1, 1, 0) = neg;  // u*u = (1+e)^2 = 2u - 1
    e.S.mult.at(1, 1, 1) = two;
    e.S.unit = {one, f.zero()};
    e.a_on_s = Cube<F>(f, 2, 2, 2);
    e.a_on_s.at(0, 0, 0) = one;
    e.a_on_s.at(0, 1, 1) = one;
    e.a_on_s.at(1, 0, 0) = neg;  // e.1 = e = u - 1
    e.a_on_s.at(1, 0, 1) = one;
    e.a_on_s.at(1, 1, 0) = neg;  // e.u = e(1+e) = e
    e.a_on_s.at(1, 1, 1) = one;
    e.iota = SparseMatrix<F>{2, 1, {{0, 0, neg}, {1, 0, one}}};
    e.pi = SparseMatrix<F>{1, 2, {{0, 0, one}, {0, 1, one}}};
    return e;
}

// A = R = K with a 26-dimensional module on which everything acts as the
// identity: the product and action identities are vacuous there, so every
// f-table is a cocycle and the enumeration guard has to trip.
AssocContext<PrimeField> guard_context(const PrimeField& f) {
    AssocContext<PrimeField> ctx{f, {}, {}, {}, 0, {}, {}, {}};
    ctx.A.dim = 1;
    ctx.A.labels = {"1"};
    ctx.A.mult = Cube<PrimeField>(f, 1, 1, 1);
    ctx.A.mult.at(0, 0, 0) = f.one();
    ctx.A.unit = {f.one()};
    ctx.R = ctx.A;
    ctx.a_on_r = ctx.A.mult;
    ctx.dimM = 26;
    ctx.left = Cube<PrimeField>(f, 1, 26, 26);
    ctx.right = Cube<PrimeField>(f, 26, 1, 26);
    for (std::size_t i = 0; i < 26; ++i) {
        ctx.m_labels.push_back("m" + std::to_string(i));
        ctx.left.at(0, i, i) = f.one();
        ctx.right.at(i, 0, i) = f.one();
    }
    return ctx;
}

const std::vector<std::array<const char*, 3>> kSmallTriples = {
    {"dual_numbers", "quotient_k", "trivial_module"},
    {"k_times_k", "quotient_point", "regular_module"},
    {"base_field", "dual_numbers", "regular_module"},
};

}  // namespace

TEST_CASE("degree-2 membership: zero, coboundaries, and a rejected datum") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<RationalField> calc(ctx);

    TwoCocycleDatum<RationalField> zero;
    CHECK(calc.check_z2(zero).ok());
    auto w0 = calc.is_coboundary2(zero);
    REQUIRE(w0.has_value());
    CHECK(w0->empty());

    // coboundaries are cocycles, and the recovered witness reproduces them
    for (std::size_t j = 0; j < calc.total().total_dims[1]; ++j) {
        CAPTURE(j);
        auto d = calc.coboundary_of(lin_unit(f, j));
        CHECK(calc.check_z2(d).ok());
        auto w = calc.is_coboundary2(d);
        REQUIRE(w.has_value());
        auto again = calc.coboundary_of(*w);
        CHECK(again.f == d.f);
        CHECK(again.g == d.g);
    }

    // g(1;1) = 1 breaks the unital identities, and the report says which
    TwoCocycleDatum<RationalField> bad{{}, {{0, f.one()}}};
    auto rep = calc.check_z2(bad);
    CHECK(!rep.ok());
    bool saw_action = false, saw_mixed = false;
    for (const auto& v : rep.violations) {
        if (v.identity == "action-cocycle") saw_action = true;
        if (v.identity == "mixed-compatibility") saw_mixed = true;
    }
    CHECK(saw_action);
    CHECK(saw_mixed);
    for (int op = 0; op < 2; ++op) {
        try {
            if (op == 0)
                calc.is_coboundary2(bad);
            else
                calc.build_extension(bad);
            FAIL("expected a cocycle rejection");
        } catch (const Error& e) {
            CHECK(e.code() == "NotACocycle");
            CHECK(e.category() == ErrorCategory::Rejection);
        }
    }
}

TEST_CASE("the nonsplit extension of K by K over the dual numbers") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<RationalField> calc(ctx);

    // frozen picture: Z^2 = 2, B^2 = 1, H^2 = 1
    CHECK(rank_kernel(f, calc.total().D[2]).kernel.size() == 2);
    CHECK(rank_kernel(f, calc.total().D[1]).rank == 1);

    auto ext = dual_total_algebra(f);
    CHECK(calc.validate_extension(ext).ok());

    auto d = calc.extract_cocycle2(ext);
    CHECK(d.f.empty());
    REQUIRE(d.g.size() == 1);
    CHECK(d.g[0].first == 1);  // g(e;1) = 1: the class the split theory misses
    CHECK(d.g[0].second == f.one());
    CHECK(!calc.is_coboundary2(d).has_value());

    // rebuilding from the class gives an equivalent extension, and the maps
    // found really are morphisms over the identity on both ends
    auto built = calc.build_extension(d);
    auto phi = calc.equivalent(built, ext);
    REQUIRE(phi.has_value());
    CHECK(multiply(f, *phi, built.iota) == ext.iota);
    CHECK(multiply(f, ext.pi, *phi) == built.pi);
    CHECK(calc.equivalent(ext, built).has_value());

    // the split extension lies in a different class
    auto split = calc.build_extension(TwoCocycleDatum<RationalField>{});
    CHECK(!calc.equivalent(split, ext).has_value());
    CHECK(!calc.equivalent(built, split).has_value());

    // broken inputs: a dead projection is a violation, a bad shape an error
    auto noproj = dual_total_algebra(f);
    noproj.pi = SparseMatrix<RationalField>{1, 2, {}};
    CHECK(!calc.validate_extension(noproj).ok());
    try {
        calc.extract_cocycle2(noproj);
        FAIL("expected a rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "NotExact");
    }
    auto badshape = dual_total_algebra(f);
    badshape.iota = SparseMatrix<RationalField>{2, 2, {}};
    try {
        calc.validate_extension(badshape);
        FAIL("expected a rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "ValidationFailure");
    }
}

TEST_CASE("build and extract invert each other up to coboundary") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const auto& [a, r, m] : kSmallTriples) {
        CAPTURE(a);
        CAPTURE(r);
        CAPTURE(m);
        auto ctx = make_context(f, spec, a, r, m);
        ExtensionCalculus<RationalField> calc(ctx);
        auto z2 = rank_kernel(f, calc.total().D[2]);
        std::vector<SparseVec<RationalField>> picks = z2.kernel;
        if (z2.kernel.size() >= 2) picks.push_back(lin_add(f, z2.kernel[0], z2.kernel[1]));
        for (std::size_t i = 0; i < picks.size(); ++i) {
            CAPTURE(i);
            auto d = calc.datum_from_total2(picks[i]);
            auto e = calc.build_extension(d);
            CHECK(calc.validate_extension(e).ok());
            auto d2 = calc.extract_cocycle2(e);
            CHECK(calc.is_coboundary2(datum_sub(f, d, d2)).has_value());
            auto rebuilt = calc.build_extension(d2);
            CHECK(calc.equivalent(e, rebuilt).has_value());
        }
    }

    PrimeField f5(5);
    FieldSpec spec5{FieldSpec::Kind::Prime, 5};
    auto ctx = make_context(f5, spec5, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<PrimeField> calc(ctx);
    for (const auto& k : rank_kernel(f5, calc.total().D[2]).kernel) {
        auto d = calc.datum_from_total2(k);
        auto e = calc.build_extension(d);
        auto d2 = calc.extract_cocycle2(e);
        CHECK(calc.is_coboundary2(datum_sub(f5, d, d2)).has_value());
    }
}

TEST_CASE("displayed coboundary formulas match the assembled differentials") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const auto& [a, r, m] : kSmallTriples) {
        CAPTURE(a);
        CAPTURE(r);
        CAPTURE(m);
        auto ctx = make_context(f, spec, a, r, m);
        ExtensionCalculus<RationalField> calc(ctx);
        const auto& tc = calc.total();
        // the degree-1 witnesses sit in the leading block, at offset zero
        REQUIRE(tc.blocks[1][0].second == 0);
        for (std::size_t j = 0; j < tc.total_dims[1]; ++j) {
            CAPTURE(j);
            auto d = calc.coboundary_of(lin_unit(f, j));
            CHECK(lin_equal(f, calc.total2_vector(d), tc.D[1].apply(f, lin_unit(f, j))));
        }
        for (std::size_t j = 0; j < tc.total_dims[2]; ++j) {
            CAPTURE(j);
            auto w = calc.datum_from_total2(lin_unit(f, j));
            auto d = calc.coboundary3_of(w.f, w.g);
            CHECK(lin_equal(f, calc.total3_vector(d), tc.D[2].apply(f, lin_unit(f, j))));
        }
    }
}

TEST_CASE("explicit identity matrices cut out the same spaces as the kernels") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const auto& [a, r, m] : kSmallTriples) {
        CAPTURE(a);
        CAPTURE(r);
        CAPTURE(m);
        auto ctx = make_context(f, spec, a, r, m);
        ExtensionCalculus<RationalField> calc(ctx);
        const auto& tc = calc.total();

        auto e2 = calc.z2_identity_matrix();
        CHECK(e2.rows == calc.z2_defect_dim());
        CHECK(e2.cols == tc.total_dims[2]);
        auto ke = rank_kernel(f, e2);
        auto kd = rank_kernel(f, tc.D[2]);
        CHECK(ke.kernel.size() == kd.kernel.size());
        for (const auto& k : kd.kernel) CHECK(e2.apply(f, k).empty());
        for (const auto& k : ke.kernel) CHECK(tc.D[2].apply(f, k).empty());

        auto e3 = calc.z3_identity_matrix();
        CHECK(e3.rows == calc.z3_defect_dim());
        CHECK(e3.cols == tc.total_dims[3]);
        auto ke3 = rank_kernel(f, e3);
        auto kd3 = rank_kernel(f, tc.D[3]);
        CHECK(ke3.kernel.size() == kd3.kernel.size());
        for (const auto& k : kd3.kernel) CHECK(e3.apply(f, k).empty());
        for (const auto& k : ke3.kernel) CHECK(tc.D[3].apply(f, k).empty());
    }
}

TEST_CASE("the two scan orders extract classes that differ by a coboundary") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<RationalField> calc(ctx);

    auto ext = dual_total_algebra_shifted(f);
    CHECK(calc.validate_extension(ext).ok());
    CHECK(calc.equivalent(ext, dual_total_algebra(f)).has_value());

    auto fwd = calc.extract_cocycle2(ext, SectionRule::Forward);
    auto bwd = calc.extract_cocycle2(ext, SectionRule::Backward);
    CHECK(fwd.g == bwd.g);
    CHECK(fwd.f != bwd.f);  // the sections really differ...
    auto w = calc.is_coboundary2(datum_sub(f, bwd, fwd));
    REQUIRE(w.has_value());  // ...but only by a coboundary
    CHECK(!w->empty());

    // the scan orders on a raw surjection pick different right inverses
    SparseMatrix<RationalField> p{1, 2, {{0, 0, f.one()}, {0, 1, f.one()}}};
    auto sf = echelon_section(f, p, SectionRule::Forward, "test");
    auto sb = echelon_section(f, p, SectionRule::Backward, "test");
    CHECK(multiply(f, p, sf) == SparseMatrix<RationalField>::identity(f, 1));
    CHECK(multiply(f, p, sb) == SparseMatrix<RationalField>::identity(f, 1));
    CHECK(!(sf == sb));
    try {
        echelon_section(f, SparseMatrix<RationalField>{1, 2, {}}, SectionRule::Forward, "test");
        FAIL("expected a rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "NotExact");
    }
}

TEST_CASE("crossed extensions: padding, the trivial class, and scan orders") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<RationalField> calc(ctx);

    // padding an extension always represents the zero class in degree 3
    auto gen = calc.extract_cocycle2(dual_total_algebra(f));
    auto built = calc.build_extension(gen);
    auto ce = calc.crossed_from_extension(built);
    CHECK(calc.validate_crossed(ce).ok());
    auto d3 = calc.crossed_to_cocycle(ce);
    CHECK(calc.check_z3(d3).ok());
    CHECK(calc.is_coboundary3(d3).has_value());

    // the trivial crossed extension produces the zero triple on the nose
    auto triv = calc.trivial_crossed();
    CHECK(calc.validate_crossed(triv).ok());
    auto d0 = calc.crossed_to_cocycle(triv);
    CHECK(d0.f.empty());
    CHECK(d0.g.empty());
    CHECK(d0.h.empty());

    // scan-order independence up to coboundary, on a padding whose projection
    // admits two different sections
    auto ce2 = calc.crossed_from_extension(dual_total_algebra_shifted(f));
    CHECK(calc.validate_crossed(ce2).ok());
    auto dfwd = calc.crossed_to_cocycle(ce2, SectionRule::Forward);
    auto dbwd = calc.crossed_to_cocycle(ce2, SectionRule::Backward);
    CHECK(calc.is_coboundary3(datum3_sub(f, dbwd, dfwd)).has_value());

    // a boundary leaking outside the included submodule is reported
    auto bad = ce;
    bad.boundary.entries.push_back({0, 1, f.one()});
    bad.boundary.canonicalize(f);
    CHECK(!calc.validate_crossed(bad).ok());
}

TEST_CASE("degree-3 dimensions agree with the cohomology table") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<RationalField> calc(ctx);
    // frozen: ker D^3 = 2, im D^2 = 1, H^3 = 1
    auto z3 = rank_kernel(f, calc.total().D[3]);
    auto b3 = rank_kernel(f, calc.total().D[2]).rank;
    CHECK(z3.kernel.size() == 2);
    CHECK(b3 == 1);
    CHECK(z3.kernel.size() - b3 == 1);
}

TEST_CASE("brute force classification over the two-element field") {
    PrimeField f2(2);
    FieldSpec spec{FieldSpec::Kind::Prime, 2};
    {
        auto ctx = make_context(f2, spec, "dual_numbers", "quotient_k", "trivial_module");
        auto rep = classify_bruteforce(ctx);
        CHECK(rep.dim_z2 == 2);
        CHECK(rep.dim_b2 == 1);
        CHECK(rep.dim_h2 == 1);
        CHECK(rep.num_cocycles == 4);
        CHECK(rep.num_coboundaries == 2);
        CHECK(rep.num_classes == 2);
        CHECK(rep.num_classes == (std::uint64_t{1} << rep.dim_h2));
    }
    {
        auto ctx = make_context(f2, spec, "base_field", "quotient_k", "trivial_module");
        auto rep = classify_bruteforce(ctx);
        CHECK(rep.dim_z2 == 1);
        CHECK(rep.dim_h2 == 0);
        CHECK(rep.num_classes == 1);
    }
    {
        // 26 independent module directions: 2^26 candidates, refused
        auto gctx = guard_context(f2);
        ExtensionCalculus<PrimeField> calc(gctx);
        CHECK(rank_kernel(f2, calc.total().D[2]).kernel.size() == 26);
        try {
            classify_bruteforce(gctx);
            FAIL("expected a resource rejection");
        } catch (const Error& e) {
            CHECK(e.code() == "SearchSpaceTooLarge");
            CHECK(e.category() == ErrorCategory::Rejection);
        }
    }
    // enumeration needs coefficients in {0,1}: other fields are turned away
    RationalField fq;
    FieldSpec specq{FieldSpec::Kind::Rationals, 0};
    auto ctxq = make_context(fq, specq, "base_field", "quotient_k", "trivial_module");
    try {
        classify_bruteforce(ctxq);
        FAIL("expected a rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "ValidationFailure");
    }
    PrimeField f5(5);
    FieldSpec spec5{FieldSpec::Kind::Prime, 5};
    auto ctx5 = make_context(f5, spec5, "base_field", "quotient_k", "trivial_module");
    try {
        classify_bruteforce(ctx5);
        FAIL("expected a rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "ValidationFailure");
    }
}

TEST_CASE("extension documents round trip through JSON") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    ExtensionCalculus<RationalField> calc(ctx);
    auto gen = calc.extract_cocycle2(dual_total_algebra(f));

    {
        auto doc = two_cocycle_to_json(f, ctx, gen);
        CHECK(doc["field"] == "Q");
        json j = json::parse(doc.dump());
        auto back = two_cocycle_from_json(f, spec, j, ctx);
        CHECK(back.f == gen.f);
        CHECK(back.g == gen.g);
        // a document rendered over Q refuses to load in a prime-field run
        PrimeField f5(5);
        FieldSpec spec5{FieldSpec::Kind::Prime, 5};
        auto ctx5 = make_context(f5, spec5, "dual_numbers", "quotient_k", "trivial_module");
        try {
            two_cocycle_from_json(f5, spec5, j, ctx5);
            FAIL("expected a rejection");
        } catch (const Error& e) {
            CHECK(e.code() == "ValidationFailure");
        }
    }
    {
        auto built = calc.build_extension(gen);
        json j = json::parse(extension_to_json(f, built).dump());
        auto back = extension_from_json(f, spec, j, ctx);
        CHECK(back.S.dim == built.S.dim);
        CHECK(back.S.labels == built.S.labels);
        CHECK(back.S.mult.data == built.S.mult.data);
        CHECK(back.S.unit == built.S.unit);
        CHECK(back.a_on_s.data == built.a_on_s.data);
        CHECK(back.iota == built.iota);
        CHECK(back.pi == built.pi);
        CHECK(calc.validate_extension(back).ok());
    }
    {
        auto ce = calc.crossed_from_extension(calc.build_extension(gen));
        json j = json::parse(crossed_to_json(f, ce).dump());
        auto back = crossed_from_json(f, spec, j, ctx);
        CHECK(back.C0.dim == ce.C0.dim);
        CHECK(back.C0.mult.data == ce.C0.mult.data);
        CHECK(back.dimC1 == ce.dimC1);
        CHECK(back.c1_labels == ce.c1_labels);
        CHECK(back.c0_left.data == ce.c0_left.data);
        CHECK(back.c0_right.data == ce.c0_right.data);
        CHECK(back.boundary == ce.boundary);
        CHECK(back.pi == ce.pi);
        CHECK(back.iota == ce.iota);
        CHECK(calc.validate_crossed(back).ok());
    }
    {
        auto d3 = calc.crossed_to_cocycle(calc.crossed_from_extension(calc.build_extension(gen)));
        json j = json::parse(three_cocycle_to_json(f, ctx, d3).dump());
        auto back = three_cocycle_from_json(f, spec, j, ctx);
        CHECK(back.f == d3.f);
        CHECK(back.g == d3.g);
        CHECK(back.h == d3.h);
    }
    {
        // matrices may also be given densely as arrays of rows
        json j = json::parse(R"([["0","1"],["1","0"]])");
        auto m = matrix_from_json(f, j, 2, 2, "test");
        SparseMatrix<RationalField> expect{2, 2, {{0, 1, f.one()}, {1, 0, f.one()}}};
        CHECK(m == expect);
    }
}
