#include "doctest.h"

#include "shukla/assoc_bicomplex.hpp"
#include "shukla/builtins.hpp"
#include "shukla/hochschild.hpp"
#include "shukla/homology.hpp"
#include "shukla/json_io.hpp"

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

}  // namespace

TEST_CASE("classical oracle: truncated polynomials and a split pair") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};

    // K[x]/(x^2) with coefficients in itself: center is everything, one outer
    // derivation x d/dx, and one-dimensional groups in every higher degree.
    {
        auto ctx = make_context(f, spec, "base_field", "dual_numbers", "regular_module");
        auto rep = hochschild_cohomology(f, ctx.R, ctx.left, ctx.right, ctx.dimM, 3);
        CHECK(rep.h_dims == std::vector<std::size_t>{2, 1, 1, 1});
    }
    // K x K is separable: nothing above degree 0.
    {
        auto ctx = make_context(f, spec, "base_field", "k_times_k", "regular_module");
        auto rep = hochschild_cohomology(f, ctx.R, ctx.left, ctx.right, ctx.dimM, 3);
        CHECK(rep.h_dims == std::vector<std::size_t>{2, 0, 0, 0});
    }
}

TEST_CASE("over the base field the total cohomology is classical") {
    // With dim A = 1 the extra rows of the bicomplex are acyclic padding, so
    // the totalization must reproduce the classical groups computed by the
    // independent assembler.
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const char* r_name : {"dual_numbers", "k_times_k", "trunc_poly:3"}) {
        for (const char* m_name : {"regular_module", "trivial_module"}) {
            CAPTURE(r_name);
            CAPTURE(m_name);
            auto ctx = make_context(f, spec, "base_field", r_name, m_name);
            auto bc = assemble(ctx, 4, true, kDefaultSizeCap, true);
            auto tc = totalize(bc, f);
            auto hc = total_cohomology(f, tc);
            auto oracle = hochschild_cohomology(f, ctx.R, ctx.left, ctx.right, ctx.dimM, 3);
            for (std::size_t n = 0; n <= 3; ++n) {
                CAPTURE(n);
                CHECK(hc.h_dims[n] == oracle.h_dims[n]);
            }
        }
    }
}

TEST_CASE("the motivating example separates the total and relative theories") {
    // A = K[e]/(e^2), R = K via the augmentation, M = K.  Worked out by hand:
    // Total^2 has coordinates u = g(1;1), v = g(e;1), w = f(1,1) with
    // D^2 = ((u,0,0,0); (-u,0,0,0); 0) and im D^1 = {(0,0,w)}, so Z^2 = 2,
    // B^2 = 1, H^2 = 1; the class of S = A itself (sections give f = 0,
    // g(e;1) = 1) generates.  The kernel column has dim C^k_A = 1 for all k
    // with the alternating-sum differential, so H^0_A = 1 and H^k_A = 0 above.
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    auto bc = assemble(ctx, 4, true, kDefaultSizeCap, true);
    auto tc = totalize(bc, f);
    auto hc = total_cohomology(f, tc);

    CHECK(hc.space_dims[0] == 1);
    CHECK(hc.space_dims[1] == 1);
    CHECK(hc.space_dims[2] == 3);
    CHECK(hc.h_dims[0] == 1);
    CHECK(hc.h_dims[1] == 0);
    CHECK(hc.h_dims[2] == 1);
    CHECK(hc.kernel_dims[2] == 2);
    CHECK(hc.image_dims[2] == 1);
    // Degrees 3 and 4 cross-checked against a dense brute force built
    // directly from the face formulas: one-dimensional groups persist.
    CHECK(hc.h_dims[3] == 1);
    CHECK(hc.h_dims[4] == 1);
    CHECK(hc.kernel_dims[3] == 2);
    CHECK(hc.kernel_dims[4] == 8);

    auto kc = kernel_column(f, bc);
    CHECK(kc.c_dims == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(kc.h_dims[0] == 1);
    CHECK(kc.h_dims[1] == 0);
    CHECK(kc.h_dims[2] == 0);
    CHECK(kc.h_dims[3] == 0);

    // The comparison map: isomorphisms in degrees 0 and 1, injective but not
    // surjective in degree 2 (the relative theory misses the class of S = A).
    auto a0 = alpha_map(f, tc, kc, hc, 0);
    CHECK(a0.isomorphism);
    auto a1 = alpha_map(f, tc, kc, hc, 1);
    CHECK(a1.isomorphism);
    auto a2 = alpha_map(f, tc, kc, hc, 2);
    CHECK(a2.injective);
    CHECK(!a2.surjective);
    CHECK(a2.rank == 0);
}

TEST_CASE("coefficients in the algebra itself give nothing above degree zero") {
    // R = A always splits as an extension of itself, and the whole reduced
    // theory collapses: only the commutant survives at degree 0.
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const char* a_name : {"dual_numbers", "k_times_k"}) {
        CAPTURE(a_name);
        auto ctx = make_context(f, spec, a_name, "r_equals_a", "regular_module");
        auto bc = assemble(ctx, 4, true, kDefaultSizeCap, true);
        auto tc = totalize(bc, f);
        auto hc = total_cohomology(f, tc);
        CHECK(hc.h_dims[0] == 2);  // commutative: every element central
        for (std::size_t n = 1; n <= 3; ++n) {
            CAPTURE(n);
            CHECK(hc.h_dims[n] == 0);
        }
    }
}

TEST_CASE("projective quotient of a split pair: comparison is an isomorphism") {
    // A = K x K, R = K x 0: R is a direct factor of A, so the relative and
    // total theories agree and vanish above degree 0.
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const char* m_name : {"regular_module", "trivial_module"}) {
        CAPTURE(m_name);
        auto ctx = make_context(f, spec, "k_times_k", "quotient_point", m_name);
        auto bc = assemble(ctx, 4, true, kDefaultSizeCap, true);
        auto tc = totalize(bc, f);
        auto hc = total_cohomology(f, tc);
        auto kc = kernel_column(f, bc);
        for (std::size_t n = 0; n <= 3; ++n) {
            CAPTURE(n);
            CHECK(hc.h_dims[n] == (n == 0 ? 1 : 0));
            CHECK(kc.h_dims[n] == (n == 0 ? 1 : 0));
            auto a = alpha_map(f, tc, kc, hc, n);
            CHECK(a.isomorphism);
        }
    }
}

TEST_CASE("comparison map requires one degree of headroom") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    auto bc = assemble(ctx, 2, true, kDefaultSizeCap, true);
    auto tc = totalize(bc, f);
    auto hc = total_cohomology(f, tc);
    auto kc = kernel_column(f, bc);
    CHECK_NOTHROW(alpha_map(f, tc, kc, hc, 1));
    try {
        alpha_map(f, tc, kc, hc, 2);
        FAIL("expected a truncation rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "TruncationTooSmall");
        CHECK(e.category() == ErrorCategory::Rejection);
    }
    CHECK(hc.boundary_incomplete[2]);
    CHECK(!hc.boundary_incomplete[1]);
}

TEST_CASE("relative tensor powers collapse where the action is surjective") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};

    // A = K[e]/(e^2), R = K: e acts as zero, so no relations at all and the
    // ambient line survives.
    {
        auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
        auto w = tensor_over_A(ctx, 2);
        CHECK(w.ambient_dim == 1);
        CHECK(w.dim == 1);
        CHECK(hom_a_dim(ctx, w) == 1);
    }
    // A = K x K, R = K x 0.
    {
        auto ctx = make_context(f, spec, "k_times_k", "quotient_point", "regular_module");
        auto w = tensor_over_A(ctx, 2);
        CHECK(w.ambient_dim == 1);
        CHECK(w.dim == 1);
        CHECK(hom_a_dim(ctx, w) == 1);
    }
    // Over the base field the relative tensor power is the full tensor power.
    {
        auto ctx = make_context(f, spec, "base_field", "dual_numbers", "regular_module");
        auto w2 = tensor_over_A(ctx, 2);
        CHECK(w2.ambient_dim == 4);
        CHECK(w2.dim == 4);
        auto w3 = tensor_over_A(ctx, 3);
        CHECK(w3.dim == 8);
    }
}

TEST_CASE("the relative cochain spaces match the A-linear maps they represent") {
    // dim C^k_A computed from the kernel column must agree with the
    // dimension of Hom_A(R tensor_A ... tensor_A R, M) computed from the
    // relative tensor power and the A-linearity system.
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};
    for (const char* a_name : {"dual_numbers", "k_times_k"}) {
        for (const char* r_name : {"quotient_k", "r_equals_a"}) {
            for (const char* m_name : {"regular_module", "trivial_module"}) {
                if (std::string(a_name) == "k_times_k" && std::string(r_name) == "quotient_k")
                    continue;  // builtin pairing used elsewhere; keep the suite small
                CAPTURE(a_name);
                CAPTURE(r_name);
                CAPTURE(m_name);
                auto ctx = make_context(f, spec, a_name, r_name, m_name);
                auto bc = assemble(ctx, 3, true, kDefaultSizeCap, true);
                auto kc = kernel_column(f, bc);
                for (std::size_t k = 1; k <= 3; ++k) {
                    CAPTURE(k);
                    auto w = tensor_over_A(ctx, k);
                    CHECK(kc.c_dims[k] == hom_a_dim(ctx, w));
                }
            }
        }
    }
}

TEST_CASE("derivation spaces and the low-degree exactness bookkeeping") {
    RationalField f;
    FieldSpec spec{FieldSpec::Kind::Rationals, 0};

    // Der_K(K[x]/x^2, itself) = K x d/dx.
    {
        auto ctx = make_context(f, spec, "base_field", "dual_numbers", "regular_module");
        auto der = derivations(ctx);
        CHECK(der.dim == 1);
        auto bc = assemble(ctx, 2, true, kDefaultSizeCap, true);
        auto kc = kernel_column(f, bc);
        CHECK(der.dim == ctx.dimM - kc.h_dims[0] + kc.h_dims[1]);
    }
    // Der_A(K, K) for A = K[e]/(e^2): the Leibniz rule at 1 kills everything.
    {
        auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
        auto der = derivations(ctx);
        CHECK(der.dim == 0);
        auto bc = assemble(ctx, 2, true, kDefaultSizeCap, true);
        auto kc = kernel_column(f, bc);
        CHECK(der.dim == ctx.dimM - kc.h_dims[0] + kc.h_dims[1]);
    }
}

TEST_CASE("prime field runs agree with the rational picture away from torsion") {
    PrimeField f(5);
    FieldSpec spec{FieldSpec::Kind::Prime, 5};
    auto ctx = make_context(f, spec, "dual_numbers", "quotient_k", "trivial_module");
    auto bc = assemble(ctx, 3, true, kDefaultSizeCap, true);
    auto tc = totalize(bc, f);
    auto hc = total_cohomology(f, tc);
    CHECK(hc.h_dims[0] == 1);
    CHECK(hc.h_dims[1] == 0);
    CHECK(hc.h_dims[2] == 1);
}
