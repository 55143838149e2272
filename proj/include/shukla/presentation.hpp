#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "shukla/error.hpp"
#include "shukla/field.hpp"
#include "shukla/linalg.hpp"

namespace shukla {

// Dense rank-3 array of field elements: structure constants c[i][j][k]
// meaning  op(x_i, y_j) = sum_k c[i][j][k] z_k.
template <class F>
struct Cube {
    using Elem = typename F::Elem;
    std::size_t n1 = 0, n2 = 0, n3 = 0;
    std::vector<Elem> data;

    Cube() = default;
    Cube(const F& f, std::size_t a, std::size_t b, std::size_t c)
        : n1(a), n2(b), n3(c), data(a * b * c, f.zero()) {}

    Elem& at(std::size_t i, std::size_t j, std::size_t k) { return data[(i * n2 + j) * n3 + k]; }
    const Elem& at(std::size_t i, std::size_t j, std::size_t k) const {
        return data[(i * n2 + j) * n3 + k];
    }
    bool shaped(std::size_t a, std::size_t b, std::size_t c) const {
        return n1 == a && n2 == b && n3 == c && data.size() == a * b * c;
    }
};

template <class F>
using Dense = std::vector<typename F::Elem>;  // dense coordinate vector

// Sparse linear combination of basis elements (reuses SparseVec ordering).
template <class F>
using Lin = SparseVec<F>;

template <class F>
Lin<F> lin_unit(const F& f, std::size_t i) {
    return {{i, f.one()}};
}

template <class F>
Lin<F> lin_of_dense(const F& f, const Dense<F>& v) {
    Lin<F> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!f.is_zero(v[i])) out.push_back({i, v[i]});
    return out;
}

template <class F>
Dense<F> dense_of_lin(const F& f, const Lin<F>& v, std::size_t dim) {
    Dense<F> out(dim, f.zero());
    for (auto& [i, x] : v) out[i] = f.add(out[i], x);
    return out;
}

// Bilinear map given by a cube, applied to two linear combinations.
template <class F>
Lin<F> cube_apply(const F& f, const Cube<F>& c, const Lin<F>& x, const Lin<F>& y) {
    Dense<F> acc(c.n3, f.zero());
    for (auto& [i, xv] : x)
        for (auto& [j, yv] : y) {
            auto xy = f.mul(xv, yv);
            if (f.is_zero(xy)) continue;
            for (std::size_t k = 0; k < c.n3; ++k) {
                const auto& coeff = c.at(i, j, k);
                if (!f.is_zero(coeff)) acc[k] = f.add(acc[k], f.mul(coeff, xy));
            }
        }
    return lin_of_dense(f, acc);
}

template <class F>
Lin<F> lin_scale(const F& f, const typename F::Elem& s, Lin<F> v) {
    if (f.is_zero(s)) return {};
    for (auto& [i, x] : v) x = f.mul(x, s);
    return v;
}

template <class F>
Lin<F> lin_add(const F& f, Lin<F> a, const Lin<F>& b) {
    a.insert(a.end(), b.begin(), b.end());
    canonicalize_vec(f, a);
    return a;
}

template <class F>
bool lin_equal(const F& f, Lin<F> a, Lin<F> b) {
    for (auto& [i, x] : b) a.push_back({i, f.neg(x)});
    canonicalize_vec(f, a);
    return a.empty();
}

// ---------------------------------------------------------------------------
// Presentations.  All data is over a single field F; parsing from the
// string-level JSON happens in json_io.

template <class F>
struct AlgebraData {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    Cube<F> mult;    // dim x dim x dim
    Dense<F> unit;   // coordinates of 1
};

// The associative context: commutative A, associative R with an A-action,
// R-bimodule M.  Derived A-actions on M go through eta(a) = a . 1_R.
template <class F>
struct AssocContext {
    F field;
    AlgebraData<F> A;
    AlgebraData<F> R;
    Cube<F> a_on_r;  // dimA x dimR x dimR : a_i . r_j
    std::size_t dimM = 0;
    std::vector<std::string> m_labels;
    Cube<F> left;    // dimR x dimM x dimM : r_i . m_j
    Cube<F> right;   // dimM x dimR x dimM : m_i . r_j

    // eta(a_i) = a_i . 1_R  as a Lin over R
    Lin<F> eta(std::size_t i) const {
        return cube_apply(field, a_on_r, lin_unit(field, i), lin_of_dense(field, R.unit));
    }
    Lin<F> eta_lin(const Lin<F>& a) const {
        return cube_apply(field, a_on_r, a, lin_of_dense(field, R.unit));
    }
};

template <class F>
struct LieContext {
    F field;
    AlgebraData<F> A;  // commutative
    std::size_t dimL = 0;
    std::vector<std::string> l_labels;
    Cube<F> bracket;   // dimL x dimL x dimL
    Cube<F> a_on_l;    // dimA x dimL x dimL
    std::size_t dimM = 0;
    std::vector<std::string> m_labels;
    Cube<F> action;    // dimL x dimM x dimM : x_i . m_j
    Cube<F> a_on_m;    // dimA x dimM x dimM
};

// ---------------------------------------------------------------------------
// Validation: total over well-shaped tables; reports every violated identity
// with witnessing basis indices.

struct Violation {
    std::string identity;
    std::vector<std::size_t> indices;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string identity, std::initializer_list<std::size_t> idx) {
        violations.push_back({std::move(identity), std::vector<std::size_t>(idx)});
    }
    std::string to_string() const {
        if (ok()) return "valid";
        std::ostringstream os;
        for (const auto& v : violations) {
            os << "violated: " << v.identity << " at basis indices (";
            for (std::size_t i = 0; i < v.indices.size(); ++i)
                os << (i ? "," : "") << v.indices[i];
            os << ")\n";
        }
        return os.str();
    }
};

template <class F>
Lin<F> alg_mul(const F& f, const AlgebraData<F>& alg, const Lin<F>& x, const Lin<F>& y) {
    return cube_apply(f, alg.mult, x, y);
}

template <class F>
void validate_algebra(const F& f, const AlgebraData<F>& alg, bool commutative,
                      ValidationReport& rep) {
    const std::size_t n = alg.dim;
    auto e = [&](std::size_t i) { return lin_unit(f, i); };
    Lin<F> unit = lin_of_dense(f, alg.unit);
    for (std::size_t i = 0; i < n; ++i) {
        if (!lin_equal(f, alg_mul(f, alg, unit, e(i)), e(i))) rep.add("1*e_i = e_i", {i});
        if (!lin_equal(f, alg_mul(f, alg, e(i), unit), e(i))) rep.add("e_i*1 = e_i", {i});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (commutative) {
                for (std::size_t k = 0; k < n; ++k)
                    if (!(alg.mult.at(i, j, k) == alg.mult.at(j, i, k))) {
                        rep.add("e_i*e_j = e_j*e_i", {i, j});
                        break;
                    }
            }
            for (std::size_t k = 0; k < n; ++k) {
                auto lhs = alg_mul(f, alg, alg_mul(f, alg, e(i), e(j)), e(k));
                auto rhs = alg_mul(f, alg, e(i), alg_mul(f, alg, e(j), e(k)));
                if (!lin_equal(f, lhs, rhs)) rep.add("(e_i*e_j)*e_k = e_i*(e_j*e_k)", {i, j, k});
            }
        }
}

// A-action on an algebra R: unital module axioms plus centrality of the image.
template <class F>
void validate_a_action_on_algebra(const F& f, const AlgebraData<F>& A, const AlgebraData<F>& R,
                                  const Cube<F>& act, ValidationReport& rep) {
    auto eA = [&](std::size_t i) { return lin_unit(f, i); };
    auto eR = [&](std::size_t i) { return lin_unit(f, i); };
    Lin<F> unitA = lin_of_dense(f, A.unit);
    auto dot = [&](const Lin<F>& a, const Lin<F>& r) { return cube_apply(f, act, a, r); };
    for (std::size_t r = 0; r < R.dim; ++r)
        if (!lin_equal(f, dot(unitA, eR(r)), eR(r))) rep.add("1_A.r = r", {r});
    for (std::size_t a = 0; a < A.dim; ++a)
        for (std::size_t b = 0; b < A.dim; ++b)
            for (std::size_t r = 0; r < R.dim; ++r) {
                auto lhs = dot(eA(a), dot(eA(b), eR(r)));
                auto rhs = dot(alg_mul(f, A, eA(a), eA(b)), eR(r));
                if (!lin_equal(f, lhs, rhs)) rep.add("a.(b.r) = (ab).r", {a, b, r});
            }
    for (std::size_t a = 0; a < A.dim; ++a)
        for (std::size_t r = 0; r < R.dim; ++r)
            for (std::size_t s = 0; s < R.dim; ++s) {
                auto ars = dot(eA(a), alg_mul(f, R, eR(r), eR(s)));
                auto ar_s = alg_mul(f, R, dot(eA(a), eR(r)), eR(s));
                auto r_as = alg_mul(f, R, eR(r), dot(eA(a), eR(s)));
                if (!lin_equal(f, ars, ar_s)) rep.add("a.(rs) = (a.r)s", {a, r, s});
                if (!lin_equal(f, ars, r_as)) rep.add("a.(rs) = r(a.s)", {a, r, s});
            }
}

template <class F>
void validate_assoc_context(const AssocContext<F>& ctx, ValidationReport& rep) {
    const F& f = ctx.field;
    validate_algebra(f, ctx.A, /*commutative=*/true, rep);
    validate_algebra(f, ctx.R, /*commutative=*/false, rep);
    validate_a_action_on_algebra(f, ctx.A, ctx.R, ctx.a_on_r, rep);

    auto eR = [&](std::size_t i) { return lin_unit(f, i); };
    auto eM = [&](std::size_t i) { return lin_unit(f, i); };
    auto lact = [&](const Lin<F>& r, const Lin<F>& m) { return cube_apply(f, ctx.left, r, m); };
    auto ract = [&](const Lin<F>& m, const Lin<F>& r) { return cube_apply(f, ctx.right, m, r); };
    Lin<F> unitR = lin_of_dense(f, ctx.R.unit);

    for (std::size_t m = 0; m < ctx.dimM; ++m) {
        if (!lin_equal(f, lact(unitR, eM(m)), eM(m))) rep.add("1_R.m = m", {m});
        if (!lin_equal(f, ract(eM(m), unitR), eM(m))) rep.add("m.1_R = m", {m});
    }
    for (std::size_t r = 0; r < ctx.R.dim; ++r)
        for (std::size_t s = 0; s < ctx.R.dim; ++s)
            for (std::size_t m = 0; m < ctx.dimM; ++m) {
                auto rs = alg_mul(f, ctx.R, eR(r), eR(s));
                if (!lin_equal(f, lact(rs, eM(m)), lact(eR(r), lact(eR(s), eM(m)))))
                    rep.add("(rs).m = r.(s.m)", {r, s, m});
                if (!lin_equal(f, ract(eM(m), rs), ract(ract(eM(m), eR(r)), eR(s))))
                    rep.add("m.(rs) = (m.r).s", {r, s, m});
                if (!lin_equal(f, ract(lact(eR(r), eM(m)), eR(s)), lact(eR(r), ract(eM(m), eR(s)))))
                    rep.add("(r.m).s = r.(m.s)", {r, s, m});
            }
    // Symmetry of the derived A-action.  The bicomplex identities force
    // (a.1_R).m = m.(a.1_R): without it the horizontal and vertical maps fail
    // to (anti)commute already at bidegree (0,0).
    for (std::size_t a = 0; a < ctx.A.dim; ++a) {
        auto ea = ctx.eta(a);
        for (std::size_t m = 0; m < ctx.dimM; ++m)
            if (!lin_equal(f, lact(ea, eM(m)), ract(eM(m), ea)))
                rep.add("(a.1_R).m = m.(a.1_R)", {a, m});
    }
}

template <class F>
void validate_lie_context(const LieContext<F>& ctx, ValidationReport& rep) {
    const F& f = ctx.field;
    validate_algebra(f, ctx.A, /*commutative=*/true, rep);

    auto eL = [&](std::size_t i) { return lin_unit(f, i); };
    auto eA = [&](std::size_t i) { return lin_unit(f, i); };
    auto eM = [&](std::size_t i) { return lin_unit(f, i); };
    auto br = [&](const Lin<F>& x, const Lin<F>& y) { return cube_apply(f, ctx.bracket, x, y); };
    auto adot = [&](const Lin<F>& a, const Lin<F>& x) { return cube_apply(f, ctx.a_on_l, a, x); };
    auto xact = [&](const Lin<F>& x, const Lin<F>& m) { return cube_apply(f, ctx.action, x, m); };
    auto amod = [&](const Lin<F>& a, const Lin<F>& m) { return cube_apply(f, ctx.a_on_m, a, m); };
    Lin<F> unitA = lin_of_dense(f, ctx.A.unit);

    const std::size_t nL = ctx.dimL, nA = ctx.A.dim, nM = ctx.dimM;
    for (std::size_t i = 0; i < nL; ++i) {
        if (!lin_equal(f, br(eL(i), eL(i)), {})) rep.add("[x,x] = 0", {i});
        for (std::size_t j = 0; j < nL; ++j)
            if (!lin_equal(f, lin_add(f, br(eL(i), eL(j)), br(eL(j), eL(i))), {}))
                rep.add("[x,y] = -[y,x]", {i, j});
    }
    for (std::size_t i = 0; i < nL; ++i)
        for (std::size_t j = 0; j < nL; ++j)
            for (std::size_t k = 0; k < nL; ++k) {
                auto s = lin_add(f, br(br(eL(i), eL(j)), eL(k)),
                                 lin_add(f, br(br(eL(j), eL(k)), eL(i)), br(br(eL(k), eL(i)), eL(j))));
                if (!lin_equal(f, s, {})) rep.add("Jacobi", {i, j, k});
            }
    // A-module structure on L and A-bilinearity of the bracket
    for (std::size_t x = 0; x < nL; ++x)
        if (!lin_equal(f, adot(unitA, eL(x)), eL(x))) rep.add("1_A.x = x", {x});
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t b = 0; b < nA; ++b)
            for (std::size_t x = 0; x < nL; ++x)
                if (!lin_equal(f, adot(eA(a), adot(eA(b), eL(x))),
                               adot(alg_mul(f, ctx.A, eA(a), eA(b)), eL(x))))
                    rep.add("a.(b.x) = (ab).x", {a, b, x});
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t x = 0; x < nL; ++x)
            for (std::size_t y = 0; y < nL; ++y) {
                auto want = adot(eA(a), br(eL(x), eL(y)));
                if (!lin_equal(f, br(adot(eA(a), eL(x)), eL(y)), want))
                    rep.add("[a.x,y] = a.[x,y]", {a, x, y});
            }
    // Lie module axioms
    for (std::size_t x = 0; x < nL; ++x)
        for (std::size_t y = 0; y < nL; ++y)
            for (std::size_t m = 0; m < nM; ++m) {
                auto lhs = xact(br(eL(x), eL(y)), eM(m));
                auto rhs = lin_add(f, xact(eL(x), xact(eL(y), eM(m))),
                                   lin_scale(f, f.neg(f.one()), xact(eL(y), xact(eL(x), eM(m)))));
                if (!lin_equal(f, lhs, rhs)) rep.add("[x,y].m = x.(y.m) - y.(x.m)", {x, y, m});
            }
    // A-module structure on M and compatibilities making the bicomplex
    // formulas well-defined
    for (std::size_t m = 0; m < nM; ++m)
        if (!lin_equal(f, amod(unitA, eM(m)), eM(m))) rep.add("1_A.m = m", {m});
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t b = 0; b < nA; ++b)
            for (std::size_t m = 0; m < nM; ++m)
                if (!lin_equal(f, amod(eA(a), amod(eA(b), eM(m))),
                               amod(alg_mul(f, ctx.A, eA(a), eA(b)), eM(m))))
                    rep.add("a.(b.m) = (ab).m", {a, b, m});
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t x = 0; x < nL; ++x)
            for (std::size_t m = 0; m < nM; ++m) {
                auto ax_m = xact(adot(eA(a), eL(x)), eM(m));
                auto a_xm = amod(eA(a), xact(eL(x), eM(m)));
                auto x_am = xact(eL(x), amod(eA(a), eM(m)));
                if (!lin_equal(f, ax_m, a_xm)) rep.add("(a.x).m = a.(x.m)", {a, x, m});
                if (!lin_equal(f, x_am, a_xm)) rep.add("x.(a.m) = (a.x).m", {a, x, m});
            }
}

}  // namespace shukla
