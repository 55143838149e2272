#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "shukla/assoc_bicomplex.hpp"
#include "shukla/error.hpp"
#include "shukla/homology.hpp"
#include "shukla/linalg.hpp"
#include "shukla/presentation.hpp"

namespace shukla {

// ---------------------------------------------------------------------------
// Degree-2 and degree-3 cocycle data for the reduced total complex, stored as
// flat coefficient vectors over the argument tuples (module index fastest,
// matching the graded cochain indexing used everywhere else).

template <class F>
struct TwoCocycleDatum {
    SparseVec<F> f;  // product defect, flat over R x R x M
    SparseVec<F> g;  // action defect, flat over A x R x M
};

template <class F>
struct ThreeCocycleDatum {
    SparseVec<F> f;  // flat over R x R x R x M
    SparseVec<F> g;  // flat over A x A x R x R x M
    SparseVec<F> h;  // flat over A x A x R x M
};

// An abelian extension 0 -> M -> S -> R -> 0 of algebras over A: S carries
// its own multiplication and A-action, the inclusion embeds M as a
// square-zero ideal, and the projection is an A-algebra map onto R.
template <class F>
struct AbelianExtension {
    AlgebraData<F> S;
    Cube<F> a_on_s;          // dimA x dimS x dimS
    SparseMatrix<F> iota;    // dimS x dimM, columns are the embedded M basis
    SparseMatrix<F> pi;      // dimR x dimS
};

// A crossed extension 0 -> M -> C1 -> C0 -> R -> 0: C0 is an A-algebra, C1 a
// C0-bimodule, and the boundary is a bimodule map whose image acts trivially
// on its kernel (the defining identity boundary(c) c' = c boundary(c')).
template <class F>
struct CrossedExtension {
    AlgebraData<F> C0;
    Cube<F> a_on_c0;           // dimA x dimC0 x dimC0
    std::size_t dimC1 = 0;
    std::vector<std::string> c1_labels;
    Cube<F> c0_left;           // dimC0 x dimC1 x dimC1
    Cube<F> c0_right;          // dimC1 x dimC0 x dimC1
    SparseMatrix<F> boundary;  // dimC0 x dimC1
    SparseMatrix<F> pi;        // dimR x dimC0
    SparseMatrix<F> iota;      // dimC1 x dimM
};

enum class SectionRule { Forward, Backward };

// Deterministic right inverse of a surjective matrix: scan the columns in
// basis order (or reversed), keep the first ones that grow the rank, and
// invert the resulting square restriction.  Reproducible by construction.
template <class F>
SparseMatrix<F> echelon_section(const F& f, const SparseMatrix<F>& p, SectionRule rule,
                                const std::string& what) {
    auto cols = p.to_columns();
    Echelon<F> ech(f, p.rows);
    std::vector<std::size_t> picked;
    for (std::size_t step = 0; step < p.cols && picked.size() < p.rows; ++step) {
        std::size_t j = rule == SectionRule::Forward ? step : p.cols - 1 - step;
        if (ech.insert(cols[j])) picked.push_back(j);
    }
    if (picked.size() < p.rows)
        throw Error(ErrorCategory::Rejection, "NotExact", what + ": map is not surjective");
    std::vector<SparseVec<F>> picked_cols;
    for (std::size_t j : picked) picked_cols.push_back(cols[j]);
    BasisSolver<F> solver(f, columns_matrix(f, p.rows, picked_cols));
    SparseMatrix<F> section{p.cols, p.rows, {}};
    for (std::size_t r = 0; r < p.rows; ++r) {
        auto x = solver.solve(lin_unit(f, r));
        if (!x) throw internal_error("SectionFailure", what + ": pivot system became singular");
        for (auto& [k, v] : *x) section.entries.push_back({picked[k], r, v});
    }
    section.canonicalize(f);
    return section;
}

// ---------------------------------------------------------------------------
// The degree-2/3 cocycle calculus.  All membership questions are decided
// twice: the explicit identities are evaluated term by term, and the flat
// vector is multiplied against the corresponding total differential; any
// disagreement is an internal transcription bug and aborts loudly.

struct ClassifyReport {
    std::size_t dim_z2 = 0;
    std::size_t dim_b2 = 0;
    std::size_t dim_h2 = 0;
    std::uint64_t num_cocycles = 0;
    std::uint64_t num_coboundaries = 0;
    std::uint64_t num_classes = 0;
};

template <class F>
class ExtensionCalculus {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<F>;

    ExtensionCalculus(const AssocContext<F>& ctx, std::size_t cap = kDefaultSizeCap)
        : ctx_(ctx),
          f_(ctx.field),
          tc_(totalize(assemble(ctx, 3, /*reduced=*/true, cap, /*verify=*/false), ctx.field)) {}

    const AssocContext<F>& ctx() const { return ctx_; }
    const TotalComplex<F>& total() const { return tc_; }

    // ---- flat layout ------------------------------------------------------

    std::size_t dim_f2() const { return rdim() * rdim() * mdim(); }
    std::size_t dim_g2() const { return adim() * rdim() * mdim(); }
    std::size_t dim_f3() const { return rdim() * rdim() * rdim() * mdim(); }
    std::size_t dim_g3() const { return adim() * adim() * rdim() * rdim() * mdim(); }
    std::size_t dim_h3() const { return adim() * adim() * rdim() * mdim(); }

    Vec total2_vector(const TwoCocycleDatum<F>& d) const {
        check_range(d.f, dim_f2(), "cocycle2.f");
        check_range(d.g, dim_g2(), "cocycle2.g");
        return splice({&d.f, &d.g}, tc_.blocks[2]);
    }

    TwoCocycleDatum<F> datum_from_total2(const Vec& v) const {
        auto parts = split(v, tc_.blocks[2], {dim_f2(), dim_g2()});
        return {std::move(parts[0]), std::move(parts[1])};
    }

    Vec total3_vector(const ThreeCocycleDatum<F>& d) const {
        check_range(d.f, dim_f3(), "cocycle3.f");
        check_range(d.g, dim_g3(), "cocycle3.g");
        check_range(d.h, dim_h3(), "cocycle3.h");
        return splice({&d.f, &d.g, &d.h}, tc_.blocks[3]);
    }

    ThreeCocycleDatum<F> datum_from_total3(const Vec& v) const {
        auto parts = split(v, tc_.blocks[3], {dim_f3(), dim_g3(), dim_h3()});
        return {std::move(parts[0]), std::move(parts[1]), std::move(parts[2])};
    }

    // ---- degree 2 ---------------------------------------------------------

    // The three defining identities of a degree-2 pair (f, g):
    //   action-cocycle      a g(b;r) - g(ab;r) + g(a;br) = 0
    //   mixed-compatibility (ab.1)f(r,s) - f(ar,bs) + [-(ar)g(b;s) + g(ab;rs) - g(a;r)(bs)] = 0
    //   product-cocycle     r f(s,t) - f(rs,t) + f(r,st) - f(r,s)t = 0
    // Membership is decided from the explicit evaluations and cross-checked
    // against the kernel of the assembled total differential.
    ValidationReport check_z2(const TwoCocycleDatum<F>& d) const {
        ValidationReport rep;
        Vec defect = z2_defect(d, &rep);
        cross_check(defect.empty(), tc_.D[2], total2_vector(d), "degree 2");
        return rep;
    }

    std::size_t z2_defect_dim() const {
        return (adim() * adim() * rdim() + adim() * adim() * rdim() * rdim() +
                rdim() * rdim() * rdim()) *
               mdim();
    }

    // Coefficient matrix of the explicit identities; its kernel is the
    // explicit cocycle space and must coincide with ker of the assembled
    // differential (the tests verify mutual containment and equal rank).
    SparseMatrix<F> z2_identity_matrix() const {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < tc_.total_dims[2]; ++j)
            cols.push_back(z2_defect(datum_from_total2(lin_unit(f_, j)), nullptr));
        return columns_matrix(f_, z2_defect_dim(), cols);
    }

    // ---- degree 3 ---------------------------------------------------------

    // The four defining identities of a degree-3 triple (f, g, h); the two
    // mixed ones assert that the horizontal and vertical defects cancel.
    ValidationReport check_z3(const ThreeCocycleDatum<F>& d) const {
        ValidationReport rep;
        Vec defect = z3_defect(d, &rep);
        cross_check(defect.empty(), tc_.D[3], total3_vector(d), "degree 3");
        return rep;
    }

    std::size_t z3_defect_dim() const {
        const std::size_t da = adim(), dr = rdim();
        return (dr * dr * dr * dr + da * da * da * dr * dr * dr + da * da * da * da * dr * dr +
                da * da * da * dr) *
               mdim();
    }

    SparseMatrix<F> z3_identity_matrix() const {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < tc_.total_dims[3]; ++j)
            cols.push_back(z3_defect(datum_from_total3(lin_unit(f_, j)), nullptr));
        return columns_matrix(f_, z3_defect_dim(), cols);
    }

    // ---- coboundary tests -------------------------------------------------

    // Witness h: R -> M with f = "product defect of h", g = "action defect
    // of h"; flat over R x M.
    std::optional<Vec> is_coboundary2(const TwoCocycleDatum<F>& d) const {
        require_cocycle(check_z2(d), "degree-2");
        return solve(f_, tc_.D[1], total2_vector(d));
    }

    // Witness pair (m: R x R -> M, n: A x R -> M).
    std::optional<std::pair<Vec, Vec>> is_coboundary3(const ThreeCocycleDatum<F>& d) const {
        require_cocycle(check_z3(d), "degree-3");
        auto x = solve(f_, tc_.D[2], total3_vector(d));
        if (!x) return std::nullopt;
        auto w = datum_from_total2(*x);
        return std::make_pair(std::move(w.f), std::move(w.g));
    }

    // Coboundary datum of a linear map h: R -> M (flat over R x M), computed
    // from the displayed formulas f = rh(s) - h(rs) + h(r)s and
    // g = ah(r) - h(ar); the tests pin this against the assembled
    // differential applied to h.
    TwoCocycleDatum<F> coboundary_of(const Vec& h) const {
        auto htab = value_table(h, rdim(), "witness");
        Vec fflat, gflat;
        const std::vector<std::size_t> rsh{rdim()};
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s) {
                Lin<F> acc = act_m(unit(r), htab[s]);
                acc = sub(acc, eval(htab, rsh, {rmul(r, s)}));
                acc = lin_add(f_, acc, ract_m(htab[r], unit(s)));
                scatter(fflat, (r * rdim() + s) * mdim(), acc);
            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t r = 0; r < rdim(); ++r) {
                Lin<F> acc = act_m(eta(a), htab[r]);
                acc = sub(acc, eval(htab, rsh, {aact(a, r)}));
                scatter(gflat, (a * rdim() + r) * mdim(), acc);
            }
        canonicalize_vec(f_, fflat);
        canonicalize_vec(f_, gflat);
        return {std::move(fflat), std::move(gflat)};
    }

    // Coboundary triple of a pair (m: R x R -> M, n: A x R -> M) from the
    // displayed formulas; must agree with the assembled degree-2 total
    // differential on the matching flat coordinates.
    ThreeCocycleDatum<F> coboundary3_of(const Vec& mvec, const Vec& nvec) const {
        auto mtab = value_table(mvec, rdim() * rdim(), "witness.m");
        auto ntab = value_table(nvec, adim() * rdim(), "witness.n");
        const std::vector<std::size_t> msh{rdim(), rdim()};
        const std::vector<std::size_t> nsh{adim(), rdim()};
        Vec fflat, gflat, hflat;
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s)
                for (std::size_t t = 0; t < rdim(); ++t) {
                    Lin<F> acc = act_m(unit(r), mtab[s * rdim() + t]);
                    acc = sub(acc, eval(mtab, msh, {rmul(r, s), unit(t)}));
                    acc = lin_add(f_, acc, eval(mtab, msh, {unit(r), rmul(s, t)}));
                    acc = sub(acc, ract_m(mtab[r * rdim() + s], unit(t)));
                    scatter(fflat, ((r * rdim() + s) * rdim() + t) * mdim(), acc);
                }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t r = 0; r < rdim(); ++r)
                    for (std::size_t s = 0; s < rdim(); ++s) {
                        Lin<F> ar = aact(a, r), bs = aact(b, s);
                        Lin<F> acc = act_m(eta_of(amul(a, b)), mtab[r * rdim() + s]);
                        acc = sub(acc, eval(mtab, msh, {ar, bs}));
                        acc = sub(acc, act_m(ar, ntab[b * rdim() + s]));
                        acc = lin_add(f_, acc, eval(ntab, nsh, {amul(a, b), rmul(r, s)}));
                        acc = sub(acc, ract_m(ntab[a * rdim() + r], bs));
                        scatter(gflat, (((a * adim() + b) * rdim() + r) * rdim() + s) * mdim(),
                                acc);
                    }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t r = 0; r < rdim(); ++r) {
                    Lin<F> acc = act_m(eta(a), ntab[b * rdim() + r]);
                    acc = sub(acc, eval(ntab, nsh, {amul(a, b), unit(r)}));
                    acc = lin_add(f_, acc, eval(ntab, nsh, {unit_a(a), aact(b, r)}));
                    scatter(hflat, ((a * adim() + b) * rdim() + r) * mdim(), acc);
                }
        canonicalize_vec(f_, fflat);
        canonicalize_vec(f_, gflat);
        canonicalize_vec(f_, hflat);
        return {std::move(fflat), std::move(gflat), std::move(hflat)};
    }

    // ---- extension construction -------------------------------------------

    // S = M + R with product (m,r)(n,s) = (ms + rn + f(r,s), rs) and action
    // a(m,r) = (am + g(a,r), ar); the basis lists M first.  The unit has to
    // absorb the product defect at (1,1): it is (-f(1,1), 1).
    AbelianExtension<F> build_extension(const TwoCocycleDatum<F>& d) const {
        require_cocycle(check_z2(d), "degree-2");
        auto ftab = value_table(d.f, rdim() * rdim(), "cocycle2.f");
        auto gtab = value_table(d.g, adim() * rdim(), "cocycle2.g");
        const std::size_t dm = mdim(), dr = rdim(), ds = dm + dr;
        AbelianExtension<F> ext;
        ext.S.dim = ds;
        for (std::size_t i = 0; i < dm; ++i) ext.S.labels.push_back("m:" + ctx_.m_labels[i]);
        for (std::size_t j = 0; j < dr; ++j) ext.S.labels.push_back("r:" + ctx_.R.labels[j]);
        ext.S.mult = Cube<F>(f_, ds, ds, ds);
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t j = 0; j < dr; ++j)
                for (std::size_t k = 0; k < dm; ++k) {
                    ext.S.mult.at(i, dm + j, k) = ctx_.right.at(i, j, k);
                    ext.S.mult.at(dm + j, i, k) = ctx_.left.at(j, i, k);
                }
        for (std::size_t i = 0; i < dr; ++i)
            for (std::size_t j = 0; j < dr; ++j) {
                for (auto& [k, v] : ftab[i * dr + j]) ext.S.mult.at(dm + i, dm + j, k) = v;
                for (std::size_t k = 0; k < dr; ++k)
                    ext.S.mult.at(dm + i, dm + j, dm + k) = ctx_.R.mult.at(i, j, k);
            }
        ext.S.unit.assign(ds, f_.zero());
        Lin<F> one_r = lin_of_dense(f_, ctx_.R.unit);
        Lin<F> f11 = eval(ftab, {dr, dr}, {one_r, one_r});
        for (auto& [k, v] : f11) ext.S.unit[k] = f_.neg(v);
        for (std::size_t j = 0; j < dr; ++j) ext.S.unit[dm + j] = ctx_.R.unit[j];
        ext.a_on_s = Cube<F>(f_, adim(), ds, ds);
        for (std::size_t a = 0; a < adim(); ++a) {
            for (std::size_t i = 0; i < dm; ++i)
                for (auto& [k, v] : act_m(eta(a), lin_unit(f_, i))) ext.a_on_s.at(a, i, k) = v;
            for (std::size_t j = 0; j < dr; ++j) {
                for (auto& [k, v] : gtab[a * dr + j]) ext.a_on_s.at(a, dm + j, k) = v;
                for (auto& [k, v] : aact(a, j)) ext.a_on_s.at(a, dm + j, dm + k) = v;
            }
        }
        ext.iota = SparseMatrix<F>{ds, dm, {}};
        for (std::size_t i = 0; i < dm; ++i) ext.iota.entries.push_back({i, i, f_.one()});
        ext.iota.canonicalize(f_);
        ext.pi = SparseMatrix<F>{dr, ds, {}};
        for (std::size_t j = 0; j < dr; ++j) ext.pi.entries.push_back({j, dm + j, f_.one()});
        ext.pi.canonicalize(f_);
        auto rep = validate_extension(ext);
        if (!rep.ok())
            throw internal_error("ValidationFailure",
                                 "built extension failed validation:\n" + rep.to_string());
        return ext;
    }

    // Full structural check of an extension against this context.
    ValidationReport validate_extension(const AbelianExtension<F>& e) const {
        const std::size_t ds = e.S.dim;
        if (e.S.mult.shaped(ds, ds, ds) == false || e.S.unit.size() != ds ||
            e.S.labels.size() != ds || !e.a_on_s.shaped(adim(), ds, ds))
            throw validation_error("extension: algebra tables have inconsistent shapes");
        if (e.iota.rows != ds || e.iota.cols != mdim() || e.pi.rows != rdim() || e.pi.cols != ds)
            throw validation_error("extension: inclusion/projection shapes do not match");
        ValidationReport rep;
        // the total algebra with its A-action, checked through the regular
        // bimodule so the central-action axioms come along for free
        AssocContext<F> sctx{f_, ctx_.A, e.S, e.a_on_s, ds, e.S.labels, e.S.mult, e.S.mult};
        validate_assoc_context(sctx, rep);
        std::size_t rank_iota = rank_kernel(f_, e.iota).rank;
        std::size_t rank_pi = rank_kernel(f_, e.pi).rank;
        if (rank_iota != mdim()) rep.add("inclusion is injective", {});
        if (rank_pi != rdim()) rep.add("projection is surjective", {});
        if (!multiply(f_, e.pi, e.iota).is_zero())
            rep.add("projection annihilates the included submodule", {});
        if (ds != mdim() + rdim()) rep.add("extension dimension bookkeeping", {});
        if (!rep.ok()) return rep;
        auto icols = e.iota.to_columns();
        for (std::size_t i = 0; i < mdim(); ++i)
            for (std::size_t j = 0; j < mdim(); ++j)
                if (!cube_apply(f_, e.S.mult, icols[i], icols[j]).empty())
                    rep.add("included submodule squares to zero", {i, j});
        for (std::size_t x = 0; x < ds; ++x)
            for (std::size_t y = 0; y < ds; ++y) {
                Lin<F> lhs = e.pi.apply(f_, cube_apply(f_, e.S.mult, lin_unit(f_, x),
                                                       lin_unit(f_, y)));
                Lin<F> rhs = cube_apply(f_, ctx_.R.mult, e.pi.apply(f_, lin_unit(f_, x)),
                                        e.pi.apply(f_, lin_unit(f_, y)));
                if (!lin_equal(f_, lhs, rhs)) rep.add("projection is multiplicative", {x, y});
            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t x = 0; x < ds; ++x) {
                Lin<F> lhs = e.pi.apply(f_, cube_apply(f_, e.a_on_s, unit_a(a), lin_unit(f_, x)));
                Lin<F> rhs = cube_apply(f_, ctx_.a_on_r, unit_a(a), e.pi.apply(f_, lin_unit(f_, x)));
                if (!lin_equal(f_, lhs, rhs)) rep.add("projection respects the base action", {a, x});
            }
        if (!lin_equal(f_, e.pi.apply(f_, lin_of_dense(f_, e.S.unit)),
                       lin_of_dense(f_, ctx_.R.unit)))
            rep.add("projection preserves the unit", {});
        if (!rep.ok()) return rep;
        // the induced module structure on the kernel must be the given one
        SparseMatrix<F> h = echelon_section(f_, e.pi, SectionRule::Forward, "extension projection");
        BasisSolver<F> into_m(f_, e.iota);
        auto hcols = h.to_columns();
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t m = 0; m < mdim(); ++m) {
                auto lft = into_m.solve(cube_apply(f_, e.S.mult, hcols[r], icols[m]));
                auto rgt = into_m.solve(cube_apply(f_, e.S.mult, icols[m], hcols[r]));
                if (!lft || !lin_equal(f_, *lft, act_m(unit(r), lin_unit(f_, m))))
                    rep.add("induced left action matches", {r, m});
                if (!rgt || !lin_equal(f_, *rgt, ract_m(lin_unit(f_, m), unit(r))))
                    rep.add("induced right action matches", {r, m});
            }
        return rep;
    }

    // Cocycle of an extension along the deterministic section h: the product
    // defect h(r)h(s) - h(rs) and action defect a h(r) - h(ar), both pulled
    // back through the inclusion.
    TwoCocycleDatum<F> extract_cocycle2(const AbelianExtension<F>& e,
                                        SectionRule rule = SectionRule::Forward) const {
        SparseMatrix<F> h = echelon_section(f_, e.pi, rule, "extension projection");
        auto hcols = h.to_columns();
        BasisSolver<F> into_m(f_, e.iota);
        auto pull = [&](const Lin<F>& v) {
            auto x = into_m.solve(v);
            if (!x)
                throw Error(ErrorCategory::Rejection, "NotExact",
                            "section defect lies outside the included submodule");
            return *x;
        };
        Vec fflat, gflat;
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s) {
                Lin<F> v = cube_apply(f_, e.S.mult, hcols[r], hcols[s]);
                v = sub(v, h.apply(f_, rmul(r, s)));
                scatter(fflat, (r * rdim() + s) * mdim(), pull(v));
            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t r = 0; r < rdim(); ++r) {
                Lin<F> v = cube_apply(f_, e.a_on_s, unit_a(a), hcols[r]);
                v = sub(v, h.apply(f_, aact(a, r)));
                scatter(gflat, (a * rdim() + r) * mdim(), pull(v));
            }
        canonicalize_vec(f_, fflat);
        canonicalize_vec(f_, gflat);
        TwoCocycleDatum<F> d{std::move(fflat), std::move(gflat)};
        auto rep = check_z2(d);
        if (!rep.ok())
            throw internal_error("ValidationFailure",
                                 "extracted datum failed the cocycle identities:\n" +
                                     rep.to_string());
        return d;
    }

    // Equivalence of extensions: a map S -> S' restricting to the identity
    // on M and covering the identity of R is determined by a correction
    // t: R -> M; multiplicativity and A-linearity are affine-linear in t
    // because the kernel squares to zero, so one exact solve decides it.
    // The found map is verified by substitution before being returned.
    std::optional<SparseMatrix<F>> equivalent(const AbelianExtension<F>& e1,
                                              const AbelianExtension<F>& e2) const {
        if (e1.S.dim != e2.S.dim) return std::nullopt;
        const std::size_t ds = e1.S.dim;
        SparseMatrix<F> h1 = echelon_section(f_, e1.pi, SectionRule::Forward, "projection");
        SparseMatrix<F> h2 = echelon_section(f_, e2.pi, SectionRule::Forward, "projection");
        BasisSolver<F> into_m1(f_, e1.iota);
        std::vector<Lin<F>> phi0(ds);  // the t = 0 candidate, columnwise
        for (std::size_t j = 0; j < ds; ++j) {
            Lin<F> pj = e1.pi.apply(f_, lin_unit(f_, j));
            Lin<F> mpart = sub(lin_unit(f_, j), h1.apply(f_, pj));
            auto m = into_m1.solve(mpart);
            if (!m)
                throw Error(ErrorCategory::Rejection, "NotExact",
                            "first extension is not exact");
            phi0[j] = lin_add(f_, e2.iota.apply(f_, *m), h2.apply(f_, pj));
        }
        auto apply_phi0 = [&](const Lin<F>& v) {
            Lin<F> acc;
            for (auto& [j, c] : v) acc = lin_add(f_, acc, lin_scale(f_, c, phi0[j]));
            return acc;
        };
        // unknowns: t(r) = sum_m T[r*dimM + m] e_m
        const std::size_t nunk = rdim() * mdim();
        auto i2cols = e2.iota.to_columns();
        SparseMatrix<F> sys{0, nunk, {}};
        Vec rhs;
        std::size_t row_base = 0;
        auto emit = [&](const std::vector<Lin<F>>& coeff, const Lin<F>& target) {
            for (std::size_t u = 0; u < nunk; ++u)
                for (auto& [i, v] : coeff[u]) sys.entries.push_back({row_base + i, u, v});
            for (auto& [i, v] : target) rhs.push_back({row_base + i, v});
            row_base += ds;
        };
        auto t_image = [&](const Lin<F>& w, std::size_t u) {
            // coefficient of unknown u in iota2(t(w)): w_r * iota2(e_m)
            std::size_t r = u / mdim(), m = u % mdim();
            for (auto& [k, c] : w)
                if (k == r) return lin_scale(f_, c, i2cols[m]);
            return Lin<F>{};
        };
        for (std::size_t x = 0; x < ds; ++x)
            for (std::size_t y = 0; y < ds; ++y) {
                Lin<F> xy = cube_apply(f_, e1.S.mult, lin_unit(f_, x), lin_unit(f_, y));
                Lin<F> px = e1.pi.apply(f_, lin_unit(f_, x));
                Lin<F> py = e1.pi.apply(f_, lin_unit(f_, y));
                Lin<F> pxy = e1.pi.apply(f_, xy);
                Lin<F> f0x = apply_phi0(lin_unit(f_, x)), f0y = apply_phi0(lin_unit(f_, y));
                std::vector<Lin<F>> coeff(nunk);
                for (std::size_t u = 0; u < nunk; ++u) {
                    Lin<F> c = t_image(pxy, u);
                    c = sub(c, cube_apply(f_, e2.S.mult, t_image(px, u), f0y));
                    c = sub(c, cube_apply(f_, e2.S.mult, f0x, t_image(py, u)));
                    coeff[u] = std::move(c);
                }
                Lin<F> target = sub(cube_apply(f_, e2.S.mult, f0x, f0y), apply_phi0(xy));
                emit(coeff, target);
            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t x = 0; x < ds; ++x) {
                Lin<F> ax = cube_apply(f_, e1.a_on_s, unit_a(a), lin_unit(f_, x));
                Lin<F> pax = e1.pi.apply(f_, ax);
                Lin<F> px = e1.pi.apply(f_, lin_unit(f_, x));
                std::vector<Lin<F>> coeff(nunk);
                for (std::size_t u = 0; u < nunk; ++u)
                    coeff[u] = sub(t_image(pax, u),
                                   cube_apply(f_, e2.a_on_s, unit_a(a), t_image(px, u)));
                Lin<F> target = sub(cube_apply(f_, e2.a_on_s, unit_a(a),
                                               apply_phi0(lin_unit(f_, x))),
                                    apply_phi0(ax));
                emit(coeff, target);
            }
        sys.rows = row_base;
        sys.canonicalize(f_);
        canonicalize_vec(f_, rhs);
        auto t = solve(f_, sys, rhs);
        if (!t) return std::nullopt;
        SparseMatrix<F> phi{ds, ds, {}};
        for (std::size_t j = 0; j < ds; ++j) {
            Lin<F> col = phi0[j];
            Lin<F> pj = e1.pi.apply(f_, lin_unit(f_, j));
            for (auto& [u, c] : *t) {
                std::size_t r = u / mdim(), m = u % mdim();
                for (auto& [k, w] : pj)
                    if (k == r) col = lin_add(f_, col, lin_scale(f_, f_.mul(c, w), i2cols[m]));
            }
            for (auto& [i, v] : col) phi.entries.push_back({i, j, v});
        }
        phi.canonicalize(f_);
        verify_equivalence(e1, e2, phi);
        return phi;
    }

    // ---- crossed extensions -----------------------------------------------

    // Pad an abelian extension to a crossed one: C0 = S, C1 = two copies of
    // M, the boundary sends the first copy onto the included ideal, and C0
    // acts through the projection.  The defining identity holds because the
    // projection kills the image of the boundary.
    CrossedExtension<F> crossed_from_extension(const AbelianExtension<F>& e) const {
        const std::size_t dm = mdim(), ds = e.S.dim, dc1 = 2 * dm;
        CrossedExtension<F> ce;
        ce.C0 = e.S;
        ce.a_on_c0 = e.a_on_s;
        ce.dimC1 = dc1;
        for (std::size_t i = 0; i < dm; ++i) ce.c1_labels.push_back("b:" + ctx_.m_labels[i]);
        for (std::size_t i = 0; i < dm; ++i) ce.c1_labels.push_back("z:" + ctx_.m_labels[i]);
        ce.c0_left = Cube<F>(f_, ds, dc1, dc1);
        ce.c0_right = Cube<F>(f_, dc1, ds, dc1);
        auto prows = e.pi.to_rows();
        for (std::size_t r = 0; r < rdim(); ++r)
            for (auto& [s, w] : prows[r])
                for (std::size_t j = 0; j < dm; ++j)
                    for (std::size_t k = 0; k < dm; ++k) {
                        Elem lv = f_.mul(w, ctx_.left.at(r, j, k));
                        Elem rv = f_.mul(w, ctx_.right.at(j, r, k));
                        for (std::size_t blk : {std::size_t{0}, dm}) {
                            ce.c0_left.at(s, blk + j, blk + k) =
                                f_.add(ce.c0_left.at(s, blk + j, blk + k), lv);
                            ce.c0_right.at(blk + j, s, blk + k) =
                                f_.add(ce.c0_right.at(blk + j, s, blk + k), rv);
                        }
                    }
        ce.boundary = SparseMatrix<F>{ds, dc1, {}};
        for (const auto& en : e.iota.entries) ce.boundary.entries.push_back({en.r, en.c, en.v});
        ce.boundary.canonicalize(f_);
        ce.pi = e.pi;
        ce.iota = SparseMatrix<F>{dc1, dm, {}};
        for (std::size_t i = 0; i < dm; ++i) ce.iota.entries.push_back({dm + i, i, f_.one()});
        ce.iota.canonicalize(f_);
        return ce;
    }

    // The zero-class representative: C1 = M sitting over C0 = R with zero
    // boundary.
    CrossedExtension<F> trivial_crossed() const {
        CrossedExtension<F> ce;
        ce.C0 = ctx_.R;
        ce.a_on_c0 = ctx_.a_on_r;
        ce.dimC1 = mdim();
        ce.c1_labels = ctx_.m_labels;
        ce.c0_left = ctx_.left;
        ce.c0_right = ctx_.right;
        ce.boundary = SparseMatrix<F>::zero(rdim(), mdim());
        ce.pi = SparseMatrix<F>::identity(f_, rdim());
        ce.iota = SparseMatrix<F>::identity(f_, mdim());
        return ce;
    }

    ValidationReport validate_crossed(const CrossedExtension<F>& ce) const {
        const std::size_t d0 = ce.C0.dim, d1 = ce.dimC1;
        if (!ce.C0.mult.shaped(d0, d0, d0) || ce.C0.unit.size() != d0 ||
            ce.C0.labels.size() != d0 || !ce.a_on_c0.shaped(adim(), d0, d0) ||
            !ce.c0_left.shaped(d0, d1, d1) || !ce.c0_right.shaped(d1, d0, d1) ||
            ce.c1_labels.size() != d1)
            throw validation_error("crossed: tables have inconsistent shapes");
        if (ce.boundary.rows != d0 || ce.boundary.cols != d1 || ce.pi.rows != rdim() ||
            ce.pi.cols != d0 || ce.iota.rows != d1 || ce.iota.cols != mdim())
            throw validation_error("crossed: boundary/projection/inclusion shapes do not match");
        ValidationReport rep;
        AssocContext<F> c0ctx{f_, ctx_.A, ce.C0, ce.a_on_c0, d0, ce.C0.labels, ce.C0.mult,
                              ce.C0.mult};
        validate_assoc_context(c0ctx, rep);
        Lin<F> one0 = lin_of_dense(f_, ce.C0.unit);
        auto lft = [&](const Lin<F>& x, const Lin<F>& c) { return cube_apply(f_, ce.c0_left, x, c); };
        auto rgt = [&](const Lin<F>& c, const Lin<F>& x) { return cube_apply(f_, ce.c0_right, c, x); };
        auto c0mul = [&](std::size_t x, std::size_t y) {
            return cube_apply(f_, ce.C0.mult, lin_unit(f_, x), lin_unit(f_, y));
        };
        for (std::size_t c = 0; c < d1; ++c) {
            Lin<F> ec = lin_unit(f_, c);
            if (!lin_equal(f_, lft(one0, ec), ec)) rep.add("bimodule unit acts as identity", {c});
            if (!lin_equal(f_, rgt(ec, one0), ec)) rep.add("bimodule unit acts as identity", {c});
        }
        for (std::size_t x = 0; x < d0; ++x)
            for (std::size_t y = 0; y < d0; ++y)
                for (std::size_t c = 0; c < d1; ++c) {
                    Lin<F> ec = lin_unit(f_, c);
                    Lin<F> ex = lin_unit(f_, x), ey = lin_unit(f_, y);
                    if (!lin_equal(f_, lft(c0mul(x, y), ec), lft(ex, lft(ey, ec))))
                        rep.add("left bimodule associativity", {x, y, c});
                    if (!lin_equal(f_, rgt(rgt(ec, ex), ey), rgt(ec, c0mul(x, y))))
                        rep.add("right bimodule associativity", {x, y, c});
                    if (!lin_equal(f_, rgt(lft(ex, ec), ey), lft(ex, rgt(ec, ey))))
                        rep.add("bimodule actions commute", {x, y, c});
                }
        auto bcols = ce.boundary.to_columns();
        for (std::size_t x = 0; x < d0; ++x)
            for (std::size_t c = 0; c < d1; ++c) {
                Lin<F> ex = lin_unit(f_, x), ec = lin_unit(f_, c);
                if (!lin_equal(f_, ce.boundary.apply(f_, lft(ex, ec)),
                               cube_apply(f_, ce.C0.mult, ex, bcols[c])))
                    rep.add("boundary is a left module map", {x, c});
                if (!lin_equal(f_, ce.boundary.apply(f_, rgt(ec, ex)),
                               cube_apply(f_, ce.C0.mult, bcols[c], ex)))
                    rep.add("boundary is a right module map", {x, c});
            }
        for (std::size_t c = 0; c < d1; ++c)
            for (std::size_t cc = 0; cc < d1; ++cc)
                if (!lin_equal(f_, lft(bcols[c], lin_unit(f_, cc)),
                               rgt(lin_unit(f_, c), bcols[cc])))
                    rep.add("boundary image acts symmetrically", {c, cc});
        std::size_t rank_iota = rank_kernel(f_, ce.iota).rank;
        std::size_t rank_pi = rank_kernel(f_, ce.pi).rank;
        std::size_t rank_b = rank_kernel(f_, ce.boundary).rank;
        if (rank_iota != mdim()) rep.add("inclusion is injective", {});
        if (!multiply(f_, ce.boundary, ce.iota).is_zero())
            rep.add("boundary annihilates the included submodule", {});
        if (rank_b + mdim() != d1) rep.add("kernel of the boundary is the included submodule", {});
        if (rank_pi != rdim()) rep.add("projection is surjective", {});
        if (!multiply(f_, ce.pi, ce.boundary).is_zero())
            rep.add("projection annihilates the boundary image", {});
        if (rank_b + rdim() != d0) rep.add("kernel of the projection is the boundary image", {});
        if (!rep.ok()) return rep;
        for (std::size_t x = 0; x < d0; ++x)
            for (std::size_t y = 0; y < d0; ++y)
                if (!lin_equal(f_, ce.pi.apply(f_, c0mul(x, y)),
                               cube_apply(f_, ctx_.R.mult, ce.pi.apply(f_, lin_unit(f_, x)),
                                          ce.pi.apply(f_, lin_unit(f_, y)))))
                    rep.add("projection is multiplicative", {x, y});
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t x = 0; x < d0; ++x)
                if (!lin_equal(f_,
                               ce.pi.apply(f_, cube_apply(f_, ce.a_on_c0, unit_a(a),
                                                          lin_unit(f_, x))),
                               cube_apply(f_, ctx_.a_on_r, unit_a(a),
                                          ce.pi.apply(f_, lin_unit(f_, x)))))
                    rep.add("projection respects the base action", {a, x});
        if (!lin_equal(f_, ce.pi.apply(f_, one0), lin_of_dense(f_, ctx_.R.unit)))
            rep.add("projection preserves the unit", {});
        if (!rep.ok()) return rep;
        SparseMatrix<F> p = echelon_section(f_, ce.pi, SectionRule::Forward, "crossed projection");
        auto pcols = p.to_columns();
        auto icols = ce.iota.to_columns();
        BasisSolver<F> into_m(f_, ce.iota);
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t m = 0; m < mdim(); ++m) {
                auto l = into_m.solve(lft(pcols[r], icols[m]));
                auto rr = into_m.solve(rgt(icols[m], pcols[r]));
                if (!l || !lin_equal(f_, *l, act_m(unit(r), lin_unit(f_, m))))
                    rep.add("induced left action matches", {r, m});
                if (!rr || !lin_equal(f_, *rr, ract_m(lin_unit(f_, m), unit(r))))
                    rep.add("induced right action matches", {r, m});
            }
        return rep;
    }

    // Defect triple of a crossed extension along deterministic sections:
    // p splits the projection, lifts through the boundary use the exact
    // solver's free-variables-zero rule (column order reversed under the
    // Backward rule so section-independence is actually exercised).
    ThreeCocycleDatum<F> crossed_to_cocycle(const CrossedExtension<F>& ce,
                                            SectionRule rule = SectionRule::Forward) const {
        const std::size_t d1 = ce.dimC1;
        SparseMatrix<F> p = echelon_section(f_, ce.pi, rule, "crossed projection");
        auto pcols = p.to_columns();
        SparseMatrix<F> bnd = ce.boundary;
        if (rule == SectionRule::Backward) {
            SparseMatrix<F> rev{ce.boundary.rows, d1, {}};
            for (const auto& en : ce.boundary.entries)
                rev.entries.push_back({en.r, d1 - 1 - en.c, en.v});
            rev.canonicalize(f_);
            bnd = std::move(rev);
        }
        auto lift = [&](const Lin<F>& v) {
            auto x = solve(f_, bnd, v);
            if (!x)
                throw internal_error("SectionFailure",
                                     "projection kernel escaped the boundary image");
            if (rule == SectionRule::Backward) {
                Lin<F> back;
                for (auto& [i, c] : *x) back.push_back({d1 - 1 - i, c});
                canonicalize_vec(f_, back);
                return back;
            }
            return *x;
        };
        auto lft = [&](const Lin<F>& x, const Lin<F>& c) { return cube_apply(f_, ce.c0_left, x, c); };
        auto rgt = [&](const Lin<F>& c, const Lin<F>& x) { return cube_apply(f_, ce.c0_right, c, x); };
        Lin<F> one0 = lin_of_dense(f_, ce.C0.unit);
        auto act0 = [&](const Lin<F>& a, const Lin<F>& x) {
            return cube_apply(f_, ce.a_on_c0, a, x);
        };
        auto a_on_c1 = [&](const Lin<F>& a, const Lin<F>& c) { return lft(act0(a, one0), c); };
        auto papply = [&](const Lin<F>& r) { return p.apply(f_, r); };
        // defect tables m(r,s) and n(a,r), valued in C1
        std::vector<Lin<F>> mtab(rdim() * rdim()), ntab(adim() * rdim());
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s) {
                Lin<F> v = cube_apply(f_, ce.C0.mult, pcols[r], pcols[s]);
                v = sub(v, papply(rmul(r, s)));
                mtab[r * rdim() + s] = lift(v);
            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t r = 0; r < rdim(); ++r) {
                Lin<F> v = act0(unit_a(a), pcols[r]);
                v = sub(v, papply(aact(a, r)));
                ntab[a * rdim() + r] = lift(v);
            }
        BasisSolver<F> into_m(f_, ce.iota);
        auto pull = [&](Lin<F> v, const char* which) {
            if (!ce.boundary.apply(f_, v).empty())
                throw internal_error("ValidationFailure",
                                     std::string("crossed defect escaped the boundary kernel in ") +
                                         which);
            auto x = into_m.solve(std::move(v));
            if (!x) throw internal_error("SectionFailure", "boundary kernel escaped the inclusion");
            return *x;
        };
        Vec fflat, gflat, hflat;
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s)
                for (std::size_t t = 0; t < rdim(); ++t) {
                    Lin<F> acc = lft(pcols[r], mtab[s * rdim() + t]);
                    acc = sub(acc, eval_c1(mtab, {rdim(), rdim()}, {rmul(r, s), unit(t)}));
                    acc = lin_add(f_, acc, eval_c1(mtab, {rdim(), rdim()}, {unit(r), rmul(s, t)}));
                    acc = sub(acc, rgt(mtab[r * rdim() + s], pcols[t]));
                    scatter(fflat, ((r * rdim() + s) * rdim() + t) * mdim(), pull(acc, "f"));
                }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t r = 0; r < rdim(); ++r)
                    for (std::size_t s = 0; s < rdim(); ++s) {
                        Lin<F> acc = a_on_c1(amul(a, b), mtab[r * rdim() + s]);
                        acc = sub(acc, eval_c1(mtab, {rdim(), rdim()}, {aact(a, r), aact(b, s)}));
                        acc = sub(acc, lft(act0(unit_a(a), pcols[r]), ntab[b * rdim() + s]));
                        acc = lin_add(f_, acc, eval_c1(ntab, {adim(), rdim()},
                                                       {amul(a, b), rmul(r, s)}));
                        acc = sub(acc, rgt(ntab[a * rdim() + r], act0(unit_a(b), pcols[s])));
                        scatter(gflat, (((a * adim() + b) * rdim() + r) * rdim() + s) * mdim(),
                                pull(acc, "g"));
                    }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t r = 0; r < rdim(); ++r) {
                    Lin<F> acc = a_on_c1(unit_a(a), ntab[b * rdim() + r]);
                    acc = sub(acc, eval_c1(ntab, {adim(), rdim()}, {amul(a, b), unit(r)}));
                    acc = lin_add(f_, acc, eval_c1(ntab, {adim(), rdim()}, {unit_a(a), aact(b, r)}));
                    scatter(hflat, ((a * adim() + b) * rdim() + r) * mdim(), pull(acc, "h"));
                }
        canonicalize_vec(f_, fflat);
        canonicalize_vec(f_, gflat);
        canonicalize_vec(f_, hflat);
        ThreeCocycleDatum<F> d{std::move(fflat), std::move(gflat), std::move(hflat)};
        auto rep = check_z3(d);
        if (!rep.ok())
            throw internal_error("ValidationFailure",
                                 "crossed extension produced a non-cocycle triple:\n" +
                                     rep.to_string());
        return d;
    }

private:
    AssocContext<F> ctx_;
    F f_;
    TotalComplex<F> tc_;

    std::size_t adim() const { return ctx_.A.dim; }
    std::size_t rdim() const { return ctx_.R.dim; }
    std::size_t mdim() const { return ctx_.dimM; }

    Lin<F> unit(std::size_t r) const { return lin_unit(f_, r); }
    Lin<F> unit_a(std::size_t a) const { return lin_unit(f_, a); }
    Lin<F> amul(std::size_t a, std::size_t b) const {
        return cube_apply(f_, ctx_.A.mult, lin_unit(f_, a), lin_unit(f_, b));
    }
    Lin<F> rmul(std::size_t r, std::size_t s) const {
        return cube_apply(f_, ctx_.R.mult, lin_unit(f_, r), lin_unit(f_, s));
    }
    Lin<F> aact(std::size_t a, std::size_t r) const {
        return cube_apply(f_, ctx_.a_on_r, lin_unit(f_, a), lin_unit(f_, r));
    }
    Lin<F> aact_lin(const Lin<F>& a, const Lin<F>& r) const {
        return cube_apply(f_, ctx_.a_on_r, a, r);
    }
    Lin<F> eta(std::size_t a) const { return ctx_.eta(a); }
    Lin<F> eta_of(const Lin<F>& a) const { return ctx_.eta_lin(a); }
    Lin<F> act_m(const Lin<F>& r, const Lin<F>& m) const {
        return cube_apply(f_, ctx_.left, r, m);
    }
    Lin<F> ract_m(const Lin<F>& m, const Lin<F>& r) const {
        return cube_apply(f_, ctx_.right, m, r);
    }
    Lin<F> sub(Lin<F> a, const Lin<F>& b) const {
        return add_scaled_vec(f_, std::move(a), b, f_.neg(f_.one()));
    }

    static Lin<F> add_scaled_vec(const F& f, Lin<F> a, const Lin<F>& b, typename F::Elem c) {
        return lin_add(f, std::move(a), lin_scale(f, c, b));
    }

    static void note(ValidationReport& rep, std::string identity,
                     std::vector<std::size_t> indices) {
        rep.violations.push_back({std::move(identity), std::move(indices)});
    }

    void check_range(const Vec& v, std::size_t dim, const std::string& what) const {
        if (!v.empty() && v.back().first >= dim)
            throw validation_error(what + ": entry index " + std::to_string(v.back().first) +
                                   " out of range (space dimension " + std::to_string(dim) + ")");
    }

    // slice a flat cochain into one module vector per argument tuple
    std::vector<Lin<F>> value_table(const Vec& v, std::size_t tuples,
                                    const std::string& what) const {
        check_range(v, tuples * mdim(), what);
        std::vector<Lin<F>> out(tuples);
        for (auto& [idx, val] : v) out[idx / mdim()].push_back({idx % mdim(), val});
        return out;
    }

    // Explicit identity evaluation; the concatenated defect vector is zero
    // exactly when the datum is a cocycle.  Violations are noted per tuple.
    Vec z2_defect(const TwoCocycleDatum<F>& d, ValidationReport* rep) const {
        auto ftab = value_table(d.f, rdim() * rdim(), "cocycle2.f");
        auto gtab = value_table(d.g, adim() * rdim(), "cocycle2.g");
        const std::vector<std::size_t> fsh{rdim(), rdim()};
        const std::vector<std::size_t> gsh{adim(), rdim()};
        Vec out;
        std::size_t base = 0;
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t r = 0; r < rdim(); ++r) {
                    Lin<F> acc = act_m(eta(a), gtab[b * rdim() + r]);
                    acc = sub(acc, eval(gtab, gsh, {amul(a, b), unit(r)}));
                    acc = lin_add(f_, acc, eval(gtab, gsh, {unit_a(a), aact(b, r)}));
                    if (rep && !acc.empty()) note(*rep, "action-cocycle", {a, b, r});
                    scatter(out, base, acc);
                    base += mdim();
                }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t r = 0; r < rdim(); ++r)
                    for (std::size_t s = 0; s < rdim(); ++s) {
                        Lin<F> ar = aact(a, r), bs = aact(b, s);
                        Lin<F> acc = act_m(eta_of(amul(a, b)), ftab[r * rdim() + s]);
                        acc = sub(acc, eval(ftab, fsh, {ar, bs}));
                        acc = sub(acc, act_m(ar, gtab[b * rdim() + s]));
                        acc = lin_add(f_, acc, eval(gtab, gsh, {amul(a, b), rmul(r, s)}));
                        acc = sub(acc, ract_m(gtab[a * rdim() + r], bs));
                        if (rep && !acc.empty()) note(*rep, "mixed-compatibility", {a, b, r, s});
                        scatter(out, base, acc);
                        base += mdim();
                    }
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s)
                for (std::size_t t = 0; t < rdim(); ++t) {
                    Lin<F> acc = act_m(unit(r), ftab[s * rdim() + t]);
                    acc = sub(acc, eval(ftab, fsh, {rmul(r, s), unit(t)}));
                    acc = lin_add(f_, acc, eval(ftab, fsh, {unit(r), rmul(s, t)}));
                    acc = sub(acc, ract_m(ftab[r * rdim() + s], unit(t)));
                    if (rep && !acc.empty()) note(*rep, "product-cocycle", {r, s, t});
                    scatter(out, base, acc);
                    base += mdim();
                }
        canonicalize_vec(f_, out);
        return out;
    }

    Vec z3_defect(const ThreeCocycleDatum<F>& d, ValidationReport* rep) const {
        auto ftab = value_table(d.f, rdim() * rdim() * rdim(), "cocycle3.f");
        auto gtab = value_table(d.g, adim() * adim() * rdim() * rdim(), "cocycle3.g");
        auto htab = value_table(d.h, adim() * adim() * rdim(), "cocycle3.h");
        const std::vector<std::size_t> fsh{rdim(), rdim(), rdim()};
        const std::vector<std::size_t> gsh{adim(), adim(), rdim(), rdim()};
        const std::vector<std::size_t> hsh{adim(), adim(), rdim()};
        Vec out;
        std::size_t base = 0;
        for (std::size_t r = 0; r < rdim(); ++r)
            for (std::size_t s = 0; s < rdim(); ++s)
                for (std::size_t t = 0; t < rdim(); ++t)
                    for (std::size_t u = 0; u < rdim(); ++u) {
                        Lin<F> acc = act_m(unit(r), ftab[(s * rdim() + t) * rdim() + u]);
                        acc = sub(acc, eval(ftab, fsh, {rmul(r, s), unit(t), unit(u)}));
                        acc = lin_add(f_, acc, eval(ftab, fsh, {unit(r), rmul(s, t), unit(u)}));
                        acc = sub(acc, eval(ftab, fsh, {unit(r), unit(s), rmul(t, u)}));
                        acc = lin_add(f_, acc,
                                      ract_m(ftab[(r * rdim() + s) * rdim() + t], unit(u)));
                        if (rep && !acc.empty()) note(*rep, "product-cocycle", {r, s, t, u});
                        scatter(out, base, acc);
                        base += mdim();
                    }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t c = 0; c < adim(); ++c)
                    for (std::size_t r = 0; r < rdim(); ++r)
                        for (std::size_t s = 0; s < rdim(); ++s)
                            for (std::size_t t = 0; t < rdim(); ++t) {
                                Lin<F> ar = aact(a, r), ct = aact(c, t);
                                Lin<F> abc =
                                    cube_apply(f_, ctx_.A.mult, amul(a, b), unit_a(c));
                                Lin<F> acc =
                                    act_m(eta_of(abc), ftab[(r * rdim() + s) * rdim() + t]);
                                acc = sub(acc, eval(ftab, fsh, {ar, aact(b, s), ct}));
                                acc = sub(acc,
                                          act_m(ar, gtab[((b * adim() + c) * rdim() + s) * rdim() +
                                                         t]));
                                acc = lin_add(f_, acc,
                                              eval(gtab, gsh, {amul(a, b), unit_a(c), rmul(r, s),
                                                               unit(t)}));
                                acc = sub(acc, eval(gtab, gsh, {unit_a(a), amul(b, c), unit(r),
                                                                rmul(s, t)}));
                                acc = lin_add(
                                    f_, acc,
                                    ract_m(gtab[((a * adim() + b) * rdim() + r) * rdim() + s], ct));
                                if (rep && !acc.empty())
                                    note(*rep, "product-action-mixing", {a, b, c, r, s, t});
                                scatter(out, base, acc);
                                base += mdim();
                            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t c = 0; c < adim(); ++c)
                    for (std::size_t e = 0; e < adim(); ++e)
                        for (std::size_t r = 0; r < rdim(); ++r)
                            for (std::size_t s = 0; s < rdim(); ++s) {
                                Lin<F> acc =
                                    act_m(eta_of(amul(a, b)),
                                          gtab[((c * adim() + e) * rdim() + r) * rdim() + s]);
                                acc = sub(acc, eval(gtab, gsh, {amul(a, c), amul(b, e), unit(r),
                                                                unit(s)}));
                                acc = lin_add(f_, acc, eval(gtab, gsh, {unit_a(a), unit_a(b),
                                                                        aact(c, r), aact(e, s)}));
                                acc = lin_add(f_, acc,
                                              act_m(aact_lin(amul(a, c), unit(r)),
                                                    htab[(b * adim() + e) * rdim() + s]));
                                acc = sub(acc,
                                          eval(htab, hsh, {amul(a, b), amul(c, e), rmul(r, s)}));
                                acc = lin_add(f_, acc,
                                              ract_m(htab[(a * adim() + c) * rdim() + r],
                                                     aact_lin(amul(b, e), unit(s))));
                                if (rep && !acc.empty())
                                    note(*rep, "action-product-mixing", {a, b, c, e, r, s});
                                scatter(out, base, acc);
                                base += mdim();
                            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t b = 0; b < adim(); ++b)
                for (std::size_t c = 0; c < adim(); ++c)
                    for (std::size_t r = 0; r < rdim(); ++r) {
                        Lin<F> acc = act_m(eta(a), htab[(b * adim() + c) * rdim() + r]);
                        acc = sub(acc, eval(htab, hsh, {amul(a, b), unit_a(c), unit(r)}));
                        acc = lin_add(f_, acc, eval(htab, hsh, {unit_a(a), amul(b, c), unit(r)}));
                        acc = sub(acc, eval(htab, hsh, {unit_a(a), unit_a(b), aact(c, r)}));
                        if (rep && !acc.empty()) note(*rep, "action-cocycle", {a, b, c, r});
                        scatter(out, base, acc);
                        base += mdim();
                    }
        canonicalize_vec(f_, out);
        return out;
    }

    // multilinear evaluation of a value table against coordinate vectors
    template <class Table>
    auto eval_impl(const Table& tab, const std::vector<std::size_t>& dims,
                   const std::vector<Lin<F>>& args) const {
        std::vector<std::pair<std::size_t, Elem>> pref{{0, f_.one()}};
        for (std::size_t k = 0; k < args.size(); ++k) {
            std::vector<std::pair<std::size_t, Elem>> next;
            for (auto& [p, c] : pref)
                for (auto& [i, v] : args[k]) {
                    Elem cv = f_.mul(c, v);
                    if (!f_.is_zero(cv)) next.push_back({p * dims[k] + i, cv});
                }
            pref = std::move(next);
        }
        Lin<F> acc;
        for (auto& [p, c] : pref) acc = lin_add(f_, acc, lin_scale(f_, c, tab[p]));
        return acc;
    }
    Lin<F> eval(const std::vector<Lin<F>>& tab, const std::vector<std::size_t>& dims,
                const std::vector<Lin<F>>& args) const {
        return eval_impl(tab, dims, args);
    }
    Lin<F> eval_c1(const std::vector<Lin<F>>& tab, const std::vector<std::size_t>& dims,
                   const std::vector<Lin<F>>& args) const {
        return eval_impl(tab, dims, args);
    }

    static void scatter(Vec& flat, std::size_t base, const Lin<F>& v) {
        for (auto& [m, c] : v) flat.push_back({base + m, c});
    }

    Vec splice(const std::vector<const Vec*>& parts,
               const std::vector<std::pair<BiDegree, std::size_t>>& blocks) const {
        Vec out;
        for (std::size_t k = 0; k < parts.size(); ++k)
            for (auto& [i, v] : *parts[k]) out.push_back({blocks[k].second + i, v});
        canonicalize_vec(f_, out);
        return out;
    }

    std::vector<Vec> split(const Vec& v,
                           const std::vector<std::pair<BiDegree, std::size_t>>& blocks,
                           const std::vector<std::size_t>& dims) const {
        std::vector<Vec> out(dims.size());
        for (auto& [i, val] : v)
            for (std::size_t k = 0; k < dims.size(); ++k)
                if (i >= blocks[k].second && i < blocks[k].second + dims[k]) {
                    out[k].push_back({i - blocks[k].second, val});
                    break;
                }
        return out;
    }

    void cross_check(bool identities_ok, const SparseMatrix<F>& D, const Vec& v,
                     const std::string& where) const {
        Vec image = D.apply(f_, v);
        canonicalize_vec(f_, image);
        if (image.empty() != identities_ok)
            throw internal_error("InconsistentWithMatrixKernel",
                                 "explicit identities and the total differential disagree at " +
                                     where);
    }

    void require_cocycle(const ValidationReport& rep, const std::string& what) const {
        if (!rep.ok()) throw not_a_cocycle(what + " datum is not a cocycle:\n" + rep.to_string());
    }

    void verify_equivalence(const AbelianExtension<F>& e1, const AbelianExtension<F>& e2,
                            const SparseMatrix<F>& phi) const {
        const std::size_t ds = e1.S.dim;
        auto bad = [&](const char* what) {
            throw internal_error("ValidationFailure",
                                 std::string("equivalence solve produced a non-morphism: ") + what);
        };
        if (!(multiply(f_, phi, e1.iota) == e2.iota)) bad("inclusion square");
        if (!(multiply(f_, e2.pi, phi) == e1.pi)) bad("projection square");
        auto pcol = phi.to_columns();
        auto apply_phi = [&](const Lin<F>& v) {
            Lin<F> acc;
            for (auto& [j, c] : v) acc = lin_add(f_, acc, lin_scale(f_, c, pcol[j]));
            return acc;
        };
        for (std::size_t x = 0; x < ds; ++x)
            for (std::size_t y = 0; y < ds; ++y) {
                Lin<F> lhs = apply_phi(cube_apply(f_, e1.S.mult, lin_unit(f_, x),
                                                  lin_unit(f_, y)));
                Lin<F> rhs = cube_apply(f_, e2.S.mult, pcol[x], pcol[y]);
                if (!lin_equal(f_, lhs, rhs)) bad("multiplicativity");
            }
        for (std::size_t a = 0; a < adim(); ++a)
            for (std::size_t x = 0; x < ds; ++x) {
                Lin<F> lhs = apply_phi(cube_apply(f_, e1.a_on_s, unit_a(a), lin_unit(f_, x)));
                Lin<F> rhs = cube_apply(f_, e2.a_on_s, unit_a(a), pcol[x]);
                if (!lin_equal(f_, lhs, rhs)) bad("base action");
            }
        if (!lin_equal(f_, apply_phi(lin_of_dense(f_, e1.S.unit)), lin_of_dense(f_, e2.S.unit)))
            bad("unit");
    }
};

// ---------------------------------------------------------------------------
// Exhaustive classification over the two-element field: enumerate every
// degree-2 cocycle, build its extension, and group the results by pairwise
// equivalence.  The class count is reported alongside the cohomology
// dimensions so the bijection with H^2 can be checked externally.

template <class F>
ClassifyReport classify_bruteforce(const AssocContext<F>& ctx,
                                   std::size_t cap = kDefaultSizeCap) {
    if constexpr (!std::is_same_v<F, PrimeField>) {
        throw validation_error(
            "brute-force classification enumerates coefficient vectors and needs the "
            "two-element field (run with field Fp:2)");
    } else {
        if (ctx.field.p != 2)
            throw validation_error(
                "brute-force classification needs the two-element field (run with field Fp:2)");
        ExtensionCalculus<F> calc(ctx, cap);
        const F& f = ctx.field;
        auto z2 = rank_kernel(f, calc.total().D[2]);
        std::size_t dim_b2 = rank_kernel(f, calc.total().D[1]).rank;
        ClassifyReport rep;
        rep.dim_z2 = z2.kernel.size();
        rep.dim_b2 = dim_b2;
        rep.dim_h2 = rep.dim_z2 - dim_b2;
        if (rep.dim_z2 > 24)
            throw search_space_too_large("cocycle space has dimension " +
                                         std::to_string(rep.dim_z2) +
                                         "; refusing to enumerate more than 2^24 vectors");
        rep.num_cocycles = std::uint64_t{1} << rep.dim_z2;
        rep.num_coboundaries = std::uint64_t{1} << rep.dim_b2;
        std::vector<AbelianExtension<F>> reps;
        for (std::uint64_t mask = 0; mask < rep.num_cocycles; ++mask) {
            SparseVec<F> v;
            for (std::size_t b = 0; b < rep.dim_z2; ++b)
                if (mask >> b & 1) v = lin_add(f, std::move(v), z2.kernel[b]);
            auto ext = calc.build_extension(calc.datum_from_total2(v));
            bool placed = false;
            for (auto& r : reps)
                if (calc.equivalent(r, ext)) {
                    placed = true;
                    break;
                }
            if (!placed) reps.push_back(std::move(ext));
        }
        rep.num_classes = reps.size();
        return rep;
    }
}

}  // namespace shukla
