#pragma once

#include <functional>
#include <map>
#include <vector>

#include "shukla/cochain.hpp"
#include "shukla/error.hpp"
#include "shukla/linalg.hpp"
#include "shukla/presentation.hpp"

namespace shukla {

// Enumerate the cartesian product of sparse linear combinations: calls
// emit(coeff, choices) for every way of picking one basis term from each
// factor, coeff = product of the picked coefficients.
template <class F, class Fn>
void expand_product(const F& f, const std::vector<Lin<F>>& factors, Fn&& emit) {
    std::vector<std::size_t> pick(factors.size(), 0);
    std::vector<std::size_t> choice(factors.size(), 0);
    for (const auto& l : factors)
        if (l.empty()) return;
    for (;;) {
        typename F::Elem coeff = f.one();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            coeff = f.mul(coeff, factors[i][pick[i]].second);
            choice[i] = factors[i][pick[i]].first;
        }
        emit(coeff, choice);
        std::size_t i = factors.size();
        while (i-- > 0) {
            if (++pick[i] < factors[i].size()) break;
            pick[i] = 0;
            if (i == 0) return;
        }
        if (i == static_cast<std::size_t>(-1)) return;
    }
}

// Row of a structure-constant cube as a sparse linear combination.
template <class F>
Lin<F> cube_row(const F& f, const Cube<F>& c, std::size_t i, std::size_t j) {
    Lin<F> out;
    for (std::size_t k = 0; k < c.n3; ++k)
        if (!f.is_zero(c.at(i, j, k))) out.push_back({k, c.at(i, j, k)});
    return out;
}

// Assembler shared by the horizontal and vertical maps: accumulates entries of
// a matrix whose rows are target-space coordinates and whose columns are
// source-space coordinates.
template <class F>
class MatrixBuilder {
public:
    MatrixBuilder(const AssocContext<F>& ctx, std::size_t target_rows, std::size_t source_cols)
        : ctx_(ctx), mat_{target_rows, source_cols, {}} {}

    // Diagonal-in-M contribution: coeff * f(sigma) read at the same m.
    void add_diagonal(std::size_t row_base, std::size_t col_base, const typename F::Elem& coeff) {
        for (std::size_t m = 0; m < ctx_.dimM; ++m)
            mat_.entries.push_back({row_base + m, col_base + m, coeff});
    }

    // coeff * u . f(sigma)  (left action of u in R on M)
    void add_left_action(std::size_t row_base, std::size_t col_base, const typename F::Elem& coeff,
                         const Lin<F>& u) {
        const F& f = ctx_.field;
        for (const auto& [k, uv] : u) {
            auto c = f.mul(coeff, uv);
            for (std::size_t ms = 0; ms < ctx_.dimM; ++ms)
                for (std::size_t mt = 0; mt < ctx_.dimM; ++mt) {
                    const auto& l = ctx_.left.at(k, ms, mt);
                    if (!f.is_zero(l))
                        mat_.entries.push_back({row_base + mt, col_base + ms, f.mul(c, l)});
                }
        }
    }

    // coeff * f(sigma) . u  (right action)
    void add_right_action(std::size_t row_base, std::size_t col_base, const typename F::Elem& coeff,
                          const Lin<F>& u) {
        const F& f = ctx_.field;
        for (const auto& [k, uv] : u) {
            auto c = f.mul(coeff, uv);
            for (std::size_t ms = 0; ms < ctx_.dimM; ++ms)
                for (std::size_t mt = 0; mt < ctx_.dimM; ++mt) {
                    const auto& r = ctx_.right.at(ms, k, mt);
                    if (!f.is_zero(r))
                        mat_.entries.push_back({row_base + mt, col_base + ms, f.mul(c, r)});
                }
        }
    }

    SparseMatrix<F> finish() {
        mat_.canonicalize(ctx_.field);
        return std::move(mat_);
    }

private:
    const AssocContext<F>& ctx_;
    SparseMatrix<F> mat_;
};

// Product of a list of A-basis elements, as a Lin over A (empty list = 1_A).
template <class F>
Lin<F> a_product(const AssocContext<F>& ctx, const std::vector<std::size_t>& idx,
                 const std::size_t* positions, std::size_t count) {
    const F& f = ctx.field;
    Lin<F> cur = lin_of_dense(f, ctx.A.unit);
    for (std::size_t i = 0; i < count; ++i)
        cur = alg_mul(f, ctx.A, cur, lin_unit(f, idx[positions[i]]));
    return cur;
}

// ---------------------------------------------------------------------------
// Horizontal differential d : K^{pq} -> K^{p+1,q}.
//
// With the target's A-rows indexed 0..p (each of length q) and writing
// row_i = (a_{i1},...,a_{iq}):
//
//   df(rows 0..p, r_1..r_q)
//     =  (a_{01} ... a_{0q}) . f(rows 1..p, r_*)
//      + sum_{0<=i<p} (-1)^{i+1} f(rows with i,i+1 merged columnwise, r_*)
//      + (-1)^{p+1} f(rows 0..p-1, a_{p1} r_1, ..., a_{pq} r_q)
//
// where the leading coefficient acts on M through a . m = (a . 1_R) m.
// For q = 0 the row reads M -0-> M -Id-> M -0-> ... (zero for even p,
// identity for odd p); the reduced complex keeps only M at (0,0).
template <class F>
SparseMatrix<F> horizontal_d(const AssocContext<F>& ctx, std::size_t p, std::size_t q, bool reduced,
                             std::size_t cap = kDefaultSizeCap) {
    const F& f = ctx.field;
    SpaceDims dims{ctx.A.dim, ctx.R.dim, ctx.dimM};

    if (q == 0) {
        if (reduced) {
            std::size_t src = p == 0 ? ctx.dimM : 0;
            return SparseMatrix<F>::zero(0, src);
        }
        if (p % 2 == 1) return SparseMatrix<F>::identity(f, ctx.dimM);
        return SparseMatrix<F>::zero(ctx.dimM, ctx.dimM);
    }

    TupleCodec src_codec{BiDegree{p, q}, dims};
    TupleCodec tgt_codec{BiDegree{p + 1, q}, dims};
    std::size_t n_src = space_dim(BiDegree{p, q}, dims, cap);
    std::size_t n_tgt = space_dim(BiDegree{p + 1, q}, dims, cap);
    MatrixBuilder<F> mb(ctx, n_tgt, n_src);
    if (ctx.dimM == 0) return mb.finish();

    const std::size_t pq_tgt = (p + 1) * q;
    std::vector<std::size_t> a_idx(pq_tgt), r_idx(q), sa(p * q), sr(q);
    std::size_t m_dummy = 0;
    const std::size_t tuples = tgt_codec.tuple_count(cap);
    std::vector<Lin<F>> factors;

    for (std::size_t t = 0; t < tuples; ++t) {
        tgt_codec.decode(t * ctx.dimM, a_idx, r_idx, m_dummy);
        std::size_t row_base = t * ctx.dimM;

        // term 0: (a_{01}...a_{0q}) . f(rows 1..p, r)
        {
            Lin<F> prod = lin_of_dense(f, ctx.A.unit);
            for (std::size_t c = 0; c < q; ++c)
                prod = alg_mul(f, ctx.A, prod, lin_unit(f, a_idx[c]));
            Lin<F> u = ctx.eta_lin(prod);
            for (std::size_t i = 0; i < p * q; ++i) sa[i] = a_idx[q + i];
            std::size_t col_base = src_codec.encode(sa, r_idx, 0);
            mb.add_left_action(row_base, col_base, f.one(), u);
        }
        // merge terms: rows i and i+1 multiplied columnwise, sign (-1)^{i+1}
        for (std::size_t i = 0; i < p; ++i) {
            factors.clear();
            for (std::size_t c = 0; c < q; ++c)
                factors.push_back(cube_row(f, ctx.A.mult, a_idx[i * q + c], a_idx[(i + 1) * q + c]));
            typename F::Elem sign = (i % 2 == 0) ? f.neg(f.one()) : f.one();
            expand_product(f, factors, [&](const typename F::Elem& coeff,
                                           const std::vector<std::size_t>& choice) {
                for (std::size_t rr = 0; rr < i; ++rr)
                    for (std::size_t c = 0; c < q; ++c) sa[rr * q + c] = a_idx[rr * q + c];
                for (std::size_t c = 0; c < q; ++c) sa[i * q + c] = choice[c];
                for (std::size_t rr = i + 1; rr < p; ++rr)
                    for (std::size_t c = 0; c < q; ++c) sa[rr * q + c] = a_idx[(rr + 1) * q + c];
                std::size_t col_base = src_codec.encode(sa, r_idx, 0);
                mb.add_diagonal(row_base, col_base, f.mul(sign, coeff));
            });
        }
        // last term: f(rows 0..p-1, a_{p1} r_1, ..., a_{pq} r_q), sign (-1)^{p+1}
        {
            factors.clear();
            for (std::size_t c = 0; c < q; ++c)
                factors.push_back(cube_row(f, ctx.a_on_r, a_idx[p * q + c], r_idx[c]));
            typename F::Elem sign = (p % 2 == 0) ? f.neg(f.one()) : f.one();
            for (std::size_t i = 0; i < p * q; ++i) sa[i] = a_idx[i];
            expand_product(f, factors, [&](const typename F::Elem& coeff,
                                           const std::vector<std::size_t>& choice) {
                for (std::size_t c = 0; c < q; ++c) sr[c] = choice[c];
                std::size_t col_base = src_codec.encode(sa, sr, 0);
                mb.add_diagonal(row_base, col_base, f.mul(sign, coeff));
            });
        }
    }
    return mb.finish();
}

// ---------------------------------------------------------------------------
// Vertical differential delta : K^{pq} -> K^{p,q+1}.
//
// With the target's columns indexed 0..q (each A-row i reads
// (a_{i0},...,a_{iq})) and r-arguments (r_0,...,r_q):
//
//   delta(f)(a, r_0..r_q)
//     =  (-1)^p   (a_{10} ... a_{p0} r_0) . f(columns 1..q, r_1..r_q)
//      + sum_{0<=i<q} (-1)^{i+p+1} f(columns i,i+1 merged in every row,
//                                    ..., r_i r_{i+1}, ...)
//      + (-1)^{q+p+1} f(columns 0..q-1, r_0..r_{q-1}) . (a_{1q} ... a_{pq} r_q)
//
// At p = 0 this is the classical Hochschild coboundary of C^*(R,M).
template <class F>
SparseMatrix<F> vertical_delta(const AssocContext<F>& ctx, std::size_t p, std::size_t q,
                               bool reduced, std::size_t cap = kDefaultSizeCap) {
    const F& f = ctx.field;
    SpaceDims dims{ctx.A.dim, ctx.R.dim, ctx.dimM};

    if (reduced && q == 0 && p > 0)
        return SparseMatrix<F>::zero(space_dim(BiDegree{p, 1}, dims, cap), 0);

    TupleCodec src_codec{BiDegree{p, q}, dims};
    TupleCodec tgt_codec{BiDegree{p, q + 1}, dims};
    std::size_t n_src = space_dim(BiDegree{p, q}, dims, cap);
    std::size_t n_tgt = space_dim(BiDegree{p, q + 1}, dims, cap);
    MatrixBuilder<F> mb(ctx, n_tgt, n_src);
    if (ctx.dimM == 0) return mb.finish();

    const std::size_t qt = q + 1;  // columns in the target
    std::vector<std::size_t> a_idx(p * qt), r_idx(qt), sa(p * q), sr(q);
    std::size_t m_dummy = 0;
    const std::size_t tuples = tgt_codec.tuple_count(cap);
    std::vector<Lin<F>> factors;

    typename F::Elem sign_p = (p % 2 == 0) ? f.one() : f.neg(f.one());

    for (std::size_t t = 0; t < tuples; ++t) {
        tgt_codec.decode(t * ctx.dimM, a_idx, r_idx, m_dummy);
        std::size_t row_base = t * ctx.dimM;

        // first term: (-1)^p (a_{10}...a_{p0} r_0) . f(cols 1..q, r_1..)
        {
            Lin<F> prod = lin_of_dense(f, ctx.A.unit);
            for (std::size_t i = 0; i < p; ++i)
                prod = alg_mul(f, ctx.A, prod, lin_unit(f, a_idx[i * qt + 0]));
            Lin<F> u = cube_apply(f, ctx.a_on_r, prod, lin_unit(f, r_idx[0]));
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t c = 0; c < q; ++c) sa[i * q + c] = a_idx[i * qt + (c + 1)];
            for (std::size_t c = 0; c < q; ++c) sr[c] = r_idx[c + 1];
            std::size_t col_base = src_codec.encode(sa, sr, 0);
            mb.add_left_action(row_base, col_base, sign_p, u);
        }
        // merge terms: columns i,i+1 merged in every A-row and in r
        for (std::size_t i = 0; i < q; ++i) {
            factors.clear();
            for (std::size_t j = 0; j < p; ++j)
                factors.push_back(
                    cube_row(f, ctx.A.mult, a_idx[j * qt + i], a_idx[j * qt + i + 1]));
            factors.push_back(cube_row(f, ctx.R.mult, r_idx[i], r_idx[i + 1]));
            typename F::Elem sign =
                ((i + p + 1) % 2 == 0) ? f.one() : f.neg(f.one());
            expand_product(f, factors, [&](const typename F::Elem& coeff,
                                           const std::vector<std::size_t>& choice) {
                for (std::size_t j = 0; j < p; ++j) {
                    for (std::size_t c = 0; c < i; ++c) sa[j * q + c] = a_idx[j * qt + c];
                    sa[j * q + i] = choice[j];
                    for (std::size_t c = i + 1; c < q; ++c) sa[j * q + c] = a_idx[j * qt + c + 1];
                }
                for (std::size_t c = 0; c < i; ++c) sr[c] = r_idx[c];
                sr[i] = choice[p];
                for (std::size_t c = i + 1; c < q; ++c) sr[c] = r_idx[c + 1];
                std::size_t col_base = src_codec.encode(sa, sr, 0);
                mb.add_diagonal(row_base, col_base, f.mul(sign, coeff));
            });
        }
        // last term: (-1)^{q+p+1} f(cols 0..q-1, r_0..r_{q-1}) . (a_{1q}...a_{pq} r_q)
        {
            Lin<F> prod = lin_of_dense(f, ctx.A.unit);
            for (std::size_t i = 0; i < p; ++i)
                prod = alg_mul(f, ctx.A, prod, lin_unit(f, a_idx[i * qt + q]));
            Lin<F> u = cube_apply(f, ctx.a_on_r, prod, lin_unit(f, r_idx[q]));
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t c = 0; c < q; ++c) sa[i * q + c] = a_idx[i * qt + c];
            for (std::size_t c = 0; c < q; ++c) sr[c] = r_idx[c];
            std::size_t col_base = src_codec.encode(sa, sr, 0);
            typename F::Elem sign = ((q + p + 1) % 2 == 0) ? f.one() : f.neg(f.one());
            mb.add_right_action(row_base, col_base, sign, u);
        }
    }
    return mb.finish();
}

// ---------------------------------------------------------------------------

template <class F>
struct BigradedComplex {
    std::size_t N = 0;
    bool reduced = true;
    SpaceDims dims;
    std::map<BiDegree, std::size_t> spaces;           // p+q <= N+1
    std::map<BiDegree, SparseMatrix<F>> d_mats;       // domain p+q <= N
    std::map<BiDegree, SparseMatrix<F>> delta_mats;   // domain p+q <= N
    bool identities_checked = false;

    std::size_t space(BiDegree deg) const {
        auto it = spaces.find(deg);
        return it == spaces.end() ? 0 : it->second;
    }
};

template <class F>
std::size_t graded_space_dim(SpaceDims dims, BiDegree deg, bool reduced,
                             std::size_t cap = kDefaultSizeCap) {
    if (reduced && deg.q == 0 && deg.p > 0) return 0;
    return space_dim(deg, dims, cap);
}

template <class F>
BigradedComplex<F> assemble(const AssocContext<F>& ctx, std::size_t N, bool reduced,
                            std::size_t cap = kDefaultSizeCap, bool verify = true);

// Exact verification of the bicomplex identities for every domain with
// p+q <= N-1: d.d = 0, delta.delta = 0, and the (anti)commutation
// d.delta + delta.d = 0 of the maps as stored.  (For the untwisted vertical
// map delta_0 = (-1)^p delta the same check reads: d and delta_0 commute;
// the two statements are sign-equivalent, so one exact matrix identity
// certifies both conventions.)
template <class F>
void verify_bicomplex(const BigradedComplex<F>& bc, const F& f) {
    for (auto& [deg, dim] : bc.spaces) {
        if (deg.p + deg.q + 1 > bc.N) continue;  // need both composites within truncation
        auto d1 = bc.d_mats.find(deg);
        auto d2 = bc.d_mats.find(BiDegree{deg.p + 1, deg.q});
        if (d1 != bc.d_mats.end() && d2 != bc.d_mats.end()) {
            if (!multiply(f, d2->second, d1->second).is_zero())
                throw internal_error("BicomplexIdentityFailure",
                                     "d.d != 0 at (p,q)=(" + std::to_string(deg.p) + "," +
                                         std::to_string(deg.q) + ")");
        }
        auto v1 = bc.delta_mats.find(deg);
        auto v2 = bc.delta_mats.find(BiDegree{deg.p, deg.q + 1});
        if (v1 != bc.delta_mats.end() && v2 != bc.delta_mats.end()) {
            if (!multiply(f, v2->second, v1->second).is_zero())
                throw internal_error("BicomplexIdentityFailure",
                                     "delta.delta != 0 at (p,q)=(" + std::to_string(deg.p) + "," +
                                         std::to_string(deg.q) + ")");
        }
        auto dv = bc.d_mats.find(BiDegree{deg.p, deg.q + 1});
        auto vd = bc.delta_mats.find(BiDegree{deg.p + 1, deg.q});
        if (d1 != bc.d_mats.end() && v1 != bc.delta_mats.end() && dv != bc.d_mats.end() &&
            vd != bc.delta_mats.end()) {
            auto path1 = multiply(f, dv->second, v1->second);   // d after delta
            auto path2 = multiply(f, vd->second, d1->second);   // delta after d
            if (!add_scaled(f, path1, path2, f.one()).is_zero())
                throw internal_error("BicomplexIdentityFailure",
                                     "d.delta + delta.d != 0 at (p,q)=(" + std::to_string(deg.p) +
                                         "," + std::to_string(deg.q) + ")");
        }
    }
}

template <class F>
BigradedComplex<F> assemble(const AssocContext<F>& ctx, std::size_t N, bool reduced,
                            std::size_t cap, bool verify) {
    BigradedComplex<F> bc;
    bc.N = N;
    bc.reduced = reduced;
    bc.dims = SpaceDims{ctx.A.dim, ctx.R.dim, ctx.dimM};
    for (std::size_t p = 0; p <= N + 1; ++p)
        for (std::size_t q = 0; p + q <= N + 1; ++q)
            bc.spaces[BiDegree{p, q}] = graded_space_dim<F>(bc.dims, BiDegree{p, q}, reduced, cap);
    for (std::size_t p = 0; p <= N; ++p)
        for (std::size_t q = 0; p + q <= N; ++q) {
            bc.d_mats[BiDegree{p, q}] = horizontal_d(ctx, p, q, reduced, cap);
            bc.delta_mats[BiDegree{p, q}] = vertical_delta(ctx, p, q, reduced, cap);
        }
    if (verify) {
        verify_bicomplex(bc, ctx.field);
        bc.identities_checked = true;
    }
    return bc;
}

// ---------------------------------------------------------------------------
// Totalization: Total^n = direct sum of K^{pq} with p+q = n, blocks ordered by
// ascending p.  D = d + delta squares to zero because the stored maps
// anticommute.

template <class F>
struct TotalComplex {
    std::size_t N = 0;
    SpaceDims dims;
    bool reduced = true;
    std::vector<std::size_t> total_dims;  // n <= N+1
    // per n: blocks as (bidegree, offset); ascending p
    std::vector<std::vector<std::pair<BiDegree, std::size_t>>> blocks;
    std::vector<SparseMatrix<F>> D;  // D[n] : Total^n -> Total^{n+1}, n <= N
};

template <class F>
TotalComplex<F> totalize(const BigradedComplex<F>& bc, const F& f) {
    TotalComplex<F> tc;
    tc.N = bc.N;
    tc.dims = bc.dims;
    tc.reduced = bc.reduced;
    tc.total_dims.resize(bc.N + 2, 0);
    tc.blocks.resize(bc.N + 2);
    for (std::size_t n = 0; n <= bc.N + 1; ++n) {
        std::size_t off = 0;
        for (std::size_t p = 0; p <= n; ++p) {
            BiDegree deg{p, n - p};
            std::size_t dim = bc.space(deg);
            tc.blocks[n].push_back({deg, off});
            off += dim;
        }
        tc.total_dims[n] = off;
    }
    auto block_offset = [&](std::size_t n, BiDegree deg) {
        return tc.blocks[n][deg.p].second;
    };
    tc.D.resize(bc.N + 1);
    for (std::size_t n = 0; n <= bc.N; ++n) {
        SparseMatrix<F> D{tc.total_dims[n + 1], tc.total_dims[n], {}};
        for (auto& [deg, src_off] : tc.blocks[n]) {
            auto d_it = bc.d_mats.find(deg);
            if (d_it != bc.d_mats.end()) {
                std::size_t tgt_off = block_offset(n + 1, BiDegree{deg.p + 1, deg.q});
                for (const auto& e : d_it->second.entries)
                    D.entries.push_back({tgt_off + e.r, src_off + e.c, e.v});
            }
            auto v_it = bc.delta_mats.find(deg);
            if (v_it != bc.delta_mats.end()) {
                std::size_t tgt_off = block_offset(n + 1, BiDegree{deg.p, deg.q + 1});
                for (const auto& e : v_it->second.entries)
                    D.entries.push_back({tgt_off + e.r, src_off + e.c, e.v});
            }
        }
        D.canonicalize(f);
        tc.D[n] = std::move(D);
    }
    // D.D = 0 wherever the composite exists
    for (std::size_t n = 0; n + 1 <= bc.N; ++n) {
        if (!multiply(f, tc.D[n + 1], tc.D[n]).is_zero())
            throw internal_error("TotalizationSignFailure",
                                 "D.D != 0 at total degree " + std::to_string(n));
    }
    return tc;
}

}  // namespace shukla
