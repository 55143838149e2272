#pragma once

// Randomized-but-valid presentation triples for the property suites.  A draw
// picks a structured context from the builtin catalog and conjugates every
// structure table by independent random unimodular basis changes, one per
// underlying space.  All presentation axioms are basis-free, so the result is
// valid by construction while the tables look generic; the validator
// re-certifies each draw anyway.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "shukla/builtins.hpp"
#include "shukla/extensions.hpp"
#include "shukla/json_io.hpp"
#include "shukla/presentation.hpp"

namespace shukla {

template <class F>
using DenseMat = std::vector<std::vector<typename F::Elem>>;

template <class F>
DenseMat<F> dense_identity_mat(const F& f, std::size_t n) {
    DenseMat<F> out(n, std::vector<typename F::Elem>(n, f.zero()));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = f.one();
    return out;
}

template <class F>
DenseMat<F> dense_mat_mul(const F& f, const DenseMat<F>& a, const DenseMat<F>& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    DenseMat<F> out(n, std::vector<typename F::Elem>(m, f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (f.is_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] = f.add(out[i][j], f.mul(a[i][l], b[l][j]));
        }
    return out;
}

// Inverse of a triangular matrix with unit diagonal, by substitution.  Exact
// and denominator-free over any field.
template <class F>
DenseMat<F> unit_triangular_inverse(const F& f, const DenseMat<F>& t, bool lower) {
    const std::size_t n = t.size();
    DenseMat<F> x = dense_identity_mat(f, n);
    if (lower) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                auto acc = f.zero();
                for (std::size_t k = j; k < i; ++k) acc = f.add(acc, f.mul(t[i][k], x[k][j]));
                x[i][j] = f.neg(acc);
            }
    } else {
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto acc = f.zero();
                for (std::size_t k = i + 1; k <= j; ++k) acc = f.add(acc, f.mul(t[i][k], x[k][j]));
                x[i][j] = f.neg(acc);
            }
    }
    return x;
}

// A basis change: columns of T are the new basis vectors in old coordinates.
template <class F>
struct BasisChange {
    DenseMat<F> T;
    DenseMat<F> Tinv;
};

template <class F>
BasisChange<F> random_unimodular(const F& f, std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> small(-2, 2);
    DenseMat<F> lo = dense_identity_mat(f, n), up = dense_identity_mat(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            lo[i][j] = f.from_int(small(rng));
            up[j][i] = f.from_int(small(rng));
        }
    BasisChange<F> out;
    out.T = dense_mat_mul(f, lo, up);
    out.Tinv = dense_mat_mul(f, unit_triangular_inverse(f, up, false),
                             unit_triangular_inverse(f, lo, true));
    return out;
}

// Structure-constant transport: out(i,j,k) expresses op(f_i, f_j) in the new
// basis, where f_i = sum_a s1[a][i] e_a on the first slot, similarly s2, and
// the target space changes by the matrix whose inverse is tinv.
template <class F>
Cube<F> conjugate_cube(const F& f, const Cube<F>& c, const DenseMat<F>& s1,
                       const DenseMat<F>& s2, const DenseMat<F>& tinv) {
    Cube<F> out(f, c.n1, c.n2, c.n3);
    for (std::size_t i = 0; i < c.n1; ++i)
        for (std::size_t j = 0; j < c.n2; ++j) {
            std::vector<typename F::Elem> old(c.n3, f.zero());
            for (std::size_t a = 0; a < c.n1; ++a) {
                if (f.is_zero(s1[a][i])) continue;
                for (std::size_t b = 0; b < c.n2; ++b) {
                    auto w = f.mul(s1[a][i], s2[b][j]);
                    if (f.is_zero(w)) continue;
                    for (std::size_t cc = 0; cc < c.n3; ++cc)
                        old[cc] = f.add(old[cc], f.mul(w, c.at(a, b, cc)));
                }
            }
            for (std::size_t k = 0; k < c.n3; ++k) {
                auto acc = f.zero();
                for (std::size_t cc = 0; cc < c.n3; ++cc)
                    acc = f.add(acc, f.mul(tinv[k][cc], old[cc]));
                out.at(i, j, k) = acc;
            }
        }
    return out;
}

template <class F>
Dense<F> transform_coords(const F& f, const DenseMat<F>& tinv, const Dense<F>& v) {
    Dense<F> out(v.size(), f.zero());
    for (std::size_t k = 0; k < v.size(); ++k)
        for (std::size_t c = 0; c < v.size(); ++c)
            out[k] = f.add(out[k], f.mul(tinv[k][c], v[c]));
    return out;
}

// Rewrite an entire associative context in new bases for A, R and M.
template <class F>
AssocContext<F> change_basis(const AssocContext<F>& ctx, const BasisChange<F>& ba,
                             const BasisChange<F>& br, const BasisChange<F>& bm) {
    const F& f = ctx.field;
    AssocContext<F> out = ctx;
    out.A.mult = conjugate_cube(f, ctx.A.mult, ba.T, ba.T, ba.Tinv);
    out.A.unit = transform_coords(f, ba.Tinv, ctx.A.unit);
    out.R.mult = conjugate_cube(f, ctx.R.mult, br.T, br.T, br.Tinv);
    out.R.unit = transform_coords(f, br.Tinv, ctx.R.unit);
    out.a_on_r = conjugate_cube(f, ctx.a_on_r, ba.T, br.T, br.Tinv);
    out.left = conjugate_cube(f, ctx.left, br.T, bm.T, bm.Tinv);
    out.right = conjugate_cube(f, ctx.right, bm.T, br.T, bm.Tinv);
    return out;
}

template <class F>
LieContext<F> change_basis(const LieContext<F>& ctx, const BasisChange<F>& ba,
                           const BasisChange<F>& bl, const BasisChange<F>& bm) {
    const F& f = ctx.field;
    LieContext<F> out = ctx;
    out.A.mult = conjugate_cube(f, ctx.A.mult, ba.T, ba.T, ba.Tinv);
    out.A.unit = transform_coords(f, ba.Tinv, ctx.A.unit);
    out.bracket = conjugate_cube(f, ctx.bracket, bl.T, bl.T, bl.Tinv);
    out.a_on_l = conjugate_cube(f, ctx.a_on_l, ba.T, bl.T, bl.Tinv);
    out.action = conjugate_cube(f, ctx.action, bl.T, bm.T, bm.Tinv);
    out.a_on_m = conjugate_cube(f, ctx.a_on_m, ba.T, bm.T, bm.Tinv);
    return out;
}

template <class F>
struct RandomTriple {
    std::string description;
    AssocContext<F> ctx;
};

// One random draw: catalog pick + independent basis changes.
template <class F>
RandomTriple<F> random_assoc_context(const F& f, FieldSpec spec, std::mt19937_64& rng) {
    static const std::vector<std::string> a_names = {"base_field", "dual_numbers", "k_times_k",
                                                     "trunc_poly:3"};
    std::uniform_int_distribution<std::size_t> pick_a(0, a_names.size() - 1);
    const std::string a_name = a_names[pick_a(rng)];

    std::vector<std::string> r_names = {"r_equals_a", "quotient_k", "dual_numbers"};
    if (a_name == "dual_numbers" || a_name == "k_times_k") r_names.push_back("quotient_point");
    std::uniform_int_distribution<std::size_t> pick_r(0, r_names.size() - 1);
    const std::string r_name = r_names[pick_r(rng)];

    static const std::vector<std::string> m_names = {"regular_module", "trivial_module"};
    std::uniform_int_distribution<std::size_t> pick_m(0, m_names.size() - 1);
    const std::string m_name = m_names[pick_m(rng)];

    json a_doc = builtin_doc(a_name, Slot::A, nullptr, nullptr);
    json r_doc = builtin_doc(r_name, Slot::R, &a_doc, nullptr);
    json m_doc = builtin_doc(m_name, Slot::M, &a_doc, &r_doc);
    AssocContext<F> base = context_from_docs(f, spec, a_doc, r_doc, m_doc);

    BasisChange<F> ba = random_unimodular(f, rng, base.A.dim);
    BasisChange<F> br = random_unimodular(f, rng, base.R.dim);
    BasisChange<F> bm = random_unimodular(f, rng, base.dimM);

    RandomTriple<F> out{a_name + "/" + r_name + "/" + m_name, change_basis(base, ba, br, bm)};
    return out;
}

// Random sparse matrix with entries in {-3..3} \ {0} at the requested density
// (per mille); used by the elimination cross-checks.
template <class F>
SparseMatrix<F> random_sparse_matrix(const F& f, std::mt19937_64& rng, std::size_t rows,
                                     std::size_t cols, unsigned density_pm = 200) {
    std::uniform_int_distribution<unsigned> gate(0, 999);
    std::uniform_int_distribution<int> val(-3, 3);
    SparseMatrix<F> out{rows, cols, {}};
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (gate(rng) >= density_pm) continue;
            int v = val(rng);
            if (v == 0) v = 1;
            out.entries.push_back({i, j, f.from_int(v)});
        }
    out.canonicalize(f);
    return out;
}

// Random element of Z^2: a small random combination of a kernel basis of the
// degree-2 identity matrix.
template <class F>
TwoCocycleDatum<F> random_z2_cocycle(const ExtensionCalculus<F>& calc, std::mt19937_64& rng) {
    const F& f = calc.ctx().field;
    auto rk = rank_kernel(f, calc.z2_identity_matrix());
    std::uniform_int_distribution<int> val(-2, 2);
    SparseVec<F> acc;
    for (const auto& basis_vec : rk.kernel) {
        int c = val(rng);
        if (c == 0) continue;
        for (const auto& [i, x] : basis_vec) acc.push_back({i, f.mul(f.from_int(c), x)});
    }
    canonicalize_vec(f, acc);
    return calc.datum_from_total2(acc);
}

}  // namespace shukla
