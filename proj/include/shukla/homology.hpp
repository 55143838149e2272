#pragma once

#include <optional>
#include <vector>

#include "shukla/assoc_bicomplex.hpp"
#include "shukla/error.hpp"
#include "shukla/linalg.hpp"

namespace shukla {

// Express vectors in a fixed independent column basis (one echelon, many
// solves).  Throws if the basis columns are dependent or a queried vector
// falls outside their span.
template <class F>
class BasisSolver {
public:
    BasisSolver(const F& f, const SparseMatrix<F>& basis)
        : f_(f), dim_(basis.rows), k_(basis.cols), ech_(f, basis.rows + basis.cols + 1, basis.rows) {
        auto cols = basis.to_columns();
        for (std::size_t j = 0; j < k_; ++j) {
            SparseVec<F> v = std::move(cols[j]);
            v.push_back({dim_ + j, f.one()});
            if (!ech_.insert(std::move(v)))
                throw internal_error("BasisNotIndependent", "column basis is linearly dependent");
        }
    }

    std::optional<SparseVec<F>> solve(SparseVec<F> v) const {
        v.push_back({dim_ + k_, f_.one()});
        auto r = ech_.reduce(std::move(v));
        if (!r.empty() && r.front().first < dim_) return std::nullopt;
        typename F::Elem s = f_.zero();
        SparseVec<F> x;
        for (auto& [i, val] : r) {
            if (i == dim_ + k_)
                s = val;
            else if (i >= dim_)
                x.push_back({i - dim_, val});
        }
        if (f_.is_zero(s))
            throw internal_error("SolveScaleLost", "basis solve lost its scale slot");
        auto inv_s = f_.inv(s);
        for (auto& [i, val] : x) val = f_.neg(f_.mul(val, inv_s));
        canonicalize_vec(f_, x);
        return x;
    }

    // All columns at once; every column must be in the span.
    SparseMatrix<F> solve_all(const SparseMatrix<F>& cols, const char* what) const {
        SparseMatrix<F> out{k_, cols.cols, {}};
        auto cs = cols.to_columns();
        for (std::size_t j = 0; j < cols.cols; ++j) {
            auto x = solve(std::move(cs[j]));
            if (!x) throw internal_error("KernelColumnClosure", what);
            for (auto& [i, val] : *x) out.entries.push_back({i, j, val});
        }
        out.canonicalize(f_);
        return out;
    }

private:
    F f_;
    std::size_t dim_, k_;
    Echelon<F> ech_;
};

// Matrix whose columns are the given vectors.
template <class F>
SparseMatrix<F> columns_matrix(const F& f, std::size_t dim, const std::vector<SparseVec<F>>& vecs) {
    SparseMatrix<F> out{dim, vecs.size(), {}};
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (auto& [i, v] : vecs[j]) out.entries.push_back({i, j, v});
    out.canonicalize(f);
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology of the totalized complex.

template <class F>
struct TotalCohomology {
    std::vector<std::size_t> space_dims;    // Total^n, n = 0..N
    std::vector<std::size_t> kernel_dims;   // ker D^n
    std::vector<std::size_t> image_dims;    // im D^{n-1}
    std::vector<std::size_t> h_dims;        // H^n
    std::vector<bool> boundary_incomplete;  // true at n = N: no degree-(N+1)
                                            // composite certifies D^N beyond D.D
    std::vector<std::vector<SparseVec<F>>> reps;  // canonical representatives of H^n
};

template <class F>
TotalCohomology<F> total_cohomology(const F& f, const TotalComplex<F>& tc) {
    TotalCohomology<F> out;
    const std::size_t N = tc.N;
    std::size_t prev_rank = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        auto rk = rank_kernel(f, tc.D[n]);
        std::size_t dim = tc.total_dims[n];
        std::size_t ker = dim - rk.rank;
        out.space_dims.push_back(dim);
        out.kernel_dims.push_back(ker);
        out.image_dims.push_back(prev_rank);
        out.h_dims.push_back(ker - prev_rank);
        out.boundary_incomplete.push_back(n == N);

        // representatives: kernel vectors reduced modulo the image columns
        Echelon<F> ech(f, dim);
        if (n > 0)
            for (auto& col : tc.D[n - 1].to_columns()) ech.insert(std::move(col));
        std::vector<SparseVec<F>> reps;
        for (auto& z : rk.kernel) {
            auto r = ech.reduce(z);
            if (r.empty()) continue;
            reps.push_back(r);
            ech.insert(std::move(r));
        }
        if (reps.size() != ker - prev_rank)
            throw internal_error("HomologyBookkeeping",
                                 "representative count disagrees with dimension count");
        out.reps.push_back(std::move(reps));
        prev_rank = rk.rank;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The kernel column: C^k_A = ker(d : K^{0,k} -> K^{1,k}) consists exactly of
// the f with (a_1...a_k) . f(r_1,...,r_k) = f(a_1 r_1, ..., a_k r_k), i.e.
// Hom_A(R^{tensor_A k}, M).  The vertical map preserves it and induces the
// A-relative complex.

template <class F>
struct KernelColumn {
    std::size_t N = 0;
    std::vector<std::size_t> c_dims;             // dim C^k_A, k = 0..N
    std::vector<SparseMatrix<F>> basis;          // K^{0,k}-coordinate columns
    std::vector<SparseMatrix<F>> composite;      // delta restricted: into K^{0,k+1} coords
    std::vector<SparseMatrix<F>> diff;           // in-basis C^k_A -> C^{k+1}_A, k < N
    std::vector<std::size_t> kernel_dims;        // ker(delta|) at k
    std::vector<std::size_t> image_dims;         // im into level k
    std::vector<std::size_t> h_dims;             // H^k_A
    std::vector<std::vector<SparseVec<F>>> cocycles;  // kernel basis, C-coordinates
};

template <class F>
KernelColumn<F> kernel_column(const F& f, const BigradedComplex<F>& bc) {
    KernelColumn<F> kc;
    kc.N = bc.N;
    for (std::size_t k = 0; k <= bc.N; ++k) {
        const auto& d = bc.d_mats.at(BiDegree{0, k});
        auto rk = rank_kernel(f, d);
        kc.c_dims.push_back(rk.kernel.size());
        kc.basis.push_back(columns_matrix(f, d.cols, rk.kernel));
        kc.composite.push_back(multiply(f, bc.delta_mats.at(BiDegree{0, k}), kc.basis.back()));
    }
    for (std::size_t k = 0; k + 1 <= bc.N; ++k) {
        BasisSolver<F> solver(f, kc.basis[k + 1]);
        kc.diff.push_back(
            solver.solve_all(kc.composite[k], "vertical map left the kernel column"));
    }
    std::size_t prev_rank = 0;
    for (std::size_t k = 0; k <= bc.N; ++k) {
        auto rk = rank_kernel(f, kc.composite[k]);
        kc.kernel_dims.push_back(kc.c_dims[k] - rk.rank);
        kc.image_dims.push_back(prev_rank);
        kc.h_dims.push_back(kc.c_dims[k] - rk.rank - prev_rank);
        kc.cocycles.push_back(std::move(rk.kernel));
        prev_rank = rk.rank;
    }
    return kc;
}

// ---------------------------------------------------------------------------
// Comparison map: the inclusion of the kernel column into the p = 0 block of
// the total complex is a chain map (its representatives are killed by d by
// construction), so it induces H^n_A -> H^n.

struct AlphaReport {
    std::size_t n = 0;
    std::size_t dim_relative = 0;  // dim H^n_A
    std::size_t dim_total = 0;     // dim H^n
    std::size_t rank = 0;          // rank of the induced map
    bool injective = false;
    bool surjective = false;
    bool isomorphism = false;

    bool operator==(const AlphaReport&) const = default;
};

template <class F>
AlphaReport alpha_map(const F& f, const TotalComplex<F>& tc, const KernelColumn<F>& kc,
                      const TotalCohomology<F>& hc, std::size_t n) {
    if (n + 1 > tc.N)
        throw truncation_too_small("comparison at degree " + std::to_string(n) +
                                   " needs truncation at least " + std::to_string(n + 1));
    AlphaReport rep;
    rep.n = n;
    rep.dim_relative = kc.h_dims[n];
    rep.dim_total = hc.h_dims[n];

    Echelon<F> ech(f, tc.total_dims[n]);
    if (n > 0)
        for (auto& col : tc.D[n - 1].to_columns()) ech.insert(std::move(col));
    std::size_t base = ech.rank();
    // block (0,n) sits at offset 0 of Total^n, so K^{0,n}-coordinates embed as-is
    for (const auto& z : kc.cocycles[n]) {
        SparseVec<F> emb = kc.basis[n].apply(f, z);
        ech.insert(std::move(emb));
    }
    rep.rank = ech.rank() - base;
    rep.injective = rep.rank == rep.dim_relative;
    rep.surjective = rep.rank == rep.dim_total;
    rep.isomorphism = rep.injective && rep.surjective;
    return rep;
}

// ---------------------------------------------------------------------------
// R^{tensor_A k}: quotient of R^{tensor k} by the middle-slot relations
//   (... (a.r_i) tensor r_{i+1} ...) - (... r_i tensor (a.r_{i+1}) ...).

template <class F>
struct TensorOverA {
    std::size_t k = 0;
    std::size_t ambient_dim = 0;   // dimR^k
    std::size_t dim = 0;           // quotient dimension
    std::vector<std::size_t> free_cols;  // quotient basis = classes of these unit tensors
    SparseMatrix<F> projection;    // dim x ambient_dim
};

template <class F>
TensorOverA<F> tensor_over_A(const AssocContext<F>& ctx, std::size_t k,
                             std::size_t cap = kDefaultSizeCap) {
    if (k == 0) throw validation_error("tensor power requires k >= 1");
    const F& f = ctx.field;
    const std::size_t dimR = ctx.R.dim;
    unsigned __int128 amb = 1;
    const unsigned __int128 hard_limit = static_cast<unsigned __int128>(1) << 90;
    for (std::size_t i = 0; i < k && amb <= hard_limit; ++i) amb *= dimR;
    if (amb > cap) throw size_cap_exceeded("tensor power of R at k = " + std::to_string(k));
    const std::size_t ambient = static_cast<std::size_t>(amb);

    auto flat = [&](const std::vector<std::size_t>& t) {
        std::size_t x = 0;
        for (std::size_t v : t) x = x * dimR + v;
        return x;
    };

    Echelon<F> ech(f, ambient);
    std::vector<std::size_t> t(k);
    for (std::size_t slot = 0; slot + 1 < k; ++slot) {
        for (std::size_t base = 0; base < ambient; ++base) {
            std::size_t rest = base;
            for (std::size_t i = k; i-- > 0;) {
                t[i] = rest % dimR;
                rest /= dimR;
            }
            for (std::size_t a = 0; a < ctx.A.dim; ++a) {
                SparseVec<F> rel;
                std::vector<std::size_t> s = t;
                for (std::size_t x = 0; x < dimR; ++x) {
                    const auto& c = ctx.a_on_r.at(a, t[slot], x);
                    if (f.is_zero(c)) continue;
                    s[slot] = x;
                    rel.push_back({flat(s), c});
                }
                s[slot] = t[slot];
                for (std::size_t x = 0; x < dimR; ++x) {
                    const auto& c = ctx.a_on_r.at(a, t[slot + 1], x);
                    if (f.is_zero(c)) continue;
                    s[slot + 1] = x;
                    rel.push_back({flat(s), f.neg(c)});
                }
                canonicalize_vec(f, rel);
                ech.insert(std::move(rel));
            }
        }
    }

    TensorOverA<F> out;
    out.k = k;
    out.ambient_dim = ambient;
    auto pivots = ech.pivot_cols();
    std::vector<bool> is_pivot(ambient, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < ambient; ++j)
        if (!is_pivot[j]) out.free_cols.push_back(j);
    out.dim = out.free_cols.size();

    std::vector<std::size_t> free_index(ambient, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < out.free_cols.size(); ++i) free_index[out.free_cols[i]] = i;

    // Projection: free-column unit tensors are the quotient basis; every other
    // unit tensor is expressed in (relations + free classes) through a tracked
    // echelon with a scale slot, exactly as in solve().
    SparseMatrix<F> proj{out.dim, ambient, {}};
    Echelon<F> tracked(f, ambient + out.dim + 1, ambient);
    for (auto& row : ech.sorted_rows()) tracked.insert(row);
    for (std::size_t i = 0; i < out.dim; ++i) {
        SparseVec<F> v{{out.free_cols[i], f.one()}, {ambient + i, f.one()}};
        tracked.insert(std::move(v));
    }
    for (std::size_t j = 0; j < ambient; ++j) {
        if (free_index[j] != static_cast<std::size_t>(-1)) {
            proj.entries.push_back({free_index[j], j, f.one()});
            continue;
        }
        SparseVec<F> v{{j, f.one()}, {ambient + out.dim, f.one()}};
        auto r = tracked.reduce(std::move(v));
        if (!r.empty() && r.front().first < ambient)
            throw internal_error("QuotientProjection", "unit tensor escaped the echelon");
        typename F::Elem s = f.zero();
        SparseVec<F> coeffs;
        for (auto& [i, val] : r) {
            if (i == ambient + out.dim)
                s = val;
            else if (i >= ambient)
                coeffs.push_back({i - ambient, val});
        }
        if (f.is_zero(s))
            throw internal_error("QuotientProjection", "projection lost its scale slot");
        // remainder = s*e_j + sum coeffs_i (e_{free_i} | track_i) + relations,
        // all coordinates < ambient zero  =>  [e_j] = sum (-coeffs_i/s) [free_i]
        auto inv_s = f.inv(s);
        for (auto& [i, val] : coeffs)
            proj.entries.push_back({i, j, f.neg(f.mul(val, inv_s))});
    }
    proj.canonicalize(f);
    out.projection = std::move(proj);
    return out;
}

// dim Hom_A(W, M) where W = R^{tensor_A k} with A acting through the first
// slot.  Cross-checks the kernel-column dimension at level k.
template <class F>
std::size_t hom_a_dim(const AssocContext<F>& ctx, const TensorOverA<F>& w,
                      std::size_t cap = kDefaultSizeCap) {
    const F& f = ctx.field;
    const std::size_t dimM = ctx.dimM;
    const std::size_t unknowns = w.dim * dimM;
    if (unknowns > cap) throw size_cap_exceeded("Hom_A system");
    if (unknowns == 0) return 0;
    // rows: for each a, basis class [e_c], m-coordinate:
    //   phi(a.[e_c]) - a.phi([e_c]) = 0
    SparseMatrix<F> sys{ctx.A.dim * w.dim * dimM, unknowns, {}};
    const std::size_t dimR = ctx.R.dim;
    std::vector<std::size_t> t(w.k);
    std::size_t row = 0;
    for (std::size_t a = 0; a < ctx.A.dim; ++a) {
        Lin<F> eta = ctx.eta(a);
        for (std::size_t ci = 0; ci < w.dim; ++ci) {
            std::size_t c = w.free_cols[ci];
            // decode c, act on slot 0, re-encode, project
            std::size_t rest = c;
            for (std::size_t i = w.k; i-- > 0;) {
                t[i] = rest % dimR;
                rest /= dimR;
            }
            SparseVec<F> acted;  // ambient coordinates of a.(e_c)
            std::size_t slot0 = t[0];
            for (std::size_t x = 0; x < dimR; ++x) {
                const auto& cc = ctx.a_on_r.at(a, slot0, x);
                if (f.is_zero(cc)) continue;
                t[0] = x;
                std::size_t fl = 0;
                for (std::size_t v : t) fl = fl * dimR + v;
                acted.push_back({fl, cc});
            }
            t[0] = slot0;
            canonicalize_vec(f, acted);
            SparseVec<F> acted_classes = w.projection.apply(f, acted);
            for (std::size_t mt = 0; mt < dimM; ++mt) {
                // phi(a.[c])_mt  =  sum_j acted_classes_j phi([j])_mt
                for (auto& [j, val] : acted_classes)
                    sys.entries.push_back({row + mt, j * dimM + mt, val});
                // (a.phi([c]))_mt = sum_ms eta_k left(k, ms, mt) phi([c])_ms
                for (auto& [kk, ev] : eta)
                    for (std::size_t ms = 0; ms < dimM; ++ms) {
                        const auto& l = ctx.left.at(kk, ms, mt);
                        if (!f.is_zero(l))
                            sys.entries.push_back(
                                {row + mt, ci * dimM + ms, f.neg(f.mul(ev, l))});
                    }
            }
            row += dimM;
        }
    }
    sys.rows = row;
    sys.canonicalize(f);
    auto rk = rank_kernel(f, sys);
    return unknowns - rk.rank;
}

// ---------------------------------------------------------------------------
// A-linear derivations Der_A(R, M): K-linear D with D(rs) = r.D(s) + D(r).s
// and D(a.r) = a.D(r).

template <class F>
struct DerivationSpace {
    std::size_t dim = 0;
    std::vector<SparseVec<F>> basis;  // as Hom(R,M) coordinate vectors (r-major, m-minor)
};

template <class F>
DerivationSpace<F> derivations(const AssocContext<F>& ctx) {
    const F& f = ctx.field;
    const std::size_t dimR = ctx.R.dim, dimM = ctx.dimM, dimA = ctx.A.dim;
    const std::size_t unknowns = dimR * dimM;
    SparseMatrix<F> sys{(dimR * dimR + dimA * dimR) * dimM, unknowns, {}};
    std::size_t row = 0;
    // Leibniz rows
    for (std::size_t r = 0; r < dimR; ++r)
        for (std::size_t s = 0; s < dimR; ++s) {
            for (std::size_t mt = 0; mt < dimM; ++mt) {
                for (std::size_t k = 0; k < dimR; ++k) {
                    const auto& c = ctx.R.mult.at(r, s, k);
                    if (!f.is_zero(c)) sys.entries.push_back({row + mt, k * dimM + mt, c});
                }
                for (std::size_t ms = 0; ms < dimM; ++ms) {
                    const auto& l = ctx.left.at(r, ms, mt);
                    if (!f.is_zero(l))
                        sys.entries.push_back({row + mt, s * dimM + ms, f.neg(l)});
                    const auto& rr = ctx.right.at(ms, s, mt);
                    if (!f.is_zero(rr))
                        sys.entries.push_back({row + mt, r * dimM + ms, f.neg(rr)});
                }
            }
            row += dimM;
        }
    // A-linearity rows
    for (std::size_t a = 0; a < dimA; ++a) {
        Lin<F> eta = ctx.eta(a);
        for (std::size_t r = 0; r < dimR; ++r) {
            for (std::size_t mt = 0; mt < dimM; ++mt) {
                for (std::size_t k = 0; k < dimR; ++k) {
                    const auto& c = ctx.a_on_r.at(a, r, k);
                    if (!f.is_zero(c)) sys.entries.push_back({row + mt, k * dimM + mt, c});
                }
                for (auto& [kk, ev] : eta)
                    for (std::size_t ms = 0; ms < dimM; ++ms) {
                        const auto& l = ctx.left.at(kk, ms, mt);
                        if (!f.is_zero(l))
                            sys.entries.push_back({row + mt, r * dimM + ms, f.neg(f.mul(ev, l))});
                    }
            }
            row += dimM;
        }
    }
    sys.canonicalize(f);
    auto rk = rank_kernel(f, sys);
    DerivationSpace<F> out;
    out.dim = unknowns - rk.rank;
    out.basis = std::move(rk.kernel);
    return out;
}

}  // namespace shukla
