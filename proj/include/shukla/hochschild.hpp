#pragma once

#include <vector>

#include "shukla/cochain.hpp"
#include "shukla/error.hpp"
#include "shukla/linalg.hpp"
#include "shukla/presentation.hpp"

namespace shukla {

// Classical Hochschild complex C^n(R,M) = Hom(R^{tensor n}, M) over the base
// field, assembled directly from the textbook coboundary
//
//   (delta f)(r_0,...,r_n) = r_0 . f(r_1,...,r_n)
//                          + sum_{0<=i<n} (-1)^{i+1} f(..., r_i r_{i+1}, ...)
//                          + (-1)^{n+1} f(r_0,...,r_{n-1}) . r_n
//
// This is kept independent of the bigraded assembler on purpose: it serves as
// an oracle for the latter's p = 0 column.

template <class F>
std::size_t hochschild_dim(std::size_t n, std::size_t dimR, std::size_t dimM,
                           std::size_t cap = kDefaultSizeCap) {
    unsigned __int128 total = dimM;
    const unsigned __int128 hard_limit = static_cast<unsigned __int128>(1) << 90;
    for (std::size_t i = 0; i < n && total <= hard_limit; ++i) total *= dimR;
    if (total > cap) throw size_cap_exceeded("Hochschild space at degree " + std::to_string(n));
    return static_cast<std::size_t>(total);
}

// Coboundary matrix C^n(R,M) -> C^{n+1}(R,M).
template <class F>
SparseMatrix<F> hochschild_coboundary(const F& f, const AlgebraData<F>& R, const Cube<F>& left,
                                      const Cube<F>& right, std::size_t dimM, std::size_t n,
                                      std::size_t cap = kDefaultSizeCap) {
    const std::size_t dimR = R.dim;
    std::size_t n_src = hochschild_dim<F>(n, dimR, dimM, cap);
    std::size_t n_tgt = hochschild_dim<F>(n + 1, dimR, dimM, cap);
    SparseMatrix<F> out{n_tgt, n_src, {}};
    if (dimM == 0) return out;

    std::vector<std::size_t> r(n + 1);
    std::size_t tuples = n_tgt / dimM;
    auto src_index = [&](const std::vector<std::size_t>& t) {
        std::size_t flat = 0;
        for (std::size_t v : t) flat = flat * dimR + v;
        return flat * dimM;
    };
    for (std::size_t t = 0; t < tuples; ++t) {
        // decode the (n+1)-tuple, leftmost most significant
        std::size_t rest = t;
        for (std::size_t i = n + 1; i-- > 0;) {
            r[i] = rest % dimR;
            rest /= dimR;
        }
        std::size_t row_base = t * dimM;
        // r_0 . f(r_1..r_n)
        {
            std::vector<std::size_t> s(r.begin() + 1, r.end());
            std::size_t col_base = src_index(s);
            for (std::size_t ms = 0; ms < dimM; ++ms)
                for (std::size_t mt = 0; mt < dimM; ++mt) {
                    const auto& c = left.at(r[0], ms, mt);
                    if (!f.is_zero(c)) out.entries.push_back({row_base + mt, col_base + ms, c});
                }
        }
        // inner face maps
        for (std::size_t i = 0; i < n; ++i) {
            typename F::Elem sign = (i % 2 == 0) ? f.neg(f.one()) : f.one();
            for (std::size_t k = 0; k < dimR; ++k) {
                const auto& c = R.mult.at(r[i], r[i + 1], k);
                if (f.is_zero(c)) continue;
                std::vector<std::size_t> s;
                s.reserve(n);
                for (std::size_t j = 0; j < i; ++j) s.push_back(r[j]);
                s.push_back(k);
                for (std::size_t j = i + 2; j <= n; ++j) s.push_back(r[j]);
                std::size_t col_base = src_index(s);
                auto v = f.mul(sign, c);
                for (std::size_t m = 0; m < dimM; ++m)
                    out.entries.push_back({row_base + m, col_base + m, v});
            }
        }
        // (-1)^{n+1} f(r_0..r_{n-1}) . r_n
        {
            typename F::Elem sign = (n % 2 == 0) ? f.neg(f.one()) : f.one();
            std::vector<std::size_t> s(r.begin(), r.end() - 1);
            std::size_t col_base = src_index(s);
            for (std::size_t ms = 0; ms < dimM; ++ms)
                for (std::size_t mt = 0; mt < dimM; ++mt) {
                    const auto& c = right.at(ms, r[n], mt);
                    if (!f.is_zero(c))
                        out.entries.push_back({row_base + mt, col_base + ms, f.mul(sign, c)});
                }
        }
    }
    out.canonicalize(f);
    return out;
}

struct HochschildReport {
    std::vector<std::size_t> space_dims;   // C^n, n = 0..N
    std::vector<std::size_t> kernel_dims;  // ker at n = 0..N
    std::vector<std::size_t> image_dims;   // im into degree n (0 at n=0)
    std::vector<std::size_t> h_dims;       // H^n, n = 0..N
};

// Cohomology of the classical complex up to degree N (inclusive); the degree-N
// kernel uses the coboundary out of degree N, which is always available.
template <class F>
HochschildReport hochschild_cohomology(const F& f, const AlgebraData<F>& R, const Cube<F>& left,
                                       const Cube<F>& right, std::size_t dimM, std::size_t N,
                                       std::size_t cap = kDefaultSizeCap) {
    HochschildReport rep;
    std::vector<SparseMatrix<F>> cob(N + 1);
    for (std::size_t n = 0; n <= N; ++n)
        cob[n] = hochschild_coboundary(f, R, left, right, dimM, n, cap);
    for (std::size_t n = 0; n + 1 <= N; ++n)
        if (!multiply(f, cob[n + 1], cob[n]).is_zero())
            throw internal_error("BicomplexIdentityFailure",
                                 "classical coboundary fails delta.delta = 0");
    std::size_t prev_rank = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        auto rk = rank_kernel(f, cob[n]);
        std::size_t dim = cob[n].cols;
        std::size_t ker = dim - rk.rank;
        rep.space_dims.push_back(dim);
        rep.kernel_dims.push_back(ker);
        rep.image_dims.push_back(prev_rank);
        rep.h_dims.push_back(ker - prev_rank);
        prev_rank = rk.rank;
    }
    return rep;
}

}  // namespace shukla
