#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shukla/error.hpp"

namespace shukla {

struct BiDegree {
    std::size_t p = 0, q = 0;
    bool operator==(const BiDegree& o) const { return p == o.p && q == o.q; }
    bool operator<(const BiDegree& o) const { return p != o.p ? p < o.p : q < o.q; }
};

struct SpaceDims {
    std::size_t dimA = 0, dimR = 0, dimM = 0;
};

inline constexpr std::size_t kDefaultSizeCap = 5'000'000;

// (dim A)^{pq} * (dim R)^q * (dim M), guarded by the size cap.
inline std::size_t space_dim(BiDegree deg, SpaceDims dims, std::size_t cap = kDefaultSizeCap) {
    unsigned __int128 n = dims.dimM;
    const unsigned __int128 hard_limit = static_cast<unsigned __int128>(1) << 90;
    for (std::size_t i = 0; i < deg.p * deg.q && n <= hard_limit; ++i) n *= dims.dimA;
    for (std::size_t i = 0; i < deg.q && n <= hard_limit; ++i) n *= dims.dimR;
    if (n > cap) {
        std::string size_text =
            n <= 0xffffffffffffffffull ? std::to_string(static_cast<std::uint64_t>(n)) : "> 2^64";
        throw size_cap_exceeded("cochain space at (p,q)=(" + std::to_string(deg.p) + "," +
                                std::to_string(deg.q) + ") has " + size_text +
                                " basis elements, over the cap " + std::to_string(cap) +
                                "; lower the truncation order or the dimensions, or raise --cap");
    }
    return static_cast<std::size_t>(n);
}

// Flat index of a basis functional of K^{pq}: argument order
// (a_11, ..., a_1q, a_21, ..., a_pq, r_1, ..., r_q, m), read row by row,
// leftmost most significant (m varies fastest).
struct TupleCodec {
    BiDegree deg;
    SpaceDims dims;

    std::size_t encode(const std::vector<std::size_t>& a_idx, const std::vector<std::size_t>& r_idx,
                       std::size_t m_idx) const {
        if (a_idx.size() != deg.p * deg.q || r_idx.size() != deg.q)
            throw internal_error("IndexOutOfRange", "tuple arity mismatch");
        std::size_t flat = 0;
        for (std::size_t v : a_idx) {
            if (v >= dims.dimA) throw internal_error("IndexOutOfRange", "A index out of range");
            flat = flat * dims.dimA + v;
        }
        for (std::size_t v : r_idx) {
            if (v >= dims.dimR) throw internal_error("IndexOutOfRange", "R index out of range");
            flat = flat * dims.dimR + v;
        }
        if (m_idx >= dims.dimM) throw internal_error("IndexOutOfRange", "M index out of range");
        return flat * dims.dimM + m_idx;
    }

    void decode(std::size_t flat, std::vector<std::size_t>& a_idx, std::vector<std::size_t>& r_idx,
                std::size_t& m_idx) const {
        a_idx.assign(deg.p * deg.q, 0);
        r_idx.assign(deg.q, 0);
        m_idx = flat % dims.dimM;
        flat /= dims.dimM;
        for (std::size_t i = deg.q; i-- > 0;) {
            r_idx[i] = flat % dims.dimR;
            flat /= dims.dimR;
        }
        for (std::size_t i = deg.p * deg.q; i-- > 0;) {
            a_idx[i] = flat % dims.dimA;
            flat /= dims.dimA;
        }
        if (flat != 0) throw internal_error("IndexOutOfRange", "flat index out of range");
    }

    // Number of tuples (a,r) without the m factor.
    std::size_t tuple_count(std::size_t cap = kDefaultSizeCap) const {
        std::size_t total = space_dim(deg, dims, cap);
        return dims.dimM == 0 ? 0 : total / dims.dimM;
    }
};

// ---------------------------------------------------------------------------
// Exterior-power bookkeeping for the Lie pipeline.  Basis of Lambda^q(V) with
// dim V = n: strictly increasing q-tuples of [0,n), ranked lexicographically.

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    unsigned __int128 r = 1;
    if (k > n - k) k = n - k;
    for (std::size_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > static_cast<unsigned __int128>(18446744073709551615ull))
            throw size_cap_exceeded("binomial overflow");
    }
    return static_cast<std::size_t>(r);
}

// Lexicographic rank of a strictly increasing tuple among all increasing
// q-tuples of [0,n).
inline std::size_t comb_rank(const std::vector<std::size_t>& tuple, std::size_t n) {
    std::size_t q = tuple.size();
    std::size_t rank = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t v = prev; v < tuple[i]; ++v) rank += binomial(n - 1 - v, q - 1 - i);
        prev = tuple[i] + 1;
    }
    return rank;
}

inline std::vector<std::size_t> comb_unrank(std::size_t rank, std::size_t n, std::size_t q) {
    std::vector<std::size_t> out(q);
    std::size_t v = 0;
    for (std::size_t i = 0; i < q; ++i) {
        for (;; ++v) {
            std::size_t block = binomial(n - 1 - v, q - 1 - i);
            if (rank < block) {
                out[i] = v++;
                break;
            }
            rank -= block;
        }
    }
    return out;
}

// Sort a tuple, returning (+1/-1) parity of the sorting permutation, or 0 if
// two entries coincide.  `tuple` is sorted in place.
inline int sort_parity(std::vector<std::size_t>& tuple) {
    int sign = 1;
    for (std::size_t i = 1; i < tuple.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && tuple[j] < tuple[j - 1]) {
            std::swap(tuple[j], tuple[j - 1]);
            sign = -sign;
            --j;
        }
    }
    for (std::size_t i = 1; i < tuple.size(); ++i)
        if (tuple[i] == tuple[i - 1]) return 0;
    return sign;
}

struct LieDims {
    std::size_t dimA = 0, dimL = 0, dimM = 0;
};

// dim of Hom(Lambda^q(A^{tensor p} tensor L), M) = C((dimA)^p dimL, q) * dimM
inline std::size_t lie_space_dim(std::size_t p, std::size_t q, LieDims dims,
                                 std::size_t cap = kDefaultSizeCap) {
    unsigned __int128 base = dims.dimL;
    for (std::size_t i = 0; i < p; ++i) base *= dims.dimA;
    if (base > kDefaultSizeCap * 16ull)
        throw size_cap_exceeded("Lie column dimension overflow at p=" + std::to_string(p));
    unsigned __int128 n =
        static_cast<unsigned __int128>(binomial(static_cast<std::size_t>(base), q)) * dims.dimM;
    if (n > cap)
        throw size_cap_exceeded("Lie cochain space at (p,q)=(" + std::to_string(p) + "," +
                                std::to_string(q) + ") exceeds the cap " + std::to_string(cap));
    return static_cast<std::size_t>(n);
}

}  // namespace shukla
