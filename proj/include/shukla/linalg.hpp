#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shukla/error.hpp"
#include "shukla/field.hpp"

namespace shukla {

// Sparse row/vector: (index, value) pairs, sorted by index, values nonzero.
template <class F>
using SparseVec = std::vector<std::pair<std::size_t, typename F::Elem>>;

template <class F>
void canonicalize_vec(const F& f, SparseVec<F>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        auto acc = v[i].second;
        for (++j; j < v.size() && v[j].first == v[i].first; ++j) acc = f.add(acc, v[j].second);
        if (!f.is_zero(acc)) v[out++] = {v[i].first, acc};
        i = j;
    }
    v.resize(out);
}

template <class F>
struct SparseMatrix {
    using Elem = typename F::Elem;
    struct Entry {
        std::size_t r, c;
        Elem v;
    };

    std::size_t rows = 0, cols = 0;
    std::vector<Entry> entries;  // sorted by (r,c), unique, nonzero

    bool is_zero() const { return entries.empty(); }
    std::size_t nnz() const { return entries.size(); }

    void canonicalize(const F& f) {
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return a.r != b.r ? a.r < b.r : a.c < b.c;
        });
        std::size_t out = 0;
        for (std::size_t i = 0; i < entries.size();) {
            std::size_t j = i;
            Elem acc = entries[i].v;
            for (++j; j < entries.size() && entries[j].r == entries[i].r && entries[j].c == entries[i].c;
                 ++j)
                acc = f.add(acc, entries[j].v);
            if (!f.is_zero(acc)) {
                entries[out] = entries[i];
                entries[out].v = acc;
                ++out;
            }
            i = j;
        }
        entries.resize(out);
    }

    static SparseMatrix zero(std::size_t r, std::size_t c) { return SparseMatrix{r, c, {}}; }

    static SparseMatrix identity(const F& f, std::size_t n) {
        SparseMatrix m{n, n, {}};
        m.entries.reserve(n);
        for (std::size_t i = 0; i < n; ++i) m.entries.push_back({i, i, f.one()});
        return m;
    }

    bool operator==(const SparseMatrix& o) const {
        if (rows != o.rows || cols != o.cols || entries.size() != o.entries.size()) return false;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].r != o.entries[i].r || entries[i].c != o.entries[i].c ||
                !(entries[i].v == o.entries[i].v))
                return false;
        return true;
    }

    // Columns grouped for iteration: returns ranges into `entries` after
    // sorting a copy by (c,r).
    std::vector<SparseVec<F>> to_columns() const {
        std::vector<SparseVec<F>> cols_out(cols);
        for (const Entry& e : entries) cols_out[e.c].push_back({e.r, e.v});
        return cols_out;
    }

    std::vector<SparseVec<F>> to_rows() const {
        std::vector<SparseVec<F>> rows_out(rows);
        for (const Entry& e : entries) rows_out[e.r].push_back({e.c, e.v});
        return rows_out;
    }

    SparseVec<F> apply(const F& f, const SparseVec<F>& x) const {
        std::map<std::size_t, Elem> acc;
        auto cols_view = to_columns();  // note: O(cols); fine at our scale
        for (const auto& [j, xv] : x) {
            for (const auto& [i, av] : cols_view[j]) {
                auto it = acc.find(i);
                if (it == acc.end())
                    acc.emplace(i, f.mul(av, xv));
                else
                    it->second = f.add(it->second, f.mul(av, xv));
            }
        }
        SparseVec<F> out;
        for (auto& [i, v] : acc)
            if (!f.is_zero(v)) out.push_back({i, v});
        return out;
    }
};

template <class F>
SparseMatrix<F> multiply(const F& f, const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    if (a.cols != b.rows) throw internal_error("ShapeError", "matrix product shape mismatch");
    SparseMatrix<F> out{a.rows, b.cols, {}};
    auto a_cols = a.to_columns();
    // group b's entries by column
    std::vector<typename SparseMatrix<F>::Entry> bs = b.entries;
    std::sort(bs.begin(), bs.end(),
              [](const auto& x, const auto& y) { return x.c != y.c ? x.c < y.c : x.r < y.r; });
    std::size_t i = 0;
    while (i < bs.size()) {
        std::size_t j = i;
        std::size_t col = bs[i].c;
        std::map<std::size_t, typename F::Elem> acc;
        for (; j < bs.size() && bs[j].c == col; ++j) {
            for (const auto& [row, av] : a_cols[bs[j].r]) {
                auto it = acc.find(row);
                auto contrib = f.mul(av, bs[j].v);
                if (it == acc.end())
                    acc.emplace(row, contrib);
                else
                    it->second = f.add(it->second, contrib);
            }
        }
        for (auto& [row, v] : acc)
            if (!f.is_zero(v)) out.entries.push_back({row, col, v});
        i = j;
    }
    out.canonicalize(f);
    return out;
}

template <class F>
SparseMatrix<F> add_scaled(const F& f, const SparseMatrix<F>& a, const SparseMatrix<F>& b,
                           const typename F::Elem& coeff_b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw internal_error("ShapeError", "matrix sum shape mismatch");
    SparseMatrix<F> out{a.rows, a.cols, a.entries};
    for (const auto& e : b.entries) out.entries.push_back({e.r, e.c, f.mul(e.v, coeff_b)});
    out.canonicalize(f);
    return out;
}

template <class F>
SparseMatrix<F> transpose(const F& f, const SparseMatrix<F>& a) {
    SparseMatrix<F> out{a.cols, a.rows, {}};
    out.entries.reserve(a.entries.size());
    for (const auto& e : a.entries) out.entries.push_back({e.c, e.r, e.v});
    out.canonicalize(f);
    return out;
}

// ---------------------------------------------------------------------------
// Row canonicalization.  Over Q rows are kept as primitive integer vectors
// (multiply by the lcm of denominators, divide by the gcd of numerators, make
// the leading coefficient positive); over F_p the leading coefficient is
// scaled to 1.  This is what keeps elimination fraction-free and output
// deterministic.

inline void normalize_row(const RationalField& f, SparseVec<RationalField>& v) {
    (void)f;
    using boost::multiprecision::cpp_int;
    if (v.empty()) return;
    cpp_int l = 1;
    for (auto& [i, x] : v) l = lcm(l, denominator(x));
    cpp_int g = 0;
    for (auto& [i, x] : v) g = gcd(g, cpp_int(numerator(x) * (l / denominator(x))));
    if (numerator(v.front().second) < 0) g = -g;
    for (auto& [i, x] : v) x = RationalField::Elem(numerator(x) * (l / denominator(x)) / g);
}

inline void normalize_row(const PrimeField& f, SparseVec<PrimeField>& v) {
    if (v.empty()) return;
    auto inv = f.inv(v.front().second);
    for (auto& [i, x] : v) x = f.mul(x, inv);
}

// Eliminate `piv`'s leading coordinate from v (v's coefficient there is
// `coeff`); returns rows in integer-primitive / monic form respectively.
template <class F>
SparseVec<F> eliminate(const F& f, const SparseVec<F>& v, const typename F::Elem& coeff,
                       const SparseVec<F>& piv) {
    // v - (coeff / piv_lead) * piv, done fraction-free over Q:
    //   piv_lead * v - coeff * piv  (then re-normalized by the caller loop)
    typename F::Elem cv, cp;
    if constexpr (std::is_same_v<F, RationalField>) {
        cv = piv.front().second;
        cp = f.neg(coeff);
    } else {
        cv = f.one();
        cp = f.neg(coeff);  // piv is monic
    }
    SparseVec<F> out;
    out.reserve(v.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < piv.size()) {
        if (j >= piv.size() || (i < v.size() && v[i].first < piv[j].first)) {
            auto val = f.mul(v[i].second, cv);
            if (!f.is_zero(val)) out.push_back({v[i].first, val});
            ++i;
        } else if (i >= v.size() || piv[j].first < v[i].first) {
            auto val = f.mul(piv[j].second, cp);
            if (!f.is_zero(val)) out.push_back({piv[j].first, val});
            ++j;
        } else {
            auto val = f.add(f.mul(v[i].second, cv), f.mul(piv[j].second, cp));
            if (!f.is_zero(val)) out.push_back({v[i].first, val});
            ++i;
            ++j;
        }
    }
    return out;
}

// Reduced row echelon form maintained incrementally.  Pivots are chosen as
// the leading (smallest-index) coordinate of each inserted row; rows are kept
// fully reduced against each other, sorted by pivot column, in the canonical
// normal form above.  `pivot_limit` restricts pivot columns to [0, limit):
// coordinates at or beyond the limit ride along passively (used for tracking
// solution coefficients in augmented systems).
template <class F>
class Echelon {
public:
    using Elem = typename F::Elem;
    using Row = SparseVec<F>;

    explicit Echelon(const F& f, std::size_t width,
                     std::size_t pivot_limit = static_cast<std::size_t>(-1))
        : f_(f), width_(width), pivot_limit_(std::min(pivot_limit, width)) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    // Full normal form of v modulo the row space: every pivot-column
    // coordinate is eliminated, not just the leading one, so the remainder is
    // supported on free columns (plus passive coordinates >= pivot_limit).
    // Stored rows meet each other's pivot columns only at their own pivot, so
    // every elimination strictly shrinks the set of pivot coordinates in v
    // and the loop terminates.
    Row reduce(Row v) const {
        canonicalize_vec(f_, v);
        Row out = std::move(v);
        normalize_row(f_, out);
        std::size_t start_col = 0;  // coordinates below this are known free
        for (;;) {
            const std::pair<std::size_t, Elem>* hit = nullptr;
            auto begin = std::lower_bound(out.begin(), out.end(), start_col,
                                          [](const auto& e, std::size_t c) { return e.first < c; });
            for (auto it = begin; it != out.end(); ++it) {
                if (it->first >= pivot_limit_) break;
                if (by_pivot_.count(it->first)) {
                    hit = &*it;
                    break;
                }
            }
            if (!hit) return out;
            // The pivot row meets other pivot columns only at its own pivot,
            // so this elimination introduces free-column coordinates only.
            start_col = hit->first + 1;
            out = eliminate(f_, out, hit->second, rows_[by_pivot_.at(hit->first)]);
            normalize_row(f_, out);
        }
    }

    bool contains(const Row& v) const {
        Row r = reduce(v);
        return r.empty() || r.front().first >= pivot_limit_;
    }

    // Insert a row; returns true if the rank grew.
    bool insert(Row v) {
        Row r = reduce(std::move(v));
        if (r.empty() || r.front().first >= pivot_limit_) return false;
        std::size_t piv = r.front().first;
        // keep full reduction: clear column piv from existing rows
        for (auto& row : rows_) {
            auto pos = std::lower_bound(
                row.begin(), row.end(), piv,
                [](const auto& e, std::size_t c) { return e.first < c; });
            if (pos != row.end() && pos->first == piv) {
                row = eliminate(f_, row, pos->second, r);
                normalize_row(f_, row);
            }
        }
        by_pivot_.emplace(piv, rows_.size());
        rows_.push_back(std::move(r));
        return true;
    }

    // Rows sorted by pivot column (the RREF, canonical).
    std::vector<Row> sorted_rows() const {
        std::vector<Row> out;
        out.reserve(rows_.size());
        for (auto& [piv, idx] : by_pivot_) out.push_back(rows_[idx]);
        return out;
    }

    std::vector<std::size_t> pivot_cols() const {
        std::vector<std::size_t> out;
        out.reserve(by_pivot_.size());
        for (auto& [piv, idx] : by_pivot_) out.push_back(piv);
        return out;
    }

    const F& field() const { return f_; }

private:
    F f_;
    std::size_t width_;
    std::size_t pivot_limit_;
    std::vector<Row> rows_;
    std::map<std::size_t, std::size_t> by_pivot_;
};

// ---------------------------------------------------------------------------

template <class F>
struct RankKernel {
    std::size_t rank = 0;
    std::vector<SparseVec<F>> kernel;  // canonical basis vectors, one per free column
};

// Exact rank and kernel basis of a sparse matrix (kernel = nullspace {x : Ax=0}).
template <class F>
RankKernel<F> rank_kernel(const F& f, const SparseMatrix<F>& a) {
    Echelon<F> ech(f, a.cols);
    for (auto& row : a.to_rows()) ech.insert(std::move(row));

    RankKernel<F> out;
    out.rank = ech.rank();
    auto rows = ech.sorted_rows();
    auto pivots = ech.pivot_cols();
    std::vector<bool> is_pivot(a.cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    for (std::size_t free_col = 0; free_col < a.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        SparseVec<F> x;
        // x[free] = 1, x[pivot_i] = -row_i[free]/row_i[pivot_i]
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            auto pos = std::lower_bound(row.begin(), row.end(), free_col,
                                        [](const auto& e, std::size_t c) { return e.first < c; });
            if (pos != row.end() && pos->first == free_col) {
                x.push_back({pivots[i], f.neg(f.mul(pos->second, f.inv(row.front().second)))});
            }
        }
        x.push_back({free_col, f.one()});
        canonicalize_vec(f, x);
        normalize_row(f, x);
        out.kernel.push_back(std::move(x));
    }
    return out;
}

// Exact solve A x = b; returns a particular solution (free variables zero in
// the echelon parameterization) or nullopt when the system is inconsistent.
template <class F>
std::optional<SparseVec<F>> solve(const F& f, const SparseMatrix<F>& a, const SparseVec<F>& b) {
    // Augmented columns (A_j | e_j) with pivoting restricted to the first
    // `rows` coordinates; a final extra slot tracks the fraction-free scaling
    // applied to the inserted right-hand side.
    const std::size_t scale_slot = a.rows + a.cols;
    Echelon<F> ech(f, a.rows + a.cols + 1, a.rows);
    auto columns = a.to_columns();
    for (std::size_t j = 0; j < a.cols; ++j) {
        SparseVec<F> v = columns[j];
        v.push_back({a.rows + j, f.one()});
        ech.insert(std::move(v));
    }
    SparseVec<F> v = b;
    v.push_back({scale_slot, f.one()});
    SparseVec<F> r = ech.reduce(std::move(v));
    if (!r.empty() && r.front().first < a.rows) return std::nullopt;  // b not in column span
    // r = (0 | t | s): s*b - sum_j t_j A_j = 0, so x_j = t_j / s... careful:
    // the reduction computed s*b + sum t_j (A_j|e_j)-eliminations; the tail
    // records the accumulated coefficients with their signs, i.e.
    // s*b - sum_j (-t_j) A_j = 0 ... resolve by direct reconstruction:
    typename F::Elem s = f.zero();
    SparseVec<F> x;
    for (auto& [i, val] : r) {
        if (i == scale_slot)
            s = val;
        else
            x.push_back({i - a.rows, val});
    }
    if (f.is_zero(s))
        throw internal_error("SolveScaleLost", "augmented solve lost its scale slot");
    // remainder = s*b + Σ c_j (A_j|e_j) with first block zero ⇒ A(c/s) = -b
    // ⇒ x_j = -c_j / s.
    auto inv_s = f.inv(s);
    for (auto& [i, val] : x) val = f.neg(f.mul(val, inv_s));
    canonicalize_vec(f, x);
    return x;
}

// Convenience: dense representation (row-major) of a sparse matrix.
template <class F>
std::vector<typename F::Elem> to_dense(const F& f, const SparseMatrix<F>& a) {
    std::vector<typename F::Elem> out(a.rows * a.cols, f.zero());
    for (const auto& e : a.entries) out[e.r * a.cols + e.c] = e.v;
    return out;
}

}  // namespace shukla
