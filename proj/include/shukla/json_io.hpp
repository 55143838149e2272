#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "shukla/cochain.hpp"
#include "shukla/error.hpp"
#include "shukla/field.hpp"
#include "shukla/linalg.hpp"
#include "shukla/presentation.hpp"

namespace shukla {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Read and parse a JSON document; wraps I/O and syntax errors uniformly.
json load_json_file(const std::string& path);

// ---------------------------------------------------------------------------
// Typed parsing of presentation documents.  All structure constants are
// scalar strings ("0", "-1", "2/3", ...); shapes are checked exactly.

template <class F>
typename F::Elem parse_scalar(const F& f, const json& j, const std::string& where) {
    if (!j.is_string())
        throw validation_error(where + ": scalar entries must be strings like \"1\" or \"-2/3\"");
    try {
        return f.parse(j.get<std::string>());
    } catch (const Error& e) {
        // malformed file content is an input rejection, not a usage error
        if (e.category() == ErrorCategory::Usage)
            throw validation_error(where + ": " + e.what());
        throw;
    }
}

template <class F>
std::vector<typename F::Elem> parse_dense(const F& f, const json& j, std::size_t n,
                                          const std::string& where) {
    if (!j.is_array() || j.size() != n)
        throw validation_error(where + ": expected an array of length " + std::to_string(n));
    std::vector<typename F::Elem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(parse_scalar(f, j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <class F>
Cube<F> parse_cube(const F& f, const json& j, std::size_t n1, std::size_t n2, std::size_t n3,
                   const std::string& where) {
    if (!j.is_array() || j.size() != n1)
        throw validation_error(where + ": expected an array of length " + std::to_string(n1));
    Cube<F> c;
    c.n1 = n1;
    c.n2 = n2;
    c.n3 = n3;
    c.data.reserve(n1 * n2 * n3);
    for (std::size_t i = 0; i < n1; ++i) {
        const json& ji = j[i];
        if (!ji.is_array() || ji.size() != n2)
            throw validation_error(where + "[" + std::to_string(i) + "]: expected an array of length " +
                                   std::to_string(n2));
        for (std::size_t k = 0; k < n2; ++k) {
            auto row = parse_dense(f, ji[k], n3,
                                   where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
            for (auto& v : row) c.data.push_back(std::move(v));
        }
    }
    return c;
}

// Common document plumbing -------------------------------------------------

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& what);
std::size_t doc_dim(const json& j, const std::string& what);
std::vector<std::string> doc_labels(const json& j, std::size_t dim, const std::string& what);
void check_doc_field(const json& j, const FieldSpec& spec, const std::string& what);
void check_doc_kind(const json& j, const std::string& expected, const std::string& what);

// Parsed algebra document (A or R slot).
template <class F>
struct ParsedAlgebra {
    AlgebraData<F> alg;
    std::optional<Cube<F>> a_action;               // dimA x dim x dim when given
    std::optional<std::vector<typename F::Elem>> augmentation;  // character to K
};

template <class F>
ParsedAlgebra<F> parse_algebra_doc(const F& f, const FieldSpec& spec, const json& j,
                                   std::optional<std::size_t> dimA, const std::string& what) {
    check_keys(j, {"kind", "field", "dim", "labels", "mult", "unit", "a_action", "augmentation"},
               what);
    check_doc_kind(j, "algebra", what);
    check_doc_field(j, spec, what);
    ParsedAlgebra<F> out;
    std::size_t dim = doc_dim(j, what);
    out.alg.dim = dim;
    out.alg.labels = doc_labels(j, dim, what);
    if (!j.contains("mult")) throw validation_error(what + ": missing \"mult\"");
    if (!j.contains("unit")) throw validation_error(what + ": missing \"unit\"");
    out.alg.mult = parse_cube(f, j["mult"], dim, dim, dim, what + ".mult");
    out.alg.unit = parse_dense(f, j["unit"], dim, what + ".unit");
    if (j.contains("a_action")) {
        if (!dimA)
            throw validation_error(what + ": \"a_action\" is only meaningful for the R slot");
        out.a_action = parse_cube(f, j["a_action"], *dimA, dim, dim, what + ".a_action");
    }
    if (j.contains("augmentation"))
        out.augmentation = parse_dense(f, j["augmentation"], dim, what + ".augmentation");
    return out;
}

// Parsed bimodule document (M slot of the associative pipeline).
template <class F>
struct ParsedModule {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    Cube<F> left;   // dimR x dimM x dimM
    Cube<F> right;  // dimM x dimR x dimM
};

template <class F>
ParsedModule<F> parse_module_doc(const F& f, const FieldSpec& spec, const json& j, std::size_t dimR,
                                 const std::string& what) {
    check_keys(j, {"kind", "field", "dim", "labels", "left", "right"}, what);
    check_doc_kind(j, "module", what);
    check_doc_field(j, spec, what);
    ParsedModule<F> out;
    out.dim = doc_dim(j, what);
    out.labels = doc_labels(j, out.dim, what);
    if (!j.contains("left")) throw validation_error(what + ": missing \"left\"");
    if (!j.contains("right")) throw validation_error(what + ": missing \"right\"");
    out.left = parse_cube(f, j["left"], dimR, out.dim, out.dim, what + ".left");
    out.right = parse_cube(f, j["right"], out.dim, dimR, out.dim, what + ".right");
    return out;
}

// Parsed Lie algebra document (L slot).
template <class F>
struct ParsedLie {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    Cube<F> bracket;
    std::optional<Cube<F>> a_action;  // dimA x dim x dim
};

template <class F>
ParsedLie<F> parse_lie_doc(const F& f, const FieldSpec& spec, const json& j, std::size_t dimA,
                           const std::string& what) {
    check_keys(j, {"kind", "field", "dim", "labels", "bracket", "a_action"}, what);
    check_doc_kind(j, "lie_algebra", what);
    check_doc_field(j, spec, what);
    ParsedLie<F> out;
    out.dim = doc_dim(j, what);
    out.labels = doc_labels(j, out.dim, what);
    if (!j.contains("bracket")) throw validation_error(what + ": missing \"bracket\"");
    out.bracket = parse_cube(f, j["bracket"], out.dim, out.dim, out.dim, what + ".bracket");
    if (j.contains("a_action"))
        out.a_action = parse_cube(f, j["a_action"], dimA, out.dim, out.dim, what + ".a_action");
    return out;
}

// Parsed Lie module document.
template <class F>
struct ParsedLieModule {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    Cube<F> action;                   // dimL x dimM x dimM
    std::optional<Cube<F>> a_action;  // dimA x dimM x dimM
};

template <class F>
ParsedLieModule<F> parse_lie_module_doc(const F& f, const FieldSpec& spec, const json& j,
                                        std::size_t dimA, std::size_t dimL,
                                        const std::string& what) {
    check_keys(j, {"kind", "field", "dim", "labels", "action", "a_action"}, what);
    check_doc_kind(j, "lie_module", what);
    check_doc_field(j, spec, what);
    ParsedLieModule<F> out;
    out.dim = doc_dim(j, what);
    out.labels = doc_labels(j, out.dim, what);
    if (!j.contains("action")) throw validation_error(what + ": missing \"action\"");
    out.action = parse_cube(f, j["action"], dimL, out.dim, out.dim, what + ".action");
    if (j.contains("a_action"))
        out.a_action = parse_cube(f, j["a_action"], dimA, out.dim, out.dim, what + ".a_action");
    return out;
}

// Identity cube of size n for the trivial action of a 1-dimensional A.
template <class F>
Cube<F> identity_action(const F& f, std::size_t dimA, std::size_t n) {
    Cube<F> c;
    c.n1 = dimA;
    c.n2 = n;
    c.n3 = n;
    c.data.assign(dimA * n * n, f.zero());
    for (std::size_t a = 0; a < dimA; ++a)
        for (std::size_t i = 0; i < n; ++i) c.data[(a * n + i) * n + i] = f.one();
    return c;
}

// Assemble the full associative-pipeline context from three documents.
template <class F>
AssocContext<F> context_from_docs(const F& f, const FieldSpec& spec, const json& a_doc,
                                  const json& r_doc, const json& m_doc) {
    AssocContext<F> ctx{f, {}, {}, {}, {}, {}, {}, {}};
    auto pa = parse_algebra_doc(f, spec, a_doc, std::nullopt, "A");
    ctx.A = std::move(pa.alg);
    auto pr = parse_algebra_doc(f, spec, r_doc, ctx.A.dim, "R");
    ctx.R = std::move(pr.alg);
    if (pr.a_action) {
        ctx.a_on_r = std::move(*pr.a_action);
    } else if (ctx.R.dim == ctx.A.dim) {
        // default: A acting on itself (the R = A situation) by multiplication
        ctx.a_on_r = ctx.R.mult;
    } else {
        throw validation_error("R: missing \"a_action\" (required unless R reuses A's tables)");
    }
    auto pm = parse_module_doc(f, spec, m_doc, ctx.R.dim, "M");
    ctx.dimM = pm.dim;
    ctx.m_labels = std::move(pm.labels);
    ctx.left = std::move(pm.left);
    ctx.right = std::move(pm.right);
    return ctx;
}

template <class F>
LieContext<F> lie_context_from_docs(const F& f, const FieldSpec& spec, const json& a_doc,
                                    const json& l_doc, const json& m_doc) {
    LieContext<F> ctx{f, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    auto pa = parse_algebra_doc(f, spec, a_doc, std::nullopt, "A");
    ctx.A = std::move(pa.alg);
    auto pl = parse_lie_doc(f, spec, l_doc, ctx.A.dim, "L");
    ctx.dimL = pl.dim;
    ctx.l_labels = std::move(pl.labels);
    ctx.bracket = std::move(pl.bracket);
    if (pl.a_action)
        ctx.a_on_l = std::move(*pl.a_action);
    else if (ctx.A.dim == 1)
        ctx.a_on_l = identity_action(f, 1, ctx.dimL);
    else
        throw validation_error("L: missing \"a_action\" (required when dim A > 1)");
    auto pm = parse_lie_module_doc(f, spec, m_doc, ctx.A.dim, ctx.dimL, "M");
    ctx.dimM = pm.dim;
    ctx.m_labels = std::move(pm.labels);
    ctx.action = std::move(pm.action);
    if (pm.a_action)
        ctx.a_on_m = std::move(*pm.a_action);
    else if (ctx.A.dim == 1)
        ctx.a_on_m = identity_action(f, 1, ctx.dimM);
    else
        throw validation_error("M: missing \"a_action\" (required when dim A > 1)");
    return ctx;
}

// ---------------------------------------------------------------------------
// Cochain (de)serialization: {"degree": n, "dims": [...], "entries":
// [[flat_index, "scalar"], ...]}.

template <class F>
ojson cochain_to_json(const F& f, std::size_t degree, const std::vector<std::size_t>& dims,
                      const SparseVec<F>& v) {
    ojson out;
    out["degree"] = degree;
    out["dims"] = dims;
    ojson entries = ojson::array();
    for (auto& [i, val] : v) entries.push_back(ojson::array({i, f.render(val)}));
    out["entries"] = std::move(entries);
    return out;
}

template <class F>
SparseVec<F> cochain_from_json(const F& f, const json& j, std::size_t expected_dim,
                               const std::string& what) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw validation_error(what + ": expected a cochain object with an \"entries\" array");
    SparseVec<F> out;
    for (const auto& e : j["entries"]) {
        const bool idx_ok =
            e.is_array() && e.size() == 2 &&
            (e[0].is_number_unsigned() ||
             (e[0].is_number_integer() && e[0].get<long long>() >= 0));
        if (!idx_ok)
            throw validation_error(what + ": entries must be [index, \"scalar\"] pairs");
        std::size_t idx = e[0].is_number_unsigned()
                              ? e[0].get<std::size_t>()
                              : static_cast<std::size_t>(e[0].get<long long>());
        if (idx >= expected_dim)
            throw validation_error(what + ": entry index " + std::to_string(idx) +
                                   " out of range (space dimension " +
                                   std::to_string(expected_dim) + ")");
        out.push_back({idx, parse_scalar(f, e[1], what + ".entries")});
    }
    canonicalize_vec(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Matrix export: JSON triplets and MatrixMarket coordinate text.  The triplet
// form round-trips through matrix_from_json below.

template <class F>
ojson matrix_to_json(const F& f, const SparseMatrix<F>& m) {
    ojson out;
    out["rows"] = m.rows;
    out["cols"] = m.cols;
    ojson entries = ojson::array();
    for (const auto& e : m.entries)
        entries.push_back(ojson::array({e.r, e.c, f.render(e.v)}));
    out["entries"] = std::move(entries);
    return out;
}

inline std::size_t json_index(const json& j, const std::string& what) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0)
        return static_cast<std::size_t>(j.get<long long>());
    throw validation_error(what + ": expected a non-negative integer index");
}

// Accepts the triplet form {"rows", "cols", "entries": [[r, c, "v"], ...]} or
// a dense array of rows; the declared shape must match the expected one.
template <class F>
SparseMatrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows, std::size_t cols,
                                 const std::string& what) {
    SparseMatrix<F> out{rows, cols, {}};
    if (j.is_array()) {
        if (j.size() != rows) throw validation_error(what + ": expected " + std::to_string(rows) +
                                                     " rows");
        for (std::size_t r = 0; r < rows; ++r) {
            if (!j[r].is_array() || j[r].size() != cols)
                throw validation_error(what + ": row " + std::to_string(r) + " must have " +
                                       std::to_string(cols) + " entries");
            for (std::size_t c = 0; c < cols; ++c) {
                auto v = parse_scalar(f, j[r][c], what);
                if (!f.is_zero(v)) out.entries.push_back({r, c, v});
            }
        }
        out.canonicalize(f);
        return out;
    }
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw validation_error(what + ": expected a matrix object with an \"entries\" array");
    if (j.contains("rows") && json_index(j["rows"], what + ".rows") != rows)
        throw validation_error(what + ": declared row count does not match the expected " +
                               std::to_string(rows));
    if (j.contains("cols") && json_index(j["cols"], what + ".cols") != cols)
        throw validation_error(what + ": declared column count does not match the expected " +
                               std::to_string(cols));
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 3)
            throw validation_error(what + ": entries must be [row, col, \"scalar\"] triplets");
        std::size_t r = json_index(e[0], what + ".entries");
        std::size_t c = json_index(e[1], what + ".entries");
        if (r >= rows || c >= cols)
            throw validation_error(what + ": entry (" + std::to_string(r) + "," +
                                   std::to_string(c) + ") out of range");
        out.entries.push_back({r, c, parse_scalar(f, e[2], what + ".entries")});
    }
    out.canonicalize(f);
    return out;
}

template <class F>
ojson cube_to_json(const F& f, const Cube<F>& c) {
    ojson out = ojson::array();
    for (std::size_t i = 0; i < c.n1; ++i) {
        ojson plane = ojson::array();
        for (std::size_t j = 0; j < c.n2; ++j) {
            ojson row = ojson::array();
            for (std::size_t k = 0; k < c.n3; ++k) row.push_back(f.render(c.at(i, j, k)));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

template <class F>
ojson dense_to_json(const F& f, const Dense<F>& v) {
    ojson out = ojson::array();
    for (const auto& x : v) out.push_back(f.render(x));
    return out;
}

template <class F>
std::string matrix_to_matrixmarket(const F& f, const SparseMatrix<F>& m) {
    std::string out = "%%MatrixMarket matrix coordinate ";
    out += std::is_same_v<F, RationalField> ? "rational" : "integer";
    out += " general\n";
    out += std::to_string(m.rows) + " " + std::to_string(m.cols) + " " +
           std::to_string(m.entries.size()) + "\n";
    for (const auto& e : m.entries)
        out += std::to_string(e.r + 1) + " " + std::to_string(e.c + 1) + " " + f.render(e.v) + "\n";
    return out;
}

}  // namespace shukla
