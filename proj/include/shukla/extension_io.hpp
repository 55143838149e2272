#pragma once

#include <string>
#include <utility>

#include "shukla/extensions.hpp"
#include "shukla/json_io.hpp"

namespace shukla {

// ---------------------------------------------------------------------------
// JSON bundles for the degree-2/3 calculus: cocycle data as flat cochains,
// extensions and crossed extensions as presentations plus matrices.  All
// shapes are pinned by the ambient context at parse time.  Emitted documents
// carry the field tag so they refuse to load under a mismatched run.

template <class F>
std::string field_tag(const F& f) {
    if constexpr (std::is_same_v<F, PrimeField>)
        return "Fp:" + std::to_string(f.p);
    else
        return "Q";
}

template <class F>
ojson two_cocycle_to_json(const F& f, const AssocContext<F>& ctx, const TwoCocycleDatum<F>& d) {
    ojson out;
    out["kind"] = "cocycle2";
    out["field"] = field_tag(f);
    out["f"] = cochain_to_json(f, 2, {ctx.R.dim, ctx.R.dim, ctx.dimM}, d.f);
    out["g"] = cochain_to_json(f, 2, {ctx.A.dim, ctx.R.dim, ctx.dimM}, d.g);
    return out;
}

template <class F>
TwoCocycleDatum<F> two_cocycle_from_json(const F& f, const FieldSpec& spec, const json& j,
                                         const AssocContext<F>& ctx) {
    check_keys(j, {"kind", "field", "f", "g"}, "cocycle2");
    check_doc_kind(j, "cocycle2", "cocycle2");
    check_doc_field(j, spec, "cocycle2");
    if (!j.contains("f") || !j.contains("g"))
        throw validation_error("cocycle2: needs \"f\" and \"g\" cochains");
    TwoCocycleDatum<F> d;
    d.f = cochain_from_json(f, j["f"], ctx.R.dim * ctx.R.dim * ctx.dimM, "cocycle2.f");
    d.g = cochain_from_json(f, j["g"], ctx.A.dim * ctx.R.dim * ctx.dimM, "cocycle2.g");
    return d;
}

template <class F>
ojson three_cocycle_to_json(const F& f, const AssocContext<F>& ctx,
                            const ThreeCocycleDatum<F>& d) {
    ojson out;
    out["kind"] = "cocycle3";
    out["field"] = field_tag(f);
    out["f"] = cochain_to_json(f, 3, {ctx.R.dim, ctx.R.dim, ctx.R.dim, ctx.dimM}, d.f);
    out["g"] = cochain_to_json(f, 3, {ctx.A.dim, ctx.A.dim, ctx.R.dim, ctx.R.dim, ctx.dimM}, d.g);
    out["h"] = cochain_to_json(f, 3, {ctx.A.dim, ctx.A.dim, ctx.R.dim, ctx.dimM}, d.h);
    return out;
}

template <class F>
ThreeCocycleDatum<F> three_cocycle_from_json(const F& f, const FieldSpec& spec, const json& j,
                                             const AssocContext<F>& ctx) {
    check_keys(j, {"kind", "field", "f", "g", "h"}, "cocycle3");
    check_doc_kind(j, "cocycle3", "cocycle3");
    check_doc_field(j, spec, "cocycle3");
    if (!j.contains("f") || !j.contains("g") || !j.contains("h"))
        throw validation_error("cocycle3: needs \"f\", \"g\" and \"h\" cochains");
    const std::size_t da = ctx.A.dim, dr = ctx.R.dim, dm = ctx.dimM;
    ThreeCocycleDatum<F> d;
    d.f = cochain_from_json(f, j["f"], dr * dr * dr * dm, "cocycle3.f");
    d.g = cochain_from_json(f, j["g"], da * da * dr * dr * dm, "cocycle3.g");
    d.h = cochain_from_json(f, j["h"], da * da * dr * dm, "cocycle3.h");
    return d;
}

template <class F>
ojson extension_to_json(const F& f, const AbelianExtension<F>& e) {
    ojson alg;
    alg["kind"] = "algebra";
    alg["dim"] = e.S.dim;
    alg["labels"] = e.S.labels;
    alg["mult"] = cube_to_json(f, e.S.mult);
    alg["unit"] = dense_to_json(f, e.S.unit);
    alg["a_action"] = cube_to_json(f, e.a_on_s);
    ojson out;
    out["kind"] = "extension";
    out["field"] = field_tag(f);
    out["algebra"] = std::move(alg);
    out["inclusion"] = matrix_to_json(f, e.iota);
    out["projection"] = matrix_to_json(f, e.pi);
    return out;
}

template <class F>
AbelianExtension<F> extension_from_json(const F& f, const FieldSpec& spec, const json& j,
                                        const AssocContext<F>& ctx) {
    check_keys(j, {"kind", "field", "algebra", "inclusion", "projection"}, "extension");
    check_doc_kind(j, "extension", "extension");
    check_doc_field(j, spec, "extension");
    for (const char* k : {"algebra", "inclusion", "projection"})
        if (!j.contains(k))
            throw validation_error(std::string("extension: missing \"") + k + "\"");
    auto pa = parse_algebra_doc(f, spec, j["algebra"], ctx.A.dim, "extension.algebra");
    if (!pa.a_action)
        throw validation_error("extension.algebra: missing \"a_action\" (the base action on the "
                               "total algebra)");
    AbelianExtension<F> e;
    e.S = std::move(pa.alg);
    e.a_on_s = std::move(*pa.a_action);
    e.iota = matrix_from_json(f, j["inclusion"], e.S.dim, ctx.dimM, "extension.inclusion");
    e.pi = matrix_from_json(f, j["projection"], ctx.R.dim, e.S.dim, "extension.projection");
    return e;
}

template <class F>
ojson crossed_to_json(const F& f, const CrossedExtension<F>& ce) {
    ojson alg;
    alg["kind"] = "algebra";
    alg["dim"] = ce.C0.dim;
    alg["labels"] = ce.C0.labels;
    alg["mult"] = cube_to_json(f, ce.C0.mult);
    alg["unit"] = dense_to_json(f, ce.C0.unit);
    alg["a_action"] = cube_to_json(f, ce.a_on_c0);
    ojson bim;
    bim["kind"] = "module";
    bim["dim"] = ce.dimC1;
    bim["labels"] = ce.c1_labels;
    bim["left"] = cube_to_json(f, ce.c0_left);
    bim["right"] = cube_to_json(f, ce.c0_right);
    ojson out;
    out["kind"] = "crossed";
    out["field"] = field_tag(f);
    out["algebra"] = std::move(alg);
    out["bimodule"] = std::move(bim);
    out["boundary"] = matrix_to_json(f, ce.boundary);
    out["projection"] = matrix_to_json(f, ce.pi);
    out["inclusion"] = matrix_to_json(f, ce.iota);
    return out;
}

template <class F>
CrossedExtension<F> crossed_from_json(const F& f, const FieldSpec& spec, const json& j,
                                      const AssocContext<F>& ctx) {
    check_keys(j, {"kind", "field", "algebra", "bimodule", "boundary", "projection", "inclusion"},
               "crossed");
    check_doc_kind(j, "crossed", "crossed");
    check_doc_field(j, spec, "crossed");
    for (const char* k : {"algebra", "bimodule", "boundary", "projection", "inclusion"})
        if (!j.contains(k)) throw validation_error(std::string("crossed: missing \"") + k + "\"");
    auto pa = parse_algebra_doc(f, spec, j["algebra"], ctx.A.dim, "crossed.algebra");
    if (!pa.a_action)
        throw validation_error("crossed.algebra: missing \"a_action\" (the base action on the "
                               "degree-zero algebra)");
    auto pm = parse_module_doc(f, spec, j["bimodule"], pa.alg.dim, "crossed.bimodule");
    CrossedExtension<F> ce;
    ce.C0 = std::move(pa.alg);
    ce.a_on_c0 = std::move(*pa.a_action);
    ce.dimC1 = pm.dim;
    ce.c1_labels = std::move(pm.labels);
    ce.c0_left = std::move(pm.left);
    ce.c0_right = std::move(pm.right);
    ce.boundary = matrix_from_json(f, j["boundary"], ce.C0.dim, ce.dimC1, "crossed.boundary");
    ce.pi = matrix_from_json(f, j["projection"], ctx.R.dim, ce.C0.dim, "crossed.projection");
    ce.iota = matrix_from_json(f, j["inclusion"], ce.dimC1, ctx.dimM, "crossed.inclusion");
    return ce;
}

}  // namespace shukla
