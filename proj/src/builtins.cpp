#include "shukla/builtins.hpp"

#include <cstdlib>

#include "shukla/error.hpp"

namespace shukla {

using json = nlohmann::json;

namespace {

using Table3 = std::vector<std::vector<std::vector<std::string>>>;

Table3 zero_cube(std::size_t n1, std::size_t n2, std::size_t n3) {
    return Table3(n1, std::vector<std::vector<std::string>>(n2, std::vector<std::string>(n3, "0")));
}

// name -> (base, optional numeric parameter), e.g. "trunc_poly:3"
struct NameParts {
    std::string base;
    bool has_param = false;
    std::size_t param = 0;
};

NameParts split_name(const std::string& name) {
    NameParts out;
    auto pos = name.find(':');
    if (pos == std::string::npos) {
        out.base = name;
        return out;
    }
    out.base = name.substr(0, pos);
    std::string tail = name.substr(pos + 1);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
        throw validation_error("builtin parameter must be a nonnegative integer: " + name);
    out.has_param = true;
    out.param = static_cast<std::size_t>(std::strtoull(tail.c_str(), nullptr, 10));
    return out;
}

json base_field_doc() {
    json j;
    j["kind"] = "algebra";
    j["dim"] = 1;
    j["labels"] = {"1"};
    j["mult"] = Table3{{{"1"}}};
    j["unit"] = {"1"};
    j["augmentation"] = {"1"};
    return j;
}

json dual_numbers_doc() {
    json j;
    j["kind"] = "algebra";
    j["dim"] = 2;
    j["labels"] = {"1", "e"};
    Table3 mult = zero_cube(2, 2, 2);
    mult[0][0][0] = "1";  // 1*1 = 1
    mult[0][1][1] = "1";  // 1*e = e
    mult[1][0][1] = "1";  // e*1 = e
    // e*e = 0
    j["mult"] = mult;
    j["unit"] = {"1", "0"};
    j["augmentation"] = {"1", "0"};
    return j;
}

json k_times_k_doc() {
    json j;
    j["kind"] = "algebra";
    j["dim"] = 2;
    j["labels"] = {"u", "v"};
    Table3 mult = zero_cube(2, 2, 2);
    mult[0][0][0] = "1";  // u*u = u
    mult[1][1][1] = "1";  // v*v = v
    j["mult"] = mult;
    j["unit"] = {"1", "1"};
    j["augmentation"] = {"1", "0"};  // first-factor character
    return j;
}

json trunc_poly_doc(std::size_t n) {
    if (n < 1) throw validation_error("trunc_poly:<n> needs n >= 1");
    json j;
    j["kind"] = "algebra";
    j["dim"] = n;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
    j["labels"] = labels;
    Table3 mult = zero_cube(n, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (i + k < n) mult[i][k][i + k] = "1";
    j["mult"] = mult;
    std::vector<std::string> unit(n, "0");
    unit[0] = "1";
    j["unit"] = unit;
    std::vector<std::string> aug(n, "0");
    aug[0] = "1";
    j["augmentation"] = aug;
    return j;
}

std::vector<std::string> doc_augmentation(const json& doc, const std::string& who) {
    if (doc.contains("augmentation")) {
        std::vector<std::string> out;
        for (const auto& s : doc["augmentation"]) {
            if (!s.is_string()) throw validation_error(who + ": augmentation must hold strings");
            out.push_back(s.get<std::string>());
        }
        return out;
    }
    std::size_t dim = doc.value("dim", std::size_t{0});
    if (dim == 1 && doc.contains("unit") && doc["unit"].is_array() && doc["unit"].size() == 1 &&
        doc["unit"][0] == "1")
        return {"1"};
    throw validation_error(who + ": contextual builtin needs an \"augmentation\" character in the "
                           "referenced presentation");
}

// A acting through its augmentation character: a . x = aug(a) x.
Table3 augmentation_action(const std::vector<std::string>& aug, std::size_t n) {
    Table3 act = zero_cube(aug.size(), n, n);
    for (std::size_t a = 0; a < aug.size(); ++a)
        for (std::size_t i = 0; i < n; ++i) act[a][i][i] = aug[a];
    return act;
}

json with_aug_action(json algebra_doc, const json& a_doc, const std::string& who) {
    auto aug = doc_augmentation(a_doc, who);
    std::size_t n = algebra_doc["dim"].get<std::size_t>();
    algebra_doc["a_action"] = augmentation_action(aug, n);
    return algebra_doc;
}

json quotient_k_doc(const json& a_doc) {
    json j = base_field_doc();
    return with_aug_action(std::move(j), a_doc, "quotient_k");
}

json quotient_point_algebra(const json& a_doc) {
    if (!a_doc.contains("dim") || a_doc["dim"].get<std::size_t>() != 2)
        throw validation_error("quotient_point expects a 2-dimensional A (such as k_times_k)");
    json j;
    j["kind"] = "algebra";
    j["dim"] = 1;
    j["labels"] = {"u"};
    j["mult"] = Table3{{{"1"}}};
    j["unit"] = {"1"};
    j["augmentation"] = {"1"};
    // first basis element of A acts by 1, second by 0
    j["a_action"] = Table3{{{"1"}}, {{"0"}}};
    return j;
}

json regular_module_doc(const json& r_doc) {
    if (!r_doc.contains("mult")) throw validation_error("regular_module needs R's tables");
    json j;
    j["kind"] = "module";
    j["dim"] = r_doc["dim"];
    if (r_doc.contains("labels")) j["labels"] = r_doc["labels"];
    j["left"] = r_doc["mult"];
    j["right"] = r_doc["mult"];
    return j;
}

json trivial_module_doc(const json& r_doc) {
    auto aug = doc_augmentation(r_doc, "trivial_module");
    std::size_t dimR = aug.size();
    json j;
    j["kind"] = "module";
    j["dim"] = 1;
    j["labels"] = {"m"};
    Table3 left = zero_cube(dimR, 1, 1);
    Table3 right = zero_cube(1, dimR, 1);
    for (std::size_t r = 0; r < dimR; ++r) {
        left[r][0][0] = aug[r];
        right[0][r][0] = aug[r];
    }
    j["left"] = left;
    j["right"] = right;
    return j;
}

json zero_module_doc(const json& r_doc) {
    std::size_t dimR = r_doc.value("dim", std::size_t{0});
    json j;
    j["kind"] = "module";
    j["dim"] = 0;
    j["labels"] = json::array();
    j["left"] = zero_cube(dimR, 0, 0);
    j["right"] = zero_cube(0, dimR, 0);
    return j;
}

json sl2_doc(const json& a_doc) {
    if (!a_doc.contains("dim") || a_doc["dim"].get<std::size_t>() != 1)
        throw validation_error("sl2 requires a 1-dimensional A");
    json j;
    j["kind"] = "lie_algebra";
    j["dim"] = 3;
    j["labels"] = {"e", "f", "h"};
    Table3 br = zero_cube(3, 3, 3);
    // [e,f] = h, [h,e] = 2e, [h,f] = -2f
    br[0][1][2] = "1";
    br[1][0][2] = "-1";
    br[2][0][0] = "2";
    br[0][2][0] = "-2";
    br[2][1][1] = "-2";
    br[1][2][1] = "2";
    j["bracket"] = br;
    return j;
}

json abelian_lie_doc(std::size_t n, const json& a_doc) {
    json j;
    j["kind"] = "lie_algebra";
    j["dim"] = n;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    j["labels"] = labels;
    j["bracket"] = zero_cube(n, n, n);
    std::size_t dimA = a_doc.value("dim", std::size_t{1});
    if (dimA > 1) {
        auto aug = doc_augmentation(a_doc, "abelian_lie");
        j["a_action"] = augmentation_action(aug, n);
    }
    return j;
}

json quotient_point_lie(const json& a_doc) {
    if (!a_doc.contains("dim") || a_doc["dim"].get<std::size_t>() != 2)
        throw validation_error("quotient_point expects a 2-dimensional A (such as k_times_k)");
    json j;
    j["kind"] = "lie_algebra";
    j["dim"] = 1;
    j["labels"] = {"x"};
    j["bracket"] = zero_cube(1, 1, 1);
    j["a_action"] = Table3{{{"1"}}, {{"0"}}};
    return j;
}

json trivial_lie_module_doc(const json& a_doc, const json& l_doc) {
    std::size_t dimL = l_doc.value("dim", std::size_t{0});
    std::size_t dimA = a_doc.value("dim", std::size_t{1});
    json j;
    j["kind"] = "lie_module";
    j["dim"] = 1;
    j["labels"] = {"m"};
    j["action"] = zero_cube(dimL, 1, 1);
    if (dimA > 1) {
        auto aug = doc_augmentation(a_doc, "trivial_module");
        j["a_action"] = augmentation_action(aug, 1);
    }
    return j;
}

json adjoint_module_doc(const json& a_doc, const json& l_doc) {
    if (!l_doc.contains("bracket")) throw validation_error("adjoint_module needs L's bracket");
    json j;
    j["kind"] = "lie_module";
    j["dim"] = l_doc["dim"];
    if (l_doc.contains("labels")) j["labels"] = l_doc["labels"];
    j["action"] = l_doc["bracket"];
    std::size_t dimA = a_doc.value("dim", std::size_t{1});
    if (dimA > 1) {
        if (!l_doc.contains("a_action"))
            throw validation_error("adjoint_module: L carries no a_action to inherit");
        j["a_action"] = l_doc["a_action"];
    }
    return j;
}

json zero_lie_module_doc(const json& a_doc, const json& l_doc) {
    std::size_t dimL = l_doc.value("dim", std::size_t{0});
    std::size_t dimA = a_doc.value("dim", std::size_t{1});
    json j;
    j["kind"] = "lie_module";
    j["dim"] = 0;
    j["labels"] = json::array();
    j["action"] = zero_cube(dimL, 0, 0);
    if (dimA > 1) j["a_action"] = zero_cube(dimA, 0, 0);
    return j;
}

}  // namespace

const std::vector<BuiltinInfo>& builtin_catalog() {
    static const std::vector<BuiltinInfo> catalog = {
        {"base_field", "the base field K (A slot; alias for quotient_k / trivial_module in "
                       "R / M slots)"},
        {"dual_numbers", "K[e]/(e^2); in the R slot A acts through its augmentation"},
        {"k_times_k", "K x K with orthogonal idempotents u, v"},
        {"trunc_poly:n", "K[t]/(t^n); in the R slot A acts through its augmentation"},
        {"r_equals_a", "R slot: a copy of A acting on itself by multiplication"},
        {"quotient_point", "R or L slot over a 2-dimensional A: the first-factor quotient"},
        {"quotient_k", "R slot: K as an A-algebra through A's augmentation"},
        {"regular_module", "M slot: R as a bimodule over itself (LM slot: adjoint_module)"},
        {"trivial_module", "M slot: K through R's augmentation (LM slot: zero action)"},
        {"adjoint_module", "LM slot: L acting on itself by the bracket"},
        {"zero_module", "M or LM slot: the zero module"},
        {"sl2", "L slot over A = K: traceless 2x2 matrices e, f, h"},
        {"abelian_lie:n", "L slot: n-dimensional abelian Lie algebra"},
    };
    return catalog;
}

bool is_builtin_ref(const std::string& s) { return s.rfind("builtin:", 0) == 0; }

std::string builtin_name_of_ref(const std::string& s) { return s.substr(8); }

bool builtin_exists(const std::string& name) {
    NameParts parts = split_name(name);
    static const char* bases[] = {"base_field",     "dual_numbers",   "k_times_k",
                                  "trunc_poly",     "r_equals_a",     "quotient_point",
                                  "quotient_k",     "regular_module", "trivial_module",
                                  "adjoint_module", "zero_module",    "sl2",
                                  "abelian_lie"};
    for (const char* b : bases)
        if (parts.base == b) return true;
    return false;
}

json builtin_doc(const std::string& name, Slot slot, const json* a_doc, const json* rl_doc) {
    NameParts parts = split_name(name);
    const std::string& b = parts.base;
    auto need_a = [&]() -> const json& {
        if (!a_doc) throw internal_error("BuiltinContext", "A document missing for " + name);
        return *a_doc;
    };
    auto need_rl = [&]() -> const json& {
        if (!rl_doc) throw internal_error("BuiltinContext", "context document missing for " + name);
        return *rl_doc;
    };

    switch (slot) {
        case Slot::A: {
            if (b == "base_field") return base_field_doc();
            if (b == "dual_numbers") return dual_numbers_doc();
            if (b == "k_times_k") return k_times_k_doc();
            if (b == "trunc_poly") return trunc_poly_doc(parts.has_param ? parts.param : 2);
            break;
        }
        case Slot::R: {
            if (b == "r_equals_a") {
                json j = need_a();
                j.erase("a_action");  // parser default: A acting on its own tables
                return j;
            }
            if (b == "base_field" || b == "quotient_k") return quotient_k_doc(need_a());
            if (b == "quotient_point") return quotient_point_algebra(need_a());
            if (b == "dual_numbers") return with_aug_action(dual_numbers_doc(), need_a(), name);
            if (b == "k_times_k") return with_aug_action(k_times_k_doc(), need_a(), name);
            if (b == "trunc_poly")
                return with_aug_action(trunc_poly_doc(parts.has_param ? parts.param : 2), need_a(),
                                       name);
            break;
        }
        case Slot::M: {
            if (b == "regular_module") return regular_module_doc(need_rl());
            if (b == "base_field" || b == "trivial_module") return trivial_module_doc(need_rl());
            if (b == "zero_module") return zero_module_doc(need_rl());
            break;
        }
        case Slot::L: {
            if (b == "sl2") return sl2_doc(need_a());
            if (b == "abelian_lie")
                return abelian_lie_doc(parts.has_param ? parts.param : 1, need_a());
            if (b == "base_field") return abelian_lie_doc(1, need_a());
            if (b == "quotient_point") return quotient_point_lie(need_a());
            break;
        }
        case Slot::LM: {
            if (b == "trivial_module" || b == "base_field")
                return trivial_lie_module_doc(need_a(), need_rl());
            if (b == "adjoint_module" || b == "regular_module")
                return adjoint_module_doc(need_a(), need_rl());
            if (b == "zero_module") return zero_lie_module_doc(need_a(), need_rl());
            break;
        }
    }
    throw validation_error("builtin \"" + name + "\" does not fit this slot");
}

json builtin_emit(const std::string& name) {
    if (!builtin_exists(name)) throw usage_error("unknown builtin: " + name);
    json kfield = base_field_doc();
    NameParts parts = split_name(name);
    const std::string& b = parts.base;
    // pick the most natural slot for a standalone document
    if (b == "base_field" || b == "dual_numbers" || b == "k_times_k" || b == "trunc_poly")
        return builtin_doc(name, Slot::A, nullptr, nullptr);
    if (b == "r_equals_a" || b == "quotient_k") return builtin_doc(name, Slot::R, &kfield, nullptr);
    if (b == "quotient_point") {
        json ktimesk = k_times_k_doc();
        return builtin_doc(name, Slot::R, &ktimesk, nullptr);
    }
    if (b == "regular_module" || b == "trivial_module" || b == "zero_module") {
        json r = dual_numbers_doc();
        return builtin_doc(name, Slot::M, &kfield, &r);
    }
    if (b == "sl2" || b == "abelian_lie") return builtin_doc(name, Slot::L, &kfield, nullptr);
    if (b == "adjoint_module") {
        json l = builtin_doc("sl2", Slot::L, &kfield, nullptr);
        return builtin_doc(name, Slot::LM, &kfield, &l);
    }
    throw usage_error("unknown builtin: " + name);
}

}  // namespace shukla
