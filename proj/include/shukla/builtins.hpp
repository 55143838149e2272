#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace shukla {

// Builtin presentation catalog.  Builtins are produced as plain JSON
// documents and instantiated through the same parser as user files, so they
// obey the exact same format rules.  Several are contextual: their tables
// depend on the slot they appear in and on the documents already resolved for
// earlier slots (e.g. `r_equals_a` copies A, `trivial_module` reads R's
// augmentation character).

enum class Slot { A, R, M, L, LM };

struct BuiltinInfo {
    std::string name;
    std::string summary;
};

const std::vector<BuiltinInfo>& builtin_catalog();

bool is_builtin_ref(const std::string& s);                 // "builtin:<name>"
std::string builtin_name_of_ref(const std::string& s);
bool builtin_exists(const std::string& name);

// Document for `name` in `slot`.  `a_doc` is the resolved A document (needed
// by R/L/LM slots); `rl_doc` is the resolved R document (M slot) or L document
// (LM slot).  Throws a validation error when the builtin does not fit the
// slot or its context.
nlohmann::json builtin_doc(const std::string& name, Slot slot, const nlohmann::json* a_doc,
                           const nlohmann::json* rl_doc);

// Standalone document for `builtin emit <name>`: contextual builtins are
// emitted against a 1-dimensional base-field A (and, where needed, R = A).
nlohmann::json builtin_emit(const std::string& name);

}  // namespace shukla
