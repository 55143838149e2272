#include "shukla/json_io.hpp"

#include <fstream>

namespace shukla {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    if (!j.is_object()) throw validation_error(path + ": expected a JSON object");
    return j;
}

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) throw validation_error(what + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw validation_error(what + ": unknown key \"" + it.key() + "\"");
    }
}

std::size_t doc_dim(const json& j, const std::string& what) {
    if (j.contains("dim")) {
        const json& d = j["dim"];
        if (d.is_number_unsigned()) return d.get<std::size_t>();
        if (d.is_number_integer() && d.get<long long>() >= 0)
            return static_cast<std::size_t>(d.get<long long>());
    }
    throw validation_error(what + ": missing or invalid \"dim\"");
}

std::vector<std::string> doc_labels(const json& j, std::size_t dim, const std::string& what) {
    if (!j.contains("labels")) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < dim; ++i) out.push_back("e" + std::to_string(i));
        return out;
    }
    const json& l = j["labels"];
    if (!l.is_array() || l.size() != dim)
        throw validation_error(what + ": \"labels\" must be an array of length " +
                               std::to_string(dim));
    std::vector<std::string> out;
    for (const auto& s : l) {
        if (!s.is_string()) throw validation_error(what + ": labels must be strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

void check_doc_field(const json& j, const FieldSpec& spec, const std::string& what) {
    if (!j.contains("field")) return;
    if (!j["field"].is_string())
        throw validation_error(what + ": \"field\" must be a string like \"Q\" or \"Fp:5\"");
    FieldSpec doc = FieldSpec::parse(j["field"].get<std::string>());
    if (doc.kind != spec.kind || (doc.kind == FieldSpec::Kind::Prime && doc.p != spec.p))
        throw validation_error(what + ": presentation is over " + doc.name() +
                               " but the run uses " + spec.name());
}

void check_doc_kind(const json& j, const std::string& expected, const std::string& what) {
    if (!j.contains("kind")) return;
    if (!j["kind"].is_string() || j["kind"].get<std::string>() != expected)
        throw validation_error(what + ": \"kind\" must be \"" + expected + "\" for this slot");
}

}  // namespace shukla
