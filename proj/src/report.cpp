#include "shukla/report.hpp"

#include <sstream>

#include "shukla/error.hpp"

namespace shukla {

OutputFormat parse_format(const std::string& s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "json") return OutputFormat::Json;
    throw usage_error("unknown output format '" + s + "' (expected table or json)");
}

std::string TextTable::render() const {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
            if (row[c].size() > width[c]) width[c] = row[c].size();

    auto emit_row = [&](std::ostringstream& os, const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < width.size(); ++c) {
            const std::string& cell = c < row.size() ? row[c] : std::string{};
            os << (c ? "  " : "") << cell << std::string(width[c] - cell.size(), ' ');
        }
        os << '\n';
    };

    std::ostringstream os;
    emit_row(os, header);
    std::size_t total = 0;
    for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);
    os << std::string(total, '-') << '\n';
    for (const auto& row : rows) emit_row(os, row);
    return os.str();
}

namespace {

json dims_json(const std::vector<std::size_t>& v) {
    json out = json::array();
    for (std::size_t x : v) out.push_back(x);
    return out;
}

std::vector<std::size_t> dims_from_json(const json& j) {
    std::vector<std::size_t> out;
    for (const auto& x : j) out.push_back(x.get<std::size_t>());
    return out;
}

json strings_json(const std::vector<std::string>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(s);
    return out;
}

std::vector<std::string> strings_from_json(const json& j) {
    std::vector<std::string> out;
    for (const auto& s : j) out.push_back(s.get<std::string>());
    return out;
}

std::string inputs_line(const std::vector<std::string>& inputs) {
    std::string out;
    for (std::size_t i = 0; i < inputs.size(); ++i) out += (i ? ", " : "") + inputs[i];
    return out;
}

}  // namespace

json cohomology_report_json(const CohomologyReport& rep) {
    json j;
    j["kind"] = "cohomology_report";
    j["flavor"] = rep.flavor;
    j["field"] = rep.field;
    j["inputs"] = strings_json(rep.inputs);
    j["truncation"] = rep.truncation;
    j["total_dims"] = dims_json(rep.total_dims);
    j["h"] = dims_json(rep.h_dims);
    if (!rep.relative_dims.empty()) j["relative_h"] = dims_json(rep.relative_dims);
    return j;
}

CohomologyReport cohomology_report_from_json(const json& j) {
    if (!j.is_object() || j.value("kind", "") != "cohomology_report")
        throw parse_error("not a cohomology report document");
    CohomologyReport rep;
    rep.flavor = j.at("flavor").get<std::string>();
    rep.field = j.at("field").get<std::string>();
    rep.inputs = strings_from_json(j.at("inputs"));
    rep.truncation = j.at("truncation").get<std::size_t>();
    rep.total_dims = dims_from_json(j.at("total_dims"));
    rep.h_dims = dims_from_json(j.at("h"));
    if (j.contains("relative_h")) rep.relative_dims = dims_from_json(j.at("relative_h"));
    return rep;
}

std::string render_report(const CohomologyReport& rep, OutputFormat format) {
    if (format == OutputFormat::Json) return cohomology_report_json(rep).dump(2) + "\n";

    std::ostringstream os;
    os << rep.flavor << " cohomology over " << rep.field << '\n';
    os << "inputs: " << inputs_line(rep.inputs) << '\n';
    os << "truncation: N = " << rep.truncation << '\n';

    TextTable t;
    t.header = {"n", "dim C^n", "dim H^n"};
    const bool rel = !rep.relative_dims.empty();
    if (rel) t.header.push_back("dim rel H^n");
    for (std::size_t n = 0; n < rep.h_dims.size(); ++n) {
        std::vector<std::string> row{std::to_string(n),
                                     n < rep.total_dims.size()
                                         ? std::to_string(rep.total_dims[n])
                                         : std::string{"-"},
                                     std::to_string(rep.h_dims[n])};
        if (rel)
            row.push_back(n < rep.relative_dims.size() ? std::to_string(rep.relative_dims[n])
                                                       : std::string{"-"});
        t.rows.push_back(std::move(row));
    }
    os << t.render();
    return os.str();
}

json comparison_report_json(const ComparisonReport& rep) {
    json j;
    j["kind"] = "comparison_report";
    j["field"] = rep.field;
    j["inputs"] = strings_json(rep.inputs);
    j["truncation"] = rep.truncation;
    json rows = json::array();
    for (const AlphaReport& a : rep.rows) {
        json r;
        r["n"] = a.n;
        r["dim_relative"] = a.dim_relative;
        r["dim_total"] = a.dim_total;
        r["rank"] = a.rank;
        r["injective"] = a.injective;
        r["surjective"] = a.surjective;
        r["isomorphism"] = a.isomorphism;
        rows.push_back(std::move(r));
    }
    j["alpha"] = std::move(rows);
    return j;
}

ComparisonReport comparison_report_from_json(const json& j) {
    if (!j.is_object() || j.value("kind", "") != "comparison_report")
        throw parse_error("not a comparison report document");
    ComparisonReport rep;
    rep.field = j.at("field").get<std::string>();
    rep.inputs = strings_from_json(j.at("inputs"));
    rep.truncation = j.at("truncation").get<std::size_t>();
    for (const auto& r : j.at("alpha")) {
        AlphaReport a;
        a.n = r.at("n").get<std::size_t>();
        a.dim_relative = r.at("dim_relative").get<std::size_t>();
        a.dim_total = r.at("dim_total").get<std::size_t>();
        a.rank = r.at("rank").get<std::size_t>();
        a.injective = r.at("injective").get<bool>();
        a.surjective = r.at("surjective").get<bool>();
        a.isomorphism = r.at("isomorphism").get<bool>();
        rep.rows.push_back(a);
    }
    return rep;
}

std::string render_report(const ComparisonReport& rep, OutputFormat format) {
    if (format == OutputFormat::Json) return comparison_report_json(rep).dump(2) + "\n";

    std::ostringstream os;
    os << "comparison map over " << rep.field << '\n';
    os << "inputs: " << inputs_line(rep.inputs) << '\n';
    os << "truncation: N = " << rep.truncation << '\n';

    TextTable t;
    t.header = {"n", "dim rel H^n", "dim H^n", "rank", "verdict"};
    bool all_iso = !rep.rows.empty();
    for (const AlphaReport& a : rep.rows) {
        std::string verdict = a.isomorphism  ? "isomorphism"
                              : a.injective  ? "injective, not surjective"
                              : a.surjective ? "surjective, not injective"
                                             : "neither injective nor surjective";
        all_iso = all_iso && a.isomorphism;
        t.rows.push_back({std::to_string(a.n), std::to_string(a.dim_relative),
                          std::to_string(a.dim_total), std::to_string(a.rank), verdict});
    }
    os << t.render();
    if (all_iso)
        os << "comparison is an isomorphism for n = 0.." << rep.rows.back().n << '\n';
    return os.str();
}

std::string render_validation(const std::vector<ValidationResult>& results, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json j;
        j["kind"] = "validation_report";
        json items = json::array();
        for (const auto& res : results) {
            json item;
            item["input"] = res.input;
            item["valid"] = res.report.ok();
            json viol = json::array();
            for (const auto& v : res.report.violations) {
                json entry;
                entry["identity"] = v.identity;
                entry["indices"] = dims_json(v.indices);
                viol.push_back(std::move(entry));
            }
            item["violations"] = std::move(viol);
            items.push_back(std::move(item));
        }
        j["results"] = std::move(items);
        return j.dump(2) + "\n";
    }

    std::ostringstream os;
    for (const auto& res : results) {
        os << res.input << ": " << (res.report.ok() ? "valid" : "INVALID") << '\n';
        for (const auto& v : res.report.violations) {
            os << "  violated: " << v.identity << " at (";
            for (std::size_t i = 0; i < v.indices.size(); ++i)
                os << (i ? "," : "") << v.indices[i];
            os << ")\n";
        }
    }
    return os.str();
}

}  // namespace shukla
