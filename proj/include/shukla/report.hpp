#pragma once

// Plain-data result objects for the user-facing commands, plus deterministic
// renderers.  The same report renders either as an aligned text table or as a
// JSON document; JSON output re-parses to an equal report.

#include <string>
#include <vector>

#include "shukla/homology.hpp"
#include "shukla/json_io.hpp"
#include "shukla/presentation.hpp"

namespace shukla {

enum class OutputFormat { Table, Json };

OutputFormat parse_format(const std::string& s);

// Fixed-width table: column widths are the maxima over header and cells, so
// alignment survives any dimension the engine can produce.
struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string render() const;
};

struct CohomologyReport {
    std::string flavor;               // "shukla" | "shukla-lie" | "hochschild"
    std::string field;                // field tag, e.g. "Q" or "F5"
    std::vector<std::string> inputs;  // input references as given
    std::size_t truncation = 0;
    std::vector<std::size_t> total_dims;    // cochain space dims per degree
    std::vector<std::size_t> h_dims;        // cohomology dims, degrees 0..N
    std::vector<std::size_t> relative_dims; // base-relative H, empty if n/a

    bool operator==(const CohomologyReport&) const = default;
};

json cohomology_report_json(const CohomologyReport& rep);
CohomologyReport cohomology_report_from_json(const json& j);
std::string render_report(const CohomologyReport& rep, OutputFormat format);

struct ComparisonReport {
    std::string field;
    std::vector<std::string> inputs;
    std::size_t truncation = 0;
    std::vector<AlphaReport> rows;

    bool operator==(const ComparisonReport&) const = default;
};

json comparison_report_json(const ComparisonReport& rep);
ComparisonReport comparison_report_from_json(const json& j);
std::string render_report(const ComparisonReport& rep, OutputFormat format);

struct ValidationResult {
    std::string input;
    ValidationReport report;
};

std::string render_validation(const std::vector<ValidationResult>& results, OutputFormat format);

}  // namespace shukla
