#pragma once

// Command orchestration shared by the CLI and the python bindings: a parsed
// RunConfig goes in, a rendered report comes out on the stream, and every
// failure mode maps onto the documented exit-code contract.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shukla/cochain.hpp"
#include "shukla/field.hpp"
#include "shukla/report.hpp"

namespace shukla {

struct RunConfig {
    FieldSpec field{};
    std::size_t truncation = 4;
    std::size_t cap = kDefaultSizeCap;
    OutputFormat format = OutputFormat::Table;
    std::uint64_t seed = 42;
    std::string command;             // validate|cohomology|hochschild|compare|
                                     // ext2|ext3|builtin|selftest
    std::vector<std::string> args;   // action + input refs, in order
    bool lie = false;                // cohomology/validate: Lie flavor
    std::string over_a;              // hochschild: optional base algebra
};

// Enforces the documented config invariants (truncation >= 1, cap >= 1000).
void check_config(const RunConfig& cfg);

// Dispatches a command; writes the report to `out`.  Returns 0 on success and
// 1 when the command ran but the mathematical verdict is negative (invalid
// presentation, non-cocycle).  Throws Error for everything else.
int run_command(const RunConfig& cfg, std::ostream& out);

// Top-level wrapper: catches errors, renders them on `err`, maps categories
// to exit codes (1 rejection, 2 internal, 64 usage).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace shukla
