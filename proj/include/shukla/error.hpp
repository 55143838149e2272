#pragma once

#include <stdexcept>
#include <string>

namespace shukla {

// Exit-code contract used by the CLI (and mirrored by the python bindings,
// which translate these into exceptions carrying the same category).
//
//   0  success
//   1  mathematical rejection: the input is well-formed but fails a
//      mathematical requirement (axiom violation, not a cocycle, resource
//      guard, truncation too small for the requested comparison)
//   2  internal invariant failure: the engine detected an inconsistency in
//      its own output (differential identities, sign conventions, section
//      construction).  These indicate a bug, never a property of the input.
//   64 usage: malformed command line, unreadable file, unknown builtin,
//      malformed JSON.
enum class ErrorCategory { Rejection = 1, Internal = 2, Usage = 64 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, std::string code, const std::string& what)
        : std::runtime_error(what), category_(cat), code_(std::move(code)) {}

    ErrorCategory category() const { return category_; }
    int exit_code() const { return static_cast<int>(category_); }
    // Stable machine-readable identifier, e.g. "NotACocycle".
    const std::string& code() const { return code_; }

private:
    ErrorCategory category_;
    std::string code_;
};

// -- mathematical rejections -------------------------------------------------

inline Error validation_error(const std::string& what) {
    return Error(ErrorCategory::Rejection, "ValidationFailure", what);
}
inline Error not_a_cocycle(const std::string& what) {
    return Error(ErrorCategory::Rejection, "NotACocycle", what);
}
inline Error size_cap_exceeded(const std::string& what) {
    return Error(ErrorCategory::Rejection, "SizeCapExceeded", what);
}
inline Error search_space_too_large(const std::string& what) {
    return Error(ErrorCategory::Rejection, "SearchSpaceTooLarge", what);
}
inline Error truncation_too_small(const std::string& what) {
    return Error(ErrorCategory::Rejection, "TruncationTooSmall", what);
}
inline Error division_by_zero(const std::string& what) {
    return Error(ErrorCategory::Rejection, "DivisionByZero", what);
}

// -- internal invariant failures ----------------------------------------------

inline Error internal_error(const std::string& code, const std::string& what) {
    return Error(ErrorCategory::Internal, code, what);
}

// -- usage ---------------------------------------------------------------------

inline Error usage_error(const std::string& what) {
    return Error(ErrorCategory::Usage, "Usage", what);
}
inline Error parse_error(const std::string& what) {
    return Error(ErrorCategory::Usage, "ParseError", what);
}

}  // namespace shukla
