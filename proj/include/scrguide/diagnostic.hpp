#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scrguide
{

// Positions are 1-based. Columns count code points, and end_col points one
// past the last character of the span. Line 0 means the diagnostic concerns
// the whole file.
struct source_span
{
    std::string file;
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    friend bool operator==( const source_span&, const source_span& ) = default;
};

enum class severity
{
    error,
    warning
};

struct diagnostic
{
    severity level = severity::error;
    std::string code;
    std::string message;
    source_span span;
};

[[nodiscard]] bool has_errors( const std::vector< diagnostic >& diags );

// "file:line:col: error[code]: message", or "file: error[code]: message"
// for line 0.
[[nodiscard]] std::string format_diagnostic( const diagnostic& diag );
void print_diagnostics( std::ostream& out, const std::vector< diagnostic >& diags );

// Outcome of a front-end pass: a value when no error was reported, plus any
// diagnostics (warnings may accompany a value).
template < typename T >
struct parse_result
{
    std::optional< T > value;
    std::vector< diagnostic > diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
    explicit operator bool() const { return ok(); }
};

} // namespace scrguide
