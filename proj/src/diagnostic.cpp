#include "scrguide/diagnostic.hpp"

#include <algorithm>
#include <ostream>

namespace scrguide
{

bool has_errors( const std::vector< diagnostic >& diags )
{
    return std::any_of( diags.begin(), diags.end(),
                        []( const diagnostic& d ) { return d.level == severity::error; } );
}

std::string format_diagnostic( const diagnostic& diag )
{
    std::string out = diag.span.file.empty() ? std::string{ "<input>" } : diag.span.file;
    if ( diag.span.start_line > 0 )
        out += ":" + std::to_string( diag.span.start_line ) + ":" + std::to_string( diag.span.start_col );
    out += ": ";
    out += diag.level == severity::error ? "error" : "warning";
    if ( !diag.code.empty() )
        out += "[" + diag.code + "]";
    out += ": " + diag.message;
    return out;
}

void print_diagnostics( std::ostream& out, const std::vector< diagnostic >& diags )
{
    for ( const auto& d : diags )
        out << format_diagnostic( d ) << '\n';
}

} // namespace scrguide
