#pragma once

#include "diagnostic.hpp"
#include "model.hpp"

#include <string>
#include <string_view>

namespace scrguide
{

// Parses the `.scr` format (grammar in docs/scr-format.md) and type checks it.
// Diagnostic codes: lex, syntax, undeclared, duplicate, type, range,
// bad-type, table-def, uncovered-mode, cycle.
[[nodiscard]] parse_result< spec_model > parse_spec( std::string_view text, const std::string& file = "<input>" );

// Canonical text for a spec; parse_spec(render_spec(s)) yields a model equal
// to s.
[[nodiscard]] std::string render_spec( const spec_model& spec );

[[nodiscard]] std::string render_cond( const spec_model& spec, const cond_expr& expr );
[[nodiscard]] std::string render_event( const spec_model& spec, const event_expr& ev );

} // namespace scrguide
