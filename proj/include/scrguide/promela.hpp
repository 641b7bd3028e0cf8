#pragma once

#include "diagnostic.hpp"
#include "model.hpp"
#include "scenario.hpp"

#include <map>
#include <optional>
#include <string>

namespace scrguide
{

struct promela_options
{
    // Emit each loop as at most `unroll` nested optional copies of its body
    // instead of a do-od loop.
    std::optional< int > unroll;
    std::string spec_label;     // shown in the header comment
    std::string scenario_label; // shown in the header comment
};

struct emitted_model
{
    std::string text;
    int pc_count = 0;       // n + 1 for a scenario with n sentences
    int assertion_line = 0; // 1-based line of the final assertion
    // Spec identifiers that had to be renamed, original -> emitted.
    std::map< std::string, std::string > renamed;
};

// Translates the spec and scenario into a self-contained Promela model. The
// spec must be free of consistency errors; otherwise no model is produced and
// the consistency diagnostics are returned.
[[nodiscard]] parse_result< emitted_model > emit_promela( const spec_model& spec, const scenario& scn,
                                                          const promela_options& options = {} );

} // namespace scrguide
