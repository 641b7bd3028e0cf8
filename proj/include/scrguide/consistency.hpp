#pragma once

#include "diagnostic.hpp"
#include "model.hpp"

#include <cstdint>
#include <vector>

namespace scrguide
{

struct consistency_options
{
    // Tables whose check would enumerate more assignments than this are
    // skipped with a warning.
    std::uint64_t max_assignments = 20'000'000;
};

// Disjointness of mode transition and event tables (no two rows can fire in
// the same one-input step from a state that satisfies every condition
// table), disjointness and completeness of condition tables, and agreement of
// initial values with condition tables. Codes: overlap, incomplete (errors);
// initial-value, check-skipped (warnings).
[[nodiscard]] std::vector< diagnostic > check_consistency( const spec_model& spec,
                                                           const consistency_options& options = {} );

} // namespace scrguide
