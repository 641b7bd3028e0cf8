#pragma once

#include "diagnostic.hpp"
#include "model.hpp"
#include "scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scrguide
{

struct product_state
{
    system_state sys;
    int pc = 1;

    friend bool operator==( const product_state&, const product_state& ) = default;
};

struct product_state_hash
{
    std::size_t operator()( const product_state& ps ) const
    {
        return ps.sys.hash() ^ ( static_cast< std::size_t >( ps.pc ) * 0x9E3779B97F4A7C15ull );
    }
};

struct product_move
{
    std::optional< input_event > input; // empty for a test step
    int sentence = -1;
    product_state target;
};

// Successors of `ps` in the product of the spec and the pc automaton, ordered
// by (input variable, input value, sentence, target pc) with test steps first.
// Throws nondeterministic_transition when the spec is inconsistent.
[[nodiscard]] std::vector< product_move > product_successors( const spec_model& spec, const scenario& scn,
                                                              const pc_automaton& aut, const product_state& ps );

struct trace_step
{
    std::optional< input_event > input; // empty for the initial state and test steps
    int sentence = -1;                  // -1 for the initial state
    int pc = 0;                         // 0 when the trace has no program counter
    system_state state;
};

struct trace
{
    std::vector< trace_step > steps; // steps[0] is the initial state
};

struct violation
{
    trace counterexample;
};

struct no_violation
{
    int depth = 0;                   // deepest level fully explored
    std::uint64_t states_explored = 0;
    bool exhausted = false;          // frontier emptied before the bound
};

struct consistency_error
{
    std::vector< diagnostic > diagnostics;
};

using verdict = std::variant< violation, no_violation, consistency_error >;

struct analyze_options
{
    int max_depth = 10000;
    unsigned workers = 1;
    // When set, successors are explored in a seeded random order instead of
    // the canonical one. Verdicts are unaffected; traces may differ.
    std::optional< std::uint64_t > shuffle_seed;
};

// Breadth-first search of the product from (initial state, pc 1). Throws
// std::invalid_argument when max_depth < 1.
[[nodiscard]] verdict analyze( const spec_model& spec, const scenario& scn, const analyze_options& options = {} );

// Applies the inputs in order. Throws illegal_input naming the 1-based
// position of the first illegal input.
[[nodiscard]] trace simulate( const spec_model& spec, const std::vector< input_event >& inputs );

[[nodiscard]] std::string format_trace( const spec_model& spec, const trace& t );
[[nodiscard]] std::string format_verdict( const spec_model& spec, const scenario& scn, const verdict& v );
// JSON document described by docs/trace.schema.json.
[[nodiscard]] std::string verdict_to_json( const spec_model& spec, const scenario& scn, const verdict& v );
[[nodiscard]] std::string trace_to_json( const spec_model& spec, const trace& t );

} // namespace scrguide
