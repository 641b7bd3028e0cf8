#pragma once

#include "model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace scrguide
{

// Raised when more than one row of a table fires (or holds) in the same
// step, which means the spec is inconsistent.
class nondeterministic_transition : public std::runtime_error
{
public:
    nondeterministic_transition( std::string table, int target, std::vector< int > rows, std::string message );

    [[nodiscard]] const std::string& table() const { return _table; }
    [[nodiscard]] int target() const { return _target; }
    [[nodiscard]] const std::vector< int >& rows() const { return _rows; }

    // Set by callers that know which input triggered the step.
    std::optional< input_event > input;

private:
    std::string _table;
    int _target;
    std::vector< int > _rows; // 0-based row indices within the table
};

class illegal_input : public std::runtime_error
{
public:
    illegal_input( std::size_t position, const std::string& message );

    // 1-based position in the input sequence; 0 when not part of a sequence.
    [[nodiscard]] std::size_t position() const { return _position; }

private:
    std::size_t _position;
};

using state_view = std::span< const value_t >;

[[nodiscard]] bool eval_cond( const cond_expr& expr, state_view state );
[[nodiscard]] bool eval_event( const event_expr& ev, state_view old_state, state_view new_state );

[[nodiscard]] value_t fire_mode_table( const spec_model& spec, const mode_table& table, state_view old_state,
                                       state_view new_state );
[[nodiscard]] value_t fire_event_table( const spec_model& spec, const event_table& table, state_view old_state,
                                        state_view new_state );
[[nodiscard]] value_t fire_condition_table( const spec_model& spec, const condition_table& table,
                                            state_view old_state, state_view new_state );

// New value of a dependent variable given the old state and a successor in
// which every variable it reads in the new state is already up to date.
[[nodiscard]] value_t evaluate_definition( const spec_model& spec, int var, state_view old_state,
                                           state_view new_state );

// Checks that `input` changes a monitored variable to another value of its
// type; throws illegal_input otherwise.
void validate_input( const spec_model& spec, const system_state& state, const input_event& input );

[[nodiscard]] system_state step( const spec_model& spec, const system_state& state, const input_event& input );

struct successor
{
    input_event input;
    system_state state;
};

// Every legal one-input step, ordered by (monitored declaration index, value).
[[nodiscard]] std::vector< successor > successors( const spec_model& spec, const system_state& state );

[[nodiscard]] std::vector< input_event > legal_inputs( const spec_model& spec, const system_state& state );

} // namespace scrguide
