#include "scrguide/semantics.hpp"

#include <sstream>

namespace scrguide
{

nondeterministic_transition::nondeterministic_transition( std::string table, int target, std::vector< int > rows,
                                                          std::string message )
    : std::runtime_error{ std::move( message ) }, _table{ std::move( table ) }, _target{ target },
      _rows{ std::move( rows ) }
{
}

illegal_input::illegal_input( std::size_t position, const std::string& message )
    : std::runtime_error{ message }, _position{ position }
{
}

namespace
{

value_t operand_value( const operand& o, state_view state )
{
    return o.k == operand::kind::variable ? state[ static_cast< std::size_t >( o.var ) ] : o.value;
}

bool compare( value_t a, cmp_op op, value_t b )
{
    switch ( op )
    {
    case cmp_op::eq: return a == b;
    case cmp_op::ne: return a != b;
    case cmp_op::lt: return a < b;
    case cmp_op::le: return a <= b;
    case cmp_op::gt: return a > b;
    case cmp_op::ge: return a >= b;
    }
    return false;
}

[[noreturn]] void report_overlap( const spec_model& spec, std::string_view kind, int target,
                                  const std::vector< int >& rows )
{
    std::ostringstream msg;
    msg << kind << " table for " << spec.variable( target ).name << ": rows";
    for ( int r : rows )
        msg << ' ' << ( r + 1 );
    msg << " fire in the same step";
    throw nondeterministic_transition{ std::string{ kind }, target, rows, msg.str() };
}

} // namespace

bool eval_cond( const cond_expr& expr, state_view state )
{
    switch ( expr.k )
    {
    case cond_expr::kind::literal: return expr.truth;
    case cond_expr::kind::var: return state[ static_cast< std::size_t >( expr.var ) ] != 0;
    case cond_expr::kind::compare:
        return compare( operand_value( expr.lhs, state ), expr.op, operand_value( expr.rhs, state ) );
    case cond_expr::kind::negation: return !eval_cond( expr.args.front(), state );
    case cond_expr::kind::conjunction:
        for ( const auto& a : expr.args )
            if ( !eval_cond( a, state ) )
                return false;
        return true;
    case cond_expr::kind::disjunction:
        for ( const auto& a : expr.args )
            if ( eval_cond( a, state ) )
                return true;
        return false;
    }
    return false;
}

bool eval_event( const event_expr& ev, state_view old_state, state_view new_state )
{
    if ( ev.when && !eval_cond( *ev.when, old_state ) )
        return false;

    if ( ev.changed_var >= 0 )
    {
        const auto i = static_cast< std::size_t >( ev.changed_var );
        return old_state[ i ] != new_state[ i ];
    }

    const bool before = eval_cond( ev.body, old_state );
    const bool after = eval_cond( ev.body, new_state );
    switch ( ev.trigger )
    {
    case edge::becomes_true: return !before && after;
    case edge::becomes_false: return before && !after;
    case edge::changes: return before != after;
    }
    return false;
}

value_t fire_mode_table( const spec_model& spec, const mode_table& table, state_view old_state,
                         state_view new_state )
{
    const value_t current = old_state[ static_cast< std::size_t >( table.mode_class ) ];
    std::vector< int > fired;
    for ( std::size_t i = 0; i < table.rows.size(); ++i )
    {
        const auto& row = table.rows[ i ];
        if ( row.from == current && eval_event( row.event, old_state, new_state ) )
            fired.push_back( static_cast< int >( i ) );
    }
    if ( fired.empty() )
        return current;
    if ( fired.size() > 1 )
        report_overlap( spec, "mode transition", table.mode_class, fired );
    return table.rows[ static_cast< std::size_t >( fired.front() ) ].to;
}

value_t fire_event_table( const spec_model& spec, const event_table& table, state_view old_state,
                          state_view new_state )
{
    const value_t current = old_state[ static_cast< std::size_t >( table.target ) ];
    const value_t mode = table.mode_class >= 0 ? old_state[ static_cast< std::size_t >( table.mode_class ) ] : 0;
    std::vector< int > fired;
    for ( std::size_t i = 0; i < table.rows.size(); ++i )
    {
        const auto& row = table.rows[ i ];
        if ( row.modes.contains( mode ) && eval_event( row.event, old_state, new_state ) )
            fired.push_back( static_cast< int >( i ) );
    }
    if ( fired.empty() )
        return current;
    if ( fired.size() > 1 )
        report_overlap( spec, "event", table.target, fired );
    return table.rows[ static_cast< std::size_t >( fired.front() ) ].value;
}

value_t fire_condition_table( const spec_model& spec, const condition_table& table, state_view old_state,
                              state_view new_state )
{
    const value_t mode = table.mode_class >= 0 ? new_state[ static_cast< std::size_t >( table.mode_class ) ] : 0;
    std::vector< int > held;
    for ( std::size_t i = 0; i < table.rows.size(); ++i )
    {
        const auto& row = table.rows[ i ];
        if ( row.modes.contains( mode ) && eval_cond( row.cond, new_state ) )
            held.push_back( static_cast< int >( i ) );
    }
    if ( held.empty() )
        return old_state[ static_cast< std::size_t >( table.target ) ];
    if ( held.size() > 1 )
        report_overlap( spec, "condition", table.target, held );
    return table.rows[ static_cast< std::size_t >( held.front() ) ].value;
}

value_t evaluate_definition( const spec_model& spec, int var, state_view old_state, state_view new_state )
{
    const table_ref ref = spec.definition_of( var );
    switch ( ref.kind )
    {
    case table_kind::mode: return fire_mode_table( spec, spec.mode_tables[ ref.index ], old_state, new_state );
    case table_kind::event: return fire_event_table( spec, spec.event_tables[ ref.index ], old_state, new_state );
    case table_kind::condition:
        return fire_condition_table( spec, spec.condition_tables[ ref.index ], old_state, new_state );
    case table_kind::none: break;
    }
    return new_state[ static_cast< std::size_t >( var ) ];
}

void validate_input( const spec_model& spec, const system_state& state, const input_event& input )
{
    if ( input.var < 0 || input.var >= spec.variable_count() )
        throw illegal_input{ 0, "input names an unknown variable" };
    const auto& decl = spec.variable( input.var );
    if ( decl.role != var_role::monitored )
        throw illegal_input{ 0, decl.name + " is not a monitored variable" };
    if ( !decl.type.contains( input.value ) )
        throw illegal_input{ 0, "value " + std::to_string( input.value ) + " is outside the type of " + decl.name };
    if ( state[ input.var ] == input.value )
        throw illegal_input{ 0, decl.name + " already has value " + decl.type.format( input.value ) };
}

system_state step( const spec_model& spec, const system_state& state, const input_event& input )
{
    validate_input( spec, state, input );
    system_state next = state;
    next.set( input.var, input.value );
    for ( int var : spec.update_order() )
    {
        try
        {
            next.set( var, evaluate_definition( spec, var, state.values(), next.values() ) );
        }
        catch ( nondeterministic_transition& e )
        {
            e.input = input;
            throw;
        }
    }
    return next;
}

std::vector< input_event > legal_inputs( const spec_model& spec, const system_state& state )
{
    std::vector< input_event > out;
    for ( int var : spec.monitored() )
    {
        const auto& type = spec.variable( var ).type;
        for ( value_t v = type.min_value(); v <= type.max_value(); ++v )
            if ( v != state[ var ] )
                out.push_back( { var, v } );
    }
    return out;
}

std::vector< successor > successors( const spec_model& spec, const system_state& state )
{
    std::vector< successor > out;
    for ( const auto& input : legal_inputs( spec, state ) )
        out.push_back( { input, step( spec, state, input ) } );
    return out;
}

} // namespace scrguide
