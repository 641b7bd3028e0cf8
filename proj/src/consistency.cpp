#include "scrguide/consistency.hpp"

#include "scrguide/semantics.hpp"
#include "scrguide/spec_parser.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace scrguide
{

namespace
{

// Calls `visit` for every assignment of `vars` (others keep their value in
// `state`). Returns false without visiting when there are too many.
bool for_each_assignment( const spec_model& spec, const std::vector< int >& vars, std::vector< value_t >& state,
                          std::uint64_t limit, const std::function< bool() >& visit )
{
    std::uint64_t total = 1;
    for ( int v : vars )
    {
        total *= spec.variable( v ).type.size();
        if ( total > limit )
            return false;
    }
    for ( int v : vars )
        state[ static_cast< std::size_t >( v ) ] = spec.variable( v ).type.min_value();
    while ( true )
    {
        if ( !visit() )
            return true;
        std::size_t i = 0;
        for ( ; i < vars.size(); ++i )
        {
            auto& slot = state[ static_cast< std::size_t >( vars[ i ] ) ];
            if ( slot < spec.variable( vars[ i ] ).type.max_value() )
            {
                ++slot;
                break;
            }
            slot = spec.variable( vars[ i ] ).type.min_value();
        }
        if ( i == vars.size() )
            return true;
    }
}

std::string describe( const spec_model& spec, const std::vector< int >& vars, const std::vector< value_t >& state )
{
    std::string out;
    for ( int v : vars )
    {
        if ( !out.empty() )
            out += ", ";
        out += spec.variable( v ).name + "=" + format_value( spec, v, state[ static_cast< std::size_t >( v ) ] );
    }
    return out;
}

std::string row_list( const std::vector< int >& rows )
{
    std::string out;
    for ( std::size_t i = 0; i < rows.size(); ++i )
    {
        if ( i > 0 )
            out += i + 1 == rows.size() ? " and " : ", ";
        out += std::to_string( rows[ i ] + 1 );
    }
    return out;
}

class checker
{
public:
    checker( const spec_model& spec, const consistency_options& options ) : _spec{ spec }, _options{ options } {}

    std::vector< diagnostic > run()
    {
        for ( std::size_t i = 0; i < _spec.condition_tables.size(); ++i )
            condition_table_checks( _spec.condition_tables[ i ] );
        for ( const auto& t : _spec.mode_tables )
            transition_checks( t.mode_class, "mode transition" );
        for ( const auto& t : _spec.event_tables )
            transition_checks( t.target, "event" );
        initial_checks();
        return std::move( _diags );
    }

private:
    void report( severity level, std::string code, std::string message )
    {
        _diags.push_back( { level, std::move( code ), std::move( message ), { "", 0, 0, 0, 0 } } );
    }

    std::vector< int > rows_holding( const condition_table& table, const std::vector< value_t >& state ) const
    {
        const value_t mode = table.mode_class >= 0 ? state[ static_cast< std::size_t >( table.mode_class ) ] : 0;
        std::vector< int > held;
        for ( std::size_t r = 0; r < table.rows.size(); ++r )
            if ( table.rows[ r ].modes.contains( mode ) && eval_cond( table.rows[ r ].cond, state ) )
                held.push_back( static_cast< int >( r ) );
        return held;
    }

    void condition_table_checks( const condition_table& table )
    {
        const std::string& name = _spec.variable( table.target ).name;
        std::vector< int > vars;
        if ( table.mode_class >= 0 )
            vars.push_back( table.mode_class );
        for ( const auto& row : table.rows )
            collect_vars( row.cond, vars );
        std::sort( vars.begin(), vars.end() );
        vars.erase( std::unique( vars.begin(), vars.end() ), vars.end() );

        const auto init = initial_state( _spec );
        std::vector< value_t > state( init.values().begin(), init.values().end() );
        std::set< std::vector< int > > overlaps;
        std::optional< std::string > gap;
        const bool done = for_each_assignment( _spec, vars, state, _options.max_assignments, [ & ] {
            const auto held = rows_holding( table, state );
            if ( held.size() > 1 && overlaps.insert( held ).second )
                report( severity::error, "overlap",
                        "condition table for " + name + ": rows " + row_list( held ) + " hold together when "
                            + describe( _spec, vars, state ) );
            if ( held.empty() && !table.keep_default && !gap )
                gap = describe( _spec, vars, state );
            return true;
        } );
        if ( !done )
        {
            report( severity::warning, "check-skipped",
                    "condition table for " + name + " reads too many variable combinations to check" );
            return;
        }
        if ( gap )
            report( severity::error, "incomplete",
                    "condition table for " + name + ": no row holds when " + *gap
                        + " (add rows or 'default unchanged')" );
    }

    // Variables that can influence the defining table of `var`, closed under
    // the tables of dependent variables.
    std::vector< int > cone( int var ) const
    {
        std::set< int > seen;
        std::vector< int > work = _spec.all_reads( var );
        work.push_back( var );
        while ( !work.empty() )
        {
            const int v = work.back();
            work.pop_back();
            if ( !seen.insert( v ).second )
                continue;
            if ( _spec.variable( v ).role != var_role::monitored )
                for ( int r : _spec.all_reads( v ) )
                    work.push_back( r );
        }
        return { seen.begin(), seen.end() };
    }

    // A state every reachable state resembles: each condition-table variable
    // agrees with its table.
    bool plausible( const std::vector< int >& vars, const std::vector< value_t >& state ) const
    {
        for ( int v : vars )
        {
            const table_ref ref = _spec.definition_of( v );
            if ( ref.kind != table_kind::condition )
                continue;
            const auto held = rows_holding( _spec.condition_tables[ ref.index ], state );
            if ( held.size() > 1 )
                return false;
            if ( held.size() == 1
                 && _spec.condition_tables[ ref.index ].rows[ static_cast< std::size_t >( held.front() ) ].value
                        != state[ static_cast< std::size_t >( v ) ] )
                return false;
        }
        return true;
    }

    void transition_checks( int target, const std::string& kind )
    {
        const std::string& name = _spec.variable( target ).name;
        const std::vector< int > vars = cone( target );
        std::vector< int > inputs;
        std::vector< int > dependents;
        for ( int v : _spec.update_order() )
            if ( std::binary_search( vars.begin(), vars.end(), v ) )
                dependents.push_back( v );
        for ( int v : vars )
            if ( _spec.variable( v ).role == var_role::monitored )
                inputs.push_back( v );

        std::uint64_t input_count = 0;
        for ( int m : inputs )
            input_count += _spec.variable( m ).type.size();
        const std::uint64_t limit = input_count == 0 ? _options.max_assignments : _options.max_assignments / input_count;

        const auto init = initial_state( _spec );
        std::vector< value_t > old_state( init.values().begin(), init.values().end() );
        std::vector< value_t > new_state;
        std::set< std::vector< int > > overlaps;

        const bool done = for_each_assignment( _spec, vars, old_state, limit, [ & ] {
            if ( !plausible( vars, old_state ) )
                return true;
            for ( int m : inputs )
            {
                const auto& type = _spec.variable( m ).type;
                for ( value_t value = type.min_value(); value <= type.max_value(); ++value )
                {
                    if ( value == old_state[ static_cast< std::size_t >( m ) ] )
                        continue;
                    new_state = old_state;
                    new_state[ static_cast< std::size_t >( m ) ] = value;
                    try
                    {
                        for ( int d : dependents )
                        {
                            if ( d == target )
                                break;
                            new_state[ static_cast< std::size_t >( d ) ]
                                = evaluate_definition( _spec, d, old_state, new_state );
                        }
                        (void)evaluate_definition( _spec, target, old_state, new_state );
                    }
                    catch ( const nondeterministic_transition& e )
                    {
                        if ( e.target() != target || !overlaps.insert( e.rows() ).second )
                            continue;
                        report( severity::error, "overlap",
                                kind + " table for " + name + ": rows " + row_list( e.rows() )
                                    + " fire together from " + describe( _spec, vars, old_state ) + " on input "
                                    + format_input( _spec, { m, value } ) );
                    }
                }
            }
            return true;
        } );
        if ( !done )
            report( severity::warning, "check-skipped",
                    kind + " table for " + name + " reads too many variable combinations to check" );
    }

    void initial_checks()
    {
        const auto init = initial_state( _spec );
        for ( const auto& table : _spec.condition_tables )
        {
            std::vector< value_t > state( init.values().begin(), init.values().end() );
            const auto held = rows_holding( table, state );
            if ( held.size() == 1
                 && table.rows[ static_cast< std::size_t >( held.front() ) ].value
                        != state[ static_cast< std::size_t >( table.target ) ] )
            {
                const auto& decl = _spec.variable( table.target );
                report( severity::warning, "initial-value",
                        "initial value " + decl.type.format( decl.initial ) + " of " + decl.name
                            + " disagrees with row " + std::to_string( held.front() + 1 ) + " of its table" );
            }
        }
    }

    const spec_model& _spec;
    const consistency_options& _options;
    std::vector< diagnostic > _diags;
};

} // namespace

std::vector< diagnostic > check_consistency( const spec_model& spec, const consistency_options& options )
{
    return checker{ spec, options }.run();
}

} // namespace scrguide
