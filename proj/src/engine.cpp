#include "scrguide/engine.hpp"

#include "scrguide/semantics.hpp"
#include "scrguide/spec_parser.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace scrguide
{

std::vector< product_move > product_successors( const spec_model& spec, const scenario& scn, const pc_automaton& aut,
                                                 const product_state& ps )
{
    std::vector< product_move > out;
    std::optional< std::vector< successor > > steps;
    for ( const auto& e : aut.moves( ps.pc ) )
    {
        const sentence& s = scn.sentences.at( static_cast< std::size_t >( *e.sentence ) );
        if ( s.k == sentence::kind::test )
        {
            if ( eval_cond( s.test, ps.sys.values() ) )
                out.push_back( { std::nullopt, *e.sentence, { ps.sys, e.to } } );
            continue;
        }
        if ( !steps )
            steps = successors( spec, ps.sys );
        for ( const auto& succ : *steps )
        {
            if ( s.k == sentence::kind::guarded_change
                 && !eval_guard( s.guard, ps.sys.values(), succ.state.values() ) )
                continue;
            out.push_back( { succ.input, *e.sentence, { succ.state, e.to } } );
        }
    }
    const auto key = []( const product_move& m ) {
        return std::make_tuple( m.input ? m.input->var : -1, m.input ? m.input->value : 0, m.sentence, m.target.pc );
    };
    std::stable_sort( out.begin(), out.end(),
                      [ & ]( const product_move& a, const product_move& b ) { return key( a ) < key( b ); } );
    return out;
}

namespace
{

struct search_node
{
    product_state state;
    std::size_t parent = 0;
    std::optional< input_event > input;
    int sentence = -1;
};

trace rebuild( const std::vector< search_node >& nodes, std::size_t last )
{
    std::vector< trace_step > reversed;
    std::size_t at = last;
    while ( true )
    {
        const auto& n = nodes[ at ];
        reversed.push_back( { n.input, n.sentence, n.state.pc, n.state.sys } );
        if ( at == 0 )
            break;
        at = n.parent;
    }
    return { { reversed.rbegin(), reversed.rend() } };
}

consistency_error to_consistency_error( const spec_model& spec, const nondeterministic_transition& e )
{
    std::string message = e.what();
    if ( e.input )
        message += " (after input " + format_input( spec, *e.input ) + ")";
    return { { { severity::error, "nondeterminism", message, { "", 0, 0, 0, 0 } } } };
}

struct expansion
{
    std::vector< product_move > moves;
    std::exception_ptr failure;
};

void expand_range( const spec_model& spec, const scenario& scn, const pc_automaton& aut,
                   const std::vector< search_node >& nodes, const std::vector< std::size_t >& frontier,
                   std::vector< expansion >& results, std::size_t begin, std::size_t end )
{
    for ( std::size_t i = begin; i < end; ++i )
    {
        try
        {
            results[ i ].moves = product_successors( spec, scn, aut, nodes[ frontier[ i ] ].state );
        }
        catch ( ... )
        {
            results[ i ].failure = std::current_exception();
        }
    }
}

} // namespace

verdict analyze( const spec_model& spec, const scenario& scn, const analyze_options& options )
{
    if ( options.max_depth < 1 )
        throw std::invalid_argument( "depth bound must be at least 1" );

    const pc_automaton aut = compile_to_automaton( scn );
    const auto violates = [ & ]( const product_state& ps ) {
        return aut.accepts_at( ps.pc ) && !eval_cond( scn.check, ps.sys.values() );
    };

    std::vector< search_node > nodes;
    std::unordered_map< product_state, std::size_t, product_state_hash > visited;
    product_state init{ initial_state( spec ), aut.initial() };
    visited.emplace( init, 0 );
    nodes.push_back( { std::move( init ), 0, std::nullopt, -1 } );
    if ( violates( nodes.front().state ) )
        return violation{ rebuild( nodes, 0 ) };

    std::optional< std::mt19937_64 > rng;
    if ( options.shuffle_seed )
        rng.emplace( *options.shuffle_seed );

    const unsigned workers = std::max( 1u, options.workers );
    std::vector< std::size_t > frontier{ 0 };
    int depth = 0;
    while ( depth < options.max_depth && !frontier.empty() )
    {
        std::vector< expansion > results( frontier.size() );
        if ( workers == 1 || frontier.size() < 2 * workers )
        {
            expand_range( spec, scn, aut, nodes, frontier, results, 0, frontier.size() );
        }
        else
        {
            std::vector< std::jthread > pool;
            const std::size_t chunk = ( frontier.size() + workers - 1 ) / workers;
            for ( std::size_t begin = 0; begin < frontier.size(); begin += chunk )
            {
                const std::size_t end = std::min( frontier.size(), begin + chunk );
                pool.emplace_back( [ &, begin, end ] {
                    expand_range( spec, scn, aut, nodes, frontier, results, begin, end );
                } );
            }
        }

        ++depth;
        std::vector< std::size_t > next;
        for ( std::size_t i = 0; i < frontier.size(); ++i )
        {
            auto& result = results[ i ];
            if ( result.failure )
            {
                try
                {
                    std::rethrow_exception( result.failure );
                }
                catch ( const nondeterministic_transition& e )
                {
                    return to_consistency_error( spec, e );
                }
            }
            if ( rng )
                std::shuffle( result.moves.begin(), result.moves.end(), *rng );
            for ( auto& move : result.moves )
            {
                if ( visited.contains( move.target ) )
                    continue;
                const std::size_t index = nodes.size();
                visited.emplace( move.target, index );
                nodes.push_back( { std::move( move.target ), frontier[ i ], move.input, move.sentence } );
                if ( violates( nodes.back().state ) )
                    return violation{ rebuild( nodes, index ) };
                next.push_back( index );
            }
        }
        frontier = std::move( next );
    }

    no_violation result;
    result.exhausted = frontier.empty();
    result.depth = result.exhausted ? depth - 1 : depth;
    result.states_explored = nodes.size();
    return result;
}

trace simulate( const spec_model& spec, const std::vector< input_event >& inputs )
{
    trace t;
    t.steps.push_back( { std::nullopt, -1, 0, initial_state( spec ) } );
    for ( std::size_t i = 0; i < inputs.size(); ++i )
    {
        const system_state& current = t.steps.back().state;
        try
        {
            validate_input( spec, current, inputs[ i ] );
        }
        catch ( const illegal_input& e )
        {
            throw illegal_input( i + 1, "input " + std::to_string( i + 1 ) + ": " + e.what() );
        }
        t.steps.push_back( { inputs[ i ], -1, 0, step( spec, current, inputs[ i ] ) } );
    }
    return t;
}

// ---------------------------------------------------------------------------
// Text output

namespace
{

std::string step_kind( const spec_model& spec, const trace_step& s, std::size_t index )
{
    std::string kind;
    if ( index == 0 )
        kind = "init";
    else if ( s.input )
        kind = "input " + format_input( spec, *s.input );
    else
        kind = "test";
    if ( s.sentence >= 0 )
        kind += " (sentence " + std::to_string( s.sentence + 1 ) + ")";
    return kind;
}

std::string changes_text( const spec_model& spec, const system_state* before, const system_state& after )
{
    std::string out;
    for ( int v = 0; v < spec.variable_count(); ++v )
    {
        if ( before != nullptr && ( *before )[ v ] == after[ v ] )
            continue;
        if ( !out.empty() )
            out += ' ';
        out += spec.variable( v ).name + "=" + format_value( spec, v, after[ v ] );
    }
    return out.empty() ? "no changes" : out;
}

} // namespace

std::string format_trace( const spec_model& spec, const trace& t )
{
    std::ostringstream out;
    for ( std::size_t i = 0; i < t.steps.size(); ++i )
    {
        const auto& s = t.steps[ i ];
        out << '#' << i << "  " << step_kind( spec, s, i ) << "  =>  "
            << changes_text( spec, i == 0 ? nullptr : &t.steps[ i - 1 ].state, s.state );
        if ( s.pc > 0 )
            out << "  [pc=" << s.pc << ']';
        out << '\n';
    }
    return out.str();
}

std::string format_verdict( const spec_model& spec, const scenario& scn, const verdict& v )
{
    std::ostringstream out;
    if ( const auto* bad = std::get_if< violation >( &v ) )
    {
        const auto& steps = bad->counterexample.steps;
        out << "VIOLATION: the check fails after " << steps.size() - 1 << " step(s)\n";
        out << format_trace( spec, bad->counterexample );
        out << "violated check: " << render_cond( spec, scn.check ) << "  [pc=" << steps.back().pc << "]\n";
    }
    else if ( const auto* ok = std::get_if< no_violation >( &v ) )
    {
        out << "NO VIOLATION within depth " << ok->depth << " (" << ok->states_explored
            << " product states explored; "
            << ( ok->exhausted ? "state space exhausted" : "depth bound reached" ) << ")\n";
    }
    else
    {
        out << "CONSISTENCY ERROR: the specification is nondeterministic\n";
        for ( const auto& d : std::get< consistency_error >( v ).diagnostics )
            out << "  " << d.message << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Structured output

namespace
{

using nlohmann::ordered_json;

ordered_json value_json( const spec_model& spec, int var, value_t v )
{
    const auto& type = spec.variable( var ).type;
    switch ( type.kind )
    {
    case type_kind::boolean: return v != 0;
    case type_kind::integer: return v;
    case type_kind::enumeration: return type.format( v );
    }
    return v;
}

ordered_json state_json( const spec_model& spec, const system_state* before, const system_state& after )
{
    ordered_json out = ordered_json::object();
    for ( int v = 0; v < spec.variable_count(); ++v )
        if ( before == nullptr || ( *before )[ v ] != after[ v ] )
            out[ spec.variable( v ).name ] = value_json( spec, v, after[ v ] );
    return out;
}

ordered_json steps_json( const spec_model& spec, const trace& t )
{
    ordered_json steps = ordered_json::array();
    for ( std::size_t i = 0; i < t.steps.size(); ++i )
    {
        const auto& s = t.steps[ i ];
        ordered_json j;
        j[ "index" ] = i;
        j[ "kind" ] = i == 0 ? "init" : s.input ? "input" : "test";
        if ( i > 0 && s.input )
            j[ "input" ] = { { "variable", spec.variable( s.input->var ).name },
                             { "value", value_json( spec, s.input->var, s.input->value ) } };
        if ( s.sentence >= 0 )
            j[ "sentence" ] = s.sentence + 1;
        if ( s.pc > 0 )
            j[ "pc" ] = s.pc;
        j[ "changes" ] = state_json( spec, i == 0 ? nullptr : &t.steps[ i - 1 ].state, s.state );
        j[ "state" ] = state_json( spec, nullptr, s.state );
        steps.push_back( std::move( j ) );
    }
    return steps;
}

} // namespace

std::string verdict_to_json( const spec_model& spec, const scenario& scn, const verdict& v )
{
    ordered_json doc;
    doc[ "kind" ] = "verdict";
    doc[ "spec" ] = spec.name;
    if ( const auto* bad = std::get_if< violation >( &v ) )
    {
        doc[ "verdict" ] = "violation";
        doc[ "violated_check" ] = render_cond( spec, scn.check );
        doc[ "trace" ] = steps_json( spec, bad->counterexample );
    }
    else if ( const auto* ok = std::get_if< no_violation >( &v ) )
    {
        doc[ "verdict" ] = "no_violation";
        doc[ "depth" ] = ok->depth;
        doc[ "states_explored" ] = ok->states_explored;
        doc[ "exhausted" ] = ok->exhausted;
    }
    else
    {
        doc[ "verdict" ] = "consistency_error";
        ordered_json diags = ordered_json::array();
        for ( const auto& d : std::get< consistency_error >( v ).diagnostics )
            diags.push_back( { { "severity", d.level == severity::error ? "error" : "warning" },
                               { "code", d.code },
                               { "message", d.message } } );
        doc[ "diagnostics" ] = std::move( diags );
    }
    return doc.dump( 2 ) + "\n";
}

std::string trace_to_json( const spec_model& spec, const trace& t )
{
    ordered_json doc;
    doc[ "kind" ] = "simulation";
    doc[ "spec" ] = spec.name;
    doc[ "trace" ] = steps_json( spec, t );
    return doc.dump( 2 ) + "\n";
}

} // namespace scrguide
