#include "support/corpus.hpp"
#include "support/properties.hpp"

#include "scrguide/engine.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace scrguide;
using namespace scrguide::testing;

namespace
{

struct corpus_case
{
    std::string spec;
    std::string scenario;
    bool violation = false;
};

std::vector< corpus_case > corpus_cases()
{
    const auto index = nlohmann::json::parse( read_text( corpus_path( "pacemaker/index.json" ) ) );
    std::vector< corpus_case > out;
    for ( const auto& e : index.at( "expected" ) )
        out.push_back( { "pacemaker/" + index.at( "specs" ).at( e.at( "spec" ).get< std::string >() ).get< std::string >(),
                         "pacemaker/"
                             + index.at( "scenarios" ).at( e.at( "scenario" ).get< std::string >() ).get< std::string >(),
                         e.at( "verdict" ) == "violation" } );
    return out;
}

std::vector< input_event > inputs_of( const trace& t )
{
    std::vector< input_event > out;
    for ( const auto& s : t.steps )
        if ( s.input )
            out.push_back( *s.input );
    return out;
}

} // namespace

TEST_CASE( "corpus verdicts" )
{
    const auto cases = corpus_cases();
    REQUIRE( cases.size() == 6 );
    for ( const auto& c : cases )
    {
        CAPTURE( c.spec );
        CAPTURE( c.scenario );
        const auto spec = corpus_spec( c.spec );
        const auto scn = corpus_scenario( c.scenario, spec );
        const verdict v = analyze( spec, scn );
        CHECK( std::holds_alternative< violation >( v ) == c.violation );
        if ( const auto* clean = std::get_if< no_violation >( &v ) )
            CHECK( clean->exhausted );
    }
}

TEST_CASE( "the low-battery counterexample" )
{
    const auto spec = corpus_spec( "pacemaker/pacemaker_buggy.scr" );
    const auto scn = corpus_scenario( "pacemaker/s1.scn", spec );
    const verdict v = analyze( spec, scn );
    REQUIRE( std::holds_alternative< violation >( v ) );
    const auto& steps = std::get< violation >( v ).counterexample.steps;

    const int mode = *spec.find_variable( "mcPulseCondition" );
    const int volt = *spec.find_variable( "mBATTERYvoltage" );
    const int cmd = *spec.find_variable( "mCommand" );
    const auto& modes = spec.variable( mode ).type;
    bool found = false;
    for ( std::size_t i = 1; i < steps.size(); ++i )
        found = found
                || ( steps[ i - 1 ].state[ mode ] == *modes.literal_value( "POR" )
                     && steps[ i ].state[ mode ] == *modes.literal_value( "Normal" ) && steps[ i ].input
                     && steps[ i ].input->var == cmd
                     && steps[ i ].input->value == *spec.variable( cmd ).type.literal_value( "NORMAL" )
                     && steps[ i ].state[ volt ] < 3 );
    CHECK( found );
    CHECK( steps.size() == 3 );
    CHECK( steps.back().pc == 2 );
}

TEST_CASE( "the magnet counterexample switches bradycardia pacing off first" )
{
    const auto spec = corpus_spec( "pacemaker/pacemaker_buggy.scr" );
    const auto scn = corpus_scenario( "pacemaker/s2.scn", spec );
    const verdict v = analyze( spec, scn );
    REQUIRE( std::holds_alternative< violation >( v ) );
    const auto& steps = std::get< violation >( v ).counterexample.steps;
    const int brad = *spec.find_variable( "mMODEbrad" );
    const int near = *spec.find_variable( "mMagnetNear" );
    const value_t off = *spec.variable( brad ).type.literal_value( "OFF" );

    std::size_t brad_off = 0;
    std::size_t release = 0;
    for ( std::size_t i = 1; i < steps.size(); ++i )
    {
        if ( steps[ i ].input && steps[ i ].input->var == brad && steps[ i ].input->value == off )
            brad_off = i;
        if ( steps[ i ].input && steps[ i ].input->var == near && steps[ i ].input->value == 0 )
            release = i;
    }
    CHECK( brad_off > 0 );
    CHECK( release > brad_off );
}

TEST_CASE( "counterexamples replay through simulate" )
{
    for ( const auto& c : corpus_cases() )
    {
        if ( !c.violation )
            continue;
        const auto spec = corpus_spec( c.spec );
        const auto scn = corpus_scenario( c.scenario, spec );
        const verdict v = analyze( spec, scn );
        const auto& cex = std::get< violation >( v ).counterexample;
        const trace replay = simulate( spec, inputs_of( cex ) );
        std::vector< system_state > states;
        for ( const auto& s : cex.steps )
            if ( s.input || s.sentence < 0 )
                states.push_back( s.state );
        REQUIRE( replay.steps.size() == states.size() );
        for ( std::size_t i = 0; i < states.size(); ++i )
            CHECK( replay.steps[ i ].state == states[ i ] );
    }
}

TEST_CASE( "verdicts are monotone in the depth bound" )
{
    const auto spec = corpus_spec( "pacemaker/pacemaker_buggy.scr" );
    const auto scn = corpus_scenario( "pacemaker/s2.scn", spec );
    bool seen_violation = false;
    for ( int depth = 1; depth <= 8; ++depth )
    {
        analyze_options options;
        options.max_depth = depth;
        const verdict v = analyze( spec, scn, options );
        const bool now = std::holds_alternative< violation >( v );
        CHECK( ( !seen_violation || now ) );
        if ( const auto* clean = std::get_if< no_violation >( &v ) )
        {
            CHECK( clean->depth == depth );
            CHECK_FALSE( clean->exhausted );
        }
        seen_violation = seen_violation || now;
    }
    CHECK( seen_violation );

    analyze_options bad;
    bad.max_depth = 0;
    CHECK_THROWS_AS( (void)analyze( spec, scn, bad ), std::invalid_argument );
}

TEST_CASE( "product successors" )
{
    const auto spec = corpus_spec( "pacemaker/pacemaker_buggy.scr" );

    SUBCASE( "a true test is one silent move" )
    {
        const auto scn = scenario_from_text( "program : { [ true ] } check : { true }", spec );
        const auto aut = compile_to_automaton( scn );
        const auto moves = product_successors( spec, scn, aut, { initial_state( spec ), 1 } );
        REQUIRE( moves.size() == 1 );
        CHECK_FALSE( moves[ 0 ].input );
        CHECK( moves[ 0 ].target.sys == initial_state( spec ) );
        CHECK( moves[ 0 ].target.pc == 2 );
    }
    SUBCASE( "a release guard cannot fire while the magnet is away" )
    {
        const auto scn = scenario_from_text( "program : { stateChange[@F(tMagnetON)] } check : { true }", spec );
        const auto aut = compile_to_automaton( scn );
        CHECK( product_successors( spec, scn, aut, { initial_state( spec ), 1 } ).empty() );
    }
    SUBCASE( "releasing the magnet in MAGnormal returns to Normal" )
    {
        const auto scn = scenario_from_text( "program : { stateChange[@F(tMagnetON)] } check : { true }", spec );
        const auto aut = compile_to_automaton( scn );
        auto s = initial_state( spec );
        const int mode = *spec.find_variable( "mcPulseCondition" );
        s.set( mode, *spec.variable( mode ).type.literal_value( "MAGnormal" ) );
        s.set( *spec.find_variable( "mMagnetNear" ), 1 );
        s.set( *spec.find_variable( "tMagnetON" ), 1 );
        const auto moves = product_successors( spec, scn, aut, { s, 1 } );
        REQUIRE_FALSE( moves.empty() );
        for ( const auto& m : moves )
            CHECK( m.target.sys[ mode ] == *spec.variable( mode ).type.literal_value( "Normal" ) );
    }
}

TEST_CASE( "simulation" )
{
    const auto spec = corpus_spec( "pacemaker/pacemaker_buggy.scr" );
    const int volt = *spec.find_variable( "mBATTERYvoltage" );
    const int mode = *spec.find_variable( "mcPulseCondition" );

    CHECK( simulate( spec, {} ).steps.size() == 1 );
    CHECK( simulate( spec, {} ).steps[ 0 ].state == initial_state( spec ) );

    const trace t = simulate( spec, { { volt, 4 }, { volt, 1 } } );
    REQUIRE( t.steps.size() == 3 );
    CHECK( t.steps.back().state[ mode ] == *spec.variable( mode ).type.literal_value( "POR" ) );

    try
    {
        (void)simulate( spec, { { volt, 4 }, { volt, 4 } } );
        FAIL( "expected illegal_input" );
    }
    catch ( const illegal_input& e )
    {
        CHECK( e.position() == 2 );
    }
}

TEST_CASE( "inconsistent specs end the search with a consistency error" )
{
    const auto spec = spec_from_text( "spec N\nmonitored\n  x : bool = false;\n"
                                      "modeclass M {\n  modes A, B, C;\n  initial A;\n"
                                      "  A -- @T(x) --> B\n  A -- @C(x) --> C\n}\n" );
    const auto scn = scenario_from_text( "program : { stateChange } check : { true }", spec );
    const verdict v = analyze( spec, scn );
    REQUIRE( std::holds_alternative< consistency_error >( v ) );
    CHECK( std::get< consistency_error >( v ).diagnostics.at( 0 ).code == "nondeterminism" );
}

TEST_CASE( "engine agrees with the set-based oracle" )
{
    const auto result = check_engine_oracle( 21, 500 );
    INFO( result.first_failure );
    CHECK( result.ok() );
}

TEST_CASE( "exploration order and workers do not change results" )
{
    const auto result = check_order_independence( 22, 200 );
    INFO( result.first_failure );
    CHECK( result.ok() );

    const auto spec = corpus_spec( "pacemaker/pacemaker_fixed.scr" );
    const auto scn = corpus_scenario( "pacemaker/s1.scn", spec );
    analyze_options parallel;
    parallel.workers = 4;
    CHECK( format_verdict( spec, scn, analyze( spec, scn, parallel ) ) == format_verdict( spec, scn, analyze( spec, scn ) ) );
}

TEST_CASE( "structured output is well-formed" )
{
    const auto spec = corpus_spec( "pacemaker/pacemaker_buggy.scr" );
    const auto scn = corpus_scenario( "pacemaker/s1.scn", spec );
    const auto doc = nlohmann::json::parse( verdict_to_json( spec, scn, analyze( spec, scn ) ) );
    CHECK( doc.at( "kind" ) == "verdict" );
    CHECK( doc.at( "verdict" ) == "violation" );
    REQUIRE( doc.at( "trace" ).size() == 3 );
    CHECK( doc.at( "trace" )[ 0 ].at( "kind" ) == "init" );
    CHECK( doc.at( "trace" )[ 2 ].at( "input" ).at( "variable" ) == "mCommand" );
    CHECK( doc.at( "trace" )[ 2 ].at( "state" ).at( "mcPulseCondition" ) == "Normal" );
}
