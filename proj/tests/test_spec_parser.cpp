#include "support/corpus.hpp"
#include "support/properties.hpp"

#include "scrguide/spec_parser.hpp"

#include <doctest.h>

#include <algorithm>

using namespace scrguide;
using namespace scrguide::testing;

namespace
{

const char* const battery_spec = R"(spec Battery

constants
  BatteryLevel = 3;

types
  Voltage = int 0..7;

monitored
  mBATTERYvoltage : Voltage = 5;

modeclass mcPulseCondition {
  modes Normal, POR;
  initial Normal;
  Normal -- @T(mBATTERYvoltage < BatteryLevel) --> POR
}
)";

std::vector< diagnostic > errors_of( const std::string& text )
{
    return parse_spec( text, "bad.scr" ).diagnostics;
}

bool has_code( const std::vector< diagnostic >& diags, const std::string& code )
{
    return std::any_of( diags.begin(), diags.end(), [ & ]( const diagnostic& d ) { return d.code == code; } );
}

} // namespace

TEST_CASE( "a mode row maps onto the mode table" )
{
    const auto spec = spec_from_text( battery_spec );
    REQUIRE( spec.mode_tables.size() == 1 );
    const auto& row = spec.mode_tables.front().rows.at( 0 );
    const int mc = *spec.find_variable( "mcPulseCondition" );
    const int volt = *spec.find_variable( "mBATTERYvoltage" );

    CHECK( spec.variable( mc ).type.format( row.from ) == "Normal" );
    CHECK( spec.variable( mc ).type.format( row.to ) == "POR" );
    CHECK( row.event.trigger == edge::becomes_true );
    CHECK( row.event.body.k == cond_expr::kind::compare );
    CHECK( row.event.body.lhs.var == volt );
    CHECK( row.event.body.op == cmp_op::lt );
    CHECK( row.event.body.rhs.constant == "BatteryLevel" );
    CHECK( row.event.body.rhs.value == 3 );
    CHECK_FALSE( row.event.when.has_value() );
}

TEST_CASE( "empty input asks for the spec header" )
{
    const auto parsed = parse_spec( "", "empty.scr" );
    REQUIRE_FALSE( parsed.value );
    REQUIRE( parsed.diagnostics.size() == 1 );
    CHECK( parsed.diagnostics[ 0 ].code == "syntax" );
    CHECK( parsed.diagnostics[ 0 ].message.find( "expected spec header" ) != std::string::npos );
}

TEST_CASE( "an undeclared variable is reported with its span" )
{
    std::string text = battery_spec;
    text.replace( text.find( "@T(mBATTERYvoltage" ), 18, "@T(mFoo" );
    const auto diags = errors_of( text );
    REQUIRE( has_code( diags, "undeclared" ) );
    const auto& d = *std::find_if( diags.begin(), diags.end(), []( const diagnostic& x ) { return x.code == "undeclared"; } );
    CHECK( d.message.find( "mFoo" ) != std::string::npos );
    CHECK( d.span.file == "bad.scr" );
    CHECK( d.span.start_line == 15 );
    CHECK( d.span.start_col == 16 );
    CHECK( d.span.end_col == 20 );
}

TEST_CASE( "static errors carry their codes" )
{
    SUBCASE( "duplicate variable" )
    {
        std::string text = battery_spec;
        text.replace( text.find( "modeclass" ), 0, "terms\n  mBATTERYvoltage : bool = false;\n\n" );
        CHECK( has_code( errors_of( text ), "duplicate" ) );
    }
    SUBCASE( "comparison of a boolean with an integer" )
    {
        const std::string text = "spec T\nmonitored\n  x : bool = false;\ncontrolled\n  y : bool = false;\n"
                                 "condtable y {\n  * -- x < 3 --> true\n  * -- true --> false\n}\n";
        CHECK( has_code( errors_of( text ), "type" ) );
    }
    SUBCASE( "initial value outside its range" )
    {
        CHECK( has_code( errors_of( "spec T\nmonitored\n  x : int 0..3 = 9;\n" ), "range" ) );
    }
    SUBCASE( "empty integer range" )
    {
        CHECK( has_code( errors_of( "spec T\nmonitored\n  x : int 4..3 = 4;\n" ), "bad-type" ) );
    }
    SUBCASE( "dependent variable without a table" )
    {
        CHECK( has_code( errors_of( "spec T\nmonitored\n  x : bool = false;\nterms\n  t : bool = false;\n" ),
                         "table-def" ) );
    }
    SUBCASE( "table for a monitored variable" )
    {
        CHECK( has_code( errors_of( "spec T\nmonitored\n  x : bool = false;\ncondtable x {\n  * -- true --> true\n}\n" ),
                         "table-def" ) );
    }
    SUBCASE( "mode without rows and without a default" )
    {
        const std::string text = "spec T\nmonitored\n  x : bool = false;\ncontrolled\n  y : bool = false;\n"
                                 "modeclass M {\n  modes A, B;\n  initial A;\n}\n"
                                 "condtable y {\n  in M;\n  A -- x --> true\n  A -- NOT x --> false\n}\n";
        CHECK( has_code( errors_of( text ), "uncovered-mode" ) );
    }
    SUBCASE( "circular definitions" )
    {
        const std::string text = "spec T\nmonitored\n  x : bool = false;\nterms\n  p : bool = false;\n  q : bool = false;\n"
                                 "condtable p {\n  * -- q --> true\n  * -- NOT q --> false\n}\n"
                                 "condtable q {\n  * -- p --> true\n  * -- NOT p --> false\n}\n";
        CHECK( has_code( errors_of( text ), "cycle" ) );
    }
    SUBCASE( "stray character" )
    {
        CHECK( has_code( errors_of( "spec T\nmonitored\n  x : bool = false; $\n" ), "lex" ) );
    }
}

TEST_CASE( "every diagnostic span lies inside the input" )
{
    const auto result = check_diagnostic_spans( 17, 300 );
    INFO( result.first_failure );
    CHECK( result.ok() );
}

TEST_CASE( "the corpus round-trips through render" )
{
    for ( const char* name : { "pacemaker/pacemaker_buggy.scr", "pacemaker/pacemaker_fixed.scr" } )
    {
        CAPTURE( name );
        const auto spec = corpus_spec( name );
        const auto again = spec_from_text( render_spec( spec ) );
        CHECK( spec == again );
        CHECK( render_spec( again ) == render_spec( spec ) );
    }
}

TEST_CASE( "small specs round-trip" )
{
    SUBCASE( "one variable" )
    {
        const auto spec = spec_from_text( "spec One\nmonitored\n  x : bool = true;\n" );
        CHECK( spec == spec_from_text( render_spec( spec ) ) );
    }
    SUBCASE( "constants are preserved" )
    {
        const auto spec = spec_from_text( battery_spec );
        const auto again = spec_from_text( render_spec( spec ) );
        CHECK( spec == again );
        REQUIRE( again.constants.size() == 1 );
        CHECK( again.constants[ 0 ].name == "BatteryLevel" );
        CHECK( std::get< value_t >( again.constants[ 0 ].value ) == 3 );
    }
}

TEST_CASE( "generated specs round-trip" )
{
    const auto result = check_round_trip( 1, 300 );
    INFO( result.first_failure );
    CHECK( result.ok() );
}

TEST_CASE( "renderer keeps operator grouping" )
{
    const std::string text = "spec G\nmonitored\n  a : bool = false;\n  b : bool = false;\n  c : bool = false;\n"
                             "controlled\n  y : bool = false;\n"
                             "condtable y {\n  * -- (a OR b) AND NOT (c AND a) --> true\n"
                             "  * -- NOT ((a OR b) AND NOT (c AND a)) --> false\n}\n";
    const auto spec = spec_from_text( text );
    const auto rendered = render_spec( spec );
    CHECK( rendered.find( "(a OR b) AND NOT (c AND a) --> true" ) != std::string::npos );
    CHECK( spec == spec_from_text( rendered ) );
}
