#include "scrguide/cli.hpp"

#include "front_end.hpp"
#include "scrguide/consistency.hpp"
#include "scrguide/engine.hpp"
#include "scrguide/promela.hpp"
#include "scrguide/scenario.hpp"
#include "scrguide/spec_parser.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace scrguide
{

namespace
{

std::optional< std::string > read_file( const std::string& path, std::ostream& err )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
    {
        err << path << ": error: cannot read file\n";
        return std::nullopt;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void print_with_file( std::ostream& stream, std::vector< diagnostic > diags, const std::string& file )
{
    for ( auto& d : diags )
        if ( d.span.file.empty() )
            d.span.file = file;
    print_diagnostics( stream, diags );
}

std::optional< spec_model > load_spec( const std::string& path, std::ostream& err )
{
    const auto text = read_file( path, err );
    if ( !text )
        return std::nullopt;
    auto parsed = parse_spec( *text, path );
    print_diagnostics( err, parsed.diagnostics );
    return std::move( parsed.value );
}

std::optional< scenario > load_scenario( const std::string& path, const spec_model& spec, std::ostream& err )
{
    const auto text = read_file( path, err );
    if ( !text )
        return std::nullopt;
    auto parsed = parse_scenario( *text, spec, path );
    print_diagnostics( err, parsed.diagnostics );
    return std::move( parsed.value );
}

// One `variable = value` per line; `#` starts a comment.
std::optional< std::vector< input_event > > load_inputs( const std::string& path, const spec_model& spec,
                                                         std::ostream& err )
{
    const auto text = read_file( path, err );
    if ( !text )
        return std::nullopt;

    std::vector< input_event > inputs;
    std::vector< diagnostic > diags;
    std::istringstream lines{ *text };
    std::string line;
    int line_no = 0;
    while ( std::getline( lines, line ) )
    {
        ++line_no;
        std::vector< diagnostic > local;
        auto tokens = tokenize( line, path, local );
        for ( auto& t : tokens )
            t.span.start_line = t.span.end_line = line_no;
        if ( tokens.front().kind == token_kind::end_of_input && local.empty() )
            continue;

        const std::size_t position = inputs.size() + 1;
        detail::token_cursor cur{ std::move( tokens ), local };
        try
        {
            const token name = cur.expect_identifier( "monitored variable name" );
            cur.expect( token_kind::eq, "'='" );
            const auto raw = detail::parse_value( cur );
            if ( !cur.at( token_kind::end_of_input ) )
                cur.fail( "expected end of line" );

            const auto var = spec.find_variable( name.text );
            if ( !var || spec.variable( *var ).role != var_role::monitored )
            {
                local.push_back( { severity::error, "illegal-input",
                                   "input " + std::to_string( position ) + ": '" + name.text
                                       + "' is not a monitored variable",
                                   name.span } );
            }
            else
            {
                detail::resolver r{ spec, local };
                if ( const auto value = r.value( raw, spec.variable( *var ).type ) )
                    inputs.push_back( { *var, *value } );
            }
        }
        catch ( const detail::syntax_abort& )
        {
        }
        diags.insert( diags.end(), local.begin(), local.end() );
        if ( has_errors( diags ) )
            break;
    }
    print_diagnostics( err, diags );
    if ( has_errors( diags ) )
        return std::nullopt;
    return inputs;
}

int typecheck_command( const std::string& spec_path, std::ostream& out, std::ostream& err )
{
    const auto spec = load_spec( spec_path, err );
    if ( !spec )
        return exit_usage;
    out << spec_path << ": ok: spec " << spec->name << " with " << spec->variable_count() << " variable(s), "
        << spec->mode_tables.size() + spec->event_tables.size() + spec->condition_tables.size() << " table(s)\n";
    return exit_ok;
}

int consistency_command( const std::string& spec_path, std::ostream& out, std::ostream& err )
{
    const auto spec = load_spec( spec_path, err );
    if ( !spec )
        return exit_usage;
    const auto diags = check_consistency( *spec );
    print_with_file( out, diags, spec_path );
    const auto errors = std::count_if( diags.begin(), diags.end(),
                                       []( const diagnostic& d ) { return d.level == severity::error; } );
    out << spec_path << ": " << errors << " consistency error(s), " << diags.size() - static_cast< std::size_t >( errors )
        << " warning(s)\n";
    return errors > 0 ? exit_finding : exit_ok;
}

int verdict_exit_code( const verdict& v )
{
    return std::holds_alternative< no_violation >( v ) ? exit_ok : exit_finding;
}

struct check_args
{
    std::string spec;
    std::string scenario;
    int depth = 10000;
    std::string output = "text";
    std::optional< std::uint64_t > seed;
    unsigned workers = 1;
};

int check_command( const check_args& args, std::ostream& out, std::ostream& err )
{
    const auto spec = load_spec( args.spec, err );
    if ( !spec )
        return exit_usage;
    const auto scn = load_scenario( args.scenario, *spec, err );
    if ( !scn )
        return exit_usage;

    analyze_options options;
    options.max_depth = args.depth;
    options.workers = args.workers;
    options.shuffle_seed = args.seed;
    const verdict v = analyze( *spec, *scn, options );
    if ( args.output == "structured" )
        out << verdict_to_json( *spec, *scn, v );
    else
        out << format_verdict( *spec, *scn, v );
    return verdict_exit_code( v );
}

int simulate_command( const std::string& spec_path, const std::string& inputs_path, const std::string& output,
                      std::ostream& out, std::ostream& err )
{
    const auto spec = load_spec( spec_path, err );
    if ( !spec )
        return exit_usage;
    const auto inputs = load_inputs( inputs_path, *spec, err );
    if ( !inputs )
        return exit_usage;
    try
    {
        const trace t = simulate( *spec, *inputs );
        out << ( output == "structured" ? trace_to_json( *spec, t ) : format_trace( *spec, t ) );
        return exit_ok;
    }
    catch ( const illegal_input& e )
    {
        err << inputs_path << ": error[illegal-input]: " << e.what() << "\n";
        return exit_usage;
    }
    catch ( const nondeterministic_transition& e )
    {
        err << spec_path << ": error[nondeterminism]: " << e.what() << "\n";
        return exit_finding;
    }
}

int emit_command( const std::string& spec_path, const std::string& scenario_path, const std::string& output_path,
                  std::optional< int > unroll, std::ostream& out, std::ostream& err )
{
    const auto spec = load_spec( spec_path, err );
    if ( !spec )
        return exit_usage;
    const auto scn = load_scenario( scenario_path, *spec, err );
    if ( !scn )
        return exit_usage;

    promela_options options;
    options.unroll = unroll;
    options.spec_label = spec_path;
    options.scenario_label = scenario_path;
    const auto emitted = emit_promela( *spec, *scn, options );
    print_with_file( err, emitted.diagnostics, spec_path );
    if ( !emitted )
    {
        err << spec_path << ": error: no Promela model emitted for a spec with consistency errors\n";
        return exit_usage;
    }

    std::ofstream file{ output_path, std::ios::binary };
    if ( !file || !( file << emitted.value->text ) )
    {
        err << output_path << ": error: cannot write file\n";
        return exit_usage;
    }
    out << "wrote " << output_path << " (assertion at line " << emitted.value->assertion_line << ", pc==" << emitted.value->pc_count
        << ")\n";
    return exit_ok;
}

} // namespace

int run_cli( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Scenario-guided analysis of SCR requirements specifications", "scrguide" };
    app.require_subcommand( 1 );

    std::string spec_path;
    std::string scenario_path;

    auto* typecheck = app.add_subcommand( "typecheck", "Parse and type check a spec" );
    typecheck->add_option( "spec", spec_path, "Spec file (.scr)" )->required();

    auto* consistency = app.add_subcommand( "consistency", "Check table disjointness and completeness" );
    consistency->add_option( "spec", spec_path, "Spec file (.scr)" )->required();

    check_args check_opts;
    auto* check = app.add_subcommand( "check", "Search for a run of the scenario that violates its check" );
    check->add_option( "spec", check_opts.spec, "Spec file (.scr)" )->required();
    check->add_option( "scenario", check_opts.scenario, "Scenario file (.scn)" )->required();
    check->add_option( "--depth", check_opts.depth, "Maximum number of transitions" )
        ->check( CLI::Range( 1, std::numeric_limits< int >::max() ) );
    check->add_option( "--output", check_opts.output, "Output format" )
        ->check( CLI::IsMember( { "text", "structured" } ) );
    check->add_option( "--seed", check_opts.seed, "Explore successors in a seeded random order" );
    check->add_option( "--workers", check_opts.workers, "Threads computing successors" )
        ->check( CLI::Range( 1u, 256u ) );

    std::string inputs_path;
    std::string simulate_output = "text";
    auto* sim = app.add_subcommand( "simulate", "Apply a sequence of monitored inputs" );
    sim->add_option( "spec", spec_path, "Spec file (.scr)" )->required();
    sim->add_option( "--inputs", inputs_path, "Input file, one 'variable = value' per line" )->required();
    sim->add_option( "--output", simulate_output, "Output format" )->check( CLI::IsMember( { "text", "structured" } ) );

    std::string output_path;
    std::optional< int > unroll;
    auto* emit = app.add_subcommand( "emit-promela", "Translate a spec and scenario to Promela" );
    emit->add_option( "spec", spec_path, "Spec file (.scr)" )->required();
    emit->add_option( "scenario", scenario_path, "Scenario file (.scn)" )->required();
    emit->add_option( "-o,--output", output_path, "Output file (.pml)" )->required();
    emit->add_option( "--unroll", unroll, "Unroll each loop at most k times instead of using do-od" )
        ->check( CLI::NonNegativeNumber );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e, out, err );
        return code == 0 ? exit_ok : exit_usage;
    }

    if ( typecheck->parsed() )
        return typecheck_command( spec_path, out, err );
    if ( consistency->parsed() )
        return consistency_command( spec_path, out, err );
    if ( check->parsed() )
        return check_command( check_opts, out, err );
    if ( sim->parsed() )
        return simulate_command( spec_path, inputs_path, simulate_output, out, err );
    return emit_command( spec_path, scenario_path, output_path, unroll, out, err );
}

} // namespace scrguide
