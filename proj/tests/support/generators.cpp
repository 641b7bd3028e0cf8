#include "generators.hpp"

#include <algorithm>
#include <sstream>

namespace scrguide::testing
{

namespace
{

// ---------------------------------------------------------------------------
// Rich spec text

struct gen_var
{
    std::string name;
    int kind = 0; // 0 bool, 1 int, 2 enum
    int lo = 0;
    int hi = 1;
    std::vector< std::string > literals;
    std::string type_text;
};

struct rich_context
{
    std::vector< std::pair< std::string, int > > int_constants;
    std::vector< std::pair< std::string, std::string > > enum_constants;
};

std::string value_text( rng& r, const gen_var& v, const rich_context& ctx, bool allow_constant )
{
    switch ( v.kind )
    {
    case 0: return r.coin() ? "true" : "false";
    case 1:
        if ( allow_constant && !ctx.int_constants.empty() && r.coin( 0.3 ) )
            return r.pick( ctx.int_constants ).first;
        return std::to_string( r.uniform( v.lo, v.hi ) );
    default:
        if ( allow_constant )
        {
            std::vector< std::string > usable;
            for ( const auto& [ name, lit ] : ctx.enum_constants )
                if ( std::find( v.literals.begin(), v.literals.end(), lit ) != v.literals.end() )
                    usable.push_back( name );
            if ( !usable.empty() && r.coin( 0.3 ) )
                return r.pick( usable );
        }
        return r.pick( v.literals );
    }
}

std::string rich_atom( rng& r, const std::vector< gen_var >& pool, const rich_context& ctx )
{
    const auto& v = r.pick( pool );
    switch ( v.kind )
    {
    case 0:
        if ( r.coin( 0.6 ) )
            return v.name;
        return v.name + ( r.coin() ? " = " : " != " ) + value_text( r, v, ctx, false );
    case 1:
    {
        static const std::vector< std::string > ops{ "=", "!=", "<", "<=", ">", ">=" };
        return v.name + " " + r.pick( ops ) + " " + value_text( r, v, ctx, true );
    }
    default: return v.name + ( r.coin() ? " = " : " != " ) + value_text( r, v, ctx, true );
    }
}

std::string rich_cond( rng& r, const std::vector< gen_var >& pool, const rich_context& ctx, int depth )
{
    if ( depth <= 0 || r.coin( 0.4 ) )
    {
        if ( r.coin( 0.05 ) )
            return r.coin() ? "true" : "false";
        return rich_atom( r, pool, ctx );
    }
    const auto wrap = [ & ]( int d ) {
        std::string inner = rich_cond( r, pool, ctx, d );
        return inner.find( ' ' ) == std::string::npos ? inner : "(" + inner + ")";
    };
    switch ( r.uniform( 0, 2 ) )
    {
    case 0: return "NOT " + wrap( depth - 1 );
    case 1:
    {
        std::string out = wrap( depth - 1 );
        for ( int i = r.uniform( 1, 2 ); i > 0; --i )
            out += " AND " + wrap( depth - 1 );
        return out;
    }
    default:
    {
        std::string out = wrap( depth - 1 );
        for ( int i = r.uniform( 1, 2 ); i > 0; --i )
            out += " OR " + wrap( depth - 1 );
        return out;
    }
    }
}

bool mentions_variable( const std::string& text, const std::vector< gen_var >& pool )
{
    std::istringstream words{ text };
    std::string w;
    while ( words >> w )
    {
        w.erase( std::remove_if( w.begin(), w.end(), []( char ch ) { return ch == '(' || ch == ')'; } ), w.end() );
        for ( const auto& v : pool )
            if ( w == v.name )
                return true;
    }
    return false;
}

// Event bodies must mention a variable; constant formulas are rejected.
std::string rich_event_body( rng& r, const std::vector< gen_var >& pool, const rich_context& ctx, int depth )
{
    for ( ;; )
    {
        std::string body = rich_cond( r, pool, ctx, depth );
        if ( mentions_variable( body, pool ) )
            return body;
    }
}

std::string rich_event( rng& r, const std::vector< gen_var >& body_pool, const std::vector< gen_var >& when_pool,
                        const rich_context& ctx )
{
    std::string out;
    const int shape = r.uniform( 0, 9 );
    if ( shape < 2 )
        out = "@C(" + r.pick( body_pool ).name + ")";
    else if ( shape == 2 )
        out = "@C(" + rich_event_body( r, body_pool, ctx, 1 ) + ")";
    else
        out = std::string( r.coin() ? "@T(" : "@F(" ) + rich_event_body( r, body_pool, ctx, 2 ) + ")";
    if ( r.coin( 0.35 ) )
        out += " when " + rich_cond( r, when_pool, ctx, 1 );
    return out;
}

std::string mode_set_text( rng& r, const std::vector< std::string >& modes )
{
    if ( r.coin( 0.25 ) )
        return "*";
    std::string out;
    for ( const auto& m : modes )
        if ( r.coin() )
            out += ( out.empty() ? "" : ", " ) + m;
    return out.empty() ? modes.front() : out;
}

} // namespace

std::string random_spec_text( rng& r )
{
    std::ostringstream out;
    rich_context ctx;
    out << "spec Gen" << r.uniform( 0, 999 ) << "\n";

    const bool use_col = r.coin( 0.6 );
    const bool use_lvl = r.coin( 0.6 );
    const int lvl_lo = r.uniform( -2, 0 );
    const int lvl_hi = r.uniform( 3, 5 );
    const std::vector< std::string > col{ "Red", "Green", "Blue" };

    if ( r.coin( 0.7 ) )
    {
        out << "\nconstants\n";
        for ( int i = r.uniform( 1, 2 ); i > 0; --i )
        {
            const std::string name = "K" + std::to_string( ctx.int_constants.size() );
            const int v = r.uniform( 0, 3 );
            ctx.int_constants.emplace_back( name, v );
            out << "  " << name << " = " << v << ";\n";
        }
        if ( use_col && r.coin() )
        {
            const std::string lit = r.pick( col );
            ctx.enum_constants.emplace_back( "KC", lit );
            out << "  KC = " << lit << ";\n";
        }
    }

    if ( use_col || use_lvl )
    {
        out << "\ntypes\n";
        if ( use_lvl )
            out << "  Lvl = int " << lvl_lo << ".." << lvl_hi << ";\n";
        if ( use_col )
            out << "  Col = enum { Red, Green, Blue };\n";
    }

    const auto make_var = [ & ]( const std::string& name ) {
        gen_var v;
        v.name = name;
        std::vector< int > kinds{ 0, 1 };
        if ( use_lvl )
            kinds.push_back( 3 );
        if ( use_col )
            kinds.push_back( 4 );
        kinds.push_back( 2 );
        switch ( r.pick( kinds ) )
        {
        case 0: v.type_text = "bool"; break;
        case 1:
            v.kind = 1;
            v.lo = r.uniform( -2, 0 );
            v.hi = r.uniform( 3, 5 );
            v.type_text = "int " + std::to_string( v.lo ) + ".." + std::to_string( v.hi );
            break;
        case 3:
            v.kind = 1;
            v.lo = lvl_lo;
            v.hi = lvl_hi;
            v.type_text = "Lvl";
            break;
        case 4:
            v.kind = 2;
            v.literals = col;
            v.type_text = "Col";
            break;
        default:
            v.kind = 2;
            v.literals = { "Lo", "Hi" };
            v.type_text = "enum { Lo, Hi }";
            break;
        }
        return v;
    };
    const auto declare = [ & ]( const gen_var& v ) {
        out << "  " << v.name << " : " << v.type_text << " = " << value_text( r, v, ctx, false ) << ";\n";
    };

    std::vector< gen_var > monitored;
    out << "\nmonitored\n";
    for ( int i = r.uniform( 1, 3 ); i > 0; --i )
    {
        monitored.push_back( make_var( "m" + std::to_string( monitored.size() ) ) );
        declare( monitored.back() );
    }

    const bool has_term = r.coin( 0.6 );
    gen_var term;
    term.name = "t0";
    term.type_text = "bool";
    if ( has_term )
    {
        out << "\nterms\n";
        declare( term );
    }

    const bool has_c = r.coin( 0.7 );
    const bool has_d = r.coin( 0.4 );
    gen_var c = make_var( "c0" );
    gen_var d = make_var( "d0" );
    if ( has_c || has_d )
    {
        out << "\ncontrolled\n";
        if ( has_c )
            declare( c );
        if ( has_d )
            declare( d );
    }

    const bool has_modes = r.coin( 0.8 );
    std::vector< std::string > modes{ "Idle", "Run", "Halt" };
    modes.resize( static_cast< std::size_t >( r.uniform( 1, 3 ) ) );
    gen_var mc;
    mc.name = "Mc";
    mc.kind = 2;
    mc.literals = modes;
    if ( has_modes )
    {
        out << "\nmodeclass Mc {\n  modes ";
        for ( std::size_t i = 0; i < modes.size(); ++i )
            out << ( i ? ", " : "" ) << modes[ i ];
        out << ";\n  initial " << r.pick( modes ) << ";\n";
        for ( int i = r.uniform( 0, 4 ); i > 0; --i )
            out << "  " << r.pick( modes ) << " -- " << rich_event( r, monitored, monitored, ctx ) << " --> "
                << r.pick( modes ) << "\n";
        out << "}\n";
    }

    const auto table_header = [ & ]( const char* kw, const std::string& target, bool in_mc, bool keep ) {
        out << "\n" << kw << " " << target << " {\n";
        if ( in_mc )
            out << "  in Mc;\n";
        if ( keep )
            out << "  default unchanged;\n";
    };

    std::vector< gen_var > upstream = monitored;
    if ( has_term )
    {
        const bool in_mc = has_modes && r.coin();
        const bool keep = r.coin();
        std::vector< gen_var > pool = monitored;
        if ( in_mc )
            pool.push_back( mc );
        table_header( "condtable", term.name, in_mc, keep );
        for ( int i = r.uniform( keep ? 0 : 1, 3 ); i > 0; --i )
        {
            const bool last_star = !keep && i == 1;
            out << "  " << ( in_mc && !last_star ? mode_set_text( r, modes ) : "*" ) << " -- "
                << rich_cond( r, pool, ctx, 2 ) << " --> " << value_text( r, term, ctx, false ) << "\n";
        }
        out << "}\n";
        upstream.push_back( term );
    }

    if ( has_c )
    {
        const bool in_mc = has_modes && r.coin( 0.7 );
        const bool keep = r.coin( 0.6 );
        std::vector< gen_var > when_pool = upstream;
        when_pool.push_back( c );
        table_header( "eventtable", c.name, in_mc, keep );
        for ( int i = r.uniform( keep ? 0 : 1, 3 ); i > 0; --i )
        {
            const bool last_star = !keep && i == 1;
            out << "  " << ( in_mc && !last_star ? mode_set_text( r, modes ) : "*" ) << " -- "
                << rich_event( r, upstream, when_pool, ctx ) << " --> " << value_text( r, c, ctx, true ) << "\n";
        }
        out << "}\n";
    }

    if ( has_d )
    {
        const bool keep = r.coin();
        table_header( "condtable", d.name, false, keep );
        std::vector< gen_var > pool = upstream;
        if ( has_c )
            pool.push_back( c );
        for ( int i = r.uniform( 1, 2 ); i > 0; --i )
            out << "  * -- " << rich_cond( r, pool, ctx, 2 ) << " --> " << value_text( r, d, ctx, true ) << "\n";
        out << "}\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Mini specs

bool mini_formula::eval( const mini_state& s ) const
{
    switch ( k )
    {
    case kind::literal: return truth;
    case kind::var: return ( var == 'a' ? s.a : var == 'b' ? s.b : s.c ) != 0;
    case kind::mode_is: return s.mode == mode;
    case kind::mode_not: return s.mode != mode;
    case kind::negation: return !args.front().eval( s );
    case kind::conjunction:
        return std::all_of( args.begin(), args.end(), [ & ]( const mini_formula& f ) { return f.eval( s ); } );
    case kind::disjunction:
        return std::any_of( args.begin(), args.end(), [ & ]( const mini_formula& f ) { return f.eval( s ); } );
    }
    return false;
}

std::string mini_formula::text() const
{
    const auto nested = []( const mini_formula& f ) {
        const bool compound = f.k == kind::conjunction || f.k == kind::disjunction || f.k == kind::negation;
        return compound ? "(" + f.text() + ")" : f.text();
    };
    switch ( k )
    {
    case kind::literal: return truth ? "true" : "false";
    case kind::var: return std::string( 1, var );
    case kind::mode_is: return "M = M" + std::to_string( mode );
    case kind::mode_not: return "M != M" + std::to_string( mode );
    case kind::negation: return "NOT " + nested( args.front() );
    case kind::conjunction:
    case kind::disjunction:
    {
        std::string out;
        for ( const auto& a : args )
            out += ( out.empty() ? "" : k == kind::conjunction ? " AND " : " OR " ) + nested( a );
        return out;
    }
    }
    return {};
}

bool mini_event::eval( const mini_state& old_state, const mini_state& new_state ) const
{
    const bool before = body.eval( old_state );
    const bool after = body.eval( new_state );
    const bool edge = rising ? ( !before && after ) : ( before && !after );
    return edge && ( !has_when || when.eval( old_state ) );
}

std::string mini_event::text() const
{
    std::string out = std::string( rising ? "@T(" : "@F(" ) + body.text() + ")";
    if ( has_when )
        out += " when " + when.text();
    return out;
}

std::string mini_spec::text() const
{
    std::ostringstream out;
    out << "spec Mini\n\nmonitored\n  a : bool = false;\n";
    if ( monitored == 2 )
        out << "  b : bool = " << ( initial_b ? "true" : "false" ) << ";\n";
    if ( has_c )
        out << "\ncontrolled\n  c : bool = false;\n";
    out << "\nmodeclass M {\n  modes ";
    for ( int m = 0; m < modes; ++m )
        out << ( m ? ", " : "" ) << "M" << m;
    out << ";\n  initial M0;\n";
    for ( const auto& row : rows )
    {
        out << "  M" << row.from << " -- " << ( row.rising ? "@T(" : "@F(" ) << row.var << ")";
        if ( row.has_when )
            out << " when " << row.when.text();
        out << " --> M" << row.to << "\n";
    }
    out << "}\n";
    if ( has_c )
    {
        out << "\ncondtable c {\n  in M;\n  default unchanged;\n";
        for ( int m = 0; m < modes; ++m )
        {
            const auto& f = c_rows[ static_cast< std::size_t >( m ) ];
            if ( !f )
                continue;
            out << "  M" << m << " -- " << f->text() << " --> true\n";
            out << "  M" << m << " -- NOT (" << f->text() << ") --> false\n";
        }
        out << "}\n";
    }
    return out.str();
}

mini_state mini_spec::initial() const
{
    mini_state s;
    s.b = monitored == 2 ? initial_b : 0;
    return s;
}

mini_state mini_spec::step( const mini_state& s, char input ) const
{
    mini_state n = s;
    int& slot = input == 'a' ? n.a : n.b;
    slot = 1 - slot;
    const bool rising = slot == 1;

    for ( const auto& row : rows )
        if ( row.from == s.mode && row.var == input && row.rising == rising
             && ( !row.has_when || row.when.eval( s ) ) )
            n.mode = row.to;

    if ( has_c )
        if ( const auto& f = c_rows[ static_cast< std::size_t >( n.mode ) ] )
            n.c = f->eval( n ) ? 1 : 0;
    return n;
}

std::vector< mini_state > mini_spec::successors( const mini_state& s ) const
{
    std::vector< mini_state > out{ step( s, 'a' ) };
    if ( monitored == 2 )
        out.push_back( step( s, 'b' ) );
    return out;
}

namespace
{

mini_formula mini_atom( rng& r, const std::vector< char >& vars, int modes, bool allow_mode )
{
    mini_formula f;
    const int choice = r.uniform( 0, allow_mode ? 9 : 6 );
    if ( choice == 0 )
    {
        f.k = mini_formula::kind::literal;
        f.truth = r.coin();
    }
    else if ( choice <= 6 )
    {
        f.k = mini_formula::kind::var;
        f.var = r.pick( vars );
    }
    else
    {
        f.k = r.coin() ? mini_formula::kind::mode_is : mini_formula::kind::mode_not;
        f.mode = r.uniform( 0, modes - 1 );
    }
    return f;
}

mini_formula mini_random_formula( rng& r, const std::vector< char >& vars, int modes, bool allow_mode, int depth )
{
    if ( depth <= 0 || r.coin( 0.45 ) )
        return mini_atom( r, vars, modes, allow_mode );
    mini_formula f;
    switch ( r.uniform( 0, 2 ) )
    {
    case 0:
        f.k = mini_formula::kind::negation;
        f.args.push_back( mini_random_formula( r, vars, modes, allow_mode, depth - 1 ) );
        return f;
    case 1: f.k = mini_formula::kind::conjunction; break;
    default: f.k = mini_formula::kind::disjunction; break;
    }
    for ( int i = r.uniform( 2, 3 ); i > 0; --i )
        f.args.push_back( mini_random_formula( r, vars, modes, allow_mode, depth - 1 ) );
    return f;
}

std::vector< char > mini_vars( const mini_spec& spec, bool with_c )
{
    std::vector< char > vars{ 'a' };
    if ( spec.monitored == 2 )
        vars.push_back( 'b' );
    if ( with_c && spec.has_c )
        vars.push_back( 'c' );
    return vars;
}

} // namespace

mini_spec random_mini_spec( rng& r )
{
    mini_spec spec;
    spec.monitored = r.uniform( 1, 2 );
    spec.modes = r.uniform( 1, 3 );
    spec.initial_b = r.uniform( 0, 1 );
    spec.has_c = r.coin( 0.6 );

    const auto old_vars = mini_vars( spec, true );
    for ( int m = 0; m < spec.modes; ++m )
        for ( char v : mini_vars( spec, false ) )
            for ( bool rising : { true, false } )
            {
                if ( !r.coin( 0.45 ) )
                    continue;
                mini_mode_row row;
                row.from = m;
                row.var = v;
                row.rising = rising;
                row.to = r.uniform( 0, spec.modes - 1 );
                if ( r.coin( 0.4 ) )
                {
                    row.has_when = true;
                    row.when = mini_random_formula( r, old_vars, spec.modes, true, 1 );
                }
                spec.rows.push_back( row );
            }

    spec.c_rows.resize( static_cast< std::size_t >( spec.modes ) );
    if ( spec.has_c )
        for ( auto& f : spec.c_rows )
            if ( r.coin( 0.7 ) )
                f = mini_random_formula( r, mini_vars( spec, false ), spec.modes, false, 2 );
    return spec;
}

mini_scenario random_mini_scenario( rng& r, const mini_spec& spec )
{
    const auto vars = mini_vars( spec, true );
    mini_scenario scn;
    for ( int i = r.uniform( 1, 3 ); i > 0; --i )
    {
        mini_sentence s;
        switch ( r.uniform( 0, 2 ) )
        {
        case 0:
            s.k = mini_sentence::kind::test;
            s.formula = mini_random_formula( r, vars, spec.modes, true, 2 );
            break;
        case 1: s.k = mini_sentence::kind::change; break;
        default:
            s.k = mini_sentence::kind::guarded;
            s.guard_is_event = r.coin( 0.6 );
            if ( s.guard_is_event )
            {
                s.event.rising = r.coin();
                do
                    s.event.body = mini_random_formula( r, vars, spec.modes, true, 1 );
                while ( s.event.body.k == mini_formula::kind::literal
                        || ( s.event.body.k == mini_formula::kind::negation
                             && s.event.body.args.front().k == mini_formula::kind::literal ) );
                if ( r.coin( 0.3 ) )
                {
                    s.event.has_when = true;
                    s.event.when = mini_random_formula( r, vars, spec.modes, true, 1 );
                }
            }
            s.formula = mini_random_formula( r, vars, spec.modes, true, 1 );
            if ( s.guard_is_event && r.coin( 0.6 ) )
                s.formula = mini_formula{};
            break;
        }
        s.starred = s.k != mini_sentence::kind::test && r.coin( 0.4 );
        scn.sentences.push_back( s );
    }
    scn.check = mini_random_formula( r, vars, spec.modes, true, 2 );
    return scn;
}

std::string mini_scenario::text() const
{
    std::ostringstream out;
    out << "program : {\n";
    for ( std::size_t i = 0; i < sentences.size(); ++i )
    {
        const auto& s = sentences[ i ];
        out << "  ";
        switch ( s.k )
        {
        case mini_sentence::kind::test: out << "[" << s.formula.text() << "]"; break;
        case mini_sentence::kind::change: out << "stateChange"; break;
        case mini_sentence::kind::guarded:
        {
            out << "stateChange[";
            const bool has_cond = !s.guard_is_event || s.formula.k != mini_formula::kind::literal || !s.formula.truth;
            // A when clause extends as far right as it can; parenthesize
            // the event so a following conjunct stays a new-state guard.
            if ( s.guard_is_event )
                out << ( has_cond && s.event.has_when ? "(" + s.event.text() + ")" : s.event.text() );
            if ( s.guard_is_event && has_cond )
                out << " AND ";
            if ( has_cond )
                out << "(" << s.formula.text() << ")";
            out << "]";
            break;
        }
        }
        if ( s.starred )
            out << "*";
        out << ( i + 1 < sentences.size() ? ";\n" : "\n" );
    }
    out << "}\ncheck : { " << check.text() << " }\n";
    return out.str();
}

bool oracle_violates( const mini_spec& spec, const mini_scenario& scn )
{
    const auto post = [ & ]( const mini_sentence& s, const std::set< mini_state >& in ) {
        std::set< mini_state > out;
        for ( const auto& st : in )
        {
            if ( s.k == mini_sentence::kind::test )
            {
                if ( s.formula.eval( st ) )
                    out.insert( st );
                continue;
            }
            for ( const auto& next : spec.successors( st ) )
            {
                bool pass = true;
                if ( s.k == mini_sentence::kind::guarded )
                {
                    if ( s.guard_is_event )
                        pass = s.event.eval( st, next );
                    pass = pass && s.formula.eval( next );
                }
                if ( pass )
                    out.insert( next );
            }
        }
        return out;
    };

    std::set< mini_state > current{ spec.initial() };
    for ( const auto& s : scn.sentences )
    {
        if ( !s.starred )
        {
            current = post( s, current );
            continue;
        }
        std::set< mini_state > reached = current;
        for ( ;; )
        {
            const auto more = post( s, reached );
            const std::size_t before = reached.size();
            reached.insert( more.begin(), more.end() );
            if ( reached.size() == before )
                break;
        }
        current = std::move( reached );
    }
    return std::any_of( current.begin(), current.end(), [ & ]( const mini_state& st ) { return !scn.check.eval( st ); } );
}

// ---------------------------------------------------------------------------
// Programs

program_node random_program( rng& r, int depth, int alphabet )
{
    if ( depth <= 0 || r.coin( 0.35 ) )
        return program_node::leaf( r.uniform( 0, alphabet - 1 ) );
    if ( r.coin( 0.35 ) )
        return program_node::repeat( random_program( r, depth - 1, alphabet ) );
    std::vector< program_node > parts;
    for ( int i = r.uniform( 2, 3 ); i > 0; --i )
        parts.push_back( random_program( r, depth - 1, alphabet ) );
    return program_node::sequence( std::move( parts ) );
}

int leaf_count( const program_node& p )
{
    if ( p.k == program_node::kind::sentence )
        return 1;
    int n = 0;
    for ( const auto& c : p.children )
        n += leaf_count( c );
    return n;
}

std::set< std::vector< int > > denote( const program_node& p, std::size_t max_len )
{
    using language = std::set< std::vector< int > >;
    const auto concat = [ & ]( const language& x, const language& y ) {
        language out;
        for ( const auto& u : x )
            for ( const auto& v : y )
                if ( u.size() + v.size() <= max_len )
                {
                    auto w = u;
                    w.insert( w.end(), v.begin(), v.end() );
                    out.insert( std::move( w ) );
                }
        return out;
    };

    switch ( p.k )
    {
    case program_node::kind::sentence: return max_len >= 1 ? language{ { p.sentence } } : language{};
    case program_node::kind::seq:
    {
        language acc{ {} };
        for ( const auto& c : p.children )
            acc = concat( acc, denote( c, max_len ) );
        return acc;
    }
    case program_node::kind::star:
    {
        const language body = denote( p.children.front(), max_len );
        language acc{ {} };
        for ( ;; )
        {
            language next = concat( acc, body );
            next.insert( acc.begin(), acc.end() );
            if ( next == acc )
                return acc;
            acc = std::move( next );
        }
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Parsed specs

system_state random_state( rng& r, const spec_model& spec )
{
    std::vector< value_t > values;
    for ( const auto& v : spec.variables )
        values.push_back( r.uniform( v.type.min_value(), v.type.max_value() ) );
    return system_state{ std::move( values ) };
}

cond_expr random_cond( rng& r, const spec_model& spec, int depth )
{
    if ( depth <= 0 || r.coin( 0.4 ) )
    {
        const int var = r.uniform( 0, spec.variable_count() - 1 );
        const auto& t = spec.variable( var ).type;
        if ( t.kind == type_kind::boolean && r.coin() )
            return cond_expr::boolean_var( var );
        const auto op = static_cast< cmp_op >( r.uniform( 0, t.kind == type_kind::integer ? 5 : 1 ) );
        return cond_expr::comparison( operand::variable( var ), op,
                                      operand::literal( r.uniform( t.min_value(), t.max_value() ) ) );
    }
    switch ( r.uniform( 0, 2 ) )
    {
    case 0: return cond_expr::negate( random_cond( r, spec, depth - 1 ) );
    case 1: return cond_expr::all_of( { random_cond( r, spec, depth - 1 ), random_cond( r, spec, depth - 1 ) } );
    default: return cond_expr::any_of( { random_cond( r, spec, depth - 1 ), random_cond( r, spec, depth - 1 ) } );
    }
}

} // namespace scrguide::testing
