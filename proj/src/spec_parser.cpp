#include "scrguide/spec_parser.hpp"

#include "front_end.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace scrguide
{

using detail::raw_expr;
using detail::raw_operand;
using detail::token_cursor;

namespace
{

struct raw_type
{
    enum class kind
    {
        named,
        boolean,
        integer,
        enumeration
    };

    kind k = kind::boolean;
    std::string name; // referenced type for kind::named
    raw_operand lo;
    raw_operand hi;
    std::vector< std::pair< std::string, source_span > > literals;
    source_span span;
};

struct raw_named_type
{
    std::string name;
    source_span name_span;
    raw_type type;
};

struct raw_constant
{
    std::string name;
    source_span name_span;
    raw_operand value;
};

struct raw_mode_row
{
    std::string from;
    source_span from_span;
    raw_expr event;
    std::string to;
    source_span to_span;
};

struct raw_variable
{
    std::string name;
    source_span name_span;
    var_role role = var_role::monitored;
    raw_type type;       // unused for mode classes
    raw_operand initial; // for mode classes: k == name, the initial mode

    // mode classes only
    std::vector< std::pair< std::string, source_span > > modes;
    std::vector< raw_mode_row > rows;
};

struct raw_mode_set
{
    bool any = false;
    std::vector< std::pair< std::string, source_span > > names;
    source_span span;
};

struct raw_table_row
{
    raw_mode_set modes;
    raw_expr expr;
    raw_operand value;
};

struct raw_table
{
    bool is_event = true;
    std::string target;
    source_span target_span;
    std::string mode_class;
    source_span mode_class_span;
    bool keep_default = false;
    std::vector< raw_table_row > rows;
};

struct raw_spec
{
    std::string name;
    std::vector< raw_named_type > types;
    std::vector< raw_constant > constants;
    std::vector< raw_variable > variables;
    std::vector< raw_table > tables;
};

// ---------------------------------------------------------------------------
// Syntax

class spec_syntax
{
public:
    explicit spec_syntax( token_cursor& cur ) : _cur{ cur } {}

    raw_spec parse()
    {
        raw_spec spec;
        if ( !_cur.at_keyword( "spec" ) )
            _cur.fail( "expected spec header" );
        _cur.next();
        spec.name = _cur.expect_identifier( "spec name" ).text;
        _cur.accept( token_kind::semicolon );

        while ( !_cur.at( token_kind::end_of_input ) )
        {
            if ( _cur.accept_keyword( "constants" ) )
                constants( spec );
            else if ( _cur.accept_keyword( "types" ) )
                types( spec );
            else if ( _cur.accept_keyword( "monitored" ) )
                variables( spec, var_role::monitored );
            else if ( _cur.accept_keyword( "terms" ) )
                variables( spec, var_role::term );
            else if ( _cur.accept_keyword( "controlled" ) )
                variables( spec, var_role::controlled );
            else if ( _cur.accept_keyword( "modeclass" ) )
                spec.variables.push_back( modeclass() );
            else if ( _cur.accept_keyword( "eventtable" ) )
                spec.tables.push_back( table( true ) );
            else if ( _cur.accept_keyword( "condtable" ) )
                spec.tables.push_back( table( false ) );
            else
                _cur.fail( "expected a section (constants, types, monitored, terms, controlled, modeclass, "
                           "eventtable, condtable)" );
        }
        return spec;
    }

private:
    bool at_declaration() const
    {
        return _cur.at( token_kind::identifier ) && !detail::is_reserved( _cur.peek().text );
    }

    void constants( raw_spec& spec )
    {
        while ( at_declaration() )
        {
            raw_constant c;
            const token& name = _cur.next();
            c.name = name.text;
            c.name_span = name.span;
            _cur.expect( token_kind::eq, "'='" );
            c.value = detail::parse_value( _cur );
            _cur.expect( token_kind::semicolon, "';'" );
            spec.constants.push_back( std::move( c ) );
        }
    }

    void types( raw_spec& spec )
    {
        while ( at_declaration() )
        {
            raw_named_type t;
            const token& name = _cur.next();
            t.name = name.text;
            t.name_span = name.span;
            _cur.expect( token_kind::eq, "'='" );
            t.type = type_expr();
            _cur.expect( token_kind::semicolon, "';'" );
            spec.types.push_back( std::move( t ) );
        }
    }

    raw_type type_expr()
    {
        raw_type t;
        t.span = _cur.peek().span;
        if ( _cur.accept_keyword( "bool" ) )
        {
            t.k = raw_type::kind::boolean;
        }
        else if ( _cur.accept_keyword( "int" ) )
        {
            t.k = raw_type::kind::integer;
            t.lo = detail::parse_value( _cur );
            _cur.expect( token_kind::dotdot, "'..'" );
            t.hi = detail::parse_value( _cur );
            if ( t.lo.k != raw_operand::kind::integer || t.hi.k != raw_operand::kind::integer )
                _cur.fail_at( detail::merge( t.lo.span, t.hi.span ), "integer bounds must be integer literals" );
            t.span = detail::merge( t.span, t.hi.span );
        }
        else if ( _cur.accept_keyword( "enum" ) )
        {
            t.k = raw_type::kind::enumeration;
            _cur.expect( token_kind::lbrace, "'{'" );
            do
            {
                const token& lit = _cur.expect_identifier( "enumeration literal" );
                t.literals.emplace_back( lit.text, lit.span );
            } while ( _cur.accept( token_kind::comma ) );
            const token& close = _cur.expect( token_kind::rbrace, "'}'" );
            t.span = detail::merge( t.span, close.span );
        }
        else if ( at_declaration() )
        {
            t.k = raw_type::kind::named;
            t.name = _cur.next().text;
        }
        else
        {
            _cur.fail( "expected a type (bool, int lo..hi, enum { ... } or a type name)" );
        }
        return t;
    }

    void variables( raw_spec& spec, var_role role )
    {
        while ( at_declaration() )
        {
            raw_variable v;
            const token& name = _cur.next();
            v.name = name.text;
            v.name_span = name.span;
            v.role = role;
            _cur.expect( token_kind::colon, "':'" );
            v.type = type_expr();
            _cur.expect( token_kind::eq, "'=' and an initial value" );
            v.initial = detail::parse_value( _cur );
            _cur.expect( token_kind::semicolon, "';'" );
            spec.variables.push_back( std::move( v ) );
        }
    }

    raw_variable modeclass()
    {
        raw_variable v;
        v.role = var_role::mode_class;
        const token& name = _cur.expect_identifier( "mode class name" );
        v.name = name.text;
        v.name_span = name.span;
        _cur.expect( token_kind::lbrace, "'{'" );
        _cur.expect_keyword( "modes" );
        do
        {
            const token& m = _cur.expect_identifier( "mode name" );
            v.modes.emplace_back( m.text, m.span );
        } while ( _cur.accept( token_kind::comma ) );
        _cur.expect( token_kind::semicolon, "';'" );
        _cur.expect_keyword( "initial" );
        const token& init = _cur.expect_identifier( "initial mode" );
        v.initial.k = raw_operand::kind::name;
        v.initial.name = init.text;
        v.initial.span = init.span;
        _cur.expect( token_kind::semicolon, "';'" );

        while ( !_cur.at( token_kind::rbrace ) )
        {
            raw_mode_row row;
            const token& from = _cur.expect_identifier( "mode name or '}'" );
            row.from = from.text;
            row.from_span = from.span;
            _cur.expect( token_kind::row_sep, "'--'" );
            row.event = event();
            _cur.expect( token_kind::row_arrow, "'-->'" );
            const token& to = _cur.expect_identifier( "target mode" );
            row.to = to.text;
            row.to_span = to.span;
            _cur.accept( token_kind::semicolon );
            v.rows.push_back( std::move( row ) );
        }
        _cur.next();
        return v;
    }

    raw_expr event()
    {
        if ( !( _cur.at( token_kind::at_t ) || _cur.at( token_kind::at_f ) || _cur.at( token_kind::at_c ) ) )
            _cur.fail( "expected an event (@T, @F or @C)" );
        return detail::parse_event( _cur );
    }

    raw_table table( bool is_event )
    {
        raw_table t;
        t.is_event = is_event;
        const token& target = _cur.expect_identifier( "variable name" );
        t.target = target.text;
        t.target_span = target.span;
        _cur.expect( token_kind::lbrace, "'{'" );
        while ( true )
        {
            if ( _cur.accept_keyword( "in" ) )
            {
                const token& mc = _cur.expect_identifier( "mode class name" );
                t.mode_class = mc.text;
                t.mode_class_span = mc.span;
                _cur.expect( token_kind::semicolon, "';'" );
            }
            else if ( _cur.accept_keyword( "default" ) )
            {
                _cur.expect_keyword( "unchanged" );
                _cur.expect( token_kind::semicolon, "';'" );
                t.keep_default = true;
            }
            else
            {
                break;
            }
        }
        while ( !_cur.at( token_kind::rbrace ) )
        {
            raw_table_row row;
            row.modes = mode_set();
            _cur.expect( token_kind::row_sep, "'--'" );
            row.expr = is_event ? event() : detail::parse_expression( _cur, false );
            _cur.expect( token_kind::row_arrow, "'-->'" );
            row.value = detail::parse_value( _cur );
            _cur.accept( token_kind::semicolon );
            t.rows.push_back( std::move( row ) );
        }
        _cur.next();
        return t;
    }

    raw_mode_set mode_set()
    {
        raw_mode_set s;
        s.span = _cur.peek().span;
        if ( _cur.accept( token_kind::star ) )
        {
            s.any = true;
            return s;
        }
        do
        {
            const token& m = _cur.expect_identifier( "mode name, '*' or '}'" );
            s.names.emplace_back( m.text, m.span );
            s.span = detail::merge( s.span, m.span );
        } while ( _cur.accept( token_kind::comma ) );
        return s;
    }

    token_cursor& _cur;
};

// ---------------------------------------------------------------------------
// Resolution

class spec_checker
{
public:
    spec_checker( const raw_spec& raw, std::vector< diagnostic >& diags )
        : _raw{ raw }, _diags{ diags }, _resolve{ _spec, diags }
    {
    }

    std::optional< spec_model > check()
    {
        _spec.name = _raw.name;
        named_types();
        constants();
        variables();
        if ( has_errors( _diags ) )
            return std::nullopt;
        tables();
        if ( has_errors( _diags ) )
            return std::nullopt;

        const auto cycle = _spec.finalize();
        if ( !cycle.empty() )
        {
            std::string path;
            for ( const auto& n : cycle )
                path += n + " -> ";
            path += cycle.front();
            _resolve.error( _definition_spans.at( cycle.front() ), "cycle",
                            "dependency cycle between table definitions: " + path );
            return std::nullopt;
        }
        return std::move( _spec );
    }

private:
    void error( const source_span& span, std::string code, std::string message )
    {
        _resolve.error( span, std::move( code ), std::move( message ) );
    }

    std::optional< type_def > build_type( const raw_type& t, const std::string& name )
    {
        switch ( t.k )
        {
        case raw_type::kind::boolean:
        {
            type_def b = type_def::boolean();
            if ( !name.empty() )
                b.name = name;
            return b;
        }
        case raw_type::kind::integer:
            if ( t.lo.number > t.hi.number )
            {
                error( t.span, "bad-type", "integer range is empty: " + std::to_string( t.lo.number ) + " > "
                                               + std::to_string( t.hi.number ) );
                return std::nullopt;
            }
            return type_def::integer( name, t.lo.number, t.hi.number );
        case raw_type::kind::enumeration:
        {
            std::vector< std::string > lits;
            for ( const auto& [ lit, span ] : t.literals )
            {
                if ( std::find( lits.begin(), lits.end(), lit ) != lits.end() )
                {
                    error( span, "bad-type", "duplicate enumeration literal '" + lit + "'" );
                    return std::nullopt;
                }
                lits.push_back( lit );
            }
            return type_def::enumeration( name, std::move( lits ) );
        }
        case raw_type::kind::named:
            if ( const auto* found = _spec.find_type( t.name ) )
                return *found;
            error( t.span, "undeclared", "undeclared type '" + t.name + "'" );
            return std::nullopt;
        }
        return std::nullopt;
    }

    void named_types()
    {
        for ( const auto& t : _raw.types )
        {
            if ( _spec.find_type( t.name ) != nullptr )
            {
                error( t.name_span, "duplicate", "type '" + t.name + "' is declared twice" );
                continue;
            }
            if ( auto built = build_type( t.type, t.name ) )
            {
                // An alias keeps its own name.
                built->name = t.name;
                _spec.types.push_back( std::move( *built ) );
            }
        }
    }

    bool claim_name( const std::string& name, const source_span& span )
    {
        if ( !_names.insert( name ).second )
        {
            error( span, "duplicate", "'" + name + "' is declared twice" );
            return false;
        }
        return true;
    }

    void constants()
    {
        for ( const auto& c : _raw.constants )
        {
            if ( !claim_name( c.name, c.name_span ) )
                continue;
            constant_def def;
            def.name = c.name;
            switch ( c.value.k )
            {
            case raw_operand::kind::integer: def.value = c.value.number; break;
            case raw_operand::kind::name: def.value = c.value.name; break;
            case raw_operand::kind::boolean:
                error( c.value.span, "type", "constants are integers or enumeration literals" );
                continue;
            }
            _spec.constants.push_back( std::move( def ) );
        }
    }

    void variables()
    {
        for ( const auto& v : _raw.variables )
        {
            if ( !claim_name( v.name, v.name_span ) )
                continue;
            variable_decl decl;
            decl.name = v.name;
            decl.role = v.role;
            if ( v.role == var_role::mode_class )
            {
                raw_type modes;
                modes.k = raw_type::kind::enumeration;
                modes.literals = v.modes;
                auto type = build_type( modes, "" );
                if ( !type )
                    continue;
                decl.type = std::move( *type );
                const auto init = decl.type.literal_value( v.initial.name );
                if ( !init )
                {
                    error( v.initial.span, "undeclared",
                           "initial mode '" + v.initial.name + "' is not a mode of " + v.name );
                    continue;
                }
                decl.initial = *init;
            }
            else
            {
                auto type = build_type( v.type, "" );
                if ( !type )
                    continue;
                decl.type = std::move( *type );
                const auto init = _resolve.value( v.initial, decl.type );
                if ( !init )
                    continue;
                decl.initial = *init;
            }
            _spec.variables.push_back( std::move( decl ) );
        }
    }

    std::optional< value_t > mode_of( const variable_decl& mc, const std::string& name, const source_span& span )
    {
        const auto v = mc.type.literal_value( name );
        if ( !v )
            error( span, "undeclared", "'" + name + "' is not a mode of " + mc.name );
        return v;
    }

    std::optional< mode_set > resolve_modes( const raw_mode_set& s, const variable_decl* mc )
    {
        mode_set out;
        if ( s.any )
        {
            out.any = true;
            return out;
        }
        if ( mc == nullptr )
        {
            error( s.span, "table-def", "rows of a table without an 'in' clause must use '*'" );
            return std::nullopt;
        }
        bool ok = true;
        for ( const auto& [ name, span ] : s.names )
        {
            if ( const auto m = mode_of( *mc, name, span ) )
                out.modes.push_back( *m );
            else
                ok = false;
        }
        if ( !ok )
            return std::nullopt;
        return out;
    }

    void check_coverage( const std::vector< mode_set >& sets, const variable_decl& mc, bool keep_default,
                         const std::string& target, const source_span& span )
    {
        if ( keep_default )
            return;
        std::vector< std::string > missing;
        for ( value_t m = mc.type.min_value(); m <= mc.type.max_value(); ++m )
            if ( std::none_of( sets.begin(), sets.end(), [ m ]( const mode_set& s ) { return s.contains( m ); } ) )
                missing.push_back( mc.type.format( m ) );
        if ( missing.empty() )
            return;
        std::string list;
        for ( const auto& m : missing )
            list += ( list.empty() ? "" : ", " ) + m;
        error( span, "uncovered-mode",
               "table for " + target + " has no rows for mode(s) " + list + " and no 'default unchanged'" );
    }

    void tables()
    {
        // Mode transition tables live inside their mode class block.
        for ( const auto& v : _raw.variables )
        {
            if ( v.role != var_role::mode_class )
                continue;
            const int index = *_spec.find_variable( v.name );
            const variable_decl& mc = _spec.variable( index );
            mode_table table;
            table.mode_class = index;
            for ( const auto& row : v.rows )
            {
                const auto from = mode_of( mc, row.from, row.from_span );
                const auto to = mode_of( mc, row.to, row.to_span );
                auto ev = _resolve.event( row.event );
                if ( from && to && ev )
                    table.rows.push_back( { *from, std::move( *ev ), *to } );
            }
            _definition_spans[ v.name ] = v.name_span;
            _spec.mode_tables.push_back( std::move( table ) );
        }

        std::set< std::string > defined;
        for ( const auto& t : _raw.tables )
        {
            const auto target = _spec.find_variable( t.target );
            if ( !target )
            {
                error( t.target_span, "undeclared", "undeclared variable '" + t.target + "'" );
                continue;
            }
            const variable_decl& decl = _spec.variable( *target );
            if ( decl.role != var_role::term && decl.role != var_role::controlled )
            {
                error( t.target_span, "table-def",
                       "'" + t.target + "' is a " + std::string{ role_name( decl.role ) }
                           + " variable; only terms and controlled variables are defined by tables" );
                continue;
            }
            if ( !defined.insert( t.target ).second )
            {
                error( t.target_span, "table-def", "'" + t.target + "' is defined by more than one table" );
                continue;
            }
            _definition_spans[ t.target ] = t.target_span;

            const variable_decl* mc = nullptr;
            int mc_index = -1;
            if ( !t.mode_class.empty() )
            {
                const auto found = _spec.find_variable( t.mode_class );
                if ( !found || _spec.variable( *found ).role != var_role::mode_class )
                {
                    error( t.mode_class_span, found ? "type" : "undeclared",
                           "'" + t.mode_class + "' is not a mode class" );
                    continue;
                }
                mc_index = *found;
                mc = &_spec.variable( mc_index );
            }

            std::vector< mode_set > sets;
            if ( t.is_event )
            {
                event_table table;
                table.target = *target;
                table.mode_class = mc_index;
                table.keep_default = t.keep_default;
                for ( const auto& row : t.rows )
                {
                    auto modes = resolve_modes( row.modes, mc );
                    auto ev = _resolve.event( row.expr );
                    auto value = _resolve.value( row.value, decl.type );
                    if ( modes && ev && value )
                    {
                        sets.push_back( *modes );
                        table.rows.push_back( { std::move( *modes ), std::move( *ev ), *value } );
                    }
                }
                _spec.event_tables.push_back( std::move( table ) );
            }
            else
            {
                condition_table table;
                table.target = *target;
                table.mode_class = mc_index;
                table.keep_default = t.keep_default;
                for ( const auto& row : t.rows )
                {
                    auto modes = resolve_modes( row.modes, mc );
                    auto cond = _resolve.condition( row.expr );
                    auto value = _resolve.value( row.value, decl.type );
                    if ( modes && cond && value )
                    {
                        sets.push_back( *modes );
                        table.rows.push_back( { std::move( *modes ), std::move( *cond ), *value } );
                    }
                }
                _spec.condition_tables.push_back( std::move( table ) );
            }
            if ( mc != nullptr && !has_errors( _diags ) )
                check_coverage( sets, *mc, t.keep_default, t.target, t.target_span );
        }

        for ( const auto& v : _raw.variables )
        {
            if ( ( v.role == var_role::term || v.role == var_role::controlled ) && !defined.contains( v.name ) )
                error( v.name_span, "table-def",
                       std::string{ role_name( v.role ) } + " '" + v.name + "' is not defined by any table" );
        }
    }

    const raw_spec& _raw;
    std::vector< diagnostic >& _diags;
    spec_model _spec;
    detail::resolver _resolve;
    std::set< std::string > _names;
    std::map< std::string, source_span > _definition_spans;
};

// ---------------------------------------------------------------------------
// Rendering

std::string render_operand( const spec_model& spec, const operand& o, const operand& other )
{
    switch ( o.k )
    {
    case operand::kind::variable: return spec.variable( o.var ).name;
    case operand::kind::constant: return o.constant;
    case operand::kind::literal:
        if ( other.k == operand::kind::variable )
            return spec.variable( other.var ).type.format( o.value );
        return std::to_string( o.value );
    }
    return {};
}

enum class level
{
    disjunction,
    conjunction,
    unary
};

void render_cond_to( std::ostream& out, const spec_model& spec, const cond_expr& e, level context )
{
    switch ( e.k )
    {
    case cond_expr::kind::literal: out << ( e.truth ? "true" : "false" ); return;
    case cond_expr::kind::var: out << spec.variable( e.var ).name; return;
    case cond_expr::kind::compare:
        out << render_operand( spec, e.lhs, e.rhs ) << ' ' << op_symbol( e.op ) << ' '
            << render_operand( spec, e.rhs, e.lhs );
        return;
    case cond_expr::kind::negation: out << "NOT "; render_cond_to( out, spec, e.args.front(), level::unary ); return;
    case cond_expr::kind::conjunction:
    case cond_expr::kind::disjunction:
    {
        const bool conj = e.k == cond_expr::kind::conjunction;
        // Anything below the top level is parenthesized so that the tree
        // shape survives a round trip.
        const bool wrap = context != level::disjunction;
        if ( wrap )
            out << '(';
        const level inner = conj ? level::unary : level::conjunction;
        for ( std::size_t i = 0; i < e.args.size(); ++i )
        {
            if ( i > 0 )
                out << ( conj ? " AND " : " OR " );
            render_cond_to( out, spec, e.args[ i ], inner );
        }
        if ( wrap )
            out << ')';
        return;
    }
    }
}

std::string render_value( const type_def& type, value_t v )
{
    return type.format( v );
}

std::string render_modes( const spec_model& spec, const mode_set& s, int mode_class )
{
    if ( s.any )
        return "*";
    std::string out;
    for ( value_t m : s.modes )
        out += ( out.empty() ? "" : ", " ) + spec.variable( mode_class ).type.format( m );
    return out;
}

std::string render_type( const type_def& t, bool allow_name )
{
    if ( allow_name && !t.name.empty() )
        return t.name;
    switch ( t.kind )
    {
    case type_kind::boolean: return "bool";
    case type_kind::integer: return "int " + std::to_string( t.lo ) + ".." + std::to_string( t.hi );
    case type_kind::enumeration:
    {
        std::string out = "enum { ";
        for ( std::size_t i = 0; i < t.literals.size(); ++i )
            out += ( i ? ", " : "" ) + t.literals[ i ];
        return out + " }";
    }
    }
    return {};
}

} // namespace

parse_result< spec_model > parse_spec( std::string_view text, const std::string& file )
{
    parse_result< spec_model > result;
    auto tokens = tokenize( text, file, result.diagnostics );
    token_cursor cur{ std::move( tokens ), result.diagnostics };
    raw_spec raw;
    try
    {
        raw = spec_syntax{ cur }.parse();
    }
    catch ( const detail::syntax_abort& )
    {
        return result;
    }
    if ( has_errors( result.diagnostics ) )
        return result;
    result.value = spec_checker{ raw, result.diagnostics }.check();
    return result;
}

std::string render_cond( const spec_model& spec, const cond_expr& expr )
{
    std::ostringstream out;
    render_cond_to( out, spec, expr, level::disjunction );
    return out.str();
}

std::string render_event( const spec_model& spec, const event_expr& ev )
{
    std::string out;
    switch ( ev.trigger )
    {
    case edge::becomes_true: out = "@T("; break;
    case edge::becomes_false: out = "@F("; break;
    case edge::changes: out = "@C("; break;
    }
    out += ev.changed_var >= 0 ? spec.variable( ev.changed_var ).name : render_cond( spec, ev.body );
    out += ")";
    if ( ev.when )
        out += " when " + render_cond( spec, *ev.when );
    return out;
}

std::string render_spec( const spec_model& spec )
{
    std::ostringstream out;
    out << "spec " << spec.name << "\n";

    if ( !spec.constants.empty() )
    {
        out << "\nconstants\n";
        for ( const auto& c : spec.constants )
        {
            out << "  " << c.name << " = ";
            if ( const auto* n = std::get_if< value_t >( &c.value ) )
                out << *n;
            else
                out << std::get< std::string >( c.value );
            out << ";\n";
        }
    }

    if ( !spec.types.empty() )
    {
        out << "\ntypes\n";
        for ( const auto& t : spec.types )
            out << "  " << t.name << " = " << render_type( t, false ) << ";\n";
    }

    std::optional< var_role > section;
    for ( int i = 0; i < spec.variable_count(); ++i )
    {
        const auto& v = spec.variable( i );
        if ( v.role == var_role::mode_class )
        {
            section.reset();
            out << "\nmodeclass " << v.name << " {\n  modes ";
            for ( std::size_t m = 0; m < v.type.literals.size(); ++m )
                out << ( m ? ", " : "" ) << v.type.literals[ m ];
            out << ";\n  initial " << v.type.format( v.initial ) << ";\n";
            for ( const auto& table : spec.mode_tables )
            {
                if ( table.mode_class != i )
                    continue;
                for ( const auto& row : table.rows )
                    out << "  " << v.type.format( row.from ) << " -- " << render_event( spec, row.event ) << " --> "
                        << v.type.format( row.to ) << "\n";
            }
            out << "}\n";
            continue;
        }
        if ( section != v.role )
        {
            section = v.role;
            out << "\n"
                << ( v.role == var_role::monitored ? "monitored" : v.role == var_role::term ? "terms" : "controlled" )
                << "\n";
        }
        out << "  " << v.name << " : " << render_type( v.type, true ) << " = " << render_value( v.type, v.initial )
            << ";\n";
    }

    const auto header = [ & ]( const char* kw, int target, int mode_class, bool keep_default ) {
        out << "\n" << kw << " " << spec.variable( target ).name << " {\n";
        if ( mode_class >= 0 )
            out << "  in " << spec.variable( mode_class ).name << ";\n";
        if ( keep_default )
            out << "  default unchanged;\n";
    };

    for ( const auto& table : spec.event_tables )
    {
        header( "eventtable", table.target, table.mode_class, table.keep_default );
        for ( const auto& row : table.rows )
            out << "  " << render_modes( spec, row.modes, table.mode_class ) << " -- " << render_event( spec, row.event )
                << " --> " << render_value( spec.variable( table.target ).type, row.value ) << "\n";
        out << "}\n";
    }
    for ( const auto& table : spec.condition_tables )
    {
        header( "condtable", table.target, table.mode_class, table.keep_default );
        for ( const auto& row : table.rows )
            out << "  " << render_modes( spec, row.modes, table.mode_class ) << " -- " << render_cond( spec, row.cond )
                << " --> " << render_value( spec.variable( table.target ).type, row.value ) << "\n";
        out << "}\n";
    }
    return out.str();
}

} // namespace scrguide
