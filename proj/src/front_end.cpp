#include "front_end.hpp"

#include <algorithm>
#include <iterator>
#include <charconv>

namespace scrguide::detail
{

const token& token_cursor::peek( std::size_t ahead ) const
{
    const std::size_t i = std::min( _pos + ahead, _tokens.size() - 1 );
    return _tokens[ i ];
}

bool token_cursor::at_keyword( std::string_view word ) const
{
    return peek().kind == token_kind::identifier && peek().text == word;
}

const token& token_cursor::next()
{
    const token& t = peek();
    if ( _pos < _tokens.size() - 1 )
        ++_pos;
    return t;
}

bool token_cursor::accept( token_kind kind )
{
    if ( !at( kind ) )
        return false;
    next();
    return true;
}

bool token_cursor::accept_keyword( std::string_view word )
{
    if ( !at_keyword( word ) )
        return false;
    next();
    return true;
}

const token& token_cursor::expect( token_kind kind, std::string_view what )
{
    if ( !at( kind ) )
        fail( "expected " + std::string{ what } );
    return next();
}

const token& token_cursor::expect_keyword( std::string_view word )
{
    if ( !at_keyword( word ) )
        fail( "expected '" + std::string{ word } + "'" );
    return next();
}

const token& token_cursor::expect_identifier( std::string_view what )
{
    if ( !at( token_kind::identifier ) || is_reserved( peek().text ) )
        fail( "expected " + std::string{ what } );
    return next();
}

void token_cursor::fail( const std::string& message )
{
    const token& t = peek();
    std::string found = t.kind == token_kind::end_of_input ? "end of input" : "'" + t.text + "'";
    fail_at( t.span, message + ", found " + found );
}

void token_cursor::fail_at( const source_span& span, const std::string& message )
{
    // A lexical error already explains an invalid token.
    if ( peek().kind != token_kind::invalid || _diags.empty() )
        _diags.push_back( { severity::error, "syntax", message, span } );
    throw syntax_abort{};
}

bool is_reserved( std::string_view word )
{
    static constexpr std::string_view words[] = {
        "spec",    "constants",  "types",     "monitored", "terms",   "controlled", "modeclass", "modes",
        "initial", "eventtable", "condtable", "in",        "default", "unchanged",  "when",      "bool",
        "int",     "enum",       "true",      "false",     "NOT",     "AND",        "OR",        "not",
        "and",     "or",         "program",   "check",     "stateChange" };
    return std::find( std::begin( words ), std::end( words ), word ) != std::end( words );
}

bool raw_expr::contains_event() const
{
    if ( k == kind::event )
        return true;
    return std::any_of( args.begin(), args.end(), []( const raw_expr& a ) { return a.contains_event(); } );
}

source_span merge( const source_span& a, const source_span& b )
{
    return { a.file, a.start_line, a.start_col, b.end_line, b.end_col };
}

namespace
{

bool at_not( const token_cursor& cur )
{
    return cur.at_keyword( "NOT" ) || cur.at_keyword( "not" );
}

bool at_and( const token_cursor& cur )
{
    return cur.at_keyword( "AND" ) || cur.at_keyword( "and" );
}

bool at_or( const token_cursor& cur )
{
    return cur.at_keyword( "OR" ) || cur.at_keyword( "or" );
}

std::optional< cmp_op > relop( token_kind kind )
{
    switch ( kind )
    {
    case token_kind::eq: return cmp_op::eq;
    case token_kind::ne: return cmp_op::ne;
    case token_kind::lt: return cmp_op::lt;
    case token_kind::le: return cmp_op::le;
    case token_kind::gt: return cmp_op::gt;
    case token_kind::ge: return cmp_op::ge;
    default: return std::nullopt;
    }
}

raw_operand parse_operand( token_cursor& cur )
{
    raw_operand o;
    const token& first = cur.peek();
    o.span = first.span;
    if ( cur.at_keyword( "true" ) || cur.at_keyword( "false" ) )
    {
        o.k = raw_operand::kind::boolean;
        o.truth = first.text == "true";
        cur.next();
        return o;
    }
    bool negative = false;
    if ( cur.at( token_kind::minus ) )
    {
        negative = true;
        cur.next();
        if ( !cur.at( token_kind::integer ) )
            cur.fail( "expected integer after '-'" );
    }
    if ( cur.at( token_kind::integer ) )
    {
        const token& t = cur.next();
        long long v = 0;
        const auto [ ptr, ec ] = std::from_chars( t.text.data(), t.text.data() + t.text.size(), v );
        if ( ec != std::errc{} || v > 1'000'000'000 )
            cur.fail_at( t.span, "integer literal out of range" );
        o.k = raw_operand::kind::integer;
        o.number = static_cast< value_t >( negative ? -v : v );
        o.span = merge( o.span, t.span );
        return o;
    }
    if ( cur.at( token_kind::identifier ) && !is_reserved( cur.peek().text ) )
    {
        const token& t = cur.next();
        o.k = raw_operand::kind::name;
        o.name = t.text;
        return o;
    }
    cur.fail( "expected a variable, constant or value" );
}

raw_expr parse_or( token_cursor& cur, bool allow_events );

raw_expr parse_primary( token_cursor& cur, bool allow_events )
{
    const token& first = cur.peek();
    if ( cur.at( token_kind::lparen ) )
    {
        cur.next();
        raw_expr inner = parse_or( cur, allow_events );
        const token& close = cur.expect( token_kind::rparen, "')'" );
        inner.span = merge( first.span, close.span );
        return inner;
    }
    if ( cur.at( token_kind::at_t ) || cur.at( token_kind::at_f ) || cur.at( token_kind::at_c ) )
    {
        if ( !allow_events )
            cur.fail( "events are not allowed in a state formula" );
        return parse_event( cur );
    }

    raw_operand lhs = parse_operand( cur );
    if ( const auto op = relop( cur.peek().kind ) )
    {
        cur.next();
        raw_expr e;
        e.k = raw_expr::kind::compare;
        e.lhs = std::move( lhs );
        e.op = *op;
        e.rhs = parse_operand( cur );
        e.span = merge( e.lhs.span, e.rhs.span );
        return e;
    }

    raw_expr e;
    e.span = lhs.span;
    switch ( lhs.k )
    {
    case raw_operand::kind::boolean:
        e.k = raw_expr::kind::literal;
        e.truth = lhs.truth;
        return e;
    case raw_operand::kind::name:
        e.k = raw_expr::kind::name;
        e.lhs = std::move( lhs );
        return e;
    case raw_operand::kind::integer: break;
    }
    cur.fail( "expected a comparison operator" );
}

raw_expr parse_unary( token_cursor& cur, bool allow_events )
{
    if ( at_not( cur ) )
    {
        const token& t = cur.next();
        raw_expr e;
        e.k = raw_expr::kind::negation;
        e.args.push_back( parse_unary( cur, allow_events ) );
        e.span = merge( t.span, e.args.back().span );
        return e;
    }
    return parse_primary( cur, allow_events );
}

raw_expr parse_and( token_cursor& cur, bool allow_events )
{
    raw_expr first = parse_unary( cur, allow_events );
    if ( !at_and( cur ) )
        return first;
    raw_expr e;
    e.k = raw_expr::kind::conjunction;
    e.args.push_back( std::move( first ) );
    while ( at_and( cur ) )
    {
        cur.next();
        e.args.push_back( parse_unary( cur, allow_events ) );
    }
    e.span = merge( e.args.front().span, e.args.back().span );
    return e;
}

raw_expr parse_or( token_cursor& cur, bool allow_events )
{
    raw_expr first = parse_and( cur, allow_events );
    if ( !at_or( cur ) )
        return first;
    raw_expr e;
    e.k = raw_expr::kind::disjunction;
    e.args.push_back( std::move( first ) );
    while ( at_or( cur ) )
    {
        cur.next();
        e.args.push_back( parse_and( cur, allow_events ) );
    }
    e.span = merge( e.args.front().span, e.args.back().span );
    return e;
}

} // namespace

raw_expr parse_expression( token_cursor& cur, bool allow_events )
{
    return parse_or( cur, allow_events );
}

raw_expr parse_event( token_cursor& cur )
{
    const token& t = cur.next();
    raw_expr e;
    e.k = raw_expr::kind::event;
    switch ( t.kind )
    {
    case token_kind::at_t: e.trigger = edge::becomes_true; break;
    case token_kind::at_f: e.trigger = edge::becomes_false; break;
    case token_kind::at_c: e.trigger = edge::changes; break;
    default: cur.fail_at( t.span, "expected '@T', '@F' or '@C'" );
    }
    cur.expect( token_kind::lparen, "'(' after event operator" );
    e.args.push_back( parse_or( cur, false ) );
    const token& close = cur.expect( token_kind::rparen, "')'" );
    e.span = merge( t.span, close.span );
    if ( cur.accept_keyword( "when" ) )
    {
        e.has_when = true;
        e.args.push_back( parse_or( cur, false ) );
        e.span = merge( t.span, e.args.back().span );
    }
    return e;
}

raw_operand parse_value( token_cursor& cur )
{
    return parse_operand( cur );
}

// ---------------------------------------------------------------------------

void resolver::error( const source_span& span, std::string code, std::string message )
{
    _diags.push_back( { severity::error, std::move( code ), std::move( message ), span } );
}

resolver::resolved_operand resolver::classify( const raw_operand& o, const type_def* context ) const
{
    resolved_operand r;
    r.span = o.span;
    r.name = o.name;
    switch ( o.k )
    {
    case raw_operand::kind::integer:
        r.k = resolved_operand::kind::integer;
        r.number = o.number;
        return r;
    case raw_operand::kind::boolean:
        r.k = resolved_operand::kind::boolean;
        r.number = o.truth ? 1 : 0;
        return r;
    case raw_operand::kind::name: break;
    }

    if ( context != nullptr && context->kind == type_kind::enumeration )
        if ( const auto v = context->literal_value( o.name ) )
        {
            r.k = resolved_operand::kind::integer;
            r.number = *v;
            return r;
        }
    if ( const auto var = _spec.find_variable( o.name ) )
    {
        r.k = resolved_operand::kind::variable;
        r.var = *var;
        return r;
    }
    if ( const auto* c = _spec.find_constant( o.name ) )
    {
        if ( const auto* n = std::get_if< value_t >( &c->value ) )
        {
            r.k = resolved_operand::kind::int_constant;
            r.number = *n;
        }
        else
        {
            r.k = resolved_operand::kind::literal_constant;
        }
        return r;
    }
    r.k = resolved_operand::kind::unknown;
    return r;
}

std::optional< cond_expr > resolver::comparison( const raw_expr& e )
{
    using rk = resolved_operand::kind;
    resolved_operand lhs = classify( e.lhs, nullptr );
    resolved_operand rhs = classify( e.rhs, nullptr );
    if ( lhs.k == rk::variable )
        rhs = classify( e.rhs, &_spec.variable( lhs.var ).type );
    else if ( rhs.k == rk::variable )
        lhs = classify( e.lhs, &_spec.variable( rhs.var ).type );

    bool ok = true;
    for ( const auto* side : { &lhs, &rhs } )
        if ( side->k == rk::unknown )
        {
            error( side->span, "undeclared", "undeclared identifier '" + side->name + "'" );
            ok = false;
        }
    if ( !ok )
        return std::nullopt;

    if ( lhs.k != rk::variable && rhs.k != rk::variable )
    {
        error( e.span, "type", "comparison must involve a variable" );
        return std::nullopt;
    }

    if ( lhs.k == rk::variable && rhs.k == rk::variable )
    {
        const auto& lt = _spec.variable( lhs.var ).type;
        const auto& rt = _spec.variable( rhs.var ).type;
        if ( !lt.compatible_with( rt ) )
        {
            error( e.span, "type",
                   "cannot compare '" + lhs.name + "' with '" + rhs.name + "': the types differ" );
            return std::nullopt;
        }
        if ( is_ordering( e.op ) && lt.kind != type_kind::integer )
        {
            error( e.span, "type", "ordering comparison on non-integer variable '" + lhs.name + "'" );
            return std::nullopt;
        }
        return cond_expr::comparison( operand::variable( lhs.var ), e.op, operand::variable( rhs.var ) );
    }

    const bool var_on_left = lhs.k == rk::variable;
    const resolved_operand& var_side = var_on_left ? lhs : rhs;
    const resolved_operand& other = var_on_left ? rhs : lhs;
    const variable_decl& decl = _spec.variable( var_side.var );
    const type_def& type = decl.type;

    if ( is_ordering( e.op ) && type.kind != type_kind::integer )
    {
        error( e.span, "type", "ordering comparison on non-integer variable '" + decl.name + "'" );
        return std::nullopt;
    }

    operand value_operand;
    switch ( other.k )
    {
    case rk::integer:
        if ( e.lhs.k == raw_operand::kind::integer || e.rhs.k == raw_operand::kind::integer )
        {
            if ( type.kind != type_kind::integer )
            {
                error( other.span, "type", "integer compared with non-integer variable '" + decl.name + "'" );
                return std::nullopt;
            }
        }
        value_operand = operand::literal( other.number );
        break;
    case rk::boolean:
        if ( type.kind != type_kind::boolean )
        {
            error( other.span, "type", "boolean compared with non-boolean variable '" + decl.name + "'" );
            return std::nullopt;
        }
        value_operand = operand::literal( other.number );
        break;
    case rk::int_constant:
        if ( type.kind != type_kind::integer )
        {
            error( other.span, "type",
                   "integer constant '" + other.name + "' compared with non-integer variable '" + decl.name + "'" );
            return std::nullopt;
        }
        value_operand = operand::named_constant( other.name, other.number );
        break;
    case rk::literal_constant:
    {
        const auto* c = _spec.find_constant( other.name );
        const auto v = type.literal_value( std::get< std::string >( c->value ) );
        if ( !v )
        {
            error( other.span, "type",
                   "constant '" + other.name + "' is not a value of the type of '" + decl.name + "'" );
            return std::nullopt;
        }
        value_operand = operand::named_constant( other.name, *v );
        break;
    }
    default:
        error( other.span, "type", "unexpected operand" );
        return std::nullopt;
    }

    return var_on_left ? cond_expr::comparison( operand::variable( var_side.var ), e.op, value_operand )
                       : cond_expr::comparison( value_operand, e.op, operand::variable( var_side.var ) );
}

std::optional< cond_expr > resolver::condition( const raw_expr& e )
{
    switch ( e.k )
    {
    case raw_expr::kind::literal: return cond_expr::constant( e.truth );
    case raw_expr::kind::name:
    {
        const auto r = classify( e.lhs, nullptr );
        if ( r.k == resolved_operand::kind::unknown )
        {
            error( e.span, "undeclared", "undeclared identifier '" + e.lhs.name + "'" );
            return std::nullopt;
        }
        if ( r.k != resolved_operand::kind::variable )
        {
            error( e.span, "type", "'" + e.lhs.name + "' is not a boolean variable" );
            return std::nullopt;
        }
        if ( _spec.variable( r.var ).type.kind != type_kind::boolean )
        {
            error( e.span, "type", "variable '" + e.lhs.name + "' is not boolean; compare it with a value" );
            return std::nullopt;
        }
        return cond_expr::boolean_var( r.var );
    }
    case raw_expr::kind::compare: return comparison( e );
    case raw_expr::kind::negation:
    {
        auto inner = condition( e.args.front() );
        if ( !inner )
            return std::nullopt;
        return cond_expr::negate( std::move( *inner ) );
    }
    case raw_expr::kind::conjunction:
    case raw_expr::kind::disjunction:
    {
        std::vector< cond_expr > parts;
        bool ok = true;
        for ( const auto& a : e.args )
        {
            auto r = condition( a );
            if ( r )
                parts.push_back( std::move( *r ) );
            else
                ok = false;
        }
        if ( !ok )
            return std::nullopt;
        return e.k == raw_expr::kind::conjunction ? cond_expr::all_of( std::move( parts ) )
                                                  : cond_expr::any_of( std::move( parts ) );
    }
    case raw_expr::kind::event:
        error( e.span, "type", "an event cannot be used as a state formula" );
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional< event_expr > resolver::event( const raw_expr& e )
{
    if ( e.k != raw_expr::kind::event )
    {
        error( e.span, "type", "expected an event (@T, @F or @C)" );
        return std::nullopt;
    }
    event_expr ev;
    ev.trigger = e.trigger;
    bool ok = true;

    const raw_expr& body = e.args.front();
    if ( e.trigger == edge::changes && body.k == raw_expr::kind::name )
    {
        if ( const auto var = _spec.find_variable( body.lhs.name ) )
        {
            ev.changed_var = *var;
            ev.body = cond_expr::constant( true );
        }
        else
        {
            error( body.span, "undeclared", "undeclared identifier '" + body.lhs.name + "'" );
            ok = false;
        }
    }
    else if ( body.k == raw_expr::kind::literal )
    {
        error( body.span, "type", "event on a constant formula can never occur" );
        ok = false;
    }
    else if ( auto c = condition( body ) )
    {
        ev.body = std::move( *c );
    }
    else
    {
        ok = false;
    }

    if ( e.has_when )
    {
        if ( auto w = condition( e.args[ 1 ] ) )
            ev.when = std::move( *w );
        else
            ok = false;
    }
    if ( !ok )
        return std::nullopt;
    return ev;
}

std::optional< value_t > resolver::value( const raw_operand& o, const type_def& type )
{
    const auto describe = [ & ] { return type.name.empty() ? std::string{ "its type" } : "type " + type.name; };
    auto check_range = [ & ]( value_t v ) -> std::optional< value_t > {
        if ( !type.contains( v ) )
        {
            error( o.span, "range", "value " + std::to_string( v ) + " is outside " + describe() );
            return std::nullopt;
        }
        return v;
    };

    switch ( o.k )
    {
    case raw_operand::kind::integer:
        if ( type.kind != type_kind::integer )
        {
            error( o.span, "type", "integer value where " + describe() + " expects a named value" );
            return std::nullopt;
        }
        return check_range( o.number );
    case raw_operand::kind::boolean:
        if ( type.kind != type_kind::boolean )
        {
            error( o.span, "type", "boolean value where " + describe() + " is not boolean" );
            return std::nullopt;
        }
        return o.truth ? 1 : 0;
    case raw_operand::kind::name: break;
    }

    if ( type.kind == type_kind::enumeration )
        if ( const auto v = type.literal_value( o.name ) )
            return v;
    if ( const auto* c = _spec.find_constant( o.name ) )
    {
        if ( const auto* n = std::get_if< value_t >( &c->value ) )
        {
            if ( type.kind != type_kind::integer )
            {
                error( o.span, "type", "integer constant '" + o.name + "' where " + describe() + " is not integer" );
                return std::nullopt;
            }
            return check_range( *n );
        }
        if ( const auto v = type.literal_value( std::get< std::string >( c->value ) ) )
            return v;
        error( o.span, "type", "constant '" + o.name + "' is not a value of " + describe() );
        return std::nullopt;
    }
    if ( type.kind == type_kind::enumeration )
        error( o.span, "undeclared", "'" + o.name + "' is not a value of " + describe() );
    else
        error( o.span, "undeclared", "undeclared identifier '" + o.name + "'" );
    return std::nullopt;
}

} // namespace scrguide::detail
