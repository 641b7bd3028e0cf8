#include "scrguide/model.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace scrguide
{

type_def type_def::boolean()
{
    type_def t;
    t.name = "bool";
    t.kind = type_kind::boolean;
    t.lo = 0;
    t.hi = 1;
    return t;
}

type_def type_def::integer( std::string name, value_t lo, value_t hi )
{
    type_def t;
    t.name = std::move( name );
    t.kind = type_kind::integer;
    t.lo = lo;
    t.hi = hi;
    return t;
}

type_def type_def::enumeration( std::string name, std::vector< std::string > literals )
{
    type_def t;
    t.name = std::move( name );
    t.kind = type_kind::enumeration;
    t.literals = std::move( literals );
    t.lo = 0;
    t.hi = static_cast< value_t >( t.literals.size() ) - 1;
    return t;
}

value_t type_def::min_value() const
{
    return kind == type_kind::integer ? lo : 0;
}

value_t type_def::max_value() const
{
    switch ( kind )
    {
    case type_kind::boolean: return 1;
    case type_kind::integer: return hi;
    case type_kind::enumeration: return static_cast< value_t >( literals.size() ) - 1;
    }
    return 0;
}

std::size_t type_def::size() const
{
    return static_cast< std::size_t >( max_value() - min_value() + 1 );
}

bool type_def::contains( value_t v ) const
{
    return v >= min_value() && v <= max_value();
}

std::optional< value_t > type_def::literal_value( std::string_view literal ) const
{
    if ( kind == type_kind::enumeration )
    {
        const auto it = std::find( literals.begin(), literals.end(), literal );
        if ( it != literals.end() )
            return static_cast< value_t >( it - literals.begin() );
    }
    else if ( kind == type_kind::boolean )
    {
        if ( literal == "true" )
            return 1;
        if ( literal == "false" )
            return 0;
    }
    return std::nullopt;
}

std::string type_def::format( value_t v ) const
{
    switch ( kind )
    {
    case type_kind::boolean: return v ? "true" : "false";
    case type_kind::integer: return std::to_string( v );
    case type_kind::enumeration:
        if ( v >= 0 && static_cast< std::size_t >( v ) < literals.size() )
            return literals[ static_cast< std::size_t >( v ) ];
        return "<" + std::to_string( v ) + ">";
    }
    return {};
}

bool type_def::compatible_with( const type_def& other ) const
{
    if ( kind != other.kind )
        return false;
    if ( kind == type_kind::enumeration )
        return literals == other.literals;
    return true;
}

std::string_view role_name( var_role role )
{
    switch ( role )
    {
    case var_role::monitored: return "monitored";
    case var_role::term: return "term";
    case var_role::controlled: return "controlled";
    case var_role::mode_class: return "mode class";
    }
    return "?";
}

std::string_view op_symbol( cmp_op op )
{
    switch ( op )
    {
    case cmp_op::eq: return "=";
    case cmp_op::ne: return "!=";
    case cmp_op::lt: return "<";
    case cmp_op::le: return "<=";
    case cmp_op::gt: return ">";
    case cmp_op::ge: return ">=";
    }
    return "?";
}

bool is_ordering( cmp_op op )
{
    return op != cmp_op::eq && op != cmp_op::ne;
}

operand operand::variable( int index )
{
    operand o;
    o.k = kind::variable;
    o.var = index;
    return o;
}

operand operand::literal( value_t v )
{
    operand o;
    o.k = kind::literal;
    o.value = v;
    return o;
}

operand operand::named_constant( std::string name, value_t v )
{
    operand o;
    o.k = kind::constant;
    o.constant = std::move( name );
    o.value = v;
    return o;
}

cond_expr cond_expr::constant( bool b )
{
    cond_expr e;
    e.k = kind::literal;
    e.truth = b;
    return e;
}

cond_expr cond_expr::boolean_var( int index )
{
    cond_expr e;
    e.k = kind::var;
    e.var = index;
    return e;
}

cond_expr cond_expr::comparison( operand lhs, cmp_op op, operand rhs )
{
    cond_expr e;
    e.k = kind::compare;
    e.lhs = std::move( lhs );
    e.op = op;
    e.rhs = std::move( rhs );
    return e;
}

cond_expr cond_expr::negate( cond_expr inner )
{
    cond_expr e;
    e.k = kind::negation;
    e.args.push_back( std::move( inner ) );
    return e;
}

cond_expr cond_expr::all_of( std::vector< cond_expr > es )
{
    cond_expr e;
    e.k = kind::conjunction;
    e.args = std::move( es );
    return e;
}

cond_expr cond_expr::any_of( std::vector< cond_expr > es )
{
    cond_expr e;
    e.k = kind::disjunction;
    e.args = std::move( es );
    return e;
}

bool mode_set::contains( value_t mode ) const
{
    return any || std::find( modes.begin(), modes.end(), mode ) != modes.end();
}

namespace
{

void push_unique( std::vector< int >& out, int v )
{
    if ( v >= 0 && std::find( out.begin(), out.end(), v ) == out.end() )
        out.push_back( v );
}

} // namespace

void collect_vars( const cond_expr& e, std::vector< int >& out )
{
    switch ( e.k )
    {
    case cond_expr::kind::literal: break;
    case cond_expr::kind::var: push_unique( out, e.var ); break;
    case cond_expr::kind::compare:
        if ( e.lhs.k == operand::kind::variable )
            push_unique( out, e.lhs.var );
        if ( e.rhs.k == operand::kind::variable )
            push_unique( out, e.rhs.var );
        break;
    default:
        for ( const auto& a : e.args )
            collect_vars( a, out );
    }
}

void collect_new_state_vars( const event_expr& e, std::vector< int >& out )
{
    if ( e.changed_var >= 0 )
        push_unique( out, e.changed_var );
    else
        collect_vars( e.body, out );
}

void collect_vars( const event_expr& e, std::vector< int >& out )
{
    collect_new_state_vars( e, out );
    if ( e.when )
        collect_vars( *e.when, out );
}

std::optional< int > spec_model::find_variable( std::string_view n ) const
{
    for ( std::size_t i = 0; i < variables.size(); ++i )
        if ( variables[ i ].name == n )
            return static_cast< int >( i );
    return std::nullopt;
}

const constant_def* spec_model::find_constant( std::string_view n ) const
{
    for ( const auto& c : constants )
        if ( c.name == n )
            return &c;
    return nullptr;
}

const type_def* spec_model::find_type( std::string_view n ) const
{
    for ( const auto& t : types )
        if ( t.name == n )
            return &t;
    return nullptr;
}

std::vector< int > spec_model::monitored() const
{
    std::vector< int > out;
    for ( std::size_t i = 0; i < variables.size(); ++i )
        if ( variables[ i ].role == var_role::monitored )
            out.push_back( static_cast< int >( i ) );
    return out;
}

std::vector< int > spec_model::new_state_reads( int var ) const
{
    std::vector< int > out;
    const table_ref ref = _definitions.at( static_cast< std::size_t >( var ) );
    switch ( ref.kind )
    {
    case table_kind::none: break;
    case table_kind::mode:
        for ( const auto& row : mode_tables[ ref.index ].rows )
            collect_new_state_vars( row.event, out );
        break;
    case table_kind::event:
        for ( const auto& row : event_tables[ ref.index ].rows )
            collect_new_state_vars( row.event, out );
        break;
    case table_kind::condition:
    {
        const auto& table = condition_tables[ ref.index ];
        for ( const auto& row : table.rows )
            collect_vars( row.cond, out );
        push_unique( out, table.mode_class );
        break;
    }
    }
    return out;
}

std::vector< int > spec_model::all_reads( int var ) const
{
    std::vector< int > out;
    const table_ref ref = _definitions.at( static_cast< std::size_t >( var ) );
    switch ( ref.kind )
    {
    case table_kind::none: break;
    case table_kind::mode:
        push_unique( out, var );
        for ( const auto& row : mode_tables[ ref.index ].rows )
            collect_vars( row.event, out );
        break;
    case table_kind::event:
    {
        const auto& table = event_tables[ ref.index ];
        push_unique( out, var );
        push_unique( out, table.mode_class );
        for ( const auto& row : table.rows )
            collect_vars( row.event, out );
        break;
    }
    case table_kind::condition:
    {
        const auto& table = condition_tables[ ref.index ];
        if ( table.keep_default )
            push_unique( out, var );
        push_unique( out, table.mode_class );
        for ( const auto& row : table.rows )
            collect_vars( row.cond, out );
        break;
    }
    }
    return out;
}

std::vector< std::string > spec_model::finalize()
{
    const std::size_t n = variables.size();
    _definitions.assign( n, table_ref{} );
    for ( std::size_t i = 0; i < mode_tables.size(); ++i )
        _definitions.at( static_cast< std::size_t >( mode_tables[ i ].mode_class ) ) = { table_kind::mode, i };
    for ( std::size_t i = 0; i < event_tables.size(); ++i )
        _definitions.at( static_cast< std::size_t >( event_tables[ i ].target ) ) = { table_kind::event, i };
    for ( std::size_t i = 0; i < condition_tables.size(); ++i )
        _definitions.at( static_cast< std::size_t >( condition_tables[ i ].target ) ) =
            { table_kind::condition, i };

    // Edge d -> r when the table of r reads the new value of d. Kahn's
    // algorithm with the smallest declaration index first keeps the order
    // stable.
    std::vector< std::vector< int > > readers( n );
    std::vector< int > pending( n, 0 );
    std::vector< bool > dependent( n, false );
    for ( std::size_t v = 0; v < n; ++v )
        dependent[ v ] = _definitions[ v ].kind != table_kind::none;

    for ( std::size_t v = 0; v < n; ++v )
    {
        if ( !dependent[ v ] )
            continue;
        for ( int d : new_state_reads( static_cast< int >( v ) ) )
        {
            if ( !dependent[ static_cast< std::size_t >( d ) ] )
                continue;
            readers[ static_cast< std::size_t >( d ) ].push_back( static_cast< int >( v ) );
            ++pending[ v ];
        }
    }

    std::priority_queue< int, std::vector< int >, std::greater<> > ready;
    for ( std::size_t v = 0; v < n; ++v )
        if ( dependent[ v ] && pending[ v ] == 0 )
            ready.push( static_cast< int >( v ) );

    _update_order.clear();
    while ( !ready.empty() )
    {
        const int v = ready.top();
        ready.pop();
        _update_order.push_back( v );
        for ( int r : readers[ static_cast< std::size_t >( v ) ] )
            if ( --pending[ static_cast< std::size_t >( r ) ] == 0 )
                ready.push( r );
    }

    const auto dependent_count = static_cast< std::size_t >( std::count( dependent.begin(), dependent.end(), true ) );
    if ( _update_order.size() == dependent_count )
        return {};

    // Walk predecessors among the unresolved variables until one repeats.
    std::vector< std::string > cycle;
    int start = -1;
    for ( std::size_t v = 0; v < n; ++v )
        if ( dependent[ v ] && pending[ v ] > 0 )
        {
            start = static_cast< int >( v );
            break;
        }
    std::vector< int > path;
    std::vector< int > seen_at( n, -1 );
    int cur = start;
    while ( seen_at[ static_cast< std::size_t >( cur ) ] < 0 )
    {
        seen_at[ static_cast< std::size_t >( cur ) ] = static_cast< int >( path.size() );
        path.push_back( cur );
        int next = -1;
        for ( int d : new_state_reads( cur ) )
            if ( dependent[ static_cast< std::size_t >( d ) ] && pending[ static_cast< std::size_t >( d ) ] > 0 )
            {
                next = d;
                break;
            }
        cur = next;
    }
    for ( std::size_t i = static_cast< std::size_t >( seen_at[ static_cast< std::size_t >( cur ) ] ); i < path.size();
          ++i )
        cycle.push_back( variables[ static_cast< std::size_t >( path[ i ] ) ].name );
    _update_order.clear();
    return cycle;
}

bool operator==( const spec_model& a, const spec_model& b )
{
    return a.name == b.name && a.constants == b.constants && a.types == b.types && a.variables == b.variables
           && a.mode_tables == b.mode_tables && a.event_tables == b.event_tables
           && a.condition_tables == b.condition_tables;
}

std::size_t system_state::hash() const
{
    // FNV-1a over the value bytes.
    std::size_t h = 1469598103934665603ull;
    for ( value_t v : _values )
    {
        auto u = static_cast< std::uint32_t >( v );
        for ( int i = 0; i < 4; ++i )
        {
            h ^= ( u >> ( 8 * i ) ) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

system_state initial_state( const spec_model& spec )
{
    std::vector< value_t > values;
    values.reserve( spec.variables.size() );
    for ( const auto& v : spec.variables )
        values.push_back( v.initial );
    return system_state{ std::move( values ) };
}

std::string format_value( const spec_model& spec, int var, value_t v )
{
    return spec.variable( var ).type.format( v );
}

std::string format_input( const spec_model& spec, const input_event& input )
{
    return spec.variable( input.var ).name + "=" + format_value( spec, input.var, input.value );
}

} // namespace scrguide
