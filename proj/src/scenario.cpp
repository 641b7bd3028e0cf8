#include "scrguide/scenario.hpp"

#include "front_end.hpp"
#include "scrguide/spec_parser.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace scrguide
{

using detail::raw_expr;
using detail::token_cursor;

bool eval_guard( const guard_expr& g, state_view old_state, state_view new_state )
{
    switch ( g.k )
    {
    case guard_expr::kind::event: return eval_event( g.event, old_state, new_state );
    case guard_expr::kind::condition: return eval_cond( g.cond, new_state );
    case guard_expr::kind::negation: return !eval_guard( g.args.front(), old_state, new_state );
    case guard_expr::kind::conjunction:
        return std::all_of( g.args.begin(), g.args.end(),
                            [ & ]( const guard_expr& a ) { return eval_guard( a, old_state, new_state ); } );
    case guard_expr::kind::disjunction:
        return std::any_of( g.args.begin(), g.args.end(),
                            [ & ]( const guard_expr& a ) { return eval_guard( a, old_state, new_state ); } );
    }
    return false;
}

program_node program_node::leaf( int index )
{
    program_node n;
    n.k = kind::sentence;
    n.sentence = index;
    return n;
}

program_node program_node::sequence( std::vector< program_node > parts )
{
    program_node n;
    n.k = kind::seq;
    n.children = std::move( parts );
    return n;
}

program_node program_node::repeat( program_node body )
{
    program_node n;
    n.k = kind::star;
    n.children.push_back( std::move( body ) );
    return n;
}

namespace
{

struct raw_sentence
{
    sentence::kind k = sentence::kind::change;
    raw_expr expr;
    source_span span;
};

struct raw_scenario
{
    std::vector< raw_sentence > sentences;
    program_node program;
    raw_expr check;
};

class scenario_syntax
{
public:
    explicit scenario_syntax( token_cursor& cur ) : _cur{ cur } {}

    raw_scenario parse()
    {
        _cur.expect_keyword( "program" );
        _cur.expect( token_kind::colon, "':'" );
        _cur.expect( token_kind::lbrace, "'{'" );
        if ( _cur.at( token_kind::rbrace ) )
            _cur.fail( "empty program: expected at least one sentence" );
        _raw.program = sequence( token_kind::rbrace );
        _cur.expect( token_kind::rbrace, "'}'" );
        _cur.expect_keyword( "check" );
        _cur.expect( token_kind::colon, "':'" );
        if ( _cur.accept( token_kind::lbrace ) )
        {
            _raw.check = detail::parse_expression( _cur, false );
            _cur.expect( token_kind::rbrace, "'}'" );
        }
        else
        {
            _raw.check = detail::parse_expression( _cur, false );
        }
        _cur.accept( token_kind::semicolon );
        if ( !_cur.at( token_kind::end_of_input ) )
            _cur.fail( "expected end of input after the check formula" );
        return std::move( _raw );
    }

private:
    program_node sequence( token_kind closer )
    {
        std::vector< program_node > parts;
        parts.push_back( item() );
        while ( _cur.accept( token_kind::semicolon ) )
        {
            if ( _cur.at( closer ) )
                break;
            parts.push_back( item() );
        }
        if ( parts.size() == 1 )
            return std::move( parts.front() );
        return program_node::sequence( std::move( parts ) );
    }

    program_node item()
    {
        const std::size_t first_sentence = _raw.sentences.size();
        const source_span start = _cur.peek().span;
        program_node node = atom();
        while ( _cur.at( token_kind::star ) )
        {
            const token& star = _cur.next();
            const bool has_change = std::any_of( _raw.sentences.begin() + static_cast< std::ptrdiff_t >( first_sentence ),
                                                 _raw.sentences.end(),
                                                 []( const raw_sentence& s ) { return s.k != sentence::kind::test; } );
            if ( !has_change )
            {
                _cur.diagnostics().push_back( { severity::error, "star-no-change",
                                                "a repeated part must contain a state change; a loop of tests "
                                                "only stutters",
                                                detail::merge( start, star.span ) } );
            }
            node = program_node::repeat( std::move( node ) );
        }
        return node;
    }

    program_node atom()
    {
        if ( _cur.accept( token_kind::lparen ) )
        {
            if ( _cur.at( token_kind::rparen ) )
                _cur.fail( "empty group: expected at least one sentence" );
            program_node inner = sequence( token_kind::rparen );
            _cur.expect( token_kind::rparen, "')'" );
            return inner;
        }
        raw_sentence s;
        s.span = _cur.peek().span;
        if ( _cur.accept( token_kind::lbracket ) )
        {
            s.k = sentence::kind::test;
            s.expr = detail::parse_expression( _cur, false );
            s.span = detail::merge( s.span, _cur.expect( token_kind::rbracket, "']'" ).span );
        }
        else if ( _cur.accept_keyword( "stateChange" ) )
        {
            s.k = sentence::kind::change;
            if ( _cur.accept( token_kind::lbracket ) )
            {
                s.k = sentence::kind::guarded_change;
                s.expr = detail::parse_expression( _cur, true );
                s.span = detail::merge( s.span, _cur.expect( token_kind::rbracket, "']'" ).span );
            }
        }
        else
        {
            _cur.fail( "expected a sentence ('[ formula ]', 'stateChange' or 'stateChange[ guard ]') or '('" );
        }
        _raw.sentences.push_back( std::move( s ) );
        return program_node::leaf( static_cast< int >( _raw.sentences.size() - 1 ) );
    }

    token_cursor& _cur;
    raw_scenario _raw;
};

std::optional< guard_expr > resolve_guard( detail::resolver& r, const raw_expr& e )
{
    guard_expr g;
    if ( !e.contains_event() )
    {
        auto c = r.condition( e );
        if ( !c )
            return std::nullopt;
        g.k = guard_expr::kind::condition;
        g.cond = std::move( *c );
        return g;
    }
    switch ( e.k )
    {
    case raw_expr::kind::event:
    {
        auto ev = r.event( e );
        if ( !ev )
            return std::nullopt;
        g.k = guard_expr::kind::event;
        g.event = std::move( *ev );
        return g;
    }
    case raw_expr::kind::negation:
    case raw_expr::kind::conjunction:
    case raw_expr::kind::disjunction:
    {
        g.k = e.k == raw_expr::kind::negation      ? guard_expr::kind::negation
              : e.k == raw_expr::kind::conjunction ? guard_expr::kind::conjunction
                                                   : guard_expr::kind::disjunction;
        bool ok = true;
        for ( const auto& a : e.args )
        {
            if ( auto sub = resolve_guard( r, a ) )
                g.args.push_back( std::move( *sub ) );
            else
                ok = false;
        }
        if ( !ok )
            return std::nullopt;
        return g;
    }
    default: break;
    }
    return std::nullopt;
}

} // namespace

parse_result< scenario > parse_scenario( std::string_view text, const spec_model& spec, const std::string& file )
{
    parse_result< scenario > result;
    auto tokens = tokenize( text, file, result.diagnostics );
    token_cursor cur{ std::move( tokens ), result.diagnostics };
    raw_scenario raw;
    try
    {
        raw = scenario_syntax{ cur }.parse();
    }
    catch ( const detail::syntax_abort& )
    {
        return result;
    }
    if ( has_errors( result.diagnostics ) )
        return result;

    detail::resolver r{ spec, result.diagnostics };
    scenario scn;
    scn.program = std::move( raw.program );
    bool ok = true;
    for ( const auto& rs : raw.sentences )
    {
        sentence s;
        s.k = rs.k;
        s.span = rs.span;
        if ( rs.k == sentence::kind::test )
        {
            if ( auto c = r.condition( rs.expr ) )
                s.test = std::move( *c );
            else
                ok = false;
        }
        else if ( rs.k == sentence::kind::guarded_change )
        {
            if ( auto g = resolve_guard( r, rs.expr ) )
                s.guard = std::move( *g );
            else
                ok = false;
        }
        scn.sentences.push_back( std::move( s ) );
    }
    if ( auto c = r.condition( raw.check ) )
        scn.check = std::move( *c );
    else
        ok = false;
    if ( ok )
        result.value = std::move( scn );
    return result;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_guard( const spec_model& spec, const guard_expr& g )
{
    switch ( g.k )
    {
    case guard_expr::kind::event: return render_event( spec, g.event );
    case guard_expr::kind::condition: return render_cond( spec, g.cond );
    case guard_expr::kind::negation: return "NOT (" + render_guard( spec, g.args.front() ) + ")";
    case guard_expr::kind::conjunction:
    case guard_expr::kind::disjunction:
    {
        std::string out;
        for ( const auto& a : g.args )
        {
            if ( !out.empty() )
                out += g.k == guard_expr::kind::conjunction ? " AND " : " OR ";
            out += "(" + render_guard( spec, a ) + ")";
        }
        return out;
    }
    }
    return {};
}

std::string render_sentence( const spec_model& spec, const sentence& s )
{
    switch ( s.k )
    {
    case sentence::kind::test: return "[ " + render_cond( spec, s.test ) + " ]";
    case sentence::kind::change: return "stateChange";
    case sentence::kind::guarded_change: return "stateChange[ " + render_guard( spec, s.guard ) + " ]";
    }
    return {};
}

namespace
{

std::string render_node( const spec_model& spec, const scenario& scn, const program_node& n )
{
    switch ( n.k )
    {
    case program_node::kind::sentence: return render_sentence( spec, scn.sentences.at( n.sentence ) );
    case program_node::kind::seq:
    {
        std::string out;
        for ( const auto& c : n.children )
            out += ( out.empty() ? "" : "; " ) + render_node( spec, scn, c );
        return out;
    }
    case program_node::kind::star:
    {
        const auto& body = n.children.front();
        if ( body.k == program_node::kind::seq )
            return "(" + render_node( spec, scn, body ) + ")*";
        return render_node( spec, scn, body ) + "*";
    }
    }
    return {};
}

} // namespace

std::string render_program( const spec_model& spec, const scenario& scn )
{
    return render_node( spec, scn, scn.program );
}

std::string render_scenario( const spec_model& spec, const scenario& scn )
{
    return "program : { " + render_program( spec, scn ) + " }\ncheck : { " + render_cond( spec, scn.check ) + " }\n";
}

// ---------------------------------------------------------------------------
// Automaton

pc_automaton::pc_automaton( int node_count, std::vector< pc_edge > edges )
    : _node_count{ node_count }, _edges{ std::move( edges ) }
{
    const auto n = static_cast< std::size_t >( node_count ) + 1;
    _closure.assign( n, {} );
    _moves.assign( n, {} );
    _accepting.assign( n, false );

    for ( int start = 1; start <= node_count; ++start )
    {
        std::set< int > seen{ start };
        std::vector< int > work{ start };
        while ( !work.empty() )
        {
            const int at = work.back();
            work.pop_back();
            for ( const auto& e : _edges )
                if ( e.from == at && !e.sentence && seen.insert( e.to ).second )
                    work.push_back( e.to );
        }
        auto& closure = _closure[ static_cast< std::size_t >( start ) ];
        closure.assign( seen.begin(), seen.end() );
        _accepting[ static_cast< std::size_t >( start ) ] = seen.contains( node_count );

        auto& moves = _moves[ static_cast< std::size_t >( start ) ];
        for ( const auto& e : _edges )
            if ( e.sentence && seen.contains( e.from ) )
                moves.push_back( e );
        std::sort( moves.begin(), moves.end(), []( const pc_edge& a, const pc_edge& b ) {
            return std::tie( *a.sentence, a.to, a.from ) < std::tie( *b.sentence, b.to, b.from );
        } );
        moves.erase( std::unique( moves.begin(), moves.end(),
                                  []( const pc_edge& a, const pc_edge& b ) {
                                      return a.sentence == b.sentence && a.to == b.to;
                                  } ),
                     moves.end() );
    }
}

bool pc_automaton::accepts( const std::vector< int >& word ) const
{
    std::set< int > current{ initial() };
    for ( int symbol : word )
    {
        std::set< int > next;
        for ( int node : current )
            for ( const auto& e : moves( node ) )
                if ( *e.sentence == symbol )
                    next.insert( e.to );
        if ( next.empty() )
            return false;
        current = std::move( next );
    }
    return std::any_of( current.begin(), current.end(), [ this ]( int node ) { return accepts_at( node ); } );
}

namespace
{

class automaton_builder
{
public:
    int fresh()
    {
        _is_head.push_back( false );
        return static_cast< int >( _is_head.size() );
    }

    void edge( int from, std::optional< int > sentence, int to ) { _edges.push_back( { from, sentence, to } ); }

    int build( const program_node& n, int entry )
    {
        switch ( n.k )
        {
        case program_node::kind::sentence:
        {
            const int target = fresh();
            edge( entry, n.sentence, target );
            return target;
        }
        case program_node::kind::seq:
        {
            int at = entry;
            for ( const auto& c : n.children )
                at = build( c, at );
            return at;
        }
        case program_node::kind::star:
        {
            const program_node* body = &n.children.front();
            while ( body->k == program_node::kind::star )
                body = &body->children.front();

            // A node that already heads a loop cannot head another one: the
            // two loop bodies would interleave.
            int head = entry;
            if ( head_flag( entry ) )
            {
                head = fresh();
                edge( entry, std::nullopt, head );
            }
            head_flag( head ) = true;

            if ( body->k == program_node::kind::sentence )
            {
                edge( head, body->sentence, head );
                return head;
            }
            const int end = build( *body, head );
            if ( end != head )
                edge( end, std::nullopt, head );
            return head;
        }
        }
        return entry;
    }

    pc_automaton finish( const program_node& program )
    {
        const int start = fresh();
        int accept = build( program, start );
        if ( head_flag( accept ) )
        {
            const int final_node = fresh();
            edge( accept, std::nullopt, final_node );
            accept = final_node;
        }
        const int count = static_cast< int >( _is_head.size() );
        if ( accept != count )
        {
            const auto relabel = [ & ]( int node ) { return node == accept ? count : node == count ? accept : node; };
            for ( auto& e : _edges )
            {
                e.from = relabel( e.from );
                e.to = relabel( e.to );
            }
        }
        return pc_automaton{ count, std::move( _edges ) };
    }

private:
    std::vector< bool >::reference head_flag( int node ) { return _is_head[ static_cast< std::size_t >( node - 1 ) ]; }

    std::vector< bool > _is_head;
    std::vector< pc_edge > _edges;
};

} // namespace

pc_automaton compile_to_automaton( const program_node& program )
{
    return automaton_builder{}.finish( program );
}

pc_automaton compile_to_automaton( const scenario& scn )
{
    return compile_to_automaton( scn.program );
}

} // namespace scrguide
