#include "scrguide/promela.hpp"

#include "scrguide/consistency.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace scrguide
{

namespace
{

// Promela keywords, names pan.c reserves, and the names the emitter itself
// introduces.
const std::set< std::string >& reserved_names()
{
    static const std::set< std::string > names = {
        "active",   "assert",   "atomic",   "bit",      "bool",     "break",     "byte",       "c_code",
        "c_decl",   "c_expr",   "c_state",  "c_track",  "chan",     "d_step",    "D_proctype", "do",
        "else",     "empty",    "enabled",  "eval",     "false",    "fi",        "for",        "full",
        "get_priority", "goto", "hidden",   "if",       "in",       "init",      "inline",     "int",
        "len",      "local",    "ltl",      "mtype",    "nempty",   "never",     "nfull",      "notrace",
        "np_",      "od",       "of",       "pc_value", "pid",      "print",     "printf",     "printm",
        "priority", "proctype", "provided", "run",      "select",   "set_priority", "short",   "show",
        "skip",     "timeout",  "trace",    "true",     "typedef",  "unless",    "unsigned",   "xr",
        "xs",       "now",      "_pid",     "_nr_pr",   "_last",    "_priority", "main",       "exit",
        "abort",    "char",     "struct",   "union",    "long",     "void",      "return",     "while",
        "switch",   "case",     "default",  "static",   "const",    "extern",    "register",   "volatile",
        "sizeof",   "float",    "double",   "signed",   "auto",     "continue",  "enum",       "union",
        // emitted names
        "pc", "scenario", "monitor", "filtered", "scr_step", "scr_commit", "scr_discard" };
    return names;
}

class namer
{
public:
    std::string claim( const std::string& original, const std::vector< std::string >& derived_suffixes = {} )
    {
        std::string candidate = original;
        const auto taken = [ & ]( const std::string& name ) {
            if ( reserved_names().contains( name ) || _used.contains( name ) )
                return true;
            return std::any_of( derived_suffixes.begin(), derived_suffixes.end(), [ & ]( const std::string& suffix ) {
                const std::string d = name + suffix;
                return reserved_names().contains( d ) || _used.contains( d );
            } );
        };
        while ( taken( candidate ) )
            candidate += "_v";
        _used.insert( candidate );
        for ( const auto& suffix : derived_suffixes )
            _used.insert( candidate + suffix );
        if ( candidate != original )
            renamed[ original ] = candidate;
        return candidate;
    }

    std::map< std::string, std::string > renamed;

private:
    std::set< std::string > _used;
};

const char* const scratch_suffix = "_n";

std::string promela_type( const type_def& t )
{
    const value_t lo = t.min_value();
    const value_t hi = t.max_value();
    if ( t.kind == type_kind::boolean )
        return "bool";
    if ( lo >= 0 && hi <= 255 )
        return "byte";
    if ( lo >= -32768 && hi <= 32767 )
        return "short";
    return "int";
}

class emitter
{
public:
    emitter( const spec_model& spec, const scenario& scn, const promela_options& options )
        : _spec{ spec }, _scn{ scn }, _options{ options }
    {
        assign_names();
    }

    emitted_model run()
    {
        emitted_model model;
        model.pc_count = _scn.sentence_count() + 1;

        header();
        declarations();
        step_inline();
        commit_inlines();
        scenario_process();

        _out << "active proctype monitor()\n{\n";
        // Promela has no implication operator; this rewrites `a -> b` in the
        // assertion below into the conditional expression `(a -> b : true)`.
        _out << "#define assert(e) assert((e : true))\n";
        model.assertion_line = line();
        _out << "    assert(pc==" << model.pc_count << " -> (" << cond( _scn.check, false ) << "))\n";
        _out << "#undef assert\n";
        _out << "}\n";

        model.text = _out.str();
        model.renamed = _names.renamed;
        return model;
    }

private:
    int line() const
    {
        const std::string s = _out.str();
        return static_cast< int >( std::count( s.begin(), s.end(), '\n' ) ) + 1;
    }

    void assign_names()
    {
        for ( int v = 0; v < _spec.variable_count(); ++v )
            _var_names.push_back( _names.claim( _spec.variable( v ).name, { scratch_suffix } ) );
        for ( const auto& c : _spec.constants )
            if ( std::holds_alternative< value_t >( c.value ) )
                _constant_names[ c.name ] = _names.claim( c.name );
        for ( int v = 0; v < _spec.variable_count(); ++v )
        {
            const auto& type = _spec.variable( v ).type;
            if ( type.kind != type_kind::enumeration )
                continue;
            const std::string key = literal_key( v );
            if ( _literal_names.contains( key ) )
                continue;
            const std::string prefix = type.name.empty() ? _spec.variable( v ).name : type.name;
            auto& names = _literal_names[ key ];
            for ( const auto& lit : type.literals )
                names.push_back( _names.claim( prefix + "_" + lit ) );
        }
    }

    // Variables of one named type share the literal names of that type.
    std::string literal_key( int var ) const
    {
        const auto& type = _spec.variable( var ).type;
        return type.name.empty() ? "variable " + _spec.variable( var ).name : "type " + type.name;
    }

    const std::string& literal_name( int var, value_t v ) const
    {
        return _literal_names.at( literal_key( var ) ).at( static_cast< std::size_t >( v ) );
    }

    std::string var( int v, bool next ) const
    {
        return _var_names[ static_cast< std::size_t >( v ) ] + ( next ? scratch_suffix : "" );
    }

    std::string value( int v, value_t x ) const
    {
        switch ( _spec.variable( v ).type.kind )
        {
        case type_kind::boolean: return x != 0 ? "true" : "false";
        case type_kind::enumeration: return literal_name( v, x );
        case type_kind::integer: return std::to_string( x );
        }
        return std::to_string( x );
    }

    std::string operand_text( const operand& o, const operand& other, bool next ) const
    {
        switch ( o.k )
        {
        case operand::kind::variable: return var( o.var, next );
        case operand::kind::constant:
            if ( const auto it = _constant_names.find( o.constant ); it != _constant_names.end() )
                return it->second;
            [[fallthrough]];
        case operand::kind::literal:
            if ( other.k == operand::kind::variable )
                return value( other.var, o.value );
            return std::to_string( o.value );
        }
        return {};
    }

    std::string cond( const cond_expr& e, bool next ) const
    {
        switch ( e.k )
        {
        case cond_expr::kind::literal: return e.truth ? "true" : "false";
        case cond_expr::kind::var: return var( e.var, next );
        case cond_expr::kind::compare:
            return operand_text( e.lhs, e.rhs, next ) + " " + std::string{ e.op == cmp_op::eq ? "==" : op_symbol( e.op ) }
                   + " " + operand_text( e.rhs, e.lhs, next );
        case cond_expr::kind::negation: return "!(" + cond( e.args.front(), next ) + ")";
        case cond_expr::kind::conjunction:
        case cond_expr::kind::disjunction:
        {
            std::string out;
            for ( const auto& a : e.args )
            {
                if ( !out.empty() )
                    out += e.k == cond_expr::kind::conjunction ? " && " : " || ";
                out += "(" + cond( a, next ) + ")";
            }
            return out;
        }
        }
        return {};
    }

    std::string event( const event_expr& ev ) const
    {
        std::string out;
        if ( ev.changed_var >= 0 )
        {
            out = var( ev.changed_var, false ) + " != " + var( ev.changed_var, true );
        }
        else
        {
            const std::string before = cond( ev.body, false );
            const std::string after = cond( ev.body, true );
            switch ( ev.trigger )
            {
            case edge::becomes_true: out = "!(" + before + ") && (" + after + ")"; break;
            case edge::becomes_false: out = "(" + before + ") && !(" + after + ")"; break;
            case edge::changes: out = "(" + before + ") != (" + after + ")"; break;
            }
        }
        if ( ev.when )
            out += " && (" + cond( *ev.when, false ) + ")";
        return out;
    }

    std::string guard( const guard_expr& g ) const
    {
        switch ( g.k )
        {
        case guard_expr::kind::event: return event( g.event );
        case guard_expr::kind::condition: return cond( g.cond, true );
        case guard_expr::kind::negation: return "!(" + guard( g.args.front() ) + ")";
        case guard_expr::kind::conjunction:
        case guard_expr::kind::disjunction:
        {
            std::string out;
            for ( const auto& a : g.args )
            {
                if ( !out.empty() )
                    out += g.k == guard_expr::kind::conjunction ? " && " : " || ";
                out += "(" + guard( a ) + ")";
            }
            return out;
        }
        }
        return {};
    }

    std::string modes( const mode_set& s, int mode_class, bool next ) const
    {
        if ( s.any || mode_class < 0 )
            return "true";
        std::string out;
        for ( value_t m : s.modes )
        {
            if ( !out.empty() )
                out += " || ";
            out += var( mode_class, next ) + " == " + value( mode_class, m );
        }
        return s.modes.size() > 1 ? "(" + out + ")" : out;
    }

    void header()
    {
        _out << "/*\n * Promela model of spec " << _spec.name;
        if ( !_options.spec_label.empty() )
            _out << " (" << _options.spec_label << ")";
        _out << "\n * scenario";
        if ( !_options.scenario_label.empty() )
            _out << " " << _options.scenario_label;
        _out << ": " << _scn.sentence_count() << " sentence(s); the check is asserted at pc == "
             << _scn.sentence_count() + 1 << "\n";
        if ( _options.unroll )
            _out << " * loops unrolled at most " << *_options.unroll << " time(s)\n";
        if ( !_names.renamed.empty() )
        {
            _out << " *\n * renamed identifiers:\n";
            for ( const auto& [ from, to ] : _names.renamed )
                _out << " *   " << from << " -> " << to << "\n";
        }
        _out << " */\n\n";
    }

    void declarations()
    {
        bool any = false;
        for ( const auto& c : _spec.constants )
            if ( const auto* n = std::get_if< value_t >( &c.value ) )
            {
                _out << "#define " << _constant_names.at( c.name ) << " " << *n << "\n";
                any = true;
            }
        for ( const auto& [ key, names ] : _literal_names )
        {
            (void)key;
            for ( std::size_t i = 0; i < names.size(); ++i )
                _out << "#define " << names[ i ] << " " << i << "\n";
            any = true;
        }
        if ( any )
            _out << "\n";

        for ( int v = 0; v < _spec.variable_count(); ++v )
        {
            const auto& decl = _spec.variable( v );
            const std::string type = promela_type( decl.type );
            _out << type << " " << var( v, false ) << " = " << value( v, decl.initial ) << ";  /* "
                 << role_name( decl.role ) << " */\n";
        }
        for ( int v = 0; v < _spec.variable_count(); ++v )
        {
            const auto& decl = _spec.variable( v );
            _out << promela_type( decl.type ) << " " << var( v, true ) << " = " << value( v, decl.initial ) << ";\n";
        }
        _out << ( _scn.sentence_count() + 1 <= 255 ? "byte" : "short" ) << " pc = 1;\n\n";
    }

    void step_inline()
    {
        _out << "/* One step: a single monitored variable changes, then every dependent\n"
                "   variable is recomputed in dependency order into the _n copies. */\n";
        _out << "inline scr_step()\n{\n";
        _out << "    if\n";
        for ( int m : _spec.monitored() )
        {
            const auto& type = _spec.variable( m ).type;
            for ( value_t x = type.min_value(); x <= type.max_value(); ++x )
                _out << "    :: " << var( m, false ) << " != " << value( m, x ) << " -> " << var( m, true ) << " = "
                     << value( m, x ) << "\n";
        }
        _out << "    fi;\n";

        for ( int d : _spec.update_order() )
        {
            const table_ref ref = _spec.definition_of( d );
            _out << "    /* " << _spec.variable( d ).name << " */\n    if\n";
            switch ( ref.kind )
            {
            case table_kind::mode:
                for ( const auto& row : _spec.mode_tables[ ref.index ].rows )
                    _out << "    :: " << var( d, false ) << " == " << value( d, row.from ) << " && " << event( row.event )
                         << " -> " << var( d, true ) << " = " << value( d, row.to ) << "\n";
                break;
            case table_kind::event:
            {
                const auto& table = _spec.event_tables[ ref.index ];
                for ( const auto& row : table.rows )
                    _out << "    :: " << modes( row.modes, table.mode_class, false ) << " && " << event( row.event )
                         << " -> " << var( d, true ) << " = " << value( d, row.value ) << "\n";
                break;
            }
            case table_kind::condition:
            {
                const auto& table = _spec.condition_tables[ ref.index ];
                for ( const auto& row : table.rows )
                    _out << "    :: " << modes( row.modes, table.mode_class, true ) << " && (" << cond( row.cond, true )
                         << ") -> " << var( d, true ) << " = " << value( d, row.value ) << "\n";
                break;
            }
            case table_kind::none: break;
            }
            _out << "    :: else -> skip\n    fi;\n";
        }
        _out << "}\n\n";
    }

    void commit_inlines()
    {
        _out << "inline scr_commit()\n{\n";
        for ( int v = 0; v < _spec.variable_count(); ++v )
            _out << "    " << var( v, false ) << " = " << var( v, true ) << ";\n";
        _out << "}\n\n";
        _out << "inline scr_discard()\n{\n";
        for ( int v = 0; v < _spec.variable_count(); ++v )
            _out << "    " << var( v, true ) << " = " << var( v, false ) << ";\n";
        _out << "}\n\n";
    }

    void indent( int depth ) { _out << std::string( static_cast< std::size_t >( depth ) * 4, ' ' ); }

    void sentence_code( int index, int depth )
    {
        const sentence& s = _scn.sentences.at( static_cast< std::size_t >( index ) );
        const int next_pc = index + 2;
        indent( depth );
        _out << "/* " << index + 1 << ": " << render_sentence( _spec, s ) << " */\n";
        indent( depth );
        switch ( s.k )
        {
        case sentence::kind::change:
            _out << "atomic { scr_step(); scr_commit(); pc = " << next_pc << " };\n";
            break;
        case sentence::kind::guarded_change:
            _out << "atomic {\n";
            indent( depth + 1 );
            _out << "scr_step();\n";
            indent( depth + 1 );
            _out << "if\n";
            indent( depth + 1 );
            _out << ":: " << guard( s.guard ) << " -> scr_commit(); pc = " << next_pc << "\n";
            indent( depth + 1 );
            _out << ":: else -> scr_discard(); goto filtered\n";
            indent( depth + 1 );
            _out << "fi\n";
            indent( depth );
            _out << "};\n";
            break;
        case sentence::kind::test:
            _out << "atomic {\n";
            indent( depth + 1 );
            _out << "if\n";
            indent( depth + 1 );
            _out << ":: " << cond( s.test, false ) << " -> pc = " << next_pc << "\n";
            indent( depth + 1 );
            _out << ":: else -> goto filtered\n";
            indent( depth + 1 );
            _out << "fi\n";
            indent( depth );
            _out << "};\n";
            break;
        }
    }

    void program( const program_node& n, int depth )
    {
        switch ( n.k )
        {
        case program_node::kind::sentence: sentence_code( n.sentence, depth ); break;
        case program_node::kind::seq:
            for ( const auto& c : n.children )
                program( c, depth );
            break;
        case program_node::kind::star:
        {
            const program_node* body = &n.children.front();
            while ( body->k == program_node::kind::star )
                body = &body->children.front();
            if ( _options.unroll )
            {
                unrolled( *body, *_options.unroll, depth );
                break;
            }
            indent( depth );
            _out << "do\n";
            indent( depth );
            _out << ":: true ->\n";
            program( *body, depth + 1 );
            indent( depth );
            _out << ":: break\n";
            indent( depth );
            _out << "od;\n";
            break;
        }
        }
    }

    void unrolled( const program_node& body, int copies, int depth )
    {
        if ( copies <= 0 )
            return;
        indent( depth );
        _out << "if\n";
        indent( depth );
        _out << ":: true ->\n";
        program( body, depth + 1 );
        unrolled( body, copies - 1, depth + 1 );
        indent( depth );
        _out << ":: true -> skip\n";
        indent( depth );
        _out << "fi;\n";
    }

    void scenario_process()
    {
        _out << "active proctype scenario()\n{\n";
        program( _scn.program, 1 );
        _out << "    pc = " << _scn.sentence_count() + 1 << ";\n";
        _out << "filtered:\n    skip\n}\n\n";
    }

    const spec_model& _spec;
    const scenario& _scn;
    const promela_options& _options;
    std::ostringstream _out;
    namer _names;
    std::vector< std::string > _var_names;
    std::map< std::string, std::string > _constant_names;
    std::map< std::string, std::vector< std::string > > _literal_names;
};

} // namespace

parse_result< emitted_model > emit_promela( const spec_model& spec, const scenario& scn,
                                            const promela_options& options )
{
    parse_result< emitted_model > result;
    result.diagnostics = check_consistency( spec );
    if ( has_errors( result.diagnostics ) )
        return result;
    if ( options.unroll && *options.unroll < 0 )
    {
        result.diagnostics.push_back(
            { severity::error, "usage", "unroll count must not be negative", { "", 0, 0, 0, 0 } } );
        return result;
    }
    result.value = emitter{ spec, scn, options }.run();
    return result;
}

} // namespace scrguide
