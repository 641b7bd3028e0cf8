#pragma once

#include "diagnostic.hpp"
#include "model.hpp"
#include "semantics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scrguide
{

// Guard of a guarded state change: a boolean combination of events (over the
// step's old/new pair) and conditions (over the new state).
struct guard_expr
{
    enum class kind
    {
        event,
        condition,
        negation,
        conjunction,
        disjunction
    };

    kind k = kind::condition;
    event_expr event;
    cond_expr cond;
    std::vector< guard_expr > args;

    friend bool operator==( const guard_expr&, const guard_expr& ) = default;
};

[[nodiscard]] bool eval_guard( const guard_expr& g, state_view old_state, state_view new_state );

struct sentence
{
    enum class kind
    {
        test,          // [ f ]
        change,        // stateChange
        guarded_change // stateChange[ g ]
    };

    kind k = kind::change;
    cond_expr test;
    guard_expr guard;
    source_span span;

    [[nodiscard]] bool changes_state() const { return k != kind::test; }

    friend bool operator==( const sentence& a, const sentence& b )
    {
        return a.k == b.k && a.test == b.test && a.guard == b.guard;
    }
};

struct program_node
{
    enum class kind
    {
        sentence,
        seq,
        star
    };

    kind k = kind::sentence;
    int sentence = -1; // index into scenario::sentences
    std::vector< program_node > children;

    static program_node leaf( int index );
    static program_node sequence( std::vector< program_node > parts );
    static program_node repeat( program_node body );

    friend bool operator==( const program_node&, const program_node& ) = default;
};

struct scenario
{
    std::vector< sentence > sentences; // in textual order; sentence i sets pc = i + 2 in Promela
    program_node program;
    cond_expr check;

    [[nodiscard]] int sentence_count() const { return static_cast< int >( sentences.size() ); }
};

// Parses `program : { ... } check : { ... }` against `spec`. Codes: lex,
// syntax, undeclared, type, star-no-change.
[[nodiscard]] parse_result< scenario > parse_scenario( std::string_view text, const spec_model& spec,
                                                       const std::string& file = "<input>" );

[[nodiscard]] std::string render_sentence( const spec_model& spec, const sentence& s );
[[nodiscard]] std::string render_guard( const spec_model& spec, const guard_expr& g );
[[nodiscard]] std::string render_program( const spec_model& spec, const scenario& scn );
[[nodiscard]] std::string render_scenario( const spec_model& spec, const scenario& scn );

struct pc_edge
{
    int from = 0;
    std::optional< int > sentence; // empty for an epsilon edge
    int to = 0;
};

// Program-counter automaton. Nodes are numbered 1..node_count(); the initial
// node is 1 and the accepting node is node_count().
class pc_automaton
{
public:
    pc_automaton( int node_count, std::vector< pc_edge > edges );

    [[nodiscard]] int node_count() const { return _node_count; }
    [[nodiscard]] int initial() const { return 1; }
    [[nodiscard]] int accepting() const { return _node_count; }
    [[nodiscard]] const std::vector< pc_edge >& edges() const { return _edges; }

    // Nodes reachable through epsilon edges, including `node`, ascending.
    [[nodiscard]] const std::vector< int >& closure( int node ) const { return _closure.at( node ); }
    // Sentence edges leaving any node of closure(node), ordered by
    // (sentence, target).
    [[nodiscard]] const std::vector< pc_edge >& moves( int node ) const { return _moves.at( node ); }
    [[nodiscard]] bool accepts_at( int node ) const { return _accepting.at( node ); }

    // Whether the automaton has a run from the initial node to the accepting
    // node labelled by exactly `word` (sentence indices).
    [[nodiscard]] bool accepts( const std::vector< int >& word ) const;

private:
    int _node_count;
    std::vector< pc_edge > _edges;
    std::vector< std::vector< int > > _closure;
    std::vector< std::vector< pc_edge > > _moves;
    std::vector< bool > _accepting;
};

[[nodiscard]] pc_automaton compile_to_automaton( const scenario& scn );
[[nodiscard]] pc_automaton compile_to_automaton( const program_node& program );

} // namespace scrguide
