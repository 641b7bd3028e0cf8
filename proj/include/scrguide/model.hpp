#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scrguide
{

// Every variable domain is a contiguous integer range: booleans are 0..1,
// enumerations are 0..k-1 in declaration order, bounded integers are lo..hi.
using value_t = std::int32_t;

enum class type_kind
{
    boolean,
    integer,
    enumeration
};

struct type_def
{
    std::string name; // empty for types written inline in a declaration
    type_kind kind = type_kind::boolean;
    value_t lo = 0;
    value_t hi = 1;
    std::vector< std::string > literals;

    static type_def boolean();
    static type_def integer( std::string name, value_t lo, value_t hi );
    static type_def enumeration( std::string name, std::vector< std::string > literals );

    [[nodiscard]] value_t min_value() const;
    [[nodiscard]] value_t max_value() const;
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] bool contains( value_t v ) const;
    [[nodiscard]] std::optional< value_t > literal_value( std::string_view literal ) const;
    [[nodiscard]] std::string format( value_t v ) const;

    // Same value set and same interpretation of values.
    [[nodiscard]] bool compatible_with( const type_def& other ) const;

    friend bool operator==( const type_def&, const type_def& ) = default;
};

enum class var_role
{
    monitored,
    term,
    controlled,
    mode_class
};

[[nodiscard]] std::string_view role_name( var_role role );

struct variable_decl
{
    std::string name;
    var_role role = var_role::monitored;
    type_def type;
    value_t initial = 0;

    friend bool operator==( const variable_decl&, const variable_decl& ) = default;
};

// Constants are untyped: an integer, or an enumeration literal that is
// resolved against the type at each use site.
struct constant_def
{
    std::string name;
    std::variant< value_t, std::string > value;

    friend bool operator==( const constant_def&, const constant_def& ) = default;
};

enum class cmp_op
{
    eq,
    ne,
    lt,
    le,
    gt,
    ge
};

[[nodiscard]] std::string_view op_symbol( cmp_op op );
[[nodiscard]] bool is_ordering( cmp_op op );

struct operand
{
    enum class kind
    {
        variable,
        literal,
        constant
    };

    kind k = kind::literal;
    int var = -1;          // variable index for kind::variable
    value_t value = 0;     // resolved value for literal and constant
    std::string constant;  // constant name, kept for rendering

    static operand variable( int index );
    static operand literal( value_t v );
    static operand named_constant( std::string name, value_t v );

    friend bool operator==( const operand&, const operand& ) = default;
};

// Boolean state formula.
struct cond_expr
{
    enum class kind
    {
        literal,     // true / false
        var,         // bare boolean variable
        compare,
        negation,
        conjunction,
        disjunction
    };

    kind k = kind::literal;
    bool truth = true;
    int var = -1;
    cmp_op op = cmp_op::eq;
    operand lhs;
    operand rhs;
    std::vector< cond_expr > args;

    static cond_expr constant( bool b );
    static cond_expr boolean_var( int index );
    static cond_expr comparison( operand lhs, cmp_op op, operand rhs );
    static cond_expr negate( cond_expr e );
    static cond_expr all_of( std::vector< cond_expr > es );
    static cond_expr any_of( std::vector< cond_expr > es );

    friend bool operator==( const cond_expr&, const cond_expr& ) = default;
};

enum class edge
{
    becomes_true,  // @T
    becomes_false, // @F
    changes        // @C
};

struct event_expr
{
    edge trigger = edge::becomes_true;
    cond_expr body;
    // For @C over a plain variable of any type the change is on the value;
    // otherwise @C watches the truth value of `body`.
    int changed_var = -1;
    std::optional< cond_expr > when; // evaluated in the old state

    friend bool operator==( const event_expr&, const event_expr& ) = default;
};

struct mode_row
{
    value_t from = 0;
    event_expr event;
    value_t to = 0;

    friend bool operator==( const mode_row&, const mode_row& ) = default;
};

struct mode_table
{
    int mode_class = -1;
    std::vector< mode_row > rows;

    friend bool operator==( const mode_table&, const mode_table& ) = default;
};

struct mode_set
{
    bool any = false;
    std::vector< value_t > modes;

    [[nodiscard]] bool contains( value_t mode ) const;

    friend bool operator==( const mode_set&, const mode_set& ) = default;
};

struct event_row
{
    mode_set modes;
    event_expr event;
    value_t value = 0;

    friend bool operator==( const event_row&, const event_row& ) = default;
};

// Rows are selected by the mode in the old state.
struct event_table
{
    int target = -1;
    int mode_class = -1; // -1 when the table is not mode dependent
    bool keep_default = false;
    std::vector< event_row > rows;

    friend bool operator==( const event_table&, const event_table& ) = default;
};

struct condition_row
{
    mode_set modes;
    cond_expr cond;
    value_t value = 0;

    friend bool operator==( const condition_row&, const condition_row& ) = default;
};

// Rows are selected by the mode in the new state; conditions are evaluated
// in the new state.
struct condition_table
{
    int target = -1;
    int mode_class = -1;
    bool keep_default = false;
    std::vector< condition_row > rows;

    friend bool operator==( const condition_table&, const condition_table& ) = default;
};

enum class table_kind
{
    none,
    mode,
    event,
    condition
};

struct table_ref
{
    table_kind kind = table_kind::none;
    std::size_t index = 0;

    friend bool operator==( const table_ref&, const table_ref& ) = default;
};

class spec_model
{
public:
    std::string name;
    std::vector< constant_def > constants;
    std::vector< type_def > types; // named types, in declaration order
    std::vector< variable_decl > variables;
    std::vector< mode_table > mode_tables;
    std::vector< event_table > event_tables;
    std::vector< condition_table > condition_tables;

    // Computes the derived tables (definition map, update order). Returns the
    // variable names on a dependency cycle, or an empty vector on success.
    std::vector< std::string > finalize();

    [[nodiscard]] std::optional< int > find_variable( std::string_view name ) const;
    [[nodiscard]] const constant_def* find_constant( std::string_view name ) const;
    [[nodiscard]] const type_def* find_type( std::string_view name ) const;

    [[nodiscard]] const variable_decl& variable( int index ) const { return variables.at( index ); }
    [[nodiscard]] int variable_count() const { return static_cast< int >( variables.size() ); }
    [[nodiscard]] std::vector< int > monitored() const;

    [[nodiscard]] table_ref definition_of( int var ) const { return _definitions.at( var ); }
    // Dependent variables (mode classes, terms, controlled) in the order in
    // which a step recomputes them.
    [[nodiscard]] const std::vector< int >& update_order() const { return _update_order; }

    // Variables whose new value the defining table of `var` reads.
    [[nodiscard]] std::vector< int > new_state_reads( int var ) const;
    // Every variable the defining table of `var` reads, in either state.
    [[nodiscard]] std::vector< int > all_reads( int var ) const;

    friend bool operator==( const spec_model& a, const spec_model& b );

private:
    std::vector< table_ref > _definitions;
    std::vector< int > _update_order;
};

// Variables referenced anywhere inside an expression.
void collect_vars( const cond_expr& e, std::vector< int >& out );
void collect_vars( const event_expr& e, std::vector< int >& out );
// Variables an event reads in the new state (the when clause is excluded).
void collect_new_state_vars( const event_expr& e, std::vector< int >& out );

class system_state
{
public:
    system_state() = default;
    explicit system_state( std::vector< value_t > values ) : _values{ std::move( values ) } {}

    [[nodiscard]] value_t operator[]( int var ) const { return _values[ static_cast< std::size_t >( var ) ]; }
    void set( int var, value_t v ) { _values[ static_cast< std::size_t >( var ) ] = v; }
    [[nodiscard]] std::size_t size() const { return _values.size(); }
    [[nodiscard]] std::span< const value_t > values() const { return _values; }

    [[nodiscard]] std::size_t hash() const;

    friend bool operator==( const system_state&, const system_state& ) = default;
    friend auto operator<=>( const system_state&, const system_state& ) = default;

private:
    std::vector< value_t > _values;
};

[[nodiscard]] system_state initial_state( const spec_model& spec );

struct input_event
{
    int var = -1;
    value_t value = 0;

    friend bool operator==( const input_event&, const input_event& ) = default;
    friend auto operator<=>( const input_event&, const input_event& ) = default;
};

[[nodiscard]] std::string format_input( const spec_model& spec, const input_event& input );
[[nodiscard]] std::string format_value( const spec_model& spec, int var, value_t v );

} // namespace scrguide
