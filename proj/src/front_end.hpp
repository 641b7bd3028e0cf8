#pragma once

// Token cursor, unresolved expression trees and the resolver that turns them
// into typed model expressions. Shared by the .scr and .scn parsers.

#include "scrguide/diagnostic.hpp"
#include "scrguide/lexer.hpp"
#include "scrguide/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scrguide::detail
{

// Thrown to abandon a parse after the first syntax error; the diagnostic has
// already been recorded.
struct syntax_abort
{
};

class token_cursor
{
public:
    token_cursor( std::vector< token > tokens, std::vector< diagnostic >& diags )
        : _tokens{ std::move( tokens ) }, _diags{ diags }
    {
    }

    [[nodiscard]] const token& peek( std::size_t ahead = 0 ) const;
    [[nodiscard]] bool at( token_kind kind ) const { return peek().kind == kind; }
    [[nodiscard]] bool at_keyword( std::string_view word ) const;
    const token& next();

    bool accept( token_kind kind );
    bool accept_keyword( std::string_view word );
    const token& expect( token_kind kind, std::string_view what );
    const token& expect_keyword( std::string_view word );
    const token& expect_identifier( std::string_view what );

    [[noreturn]] void fail( const std::string& message );
    [[noreturn]] void fail_at( const source_span& span, const std::string& message );

    [[nodiscard]] std::vector< diagnostic >& diagnostics() { return _diags; }

private:
    std::vector< token > _tokens;
    std::size_t _pos = 0;
    std::vector< diagnostic >& _diags;
};

// Words that can never be identifiers in either file format.
[[nodiscard]] bool is_reserved( std::string_view word );

struct raw_operand
{
    enum class kind
    {
        name,
        integer,
        boolean
    };

    kind k = kind::integer;
    std::string name;
    value_t number = 0;
    bool truth = false;
    source_span span;
};

struct raw_expr
{
    enum class kind
    {
        literal,
        name, // bare identifier
        compare,
        negation,
        conjunction,
        disjunction,
        event // args[0] = body, args[1] = when clause if has_when
    };

    kind k = kind::literal;
    bool truth = true;
    raw_operand lhs;
    raw_operand rhs;
    cmp_op op = cmp_op::eq;
    edge trigger = edge::becomes_true;
    bool has_when = false;
    std::vector< raw_expr > args;
    source_span span;

    [[nodiscard]] bool contains_event() const;
};

// cond := or ; or := and (OR and)* ; and := unary (AND unary)* ;
// unary := NOT unary | primary ; primary := '(' cond ')' | event | atom.
// Events are only accepted when `allow_events` is set.
raw_expr parse_expression( token_cursor& cur, bool allow_events );
raw_expr parse_event( token_cursor& cur );
raw_operand parse_value( token_cursor& cur );

[[nodiscard]] source_span merge( const source_span& a, const source_span& b );

class resolver
{
public:
    resolver( const spec_model& spec, std::vector< diagnostic >& diags ) : _spec{ spec }, _diags{ diags } {}

    std::optional< cond_expr > condition( const raw_expr& e );
    std::optional< event_expr > event( const raw_expr& e );
    // A value of `type` written at a use site (initial values, table cells).
    std::optional< value_t > value( const raw_operand& o, const type_def& type );

    void error( const source_span& span, std::string code, std::string message );

private:
    struct resolved_operand
    {
        enum class kind
        {
            variable,
            integer,
            boolean,
            int_constant,
            literal_constant, // constant whose value is an enumeration literal
            unknown
        };

        kind k = kind::unknown;
        int var = -1;
        value_t number = 0;
        std::string name;
        source_span span;
    };

    resolved_operand classify( const raw_operand& o, const type_def* context ) const;
    std::optional< cond_expr > comparison( const raw_expr& e );

    const spec_model& _spec;
    std::vector< diagnostic >& _diags;
};

} // namespace scrguide::detail
