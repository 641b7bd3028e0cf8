#pragma once

#include "diagnostic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace scrguide
{

enum class token_kind
{
    identifier,
    integer,
    at_t,       // @T
    at_f,       // @F
    at_c,       // @C
    lbrace,
    rbrace,
    lparen,
    rparen,
    lbracket,
    rbracket,
    semicolon,
    colon,
    comma,
    star,
    minus,
    dotdot,
    row_sep,    // --
    row_arrow,  // -->
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    end_of_input,
    invalid
};

[[nodiscard]] std::string_view token_name( token_kind kind );

struct token
{
    token_kind kind = token_kind::invalid;
    std::string text;
    source_span span;
};

// Splits `text` into tokens. `#` starts a comment running to the end of the
// line. The UTF-8 forms of != <= >= are accepted. Invalid characters produce
// a `lex` diagnostic and an `invalid` token; the stream always ends with an
// end_of_input token.
[[nodiscard]] std::vector< token > tokenize( std::string_view text, const std::string& file,
                                             std::vector< diagnostic >& diags );

} // namespace scrguide
