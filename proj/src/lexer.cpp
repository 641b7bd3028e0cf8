#include "scrguide/lexer.hpp"

#include <cctype>

namespace scrguide
{

std::string_view token_name( token_kind kind )
{
    switch ( kind )
    {
    case token_kind::identifier: return "identifier";
    case token_kind::integer: return "integer";
    case token_kind::at_t: return "'@T'";
    case token_kind::at_f: return "'@F'";
    case token_kind::at_c: return "'@C'";
    case token_kind::lbrace: return "'{'";
    case token_kind::rbrace: return "'}'";
    case token_kind::lparen: return "'('";
    case token_kind::rparen: return "')'";
    case token_kind::lbracket: return "'['";
    case token_kind::rbracket: return "']'";
    case token_kind::semicolon: return "';'";
    case token_kind::colon: return "':'";
    case token_kind::comma: return "','";
    case token_kind::star: return "'*'";
    case token_kind::minus: return "'-'";
    case token_kind::dotdot: return "'..'";
    case token_kind::row_sep: return "'--'";
    case token_kind::row_arrow: return "'-->'";
    case token_kind::eq: return "'='";
    case token_kind::ne: return "'!='";
    case token_kind::lt: return "'<'";
    case token_kind::le: return "'<='";
    case token_kind::gt: return "'>'";
    case token_kind::ge: return "'>='";
    case token_kind::end_of_input: return "end of input";
    case token_kind::invalid: return "invalid token";
    }
    return "?";
}

namespace
{

class scanner
{
public:
    scanner( std::string_view text, const std::string& file ) : _text{ text }, _file{ file } {}

    [[nodiscard]] bool done() const { return _pos >= _text.size(); }
    [[nodiscard]] char peek( std::size_t ahead = 0 ) const
    {
        return _pos + ahead < _text.size() ? _text[ _pos + ahead ] : '\0';
    }
    [[nodiscard]] bool starts_with( std::string_view s ) const { return _text.substr( _pos ).starts_with( s ); }

    void advance( std::size_t n = 1 )
    {
        for ( std::size_t i = 0; i < n && _pos < _text.size(); ++i )
        {
            const auto c = static_cast< unsigned char >( _text[ _pos++ ] );
            if ( c == '\n' )
            {
                ++_line;
                _col = 1;
            }
            else if ( ( c & 0xC0u ) != 0x80u )
            {
                ++_col;
            }
        }
    }

    [[nodiscard]] std::size_t pos() const { return _pos; }
    [[nodiscard]] int line() const { return _line; }
    [[nodiscard]] int col() const { return _col; }
    [[nodiscard]] std::string_view slice( std::size_t from ) const { return _text.substr( from, _pos - from ); }

    [[nodiscard]] source_span span_from( int line, int col ) const { return { _file, line, col, _line, _col }; }

private:
    std::string_view _text;
    const std::string& _file;
    std::size_t _pos = 0;
    int _line = 1;
    int _col = 1;
};

bool ident_start( char c )
{
    return std::isalpha( static_cast< unsigned char >( c ) ) != 0 || c == '_';
}

bool ident_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) != 0 || c == '_';
}

struct fixed_token
{
    std::string_view spelling;
    token_kind kind;
};

// Longest spellings first.
constexpr fixed_token fixed_tokens[] = {
    { "-->", token_kind::row_arrow },
    { "\xE2\x89\xA0", token_kind::ne }, // U+2260
    { "\xE2\x89\xA4", token_kind::le }, // U+2264
    { "\xE2\x89\xA5", token_kind::ge }, // U+2265
    { "--", token_kind::row_sep },
    { "..", token_kind::dotdot },
    { "!=", token_kind::ne },
    { "<=", token_kind::le },
    { ">=", token_kind::ge },
    { "@T", token_kind::at_t },
    { "@F", token_kind::at_f },
    { "@C", token_kind::at_c },
    { "{", token_kind::lbrace },
    { "}", token_kind::rbrace },
    { "(", token_kind::lparen },
    { ")", token_kind::rparen },
    { "[", token_kind::lbracket },
    { "]", token_kind::rbracket },
    { ";", token_kind::semicolon },
    { ":", token_kind::colon },
    { ",", token_kind::comma },
    { "*", token_kind::star },
    { "-", token_kind::minus },
    { "=", token_kind::eq },
    { "<", token_kind::lt },
    { ">", token_kind::gt },
};

} // namespace

std::vector< token > tokenize( std::string_view text, const std::string& file, std::vector< diagnostic >& diags )
{
    std::vector< token > out;
    scanner s{ text, file };

    while ( true )
    {
        // whitespace and comments
        while ( !s.done() )
        {
            const char c = s.peek();
            if ( c == '#' )
            {
                while ( !s.done() && s.peek() != '\n' )
                    s.advance();
            }
            else if ( std::isspace( static_cast< unsigned char >( c ) ) != 0 )
            {
                s.advance();
            }
            else
            {
                break;
            }
        }

        const int line = s.line();
        const int col = s.col();
        const std::size_t start = s.pos();

        if ( s.done() )
        {
            out.push_back( { token_kind::end_of_input, "", s.span_from( line, col ) } );
            return out;
        }

        const char c = s.peek();
        if ( ident_start( c ) )
        {
            while ( !s.done() && ident_char( s.peek() ) )
                s.advance();
            out.push_back( { token_kind::identifier, std::string{ s.slice( start ) }, s.span_from( line, col ) } );
            continue;
        }
        if ( std::isdigit( static_cast< unsigned char >( c ) ) != 0 )
        {
            while ( !s.done() && std::isdigit( static_cast< unsigned char >( s.peek() ) ) != 0 )
                s.advance();
            out.push_back( { token_kind::integer, std::string{ s.slice( start ) }, s.span_from( line, col ) } );
            continue;
        }

        bool matched = false;
        for ( const auto& f : fixed_tokens )
        {
            if ( s.starts_with( f.spelling ) )
            {
                s.advance( f.spelling.size() );
                out.push_back( { f.kind, std::string{ f.spelling }, s.span_from( line, col ) } );
                matched = true;
                break;
            }
        }
        if ( matched )
            continue;

        // Consume one whole UTF-8 sequence so the error points at a character.
        s.advance();
        while ( !s.done() && ( static_cast< unsigned char >( s.peek() ) & 0xC0u ) == 0x80u )
            s.advance();
        const auto span = s.span_from( line, col );
        const std::string bad{ s.slice( start ) };
        diags.push_back( { severity::error, "lex", "unexpected character '" + bad + "'", span } );
        out.push_back( { token_kind::invalid, bad, span } );
    }
}

} // namespace scrguide
