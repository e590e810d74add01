// Tokens: whitespace-free symbols with their source position and, once
// inside the machine, the library-expansion depth that produced them.
#pragma once

#include "concat/value.hpp"

#include <string>
#include <vector>

namespace concat {

enum class TokenKind {
    LBracket,
    RBracket,
    IntLit,
    BoolLit,
    StrLit,   // text keeps the surrounding quotes; decode with str_content()
    ValueLit, // synthetic: a value moved back into the input, pushed as one step
    Word,
};

struct Token {
    std::string text;
    TokenKind kind = TokenKind::Word;
    int line = 0;
    int col = 0;
    int source = -1; // index into the machine's source table, -1 = synthetic
    int depth = 0;   // 0 = user token, +1 per library expansion level
    std::shared_ptr<const Value> value; // payload of a ValueLit token
};

// Decoded content of a StrLit token (quotes stripped, escapes resolved).
inline std::string str_content(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    for (size_t i = 1; i + 1 < text.size(); ++i) {
        if (text[i] == '\\' && i + 2 < text.size()) ++i;
        out.push_back(text[i]);
    }
    return out;
}

// The value a token denotes when swallowed by an open list: literals become
// their values, words stay inert as word values.
inline Value token_to_value(const Token& tok)
{
    switch (tok.kind) {
    case TokenKind::IntLit: return Value::integer(Int(tok.text));
    case TokenKind::BoolLit: return Value::boolean(tok.text == "true");
    case TokenKind::StrLit: return Value::str(str_content(tok.text));
    case TokenKind::ValueLit: return *tok.value;
    default: return Value::word(tok.text);
    }
}

// The token a value becomes when it moves back into the input buffer.
// Words become ordinary word tokens, so they evaluate again; everything
// else becomes a literal that pushes itself in a single step. The text is
// the canonical rendering, so traces read the same either way.
inline void append_value_tokens(const Value& v, std::vector<Token>& out, const Token& origin)
{
    Token tok = origin;
    if (v.is_word()) {
        tok.text = v.as_word();
        tok.kind = TokenKind::Word;
    } else {
        tok.text = render(v);
        tok.kind = TokenKind::ValueLit;
        tok.value = std::make_shared<const Value>(v);
    }
    out.push_back(std::move(tok));
}

inline std::vector<Token> value_to_tokens(const Value& v, const Token& origin)
{
    std::vector<Token> out;
    append_value_tokens(v, out, origin);
    return out;
}

} // namespace concat
