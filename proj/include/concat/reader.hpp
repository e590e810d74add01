// The reader splits source text into tokens. There is no grammar beyond
// that: any run of whitespace separates tokens, double-quoted strings are
// single tokens, and a token starting with `#` swallows the rest of its
// line as a comment.
#pragma once

#include "concat/error.hpp"
#include "concat/token.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace concat {

namespace detail {

inline bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

inline bool is_int_literal(std::string_view text)
{
    size_t i = (text.size() > 1 && text[0] == '-') ? 1 : 0;
    if (i >= text.size()) return false;
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
}

} // namespace detail

// Turns source text into a token stream, classifying each token as a
// bracket, literal or word. Malformed input throws an Error whose message
// names the line and column.
inline std::vector<Token> tokenize(std::string_view source, int source_id = -1)
{
    std::vector<Token> tokens;
    int line = 1;
    int col = 1;
    size_t i = 0;
    const size_t n = source.size();

    auto advance = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };

    while (i < n) {
        char c = source[i];
        if (detail::is_space(c)) {
            advance(c);
            ++i;
            continue;
        }
        if (c == '#') { // comment runs to end of line
            while (i < n && source[i] != '\n') {
                advance(source[i]);
                ++i;
            }
            continue;
        }

        int tok_line = line;
        int tok_col = col;

        if (c == '"') {
            std::string text;
            text.push_back('"');
            advance(c);
            ++i;
            bool closed = false;
            while (i < n) {
                char d = source[i];
                if (d == '\n') break;
                if (d == '\\') {
                    if (i + 1 < n && (source[i + 1] == '"' || source[i + 1] == '\\')) {
                        text.push_back('\\');
                        text.push_back(source[i + 1]);
                        advance(d);
                        advance(source[i + 1]);
                        i += 2;
                        continue;
                    }
                }
                advance(d);
                ++i;
                text.push_back(d);
                if (d == '"') {
                    closed = true;
                    break;
                }
            }
            if (!closed)
                throw Error("The text starting at line " + std::to_string(tok_line) + ", column "
                                + std::to_string(tok_col) + " has no closing quote.",
                            tok_line, tok_col, source_id);
            if (i < n && !detail::is_space(source[i]))
                throw Error("The closing quote at line " + std::to_string(line) + ", column "
                                + std::to_string(col - 1)
                                + " must be followed by a space or the end of the line.",
                            line, col - 1, source_id);
            tokens.push_back(Token{std::move(text), TokenKind::StrLit, tok_line, tok_col, source_id, 0});
            continue;
        }

        std::string text;
        while (i < n && !detail::is_space(source[i])) {
            text.push_back(source[i]);
            advance(source[i]);
            ++i;
        }

        Token tok{std::move(text), TokenKind::Word, tok_line, tok_col, source_id, 0};
        if (tok.text == "[") {
            tok.kind = TokenKind::LBracket;
        } else if (tok.text == "]") {
            tok.kind = TokenKind::RBracket;
        } else if (tok.text == "true" || tok.text == "false") {
            tok.kind = TokenKind::BoolLit;
        } else if (detail::is_int_literal(tok.text)) {
            tok.kind = TokenKind::IntLit;
        } else {
            // Brackets and quotes are only meaningful as whole tokens; a
            // token that merely contains one is a mistake worth naming.
            if (tok.text.find('[') != std::string::npos || tok.text.find(']') != std::string::npos)
                throw Error("The brackets in '" + tok.text
                                + "' must be separated from other characters by spaces.",
                            tok_line, tok_col, source_id);
            if (tok.text.find('"') != std::string::npos)
                throw Error("The quote inside '" + tok.text
                                + "' is misplaced; text must start and end with quotes.",
                            tok_line, tok_col, source_id);
        }
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

// Token texts joined with single spaces. Re-reading the result gives the
// same token sequence back.
inline std::string join_tokens(const std::vector<Token>& tokens)
{
    std::string out;
    for (const Token& tok : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += tok.text;
    }
    return out;
}

} // namespace concat
