// The evaluation machine: a value stack and a token input buffer. One step
// consumes the leftmost input token. Open lists swallow tokens, literals
// push themselves, kernel words run built-in behavior, library words expand
// into the input buffer, and dot words reach the system underneath.
#pragma once

#include "concat/error.hpp"
#include "concat/reader.hpp"
#include "concat/token.hpp"
#include "concat/value.hpp"

#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace concat {

inline constexpr long long kDefaultStepLimit = 1'000'000;

struct Definition {
    enum class Kind { Kernel, Library, Meta };

    std::string name;
    Kind kind = Kind::Library;
    std::vector<Token> body;       // empty for kernel and meta tokens
    std::string source_text;       // canonical `[ ... ]` form shown by .src
};

struct SourceFile {
    std::string name;      // path or a synthetic label like <stdlib>
    std::string directory; // where .load resolves relative paths first
};

struct RunOutcome {
    bool ok = true;
    std::string error;
    int line = 0;
    int col = 0;
    int source = -1;
};

class Machine;

namespace detail {
void run_kernel(Machine& m, const Token& tok);                       // kernel.hpp
const std::vector<std::pair<std::string, Definition::Kind>>& builtin_names(); // kernel.hpp
} // namespace detail

class Machine {
public:
    std::vector<Value> stack; // back() is the top; rendered rightmost
    std::deque<Token> input;
    std::map<std::string, Definition> dict;
    std::vector<ValueList> open_frames; // innermost open list is back()
    std::vector<SourceFile> sources;

    long long step_count = 0;
    long long step_limit = kDefaultStepLimit;
    long long depth_limit = -1; // trace expansion depth set by .depth, -1 = unlimited
    bool quit_requested = false;
    std::ostream* out = nullptr; // sink for .src and .language output

    Machine()
    {
        for (const auto& [name, kind] : detail::builtin_names())
            dict.emplace(name, Definition{name, kind, {}, {}});
    }

    bool list_open() const { return !open_frames.empty(); }

    int add_source(std::string name, std::string directory)
    {
        sources.push_back(SourceFile{std::move(name), std::move(directory)});
        return static_cast<int>(sources.size()) - 1;
    }

    void feed(std::string_view text, int source_id = -1)
    {
        for (Token& tok : tokenize(text, source_id))
            input.push_back(std::move(tok));
    }

    void prepend(std::vector<Token> tokens)
    {
        input.insert(input.begin(), std::make_move_iterator(tokens.begin()),
                     std::make_move_iterator(tokens.end()));
    }

    // --- stack helpers -------------------------------------------------

    void push(Value v) { stack.push_back(std::move(v)); }

    const Value& peek(size_t from_top = 0) const { return stack[stack.size() - 1 - from_top]; }

    Value pop()
    {
        Value v = std::move(stack.back());
        stack.pop_back();
        return v;
    }

    // Validation happens before anything is popped, so a failing token
    // leaves the stack exactly as it was.
    void need_values(const Token& tok, size_t n) const
    {
        if (stack.size() >= n) return;
        static constexpr std::string_view words[] = {"no", "one", "two", "three", "four"};
        std::string have = stack.empty() ? "the stack is empty"
                           : stack.size() == 1
                               ? "there is only one"
                               : std::string("there are only ") + std::string(words[stack.size()]);
        throw Error("The token '" + tok.text + "' needs " + std::string(words[n])
                        + (n == 1 ? " value" : " values") + " on the stack, but " + have + ".",
                    tok.line, tok.col, tok.source);
    }

    const Value& need(const Token& tok, size_t from_top, Value::Tag tag,
                      std::string_view wanted) const
    {
        const Value& v = peek(from_top);
        if (v.tag() != tag)
            throw Error("The token '" + tok.text + "' needs " + std::string(wanted)
                            + ", but found " + render(v) + ".",
                        tok.line, tok.col, tok.source);
        return v;
    }

    // --- evaluation ----------------------------------------------------

    // Consumes exactly one token. The caller guarantees input is nonempty.
    void step()
    {
        if (step_count >= step_limit)
            throw Error("The program did not finish within " + std::to_string(step_limit)
                        + " steps.");

        Token tok = std::move(input.front());
        input.pop_front();
        ++step_count;

        // An open list swallows everything except brackets; words stay
        // quoted and are never looked up here.
        if (list_open() && tok.kind != TokenKind::LBracket && tok.kind != TokenKind::RBracket) {
            open_frames.back().push_back(token_to_value(tok));
            return;
        }

        switch (tok.kind) {
        case TokenKind::LBracket:
            open_frames.emplace_back();
            return;
        case TokenKind::RBracket: {
            if (open_frames.empty())
                throw Error("There is no open list to close.", tok.line, tok.col, tok.source);
            Value done = Value::list(std::move(open_frames.back()));
            open_frames.pop_back();
            if (open_frames.empty())
                push(std::move(done));
            else
                open_frames.back().push_back(std::move(done));
            return;
        }
        case TokenKind::IntLit:
        case TokenKind::BoolLit:
        case TokenKind::StrLit:
        case TokenKind::ValueLit:
            push(token_to_value(tok));
            return;
        case TokenKind::Word:
            run_word(tok);
            return;
        }
    }

    RunOutcome run()
    {
        while (!input.empty() && !quit_requested) {
            try {
                step();
            } catch (const Error& e) {
                return RunOutcome{false, e.sentence, e.line, e.col, e.source};
            }
        }
        return RunOutcome{};
    }

    RunOutcome eval(std::string_view text, int source_id = -1)
    {
        try {
            feed(text, source_id);
        } catch (const Error& e) {
            return RunOutcome{false, e.sentence, e.line, e.col, e.source};
        }
        return run();
    }

    // --- definitions ---------------------------------------------------

    void define(const std::string& name, std::vector<Token> body, const Token& at)
    {
        if (name.empty())
            throw Error("A new token needs a nonempty name.", at.line, at.col, at.source);
        if (name == "[" || name == "]")
            throw Error("A new token cannot be named '" + name
                            + "'; brackets always keep their meaning.",
                        at.line, at.col, at.source);
        if (name.front() == '.')
            throw Error("A new token cannot start with a dot; dot tokens belong to the system.",
                        at.line, at.col, at.source);
        std::vector<Token> check;
        try {
            check = tokenize(name);
        } catch (const Error&) {
            check.clear();
        }
        if (check.size() != 1 || check.front().kind != TokenKind::Word)
            throw Error("The name '" + name + "' cannot be used as a token.", at.line, at.col,
                        at.source);

        std::string source_text = body.empty() ? "[ ]" : "[ " + join_tokens(body) + " ]";
        dict[name] = Definition{name, Definition::Kind::Library, std::move(body),
                                std::move(source_text)};
    }

    // --- rendering -----------------------------------------------------

    // Stack text, bottom to top, with any open lists shown unclosed and an
    // arrow at the point where the next item will be inserted.
    std::string render_stack() const
    {
        std::string s;
        for (const Value& v : stack) {
            if (!s.empty()) s.push_back(' ');
            s += render(v);
        }
        for (const ValueList& frame : open_frames) {
            if (!s.empty()) s.push_back(' ');
            s.push_back('[');
            for (const Value& v : frame) {
                s.push_back(' ');
                s += render(v);
            }
        }
        if (!open_frames.empty()) s += " ->";
        return s;
    }

    std::string render_input() const
    {
        std::string s;
        for (const Token& tok : input) {
            if (!s.empty()) s.push_back(' ');
            s += tok.text;
        }
        return s;
    }

    // The full language, grouped the way the start-up banner shows it.
    std::string banner() const
    {
        static constexpr size_t kWrap = 112;
        auto group = [&](std::string_view label, Definition::Kind kind) {
            std::string text(label);
            size_t col = text.size();
            bool first = true;
            for (const auto& [name, def] : dict) { // std::map keeps names sorted
                if (def.kind != kind) continue;
                std::string sep = first ? "   " : "  ";
                if (!first && col + sep.size() + name.size() > kWrap) {
                    text += '\n';
                    col = 0;
                    sep.clear();
                }
                text += sep;
                text += name;
                col += sep.size() + name.size();
                first = false;
            }
            text += '\n';
            return text;
        };
        return group("KERNEL", Definition::Kind::Kernel)
               + group("LIBRARY", Definition::Kind::Library)
               + group("META/SYSTEM", Definition::Kind::Meta);
    }

private:
    void emit(std::string_view text)
    {
        if (out) (*out) << text;
    }

    void run_word(const Token& tok)
    {
        if (tok.text.front() == '.') {
            run_meta(tok);
            return;
        }
        auto it = dict.find(tok.text);
        if (it == dict.end())
            throw Error("The token '" + tok.text + "' has no meaning yet.", tok.line, tok.col,
                        tok.source);
        const Definition& def = it->second;
        if (def.kind == Definition::Kind::Kernel) {
            detail::run_kernel(*this, tok);
            return;
        }
        // Processing a defined token prepends its body to the input buffer.
        std::vector<Token> expansion = def.body;
        for (Token& t : expansion)
            t.depth = tok.depth + 1;
        prepend(std::move(expansion));
    }

    void run_meta(const Token& tok)
    {
        if (tok.text == ".def") {
            meta_def(tok);
        } else if (tok.text == ".load") {
            meta_load(tok);
        } else if (tok.text == ".src") {
            meta_src(tok);
        } else if (tok.text == ".language") {
            emit(banner());
        } else if (tok.text == ".quit") {
            quit_requested = true;
        } else if (tok.text == ".depth") {
            need_values(tok, 1);
            need(tok, 0, Value::Tag::Int, "a number");
            Int n = pop().as_int();
            depth_limit = n < 0 ? -1 : static_cast<long long>(n);
        } else {
            throw Error("The token '" + tok.text + "' has no meaning yet.", tok.line, tok.col,
                        tok.source);
        }
    }

    void meta_def(const Token& tok)
    {
        need_values(tok, 2);
        need(tok, 0, Value::Tag::List, "a list as the body on top of the stack");
        need(tok, 1, Value::Tag::Str, "a text name beneath the body");
        Value body_value = pop();
        std::string name = pop().as_str();
        std::vector<Token> body;
        for (const Value& item : body_value.as_list())
            append_value_tokens(item, body, tok);
        define(name, std::move(body), tok);
    }

    void meta_load(const Token& tok)
    {
        need_values(tok, 1);
        need(tok, 0, Value::Tag::Str, "a file path as text on top of the stack");
        std::string path = pop().as_str();

        namespace fs = std::filesystem;
        std::vector<fs::path> candidates;
        fs::path given(path);
        if (given.is_absolute()) {
            candidates.push_back(given);
        } else {
            if (tok.source >= 0 && tok.source < static_cast<int>(sources.size())
                && !sources[tok.source].directory.empty())
                candidates.push_back(fs::path(sources[tok.source].directory) / given);
            candidates.push_back(given);
        }

        for (const fs::path& candidate : candidates) {
            std::ifstream file(candidate);
            if (!file) continue;
            std::ostringstream text;
            text << file.rdbuf();
            int sid = add_source(candidate.string(), candidate.parent_path().string());
            std::vector<Token> tokens = tokenize(text.str(), sid);
            for (Token& t : tokens)
                t.depth = tok.depth;
            prepend(std::move(tokens));
            return;
        }
        throw Error("The file '" + path + "' could not be opened.", tok.line, tok.col,
                    tok.source);
    }

    void meta_src(const Token& tok)
    {
        need_values(tok, 1);
        need(tok, 0, Value::Tag::Str, "a token name as text on top of the stack");
        std::string name = pop().as_str();
        auto it = dict.find(name);
        if (it == dict.end())
            throw Error("The token '" + name + "' has no meaning yet.", tok.line, tok.col,
                        tok.source);
        if (it->second.kind != Definition::Kind::Library)
            throw Error("The token '" + name + "' is built in; it has no source to show.",
                        tok.line, tok.col, tok.source);
        emit(it->second.source_text + "\n");
    }
};

} // namespace concat

#include "concat/kernel.hpp"
