// Built-in behavior for the kernel tokens. Each operator validates its
// operands before popping anything, so errors never leave a half-changed
// stack. The brackets appear in the table so the banner can list them; the
// machine handles them before word dispatch ever runs.
#pragma once

#include "concat/machine.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace concat {
namespace kernel {

using Fn = void (*)(Machine&, const Token&);

inline void op_add(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number");
    m.need(tok, 1, Value::Tag::Int, "a number");
    Int b = m.pop().as_int();
    Int a = m.pop().as_int();
    m.push(Value::integer(a + b));
}

inline void op_sub(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number");
    m.need(tok, 1, Value::Tag::Int, "a number");
    Int b = m.pop().as_int();
    Int a = m.pop().as_int();
    m.push(Value::integer(a - b));
}

inline void op_mul(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number");
    m.need(tok, 1, Value::Tag::Int, "a number");
    Int b = m.pop().as_int();
    Int a = m.pop().as_int();
    m.push(Value::integer(a * b));
}

inline void op_div(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number");
    m.need(tok, 1, Value::Tag::Int, "a number");
    if (m.peek(0).as_int() == 0)
        throw Error("Cannot divide by zero.", tok.line, tok.col, tok.source);
    Int b = m.pop().as_int();
    Int a = m.pop().as_int();
    m.push(Value::integer(floor_div(a, b)));
}

inline void op_mod(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number");
    m.need(tok, 1, Value::Tag::Int, "a number");
    if (m.peek(0).as_int() == 0)
        throw Error("Cannot divide by zero.", tok.line, tok.col, tok.source);
    Int b = m.pop().as_int();
    Int a = m.pop().as_int();
    m.push(Value::integer(floor_mod(a, b)));
}

inline void op_less(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number");
    m.need(tok, 1, Value::Tag::Int, "a number");
    Int b = m.pop().as_int();
    Int a = m.pop().as_int();
    m.push(Value::boolean(a < b));
}

inline void op_equal(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    Value b = m.pop();
    Value a = m.pop();
    m.push(Value::boolean(equal(a, b)));
}

inline void op_and(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Bool, "a truth value");
    m.need(tok, 1, Value::Tag::Bool, "a truth value");
    bool b = m.pop().as_bool();
    bool a = m.pop().as_bool();
    m.push(Value::boolean(a && b));
}

inline void op_or(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Bool, "a truth value");
    m.need(tok, 1, Value::Tag::Bool, "a truth value");
    bool b = m.pop().as_bool();
    bool a = m.pop().as_bool();
    m.push(Value::boolean(a || b));
}

inline void op_not(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::Bool, "a truth value");
    m.push(Value::boolean(!m.pop().as_bool()));
}

inline void op_dup(Machine& m, const Token& tok)
{
    if (m.stack.empty())
        throw Error("Cannot copy the top of an empty stack.", tok.line, tok.col, tok.source);
    m.push(m.peek(0));
}

inline void op_drop(Machine& m, const Token& tok)
{
    if (m.stack.empty())
        throw Error("Cannot discard the top of an empty stack.", tok.line, tok.col, tok.source);
    m.pop();
}

inline void op_swap(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    std::swap(m.stack[m.stack.size() - 1], m.stack[m.stack.size() - 2]);
}

// x y z -> z x y
inline void op_rollup(Machine& m, const Token& tok)
{
    m.need_values(tok, 3);
    Value z = m.pop();
    Value y = m.pop();
    Value x = m.pop();
    m.push(std::move(z));
    m.push(std::move(x));
    m.push(std::move(y));
}

// x y z -> y z x
inline void op_rolldown(Machine& m, const Token& tok)
{
    m.need_values(tok, 3);
    Value z = m.pop();
    Value y = m.pop();
    Value x = m.pop();
    m.push(std::move(y));
    m.push(std::move(z));
    m.push(std::move(x));
}

inline void op_id(Machine&, const Token&) {}

inline void op_ljoin(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    ListPtr tail = m.pop().list_ptr();
    Value head = m.pop();
    ValueList joined;
    joined.reserve(tail->size() + 1);
    joined.push_back(std::move(head));
    joined.insert(joined.end(), tail->begin(), tail->end());
    m.push(Value::list(std::move(joined)));
}

inline void op_lcut(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    if (m.peek(0).as_list().empty())
        throw Error("Cannot cut an empty list.", tok.line, tok.col, tok.source);
    ListPtr whole = m.pop().list_ptr();
    m.push(whole->front());
    m.push(Value::list(ValueList(whole->begin() + 1, whole->end())));
}

inline void op_rcut(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    if (m.peek(0).as_list().empty())
        throw Error("Cannot cut an empty list.", tok.line, tok.col, tok.source);
    ListPtr whole = m.pop().list_ptr();
    m.push(Value::list(ValueList(whole->begin(), whole->end() - 1)));
    m.push(whole->back());
}

inline void op_cat(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    m.need(tok, 1, Value::Tag::List, "a list beneath the top");
    ListPtr b = m.pop().list_ptr();
    ListPtr a = m.pop().list_ptr();
    ValueList joined;
    joined.reserve(a->size() + b->size());
    joined.insert(joined.end(), a->begin(), a->end());
    joined.insert(joined.end(), b->begin(), b->end());
    m.push(Value::list(std::move(joined)));
}

inline void op_count(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    m.push(Value::integer(Int(m.pop().as_list().size())));
}

inline void op_get(Machine& m, const Token& tok)
{
    m.need_values(tok, 2);
    m.need(tok, 0, Value::Tag::Int, "a number as the index on top of the stack");
    m.need(tok, 1, Value::Tag::List, "a list beneath the index");
    const Int& index = m.peek(0).as_int();
    const ValueList& items = m.peek(1).as_list();
    if (index < 0 || index >= Int(items.size())) {
        std::string size_text = items.empty()
                                    ? "an empty list"
                                    : "a list of " + std::to_string(items.size())
                                          + (items.size() == 1 ? " item" : " items");
        throw Error("There is no item at index " + index.str() + " in " + size_text + ".",
                    tok.line, tok.col, tok.source);
    }
    m.pop();
    Value item = m.peek(0).as_list()[static_cast<size_t>(index)];
    m.pop();
    m.push(std::move(item));
}

inline void op_last(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    if (m.peek(0).as_list().empty())
        throw Error("Cannot take the last item of an empty list.", tok.line, tok.col, tok.source);
    ListPtr whole = m.pop().list_ptr();
    m.push(whole->back());
}

inline void op_empty(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    m.push(Value::boolean(m.pop().as_list().empty()));
}

// Dequoting: move a quoted program back to the input buffer.
inline void op_i(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    ListPtr program = m.pop().list_ptr();
    std::vector<Token> tokens;
    for (const Value& item : *program)
        append_value_tokens(item, tokens, tok);
    m.prepend(std::move(tokens));
}

inline void op_choice(Machine& m, const Token& tok)
{
    m.need_values(tok, 3);
    m.need(tok, 2, Value::Tag::Bool, "a truth value beneath the two alternatives");
    Value otherwise = m.pop();
    Value then = m.pop();
    bool condition = m.pop().as_bool();
    m.push(condition ? std::move(then) : std::move(otherwise));
}

inline void op_stack(Machine& m, const Token&)
{
    m.push(Value::list(ValueList(m.stack.begin(), m.stack.end())));
}

inline void op_unstack(Machine& m, const Token& tok)
{
    m.need_values(tok, 1);
    m.need(tok, 0, Value::Tag::List, "a list on top of the stack");
    ListPtr snapshot = m.pop().list_ptr();
    m.stack.assign(snapshot->begin(), snapshot->end());
}

inline void op_newstack(Machine& m, const Token&) { m.stack.clear(); }

inline void op_stack_size(Machine& m, const Token&)
{
    m.push(Value::integer(Int(m.stack.size())));
}

inline void op_bracket(Machine&, const Token& tok)
{
    // Never reached: the reader classifies brackets before word dispatch.
    throw Error("The token '" + tok.text + "' can only be read as part of a list.", tok.line,
                tok.col, tok.source);
}

inline const std::map<std::string, Fn>& table()
{
    static const std::map<std::string, Fn> ops = {
        {"*", op_mul},
        {"+", op_add},
        {"-", op_sub},
        {"/", op_div},
        {"<", op_less},
        {"=", op_equal},
        {"[", op_bracket},
        {"]", op_bracket},
        {"and", op_and},
        {"cat", op_cat},
        {"choice", op_choice},
        {"count", op_count},
        {"drop", op_drop},
        {"dup", op_dup},
        {"empty?", op_empty},
        {"get", op_get},
        {"i", op_i},
        {"id", op_id},
        {"last", op_last},
        {"lcut", op_lcut},
        {"ljoin", op_ljoin},
        {"mod", op_mod},
        {"newstack", op_newstack},
        {"not", op_not},
        {"or", op_or},
        {"rcut", op_rcut},
        {"rolldown", op_rolldown},
        {"rollup", op_rollup},
        {"stack", op_stack},
        {"stack-size", op_stack_size},
        {"swap", op_swap},
        {"unstack", op_unstack},
    };
    return ops;
}

inline const std::vector<std::string>& meta_names()
{
    static const std::vector<std::string> names = {".def", ".depth", ".language",
                                                   ".load", ".quit",  ".src"};
    return names;
}

} // namespace kernel

namespace detail {

inline void run_kernel(Machine& m, const Token& tok)
{
    kernel::table().at(tok.text)(m, tok);
}

inline const std::vector<std::pair<std::string, Definition::Kind>>& builtin_names()
{
    static const std::vector<std::pair<std::string, Definition::Kind>> names = [] {
        std::vector<std::pair<std::string, Definition::Kind>> all;
        for (const auto& [name, fn] : kernel::table())
            all.emplace_back(name, Definition::Kind::Kernel);
        for (const std::string& name : kernel::meta_names())
            all.emplace_back(name, Definition::Kind::Meta);
        return all;
    }();
    return names;
}

} // namespace detail
} // namespace concat
