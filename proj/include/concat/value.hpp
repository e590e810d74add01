// Runtime values: integers (arbitrary precision), booleans, strings,
// words and lists. Lists double as quoted programs, so every piece of
// code the machine touches is also a value.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace concat {

using Int = boost::multiprecision::cpp_int;

class Value;
using ValueList = std::vector<Value>;
using ListPtr = std::shared_ptr<const ValueList>;

class Value {
public:
    enum class Tag { Int, Bool, Str, Word, List };

    Value() : data_(false) {}

    static Value integer(Int n) { return Value(std::move(n)); }
    static Value integer(long long n) { return Value(Int(n)); }
    static Value boolean(bool b) { return Value(b); }
    static Value str(std::string s) { return Value(StrAtom{std::move(s)}); }
    static Value word(std::string w) { return Value(WordAtom{std::move(w)}); }
    static Value list(ValueList items)
    {
        return Value(std::make_shared<const ValueList>(std::move(items)));
    }
    static Value list(ListPtr items) { return Value(std::move(items)); }

    Tag tag() const { return static_cast<Tag>(data_.index()); }

    bool is_int() const { return tag() == Tag::Int; }
    bool is_bool() const { return tag() == Tag::Bool; }
    bool is_str() const { return tag() == Tag::Str; }
    bool is_word() const { return tag() == Tag::Word; }
    bool is_list() const { return tag() == Tag::List; }

    const Int& as_int() const { return std::get<Int>(data_); }
    bool as_bool() const { return std::get<bool>(data_); }
    const std::string& as_str() const { return std::get<StrAtom>(data_).text; }
    const std::string& as_word() const { return std::get<WordAtom>(data_).text; }
    const ValueList& as_list() const { return *std::get<ListPtr>(data_); }
    ListPtr list_ptr() const { return std::get<ListPtr>(data_); }

    // Plain-language name of the tag, for error sentences.
    std::string_view kind_name() const
    {
        switch (tag()) {
        case Tag::Int: return "a number";
        case Tag::Bool: return "a truth value";
        case Tag::Str: return "a piece of text";
        case Tag::Word: return "a word";
        case Tag::List: return "a list";
        }
        return "a value";
    }

private:
    struct StrAtom {
        std::string text;
    };
    struct WordAtom {
        std::string text;
    };

    explicit Value(Int n) : data_(std::move(n)) {}
    explicit Value(bool b) : data_(b) {}
    explicit Value(StrAtom s) : data_(std::move(s)) {}
    explicit Value(WordAtom w) : data_(std::move(w)) {}
    explicit Value(ListPtr l) : data_(std::move(l)) {}

    std::variant<Int, bool, StrAtom, WordAtom, ListPtr> data_;
};

// Source form of a string literal: quotes added back, `"` and `\` escaped.
inline std::string quote_str(std::string_view content)
{
    std::string out;
    out.reserve(content.size() + 2);
    out.push_back('"');
    for (char c : content) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

namespace detail {
inline void render_into(const Value& v, std::string& out)
{
    switch (v.tag()) {
    case Value::Tag::Int: out += v.as_int().str(); break;
    case Value::Tag::Bool: out += v.as_bool() ? "true" : "false"; break;
    case Value::Tag::Str: out += quote_str(v.as_str()); break;
    case Value::Tag::Word: out += v.as_word(); break;
    case Value::Tag::List: {
        const ValueList& items = v.as_list();
        out += '[';
        for (const Value& item : items) {
            out += ' ';
            render_into(item, out);
        }
        out += " ]";
        break;
    }
    }
}
} // namespace detail

// Canonical text form. Reading it back yields an equal value, which the
// trace emitters and golden tests rely on.
inline std::string render(const Value& v)
{
    std::string out;
    detail::render_into(v, out);
    return out;
}

// Structural equality. Different tags never compare equal; in particular
// comparing a number with a list is false, not an error.
inline bool equal(const Value& a, const Value& b)
{
    if (a.tag() != b.tag()) return false;
    switch (a.tag()) {
    case Value::Tag::Int: return a.as_int() == b.as_int();
    case Value::Tag::Bool: return a.as_bool() == b.as_bool();
    case Value::Tag::Str: return a.as_str() == b.as_str();
    case Value::Tag::Word: return a.as_word() == b.as_word();
    case Value::Tag::List: {
        const ValueList& xs = a.as_list();
        const ValueList& ys = b.as_list();
        if (xs.size() != ys.size()) return false;
        for (size_t i = 0; i < xs.size(); ++i)
            if (!equal(xs[i], ys[i])) return false;
        return true;
    }
    }
    return false;
}

inline bool equal(const ValueList& a, const ValueList& b)
{
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

// Floor division pair: (a floor_div b) * b + (a floor_mod b) == a, with the
// modulus taking the sign of the divisor. cpp_int itself truncates toward
// zero, which would break that identity for negative operands.
inline Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_mod(const Int& a, const Int& b)
{
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

} // namespace concat
