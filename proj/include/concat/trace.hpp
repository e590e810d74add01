// Execution traces: one snapshot of (stack, input) per evaluation step,
// emitted as plain text or Typst markup. Time runs top to bottom, the
// stack is on the left with its top to the right, and `->` marks where an
// open list will take its next item. Steps whose expansion depth exceeds
// the machine's depth limit collapse into a dots line.
#pragma once

#include "concat/machine.hpp"

#include <string>
#include <utility>
#include <vector>

namespace concat {

struct TraceStep {
    long long index = 0;
    std::string stack_render;          // empty means empty stack; emitters draw the box
    std::string input_render;
    std::vector<std::string> input_tokens; // the same input, one text per token
    bool marker = false;               // an open list (and its arrow) is showing
    long long expansion_depth = 0;     // 0 = user token, +1 per library expansion
    std::string origin;                // the token whose evaluation produced this step
    bool elided = false;
    bool error = false;
    std::string error_sentence;
};

struct Trace {
    std::vector<TraceStep> steps;
    std::vector<std::pair<size_t, size_t>> elisions; // [first, last] visible-step ranges removed
};

struct TraceOptions {
    bool ascii_box = false; // draw `#` instead of `□` for the empty stack
};

namespace detail {

inline TraceStep snapshot(const Machine& m, long long index)
{
    TraceStep s;
    s.index = index;
    s.stack_render = m.render_stack();
    s.input_render = m.render_input();
    s.input_tokens.reserve(m.input.size());
    for (const Token& tok : m.input)
        s.input_tokens.push_back(tok.text);
    s.marker = m.list_open();
    return s;
}

// Collapse runs of elided steps into ranges. The first and last step stay
// visible no matter what their depth was.
inline void collect_elisions(Trace& t)
{
    if (t.steps.size() > 1) {
        t.steps.front().elided = false;
        t.steps.back().elided = false;
    }
    for (size_t i = 0; i < t.steps.size(); ++i) {
        if (!t.steps[i].elided) continue;
        size_t j = i;
        while (j + 1 < t.steps.size() && t.steps[j + 1].elided)
            ++j;
        t.elisions.emplace_back(i, j);
        i = j;
    }
}

} // namespace detail

// Runs the machine to quiescence, snapshotting after every step. Step 0 is
// the starting configuration. Errors end the trace with a flagged step
// instead of propagating.
inline Trace record(Machine& m)
{
    Trace t;
    t.steps.push_back(detail::snapshot(m, 0));
    long long index = 0;
    while (!m.input.empty() && !m.quit_requested) {
        const Token& next = m.input.front();
        long long depth = next.depth;
        std::string origin = next.text;
        TraceStep step;
        try {
            m.step();
            step = detail::snapshot(m, ++index);
        } catch (const Error& e) {
            step = detail::snapshot(m, ++index);
            step.error = true;
            step.error_sentence = e.sentence;
        }
        step.expansion_depth = depth;
        step.origin = std::move(origin);
        step.elided = m.depth_limit >= 0 && depth > m.depth_limit;
        bool failed = step.error;
        t.steps.push_back(std::move(step));
        if (failed) break;
    }
    detail::collect_elisions(t);
    return t;
}

// Trace a program from a given starting stack. The depth limit plays the
// same role as the .depth meta token: -1 shows everything.
inline Trace record_program(const Machine& base, std::string_view program,
                            const ValueList& initial_stack, long long depth_limit = -1)
{
    Machine m = base;
    m.out = nullptr;
    m.stack = initial_stack;
    m.depth_limit = depth_limit;
    Trace t;
    try {
        m.feed(program);
    } catch (const Error& e) {
        TraceStep step = detail::snapshot(m, 0);
        step.error = true;
        step.error_sentence = e.sentence;
        t.steps.push_back(std::move(step));
        return t;
    }
    return record(m);
}

// One line per visible step: `<stack> | <input>`, the empty stack drawn as
// a box, elided runs as a line of three dots, no trailing spaces, and a
// flagged line after an error step.
inline std::string emit_text(const Trace& t, const TraceOptions& opt = {})
{
    const char* box = opt.ascii_box ? "#" : "□";
    std::string out;
    for (size_t i = 0; i < t.steps.size(); ++i) {
        const TraceStep& s = t.steps[i];
        if (s.elided) {
            if (i == 0 || !t.steps[i - 1].elided) out += "...\n";
            continue;
        }
        out += s.stack_render.empty() ? box : s.stack_render.c_str();
        out += " |";
        if (!s.input_render.empty()) {
            out += ' ';
            out += s.input_render;
        }
        out += '\n';
        if (s.error) {
            out += "! ";
            out += s.error_sentence;
            out += '\n';
        }
    }
    return out;
}

namespace detail {

inline std::string typst_escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '\\' || c == '"') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace detail

// A Typst fragment with the same cells as emit_text: a two-column table,
// one row per visible step, dots rows spanning both columns. The cell
// texts are raw() strings so they can be checked against emit_text.
inline std::string emit_typst(const Trace& t, const TraceOptions& opt = {})
{
    const char* box = opt.ascii_box ? "#" : "□";
    std::string out;
    out += "#table(\n";
    out += "  columns: 2,\n";
    out += "  align: (right, left),\n";
    out += "  stroke: none,\n";
    out += "  column-gutter: 1.5em,\n";
    for (size_t i = 0; i < t.steps.size(); ++i) {
        const TraceStep& s = t.steps[i];
        if (s.elided) {
            if (i == 0 || !t.steps[i - 1].elided)
                out += "  table.cell(colspan: 2, raw(\"...\")),\n";
            continue;
        }
        out += "  raw(\"";
        out += detail::typst_escape(s.stack_render.empty() ? box : s.stack_render.c_str());
        out += "\"), raw(\"";
        out += detail::typst_escape(s.input_render);
        out += "\"),\n";
        if (s.error) {
            out += "  table.cell(colspan: 2, raw(\"! ";
            out += detail::typst_escape(s.error_sentence);
            out += "\")),\n";
        }
    }
    out += ")\n";
    return out;
}

} // namespace concat
