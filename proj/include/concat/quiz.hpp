// Puzzle machinery. A quiz is a run with one hole in it: forward quizzes
// hide the resulting stack, inverse quizzes hide the program. Forward
// answers are checked by playing the program out; inverse quizzes are
// solved by checking every token sequence over a given alphabet, shortest
// first.
#pragma once

#include "concat/machine.hpp"
#include "concat/trace.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace concat {

enum class QuizKind { Forward, Inverse };

struct Quiz {
    QuizKind kind = QuizKind::Forward;
    ValueList initial_stack;
    std::vector<Token> program;        // forward: the program to play out
    ValueList target_stack;            // inverse: the stack to reach
    std::vector<std::string> alphabet; // inverse: tokens the solution may use
    int max_len = 0;
    bool no_literals = false;
};

enum class Verdict { Correct, Incorrect, ProgramFails };

struct SolutionSet {
    std::vector<std::vector<std::string>> programs; // by length, then alphabet order
    struct Stats {
        long long candidates = 0;
        long long steps = 0;
    } stats;
};

inline constexpr long long kCandidateStepBudget = 10'000;

// --- value parsing ------------------------------------------------------

// Reads literal values: numbers, truth values, text and bracketed lists.
// Bare words only make sense inside a list, where they stay quoted.
inline ValueList parse_values(std::string_view text)
{
    ValueList out;
    std::vector<ValueList> frames;
    for (const Token& tok : tokenize(text)) {
        switch (tok.kind) {
        case TokenKind::LBracket:
            frames.emplace_back();
            break;
        case TokenKind::RBracket: {
            if (frames.empty())
                throw Error("There is no open list to close.", tok.line, tok.col);
            Value done = Value::list(std::move(frames.back()));
            frames.pop_back();
            (frames.empty() ? out : frames.back()).push_back(std::move(done));
            break;
        }
        case TokenKind::Word:
            if (frames.empty())
                throw Error("The word '" + tok.text
                                + "' can only be used inside a list here.",
                            tok.line, tok.col);
            frames.back().push_back(Value::word(tok.text));
            break;
        default:
            (frames.empty() ? out : frames.back()).push_back(token_to_value(tok));
            break;
        }
    }
    if (!frames.empty()) throw Error("A list is left open; a closing bracket is missing.");
    return out;
}

// --- quiz files ---------------------------------------------------------

// Line-oriented text: `key: value` lines, `#` comments. Keys are kind,
// stack, program or target, alphabet, max-len and constraints.
inline Quiz parse_quiz_text(std::string_view text)
{
    Quiz q;
    bool saw_kind = false, saw_program = false, saw_target = false;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '#') continue;

        size_t colon = line.find(':');
        if (colon == std::string_view::npos)
            throw Error("Line " + std::to_string(line_no)
                        + " of the quiz needs the form 'key: value'.");
        std::string key(line.substr(0, colon));
        std::string value(line.substr(colon + 1));
        if (size_t vb = value.find_first_not_of(" \t"); vb != std::string::npos)
            value = value.substr(vb);
        else
            value.clear();

        if (key == "kind") {
            saw_kind = true;
            if (value == "forward")
                q.kind = QuizKind::Forward;
            else if (value == "inverse")
                q.kind = QuizKind::Inverse;
            else
                throw Error("The quiz kind must be 'forward' or 'inverse', not '" + value
                            + "'.");
        } else if (key == "stack") {
            q.initial_stack = parse_values(value);
        } else if (key == "program") {
            saw_program = true;
            q.program = tokenize(value);
        } else if (key == "target") {
            saw_target = true;
            q.target_stack = parse_values(value);
        } else if (key == "alphabet") {
            for (Token& tok : tokenize(value))
                q.alphabet.push_back(std::move(tok.text));
        } else if (key == "max-len") {
            try {
                q.max_len = std::stoi(value);
            } catch (...) {
                throw Error("The max-len line needs a whole number, not '" + value + "'.");
            }
        } else if (key == "constraints") {
            for (const Token& tok : tokenize(value)) {
                if (tok.text == "no_literals")
                    q.no_literals = true;
                else
                    throw Error("The constraint '" + tok.text + "' is not known.");
            }
        } else {
            throw Error("The quiz line '" + key + "' is not known.");
        }
    }

    if (!saw_kind) throw Error("The quiz does not say whether it is forward or inverse.");
    if (q.kind == QuizKind::Forward) {
        if (!saw_program) throw Error("A forward quiz needs a program line.");
        if (saw_target) throw Error("A forward quiz hides the result; it cannot have a target.");
    } else {
        if (!saw_target) throw Error("An inverse quiz needs a target line.");
        if (saw_program) throw Error("An inverse quiz hides the program; it cannot have one.");
        if (q.alphabet.empty()) throw Error("An inverse quiz needs a nonempty alphabet.");
        if (q.max_len <= 0) throw Error("An inverse quiz needs max-len of at least one.");
    }
    return q;
}

// --- checking -----------------------------------------------------------

namespace detail {

// Runs a candidate program and reports whether it maps the initial stack
// to the target exactly. Errors, step-budget exhaustion and unfinished
// lists all count as failure.
inline bool candidate_reaches(const Machine& base, const ValueList& initial,
                              const std::vector<Token>& program, const ValueList& target,
                              long long budget, long long& steps_out)
{
    Machine m = base;
    m.out = nullptr;
    m.stack = initial;
    m.step_limit = budget;
    m.input.assign(program.begin(), program.end());
    RunOutcome r = m.run();
    steps_out += m.step_count;
    return r.ok && !m.list_open() && equal(m.stack, target);
}

inline RunOutcome play(const Machine& base, const ValueList& initial,
                       const std::vector<Token>& program, Machine& out)
{
    out = base;
    out.out = nullptr;
    out.stack = initial;
    out.input.assign(program.begin(), program.end());
    return out.run();
}

} // namespace detail

// Plays a forward quiz and compares the final stack with the submitted
// answer. A failing program is its own verdict, distinct from a wrong
// answer.
inline Verdict check_forward(const Quiz& q, const ValueList& answer, const Machine& base)
{
    Machine m;
    RunOutcome r = detail::play(base, q.initial_stack, q.program, m);
    if (!r.ok || m.list_open()) return Verdict::ProgramFails;
    return equal(m.stack, answer) ? Verdict::Correct : Verdict::Incorrect;
}

// Checks a submitted program against an inverse quiz's target stack.
inline Verdict check_inverse(const Quiz& q, const std::vector<Token>& answer,
                             const Machine& base)
{
    Machine m;
    RunOutcome r = detail::play(base, q.initial_stack, answer, m);
    if (!r.ok || m.list_open()) return Verdict::ProgramFails;
    return equal(m.stack, q.target_stack) ? Verdict::Correct : Verdict::Incorrect;
}

// --- solving ------------------------------------------------------------

struct SolveOptions {
    long long step_budget = kCandidateStepBudget;
    unsigned workers = 1; // candidate ranges are independent machines
};

// Exhaustive search over token sequences, shortest first, in alphabet
// order within a length. Every returned program verifies by execution.
inline SolutionSet solve_inverse(const Quiz& q, const Machine& base,
                                 const SolveOptions& opt = {})
{
    std::vector<Token> symbols;
    for (const std::string& name : q.alphabet) {
        std::vector<Token> toks = tokenize(name);
        if (toks.size() != 1)
            throw Error("The alphabet entry '" + name + "' is not a single token.");
        const Token& tok = toks.front();
        bool literal = tok.kind == TokenKind::IntLit || tok.kind == TokenKind::BoolLit
                       || tok.kind == TokenKind::StrLit || tok.kind == TokenKind::LBracket
                       || tok.kind == TokenKind::RBracket;
        if (q.no_literals && literal) continue;
        symbols.push_back(tok);
    }
    if (symbols.empty())
        throw Error("The alphabet has no usable tokens left to search with.");

    const unsigned long long radix = symbols.size();
    SolutionSet found;

    for (int len = 0; len <= q.max_len; ++len) {
        unsigned long long total = 1;
        bool overflow = false;
        for (int k = 0; k < len; ++k) {
            if (total > (1ull << 62) / radix) {
                overflow = true;
                break;
            }
            total *= radix;
        }
        if (overflow)
            throw Error("The search space is too large to enumerate.");

        auto run_range = [&](unsigned long long begin, unsigned long long end,
                             std::vector<unsigned long long>& hits, SolutionSet::Stats& stats) {
            std::vector<Token> candidate(len);
            for (unsigned long long index = begin; index < end; ++index) {
                unsigned long long rest = index;
                for (int p = len - 1; p >= 0; --p) {
                    candidate[p] = symbols[rest % radix];
                    rest /= radix;
                }
                ++stats.candidates;
                if (detail::candidate_reaches(base, q.initial_stack, candidate, q.target_stack,
                                              opt.step_budget, stats.steps))
                    hits.push_back(index);
            }
        };

        std::vector<unsigned long long> hits;
        if (opt.workers <= 1 || total < 64) {
            run_range(0, total, hits, found.stats);
        } else {
            unsigned n = opt.workers;
            std::vector<std::vector<unsigned long long>> worker_hits(n);
            std::vector<SolutionSet::Stats> worker_stats(n);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < n; ++w) {
                unsigned long long begin = total * w / n;
                unsigned long long end = total * (w + 1) / n;
                pool.emplace_back(run_range, begin, end, std::ref(worker_hits[w]),
                                  std::ref(worker_stats[w]));
            }
            for (std::thread& t : pool)
                t.join();
            for (unsigned w = 0; w < n; ++w) {
                hits.insert(hits.end(), worker_hits[w].begin(), worker_hits[w].end());
                found.stats.candidates += worker_stats[w].candidates;
                found.stats.steps += worker_stats[w].steps;
            }
            std::sort(hits.begin(), hits.end());
        }

        for (unsigned long long index : hits) {
            std::vector<std::string> program(len);
            unsigned long long rest = index;
            for (int p = len - 1; p >= 0; --p) {
                program[p] = symbols[rest % radix].text;
                rest /= radix;
            }
            found.programs.push_back(std::move(program));
        }
    }
    return found;
}

// --- hole traces --------------------------------------------------------

struct Hole {
    enum class Kind { StackAtStep, ProgramSegment };
    Kind kind = Kind::StackAtStep;
    size_t step = 0;            // StackAtStep: which snapshot loses its stack
    size_t begin = 0, end = 0;  // ProgramSegment: token positions in the program
};

struct QuizSheet {
    std::string sheet;
    std::string key;
};

// Replaces one region of a trace with `?` and returns the sheet together
// with the answer key for it.
inline QuizSheet make_hole_trace(const Trace& t, const Hole& hole, const TraceOptions& opt = {})
{
    Trace masked = t;
    QuizSheet out;

    if (hole.kind == Hole::Kind::StackAtStep) {
        if (hole.step >= masked.steps.size())
            throw Error("The trace has no step " + std::to_string(hole.step) + " to hide.");
        TraceStep& s = masked.steps[hole.step];
        if (s.elided)
            throw Error("The hidden step is inside an omitted part of the trace.");
        out.key = s.stack_render.empty() ? (opt.ascii_box ? "#" : "□") : s.stack_render;
        s.stack_render = "?";
    } else {
        size_t program_len = t.steps.empty() ? 0 : t.steps.front().input_tokens.size();
        if (hole.begin >= hole.end || hole.end > program_len)
            throw Error("The program hole is outside the program.");
        std::vector<std::string> hidden;
        for (TraceStep& s : masked.steps) {
            size_t consumed = static_cast<size_t>(s.index);
            if (consumed < hole.end && s.input_tokens.size() != program_len - consumed)
                throw Error("The program hole spans steps where the input was rewritten.");
            bool changed = false;
            for (size_t p = hole.begin; p < hole.end; ++p) {
                if (p < consumed) continue;
                size_t at = p - consumed;
                if (consumed == 0 && hidden.size() < hole.end - hole.begin)
                    hidden.push_back(s.input_tokens[at]);
                s.input_tokens[at] = "?";
                changed = true;
            }
            if (changed) {
                s.input_render.clear();
                for (const std::string& text : s.input_tokens) {
                    if (!s.input_render.empty()) s.input_render.push_back(' ');
                    s.input_render += text;
                }
            }
        }
        for (const std::string& text : hidden) {
            if (!out.key.empty()) out.key.push_back(' ');
            out.key += text;
        }
    }

    out.sheet = emit_text(masked, opt);
    return out;
}

} // namespace concat
