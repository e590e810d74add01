#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace concat;
using testsup::stdlib_machine;

namespace {

Trace trace_of(const std::string& program, long long depth = -1, bool with_stdlib = true)
{
    Machine base = with_stdlib ? stdlib_machine() : Machine{};
    return record_program(base, program, {}, depth);
}

// Pull the raw("...") cell texts back out of a Typst fragment.
std::vector<std::string> typst_cells(const std::string& fragment)
{
    std::vector<std::string> cells;
    size_t pos = 0;
    while ((pos = fragment.find("raw(\"", pos)) != std::string::npos) {
        pos += 5;
        std::string cell;
        while (pos < fragment.size()) {
            char c = fragment[pos];
            if (c == '\\' && pos + 1 < fragment.size()) {
                cell.push_back(fragment[pos + 1]);
                pos += 2;
                continue;
            }
            if (c == '"') break;
            cell.push_back(c);
            ++pos;
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

// The same cells as seen by emit_text: split each line at " | "; a dots or
// error line is a single cell.
std::vector<std::string> text_cells(const std::string& text)
{
    std::vector<std::string> cells;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        size_t bar = line.rfind(" |");
        if (line == "..." || line.rfind("! ", 0) == 0 || bar == std::string::npos) {
            cells.push_back(line);
        } else {
            cells.push_back(line.substr(0, bar));
            cells.push_back(bar + 3 <= line.size() ? line.substr(bar + 3) : "");
        }
    }
    return cells;
}

} // namespace

TEST_CASE("the 1 2 + trace matches its golden file byte for byte")
{
    std::string golden = testsup::slurp(testsup::source_dir()
                                        + "/tests/golden/trace_1_2_plus.txt");
    REQUIRE_FALSE(golden.empty());
    CHECK(emit_text(trace_of("1 2 +")) == golden);
    CHECK(emit_text(trace_of("1 2 +")) == emit_text(trace_of("1 2 +")));
}

TEST_CASE("a trace has one snapshot per step plus the start")
{
    Trace t = trace_of("1 2 3");
    REQUIRE(t.steps.size() == 4);
    CHECK(t.steps[0].stack_render.empty());
    CHECK(t.steps[0].input_render == "1 2 3");
    CHECK(t.steps[3].stack_render == "1 2 3");
    CHECK(t.steps[3].input_render.empty());
}

TEST_CASE("open lists draw the insertion arrow")
{
    std::string text = emit_text(trace_of("[ 1 2 ]"));
    CHECK(text.find("[ 1 -> | 2 ]\n") != std::string::npos);
    CHECK(text.find("[ -> | 1 2 ]\n") != std::string::npos);

    text = emit_text(trace_of("[ 1 [ 2 ] ]"));
    CHECK(text.find("[ 1 [ -> | 2 ] ]\n") != std::string::npos);
    CHECK(text.find("[ 1 [ 2 -> | ] ]\n") != std::string::npos);
    CHECK(text.find("[ 1 [ 2 ] -> | ]\n") != std::string::npos); // arrow moves outward
}

TEST_CASE("an empty trace line still shows the box")
{
    CHECK(emit_text(trace_of("")) == "□ |\n");
    TraceOptions ascii;
    ascii.ascii_box = true;
    CHECK(emit_text(trace_of(""), ascii) == "# |\n");
}

TEST_CASE("errors truncate the trace with a flagged step")
{
    Trace t = trace_of("dup", -1, false);
    REQUIRE(t.steps.size() == 2);
    CHECK(t.steps[1].error);
    std::string text = emit_text(t);
    CHECK(text == "□ | dup\n□ |\n! Cannot copy the top of an empty stack.\n");
}

TEST_CASE("expansion beyond the depth limit is elided")
{
    Trace shallow = trace_of("5 factorial", 0);
    std::string text = emit_text(shallow);
    CHECK(text.find("...\n") != std::string::npos);
    CHECK(text.rfind("120 |\n") == text.size() - 7); // the result stays visible
    CHECK(text.find("□ | 5 factorial\n") == 0);

    Trace full = trace_of("5 factorial", -1);
    CHECK(full.elisions.empty());

    // the visible steps of the shallow trace appear in the full trace in order
    std::vector<std::string> visible;
    for (const TraceStep& s : shallow.steps)
        if (!s.elided) visible.push_back(s.stack_render + "|" + s.input_render);
    size_t at = 0;
    for (const TraceStep& s : full.steps) {
        if (at < visible.size() && visible[at] == s.stack_render + "|" + s.input_render) ++at;
    }
    CHECK(at == visible.size());
}

TEST_CASE("elision ranges never cover the first or last step")
{
    Trace t = trace_of("5 factorial", 0);
    for (auto [first, last] : t.elisions) {
        CHECK(first > 0);
        CHECK(last < t.steps.size() - 1);
    }
}

TEST_CASE(".depth changes elision mid-run")
{
    Machine m = stdlib_machine();
    m.depth_limit = -1;
    m.feed("0 .depth 3 factorial");
    Trace t = record(m);
    bool any_elided = false;
    for (const TraceStep& s : t.steps)
        any_elided = any_elided || s.elided;
    CHECK(any_elided);
}

TEST_CASE("the Typst table mirrors the text emitter cell for cell")
{
    for (const char* program : {"1 2 +", "[ 1 2 ]", "5 factorial"}) {
        Trace t = trace_of(program, std::string(program) == "5 factorial" ? 0 : -1);
        CHECK(typst_cells(emit_typst(t)) == text_cells(emit_text(t)));
    }
}

TEST_CASE("a one-step trace makes exactly one table row")
{
    std::string fragment = emit_typst(trace_of(""));
    CHECK(typst_cells(fragment).size() == 2); // one row, two cells
    CHECK(fragment.find("table.cell") == std::string::npos);

    std::string elided = emit_typst(trace_of("5 factorial", 0));
    CHECK(elided.find("table.cell(colspan: 2, raw(\"...\"))") != std::string::npos);
}

TEST_CASE("recording does not disturb the machine's configuration")
{
    Machine base = stdlib_machine();
    Trace t = record_program(base, "1 2 +", {Value::integer(9)});
    CHECK(t.steps.front().stack_render == "9");
    CHECK(t.steps.back().stack_render == "9 3");
}
