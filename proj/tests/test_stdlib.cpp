#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace concat;
using testsup::run_stack;
using testsup::stdlib_machine;

namespace {

const std::vector<std::string>& library_names()
{
    static const std::vector<std::string> names = {
        "->",   "any?",      "ddip",   "ddrop",    "dec",      "dip",     "drop4",
        "duco", "even?",     "factorial", "factorial2", "filter", "first", "fix",
        "fold", "ifte",      "inc",    "map",      "map2",     "odd?",    "over",
        "pack", "pair",      "quote",  "range",    "rec-fold", "rec-map", "rec-while",
        "remove", "rjoin",   "rjoin-if", "run",    "rund",     "sifte",   "sim",
        "square", "sum",     "tdip",   "tdrop",    "times",    "while",   "y",
        "zero?", "|"};
    return names;
}

} // namespace

TEST_CASE("every library token exists after loading, with printable source")
{
    const Machine& m = stdlib_machine();
    for (const std::string& name : library_names()) {
        INFO(name);
        auto it = m.dict.find(name);
        REQUIRE(it != m.dict.end());
        CHECK(it->second.kind == Definition::Kind::Library);
        CHECK_FALSE(it->second.body.empty());
        CHECK_FALSE(it->second.source_text.empty());

        Machine probe = m;
        std::ostringstream out;
        probe.out = &out;
        REQUIRE(probe.eval(quote_str(name) + " .src").ok);
        CHECK(out.str() == it->second.source_text + "\n");
    }
}

TEST_CASE("the embedded library matches the shipped file byte for byte")
{
    std::string file = testsup::slurp(testsup::source_dir() + "/resources/stdlib.concat");
    REQUIRE_FALSE(file.empty());
    CHECK("\n" + file == std::string(kStdlibSource));
}

TEST_CASE("dip runs a program under the top value")
{
    CHECK(run_stack("2 3 4 [ + ] dip") == "5 4");
    CHECK(run_stack("1 [ ] dip") == "1");
    CHECK(run_stack("1 2 3 [ drop ] dip") == "1 3");
    const Machine& m = stdlib_machine();
    CHECK(m.dict.at("dip").source_text == "[ swap rjoin i ]");
}

TEST_CASE("deep dips and drops")
{
    CHECK(run_stack("1 2 3 4 [ + ] ddip") == "3 3 4");
    CHECK(run_stack("1 2 3 4 [ inc ] tdip") == "2 2 3 4");
    CHECK(run_stack("1 2 3 ddrop") == "1");
    CHECK(run_stack("1 2 3 tdrop") == "");
    CHECK(run_stack("9 8 7 6 5 drop4") == "9");
    CHECK(run_stack("1 2 over") == "1 2 1");
}

TEST_CASE("small arithmetic helpers")
{
    CHECK(run_stack("41 inc") == "42");
    CHECK(run_stack("43 dec") == "42");
    CHECK(run_stack("7 square") == "49");
    CHECK(run_stack("0 zero?") == "true");
    CHECK(run_stack("1 zero?") == "false");
    CHECK(run_stack("4 even?") == "true");
    CHECK(run_stack("5 even?") == "false");
    CHECK(run_stack("-3 odd?") == "true");
}

TEST_CASE("quoting helpers")
{
    CHECK(run_stack("1 quote") == "[ 1 ]");
    CHECK(run_stack("1 2 pair") == "[ 1 2 ]");
    CHECK(run_stack("[ 1 ] [ 2 + ] |") == "[ 1 2 + ]");
    CHECK(run_stack("[ 1 2 + ] run") == "3");
    CHECK(run_stack("3 [ inc ] rund") == "3 4");
    CHECK(run_stack("1 2 3 3 pack") == "[ 1 2 3 ]");
    CHECK(run_stack("1 2 3 0 pack") == "1 2 3 [ ]");
    CHECK(run_stack("1 2 -1 pack") == "1 2 [ ]");
    CHECK(run_stack("[ 1 ] 2 true rjoin-if") == "[ 1 2 ]");
    CHECK(run_stack("[ 1 ] 2 false rjoin-if") == "[ 1 ]");
}

TEST_CASE("ifte runs the condition in place")
{
    CHECK(run_stack("5 [ dup zero? ] [ drop 1 ] [ dup dec ] ifte") == "5 4");
    CHECK(run_stack("0 [ dup zero? ] [ drop 1 ] [ dup dec ] ifte") == "1");
}

TEST_CASE("sifte restores the stack after the condition")
{
    CHECK(run_stack("5 [ zero? ] [ 10 ] [ 20 ] sifte") == "5 20");
    CHECK(run_stack("0 [ zero? ] [ 10 ] [ 20 ] sifte") == "0 10");
    // the condition may mangle its snapshot freely
    CHECK(run_stack("5 [ 10 + zero? ] [ 1 ] [ 2 ] sifte") == "5 2");
    CHECK(run_stack("1 2 [ drop drop true ] [ stack-size ] [ drop ] sifte") == "1 2 2");
}

TEST_CASE("self application")
{
    CHECK(run_stack("[ 1 2 + ] duco") == "[ [ 1 2 + ] 1 2 + ]");
    CHECK(run_stack("[ count ] duco i") == "1");
    CHECK(run_stack("[ [ 1 2 + ] count ] i") == "3");
}

TEST_CASE("anonymous recursion through y")
{
    CHECK(run_stack("[ drop 7 ] y") == "7");
    std::string body = "[ [ over zero? ] [ drop drop 1 ] [ [ dup dec ] dip i * ] ifte ]";
    CHECK(run_stack("5 " + body + " y") == "120");
    for (int n = 0; n <= 10; ++n) {
        std::string named = run_stack(std::to_string(n) + " factorial");
        CHECK(run_stack(std::to_string(n) + " " + body + " y") == named);
        CHECK(run_stack(std::to_string(n) + " " + body + " fix") == named);
    }
}

TEST_CASE("factorial matches its iterative twin")
{
    CHECK(run_stack("0 factorial") == "1");
    CHECK(run_stack("5 factorial") == "120");
    CHECK(run_stack("20 factorial") == "2432902008176640000");
    CHECK(run_stack("25 factorial 25 factorial2 =") == "true");
    for (int n = 0; n <= 10; ++n)
        CHECK(run_stack(std::to_string(n) + " factorial " + std::to_string(n)
                        + " factorial2 =")
              == "true");
}

TEST_CASE("map transforms each element on its own little stack")
{
    CHECK(run_stack("[ 1 2 3 ] [ dup * ] map") == "[ 1 4 9 ]");
    CHECK(run_stack("[ ] [ inc ] map") == "[ ]");
    CHECK(run_stack("7 [ 1 2 ] [ inc ] map") == "7 [ 2 3 ]");
    // a program that digs deeper than its element only sees the element
    CHECK(run_stack("7 [ 1 ] [ stack count ] map") == "7 [ 1 ]");
    // leaving more or less than one value is an error
    CHECK(run_stack("[ 1 ] [ dup ] map").substr(0, 5) == "ERROR");
    CHECK(run_stack("[ 1 ] [ drop ] map").substr(0, 5) == "ERROR");
}

TEST_CASE("fold reduces left to right")
{
    CHECK(run_stack("[ 1 2 3 ] 0 [ + ] fold") == "6");
    CHECK(run_stack("[ ] 42 [ + ] fold") == "42");
    CHECK(run_stack("[ 1 2 3 ] 0 [ - ] fold") == "-6"); // ((0-1)-2)-3
    CHECK(run_stack("[ 1 2 3 ] sum") == "6");
    CHECK(run_stack("[ ] sum") == "0");
}

TEST_CASE("filter, remove and any?")
{
    CHECK(run_stack("[ 1 2 3 4 ] [ even? ] filter") == "[ 2 4 ]");
    CHECK(run_stack("[ 1 2 3 4 ] [ even? ] remove") == "[ 1 3 ]");
    CHECK(run_stack("[ ] [ even? ] filter") == "[ ]");
    CHECK(run_stack("[ 1 2 3 ] [ 2 = ] any?") == "true");
    CHECK(run_stack("[ 1 3 ] [ 2 = ] any?") == "false");
    CHECK(run_stack("[ ] [ 2 = ] any?") == "false");
}

TEST_CASE("map2 walks two lists in step")
{
    CHECK(run_stack("[ 1 2 3 ] [ 10 20 30 ] [ + ] map2") == "[ 11 22 33 ]");
    CHECK(run_stack("[ 1 2 3 ] [ 10 ] [ * ] map2") == "[ 10 ]");
    CHECK(run_stack("[ ] [ 1 2 ] [ + ] map2") == "[ ]");
}

TEST_CASE("first and range")
{
    CHECK(run_stack("[ 7 8 9 ] first") == "7");
    CHECK(run_stack("4 range") == "[ 0 1 2 3 ]");
    CHECK(run_stack("0 range") == "[ ]");
    CHECK(run_stack("-3 range") == "[ ]");
}

TEST_CASE("loops")
{
    CHECK(run_stack("0 5 [ inc ] times") == "5");
    CHECK(run_stack("0 -2 [ inc ] times") == "0");
    CHECK(run_stack("10 [ dup 0 < not ] [ 3 - ] while") == "-2");
    CHECK(run_stack("10 [ dup 0 < not ] [ 3 - ] rec-while") == "-2");
    CHECK(run_stack("5 [ false ] [ inc ] while") == "5");
}

TEST_CASE("sim runs a quotation on a snapshot")
{
    CHECK(run_stack("1 2 [ + ] sim") == "1 2 3");
    CHECK(run_stack("1 2 [ drop drop 9 ] sim") == "1 2 9");
}

TEST_CASE("pattern reordering")
{
    CHECK(run_stack("1 2 [ 0 1 ] ->") == "2 1");      // swap
    CHECK(run_stack("1 [ 0 0 ] ->") == "1 1");        // dup
    CHECK(run_stack("1 2 3 [ 0 2 1 ] ->") == "3 1 2"); // rollup
    CHECK(run_stack("1 2 3 [ ] ->") == "1 2 3");
    CHECK(run_stack("1 2 [ 1 ] ->") == "1 2");         // drop the old top, keep the second
}

TEST_CASE("recursive and iterative variants agree on random inputs")
{
    std::mt19937 rng(20260515);
    static const char* unary[] = {"[ dup * ]", "[ inc ]", "[ 1 - ]", "[ 2 * ]"};
    static const char* binary[] = {"[ + ]", "[ * ]", "[ - ]"};
    for (int round = 0; round < 60; ++round) {
        std::string list = "[";
        int n = static_cast<int>(rng() % 9);
        for (int k = 0; k < n; ++k)
            list += " " + std::to_string(static_cast<int>(rng() % 19) - 9);
        list += n ? " ]" : " ]";
        std::string p = unary[rng() % 4];
        std::string f = binary[rng() % 3];
        std::string init = std::to_string(static_cast<int>(rng() % 5));

        CHECK(run_stack(list + " " + p + " map " + list + " " + p + " rec-map =") == "true");
        CHECK(run_stack(list + " " + init + " " + f + " fold " + list + " " + init + " " + f
                        + " rec-fold =")
              == "true");
    }
    for (int round = 0; round < 20; ++round) {
        std::string seed = std::to_string(static_cast<int>(rng() % 30));
        std::string cond = "[ dup 0 < not ]";
        std::string body = "[ " + std::to_string(2 + static_cast<int>(rng() % 3)) + " - ]";
        CHECK(run_stack(seed + " " + cond + " " + body + " while " + seed + " " + cond + " "
                        + body + " rec-while =")
              == "true");
    }
}

TEST_CASE("map fusion at desk scale")
{
    std::mt19937 rng(4);
    static const char* progs[] = {"dup *", "inc", "1 -", "2 *"};
    for (int round = 0; round < 40; ++round) {
        std::string list = "[";
        for (int k = static_cast<int>(rng() % 6); k-- > 0;)
            list += " " + std::to_string(static_cast<int>(rng() % 19) - 9);
        list += " ]";
        std::string p = progs[rng() % 4], q = progs[rng() % 4];
        CHECK(run_stack(list + " [ " + p + " ] map [ " + q + " ] map " + list + " [ " + p + " "
                        + q + " ] map =")
              == "true");
    }
}

TEST_CASE("sum agrees with folding addition")
{
    std::mt19937 rng(5);
    for (int round = 0; round < 40; ++round) {
        std::string list = "[";
        for (int k = static_cast<int>(rng() % 8); k-- > 0;)
            list += " " + std::to_string(static_cast<int>(rng() % 199) - 99);
        list += " ]";
        CHECK(run_stack(list + " sum " + list + " 0 [ + ] fold =") == "true");
    }
}

TEST_CASE("re-entering every definition from its own source changes nothing")
{
    Machine m = stdlib_machine();
    // redefine every library token from its printed source, then re-check
    // a slice of behavior on the rebuilt machine
    for (const std::string& name : library_names()) {
        std::string body = m.dict.at(name).source_text;
        Machine scratch = m;
        std::ostringstream out;
        scratch.out = &out;
        REQUIRE(scratch.eval(quote_str(name) + " " + body + " .def").ok);
        CHECK(scratch.dict.at(name).source_text == body);
        m = scratch;
    }
    auto with = [&m](const std::string& prog) {
        Machine probe = m;
        REQUIRE(probe.eval(prog).ok);
        return probe.render_stack();
    };
    CHECK(with("5 factorial") == "120");
    CHECK(with("[ 1 2 3 ] [ dup * ] map") == "[ 1 4 9 ]");
    CHECK(with("[ 1 2 3 4 ] [ even? ] filter") == "[ 2 4 ]");
    CHECK(with("2 3 4 [ + ] dip") == "5 4");
    CHECK(with("10 [ dup 0 < not ] [ 3 - ] while") == "-2");
}

TEST_CASE("the euler example stays within the default step budget")
{
    Machine m = stdlib_machine();
    REQUIRE(m.eval("1000 range [ dup 3 mod 0 = swap 5 mod 0 = or ] filter sum").ok);
    CHECK(m.render_stack() == "233168");
    CHECK(m.step_count < kDefaultStepLimit);
}
