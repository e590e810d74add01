// Shared helpers for the test suites.
#pragma once

#include "concat/concat.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testsup {

using namespace concat;

inline const Machine& stdlib_machine()
{
    static const Machine machine = [] {
        Machine m;
        load_stdlib(m);
        m.step_count = 0;
        return m;
    }();
    return machine;
}

// Runs a program on a fresh machine and returns the rendered stack, or an
// ERROR-prefixed sentence.
inline std::string run_stack(const std::string& program, bool with_stdlib = true)
{
    Machine m = with_stdlib ? stdlib_machine() : Machine{};
    RunOutcome r = m.eval(program);
    if (!r.ok) return "ERROR: " + r.error;
    return m.render_stack();
}

inline std::string run_error(const std::string& program, bool with_stdlib = true)
{
    Machine m = with_stdlib ? stdlib_machine() : Machine{};
    RunOutcome r = m.eval(program);
    return r.ok ? std::string{} : r.error;
}

inline std::string source_dir()
{
    return CONCAT_SOURCE_DIR;
}

inline std::string slurp(const std::string& path)
{
    std::ifstream file(path);
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

// Random values to a bounded depth. Word values only ever appear inside
// lists, so the rendered text reads back as the same value.
inline Value random_value(std::mt19937& rng, int depth, bool top_level = true)
{
    std::uniform_int_distribution<int> tag_pick(0, top_level ? 3 : 4);
    int tag = tag_pick(rng);
    if (depth <= 0 && tag == 3) tag = 0;
    switch (tag) {
    case 0: {
        std::uniform_int_distribution<int> n(-999, 999);
        return Value::integer(n(rng));
    }
    case 1:
        return Value::boolean(rng() % 2 == 0);
    case 2: {
        static const char* atoms[] = {"", "inc", "a b", "quo\"te", "back\\slash", "x y z"};
        return Value::str(atoms[rng() % 6]);
    }
    case 4: {
        static const char* words[] = {"dup", "+", "swap", "w0", "not-a-thing"};
        return Value::word(words[rng() % 5]);
    }
    default: {
        std::uniform_int_distribution<int> len(0, 3);
        ValueList items;
        int n = len(rng);
        for (int k = 0; k < n; ++k)
            items.push_back(random_value(rng, depth - 1, false));
        return Value::list(std::move(items));
    }
    }
}

} // namespace testsup
