// An interactive session: the banner, the indexed stack display and the
// line loop. The CLI wraps this; tests drive it with string streams.
#pragma once

#include "concat/machine.hpp"
#include "concat/stdlib.hpp"
#include "concat/version.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace concat {

struct SessionConfig {
    bool use_stdlib = true;
    std::string stdlib_path;            // empty = the embedded library
    long long step_limit = kDefaultStepLimit;
    long long depth_limit = -1;
    bool ascii = false;
};

inline Machine make_machine(const SessionConfig& cfg)
{
    Machine m;
    m.step_limit = cfg.step_limit;
    m.depth_limit = cfg.depth_limit;
    if (cfg.use_stdlib) {
        if (cfg.stdlib_path.empty())
            load_stdlib(m);
        else
            load_stdlib_file(m, cfg.stdlib_path);
        m.step_count = 0; // library loading does not count against the program
    }
    return m;
}

// The stack as the prompt shows it: indexed from zero at the top, one
// value per line, or the words `empty stack`. A list still under
// construction appears as the top entry with its insertion arrow.
inline std::string format_stack(const Machine& m)
{
    if (m.stack.empty() && !m.list_open()) return "empty stack\n";
    std::string out;
    size_t index = 0;
    if (m.list_open()) {
        std::string open;
        for (const ValueList& frame : m.open_frames) {
            if (!open.empty()) open.push_back(' ');
            open.push_back('[');
            for (const Value& v : frame) {
                open.push_back(' ');
                open += render(v);
            }
        }
        open += " ->";
        out += std::to_string(index++) + ": " + open + "\n";
    }
    for (size_t i = m.stack.size(); i-- > 0;)
        out += std::to_string(index++) + ": " + render(m.stack[i]) + "\n";
    return out;
}

class Session {
public:
    explicit Session(const SessionConfig& cfg = {}) : config_(cfg), machine_(make_machine(cfg))
    {
    }

    Machine& machine() { return machine_; }
    const SessionConfig& config() const { return config_; }

    // Evaluates one line. Errors print their sentence and leave the stack
    // as it was before the failing token; the rest of the line is
    // dropped.
    void run_line(const std::string& line, std::ostream& out)
    {
        machine_.out = &out;
        RunOutcome r = machine_.eval(line);
        if (!r.ok) {
            machine_.input.clear();
            out << r.error << "\n";
        }
        machine_.out = nullptr;
    }

    // The Fig.-style loop: version line, the whole language, then the
    // stack after every input line.
    int repl(std::istream& in, std::ostream& out)
    {
        out << version_line() << "\n";
        out << machine_.banner();
        out << "\n" << format_stack(machine_);
        std::string line;
        while (!machine_.quit_requested && std::getline(in, line)) {
            run_line(line, out);
            if (machine_.quit_requested) break;
            out << "\n" << format_stack(machine_);
        }
        return 0;
    }

private:
    SessionConfig config_;
    Machine machine_;
};

} // namespace concat
