// The con-cat command line: an interactive session by default, plus
// subcommands to run files, write execution traces and work with quizzes.
// Exit codes are stable for grading scripts: 0 success or correct answer,
// 1 failure or wrong answer, 2 usage mistakes.

#include "concat/concat.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream file(path);
    if (!file) throw concat::Error("The file '" + path + "' could not be opened.");
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream file(path);
    if (!file) throw concat::Error("The file '" + path + "' could not be written.");
    file << content;
}

std::string position_prefix(const concat::Machine& m, const concat::RunOutcome& r)
{
    if (r.source < 0 || r.source >= static_cast<int>(m.sources.size()) || r.line <= 0)
        return {};
    return m.sources[r.source].name + ":" + std::to_string(r.line) + ":"
           + std::to_string(r.col) + ": ";
}

int run_file_cmd(const concat::SessionConfig& cfg, const std::string& path)
{
    std::string text = read_file(path);
    concat::Machine m = concat::make_machine(cfg);
    m.out = &std::cout;
    int sid = m.add_source(path, fs::path(path).parent_path().string());
    concat::RunOutcome r = m.eval(text, sid);
    if (!r.ok) {
        std::cerr << position_prefix(m, r) << r.error << "\n";
        return 1;
    }
    std::cout << concat::format_stack(m);
    return 0;
}

int trace_cmd(const concat::SessionConfig& cfg, const std::string& path,
              const std::string& eval_text, std::string out_path,
              const std::string& typst_path)
{
    std::string program;
    if (!eval_text.empty()) {
        program = eval_text;
        if (out_path.empty()) out_path = "eval.trace.txt";
    } else {
        program = read_file(path);
        if (out_path.empty())
            out_path = (fs::path(path).parent_path() / fs::path(path).stem()).string()
                       + ".trace.txt";
    }

    concat::Machine base = concat::make_machine(cfg);
    concat::Trace trace = concat::record_program(base, program, {}, cfg.depth_limit);
    concat::TraceOptions opt{cfg.ascii};
    std::string text = concat::emit_text(trace, opt);
    write_file(out_path, text);
    std::cout << text;
    if (!typst_path.empty()) write_file(typst_path, concat::emit_typst(trace, opt));
    return 0;
}

int quiz_check_cmd(const concat::SessionConfig& cfg, const std::string& path,
                   const std::string& answer)
{
    concat::Quiz quiz = concat::parse_quiz_text(read_file(path));
    concat::Machine base = concat::make_machine(cfg);
    concat::Verdict verdict;
    if (quiz.kind == concat::QuizKind::Forward)
        verdict = concat::check_forward(quiz, concat::parse_values(answer), base);
    else
        verdict = concat::check_inverse(quiz, concat::tokenize(answer), base);
    switch (verdict) {
    case concat::Verdict::Correct:
        std::cout << "correct\n";
        return 0;
    case concat::Verdict::Incorrect:
        std::cout << "incorrect\n";
        return 1;
    case concat::Verdict::ProgramFails:
        std::cout << "the program itself fails\n";
        return 1;
    }
    return 1;
}

int quiz_solve_cmd(const concat::SessionConfig& cfg, const std::string& path, bool stats,
                   unsigned workers)
{
    concat::Quiz quiz = concat::parse_quiz_text(read_file(path));
    if (quiz.kind != concat::QuizKind::Inverse)
        throw concat::Error("Only inverse quizzes can be solved by search.");
    concat::Machine base = concat::make_machine(cfg);
    concat::SolveOptions opt;
    opt.workers = workers;
    concat::SolutionSet found = concat::solve_inverse(quiz, base, opt);
    for (const auto& program : found.programs) {
        std::string line;
        for (const std::string& tok : program) {
            if (!line.empty()) line.push_back(' ');
            line += tok;
        }
        std::cout << line << "\n";
    }
    if (stats)
        std::cerr << "candidates: " << found.stats.candidates
                  << ", steps: " << found.stats.steps << "\n";
    return 0;
}

int quiz_sheet_cmd(const concat::SessionConfig& cfg, const std::string& path,
                   const std::string& out_path, const std::string& key_path)
{
    concat::Quiz quiz = concat::parse_quiz_text(read_file(path));
    concat::Machine base = concat::make_machine(cfg);
    concat::TraceOptions opt{cfg.ascii};
    concat::QuizSheet sheet;

    if (quiz.kind == concat::QuizKind::Forward) {
        std::string program = concat::join_tokens(quiz.program);
        // Sheets keep library expansions collapsed unless asked otherwise.
        long long depth = cfg.depth_limit < 0 ? 0 : cfg.depth_limit;
        concat::Trace trace =
            concat::record_program(base, program, quiz.initial_stack, depth);
        concat::Hole hole;
        hole.kind = concat::Hole::Kind::StackAtStep;
        hole.step = trace.steps.size() - 1;
        sheet = concat::make_hole_trace(trace, hole, opt);
    } else {
        concat::SolutionSet found = concat::solve_inverse(quiz, base);
        if (found.programs.empty())
            throw concat::Error("The quiz has no solution within its limits.");
        std::string program;
        for (const std::string& tok : found.programs.front()) {
            if (!program.empty()) program.push_back(' ');
            program += tok;
        }
        concat::Trace trace = concat::record_program(base, program, quiz.initial_stack, -1);
        // Hide everything between the first and last step so only the
        // puzzle's endpoints show.
        for (size_t i = 1; i + 1 < trace.steps.size(); ++i)
            trace.steps[i].elided = true;
        trace.elisions.clear();
        concat::detail::collect_elisions(trace);
        concat::Hole hole;
        hole.kind = concat::Hole::Kind::ProgramSegment;
        hole.begin = 0;
        hole.end = found.programs.front().size();
        sheet = concat::make_hole_trace(trace, hole, opt);
        std::string key;
        for (const auto& solution : found.programs) {
            std::string line;
            for (const std::string& tok : solution) {
                if (!line.empty()) line.push_back(' ');
                line += tok;
            }
            key += line + "\n";
        }
        sheet.key = key;
    }

    if (out_path.empty())
        std::cout << sheet.sheet;
    else
        write_file(out_path, sheet.sheet);
    if (!key_path.empty())
        write_file(key_path, sheet.key.back() == '\n' ? sheet.key : sheet.key + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"con-cat: a concatenative functional language runtime"};
    app.require_subcommand(0, 1);

    concat::SessionConfig cfg;
    bool no_stdlib = false;
    if (const char* env = std::getenv("CONCAT_STEP_LIMIT")) cfg.step_limit = std::atoll(env);
    if (const char* env = std::getenv("CONCAT_STDLIB")) cfg.stdlib_path = env;

    app.add_flag("--no-stdlib", no_stdlib, "start with the kernel only");
    app.add_option("--stdlib", cfg.stdlib_path, "load the library from this file");
    app.add_option("--step-limit", cfg.step_limit, "evaluation step budget");
    app.add_option("--depth", cfg.depth_limit,
                   "library expansion depth shown in traces (-1 = all)");
    app.add_flag("--ascii", cfg.ascii, "plain ASCII output (# for the empty stack)");

    auto* run = app.add_subcommand("run", "run a source file and print the stack");
    std::string run_path;
    run->add_option("file", run_path, "a .concat source file")->required();

    auto* trace = app.add_subcommand("trace", "write an execution trace");
    std::string trace_path, trace_eval, trace_out, trace_typst;
    trace->add_option("file", trace_path, "a .concat source file");
    trace->add_option("--eval", trace_eval, "trace this program text instead of a file");
    trace->add_option("--out", trace_out, "trace file to write (.trace.txt)");
    trace->add_option("--typst", trace_typst, "also write Typst markup here");

    auto* quiz = app.add_subcommand("quiz", "check, solve or typeset quizzes");
    quiz->require_subcommand(1);
    auto* check = quiz->add_subcommand("check", "judge a submitted answer");
    std::string check_path, check_answer;
    check->add_option("file", check_path)->required();
    check->add_option("answer", check_answer, "final stack (forward) or program (inverse)")
        ->required();
    auto* solve = quiz->add_subcommand("solve", "enumerate all solutions");
    std::string solve_path;
    bool solve_stats = false;
    unsigned solve_workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    solve->add_option("file", solve_path)->required();
    solve->add_flag("--stats", solve_stats, "print search statistics to stderr");
    solve->add_option("--workers", solve_workers, "parallel search workers");
    auto* sheet = quiz->add_subcommand("sheet", "emit a hole-trace puzzle sheet");
    std::string sheet_path, sheet_out, sheet_key;
    sheet->add_option("file", sheet_path)->required();
    sheet->add_option("--out", sheet_out, "write the sheet here instead of stdout");
    sheet->add_option("--key", sheet_key, "write the answer key here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.use_stdlib = !no_stdlib;

    try {
        if (run->parsed()) return run_file_cmd(cfg, run_path);
        if (trace->parsed()) {
            if (trace_path.empty() && trace_eval.empty())
                throw concat::Error("The trace command needs a file or an --eval program.");
            return trace_cmd(cfg, trace_path, trace_eval, trace_out, trace_typst);
        }
        if (quiz->parsed()) {
            if (check->parsed()) return quiz_check_cmd(cfg, check_path, check_answer);
            if (solve->parsed())
                return quiz_solve_cmd(cfg, solve_path, solve_stats, solve_workers);
            if (sheet->parsed()) return quiz_sheet_cmd(cfg, sheet_path, sheet_out, sheet_key);
        }
        concat::Session session(cfg);
        return session.repl(std::cin, std::cout);
    } catch (const concat::Error& e) {
        std::cerr << e.sentence << "\n";
        return 1;
    }
}
