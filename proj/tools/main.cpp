// proxima command-line tool. Exit codes:
//   0  every requested check holds (or is vacuous) / the solver converged / oracle agrees
//   1  a check fails, the solver did not converge, or a regression failed
//   2  invalid invocation
//   3  input file not found or unreadable
//   4  expression parse error or problem-file schema violation
//   5  evaluation error (division by zero, no active mapping branch, ...)

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "proxima/checkers.hpp"
#include "proxima/corpus.hpp"
#include "proxima/error.hpp"
#include "proxima/oracle.hpp"
#include "proxima/problem_file.hpp"
#include "proxima/proximity.hpp"
#include "proxima/report.hpp"
#include "proxima/solver.hpp"

namespace {

using namespace proxima;
namespace fs = std::filesystem;

enum Exit : int { ok = 0, failed = 1, usage = 2, no_file = 3, bad_input = 4, eval_error = 5 };

struct Config {
    std::string builtin;
    std::string file;
    std::vector<std::string> defs;
    std::optional<double> eps_eq;
    std::optional<double> eps_range;
    double conv_tol = 1e-9;
    std::size_t max_iters = 10000;
    std::string format = "text";
    std::string trace_path;
    unsigned threads = 1;
    std::string start;
    std::string export_dir;
    std::string output;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<std::string> definition_names() {
    std::vector<std::string> out;
    for (auto d : all_definitions()) out.emplace_back(definition_name(d));
    return out;
}

void add_source(CLI::App& cmd, Config& cfg) {
    auto* b = cmd.add_option("--builtin", cfg.builtin, "Built-in instance name")
                  ->check(CLI::IsMember(builtin_names()));
    auto* f = cmd.add_option("--file", cfg.file, "Problem-definition file (YAML)");
    b->excludes(f);
}

void add_tolerances(CLI::App& cmd, Config& cfg) {
    cmd.add_option("--eps-eq", cfg.eps_eq, "Equality tolerance (default: from the instance, 1e-9)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--eps-range", cfg.eps_range, "Range-inclusion tolerance (default: eps-eq)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--threads", cfg.threads, "Worker threads for pair scans; 0 = hardware concurrency")
        ->capture_default_str();
}

void add_format(CLI::App& cmd, Config& cfg) {
    cmd.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
}

void add_solver(CLI::App& cmd, Config& cfg) {
    cmd.add_option("--conv-tol", cfg.conv_tol, "Stop when |phi(x_n, x_n+1)| <= this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--max-iters", cfg.max_iters, "Iteration cap")->capture_default_str();
    cmd.add_option("--start", cfg.start, "Start point as comma-separated coordinates (default: first of re_phi)");
}

ProblemInstance load_instance(const Config& cfg) {
    if (cfg.builtin.empty() == cfg.file.empty()) throw UsageError("exactly one of --builtin or --file is required");
    ProblemInstance inst = cfg.builtin.empty() ? load_problem_file(cfg.file) : load_builtin(cfg.builtin).instance;
    if (cfg.eps_eq) inst.eps_eq = *cfg.eps_eq;
    if (cfg.eps_range) inst.eps_range = *cfg.eps_range;
    inst.validate();
    return inst;
}

ScanOptions scan_options(const Config& cfg) { return ScanOptions{cfg.threads}; }

SolverOptions solver_options(const Config& cfg) {
    SolverOptions o;
    o.conv_tol = cfg.conv_tol;
    o.max_iters = cfg.max_iters;
    o.scan = scan_options(cfg);
    return o;
}

std::optional<Point> parse_start(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<double> coords;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        std::string piece = text.substr(pos, comma - pos);
        const auto b = piece.find_first_not_of(' ');
        const auto e = piece.find_last_not_of(' ');
        piece = b == std::string::npos ? "" : piece.substr(b, e - b + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size())
            throw UsageError("--start: '" + piece + "' is not a number");
        coords.push_back(v);
        pos = comma + 1;
    }
    return Point(std::move(coords));
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path.string() + "'");
    out << content;
}

void emit_warnings(const ProblemInstance& inst, const Config& cfg) {
    if (cfg.format == "text") std::cerr << report::to_text(range_warnings(inst), 5);
}

int run_check(const Config& cfg) {
    std::vector<Definition> defs;
    for (const auto& name : cfg.defs) defs.push_back(parse_definition(name));
    const auto inst = load_instance(cfg);
    if (defs.empty()) {
        if (inst.mapping)
            defs = all_definitions();
        else
            defs = {Definition::p_property, Definition::phi_axioms};
    }
    emit_warnings(inst, cfg);

    bool any_fail = false;
    report::json reports = report::json::array();
    for (auto d : defs) {
        const auto r = proxima::run_check(d, inst, scan_options(cfg));
        any_fail = any_fail || r.verdict == Verdict::fails;
        if (cfg.format == "text")
            std::cout << report::to_text(r);
        else
            reports.push_back(report::to_json(r));
    }
    if (cfg.format == "structured")
        std::cout << report::dump(report::document(
            "check", inst.name, {{"reports", reports}, {"range_warnings", report::to_json(range_warnings(inst))}}));
    return any_fail ? failed : ok;
}

int run_solve(const Config& cfg) {
    const auto inst = load_instance(cfg);
    emit_warnings(inst, cfg);
    const auto trace = iterate(inst, parse_start(cfg.start), solver_options(cfg));
    if (!cfg.trace_path.empty()) write_file(cfg.trace_path, report::trace_csv(trace));
    if (cfg.format == "text")
        std::cout << report::to_text(trace);
    else
        std::cout << report::dump(report::document("solve", inst.name, report::to_json(trace)));
    return trace.status == IterationStatus::converged ? ok : failed;
}

int run_oracle(const Config& cfg) {
    const auto inst = load_instance(cfg);
    emit_warnings(inst, cfg);
    const auto r = oracle_vs_solver(inst, solver_options(cfg));
    if (!cfg.trace_path.empty()) write_file(cfg.trace_path, report::trace_csv(r.trace));
    if (cfg.format == "text")
        std::cout << report::to_text(r);
    else
        std::cout << report::dump(report::document("oracle", inst.name, report::to_json(r)));
    return r.agree ? ok : failed;
}

int run_corpus(const Config& cfg) {
    if (!cfg.file.empty()) throw UsageError("corpus runs built-in entries only; use --builtin to select one");
    std::vector<CorpusEntry> entries;
    if (cfg.builtin.empty())
        entries = builtin_corpus();
    else
        entries.push_back(load_builtin(cfg.builtin));
    if (!cfg.export_dir.empty()) {
        fs::create_directories(cfg.export_dir);
        for (const auto& e : entries) write_file(fs::path(cfg.export_dir) / (e.name + ".yaml"), export_problem(e.instance));
    }
    const auto summary = run_regressions(entries, scan_options(cfg));
    if (cfg.format == "text")
        std::cout << report::to_text(summary);
    else
        std::cout << report::dump(report::document("corpus", "builtin", report::to_json(summary)));
    return summary.all_passed() ? ok : failed;
}

int run_export(const Config& cfg) {
    const auto text = export_problem(load_builtin(cfg.builtin).instance);
    if (cfg.output.empty())
        std::cout << text;
    else
        write_file(cfg.output, text);
    return ok;
}

int run_validate(const Config& cfg) {
    const auto result = validate_file(cfg.file);
    if (result.ok()) {
        std::cout << cfg.file << ": ok (" << result.instance->name << ", |re| = " << result.instance->re.size()
                  << ", |omega| = " << result.instance->omega.size() << ")\n";
        return ok;
    }
    for (const auto& d : result.diagnostics) std::cerr << cfg.file << ":" << d.to_string() << "\n";
    return bad_input;
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Best proximity point checks, solver and oracle on finite instances"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Run contraction-class and hypothesis checks");
    add_source(*check, cfg);
    check->add_option("--def", cfg.defs, "Check to run (repeatable; default: all applicable)")
        ->check(CLI::IsMember(definition_names()));
    add_tolerances(*check, cfg);
    add_format(*check, cfg);

    auto* solve = app.add_subcommand("solve", "Run the proximal Picard iteration");
    add_source(*solve, cfg);
    add_tolerances(*solve, cfg);
    add_solver(*solve, cfg);
    add_format(*solve, cfg);
    solve->add_option("--trace", cfg.trace_path, "Write the per-step trace as CSV");

    auto* oracle = app.add_subcommand("oracle", "Compare the solver with the brute-force oracle");
    add_source(*oracle, cfg);
    add_tolerances(*oracle, cfg);
    add_solver(*oracle, cfg);
    add_format(*oracle, cfg);
    oracle->add_option("--trace", cfg.trace_path, "Write the solver trace as CSV");

    auto* corpus = app.add_subcommand("corpus", "Run the built-in regression corpus");
    add_source(*corpus, cfg);
    corpus->add_option("--threads", cfg.threads, "Worker threads; 0 = hardware concurrency")->capture_default_str();
    add_format(*corpus, cfg);
    corpus->add_option("--export-dir", cfg.export_dir, "Also write every entry as a problem file here");

    auto* exp = app.add_subcommand("export", "Print a built-in instance as a problem file");
    exp->add_option("--builtin", cfg.builtin, "Built-in instance name")
        ->required()
        ->check(CLI::IsMember(builtin_names()));
    exp->add_option("-o,--output", cfg.output, "Output path (default: stdout)");

    auto* validate = app.add_subcommand("validate", "Validate a problem file");
    validate->add_option("--file", cfg.file, "Problem-definition file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (check->parsed()) return run_check(cfg);
        if (solve->parsed()) return run_solve(cfg);
        if (oracle->parsed()) return run_oracle(cfg);
        if (corpus->parsed()) return run_corpus(cfg);
        if (exp->parsed()) return run_export(cfg);
        if (validate->parsed()) return run_validate(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const UnknownNameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return no_file;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return eval_error;
    }
    return usage;
}
