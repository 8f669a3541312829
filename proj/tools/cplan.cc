#include "conformant/errors.h"
#include "conformant/generators.h"
#include "conformant/pddl.h"
#include "conformant/pipeline.h"
#include "conformant/report.h"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace std;
using namespace conformant;

namespace {
enum ExitCode {
    EXIT_OK = 0,
    EXIT_ERROR = 1,
    EXIT_NO_PLAN = 2,
    EXIT_BUDGET = 3
};

struct Options {
    string scheme = "ki:1";
    bool optimize = true;
    string caps;
    string budget;
    bool strengthened_mutex = false;
    int nondet_copies = 0;
    string export_pddl;
    string report;
};

string read_file(const string &path) {
    ifstream in(path);
    if (!in)
        throw InvalidParameters("cannot read " + path);
    ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const string &path, const string &text) {
    ofstream out(path);
    if (!out)
        throw InvalidParameters("cannot write " + path);
    out << text;
}

// "key=value,key=value"
map<string, string> parse_pairs(const string &text, const string &what) {
    map<string, string> result;
    stringstream ss(text);
    string item;
    while (getline(ss, item, ',')) {
        if (item.empty())
            continue;
        size_t eq = item.find('=');
        if (eq == string::npos)
            throw InvalidParameters("expected key=value in " + what + ": " + item);
        result[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return result;
}

PipelineConfig make_config(const Options &o) {
    PipelineConfig config;
    config.optimize = o.optimize;
    config.strengthened_mutex = o.strengthened_mutex;
    if (o.nondet_copies > 0)
        config.max_nondet_copies = o.nondet_copies;
    for (const auto &[key, value] : parse_pairs(o.caps, "--caps")) {
        size_t v = stoull(value);
        if (key == "states" || key == "initial-states")
            config.caps.initial_states = v;
        else if (key == "models")
            config.caps.models = v;
        else if (key == "pi" || key == "pi-clauses")
            config.caps.pi_clauses = v;
        else
            throw InvalidParameters("unknown cap " + key);
    }
    for (const auto &[key, value] : parse_pairs(o.budget, "--budget")) {
        if (key == "nodes")
            config.budget.max_nodes = stoull(value);
        else if (key == "seconds")
            config.budget.max_seconds = stod(value);
        else
            throw InvalidParameters("unknown budget " + key);
    }
    return config;
}

ConformantProblem load(const string &domain, const string &problem) {
    return load_problem(read_file(domain), read_file(problem));
}

void write_report(const Options &o, const RunReport &report) {
    if (!o.report.empty())
        write_file(o.report, report_json(report));
}

void export_translation(const string &dir, const Translation &K) {
    filesystem::create_directories(dir);
    EmittedPddl e = emit_classical(K.problem);
    write_file((filesystem::path(dir) / "domain.pddl").string(), e.domain);
    write_file((filesystem::path(dir) / "problem.pddl").string(), e.problem);
    cout << "wrote " << (filesystem::path(dir) / "domain.pddl").string() << " and "
         << (filesystem::path(dir) / "problem.pddl").string() << "\n";
}

int cmd_translate(const Options &o, const string &domain, const string &problem) {
    ConformantProblem P = load(domain, problem);
    PipelineConfig config = make_config(o);
    TranslationBundle b = build_translation(P, parse_scheme(o.scheme), config,
                                            o.nondet_copies > 0 ? o.nondet_copies : 1);
    if (!o.export_pddl.empty()) {
        export_translation(o.export_pddl, b.translation);
        cerr << report_text(b.report);
    } else {
        EmittedPddl e = emit_classical(b.translation.problem);
        cout << e.domain << "\n" << e.problem;
        cerr << report_text(b.report);
    }
    write_report(o, b.report);
    return EXIT_OK;
}

int cmd_solve(const Options &o, const string &domain, const string &problem) {
    ConformantProblem P = load(domain, problem);
    PipelineConfig config = make_config(o);
    if (!o.export_pddl.empty()) {
        TranslationBundle b = build_translation(P, parse_scheme(o.scheme), config,
                                                o.nondet_copies > 0 ? o.nondet_copies : 1);
        export_translation(o.export_pddl, b.translation);
        write_report(o, b.report);
        return EXIT_OK;
    }
    PipelineResult r = run_pipeline(P, config);
    cout << report_text(r.report);
    write_report(o, r.report);
    if (r.report.solved)
        return EXIT_OK;
    return r.report.status == "budget-out" ? EXIT_BUDGET : EXIT_NO_PLAN;
}

int cmd_validate(const Options &o, const string &domain, const string &problem,
                 const string &plan_file) {
    ConformantProblem P = load(domain, problem);
    PipelineConfig config = make_config(o);
    Plan plan = normalize_plan(read_plan(read_file(plan_file)), P);
    Validation v = validate_plan(P, plan, config.caps);
    RunReport report;
    report.command = "validate";
    report.input = P.name;
    report.fluents = P.fluents.size();
    report.actions = P.actions.size();
    report.init_clauses = P.init.size();
    report.deterministic = P.is_deterministic();
    report.plan = plan.steps;
    report.stripped_length = plan.size();
    report.validation = v;
    report.solved = v.performed && v.conformant;
    report.status = report.solved ? "conformant" : "not-conformant";
    cout << "plan: " << plan.size() << " steps\n";
    if (v.performed)
        cout << "conformant check: " << (v.conformant ? "conformant" : "not conformant")
             << " (" << v.states_checked << " states)\n";
    else
        cout << "conformant check: not performed (" << v.reason << ")\n";
    if (!v.counterexample.empty())
        cout << "counterexample: " << v.counterexample << "\n";
    if (!v.conformant && !v.reason.empty())
        cout << "reason: " << v.reason << "\n";
    if (P.is_deterministic())
        cout << "0-approximation: " << (v.zero_approx_valid ? "valid" : "invalid") << "\n";
    write_report(o, report);
    return report.solved ? EXIT_OK : EXIT_NO_PLAN;
}

int cmd_width(const Options &o, const string &domain, const string &problem) {
    ConformantProblem P = load(domain, problem);
    PipelineConfig config = make_config(o);
    ConformantProblem Q = P.goal_clauses.empty() ? P : cnf_goal_compile(P);
    unique_ptr<NondetCompilation> N;
    if (!Q.is_deterministic())
        N = make_unique<NondetCompilation>(
            nondet_compile(Q, o.nondet_copies > 0 ? o.nondet_copies : 1));
    const ConformantProblem &target = N ? N->problem : Q;
    Analysis A(target, config.caps.pi_clauses);
    WidthReport w = width(A);
    cout << "width: " << w.width << "\n";
    for (const LiteralWidth &lw : w.literals) {
        cout << "  " << target.literal_name(lw.literal) << ": " << lw.width << " ("
             << lw.relevant_clause_count << " relevant clauses)";
        if (!lw.witness.empty()) {
            cout << " witness:";
            for (const Clause &c : lw.witness)
                cout << " {" << literals_to_string(c, target.fluents) << "}";
        }
        cout << "\n";
    }
    RunReport report;
    report.command = "width";
    report.input = P.name;
    report.fluents = P.fluents.size();
    report.actions = P.actions.size();
    report.init_clauses = P.init.size();
    report.pi_clauses = A.pi.clauses().size();
    report.deterministic = P.is_deterministic();
    report.width = w.width;
    for (const LiteralWidth &lw : w.literals) {
        LiteralWidthEntry e{target.literal_name(lw.literal), lw.width, {}};
        for (const Clause &c : lw.witness)
            e.witness.push_back(literals_to_string(c, target.fluents));
        report.literal_widths.push_back(e);
    }
    report.status = "analyzed";
    write_report(o, report);
    return EXIT_OK;
}

int cmd_gen(const string &family, const vector<int> &params, const string &out_dir) {
    GeneratedInstance g = generate(family, params);
    if (out_dir.empty()) {
        cout << g.domain << "\n" << g.problem;
        return EXIT_OK;
    }
    filesystem::create_directories(out_dir);
    string d = (filesystem::path(out_dir) / (g.name + "-domain.pddl")).string();
    string p = (filesystem::path(out_dir) / (g.name + ".pddl")).string();
    write_file(d, g.domain);
    write_file(p, g.problem);
    cout << "wrote " << d << " and " << p << "\n";
    return EXIT_OK;
}

vector<pair<string, vector<int>>> default_suite() {
    return {{"safe", {10}}, {"safe", {30}}, {"bomb", {10, 10}}, {"ring", {4}},
            {"square-center", {4}}, {"corners-square", {4}}, {"disjtoy", {4}},
            {"sortnet", {3}}, {"sgripper", {2}}};
}

int cmd_bench(const Options &o, const vector<string> &instances) {
    vector<pair<string, vector<int>>> suite;
    for (const string &spec : instances) {
        stringstream ss(spec);
        string family, item;
        getline(ss, family, ':');
        vector<int> params;
        while (getline(ss, item, ':'))
            params.push_back(stoi(item));
        suite.push_back({family, params});
    }
    if (suite.empty())
        suite = default_suite();
    PipelineConfig config = make_config(o);
    int failures = 0;
    cout << left << setw(22) << "instance" << setw(14) << "status" << setw(8) << "length"
         << setw(8) << "width" << setw(10) << "atoms" << setw(10) << "effects"
         << "seconds\n";
    for (const auto &[family, params] : suite) {
        GeneratedInstance g = generate(family, params);
        auto start = chrono::steady_clock::now();
        string status;
        string length = "-", width = "-", atoms = "-", effects = "-";
        try {
            ConformantProblem P = load_problem(g.domain, g.problem);
            PipelineResult r = run_pipeline(P, config);
            status = r.report.status;
            if (r.report.solved)
                length = to_string(r.report.stripped_length);
            else
                ++failures;
            if (r.report.width)
                width = to_string(*r.report.width);
            if (!r.report.stages.empty()) {
                atoms = to_string(r.report.stages.back().stats.atoms);
                effects = to_string(r.report.stages.back().stats.effects);
            }
        } catch (const Error &e) {
            status = e.kind();
            ++failures;
        }
        double secs = chrono::duration<double>(chrono::steady_clock::now() - start).count();
        cout << left << setw(22) << g.name << setw(14) << status << setw(8) << length
             << setw(8) << width << setw(10) << atoms << setw(10) << effects << fixed
             << setprecision(2) << secs << "\n";
    }
    return failures == 0 ? EXIT_OK : EXIT_NO_PLAN;
}
}

int main(int argc, char **argv) {
    CLI::App app{"Conformant planner based on translations to classical planning"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--scheme", o.scheme, "Translation: k0, ki:N, kmodels, ks0")
        ->envname("CPLAN_SCHEME");
    app.add_flag("--opt,!--no-opt", o.optimize, "Apply translation optimizations")
        ->envname("CPLAN_OPT");
    app.add_option("--caps", o.caps, "Caps, e.g. states=4096,models=65536,pi=5000")
        ->envname("CPLAN_CAPS");
    app.add_option("--budget", o.budget, "Search budget, e.g. nodes=5000000,seconds=300")
        ->envname("CPLAN_BUDGET");
    app.add_flag("--strengthened-mutex", o.strengthened_mutex,
                 "Use the strengthened mutex rule")
        ->envname("CPLAN_STRENGTHENED_MUTEX");
    app.add_option("--nondet-copies", o.nondet_copies,
                   "Copies per nondeterministic action (maximum for solve)")
        ->envname("CPLAN_NONDET_COPIES");
    app.add_option("--export-pddl", o.export_pddl,
                   "Write the classical PDDL to this directory instead of solving")
        ->envname("CPLAN_EXPORT_PDDL");
    app.add_option("--report", o.report, "Write a JSON report to this path")
        ->envname("CPLAN_REPORT");

    string domain, problem, plan_file, family, out_dir;
    vector<int> params;
    vector<string> instances;

    CLI::App *translate = app.add_subcommand("translate", "Translate and emit classical PDDL");
    translate->add_option("domain", domain)->required();
    translate->add_option("problem", problem)->required();
    CLI::App *solve = app.add_subcommand("solve", "Solve with the translation ladder");
    solve->add_option("domain", domain)->required();
    solve->add_option("problem", problem)->required();
    CLI::App *validate = app.add_subcommand("validate", "Check a plan against every initial state");
    validate->add_option("domain", domain)->required();
    validate->add_option("problem", problem)->required();
    validate->add_option("plan", plan_file)->required();
    CLI::App *width_cmd = app.add_subcommand("width", "Report the conformant width");
    width_cmd->add_option("domain", domain)->required();
    width_cmd->add_option("problem", problem)->required();
    CLI::App *gen = app.add_subcommand("gen", "Generate a benchmark instance");
    gen->add_option("family", family)->required();
    gen->add_option("params", params)->required();
    gen->add_option("-o,--out", out_dir, "Output directory");
    CLI::App *bench = app.add_subcommand("bench", "Run a benchmark suite");
    bench->add_option("instances", instances, "family:param[:param], e.g. bomb:20:20");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*translate)
            return cmd_translate(o, domain, problem);
        if (*solve)
            return cmd_solve(o, domain, problem);
        if (*validate)
            return cmd_validate(o, domain, problem, plan_file);
        if (*width_cmd)
            return cmd_width(o, domain, problem);
        if (*gen)
            return cmd_gen(family, params, out_dir);
        if (*bench)
            return cmd_bench(o, instances);
    } catch (const Error &e) {
        cerr << e.kind() << ": " << e.what() << "\n";
        return EXIT_ERROR;
    } catch (const exception &e) {
        cerr << "error: " << e.what() << "\n";
        return EXIT_ERROR;
    }
    return EXIT_ERROR;
}
