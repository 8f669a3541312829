#include "conformant/pipeline.h"

#include "conformant/errors.h"
#include "conformant/pddl.h"
#include "conformant/progression.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <unordered_map>

using namespace std;

namespace conformant {
namespace {
double seconds_since(chrono::steady_clock::time_point start) {
    return chrono::duration<double>(chrono::steady_clock::now() - start).count();
}

string lower(string s) {
    transform(s.begin(), s.end(), s.begin(),
              [](unsigned char c) {return static_cast<char>(tolower(c));});
    return s;
}

void describe_problem(const ConformantProblem &P, RunReport &report) {
    report.input = P.name;
    report.fluents = P.fluents.size();
    report.actions = P.actions.size();
    report.init_clauses = P.init.size();
    report.deterministic = P.is_deterministic();
}

void record_width(const Analysis &A, RunReport &report) {
    try {
        WidthReport w = width(A);
        report.width = w.width;
        for (const LiteralWidth &lw : w.literals) {
            LiteralWidthEntry e;
            e.literal = A.problem->literal_name(lw.literal);
            e.width = lw.width;
            for (const Clause &c : lw.witness)
                e.witness.push_back(literals_to_string(c, A.problem->fluents));
            report.literal_widths.push_back(e);
        }
    } catch (const Error &e) {
        report.warnings.push_back(string("width not computed: ") + e.what());
    }
}

// Preprocessed problem, shared by every stage with the same copy count.
struct Prepared {
    unique_ptr<ConformantProblem> compiled;
    unique_ptr<NondetCompilation> nondet;
    unique_ptr<Analysis> analysis;

    const ConformantProblem &problem() const {
        return nondet ? nondet->problem : *compiled;
    }
};

Prepared prepare(const ConformantProblem &P, const PipelineConfig &config, int copies,
                 RunReport &report, bool with_width) {
    Prepared prep;
    prep.compiled = make_unique<ConformantProblem>(
        P.goal_clauses.empty() ? P : cnf_goal_compile(P));
    if (!prep.compiled->is_deterministic())
        prep.nondet = make_unique<NondetCompilation>(nondet_compile(*prep.compiled, copies));
    prep.analysis = make_unique<Analysis>(prep.problem(), config.caps.pi_clauses);
    report.pi_clauses = prep.analysis->pi.clauses().size();
    if (!report.consistent) {
        MutexSet R = mutex_set(prep.problem(), prep.analysis->pi, config.strengthened_mutex);
        report.consistent = consistency_check(prep.problem(), prep.analysis->pi, R);
        if (!*report.consistent)
            report.warnings.push_back(
                "consistency check failed: plans are validated against every initial state "
                "and checked for conflicting effects");
    }
    if (with_width && config.compute_width && !prep.nondet)
        record_width(*prep.analysis, report);
    return prep;
}

Translation translate_prepared(const Prepared &prep, const SchemeChoice &scheme,
                               const PipelineConfig &config) {
    TranslateOptions opts = config.optimize ? TranslateOptions::optimized() : TranslateOptions();
    opts.strengthened_mutex = config.strengthened_mutex;
    opts.model_cap = config.caps.models;
    const Analysis &A = *prep.analysis;
    bool all_literals = prep.nondet != nullptr;
    Translation K;
    switch (scheme.kind) {
    case SchemeChoice::Kind::K0:
        K = k0(A, opts);
        break;
    case SchemeChoice::Kind::KI:
        if (all_literals) {
            opts.check_spec = false;
            K = ktm(A, ki_spec(A, scheme.i, true), opts);
        } else {
            K = ki(A, scheme.i, opts);
        }
        break;
    case SchemeChoice::Kind::KModels:
        if (all_literals) {
            opts.check_spec = false;
            K = ktm(A, kmodels_spec(A, config.caps.models, true), opts);
        } else {
            K = kmodels(A, config.caps.models, opts);
        }
        break;
    case SchemeChoice::Kind::KS0:
        K = ks0(A, config.caps.initial_states, opts);
        break;
    }
    if (prep.nondet)
        inject_resets(K, *prep.nondet);
    return K;
}
}

TranslationStats stats_of(const Translation &K) {
    TranslationStats s;
    s.actions = K.problem.actions.size();
    s.atoms = K.problem.fluents.size();
    s.effects = static_cast<size_t>(K.problem.num_rules());
    s.merges = K.spec.merges.size();
    s.tags = K.spec.tags.size();
    return s;
}

SchemeChoice parse_scheme(const string &text) {
    string t = lower(text);
    SchemeChoice s;
    if (t == "k0") {
        s.kind = SchemeChoice::Kind::K0;
    } else if (t == "kmodels") {
        s.kind = SchemeChoice::Kind::KModels;
    } else if (t == "ks0") {
        s.kind = SchemeChoice::Kind::KS0;
    } else if (t.rfind("ki:", 0) == 0 || (t.size() > 1 && t[0] == 'k' &&
                                         all_of(t.begin() + 1, t.end(), ::isdigit))) {
        string num = t[1] == 'i' ? t.substr(3) : t.substr(1);
        if (num.empty() || !all_of(num.begin(), num.end(), ::isdigit))
            throw InvalidParameters("bad scheme " + text);
        s.kind = SchemeChoice::Kind::KI;
        s.i = stoi(num);
        if (s.i == 0)
            s.kind = SchemeChoice::Kind::K0;
    } else {
        throw InvalidParameters("unknown scheme " + text + " (use k0, ki:N, kmodels, ks0)");
    }
    return s;
}

string scheme_name(const SchemeChoice &scheme) {
    switch (scheme.kind) {
    case SchemeChoice::Kind::K0: return "k0";
    case SchemeChoice::Kind::KI: return "ki:" + to_string(scheme.i);
    case SchemeChoice::Kind::KModels: return "kmodels";
    case SchemeChoice::Kind::KS0: return "ks0";
    }
    return "?";
}

TranslationBundle build_translation(const ConformantProblem &P, const SchemeChoice &scheme,
                                    const PipelineConfig &config, int copies) {
    TranslationBundle bundle;
    bundle.report.command = "translate";
    describe_problem(P, bundle.report);
    auto start = chrono::steady_clock::now();
    Prepared prep = prepare(P, config, copies, bundle.report, true);
    bundle.translation = translate_prepared(prep, scheme, config);
    StageRecord stage;
    stage.name = scheme_name(scheme);
    if (prep.nondet)
        stage.name += "/copies=" + to_string(copies);
    stage.outcome = "translated";
    stage.stats = stats_of(bundle.translation);
    stage.seconds = seconds_since(start);
    bundle.report.stages.push_back(stage);
    bundle.report.status = "translated";
    if (scheme.kind == SchemeChoice::Kind::KI && bundle.report.width &&
        *bundle.report.width > scheme.i)
        bundle.report.warnings.push_back(
            "width " + to_string(*bundle.report.width) + " exceeds i=" + to_string(scheme.i) +
            ": completeness is not guaranteed");
    bundle.compiled = move(prep.compiled);
    bundle.nondet = move(prep.nondet);
    bundle.analysis = move(prep.analysis);
    return bundle;
}

Plan strip_to_original(const Plan &plan, const ConformantProblem &P,
                       const NondetCompilation *nondet) {
    Plan out;
    for (size_t i = 0; i < plan.size(); ++i) {
        if (plan.merge_mask[i])
            continue;
        string name = plan.steps[i];
        if (nondet) {
            auto it = nondet->origin.find(name);
            if (it != nondet->origin.end())
                name = it->second;
        }
        if (P.find_action(name))
            out.push_back(name);
    }
    return out;
}

Plan normalize_plan(const Plan &plan, const ConformantProblem &P) {
    unordered_map<string, string> by_name;
    for (const Action &a : P.actions) {
        by_name.emplace(a.name, a.name);
        by_name.emplace(lower(a.name), a.name);
        by_name.emplace(lower(sanitize_name(a.name)), a.name);
    }
    Plan out;
    for (size_t i = 0; i < plan.size(); ++i) {
        string step = plan.steps[i];
        if (!step.empty() && step.front() == '(') {
            Plan parsed = read_plan(step);
            if (parsed.size() == 1)
                step = parsed.steps[0];
        }
        if (plan.merge_mask[i] || is_reasoning_step_name(lower(step)))
            continue;
        auto it = by_name.find(step);
        if (it == by_name.end())
            it = by_name.find(lower(step));
        if (it == by_name.end())
            it = by_name.find(lower(sanitize_name(step)));
        if (it == by_name.end() && lower(step).rfind("achieve-goal-clause-", 0) == 0)
            continue;
        if (it == by_name.end()) {
            // Numbered copy of a nondeterministic action.
            size_t us = step.rfind('_');
            if (us != string::npos && us + 1 < step.size() &&
                all_of(step.begin() + us + 1, step.end(), ::isdigit)) {
                string base = step.substr(0, us);
                it = by_name.find(base);
                if (it == by_name.end())
                    it = by_name.find(lower(sanitize_name(base)));
            }
        }
        if (it == by_name.end())
            throw UnknownAction("unknown action in plan: " + step);
        out.push_back(it->second);
    }
    return out;
}

string state_to_string(const State &s, const vector<string> &names) {
    return literals_to_string(s.literals(), names);
}

Validation validate_plan(const ConformantProblem &P, const Plan &plan, const Caps &caps,
                         const Analysis *analysis, const TranslationSpec *spec) {
    Validation v;
    auto take = [&](const Verdict &verdict, const string &method) {
            v.performed = true;
            v.method = method;
            v.conformant = verdict.conformant;
            v.states_checked = verdict.states_checked;
            v.reason = verdict.reason;
            if (verdict.counterexample)
                v.counterexample = state_to_string(*verdict.counterexample, P.fluents);
        };
    try {
        take(conformant_check(P, plan, caps.initial_states), "exhaustive");
    } catch (const TooManyInitialStates &e) {
        if (analysis && spec) {
            try {
                Basis basis = build_basis(*analysis, *spec);
                take(check_on_states(P, plan, basis.states), "basis");
            } catch (const BasisStateNotFound &b) {
                v.reason = string("basis construction failed: ") + b.what();
            }
        } else {
            v.reason = e.what();
        }
    }
    if (P.is_deterministic()) {
        try {
            v.zero_approx_valid = zero_approx_run(P, plan).valid;
        } catch (const Error &) {
            v.zero_approx_valid = false;
        }
    }
    return v;
}

PipelineResult run_pipeline(const ConformantProblem &P, const PipelineConfig &config) {
    auto start = chrono::steady_clock::now();
    PipelineResult result;
    RunReport &report = result.report;
    report.command = "solve";
    describe_problem(P, report);
    report.status = "no-plan";

    struct Attempt {
        SchemeChoice scheme;
        int copies;
    };
    vector<Attempt> ladder;
    if (P.is_deterministic()) {
        ladder.push_back({{SchemeChoice::Kind::KI, 1}, 1});
        ladder.push_back({{SchemeChoice::Kind::KModels, 1}, 1});
    } else {
        for (int c = 1; c <= config.max_nondet_copies; ++c)
            ladder.push_back({{SchemeChoice::Kind::KI, 1}, c});
    }

    unique_ptr<Prepared> prep;
    int prepared_copies = 0;
    for (const Attempt &attempt : ladder) {
        StageRecord stage;
        stage.name = scheme_name(attempt.scheme);
        if (!P.is_deterministic())
            stage.name += "/copies=" + to_string(attempt.copies);
        auto stage_start = chrono::steady_clock::now();
        try {
            if (!prep || prepared_copies != attempt.copies) {
                prep = make_unique<Prepared>(prepare(P, config, attempt.copies, report, !prep));
                prepared_copies = attempt.copies;
            }
            Translation K = translate_prepared(*prep, attempt.scheme, config);
            stage.stats = stats_of(K);
            Budget budget = config.budget;
            budget.max_seconds = max(0.0, config.budget.max_seconds - seconds_since(start));
            SolveResult sr = solve(K.problem, budget);
            stage.expanded = sr.expanded;
            stage.outcome = status_name(sr.status);
            if (sr.relaxed_unreachable)
                stage.detail = "goal unreachable in the delete relaxation";
            if (sr.status == SolveStatus::Solved) {
                RunResult check = run_plan(K.problem, sr.plan);
                if (!check.applicable || !check.achieved_goal)
                    throw InconsistentResult("planner returned an invalid classical plan");
                result.classical_plan = sr.plan;
                result.plan = strip_to_original(sr.plan, P, prep->nondet.get());
                bool own_analysis = !prep->nondet && P.goal_clauses.empty();
                Validation v = validate_plan(P, result.plan, config.caps,
                                             own_analysis ? prep->analysis.get() : nullptr,
                                             own_analysis ? &K.spec : nullptr);
                report.validation = v;
                report.plan = result.plan.steps;
                report.stripped_length = result.plan.size();
                stage.seconds = seconds_since(stage_start);
                report.stages.push_back(stage);
                if (!v.performed) {
                    report.status = "unvalidated";
                    report.warnings.push_back("plan could not be validated: " + v.reason);
                } else if (v.conformant) {
                    report.status = "solved";
                    report.solved = true;
                } else {
                    report.status = "invalid-plan";
                }
                return result;
            }
            if (sr.status == SolveStatus::BudgetOut) {
                stage.seconds = seconds_since(stage_start);
                report.stages.push_back(stage);
                report.status = "budget-out";
                return result;
            }
        } catch (const Error &e) {
            stage.outcome = "error";
            stage.detail = string(e.kind()) + ": " + e.what();
        }
        stage.seconds = seconds_since(stage_start);
        report.stages.push_back(stage);
    }
    return result;
}

PipelineResult pipeline_solve(const ConformantProblem &P, const PipelineConfig &config) {
    PipelineResult result = run_pipeline(P, config);
    if (result.report.solved)
        return result;
    string trace;
    for (const StageRecord &s : result.report.stages)
        trace += " [" + s.name + ": " + s.outcome + (s.detail.empty() ? "" : " (" + s.detail + ")") +
                 "]";
    if (result.report.status == "budget-out")
        throw BudgetExhausted("budget exhausted:" + trace);
    throw NoPlanFound("no plan found (" + result.report.status + "):" + trace);
}
}
