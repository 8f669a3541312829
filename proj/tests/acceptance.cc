#include "conformant/errors.h"
#include "conformant/generators.h"
#include "conformant/pddl.h"
#include "conformant/pipeline.h"

#include "support/test_support.h"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace conformant;
using namespace testing_support;

namespace {
struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
    Outcome &out;
public:
    explicit Check(Outcome &out) : out(out) {}
    // Records the first failure message; later ones only clear pass.
    bool operator()(bool condition, const std::string &message) {
        if (!condition) {
            if (out.pass)
                out.detail = message;
            out.pass = false;
        }
        return condition;
    }
};

ConformantProblem load_generated(const std::string &family, const std::vector<int> &params) {
    GeneratedInstance g = generate(family, params);
    return load_problem(g.domain, g.problem);
}

Literal lit(const ConformantProblem &P, const std::string &text) {
    bool neg = text[0] == '-';
    return Literal(*P.find_fluent(neg ? text.substr(1) : text), !neg);
}

std::vector<ConformantProblem> random_suite(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::vector<ConformantProblem> suite;
    for (int i = 0; i < count; ++i)
        suite.push_back(random_problem(rng));
    return suite;
}

struct NamedTranslation {
    std::string name;
    Translation translation;
};

// Every translation of the family that can be built for P; invalid or
// capped ones are skipped.
std::vector<NamedTranslation> translations_of(const Analysis &A) {
    std::vector<NamedTranslation> out;
    std::vector<std::pair<std::string, std::function<Translation()>>> makers = {
        {"k0", [&] {return k0(A);}},
        {"k1", [&] {return ki(A, 1);}},
        {"k2", [&] {return ki(A, 2);}},
        {"kmodels", [&] {return kmodels(A);}},
        {"ks0", [&] {return ks0(A);}},
    };
    for (auto &[name, make] : makers) {
        try {
            out.push_back({name, make()});
        } catch (const Error &) {
        }
    }
    return out;
}

std::string join(const std::vector<std::string> &steps) {
    std::string s;
    for (const std::string &x : steps)
        s += (s.empty() ? "" : " ") + x;
    return s;
}

Outcome criterion1() {
    Outcome o;
    Check check(o);
    ConformantProblem P = knowledge_example();
    Analysis A(P);
    Translation K = k0(A);
    check(run_plan(K.problem, plan_from_names({"a", "b"})).achieved_goal, "{a,b} fails on K0");
    check(!run_plan(K.problem, plan_from_names({"a"})).achieved_goal, "{a} solves K0");
    check(conformant_check(P, plan_from_names({"a", "b"})).conformant, "validator rejects {a,b}");
    Verdict v = conformant_check(P, plan_from_names({"a"}));
    check(!v.conformant && v.counterexample && v.counterexample->holds(lit(P, "p")),
          "validator gives no counterexample with p true for {a}");
    if (o.pass)
        o.detail = "K0 accepts {a,b}, rejects {a}; validator agrees";
    return o;
}

Outcome criterion2() {
    Outcome o;
    Check check(o);
    ConformantProblem P = load_problem(PICK_DROP_DOMAIN, PICK_DROP_PROBLEM);
    Analysis A(P);
    Literal hold = lit(P, "hold"), a1 = lit(P, "at(l1)"), a2 = lit(P, "at(l2)"),
            a3 = lit(P, "at(l3)");
    Tag t1 = {a1}, t2 = {a2};
    Translation K = ktm(A, make_spec("custom", {{{t1, t2}, hold}, {{t1, t2}, a3}}, {t1, t2}));

    std::set<std::pair<Literal, Tag>> listed = {
        {~hold, {}}, {~a3, {}},
        {~hold, t1}, {~a3, t1}, {a1, t1}, {~a2, t1},
        {~hold, t2}, {~a3, t2}, {a2, t2}, {~a1, t2},
    };
    std::set<std::pair<Literal, Tag>> init;
    for (Literal l : K.problem.init)
        init.insert({K.atoms[l.fluent()].base, K.spec.tags[K.atoms[l.fluent()].tag]});
    check(init == listed, "I' differs from the listed set (" + std::to_string(init.size()) +
          " atoms)");

    auto merge_for = [&](Literal target) {
            for (const Action &a : K.problem.actions)
                if (a.kind == ActionKind::Merge &&
                    a.rules[0].effect == Literal::pos(*K.atom(target, 0)))
                    return a.name;
            return std::string();
        };
    std::vector<std::string> pi1 = {"pick(l1)", "drop(l3)", "pick(l2)", "drop(l3)", merge_for(a3)};
    check(run_plan(K.problem, plan_from_names(pi1)).achieved_goal, "pi1' does not solve");
    std::vector<std::string> pi2 = {"pick(l1)", "pick(l2)", merge_for(hold), "drop(l3)"};
    check(!run_plan(K.problem, plan_from_names(pi2)).achieved_goal, "pi2' solves");

    auto atom = [&](Literal l, const Tag &t) {return *K.atom(l, t);};
    std::vector<int> monitors = {atom(a1, t1), atom(a2, t2), atom(hold, t1),
                                 atom(hold, t2), atom(a3, t1), atom(a3, t2)};
    std::vector<std::set<int>> rows = {
        {atom(a1, t1), atom(a2, t2)},
        {atom(hold, t1), atom(a2, t2)},
        {atom(a3, t1), atom(a2, t2)},
        {atom(a3, t1), atom(hold, t2)},
        {atom(a3, t1), atom(a3, t2)},
    };
    State s = State::from_literals(K.problem.num_fluents(), K.problem.init);
    for (std::size_t row = 0; row <= pi1.size(); ++row) {
        if (row < rows.size()) {
            for (int m : monitors)
                check(s.value(m) == (rows[row].count(m) > 0),
                      "trace row " + std::to_string(row) + " differs at " + K.problem.fluents[m]);
        } else {
            check(s.value(atom(a3, {})), "Kat(l3) false after the merge");
        }
        if (row < pi1.size())
            s = apply(s, K.problem.actions[*K.problem.find_action(pi1[row])]);
    }
    if (o.pass)
        o.detail = "I' has the 10 listed atoms, pi1' solves, pi2' fails, 6-row trace matches";
    return o;
}

Outcome criterion3() {
    Outcome o;
    Check check(o);
    std::vector<std::tuple<std::string, std::vector<int>, int>> cases = {
        {"safe", {10}, 1}, {"safe", {30}, 1}, {"bomb", {10, 10}, 1}, {"bomb", {20, 20}, 1},
        {"ring", {4}, 1}, {"ring", {6}, 1}, {"square-center", {4}, 1},
        {"square-center", {6}, 1}, {"corners-square", {4}, 1}, {"corners-square", {6}, 1},
        {"sortnet", {3}, 3}, {"sortnet", {4}, 4}, {"sortnet", {5}, 5},
    };
    std::string summary;
    for (const auto &[family, params, expected] : cases) {
        GeneratedInstance g = generate(family, params);
        ConformantProblem P = load_problem(g.domain, g.problem);
        if (!P.goal_clauses.empty())
            P = cnf_goal_compile(P);
        Analysis A(P);
        int w = width(A).width;
        check(w == expected, g.name + " width " + std::to_string(w) + ", expected " +
              std::to_string(expected));
        summary += (summary.empty() ? "" : ", ") + g.name + "=" + std::to_string(w);
    }
    if (o.pass)
        o.detail = summary;
    return o;
}

Outcome criterion4() {
    Outcome o;
    Check check(o);
    auto start = std::chrono::steady_clock::now();
    std::string summary;
    for (int n : {10, 30, 50}) {
        ConformantProblem P = load_generated("safe", {n});
        PipelineResult r = run_pipeline(P);
        bool via_k1 = !r.report.stages.empty() && r.report.stages.back().name == "ki:1";
        check(r.report.solved && via_k1, "safe-" + std::to_string(n) + " not solved via ki:1");
        check(r.plan.size() == static_cast<std::size_t>(n),
              "safe-" + std::to_string(n) + " length " + std::to_string(r.plan.size()));
        Verdict v = conformant_check(P, r.plan);
        check(v.conformant && v.states_checked == static_cast<std::size_t>(n),
              "safe-" + std::to_string(n) + " fails conformant_check");
        summary += "safe-" + std::to_string(n) + "=" + std::to_string(r.plan.size()) + " ";
    }
    ConformantProblem B = load_generated("bomb", {20, 20});
    PipelineConfig config;
    config.caps.initial_states = std::size_t(1) << 21;
    PipelineResult r = run_pipeline(B, config);
    check(r.report.solved, "bomb-20-20 not solved");
    check(r.plan.size() == 20, "bomb-20-20 length " + std::to_string(r.plan.size()));
    Verdict v = conformant_check(B, r.plan, config.caps.initial_states);
    check(v.conformant && v.states_checked == (std::size_t(1) << 20),
          "bomb-20-20 fails conformant_check over " + std::to_string(v.states_checked) +
          " states");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(secs < 60, "took " + std::to_string(secs) + " s");
    if (o.pass) {
        std::ostringstream ss;
        ss << summary << "bomb-20-20=" << r.plan.size() << " (" << v.states_checked
           << " states checked), " << std::fixed << std::setprecision(1) << secs << " s";
        o.detail = ss.str();
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    Check check(o);
    ConformantProblem C = load_generated("corners-square", {4});
    check(initial_states(C).size() == 4, "corners-square-4 does not have 4 initial states");
    PipelineResult r = run_pipeline(C);
    check(r.report.solved && conformant_check(C, r.plan).conformant,
          "corners-square-4 not solved with a valid plan");
    std::string summary = "corners-square-4: 4 states, length " + std::to_string(r.plan.size());
    for (int n = 2; n <= 6; ++n) {
        ConformantProblem T = load_generated("disjtoy", {n});
        PipelineResult t = run_pipeline(T);
        check(t.report.solved && conformant_check(T, t.plan).conformant,
              "disjtoy-" + std::to_string(n) + " not solved with a valid plan");
    }
    if (o.pass)
        o.detail = summary + "; disjtoy-2..6 solved and validated";
    return o;
}

Outcome criterion6(const std::vector<ConformantProblem> &suite) {
    Outcome o;
    Check check(o);
    std::size_t plans = 0, translations = 0;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        const ConformantProblem &P = suite[k];
        Analysis A(P);
        for (const NamedTranslation &T : translations_of(A)) {
            ++translations;
            std::vector<Plan> found;
            if (auto p = bfs_optimal(T.translation.problem, 6, 200000))
                found.push_back(*p);
            Budget budget;
            budget.max_nodes = 200000;
            SolveResult sr = solve(T.translation.problem, budget);
            if (sr.status == SolveStatus::Solved)
                found.push_back(sr.plan);
            for (const Plan &p : found) {
                ++plans;
                Verdict v = conformant_check(P, p.stripped());
                check(v.conformant, "problem " + std::to_string(k) + " " + T.name + ": plan [" +
                      join(p.steps) + "] is not conformant");
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(plans) + " plans from " + std::to_string(translations) +
                   " translations of " + std::to_string(suite.size()) +
                   " problems, 0 violations";
    return o;
}

Outcome criterion7(const std::vector<ConformantProblem> &suite) {
    Outcome o;
    Check check(o);
    std::size_t checked = 0;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        const ConformantProblem &P = suite[k];
        Analysis A(P);
        int w = width(A).width;
        if (w > 2)
            continue;
        std::optional<Plan> conformant = belief_bfs(P, 5);
        if (!conformant)
            continue;
        std::size_t length = conformant->size();
        for (int i = w; i <= 2; ++i) {
            ++checked;
            Translation K = ki(A, i);
            std::optional<Plan> p = bfs_optimal(K.problem, static_cast<int>(length));
            check(p && p->stripped_length() == length,
                  "problem " + std::to_string(k) + " width " + std::to_string(w) + ": K" +
                  std::to_string(i) + " has no plan of length " + std::to_string(length));
        }
    }
    if (o.pass)
        o.detail = std::to_string(checked) + " (problem, i) pairs with w <= i, 0 violations";
    return o;
}

Outcome criterion8(const std::vector<ConformantProblem> &suite) {
    Outcome o;
    Check check(o);
    std::size_t sequences = 0;
    for (std::size_t k = 0; k < 50 && k < suite.size(); ++k) {
        const ConformantProblem &P = suite[k];
        Analysis A(P);
        Translation K = k0(A);
        for_each_sequence(static_cast<int>(P.actions.size()), 4, [&](const std::vector<int> &seq) {
                ++sequences;
                Plan plan = plan_of(P.actions, seq);
                RunResult r = run_plan(K.problem, plan);
                bool by_k0 = r.applicable && r.achieved_goal;
                bool by_zero = zero_approx_run(P, plan).valid;
                check(by_k0 == by_zero, "problem " + std::to_string(k) + " [" +
                      join(plan.steps) + "]: K0 " + (by_k0 ? "accepts" : "rejects") +
                      ", 0-approximation " + (by_zero ? "accepts" : "rejects"));
            });
    }
    if (o.pass)
        o.detail = std::to_string(sequences) + " sequences on 50 problems, 0 discrepancies";
    return o;
}

Outcome criterion9() {
    Outcome o;
    Check check(o);
    std::mt19937 rng(9);
    int unsat = 0;
    for (int round = 0; round < 100; ++round) {
        int n = 1 + round % 6;
        std::vector<Clause> cnf = random_cnf(rng, n, 1 + round % 7, 3);
        bool satisfiable = true;
        std::set<Clause> expected = truth_table_prime_implicates(n, cnf, satisfiable);
        if (!satisfiable) {
            ++unsat;
            bool threw = false;
            try {
                prime_implicates(n, cnf);
            } catch (const InconsistentInit &) {
                threw = true;
            }
            check(threw, "CNF " + std::to_string(round) + " unsatisfiable but accepted");
            continue;
        }
        PICNF pi = prime_implicates(n, cnf);
        check(std::set<Clause>(pi.clauses().begin(), pi.clauses().end()) == expected,
              "CNF " + std::to_string(round) + " differs from the truth table");
    }
    if (o.pass)
        o.detail = "100 CNFs (" + std::to_string(unsat) + " unsatisfiable), 0 discrepancies";
    return o;
}

Outcome criterion10() {
    Outcome o;
    Check check(o);
    std::size_t plans = 0;
    std::string summary;
    for (int n = 3; n <= 5; ++n) {
        ConformantProblem P = disjunction_toy(n);
        Analysis A(P);
        Basis B = build_basis(A, ki_spec(A, 1));
        std::size_t full = initial_states(P).size();
        check(B.states.size() == static_cast<std::size_t>(n),
              "toy n=" + std::to_string(n) + " basis has " + std::to_string(B.states.size()));
        check(full == (std::size_t(1) << n) - 1, "toy n=" + std::to_string(n) + " has " +
              std::to_string(full) + " initial states");
        for_each_sequence(static_cast<int>(P.actions.size()), 3, [&](const std::vector<int> &seq) {
                Plan plan = plan_of(P.actions, seq);
                if (!check_on_states(P, plan, B.states).conformant)
                    return;
                ++plans;
                check(conformant_check(P, plan).conformant,
                      "[" + join(plan.steps) + "] conforms on the basis only");
            });
        summary += "n=" + std::to_string(n) + ": " + std::to_string(B.states.size()) + " vs " +
                   std::to_string(full) + "; ";
    }
    if (o.pass)
        o.detail = summary + std::to_string(plans) + " basis plans, all conformant";
    return o;
}

Outcome criterion11(const std::vector<ConformantProblem> &suite) {
    Outcome o;
    Check check(o);
    std::size_t states = 0;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        const ConformantProblem &P = suite[k];
        for (bool strengthened : {false, true}) {
            auto pairs = mutex_set(P, strengthened).pair_list();
            for (const State &s0 : initial_states(P))
                explore(restrict(P, s0), 20000, [&](const State &s) {
                        ++states;
                        for (auto [a, b] : pairs)
                            check(!(s.holds(a) && s.holds(b)),
                                  "problem " + std::to_string(k) + ": mutex " +
                                  P.literal_name(a) + ", " + P.literal_name(b) + " reached");
                    });
        }
        Analysis A(P);
        for (const NamedTranslation &T : translations_of(A)) {
            const Translation &K = T.translation;
            std::map<std::pair<int, int>, bool> joint;
            auto jointly = [&](int t, int u) {
                    auto key = std::minmax(t, u);
                    auto it = joint.find(key);
                    if (it != joint.end())
                        return it->second;
                    bool c = consistent_with(A.pi, set_union(K.spec.tags[t], K.spec.tags[u]));
                    joint[key] = c;
                    return c;
                };
            std::vector<std::vector<int>> by_literal(2 * P.num_fluents());
            for (std::size_t id = 0; id < K.atoms.size(); ++id)
                by_literal[K.atoms[id].base.code()].push_back(static_cast<int>(id));
            explore(K.problem, 20000, [&](const State &s) {
                    ++states;
                    for (int f = 0; f < P.num_fluents(); ++f)
                        for (int x : by_literal[Literal::pos(f).code()])
                            if (s.value(x))
                                for (int y : by_literal[Literal::neg(f).code()])
                                    if (s.value(y) && jointly(K.atoms[x].tag, K.atoms[y].tag))
                                        check(false, "problem " + std::to_string(k) + " " +
                                              T.name + ": " + K.problem.fluents[x] + " and " +
                                              K.problem.fluents[y] + " reached together");
                });
        }
    }
    if (o.pass)
        o.detail = std::to_string(states) + " reachable states checked, 0 violations";
    return o;
}

Outcome criterion12() {
    Outcome o;
    Check check(o);
    ConformantProblem P = load_generated("sortnet", {3});
    PipelineResult r = run_pipeline(P);
    const auto &stages = r.report.stages;
    check(stages.size() == 2, std::to_string(stages.size()) + " stages run");
    if (stages.size() == 2) {
        check(stages[0].name == "ki:1" && stages[0].outcome == "unsolvable" &&
              !stages[0].detail.empty(), "ki:1 stage: " + stages[0].outcome);
        check(stages[1].name == "kmodels" && stages[1].outcome == "solved",
              "kmodels stage: " + stages[1].outcome);
    }
    check(r.report.solved && conformant_check(P, r.plan).conformant, "plan not validated");
    if (o.pass)
        o.detail = "ki:1 unsolvable (" + stages[0].detail + "), kmodels plan of length " +
                   std::to_string(r.plan.size()) + " validated";
    return o;
}

Outcome criterion13() {
    Outcome o;
    Check check(o);
    auto start = std::chrono::steady_clock::now();
    ConformantProblem P = load_generated("sgripper", {2});
    PipelineResult r = run_pipeline(P);
    check(r.report.solved, "sgripper-2 not solved");
    check(!r.report.stages.empty() && r.report.stages.back().name == "ki:1/copies=1",
          "not solved with one copy");
    Verdict v = conformant_check(P, r.plan);
    check(v.conformant, "plan fails under some outcome: " + v.reason);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(secs < 30, "took " + std::to_string(secs) + " s");
    if (o.pass)
        o.detail = "length " + std::to_string(r.plan.size()) + " with copies=1, validated over " +
                   std::to_string(v.states_checked) + " initial states and every outcome";
    return o;
}
}

int main() {
    auto suite_start = std::chrono::steady_clock::now();
    std::vector<ConformantProblem> suite = random_suite(2024, 200);
    std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1},
        {2, criterion2},
        {3, criterion3},
        {4, criterion4},
        {5, criterion5},
        {6, [&] {return criterion6(suite);}},
        {7, [&] {return criterion7(suite);}},
        {8, [&] {return criterion8(suite);}},
        {9, criterion9},
        {10, criterion10},
        {11, [&] {return criterion11(suite);}},
        {12, criterion12},
        {13, criterion13},
    };
    int failures = 0;
    for (auto &[id, run] : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        failures += !o.pass;
        std::cout << "criterion " << std::setw(2) << id << ": " << (o.pass ? "PASS" : "FAIL")
                  << " - " << o.detail << " [" << std::fixed << std::setprecision(2) << secs
                  << " s]" << std::endl;
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start)
                       .count();
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
              << " in " << std::fixed << std::setprecision(1) << total << " s" << std::endl;
    return failures ? 1 : 0;
}
