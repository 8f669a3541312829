#include "conformant/progression.h"

#include "conformant/errors.h"

using namespace std;

namespace conformant {
bool applicable(const State &s, const Action &a) {
    return s.holds_all(a.preconditions);
}

static bool progress(const State &s, const Action &a, State &out, string *conflict) {
    // Collect Add first: every condition is evaluated on s, not on the partial result.
    vector<Literal> adds;
    for (const Rule &r : a.rules)
        if (s.holds_all(r.condition))
            adds.push_back(r.effect);
    for (size_t i = 0; i < adds.size(); ++i)
        for (size_t j = i + 1; j < adds.size(); ++j)
            if (adds[i] == ~adds[j]) {
                if (conflict)
                    *conflict = "fluent " + to_string(adds[i].fluent());
                return false;
            }
    out = s;
    for (Literal lit : adds)
        out.make_true(lit);
    return true;
}

State apply(const State &s, const Action &a) {
    for (Literal pre : a.preconditions)
        if (!s.holds(pre))
            throw PreconditionViolation("precondition of " + a.name + " does not hold");
    State result;
    string conflict;
    if (!progress(s, a, result, &conflict))
        throw InconsistentResult(a.name + " adds and deletes " + conflict);
    return result;
}

bool apply_checked(const State &s, const Action &a, State &out) {
    return progress(s, a, out, nullptr);
}

vector<int> resolve_plan(const vector<Action> &actions, const Plan &plan) {
    vector<int> result;
    result.reserve(plan.size());
    for (const string &step : plan.steps) {
        int found = -1;
        for (size_t i = 0; i < actions.size(); ++i)
            if (actions[i].name == step) {
                found = static_cast<int>(i);
                break;
            }
        if (found < 0)
            throw UnknownAction("unknown action in plan: " + step);
        result.push_back(found);
    }
    return result;
}

RunResult run_action_indices(const ClassicalProblem &problem, const vector<int> &steps) {
    RunResult result;
    State s = State::from_literals(problem.num_fluents(), problem.init);
    for (size_t i = 0; i < steps.size(); ++i) {
        const Action &a = problem.actions[steps[i]];
        if (!applicable(s, a)) {
            result.applicable = false;
            result.failed_step = static_cast<int>(i);
            break;
        }
        State next;
        if (!apply_checked(s, a, next)) {
            result.applicable = false;
            result.conflict = true;
            result.failed_step = static_cast<int>(i);
            break;
        }
        s = move(next);
    }
    result.achieved_goal = result.applicable && s.holds_all(problem.goal);
    result.final = move(s);
    return result;
}

RunResult run_plan(const ClassicalProblem &problem, const Plan &plan) {
    return run_action_indices(problem, resolve_plan(problem.actions, plan));
}

bool satisfies_clauses(const State &s, const vector<Clause> &clauses) {
    for (const Clause &c : clauses) {
        bool sat = false;
        for (Literal lit : c)
            if (s.holds(lit)) {
                sat = true;
                break;
            }
        if (!sat)
            return false;
    }
    return true;
}

ClassicalProblem restrict(const ConformantProblem &P, const State &s) {
    if (s.size() != P.num_fluents() || !satisfies_clauses(s, P.init))
        throw NotAPossibleInitialState("state violates the initial clauses");
    ClassicalProblem result;
    result.name = P.name;
    result.fluents = P.fluents;
    result.init = s.literals();
    result.actions = P.actions;
    result.goal = P.goal;
    return result;
}
}
