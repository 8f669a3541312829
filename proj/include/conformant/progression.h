#ifndef CONFORMANT_PROGRESSION_H
#define CONFORMANT_PROGRESSION_H

#include "problem.h"

namespace conformant {
bool applicable(const State &s, const Action &a);

// s_a = (s \ Del) u Add. Throws PreconditionViolation / InconsistentResult.
State apply(const State &s, const Action &a);

// Same as apply but reports conflicts instead of throwing; used by search.
// Returns false on an inconsistent result.
bool apply_checked(const State &s, const Action &a, State &out);

struct RunResult {
    bool applicable = true;
    State final;
    bool achieved_goal = false;
    // Index of the first inapplicable (or conflicting) step, -1 if none.
    int failed_step = -1;
    bool conflict = false;
};

std::vector<int> resolve_plan(const std::vector<Action> &actions, const Plan &plan);
RunResult run_plan(const ClassicalProblem &problem, const Plan &plan);
RunResult run_action_indices(const ClassicalProblem &problem, const std::vector<int> &steps);

bool satisfies_clauses(const State &s, const std::vector<Clause> &clauses);
ClassicalProblem restrict(const ConformantProblem &P, const State &s);
}

#endif
