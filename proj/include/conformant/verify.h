#ifndef CONFORMANT_VERIFY_H
#define CONFORMANT_VERIFY_H

#include "analysis.h"
#include "problem.h"
#include "translate.h"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conformant {
constexpr std::size_t DEFAULT_STATE_CAP = 4096;

// Streams every state satisfying the initial clauses (and the forced
// literals) to `visit`; visit returns false to stop early. Throws
// TooManyInitialStates when more than cap states would be produced.
std::size_t for_each_initial_state(const ConformantProblem &P, std::size_t cap,
                                   const std::function<bool(const State &)> &visit,
                                   const LiteralSet &forced = {});
std::vector<State> initial_states(const ConformantProblem &P,
                                  std::size_t cap = DEFAULT_STATE_CAP);

struct Verdict {
    bool conformant = true;
    std::size_t states_checked = 0;
    std::optional<State> counterexample;
    int failed_step = -1;
    std::string reason;
};

// Plan must be over the actions of P (merges already stripped). Actions with
// nondeterministic effects branch over every outcome combination.
Verdict conformant_check(const ConformantProblem &P, const Plan &plan,
                         std::size_t cap = DEFAULT_STATE_CAP);
Verdict check_on_states(const ConformantProblem &P, const Plan &plan,
                        const std::vector<State> &states);

// Per-fluent value: 1 true, 0 false, -1 unknown.
struct ThreeValuedState {
    std::vector<signed char> values;
    bool holds(Literal lit) const {
        signed char v = values[lit.fluent()];
        return v >= 0 && (v == 1) == lit.positive();
    }
};

struct ZeroApproxVerdict {
    bool valid = false;
    int failed_step = -1;
    std::string reason;
    ThreeValuedState final;
};

ZeroApproxVerdict zero_approx_run(const ConformantProblem &P, const Plan &plan);

std::optional<Plan> belief_bfs(const ConformantProblem &P, int depth_cap,
                               std::size_t cap = DEFAULT_STATE_CAP,
                               std::size_t node_cap = 1000000);

LiteralSet rel_state(const State &s, Literal lit, const RelevanceGraph &R);

struct BasisEntry {
    Literal literal;
    Tag tag;
    int state;
};

struct Basis {
    std::vector<State> states;
    std::vector<BasisEntry> provenance;
};

Basis build_basis(const Analysis &A, const TranslationSpec &spec);
}

#endif
