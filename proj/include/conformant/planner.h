#ifndef CONFORMANT_PLANNER_H
#define CONFORMANT_PLANNER_H

#include "problem.h"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace conformant {
struct Budget {
    std::size_t max_nodes = 5000000;
    double max_seconds = 300.0;
};

enum class SolveStatus {
    Solved,
    Unsolvable,
    BudgetOut
};

const char *status_name(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::Unsolvable;
    Plan plan;
    std::size_t expanded = 0;
    std::size_t generated = 0;
    double seconds = 0;
    // Goal unreachable already in the delete relaxation of the initial state.
    bool relaxed_unreachable = false;
};

/*
  Additive delete-relaxation estimate over literals. Every rule of an action
  becomes a relaxed operator whose premises are the action's preconditions
  plus the rule condition. Reasoning actions cost 0, the rest 1.
*/
class AdditiveHeuristic {
    struct UnaryOp {
        std::vector<int> premises;
        int effect;
        int base_cost;
    };
    std::vector<UnaryOp> ops;
    std::vector<std::vector<int>> premise_of;
    std::vector<int> goal;
    int num_literals;
    std::vector<int> cost;
    std::vector<int> unsatisfied;
    std::vector<int> op_cost;
public:
    static constexpr int INF = std::numeric_limits<int>::max() / 4;
    explicit AdditiveHeuristic(const ClassicalProblem &K);
    int operator()(const State &s);
};

// True when every rule is either positive-to-positive or negative-to-negative
// and preconditions/goals are positive. On such problems extra true atoms never
// hurt, so merges can be applied eagerly without losing plans.
bool knowledge_monotone(const ClassicalProblem &K);

SolveResult solve(const ClassicalProblem &K, const Budget &budget = {});

// Shortest plan by number of regular steps (reasoning steps are free).
std::optional<Plan> bfs_optimal(const ClassicalProblem &K, int depth_cap,
                                std::size_t node_cap = 2000000);

// Plain BFS over every action; calls visit on each reachable state.
// Returns true when the reachable space was exhausted within cap. Transitions
// that add and delete the same atom are skipped and counted in `conflicts`.
bool explore(const ClassicalProblem &K, std::size_t cap,
             const std::function<void(const State &)> &visit,
             std::size_t *conflicts = nullptr);
}

#endif
