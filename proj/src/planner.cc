#include "conformant/planner.h"

#include "conformant/progression.h"

#include <chrono>
#include <deque>
#include <queue>
#include <tuple>
#include <unordered_map>

using namespace std;

namespace conformant {
const char *status_name(SolveStatus status) {
    switch (status) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Unsolvable: return "unsolvable";
    case SolveStatus::BudgetOut: return "budget-out";
    }
    return "?";
}

AdditiveHeuristic::AdditiveHeuristic(const ClassicalProblem &K)
    : premise_of(2 * K.num_fluents()), num_literals(2 * K.num_fluents()),
      cost(2 * K.num_fluents()) {
    for (const Action &a : K.actions) {
        int base = a.is_reasoning() ? 0 : 1;
        for (const Rule &r : a.rules) {
            UnaryOp op;
            op.premises.reserve(a.preconditions.size() + r.condition.size());
            for (Literal p : set_union(a.preconditions, r.condition))
                op.premises.push_back(p.code());
            op.effect = r.effect.code();
            op.base_cost = base;
            ops.push_back(move(op));
        }
    }
    for (size_t i = 0; i < ops.size(); ++i)
        for (int p : ops[i].premises)
            premise_of[p].push_back(static_cast<int>(i));
    for (Literal g : K.goal)
        goal.push_back(g.code());
    unsatisfied.resize(ops.size());
    op_cost.resize(ops.size());
}

int AdditiveHeuristic::operator()(const State &s) {
    using Entry = pair<int, int>;
    priority_queue<Entry, vector<Entry>, greater<Entry>> queue;
    fill(cost.begin(), cost.end(), INF);
    for (int f = 0; f < s.size(); ++f) {
        int code = Literal(f, s.value(f)).code();
        cost[code] = 0;
        queue.push({0, code});
    }
    for (size_t i = 0; i < ops.size(); ++i) {
        unsatisfied[i] = static_cast<int>(ops[i].premises.size());
        op_cost[i] = ops[i].base_cost;
        if (unsatisfied[i] == 0 && op_cost[i] < cost[ops[i].effect]) {
            cost[ops[i].effect] = op_cost[i];
            queue.push({op_cost[i], ops[i].effect});
        }
    }
    while (!queue.empty()) {
        auto [c, prop] = queue.top();
        queue.pop();
        if (c > cost[prop])
            continue;
        for (int i : premise_of[prop]) {
            op_cost[i] = min(INF, op_cost[i] + c);
            if (--unsatisfied[i] == 0) {
                int e = ops[i].effect;
                if (op_cost[i] < cost[e]) {
                    cost[e] = op_cost[i];
                    queue.push({op_cost[i], e});
                }
            }
        }
    }
    long long total = 0;
    for (int g : goal) {
        if (cost[g] >= INF)
            return INF;
        total += cost[g];
    }
    return static_cast<int>(min<long long>(total, INF - 1));
}

bool knowledge_monotone(const ClassicalProblem &K) {
    for (Literal g : K.goal)
        if (!g.positive())
            return false;
    for (const Action &a : K.actions) {
        for (Literal p : a.preconditions)
            if (!p.positive())
                return false;
        for (const Rule &r : a.rules)
            for (Literal c : r.condition)
                if (c.positive() != r.effect.positive())
                    return false;
    }
    return true;
}

namespace {
// Merges and deduction actions fired to saturation after every step.
class EagerClosure {
    const ClassicalProblem &K;
    vector<int> closing;
    vector<bool> closing_flag;
public:
    EagerClosure(const ClassicalProblem &K, bool enabled)
        : K(K), closing_flag(K.actions.size(), false) {
        if (!enabled)
            return;
        for (size_t i = 0; i < K.actions.size(); ++i) {
            const Action &a = K.actions[i];
            if ((a.kind == ActionKind::Merge || a.kind == ActionKind::Deduction) &&
                a.preconditions.empty()) {
                closing.push_back(static_cast<int>(i));
                closing_flag[i] = true;
            }
        }
    }

    bool is_closing(int action) const {
        return closing_flag[action];
    }

    void apply(State &s, vector<int> &fired) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i : closing) {
                State next;
                if (!apply_checked(s, K.actions[i], next) || next == s)
                    continue;
                s = move(next);
                fired.push_back(i);
                changed = true;
            }
        }
    }
};

struct Node {
    State state;
    int parent;
    vector<int> steps;
};

Plan reconstruct(const ClassicalProblem &K, const vector<Node> &nodes, int id) {
    vector<int> steps;
    for (; id >= 0; id = nodes[id].parent)
        steps.insert(steps.begin(), nodes[id].steps.begin(), nodes[id].steps.end());
    Plan plan;
    for (int a : steps)
        plan.push_back(K.actions[a].name, K.actions[a].is_reasoning());
    return plan;
}
}

SolveResult solve(const ClassicalProblem &K, const Budget &budget) {
    auto start = chrono::steady_clock::now();
    auto elapsed = [&]() {
            return chrono::duration<double>(chrono::steady_clock::now() - start).count();
        };
    SolveResult result;
    EagerClosure closure(K, knowledge_monotone(K));
    AdditiveHeuristic h(K);

    vector<Node> nodes;
    unordered_map<State, int, StateHash> seen;
    using Entry = tuple<int, size_t, int>;   // h, fifo counter, node
    priority_queue<Entry, vector<Entry>, greater<Entry>> open;
    size_t counter = 0;

    Node root{State::from_literals(K.num_fluents(), K.init), -1, {}};
    closure.apply(root.state, root.steps);
    int h0 = h(root.state);
    nodes.push_back(root);
    seen.emplace(nodes[0].state, 0);
    auto finish = [&](SolveStatus status) {
            result.status = status;
            result.seconds = elapsed();
            return result;
        };
    if (nodes[0].state.holds_all(K.goal)) {
        result.plan = reconstruct(K, nodes, 0);
        return finish(SolveStatus::Solved);
    }
    if (h0 >= AdditiveHeuristic::INF) {
        result.relaxed_unreachable = true;
        return finish(SolveStatus::Unsolvable);
    }
    open.push({h0, counter++, 0});

    while (!open.empty()) {
        if (result.expanded >= budget.max_nodes || elapsed() > budget.max_seconds)
            return finish(SolveStatus::BudgetOut);
        int id = get<2>(open.top());
        open.pop();
        ++result.expanded;
        for (size_t ai = 0; ai < K.actions.size(); ++ai) {
            if (closure.is_closing(static_cast<int>(ai)))
                continue;
            const Action &a = K.actions[ai];
            if (!nodes[id].state.holds_all(a.preconditions))
                continue;
            Node child{State(), id, {static_cast<int>(ai)}};
            if (!apply_checked(nodes[id].state, a, child.state))
                continue;
            closure.apply(child.state, child.steps);
            if (seen.count(child.state))
                continue;
            ++result.generated;
            int child_id = static_cast<int>(nodes.size());
            seen.emplace(child.state, child_id);
            nodes.push_back(move(child));
            if (nodes[child_id].state.holds_all(K.goal)) {
                result.plan = reconstruct(K, nodes, child_id);
                return finish(SolveStatus::Solved);
            }
            int hv = h(nodes[child_id].state);
            if (hv < AdditiveHeuristic::INF)
                open.push({hv, counter++, child_id});
        }
    }
    return finish(SolveStatus::Unsolvable);
}

optional<Plan> bfs_optimal(const ClassicalProblem &K, int depth_cap, size_t node_cap) {
    EagerClosure closure(K, knowledge_monotone(K));
    vector<Node> nodes;
    vector<int> dist;
    unordered_map<State, int, StateHash> seen;
    deque<int> queue;

    Node root{State::from_literals(K.num_fluents(), K.init), -1, {}};
    closure.apply(root.state, root.steps);
    seen.emplace(root.state, 0);
    nodes.push_back(move(root));
    dist.push_back(0);
    queue.push_back(0);
    vector<bool> done(1, false);
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (done[id])
            continue;
        done[id] = true;
        if (nodes[id].state.holds_all(K.goal))
            return reconstruct(K, nodes, id);
        for (size_t ai = 0; ai < K.actions.size(); ++ai) {
            if (closure.is_closing(static_cast<int>(ai)))
                continue;
            const Action &a = K.actions[ai];
            if (!nodes[id].state.holds_all(a.preconditions))
                continue;
            int weight = a.is_reasoning() ? 0 : 1;
            int d = dist[id] + weight;
            if (d > depth_cap)
                continue;
            Node child{State(), id, {static_cast<int>(ai)}};
            if (!apply_checked(nodes[id].state, a, child.state))
                continue;
            closure.apply(child.state, child.steps);
            auto it = seen.find(child.state);
            if (it != seen.end()) {
                int other = it->second;
                if (done[other] || dist[other] <= d)
                    continue;
                // Found a cheaper way to an open state: re-link it.
                nodes[other].parent = id;
                nodes[other].steps = child.steps;
                dist[other] = d;
                if (weight == 0)
                    queue.push_front(other);
                else
                    queue.push_back(other);
                continue;
            }
            if (nodes.size() >= node_cap)
                return nullopt;
            int child_id = static_cast<int>(nodes.size());
            seen.emplace(child.state, child_id);
            nodes.push_back(move(child));
            dist.push_back(d);
            done.push_back(false);
            if (weight == 0)
                queue.push_front(child_id);
            else
                queue.push_back(child_id);
        }
    }
    return nullopt;
}

bool explore(const ClassicalProblem &K, size_t cap, const function<void(const State &)> &visit,
             size_t *conflicts) {
    unordered_map<State, int, StateHash> seen;
    deque<State> queue;
    State init = State::from_literals(K.num_fluents(), K.init);
    seen.emplace(init, 0);
    queue.push_back(init);
    while (!queue.empty()) {
        State s = move(queue.front());
        queue.pop_front();
        visit(s);
        for (const Action &a : K.actions) {
            if (!s.holds_all(a.preconditions))
                continue;
            State next;
            if (!apply_checked(s, a, next)) {
                if (conflicts)
                    ++*conflicts;
                continue;
            }
            if (seen.count(next))
                continue;
            if (seen.size() >= cap)
                return false;
            seen.emplace(next, 0);
            queue.push_back(move(next));
        }
    }
    return true;
}
}
