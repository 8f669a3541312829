#include "conformant/verify.h"

#include "conformant/errors.h"
#include "conformant/progression.h"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

using namespace std;

namespace conformant {
size_t for_each_initial_state(const ConformantProblem &P, size_t cap,
                              const function<bool(const State &)> &visit,
                              const LiteralSet &forced) {
    int n = P.num_fluents();
    // Clauses are checked once their last fluent is assigned.
    vector<vector<const Clause *>> closing(n);
    for (const Clause &c : P.init) {
        if (c.empty())
            return 0;
        int last = 0;
        for (Literal lit : c)
            last = max(last, lit.fluent());
        closing[last].push_back(&c);
    }
    vector<signed char> fixed(n, -1);
    for (Literal lit : forced) {
        signed char v = lit.positive() ? 1 : 0;
        if (fixed[lit.fluent()] >= 0 && fixed[lit.fluent()] != v)
            return 0;
        fixed[lit.fluent()] = v;
    }
    State s(n);
    size_t count = 0;
    bool stop = false;
    auto satisfied = [&](int v) {
            for (const Clause *c : closing[v]) {
                bool sat = false;
                for (Literal lit : *c)
                    if (s.holds(lit)) {
                        sat = true;
                        break;
                    }
                if (!sat)
                    return false;
            }
            return true;
        };
    auto recurse = [&](auto &self, int v) -> void {
            if (stop)
                return;
            if (v == n) {
                if (count >= cap)
                    throw TooManyInitialStates("more than " + to_string(cap) +
                                               " initial states");
                ++count;
                if (!visit(s))
                    stop = true;
                return;
            }
            for (bool value : {false, true}) {
                if (fixed[v] >= 0 && fixed[v] != value)
                    continue;
                s.set(v, value);
                if (satisfied(v))
                    self(self, v + 1);
                if (stop)
                    return;
            }
            s.set(v, false);
        };
    recurse(recurse, 0);
    return count;
}

vector<State> initial_states(const ConformantProblem &P, size_t cap) {
    vector<State> result;
    for_each_initial_state(P, cap, [&](const State &s) {
            result.push_back(s);
            return true;
        });
    return result;
}

namespace {
struct PlanRunner {
    const ConformantProblem &P;
    vector<int> steps;

    PlanRunner(const ConformantProblem &P, const Plan &plan)
        : P(P), steps(resolve_plan(P.actions, plan)) {
    }

    // Successors of s under action a: one per combination of nondeterministic
    // outcomes whose condition holds. Returns false on conflicting effects.
    bool successors(const State &s, const Action &a, vector<State> &out) const {
        vector<Literal> adds;
        for (const Rule &r : a.rules)
            if (s.holds_all(r.condition))
                adds.push_back(r.effect);
        vector<const NondetEffect *> active;
        for (const NondetEffect &e : a.nondet)
            if (s.holds_all(e.condition))
                active.push_back(&e);
        vector<size_t> choice(active.size(), 0);
        while (true) {
            vector<Literal> all = adds;
            for (size_t i = 0; i < active.size(); ++i) {
                const LiteralSet &o = active[i]->outcomes[choice[i]];
                all.insert(all.end(), o.begin(), o.end());
            }
            normalize(all);
            if (has_complementary_pair(all))
                return false;
            State next = s;
            for (Literal lit : all)
                next.make_true(lit);
            out.push_back(move(next));
            size_t i = 0;
            while (i < active.size() && ++choice[i] == active[i]->outcomes.size())
                choice[i++] = 0;
            if (i == active.size())
                break;
        }
        return true;
    }

    // Runs the plan from s over every branch; fills verdict on failure.
    bool run(const State &s, Verdict &v) const {
        vector<State> frontier{s};
        for (size_t i = 0; i < steps.size(); ++i) {
            const Action &a = P.actions[steps[i]];
            vector<State> next;
            for (const State &x : frontier) {
                if (!x.holds_all(a.preconditions)) {
                    v.failed_step = static_cast<int>(i);
                    v.reason = "precondition of " + a.name + " fails";
                    return false;
                }
                if (!successors(x, a, next)) {
                    v.failed_step = static_cast<int>(i);
                    v.reason = a.name + " has conflicting effects";
                    return false;
                }
            }
            sort(next.begin(), next.end());
            next.erase(unique(next.begin(), next.end()), next.end());
            frontier = move(next);
        }
        for (const State &x : frontier)
            if (!x.holds_all(P.goal) || !satisfies_clauses(x, P.goal_clauses)) {
                v.reason = "goal not achieved";
                return false;
            }
        return true;
    }
};
}

Verdict check_on_states(const ConformantProblem &P, const Plan &plan,
                        const vector<State> &states) {
    PlanRunner runner(P, plan);
    Verdict v;
    for (const State &s : states) {
        ++v.states_checked;
        if (!runner.run(s, v)) {
            v.conformant = false;
            v.counterexample = s;
            return v;
        }
    }
    return v;
}

Verdict conformant_check(const ConformantProblem &P, const Plan &plan, size_t cap) {
    PlanRunner runner(P, plan);
    Verdict v;
    for_each_initial_state(P, cap, [&](const State &s) {
            ++v.states_checked;
            if (!runner.run(s, v)) {
                v.conformant = false;
                v.counterexample = s;
                return false;
            }
            return true;
        });
    return v;
}

ZeroApproxVerdict zero_approx_run(const ConformantProblem &P, const Plan &plan) {
    vector<int> steps = resolve_plan(P.actions, plan);
    PICNF pi = prime_implicates(P.num_fluents(), P.init);
    ZeroApproxVerdict verdict;
    ThreeValuedState b;
    b.values.assign(P.num_fluents(), -1);
    for (Literal u : pi.units())
        b.values[u.fluent()] = u.positive() ? 1 : 0;
    for (size_t i = 0; i < steps.size(); ++i) {
        const Action &a = P.actions[steps[i]];
        for (Literal pre : a.preconditions)
            if (!b.holds(pre)) {
                verdict.failed_step = static_cast<int>(i);
                verdict.reason = "precondition of " + a.name + " not known";
                verdict.final = b;
                return verdict;
            }
        auto true_next = [&](Literal lit) {
                for (const Rule &r : a.rules)
                    if (r.effect == lit &&
                        all_of(r.condition.begin(), r.condition.end(),
                               [&](Literal c) {return b.holds(c);}))
                        return true;
                if (!b.holds(lit))
                    return false;
                for (const Rule &r : a.rules)
                    if (r.effect == ~lit &&
                        none_of(r.condition.begin(), r.condition.end(),
                                [&](Literal c) {return b.holds(~c);}))
                        return false;
                return true;
            };
        ThreeValuedState next;
        next.values.assign(P.num_fluents(), -1);
        for (int f = 0; f < P.num_fluents(); ++f) {
            bool t = true_next(Literal::pos(f));
            bool fl = true_next(Literal::neg(f));
            if (t && fl) {
                verdict.failed_step = static_cast<int>(i);
                verdict.reason = a.name + " makes a fluent both true and false";
                verdict.final = b;
                return verdict;
            }
            next.values[f] = t ? 1 : (fl ? 0 : -1);
        }
        b = move(next);
    }
    verdict.final = b;
    verdict.valid = all_of(P.goal.begin(), P.goal.end(), [&](Literal g) {return b.holds(g);});
    if (!verdict.valid)
        verdict.reason = "goal not known";
    return verdict;
}

namespace {
using Belief = vector<State>;

struct BeliefHash {
    size_t operator()(const Belief &b) const {
        size_t h = b.size();
        for (const State &s : b)
            h = h * 1000003u ^ s.hash();
        return h;
    }
};
}

optional<Plan> belief_bfs(const ConformantProblem &P, int depth_cap, size_t cap, size_t node_cap) {
    Belief init = initial_states(P, cap);
    sort(init.begin(), init.end());
    struct Entry {
        int parent;
        int action;
        int depth;
    };
    vector<Entry> entries;
    vector<Belief> beliefs;
    unordered_map<Belief, int, BeliefHash> seen;
    deque<int> queue;
    auto goal = [&](const Belief &b) {
            for (const State &s : b)
                if (!s.holds_all(P.goal) || !satisfies_clauses(s, P.goal_clauses))
                    return false;
            return true;
        };
    auto plan_of = [&](int id) {
            vector<int> acts;
            for (; entries[id].parent >= 0; id = entries[id].parent)
                acts.insert(acts.begin(), entries[id].action);
            Plan plan;
            for (int a : acts)
                plan.push_back(P.actions[a].name);
            return plan;
        };
    entries.push_back({-1, -1, 0});
    beliefs.push_back(init);
    seen.emplace(init, 0);
    queue.push_back(0);
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (goal(beliefs[id]))
            return plan_of(id);
        if (entries[id].depth >= depth_cap)
            continue;
        for (size_t ai = 0; ai < P.actions.size(); ++ai) {
            const Action &a = P.actions[ai];
            Belief next;
            bool ok = true;
            for (const State &s : beliefs[id]) {
                State t;
                if (!s.holds_all(a.preconditions) || !apply_checked(s, a, t)) {
                    ok = false;
                    break;
                }
                next.push_back(move(t));
            }
            if (!ok)
                continue;
            sort(next.begin(), next.end());
            next.erase(unique(next.begin(), next.end()), next.end());
            if (seen.count(next))
                continue;
            if (beliefs.size() >= node_cap)
                return nullopt;
            int nid = static_cast<int>(beliefs.size());
            seen.emplace(next, nid);
            beliefs.push_back(move(next));
            entries.push_back({id, static_cast<int>(ai), entries[id].depth + 1});
            queue.push_back(nid);
        }
    }
    return nullopt;
}

LiteralSet rel_state(const State &s, Literal lit, const RelevanceGraph &R) {
    LiteralSet result;
    for (int f = 0; f < s.size(); ++f) {
        Literal x(f, s.value(f));
        if (R.relevant(x, lit))
            result.push_back(x);
    }
    return result;
}

Basis build_basis(const Analysis &A, const TranslationSpec &spec) {
    const ConformantProblem &P = *A.problem;
    Basis basis;
    map<State, int> index;
    for (Literal lit : precondition_and_goal_literals(P)) {
        RelevantClauseSet rc = A.relevant(lit);
        vector<Tag> tags;
        if (rc.clauses.empty()) {
            tags.push_back(Tag());
        } else {
            bool found = false;
            for (const Merge &m : spec.merges)
                if (m.target == lit && satisfies(m.tags, rc.clauses, A.pi)) {
                    tags = m.tags;
                    found = true;
                    break;
                }
            if (!found)
                throw BasisStateNotFound("no covering merge for " + P.literal_name(lit));
        }
        LiteralSet relevant = A.rel.relevant_to(lit);
        for (const Tag &t : tags) {
            LiteralSet cl = closure(A.pi, t);
            LiteralSet forced = t;
            for (Literal x : relevant)
                if (!contains(cl, x))
                    forced.push_back(~x);
            normalize(forced);
            optional<State> chosen;
            if (!has_complementary_pair(forced))
                for_each_initial_state(P, SIZE_MAX, [&](const State &s) {
                        chosen = s;
                        return false;
                    }, forced);
            if (!chosen)
                throw BasisStateNotFound("no initial state for " + P.literal_name(lit) +
                                         " under {" + literals_to_string(t, P.fluents) + "}");
            auto [it, inserted] = index.emplace(*chosen, static_cast<int>(basis.states.size()));
            if (inserted)
                basis.states.push_back(*chosen);
            basis.provenance.push_back({lit, t, it->second});
        }
    }
    return basis;
}
}
