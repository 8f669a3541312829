#include "conformant/translate.h"

#include "conformant/errors.h"

#include <algorithm>

using namespace std;

namespace conformant {
ConformantProblem cnf_goal_compile(const ConformantProblem &P) {
    ConformantProblem Q = P;
    Q.goal_clauses.clear();
    int counter = 0;
    for (Clause c : P.goal_clauses) {
        normalize(c);
        if (c.empty())
            throw InvalidParameters("empty goal clause");
        if (c.size() == 1 || has_complementary_pair(c)) {
            if (c.size() == 1)
                Q.goal.push_back(c[0]);
            continue;
        }
        ++counter;
        string suffix = to_string(counter);
        int achieved = Q.num_fluents();
        Q.fluents.push_back("goal-clause-" + suffix);
        int enabled = Q.num_fluents();
        Q.fluents.push_back("goal-enabled-" + suffix);
        Q.init.push_back({Literal::neg(achieved)});
        Q.init.push_back({Literal::pos(enabled)});
        Action a;
        a.name = "achieve-goal-clause-" + suffix;
        a.preconditions = {Literal::pos(enabled)};
        a.rules.push_back({{}, Literal::neg(enabled)});
        for (Literal lit : c)
            a.rules.push_back({{lit}, Literal::pos(achieved)});
        Q.actions.push_back(a);
        Q.goal.push_back(Literal::pos(achieved));
    }
    normalize(Q.goal);
    return Q;
}

NondetCompilation nondet_compile(const ConformantProblem &P, int copies) {
    if (copies < 1)
        throw InvalidParameters("copies must be at least 1");
    NondetCompilation N;
    N.problem = P;
    N.problem.actions.clear();
    auto new_fluent = [&](const string &name, bool hidden) {
            int id = N.problem.num_fluents();
            N.problem.fluents.push_back(name);
            N.hidden.push_back(hidden);
            return id;
        };
    N.hidden.assign(P.num_fluents(), false);
    vector<Action> resets;
    for (const Action &a : P.actions) {
        if (a.nondet.empty()) {
            N.problem.actions.push_back(a);
            continue;
        }
        for (int k = 1; k <= copies; ++k) {
            Action copy;
            copy.name = a.name + "_" + to_string(k);
            copy.rules = a.rules;
            int enabled = new_fluent("enabled(" + copy.name + ")", false);
            N.problem.init.push_back({Literal::pos(enabled)});
            copy.preconditions = set_union(a.preconditions, {Literal::pos(enabled)});
            vector<int> hidden;
            for (size_t j = 0; j < a.nondet.size(); ++j) {
                const NondetEffect &e = a.nondet[j];
                vector<int> h;
                for (size_t i = 0; i < e.outcomes.size(); ++i)
                    h.push_back(new_fluent("h" + to_string(j + 1) + "-" + to_string(i + 1) +
                                           "(" + copy.name + ")", true));
                Clause some;
                for (int x : h)
                    some.push_back(Literal::pos(x));
                N.problem.init.push_back(some);
                for (size_t x = 0; x < h.size(); ++x)
                    for (size_t y = x + 1; y < h.size(); ++y)
                        N.problem.init.push_back({Literal::neg(h[x]), Literal::neg(h[y])});
                for (size_t i = 0; i < e.outcomes.size(); ++i)
                    for (Literal lit : e.outcomes[i])
                        copy.rules.push_back({set_union(e.condition, {Literal::pos(h[i])}), lit});
                hidden.insert(hidden.end(), h.begin(), h.end());
            }
            copy.rules.push_back({{}, Literal::neg(enabled)});
            N.origin[copy.name] = a.name;
            N.problem.actions.push_back(copy);

            Action reset;
            reset.name = "reset_" + copy.name;
            reset.kind = ActionKind::Reset;
            reset.rules.push_back({{}, Literal::pos(enabled)});
            N.reset_hidden[reset.name] = hidden;
            resets.push_back(reset);
        }
    }
    N.problem.actions.insert(N.problem.actions.end(), resets.begin(), resets.end());
    return N;
}

void inject_resets(Translation &K, const NondetCompilation &N) {
    for (Action &a : K.problem.actions) {
        if (a.kind != ActionKind::Reset)
            continue;
        auto it = N.reset_hidden.find(a.name);
        if (it == N.reset_hidden.end())
            continue;
        const vector<int> &hidden = it->second;
        for (size_t id = 0; id < K.atoms.size(); ++id) {
            const TaggedAtom &ta = K.atoms[id];
            if (ta.tag == 0 || N.hidden[ta.base.fluent()])
                continue;
            const Tag &t = K.spec.tags[ta.tag];
            bool mentions = any_of(t.begin(), t.end(), [&](Literal x) {
                    return find(hidden.begin(), hidden.end(), x.fluent()) != hidden.end();
                });
            if (!mentions)
                continue;
            Literal tagged = Literal::pos(static_cast<int>(id));
            if (auto base = K.atom(ta.base, 0)) {
                a.rules.push_back({{Literal::pos(*base)}, tagged});
                a.rules.push_back({{Literal::neg(*base)}, ~tagged});
            } else {
                a.rules.push_back({{}, ~tagged});
            }
        }
    }
}
}
