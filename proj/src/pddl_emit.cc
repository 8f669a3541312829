#include "conformant/pddl.h"

#include "conformant/errors.h"
#include "conformant/translate.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

using namespace std;

namespace conformant {
namespace {
vector<string> unique_names(const vector<string> &raw) {
    vector<string> result;
    set<string> used;
    for (const string &name : raw) {
        string base = sanitize_name(name);
        transform(base.begin(), base.end(), base.begin(),
                  [](unsigned char c) {return static_cast<char>(tolower(c));});
        string candidate = base;
        for (int k = 2; used.count(candidate); ++k)
            candidate = base + "_" + to_string(k);
        used.insert(candidate);
        result.push_back(candidate);
    }
    return result;
}

string atom_text(Literal lit, const vector<string> &names) {
    string atom = "(" + names[lit.fluent()] + ")";
    return lit.positive() ? atom : "(not " + atom + ")";
}

string conjunction(const LiteralSet &lits, const vector<string> &names) {
    if (lits.size() == 1)
        return atom_text(lits[0], names);
    string s = "(and";
    for (Literal lit : lits)
        s += " " + atom_text(lit, names);
    return s + ")";
}
}

EmittedPddl emit_classical(const ClassicalProblem &K) {
    EmittedPddl out;
    out.fluent_names = unique_names(K.fluents);
    vector<string> action_raw;
    for (const Action &a : K.actions)
        action_raw.push_back(a.name);
    out.action_names = unique_names(action_raw);
    string name = unique_names({K.name.empty() ? "problem" : K.name})[0];

    ostringstream d;
    d << "(define (domain " << name << "-domain)\n"
      << "  (:requirements :strips :conditional-effects :negative-preconditions)\n"
      << "  (:predicates";
    for (const string &f : out.fluent_names)
        d << "\n    (" << f << ")";
    d << ")\n";
    for (size_t i = 0; i < K.actions.size(); ++i) {
        const Action &a = K.actions[i];
        d << "\n  (:action " << out.action_names[i] << "\n"
          << "    :parameters ()\n";
        if (!a.preconditions.empty())
            d << "    :precondition " << conjunction(a.preconditions, out.fluent_names) << "\n";
        map<LiteralSet, LiteralSet> by_condition;
        for (const Rule &r : a.rules)
            by_condition[r.condition].push_back(r.effect);
        d << "    :effect (and";
        for (auto &[cond, effects] : by_condition) {
            normalize(effects);
            if (cond.empty()) {
                for (Literal e : effects)
                    d << "\n      " << atom_text(e, out.fluent_names);
            } else {
                d << "\n      (when " << conjunction(cond, out.fluent_names) << " "
                  << conjunction(effects, out.fluent_names) << ")";
            }
        }
        d << "))\n";
    }
    d << ")\n";
    out.domain = d.str();

    ostringstream p;
    p << "(define (problem " << name << ")\n"
      << "  (:domain " << name << "-domain)\n"
      << "  (:init";
    for (Literal lit : K.init)
        if (lit.positive())
            p << "\n    " << atom_text(lit, out.fluent_names);
    p << ")\n  (:goal (and";
    for (Literal g : K.goal)
        p << "\n    " << atom_text(g, out.fluent_names);
    p << ")))\n";
    out.problem = p.str();
    return out;
}

ClassicalProblem to_classical(const ConformantProblem &P) {
    if (!P.is_deterministic())
        throw InvalidParameters("problem has nondeterministic effects");
    if (!P.goal_clauses.empty())
        throw InvalidParameters("problem has disjunctive goals");
    vector<signed char> value(P.num_fluents(), -1);
    for (const Clause &c : P.init) {
        if (c.size() != 1)
            throw InvalidParameters("initial state is not fully known");
        value[c[0].fluent()] = c[0].positive();
    }
    ClassicalProblem K;
    K.name = P.name;
    K.fluents = P.fluents;
    for (int f = 0; f < P.num_fluents(); ++f) {
        if (value[f] < 0)
            throw InvalidParameters("fluent " + P.fluents[f] + " is not initially known");
        if (value[f])
            K.init.push_back(Literal::pos(f));
    }
    K.actions = P.actions;
    K.goal = P.goal;
    return K;
}
}
