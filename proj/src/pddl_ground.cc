#include "conformant/pddl.h"

#include "conformant/errors.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

using namespace std;

namespace conformant {
bool natural_less(const string &a, const string &b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = isdigit(static_cast<unsigned char>(a[i]));
        bool db = isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            size_t ie = i, je = j;
            while (ie < a.size() && isdigit(static_cast<unsigned char>(a[ie])))
                ++ie;
            while (je < b.size() && isdigit(static_cast<unsigned char>(b[je])))
                ++je;
            string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
            na.erase(0, min(na.find_first_not_of('0'), na.size() - 1));
            nb.erase(0, min(nb.find_first_not_of('0'), nb.size() - 1));
            if (na.size() != nb.size())
                return na.size() < nb.size();
            if (na != nb)
                return na < nb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j])
                return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if (a.size() - i != b.size() - j)
        return a.size() - i < b.size() - j;
    return a < b;
}

namespace {
struct GroundLiteral {
    string atom;
    bool negated = false;

    auto operator<=>(const GroundLiteral &) const = default;
};

struct GroundRule {
    vector<GroundLiteral> condition;
    GroundLiteral effect;

    auto operator<=>(const GroundRule &) const = default;
};

struct GroundNondet {
    vector<GroundLiteral> condition;
    vector<vector<GroundLiteral>> outcomes;
};

struct GroundAction {
    string name;
    vector<GroundLiteral> preconditions;
    vector<GroundRule> rules;
    vector<GroundNondet> nondet;
};

using Binding = map<string, string>;

string atom_name(const string &pred, const vector<string> &args) {
    if (args.empty())
        return pred;
    string s = pred + "(";
    for (size_t i = 0; i < args.size(); ++i)
        s += (i ? "," : "") + args[i];
    return s + ")";
}

void collect_effect_predicates(const EffectAst &e, set<string> &out) {
    if (e.kind == EffectAst::Kind::Literal)
        out.insert(e.literal.atom.predicate);
    for (const EffectAst &c : e.children)
        collect_effect_predicates(c, out);
}

bool consistent(vector<GroundLiteral> &lits) {
    sort(lits.begin(), lits.end());
    lits.erase(unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 1; i < lits.size(); ++i)
        if (lits[i].atom == lits[i - 1].atom)
            return false;
    return true;
}

class Grounder {
    const DomainAst &domain;
    const ProblemAst &problem;
    const GroundOptions &options;
    map<string, vector<string>> objects_of_type;
    set<string> static_predicates;
    set<string> init_true;
    size_t instances = 0;

    bool is_subtype(string type, const string &ancestor) const {
        for (int guard = 0; guard < 1000; ++guard) {
            if (type == ancestor)
                return true;
            auto it = domain.types.find(type);
            if (it == domain.types.end() || it->second == type)
                return ancestor == "object";
            type = it->second;
        }
        return false;
    }

    void count(size_t n = 1) {
        instances += n;
        if (instances > options.max_rule_instances)
            throw GroundingBlowup("more than " + to_string(options.max_rule_instances) +
                                  " ground rule instances");
    }

    string resolve(const string &term, const Binding &b) const {
        if (!term.empty() && term[0] == '?') {
            auto it = b.find(term);
            if (it == b.end())
                throw SyntaxError("unbound variable " + term, 0, 0);
            return it->second;
        }
        return term;
    }

    // 1 true, 0 false, -1 not decided at grounding time.
    int evaluate(const LiteralAst &lit, const Binding &b, GroundLiteral &out) const {
        vector<string> args;
        for (const string &t : lit.atom.args)
            args.push_back(resolve(t, b));
        if (lit.atom.predicate == "=")
            return (args[0] == args[1]) != lit.negated;
        out = {atom_name(lit.atom.predicate, args), lit.negated};
        if (options.prune && static_predicates.count(lit.atom.predicate))
            return init_true.count(out.atom) != lit.negated;
        return -1;
    }

    // Conjunction of literals; returns false when it can never hold.
    bool ground_conjunction(const ConditionAst &c, const Binding &b,
                            vector<GroundLiteral> &out) const {
        if (c.kind == ConditionAst::Kind::Or)
            throw UnsupportedFeature("disjunctive preconditions are not supported");
        if (c.kind == ConditionAst::Kind::And) {
            for (const ConditionAst &child : c.children)
                if (!ground_conjunction(child, b, out))
                    return false;
            return true;
        }
        GroundLiteral g;
        int v = evaluate(c.literal, b, g);
        if (v == 0)
            return false;
        if (v < 0)
            out.push_back(g);
        return true;
    }

    void ground_effect(const EffectAst &e, const Binding &b, vector<GroundLiteral> condition,
                       GroundAction &action) {
        switch (e.kind) {
        case EffectAst::Kind::Literal: {
            GroundLiteral g;
            evaluate(e.literal, b, g);
            count();
            action.rules.push_back({condition, g});
            break;
        }
        case EffectAst::Kind::And:
            for (const EffectAst &c : e.children)
                ground_effect(c, b, condition, action);
            break;
        case EffectAst::Kind::When:
            if (!ground_conjunction(e.condition, b, condition))
                return;
            if (options.prune && !consistent(condition))
                return;
            ground_effect(e.children[0], b, condition, action);
            break;
        case EffectAst::Kind::Forall: {
            vector<Binding> bindings = enumerate(e.variables, b);
            for (const Binding &inner : bindings)
                ground_effect(e.children[0], inner, condition, action);
            break;
        }
        case EffectAst::Kind::Oneof: {
            GroundNondet nd;
            nd.condition = condition;
            for (const EffectAst &outcome : e.children) {
                GroundAction tmp;
                ground_effect(outcome, b, {}, tmp);
                if (!tmp.nondet.empty() ||
                    any_of(tmp.rules.begin(), tmp.rules.end(),
                           [](const GroundRule &r) {return !r.condition.empty();}))
                    throw UnsupportedFeature("oneof outcomes must be conjunctions of literals");
                vector<GroundLiteral> lits;
                for (const GroundRule &r : tmp.rules)
                    lits.push_back(r.effect);
                sort(lits.begin(), lits.end());
                lits.erase(unique(lits.begin(), lits.end()), lits.end());
                nd.outcomes.push_back(lits);
            }
            action.nondet.push_back(nd);
            break;
        }
        }
    }

    vector<Binding> enumerate(const vector<TypedName> &vars, const Binding &base) {
        vector<Binding> result{base};
        for (const TypedName &v : vars) {
            const vector<string> &objs = objects_of_type[v.type];
            vector<Binding> next;
            for (const Binding &b : result)
                for (const string &o : objs) {
                    Binding nb = b;
                    nb[v.name] = o;
                    next.push_back(move(nb));
                    if (next.size() > options.max_rule_instances)
                        throw GroundingBlowup("too many parameter bindings");
                }
            result = move(next);
        }
        return result;
    }

public:
    Grounder(const DomainAst &d, const ProblemAst &p, const GroundOptions &o)
        : domain(d), problem(p), options(o) {
        vector<TypedName> all = d.constants;
        all.insert(all.end(), p.objects.begin(), p.objects.end());
        set<string> types{"object"};
        for (const auto &[t, parent] : d.types)
            types.insert(t);
        for (const string &t : types) {
            vector<string> &objs = objects_of_type[t];
            for (const TypedName &obj : all)
                if (is_subtype(obj.type, t))
                    objs.push_back(obj.name);
            sort(objs.begin(), objs.end(), natural_less);
            objs.erase(unique(objs.begin(), objs.end()), objs.end());
        }
        set<string> changing;
        for (const ActionSchema &a : d.actions)
            collect_effect_predicates(a.effect, changing);
        for (const InitEntry &e : p.init)
            if (e.kind != InitEntry::Kind::Literal)
                for (const LiteralAst &m : e.members)
                    changing.insert(m.atom.predicate);
        for (const PredicateAst &pred : d.predicates)
            if (!changing.count(pred.name))
                static_predicates.insert(pred.name);
        for (const InitEntry &e : p.init)
            if (e.kind == InitEntry::Kind::Literal && !e.members[0].negated)
                init_true.insert(atom_name(e.members[0].atom.predicate, e.members[0].atom.args));
    }

    ConformantProblem run() {
        vector<GroundAction> actions;
        for (const ActionSchema &schema : domain.actions) {
            for (const Binding &b : enumerate(schema.parameters, {})) {
                count();
                GroundAction a;
                vector<string> args;
                for (const TypedName &p : schema.parameters)
                    args.push_back(b.at(p.name));
                a.name = atom_name(schema.name, args);
                if (!ground_conjunction(schema.precondition, b, a.preconditions))
                    continue;
                if (!consistent(a.preconditions) && options.prune)
                    continue;
                ground_effect(schema.effect, b, {}, a);
                if (options.prune) {
                    set<GroundLiteral> pre(a.preconditions.begin(), a.preconditions.end());
                    vector<GroundRule> kept;
                    for (GroundRule &r : a.rules) {
                        if (!consistent(r.condition))
                            continue;
                        if (find(r.condition.begin(), r.condition.end(), r.effect) !=
                            r.condition.end())
                            continue;
                        bool contradicts = any_of(r.condition.begin(), r.condition.end(),
                                                  [&](const GroundLiteral &c) {
                                return pre.count({c.atom, !c.negated}) > 0;
                            });
                        if (!contradicts)
                            kept.push_back(move(r));
                    }
                    a.rules = move(kept);
                }
                actions.push_back(move(a));
            }
        }

        set<string> atoms;
        auto note = [&](const vector<GroundLiteral> &lits) {
                for (const GroundLiteral &l : lits)
                    atoms.insert(l.atom);
            };
        for (const GroundAction &a : actions) {
            note(a.preconditions);
            for (const GroundRule &r : a.rules) {
                note(r.condition);
                atoms.insert(r.effect.atom);
            }
            for (const GroundNondet &nd : a.nondet) {
                note(nd.condition);
                for (const auto &o : nd.outcomes)
                    note(o);
            }
        }
        vector<vector<GroundLiteral>> goal_clauses;
        goal_to_clauses(problem.goal, goal_clauses);
        for (const auto &c : goal_clauses)
            note(c);
        for (const InitEntry &e : problem.init)
            if (e.kind != InitEntry::Kind::Literal)
                for (const LiteralAst &m : e.members)
                    atoms.insert(atom_name(m.atom.predicate, m.atom.args));
        if (!options.prune) {
            for (const PredicateAst &pred : domain.predicates) {
                vector<TypedName> params = pred.parameters;
                for (size_t i = 0; i < params.size(); ++i)
                    params[i].name = "?" + to_string(i);
                for (const Binding &b : enumerate(params, {})) {
                    vector<string> args;
                    for (const TypedName &p : params)
                        args.push_back(b.at(p.name));
                    atoms.insert(atom_name(pred.name, args));
                    count();
                }
            }
        }

        ConformantProblem P;
        P.name = problem.name;
        P.fluents.assign(atoms.begin(), atoms.end());
        sort(P.fluents.begin(), P.fluents.end(), natural_less);
        unordered_map<string, int> id;
        for (int i = 0; i < P.num_fluents(); ++i)
            id[P.fluents[i]] = i;
        auto lit = [&](const GroundLiteral &g) {
                return Literal(id.at(g.atom), !g.negated);
            };
        auto lits = [&](const vector<GroundLiteral> &gs) {
                LiteralSet out;
                for (const GroundLiteral &g : gs)
                    out.push_back(lit(g));
                normalize(out);
                return out;
            };

        sort(actions.begin(), actions.end(), [](const GroundAction &a, const GroundAction &b) {
                return natural_less(a.name, b.name);
            });
        for (const GroundAction &ga : actions) {
            Action a;
            a.name = ga.name;
            a.preconditions = lits(ga.preconditions);
            for (const GroundRule &r : ga.rules)
                a.rules.push_back({lits(r.condition), lit(r.effect)});
            sort(a.rules.begin(), a.rules.end());
            a.rules.erase(unique(a.rules.begin(), a.rules.end()), a.rules.end());
            for (const GroundNondet &nd : ga.nondet) {
                NondetEffect e;
                e.condition = lits(nd.condition);
                for (const auto &o : nd.outcomes)
                    e.outcomes.push_back(lits(o));
                a.nondet.push_back(e);
            }
            P.actions.push_back(move(a));
        }

        vector<signed char> status(P.num_fluents(), -1);   // 1 true, 0 false, 2 uncertain
        for (const InitEntry &e : problem.init) {
            if (e.kind == InitEntry::Kind::Literal)
                continue;
            for (const LiteralAst &m : e.members) {
                auto it = id.find(atom_name(m.atom.predicate, m.atom.args));
                if (it != id.end())
                    status[it->second] = 2;
            }
        }
        vector<Clause> clauses;
        for (const InitEntry &e : problem.init) {
            vector<GroundLiteral> members;
            for (const LiteralAst &m : e.members)
                members.push_back({atom_name(m.atom.predicate, m.atom.args), m.negated});
            switch (e.kind) {
            case InitEntry::Kind::Literal: {
                auto it = id.find(members[0].atom);
                if (it == id.end())
                    break;
                clauses.push_back({lit(members[0])});
                if (status[it->second] != 2)
                    status[it->second] = members[0].negated ? 0 : 1;
                break;
            }
            case InitEntry::Kind::Or:
                clauses.push_back(lits(members));
                break;
            case InitEntry::Kind::Oneof: {
                LiteralSet all = lits(members);
                clauses.push_back(all);
                for (size_t i = 0; i < all.size(); ++i)
                    for (size_t j = i + 1; j < all.size(); ++j)
                        clauses.push_back(normalized({~all[i], ~all[j]}));
                break;
            }
            case InitEntry::Kind::Unknown:
                break;
            }
        }
        for (int f = 0; f < P.num_fluents(); ++f)
            if (status[f] == -1)
                clauses.push_back({Literal::neg(f)});
        sort(clauses.begin(), clauses.end());
        clauses.erase(unique(clauses.begin(), clauses.end()), clauses.end());
        P.init = move(clauses);

        for (const auto &c : goal_clauses) {
            LiteralSet l = lits(c);
            if (l.size() == 1)
                P.goal.push_back(l[0]);
            else
                P.goal_clauses.push_back(l);
        }
        normalize(P.goal);
        return P;
    }

    void goal_to_clauses(const ConditionAst &c, vector<vector<GroundLiteral>> &out) const {
        Binding none;
        if (c.kind == ConditionAst::Kind::And) {
            for (const ConditionAst &child : c.children)
                goal_to_clauses(child, out);
            return;
        }
        vector<GroundLiteral> clause;
        auto add = [&](const ConditionAst &lit) {
                if (lit.kind != ConditionAst::Kind::Literal)
                    throw UnsupportedFeature("goals must be conjunctions of clauses");
                vector<string> args;
                for (const string &t : lit.literal.atom.args)
                    args.push_back(resolve(t, none));
                if (lit.literal.atom.predicate == "=")
                    throw UnsupportedFeature("equality in goals is not supported");
                clause.push_back({atom_name(lit.literal.atom.predicate, args),
                                  lit.literal.negated});
            };
        if (c.kind == ConditionAst::Kind::Or)
            for (const ConditionAst &child : c.children)
                add(child);
        else
            add(c);
        out.push_back(clause);
    }
};
}

ConformantProblem ground(const DomainAst &domain, const ProblemAst &problem,
                         const GroundOptions &options) {
    return Grounder(domain, problem, options).run();
}

ConformantProblem load_problem(const string &domain_text, const string &problem_text,
                               const GroundOptions &options) {
    auto [d, p] = parse(domain_text, problem_text);
    return ground(d, p, options);
}
}
