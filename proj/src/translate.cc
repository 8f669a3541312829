#include "conformant/translate.h"

#include "conformant/errors.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <unordered_set>

using namespace std;

namespace conformant {
string sanitize_name(const string &name) {
    string result;
    for (char c : name) {
        if (isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
            result += c;
        else if (c == '(' || c == ',' || c == ' ')
            result += '-';
        else if (c == ')')
            continue;
        else
            result += '_';
    }
    if (result.empty() || !isalpha(static_cast<unsigned char>(result[0])))
        result = "f" + result;
    return result;
}

string literal_token(Literal lit, const vector<string> &names) {
    string base = sanitize_name(names[lit.fluent()]);
    return lit.positive() ? base : "not-" + base;
}

bool is_reasoning_step_name(const string &name) {
    return name.rfind("merge_", 0) == 0 || name.rfind("reset_", 0) == 0 ||
           name == "static-disjunctions";
}

static bool tag_less(const Tag &a, const Tag &b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

int TranslationSpec::tag_index(const Tag &t) const {
    auto it = lower_bound(tags.begin(), tags.end(), t, tag_less);
    if (it == tags.end() || *it != t)
        return -1;
    return static_cast<int>(it - tags.begin());
}

void TranslationSpec::canonicalize() {
    for (Merge &m : merges) {
        for (Tag &t : m.tags)
            normalize(t);
        sort(m.tags.begin(), m.tags.end(), tag_less);
        m.tags.erase(unique(m.tags.begin(), m.tags.end()), m.tags.end());
        tags.insert(tags.end(), m.tags.begin(), m.tags.end());
    }
    for (Tag &t : tags)
        normalize(t);
    tags.push_back(Tag());
    sort(tags.begin(), tags.end(), tag_less);
    tags.erase(unique(tags.begin(), tags.end()), tags.end());
    stable_sort(merges.begin(), merges.end(), [](const Merge &a, const Merge &b) {
            if (a.target != b.target)
                return a.target < b.target;
            return lexicographical_compare(a.tags.begin(), a.tags.end(),
                                           b.tags.begin(), b.tags.end(), tag_less);
        });
    merges.erase(unique(merges.begin(), merges.end()), merges.end());
}

TranslationSpec make_spec(const string &scheme, const vector<Merge> &merges,
                          const vector<Tag> &extra_tags) {
    TranslationSpec spec;
    spec.scheme = scheme;
    spec.merges = merges;
    spec.tags = extra_tags;
    spec.canonicalize();
    return spec;
}

TranslateOptions TranslateOptions::optimized() {
    TranslateOptions o;
    o.collapse_irrelevant_tags = true;
    o.drop_unused_rules = true;
    o.group_decided = true;
    o.action_compilation = true;
    o.static_disjunctions = true;
    return o;
}

optional<int> Translation::atom(Literal base, int tag) const {
    if (tag < 0)
        return nullopt;
    auto it = atom_ids.find(key(base, tag));
    if (it == atom_ids.end())
        return nullopt;
    return it->second;
}

optional<int> Translation::atom(Literal base, const Tag &t) const {
    return atom(base, spec.tag_index(normalized(t)));
}

string Translation::display(int fluent, const vector<string> &names) const {
    const TaggedAtom &a = atoms[fluent];
    string result = "K" + literal_to_string(a.base, names);
    if (a.tag != 0)
        result += "/" + literals_to_string(spec.tags[a.tag], names, ",");
    return result;
}

namespace {
struct KLit {
    long long key;
    bool positive;
    bool operator==(const KLit &) const = default;
    auto operator<=>(const KLit &) const = default;
};

struct KRule {
    vector<KLit> condition;
    KLit effect;
    bool operator==(const KRule &) const = default;
    auto operator<=>(const KRule &) const = default;
};

struct KAction {
    string name;
    vector<KLit> preconditions;
    vector<KRule> rules;
    ActionKind kind;
    set<KRule> seen;

    void add(KRule r) {
        sort(r.condition.begin(), r.condition.end());
        r.condition.erase(unique(r.condition.begin(), r.condition.end()), r.condition.end());
        if (seen.insert(r).second)
            rules.push_back(move(r));
    }
};

class Builder {
    const Analysis &A;
    const ConformantProblem &P;
    const TranslationSpec &spec;
    const TranslateOptions &opts;
    int num_literals;
    int num_tags;
    vector<LiteralSet> closures;
    vector<LiteralSet> merged_through;
    // lazily filled caches over (tag, literal code): -1 unknown, 0/1 value
    vector<signed char> has_relevant_cache;
    vector<signed char> decided_cache;

    bool has_relevant(int tag, Literal lit) {
        signed char &c = has_relevant_cache[tag * num_literals + lit.code()];
        if (c < 0) {
            c = 0;
            for (Literal x : closures[tag])
                if (A.rel.relevant(x, lit)) {
                    c = 1;
                    break;
                }
        }
        return c;
    }

    bool decided(int tag, Literal lit) {
        signed char &c = decided_cache[tag * num_literals + lit.code()];
        if (c < 0) {
            c = 1;
            for (int code = 0; code < num_literals; ++code) {
                Literal x = Literal::from_code(code);
                if (A.rel.relevant(x, lit) && !contains(closures[tag], x) &&
                    !contains(closures[tag], ~x)) {
                    c = 0;
                    break;
                }
            }
        }
        return c;
    }

    bool feeds_merge(int tag, Literal lit) const {
        for (Literal target : merged_through[tag])
            if (A.rel.relevant(lit, target))
                return true;
        return false;
    }

public:
    Builder(const Analysis &A, const TranslationSpec &spec, const TranslateOptions &opts)
        : A(A), P(*A.problem), spec(spec), opts(opts),
          num_literals(2 * A.problem->num_fluents()),
          num_tags(static_cast<int>(spec.tags.size())),
          closures(num_tags), merged_through(num_tags),
          has_relevant_cache(static_cast<size_t>(num_tags) * num_literals, -1),
          decided_cache(static_cast<size_t>(num_tags) * num_literals, -1) {
        for (int t = 0; t < num_tags; ++t)
            closures[t] = closure(A.pi, spec.tags[t]);
        for (const Merge &m : spec.merges)
            for (const Tag &t : m.tags)
                merged_through[spec.tag_index(t)].push_back(m.target);
        for (LiteralSet &s : merged_through)
            normalize(s);
    }

    int mapped_tag(Literal lit, int tag) {
        if (opts.collapse_irrelevant_tags && tag != 0 && !has_relevant(tag, lit))
            return 0;
        return tag;
    }

    long long key(Literal lit, int tag) {
        return static_cast<long long>(mapped_tag(lit, tag)) * num_literals + lit.code();
    }

    KLit k(Literal lit, int tag, bool positive = true) {
        return {key(lit, tag), positive};
    }

    void translate_action(const Action &a, KAction &out) {
        out.name = a.name;
        out.kind = a.kind;
        for (Literal pre : a.preconditions)
            out.preconditions.push_back(k(pre, 0));
        sort(out.preconditions.begin(), out.preconditions.end());
        for (const Rule &r : a.rules) {
            for (int t = 0; t < num_tags; ++t) {
                bool support = true;
                bool cancellation = true;
                if (t != 0 && opts.collapse_irrelevant_tags) {
                    // Collapsed heads duplicate the untagged rule.
                    support = mapped_tag(r.effect, t) != 0;
                    cancellation = mapped_tag(~r.effect, t) != 0;
                }
                if (t != 0 && opts.drop_unused_rules) {
                    support = support && feeds_merge(t, r.effect);
                    cancellation = cancellation && feeds_merge(t, ~r.effect);
                }
                if (support) {
                    KRule kr;
                    for (Literal c : r.condition)
                        kr.condition.push_back(k(c, t));
                    kr.effect = k(r.effect, t);
                    out.add(kr);
                }
                if (cancellation) {
                    KRule kr;
                    bool grouped = opts.group_decided && decided(t, r.effect);
                    for (Literal c : r.condition)
                        kr.condition.push_back(grouped ? k(c, t) : k(~c, t, false));
                    kr.effect = k(~r.effect, t, false);
                    out.add(kr);
                }
            }
        }
        if (opts.action_compilation) {
            for (const Rule &r : a.rules) {
                Literal lit = r.effect;
                if (!contains(r.condition, ~lit))
                    continue;
                bool deletes = any_of(a.rules.begin(), a.rules.end(),
                                      [&](const Rule &q) {return q.effect == ~lit;});
                if (deletes)
                    continue;
                KRule kr;
                for (Literal c : r.condition)
                    if (c != ~lit)
                        kr.condition.push_back(k(c, 0));
                kr.effect = k(lit, 0);
                out.add(kr);
            }
        }
    }

    void merge_action(const Merge &m, const MutexSet *R, const vector<string> &names,
                      int rank, KAction &out) {
        out.kind = ActionKind::Merge;
        string tags;
        for (size_t i = 0; i < m.tags.size(); ++i) {
            if (i)
                tags += "__or__";
            if (m.tags[i].empty())
                tags += "true";
            for (size_t j = 0; j < m.tags[i].size(); ++j) {
                if (j)
                    tags += "_and_";
                tags += literal_token(m.tags[i][j], names);
            }
        }
        out.name = "merge_" + literal_token(m.target, names) + "__";
        out.name += tags.size() <= 160 ? tags : "m" + to_string(rank);
        vector<KLit> cond;
        for (const Tag &t : m.tags)
            cond.push_back(k(m.target, spec.tag_index(t)));
        out.add({cond, k(m.target, 0)});
        if (R)
            for (Literal other : R->mutex_with(m.target))
                if (other != ~m.target)
                    out.add({cond, k(~other, 0)});
    }

    void static_disjunctions(KAction &out) {
        out.name = "static-disjunctions";
        out.kind = ActionKind::Deduction;
        vector<bool> made_true(num_literals, false);
        for (const Action &a : P.actions) {
            for (const Rule &r : a.rules)
                made_true[r.effect.code()] = true;
            for (const NondetEffect &e : a.nondet)
                for (const LiteralSet &o : e.outcomes)
                    for (Literal lit : o)
                        made_true[lit.code()] = true;
        }
        for (const Clause &c : A.pi.clauses()) {
            if (c.size() < 2)
                continue;
            bool is_static = none_of(c.begin(), c.end(),
                                     [&](Literal x) {return made_true[(~x).code()];});
            if (!is_static)
                continue;
            for (size_t i = 0; i < c.size(); ++i) {
                KRule kr;
                for (size_t j = 0; j < c.size(); ++j)
                    if (j != i)
                        kr.condition.push_back(k(~c[j], 0));
                kr.effect = k(c[i], 0);
                out.add(kr);
            }
        }
    }

    const LiteralSet &closure_of(int tag) const {return closures[tag];}
};
}

Translation ktm(const Analysis &A, const TranslationSpec &spec_in, const TranslateOptions &opts) {
    const ConformantProblem &P = *A.problem;
    if (!P.is_deterministic())
        throw InvalidSpec("nondeterministic effects must be compiled before translation");
    if (!P.goal_clauses.empty())
        throw InvalidSpec("clause goals must be compiled before translation");
    TranslationSpec spec = spec_in;
    spec.canonicalize();
    if (opts.check_spec) {
        for (const Tag &t : spec.tags)
            if (!tag_consistent(A.pi, t))
                throw InvalidSpec("inconsistent tag {" + literals_to_string(t, P.fluents) + "}");
        for (const Merge &m : spec.merges) {
            bool valid = false;
            try {
                valid = merge_valid(A.pi, m, opts.model_cap);
            } catch (const ValidityUndecidedAtCap &e) {
                throw InvalidSpec(string("merge rejected: ") + e.what());
            }
            if (!valid)
                throw InvalidSpec("invalid merge for " + P.literal_name(m.target));
        }
    }

    Builder builder(A, spec, opts);
    int num_literals = 2 * P.num_fluents();
    int num_tags = static_cast<int>(spec.tags.size());

    vector<KAction> kactions;
    for (const Action &a : P.actions) {
        kactions.emplace_back();
        builder.translate_action(a, kactions.back());
    }
    unique_ptr<MutexSet> R;
    if (opts.mutex_effects)
        R = make_unique<MutexSet>(mutex_set(P, A.pi, opts.strengthened_mutex));
    map<Literal, int> rank;
    for (const Merge &m : spec.merges) {
        kactions.emplace_back();
        builder.merge_action(m, R.get(), P.fluents, rank[m.target]++, kactions.back());
    }
    if (opts.static_disjunctions) {
        KAction sd;
        builder.static_disjunctions(sd);
        if (!sd.rules.empty())
            kactions.push_back(move(sd));
    }
    vector<long long> goal_keys;
    for (Literal g : P.goal)
        goal_keys.push_back(builder.key(g, 0));

    // Atom universe: every KL/t, or only referenced atoms when optimizing.
    set<long long> keys;
    bool pruned = opts.collapse_irrelevant_tags || opts.drop_unused_rules;
    if (!pruned) {
        for (int t = 0; t < num_tags; ++t)
            for (int c = 0; c < num_literals; ++c)
                keys.insert(static_cast<long long>(t) * num_literals + c);
    } else {
        keys.insert(goal_keys.begin(), goal_keys.end());
        for (const KAction &ka : kactions) {
            for (const KLit &l : ka.preconditions)
                keys.insert(l.key);
            for (const KRule &r : ka.rules) {
                keys.insert(r.effect.key);
                for (const KLit &l : r.condition)
                    keys.insert(l.key);
            }
        }
    }

    Translation K;
    K.spec = spec;
    K.base_fluents = P.num_fluents();
    K.problem.name = P.name + "-" + spec.scheme;
    set<string> used_names;
    for (long long key : keys) {
        int tag = static_cast<int>(key / num_literals);
        Literal lit = Literal::from_code(static_cast<int>(key % num_literals));
        int id = static_cast<int>(K.atoms.size());
        K.atoms.push_back({lit, tag});
        K.atom_ids[key] = id;
        string name = "K" + literal_token(lit, P.fluents);
        for (Literal x : spec.tags[tag])
            name += "__" + literal_token(x, P.fluents);
        string unique_name = name;
        for (int suffix = 1; !used_names.insert(unique_name).second; ++suffix)
            unique_name = name + "_" + to_string(suffix);
        K.problem.fluents.push_back(unique_name);
        if (contains(builder.closure_of(tag), lit))
            K.problem.init.push_back(Literal::pos(id));
    }
    auto to_lit = [&](const KLit &l) {
            return Literal(K.atom_ids.at(l.key), l.positive);
        };
    set<string> action_names;
    for (KAction &ka : kactions) {
        Action a;
        a.name = ka.name;
        for (int suffix = 1; !action_names.insert(a.name).second; ++suffix)
            a.name = ka.name + "_" + to_string(suffix);
        a.kind = ka.kind;
        for (const KLit &l : ka.preconditions)
            a.preconditions.push_back(to_lit(l));
        normalize(a.preconditions);
        for (const KRule &r : ka.rules) {
            Rule rule;
            for (const KLit &l : r.condition)
                rule.condition.push_back(to_lit(l));
            normalize(rule.condition);
            rule.effect = to_lit(r.effect);
            a.rules.push_back(rule);
        }
        K.problem.actions.push_back(move(a));
    }
    for (long long key : goal_keys)
        K.problem.goal.push_back(Literal::pos(K.atom_ids.at(key)));
    normalize(K.problem.goal);
    return K;
}

Translation k0(const Analysis &A, const TranslateOptions &opts) {
    return ktm(A, make_spec("k0", {}), opts);
}

Translation optimize(const Translation &K, const Analysis &A) {
    TranslateOptions opts = TranslateOptions::optimized();
    opts.check_spec = false;
    return ktm(A, K.spec, opts);
}
}
