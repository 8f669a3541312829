#include "conformant/prime_implicates.h"

#include "conformant/errors.h"

#include <algorithm>
#include <string>

using namespace std;

namespace conformant {
PICNF::PICNF(int num_fluents, vector<Clause> clauses)
    : num_fluents_(num_fluents), clauses_(move(clauses)),
      occurrences(2 * num_fluents) {
    sort(clauses_.begin(), clauses_.end(), [](const Clause &a, const Clause &b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
    for (size_t i = 0; i < clauses_.size(); ++i)
        for (Literal lit : clauses_[i])
            occurrences[lit.code()].push_back(static_cast<int>(i));
}

bool PICNF::subsumes(const LiteralSet &clause) const {
    for (Literal lit : clause)
        for (int idx : occurrences[lit.code()])
            if (is_subset(clauses_[idx], clause))
                return true;
    return false;
}

bool PICNF::entails_clause(const LiteralSet &clause) const {
    return has_complementary_pair(clause) || subsumes(clause);
}

LiteralSet PICNF::units() const {
    LiteralSet result;
    for (const Clause &c : clauses_)
        if (c.size() == 1)
            result.push_back(c[0]);
    normalize(result);
    return result;
}

namespace {
class ClauseStore {
    vector<Clause> clauses;
    vector<bool> alive;
    size_t live = 0;
    size_t cap;
public:
    explicit ClauseStore(size_t cap) : cap(cap) {}

    // Returns false if the clause was subsumed.
    bool add(const Clause &c) {
        for (size_t i = 0; i < clauses.size(); ++i)
            if (alive[i] && is_subset(clauses[i], c))
                return false;
        for (size_t i = 0; i < clauses.size(); ++i)
            if (alive[i] && is_subset(c, clauses[i])) {
                alive[i] = false;
                --live;
            }
        if (c.empty())
            throw InconsistentInit("initial situation is unsatisfiable");
        clauses.push_back(c);
        alive.push_back(true);
        ++live;
        if (live > cap)
            throw PiBlowup("prime implicates exceed cap of " + to_string(cap));
        return true;
    }

    vector<Clause> collect(Literal lit) const {
        vector<Clause> result;
        for (size_t i = 0; i < clauses.size(); ++i)
            if (alive[i] && contains(clauses[i], lit))
                result.push_back(clauses[i]);
        return result;
    }

    vector<Clause> live_clauses() const {
        vector<Clause> result;
        for (size_t i = 0; i < clauses.size(); ++i)
            if (alive[i])
                result.push_back(clauses[i]);
        return result;
    }
};

Clause resolve(const Clause &with_pos, const Clause &with_neg, int fluent) {
    Clause result;
    for (Literal lit : with_pos)
        if (lit.fluent() != fluent)
            result.push_back(lit);
    for (Literal lit : with_neg)
        if (lit.fluent() != fluent)
            result.push_back(lit);
    normalize(result);
    return result;
}
}

PICNF prime_implicates(int num_fluents, const vector<Clause> &init, size_t cap) {
    ClauseStore store(cap);
    vector<Clause> input;
    for (Clause c : init) {
        normalize(c);
        if (!has_complementary_pair(c))
            input.push_back(c);
    }
    // Short clauses first so subsumed long ones are never stored.
    stable_sort(input.begin(), input.end(),
                [](const Clause &a, const Clause &b) {return a.size() < b.size();});
    for (const Clause &c : input)
        store.add(c);

    for (int v = 0; v < num_fluents; ++v) {
        vector<Clause> pos = store.collect(Literal::pos(v));
        vector<Clause> neg = store.collect(Literal::neg(v));
        vector<Clause> resolvents;
        for (const Clause &p : pos)
            for (const Clause &n : neg) {
                Clause r = resolve(p, n, v);
                if (!has_complementary_pair(r))
                    resolvents.push_back(move(r));
            }
        stable_sort(resolvents.begin(), resolvents.end(),
                    [](const Clause &a, const Clause &b) {return a.size() < b.size();});
        for (const Clause &r : resolvents)
            store.add(r);
    }
    return PICNF(num_fluents, store.live_clauses());
}

bool entails_literal(const PICNF &I, const Tag &t, Literal lit) {
    Clause c = negate_all(t);
    c.push_back(lit);
    normalize(c);
    return I.entails_clause(c);
}

LiteralSet closure(const PICNF &I, const Tag &t) {
    auto everything = [&]() {
            LiteralSet all;
            for (int f = 0; f < I.num_fluents(); ++f) {
                all.push_back(Literal::pos(f));
                all.push_back(Literal::neg(f));
            }
            return all;
        };
    if (has_complementary_pair(t))
        return everything();
    LiteralSet result = t;
    LiteralSet neg_t = negate_all(t);
    for (const Clause &c : I.clauses()) {
        Literal rest;
        int outside = 0;
        for (Literal lit : c)
            if (!contains(neg_t, lit)) {
                rest = lit;
                if (++outside > 1)
                    break;
            }
        if (outside == 0)
            return everything();
        if (outside == 1)
            result.push_back(rest);
    }
    normalize(result);
    return result;
}

bool consistent_with(const PICNF &I, const LiteralSet &lits) {
    return !has_complementary_pair(lits) && !I.subsumes(negate_all(lits));
}

bool tag_consistent(const PICNF &I, const Tag &t) {
    return consistent_with(I, t);
}

vector<LiteralSet> projected_models(const PICNF &I, const vector<int> &fluents, size_t cap) {
    vector<LiteralSet> models;
    vector<int> vars = fluents;
    sort(vars.begin(), vars.end());
    vars.erase(unique(vars.begin(), vars.end()), vars.end());
    LiteralSet current;
    // negated_current[code] marks literals in the complement of the partial assignment
    vector<bool> falsified(2 * I.num_fluents(), false);

    auto newly_violates = [&](Literal assigned) {
            // Clauses containing ~assigned may now lie entirely inside the falsified set.
            for (int idx : I.clauses_with(~assigned)) {
                bool all = true;
                for (Literal l : I.clauses()[idx])
                    if (!falsified[l.code()]) {
                        all = false;
                        break;
                    }
                if (all)
                    return true;
            }
            return false;
        };

    auto recurse = [&](auto &self, size_t depth) -> void {
            if (depth == vars.size()) {
                if (models.size() >= cap)
                    throw TooManyModels("model enumeration exceeds cap of " + to_string(cap));
                models.push_back(normalized(current));
                return;
            }
            int v = vars[depth];
            for (bool value : {true, false}) {
                Literal lit(v, value);
                falsified[(~lit).code()] = true;
                if (!newly_violates(lit)) {
                    current.push_back(lit);
                    self(self, depth + 1);
                    current.pop_back();
                }
                falsified[(~lit).code()] = false;
            }
        };
    // The empty assignment is inconsistent only if I holds the empty clause,
    // which prime_implicates never returns.
    recurse(recurse, 0);
    return models;
}

bool merge_valid(const PICNF &I, const Merge &m, size_t cap) {
    if (m.tags.empty())
        return false;
    vector<int> vars;
    for (const Tag &t : m.tags)
        for (Literal lit : t)
            vars.push_back(lit.fluent());
    vector<LiteralSet> models;
    try {
        models = projected_models(I, vars, cap);
    } catch (const TooManyModels &) {
        throw ValidityUndecidedAtCap("merge validity undecided within " + to_string(cap) + " models");
    }
    for (const LiteralSet &model : models) {
        bool hit = false;
        for (const Tag &t : m.tags)
            if (is_subset(t, model)) {
                hit = true;
                break;
            }
        if (!hit)
            return false;
    }
    return true;
}
}
