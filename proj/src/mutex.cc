#include "conformant/analysis.h"

#include "conformant/errors.h"

using namespace std;

namespace conformant {
MutexSet::MutexSet(int num_fluents, bool all)
    : num_literals(2 * num_fluents),
      pairs(static_cast<size_t>(num_literals) * num_literals, all) {
    for (int c = 0; c < num_literals; ++c)
        pairs[c * num_literals + c] = false;
}

void MutexSet::set(Literal a, Literal b, bool value) {
    pairs[a.code() * num_literals + b.code()] = value;
    pairs[b.code() * num_literals + a.code()] = value;
}

bool MutexSet::mutex_set(const LiteralSet &lits) const {
    for (size_t i = 0; i < lits.size(); ++i)
        for (size_t j = i + 1; j < lits.size(); ++j)
            if (mutex(lits[i], lits[j]))
                return true;
    return false;
}

LiteralSet MutexSet::mutex_with(Literal lit) const {
    LiteralSet result;
    for (int c = 0; c < num_literals; ++c)
        if (mutex(lit, Literal::from_code(c)))
            result.push_back(Literal::from_code(c));
    return result;
}

vector<pair<Literal, Literal>> MutexSet::pair_list() const {
    vector<pair<Literal, Literal>> result;
    for (int a = 0; a < num_literals; ++a)
        for (int b = a + 1; b < num_literals; ++b)
            if (pairs[a * num_literals + b])
                result.emplace_back(Literal::from_code(a), Literal::from_code(b));
    return result;
}

namespace {
struct FlatRule {
    LiteralSet body;   // Pre(a) u C
    Literal effect;
};

bool mutex_with_literal(const MutexSet &R, const LiteralSet &S, Literal lit) {
    for (Literal x : S)
        if (x != lit && R.mutex(x, lit))
            return true;
    return false;
}

// S implies S' in R: S is mutex with -x for every x in S' \ S.
bool implies(const MutexSet &R, const LiteralSet &S, const LiteralSet &target) {
    for (Literal x : target) {
        if (contains(S, x))
            continue;
        if (!mutex_with_literal(R, S, ~x))
            return false;
    }
    return true;
}
}

MutexSet mutex_set(const ConformantProblem &P, const PICNF &I, bool strengthened) {
    int n = P.num_fluents();
    MutexSet R(n, true);
    // Clause 1: never jointly true initially.
    for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b) {
            Literal la = Literal::from_code(a), lb = Literal::from_code(b);
            if (la == ~lb)
                continue;
            if (consistent_with(I, normalized({la, lb})))
                R.set(la, lb, false);
        }
    // If I is unsatisfiable every pair stays; prime_implicates reports that case.

    vector<vector<FlatRule>> flat(P.actions.size());
    for (size_t i = 0; i < P.actions.size(); ++i)
        for (const Rule &r : P.actions[i].rules)
            flat[i].push_back({set_union(P.actions[i].preconditions, r.condition), r.effect});

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < flat.size(); ++i) {
            const vector<FlatRule> &rules = flat[i];
            // Clause 2: two rules of one action.
            for (size_t x = 0; x < rules.size(); ++x)
                for (size_t y = 0; y < rules.size(); ++y) {
                    if (x == y)
                        continue;
                    Literal l1 = rules[x].effect, l2 = rules[y].effect;
                    if (l1 == l2 || !R.mutex(l1, l2))
                        continue;
                    LiteralSet body = set_union(rules[x].body, rules[y].body);
                    if (!R.mutex_set(body)) {
                        R.set(l1, l2, false);
                        changed = true;
                    }
                }
            // Clause 3: a rule making L true must not break (L, L').
            for (const FlatRule &r : rules) {
                for (int c = 0; c < 2 * n; ++c) {
                    Literal other = Literal::from_code(c);
                    if (other == r.effect || other == ~r.effect || !R.mutex(r.effect, other))
                        continue;
                    if (R.mutex_set(r.body) || mutex_with_literal(R, r.body, other))
                        continue;
                    LiteralSet S = r.body;
                    if (strengthened)
                        S = set_union(S, {other});
                    bool ok = false;
                    for (const FlatRule &q : rules)
                        if (q.effect == ~other && implies(R, S, q.body)) {
                            ok = true;
                            break;
                        }
                    if (!ok) {
                        R.set(r.effect, other, false);
                        changed = true;
                    }
                }
            }
        }
    }
    return R;
}

MutexSet mutex_set(const ConformantProblem &P, bool strengthened) {
    return mutex_set(P, prime_implicates(P.num_fluents(), P.init), strengthened);
}

bool consistency_check(const ConformantProblem &P, const PICNF &, const MutexSet &R) {
    for (int f = 0; f < P.num_fluents(); ++f)
        if (!R.mutex(Literal::pos(f), Literal::neg(f)))
            return false;
    return true;
}

bool consistency_check(const ConformantProblem &P, bool strengthened) {
    PICNF I;
    try {
        I = prime_implicates(P.num_fluents(), P.init);
    } catch (const InconsistentInit &) {
        return false;
    }
    return consistency_check(P, I, mutex_set(P, I, strengthened));
}
}
