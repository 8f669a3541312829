#include "conformant/translate.h"

#include "conformant/errors.h"

using namespace std;

namespace conformant {
static LiteralSet merge_targets(const Analysis &A, bool all_literals) {
    if (!all_literals)
        return precondition_and_goal_literals(*A.problem);
    LiteralSet result;
    for (int c = 0; c < 2 * A.problem->num_fluents(); ++c)
        result.push_back(Literal::from_code(c));
    return result;
}

static vector<int> undetermined_fluents(const PICNF &pi) {
    vector<bool> known(pi.num_fluents(), false);
    for (Literal u : pi.units())
        known[u.fluent()] = true;
    vector<int> result;
    for (int f = 0; f < pi.num_fluents(); ++f)
        if (!known[f])
            result.push_back(f);
    return result;
}

TranslationSpec ks0_spec(const Analysis &A, size_t cap) {
    vector<LiteralSet> states;
    try {
        // Known fluents are implied by every tag's closure; leaving them out
        // keeps tags short without changing any closure.
        states = projected_models(A.pi, undetermined_fluents(A.pi), cap);
    } catch (const TooManyModels &) {
        throw TooManyInitialStates("more than " + to_string(cap) + " initial states");
    }
    vector<Merge> merges;
    for (Literal lit : precondition_and_goal_literals(*A.problem))
        merges.push_back({states, lit});
    return make_spec("ks0", merges, states);
}

// Single covering merge from a witness of size <= bound, if any.
static optional<vector<Tag>> covering_merge(const Analysis &A, const RelevantClauseSet &rc,
                                            int bound) {
    int n = static_cast<int>(rc.extended.size());
    vector<Tag> result;
    for (int k = 1; k <= min(bound, n); ++k) {
        bool found = for_each_subset(n, k, [&](const vector<int> &idx) {
                vector<Clause> chosen;
                for (int i : idx)
                    chosen.push_back(rc.extended[i]);
                vector<Tag> tags = cover(chosen, A.pi);
                if (!satisfies(tags, rc.clauses, A.pi))
                    return false;
                result = move(tags);
                return true;
            });
        if (found)
            return result;
    }
    return nullopt;
}

TranslationSpec kmodels_spec(const Analysis &A, size_t cap, bool all_literals,
                             bool reuse_width_one) {
    vector<Merge> merges;
    for (Literal lit : merge_targets(A, all_literals)) {
        RelevantClauseSet rc = A.relevant(lit);
        if (rc.clauses.empty())
            continue;
        if (reuse_width_one) {
            if (auto tags = covering_merge(A, rc, 1)) {
                merges.push_back({*tags, lit});
                continue;
            }
        }
        vector<int> vars;
        for (const Clause &c : rc.clauses)
            for (Literal x : c)
                vars.push_back(x.fluent());
        vector<LiteralSet> models;
        try {
            models = projected_models(A.pi, vars, cap);
        } catch (const TooManyModels &) {
            throw TooManyModels("models of the clauses relevant to " +
                                A.problem->literal_name(lit) + " exceed cap of " +
                                to_string(cap));
        }
        merges.push_back({models, lit});
    }
    return make_spec("kmodels", merges);
}

TranslationSpec ki_spec(const Analysis &A, int i, bool all_literals) {
    vector<Merge> merges;
    if (i > 0) {
        for (Literal lit : merge_targets(A, all_literals)) {
            RelevantClauseSet rc = A.relevant(lit);
            if (rc.extended.empty())
                continue;
            if (auto tags = covering_merge(A, rc, i)) {
                merges.push_back({*tags, lit});
                continue;
            }
            int n = static_cast<int>(rc.extended.size());
            for_each_subset(n, min(i, n), [&](const vector<int> &idx) {
                    vector<Clause> chosen;
                    for (int j : idx)
                        chosen.push_back(rc.extended[j]);
                    merges.push_back({cover(chosen, A.pi), lit});
                    return false;
                });
        }
    }
    return make_spec("k" + to_string(i), merges);
}

Translation ks0(const Analysis &A, size_t cap, const TranslateOptions &opts) {
    TranslateOptions o = opts;
    o.check_spec = false;
    return ktm(A, ks0_spec(A, cap), o);
}

Translation kmodels(const Analysis &A, size_t cap, const TranslateOptions &opts) {
    TranslateOptions o = opts;
    o.check_spec = false;
    return ktm(A, kmodels_spec(A, cap), o);
}

Translation ki(const Analysis &A, int i, const TranslateOptions &opts) {
    TranslateOptions o = opts;
    o.check_spec = false;
    return ktm(A, ki_spec(A, i), o);
}
}
