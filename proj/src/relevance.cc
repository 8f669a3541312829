#include "conformant/analysis.h"

#include <algorithm>

using namespace std;

namespace conformant {
static constexpr uint64_t EVEN_BITS = 0x5555555555555555ULL;

// Bit for literal code c moves to code c^1.
static inline uint64_t swap_polarity(uint64_t w) {
    return ((w & EVEN_BITS) << 1) | ((w >> 1) & EVEN_BITS);
}

RelevanceGraph::RelevanceGraph(int num_fluents)
    : num_literals(2 * num_fluents),
      words_per_row((2 * num_fluents + 63) / 64),
      bits(static_cast<size_t>(2 * num_fluents) * ((2 * num_fluents + 63) / 64), 0) {
}

bool RelevanceGraph::add(Literal from, Literal to) {
    uint64_t &w = bits[from.code() * words_per_row + (to.code() >> 6)];
    uint64_t bit = uint64_t(1) << (to.code() & 63);
    if (w & bit)
        return false;
    w |= bit;
    return true;
}

LiteralSet RelevanceGraph::relevant_to(Literal to) const {
    LiteralSet result;
    for (int c = 0; c < num_literals; ++c)
        if (relevant(Literal::from_code(c), to))
            result.push_back(Literal::from_code(c));
    return result;
}

LiteralSet RelevanceGraph::targets_of(Literal from) const {
    LiteralSet result;
    for (int c = 0; c < num_literals; ++c)
        if (relevant(from, Literal::from_code(c)))
            result.push_back(Literal::from_code(c));
    return result;
}

static RelevanceGraph base_relevance(const ConformantProblem &P) {
    RelevanceGraph g(P.num_fluents());
    for (int c = 0; c < 2 * P.num_fluents(); ++c)
        g.add(Literal::from_code(c), Literal::from_code(c));
    for (const Action &a : P.actions) {
        for (const Rule &r : a.rules)
            for (Literal lit : r.condition)
                g.add(lit, r.effect);
        for (const NondetEffect &e : a.nondet)
            for (const LiteralSet &outcome : e.outcomes)
                for (Literal eff : outcome)
                    for (Literal lit : e.condition)
                        g.add(lit, eff);
    }
    return g;
}

template<typename ExtraRule>
static void saturate(RelevanceGraph &g, int words_per_row, vector<uint64_t> &bits,
                     int num_literals, ExtraRule extra) {
    vector<uint64_t> row(words_per_row);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int l = 0; l < num_literals; ++l) {
            uint64_t *own = &bits[l * words_per_row];
            copy(own, own + words_per_row, row.begin());
            for (int m = 0; m < num_literals; ++m) {
                if (!((own[m >> 6] >> (m & 63)) & 1))
                    continue;
                const uint64_t *other = &bits[m * words_per_row];
                for (int w = 0; w < words_per_row; ++w)
                    row[w] |= other[w];
            }
            extra(l, row);
            for (int w = 0; w < words_per_row; ++w)
                if (row[w] != own[w]) {
                    own[w] = row[w];
                    changed = true;
                }
        }
    }
    (void)g;
}

RelevanceGraph relevance(const ConformantProblem &P) {
    RelevanceGraph g = base_relevance(P);
    int wpr = g.words_per_row;
    auto &bits = g.bits;
    saturate(g, wpr, bits, g.num_literals, [&](int l, vector<uint64_t> &row) {
            // l -> -m'' and m'' -> -l' give l -> l'
            const uint64_t *own = &bits[l * wpr];
            for (int x = 0; x < g.num_literals; ++x) {
                if (!((own[x >> 6] >> (x & 63)) & 1))
                    continue;
                const uint64_t *other = &bits[(x ^ 1) * wpr];
                for (int w = 0; w < wpr; ++w)
                    row[w] |= swap_polarity(other[w]);
            }
        });
    return g;
}

RelevanceGraph relevance_complement_rule(const ConformantProblem &P) {
    RelevanceGraph g = base_relevance(P);
    int wpr = g.words_per_row;
    auto &bits = g.bits;
    saturate(g, wpr, bits, g.num_literals, [&](int l, vector<uint64_t> &row) {
            const uint64_t *negated = &bits[(l ^ 1) * wpr];
            for (int w = 0; w < wpr; ++w)
                row[w] |= swap_polarity(negated[w]);
        });
    return g;
}

static bool clause_less(const Clause &a, const Clause &b) {
    return a < b;
}

vector<Clause> c_i(const ConformantProblem &P, const vector<Clause> &init) {
    vector<bool> unit(P.num_fluents(), false);
    vector<Clause> result;
    for (Clause c : init) {
        normalize(c);
        if (c.size() == 1)
            unit[c[0].fluent()] = true;
        else if (!has_complementary_pair(c))
            result.push_back(c);
    }
    for (int f = 0; f < P.num_fluents(); ++f)
        if (!unit[f])
            result.push_back({Literal::pos(f), Literal::neg(f)});
    sort(result.begin(), result.end(), clause_less);
    result.erase(unique(result.begin(), result.end()), result.end());
    return result;
}

RelevantClauseSet relevant_clauses(const vector<Clause> &ci, const RelevanceGraph &rel,
                                   Literal target) {
    RelevantClauseSet result;
    result.target = target;
    vector<int> fluents;
    for (const Clause &c : ci) {
        bool all = all_of(c.begin(), c.end(),
                          [&](Literal lit) {return rel.relevant(lit, target);});
        if (all) {
            result.clauses.push_back(c);
            for (Literal lit : c)
                fluents.push_back(lit.fluent());
        }
    }
    result.extended = result.clauses;
    sort(fluents.begin(), fluents.end());
    fluents.erase(unique(fluents.begin(), fluents.end()), fluents.end());
    for (int f : fluents)
        result.extended.push_back({Literal::pos(f), Literal::neg(f)});
    sort(result.extended.begin(), result.extended.end(), clause_less);
    result.extended.erase(unique(result.extended.begin(), result.extended.end()),
                          result.extended.end());
    return result;
}

static bool tag_less(const Tag &a, const Tag &b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

vector<Tag> cover(const vector<Clause> &C, const PICNF &I) {
    vector<Tag> found;
    LiteralSet current;
    auto recurse = [&](auto &self, size_t depth) -> void {
            if (depth == C.size()) {
                found.push_back(current);
                return;
            }
            const Clause &c = C[depth];
            if (intersects(current, c)) {
                self(self, depth + 1);
                return;
            }
            for (Literal lit : c) {
                LiteralSet next = current;
                next.insert(upper_bound(next.begin(), next.end(), lit), lit);
                if (!consistent_with(I, next))
                    continue;
                swap(current, next);
                self(self, depth + 1);
                swap(current, next);
            }
        };
    recurse(recurse, 0);
    sort(found.begin(), found.end(), tag_less);
    found.erase(unique(found.begin(), found.end()), found.end());
    vector<Tag> minimal;
    for (const Tag &t : found) {
        bool dominated = any_of(minimal.begin(), minimal.end(),
                                [&](const Tag &m) {return is_subset(m, t);});
        if (!dominated)
            minimal.push_back(t);
    }
    return minimal;
}

bool satisfies(const vector<Tag> &tags, const vector<Clause> &C, const PICNF &I) {
    for (const Tag &t : tags) {
        LiteralSet cl = closure(I, t);
        for (const Clause &c : C)
            if (!intersects(cl, c))
                return false;
    }
    return true;
}

Analysis::Analysis(const ConformantProblem &P, size_t pi_cap)
    : problem(&P),
      pi(prime_implicates(P.num_fluents(), P.init, pi_cap)),
      rel(relevance(P)),
      ci(c_i(P, pi.clauses())) {
}
}
