#ifndef CONFORMANT_ANALYSIS_H
#define CONFORMANT_ANALYSIS_H

#include "prime_implicates.h"
#include "problem.h"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace conformant {
/*
  Literal-level relevance relation, one bit row per literal:
  relevant(a, b) holds when a is relevant to b.
*/
class RelevanceGraph {
    int num_literals = 0;
    int words_per_row = 0;
    std::vector<uint64_t> bits;
public:
    RelevanceGraph() = default;
    explicit RelevanceGraph(int num_fluents);

    int num_fluents() const {return num_literals / 2;}
    bool relevant(Literal from, Literal to) const {
        return (bits[from.code() * words_per_row + (to.code() >> 6)] >> (to.code() & 63)) & 1;
    }
    bool add(Literal from, Literal to);
    // Literals relevant to `to`.
    LiteralSet relevant_to(Literal to) const;
    // Literals `from` is relevant to.
    LiteralSet targets_of(Literal from) const;
    bool operator==(const RelevanceGraph &) const = default;

    friend RelevanceGraph relevance(const ConformantProblem &P);
    friend RelevanceGraph relevance_complement_rule(const ConformantProblem &P);
};

// Least fixpoint of reflexivity, condition-to-effect, transitivity and the
// complement-chaining rule (L -> -L'' and L'' -> -L' give L -> L').
RelevanceGraph relevance(const ConformantProblem &P);
// Same fixpoint with the chaining rule replaced by: -L -> -L' gives L -> L'.
RelevanceGraph relevance_complement_rule(const ConformantProblem &P);

// Non-unit clauses of I plus x v -x for fluents with no unit clause in I.
std::vector<Clause> c_i(const ConformantProblem &P, const std::vector<Clause> &init);

struct RelevantClauseSet {
    Literal target;
    std::vector<Clause> clauses;
    std::vector<Clause> extended;
};

RelevantClauseSet relevant_clauses(const std::vector<Clause> &ci, const RelevanceGraph &rel,
                                   Literal target);

// Minimal literal sets consistent with I hitting every clause of C.
std::vector<Tag> cover(const std::vector<Clause> &C, const PICNF &I);
bool satisfies(const std::vector<Tag> &tags, const std::vector<Clause> &C, const PICNF &I);

struct LiteralWidth {
    Literal literal;
    int width = 0;
    std::vector<Clause> witness;
    std::size_t relevant_clause_count = 0;
};

/*
  Shared context for width and translation: PI form of I, C_I and relevance.
  Built once per problem.
*/
struct Analysis {
    const ConformantProblem *problem = nullptr;
    PICNF pi;
    RelevanceGraph rel;
    std::vector<Clause> ci;

    Analysis(const ConformantProblem &P, std::size_t pi_cap = DEFAULT_PI_CAP);
    RelevantClauseSet relevant(Literal target) const {
        return relevant_clauses(ci, rel, target);
    }
};

// Width search stops with WidthSearchCap beyond `bound` (default: number of
// unknown fluents).
LiteralWidth width_of_literal(const Analysis &A, Literal lit,
                              std::optional<int> bound = std::nullopt);

struct WidthReport {
    int width = 0;
    std::vector<LiteralWidth> literals;
};

WidthReport width(const Analysis &A, std::optional<int> bound = std::nullopt);

// All k-subsets of {0..n-1} in lexicographic order, fed to `visit`; stops when
// visit returns true. Returns whether it stopped.
template<typename Visit>
bool for_each_subset(int n, int k, Visit visit) {
    if (k > n || k < 0)
        return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (visit(idx))
            return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

class MutexSet {
    int num_literals = 0;
    std::vector<bool> pairs;
public:
    MutexSet() = default;
    explicit MutexSet(int num_fluents, bool all = false);
    bool mutex(Literal a, Literal b) const {
        return pairs[a.code() * num_literals + b.code()];
    }
    void set(Literal a, Literal b, bool value);
    // Some pair inside lits is mutex.
    bool mutex_set(const LiteralSet &lits) const;
    // Literals mutex with `lit`.
    LiteralSet mutex_with(Literal lit) const;
    std::vector<std::pair<Literal, Literal>> pair_list() const;
    bool operator==(const MutexSet &) const = default;
};

MutexSet mutex_set(const ConformantProblem &P, bool strengthened = false);
MutexSet mutex_set(const ConformantProblem &P, const PICNF &I, bool strengthened = false);
bool consistency_check(const ConformantProblem &P, bool strengthened = false);
bool consistency_check(const ConformantProblem &P, const PICNF &I, const MutexSet &R);
}

#endif
