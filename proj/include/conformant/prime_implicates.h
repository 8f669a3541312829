#ifndef CONFORMANT_PRIME_IMPLICATES_H
#define CONFORMANT_PRIME_IMPLICATES_H

#include "literal.h"

#include <cstddef>
#include <vector>

namespace conformant {
/*
  Clause set in prime implicate form: no tautologies, no clause subsumes
  another, closed under resolution modulo subsumption. In this form clause
  entailment reduces to a subsumption test.
*/
class PICNF {
    int num_fluents_ = 0;
    std::vector<Clause> clauses_;
    // occurrences[lit.code()] = indices of clauses containing lit
    std::vector<std::vector<int>> occurrences;
public:
    PICNF() = default;
    PICNF(int num_fluents, std::vector<Clause> clauses);

    int num_fluents() const {return num_fluents_;}
    const std::vector<Clause> &clauses() const {return clauses_;}
    std::size_t size() const {return clauses_.size();}
    const std::vector<int> &clauses_with(Literal lit) const {return occurrences[lit.code()];}

    // Is some clause of I a subset of `clause`?
    bool subsumes(const LiteralSet &clause) const;
    // I |= clause (tautology or subsumed)
    bool entails_clause(const LiteralSet &clause) const;
    // Literals entailed by I alone.
    LiteralSet units() const;
};

constexpr std::size_t DEFAULT_PI_CAP = 5000;
constexpr std::size_t DEFAULT_MODEL_CAP = 1u << 16;

// Tison: resolve variable by variable with eager subsumption.
PICNF prime_implicates(int num_fluents, const std::vector<Clause> &init,
                       std::size_t cap = DEFAULT_PI_CAP);

bool entails_literal(const PICNF &I, const Tag &t, Literal lit);
// t* = {L | I, t |= L}; when t is inconsistent with I this holds every literal.
LiteralSet closure(const PICNF &I, const Tag &t);
bool tag_consistent(const PICNF &I, const Tag &t);
// Is the literal set jointly satisfiable with I?
bool consistent_with(const PICNF &I, const LiteralSet &lits);

struct Merge {
    std::vector<Tag> tags;
    Literal target;

    bool operator==(const Merge &) const = default;
};

// I |= OR of the tags, decided by enumerating models of I projected onto the
// fluents mentioned in the merge.
bool merge_valid(const PICNF &I, const Merge &m, std::size_t cap = DEFAULT_MODEL_CAP);

// Assignments (as literal sets over `fluents`, sorted) consistent with I.
// Throws TooManyModels beyond cap.
std::vector<LiteralSet> projected_models(const PICNF &I, const std::vector<int> &fluents,
                                         std::size_t cap);
}

#endif
