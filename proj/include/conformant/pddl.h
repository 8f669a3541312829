#ifndef CONFORMANT_PDDL_H
#define CONFORMANT_PDDL_H

#include "problem.h"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace conformant {
struct TypedName {
    std::string name;
    std::string type = "object";
};

// Predicate "=" denotes equality between two terms.
struct AtomAst {
    std::string predicate;
    std::vector<std::string> args;
    int line = 0;
    int column = 0;
};

struct LiteralAst {
    AtomAst atom;
    bool negated = false;
};

struct ConditionAst {
    enum class Kind {Literal, And, Or};
    Kind kind = Kind::And;
    LiteralAst literal;
    std::vector<ConditionAst> children;
};

struct EffectAst {
    enum class Kind {Literal, And, When, Forall, Oneof};
    Kind kind = Kind::And;
    LiteralAst literal;
    std::vector<EffectAst> children;
    ConditionAst condition;
    std::vector<TypedName> variables;
};

struct PredicateAst {
    std::string name;
    std::vector<TypedName> parameters;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> parameters;
    ConditionAst precondition;
    EffectAst effect;
};

struct DomainAst {
    std::string name;
    std::vector<std::string> requirements;
    // type -> parent type
    std::map<std::string, std::string> types;
    std::vector<TypedName> constants;
    std::vector<PredicateAst> predicates;
    std::vector<ActionSchema> actions;

    const PredicateAst *find_predicate(const std::string &name) const;
};

struct InitEntry {
    enum class Kind {Literal, Or, Oneof, Unknown};
    Kind kind = Kind::Literal;
    std::vector<LiteralAst> members;
};

struct ProblemAst {
    std::string name;
    std::string domain;
    std::vector<std::string> requirements;
    std::vector<TypedName> objects;
    std::vector<InitEntry> init;
    ConditionAst goal;
};

DomainAst parse_domain(const std::string &text);
// References are checked against the domain.
ProblemAst parse_problem(const std::string &text, const DomainAst &domain);
std::pair<DomainAst, ProblemAst> parse(const std::string &domain_text,
                                       const std::string &problem_text);

struct GroundOptions {
    std::size_t max_rule_instances = 1000000;
    // Compile away static predicates and drop rules that can never fire.
    // Without pruning every ground atom of every predicate becomes a fluent.
    bool prune = true;
};

ConformantProblem ground(const DomainAst &domain, const ProblemAst &problem,
                         const GroundOptions &options = {});
ConformantProblem load_problem(const std::string &domain_text,
                               const std::string &problem_text,
                               const GroundOptions &options = {});

// Compares names treating digit runs as numbers: p2 < p10.
bool natural_less(const std::string &a, const std::string &b);

struct EmittedPddl {
    std::string domain;
    std::string problem;
    std::vector<std::string> fluent_names;
    std::vector<std::string> action_names;
};

EmittedPddl emit_classical(const ClassicalProblem &K);

// Requires a deterministic problem whose initial state is fully known.
ClassicalProblem to_classical(const ConformantProblem &P);

// One action per line; "(pick l1)" is read as "pick(l1)". Blank lines and
// lines starting with ';' are skipped.
Plan read_plan(const std::string &text);
}

#endif
