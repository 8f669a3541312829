#ifndef CONFORMANT_PROBLEM_H
#define CONFORMANT_PROBLEM_H

#include "literal.h"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace conformant {
struct Rule {
    LiteralSet condition;
    Literal effect;

    bool operator==(const Rule &) const = default;
    auto operator<=>(const Rule &) const = default;
};

// C -> oneof(S_1, ..., S_m); only present before nondeterminism is compiled away.
struct NondetEffect {
    LiteralSet condition;
    std::vector<LiteralSet> outcomes;

    bool operator==(const NondetEffect &) const = default;
};

enum class ActionKind {
    Regular,
    Merge,
    Deduction,
    Reset
};

const char *kind_name(ActionKind kind);

struct Action {
    std::string name;
    LiteralSet preconditions;
    std::vector<Rule> rules;
    std::vector<NondetEffect> nondet;
    ActionKind kind = ActionKind::Regular;

    bool is_reasoning() const {return kind != ActionKind::Regular;}
    bool operator==(const Action &) const = default;
};

struct ConformantProblem {
    std::string name;
    std::vector<std::string> fluents;
    std::vector<Clause> init;
    std::vector<Action> actions;
    LiteralSet goal;
    // Non-unit goal clauses; compiled away by cnf_goal_compile.
    std::vector<Clause> goal_clauses;

    int num_fluents() const {return static_cast<int>(fluents.size());}
    std::optional<int> find_fluent(const std::string &name) const;
    std::optional<int> find_action(const std::string &name) const;
    bool is_deterministic() const;
    std::string literal_name(Literal lit) const;
};

struct ClassicalProblem {
    std::string name;
    std::vector<std::string> fluents;
    // Literals true initially; every fluent not listed positively is false.
    LiteralSet init;
    std::vector<Action> actions;
    LiteralSet goal;

    int num_fluents() const {return static_cast<int>(fluents.size());}
    std::optional<int> find_fluent(const std::string &name) const;
    std::optional<int> find_action(const std::string &name) const;
    int num_rules() const;
};

/*
  Complete, consistent state stored as one bit per fluent.
  Completeness and consistency hold by construction.
*/
class State {
    std::vector<uint64_t> words;
    int size_ = 0;
public:
    State() = default;
    explicit State(int num_fluents);

    int size() const {return size_;}
    bool value(int fluent) const {
        return (words[fluent >> 6] >> (fluent & 63)) & 1;
    }
    bool holds(Literal lit) const {return value(lit.fluent()) == lit.positive();}
    bool holds_all(const LiteralSet &lits) const;
    void set(int fluent, bool val) {
        uint64_t bit = uint64_t(1) << (fluent & 63);
        if (val)
            words[fluent >> 6] |= bit;
        else
            words[fluent >> 6] &= ~bit;
    }
    void make_true(Literal lit) {set(lit.fluent(), lit.positive());}
    LiteralSet literals() const;
    const std::vector<uint64_t> &raw() const {return words;}
    std::size_t hash() const;
    bool operator==(const State &other) const = default;
    auto operator<=>(const State &other) const = default;

    static State from_literals(int num_fluents, const LiteralSet &lits);
};

struct StateHash {
    std::size_t operator()(const State &s) const {return s.hash();}
};

struct Plan {
    std::vector<std::string> steps;
    std::vector<bool> merge_mask;

    std::size_t size() const {return steps.size();}
    void push_back(const std::string &step, bool merge = false) {
        steps.push_back(step);
        merge_mask.push_back(merge);
    }
    Plan stripped() const;
    std::size_t stripped_length() const;
    bool operator==(const Plan &) const = default;
};

Plan plan_from_names(const std::vector<std::string> &names);
LiteralSet precondition_and_goal_literals(const ConformantProblem &P);
std::vector<int> unknown_fluents(const ConformantProblem &P);

/*
  Convenience builder used by tests and generators. Literals are written
  as "p" or "-p"; fluents are created on first mention.
*/
class ProblemBuilder {
    ConformantProblem problem;
    std::unordered_map<std::string, int> ids;
public:
    explicit ProblemBuilder(const std::string &name = "problem");
    int fluent(const std::string &name);
    ProblemBuilder &fluents(std::initializer_list<std::string> names);
    Literal lit(const std::string &text);
    LiteralSet lits(const std::vector<std::string> &texts);
    ProblemBuilder &init(const std::vector<std::string> &clause);
    ProblemBuilder &oneof(const std::vector<std::string> &atoms);
    ProblemBuilder &goal(const std::vector<std::string> &literals);
    ProblemBuilder &goal_clause(const std::vector<std::string> &clause);
    ProblemBuilder &action(const std::string &name,
                           const std::vector<std::string> &pre = {});
    ProblemBuilder &rule(const std::vector<std::string> &condition,
                         const std::string &effect);
    ProblemBuilder &nondet(const std::vector<std::string> &condition,
                           const std::vector<std::vector<std::string>> &outcomes);
    ConformantProblem build() const;
};
}

#endif
