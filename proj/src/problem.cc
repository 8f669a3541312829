#include "conformant/problem.h"

#include "conformant/errors.h"

#include <algorithm>

using namespace std;

namespace conformant {
const char *kind_name(ActionKind kind) {
    switch (kind) {
    case ActionKind::Regular: return "regular";
    case ActionKind::Merge: return "merge";
    case ActionKind::Deduction: return "deduction";
    case ActionKind::Reset: return "reset";
    }
    return "?";
}

template<typename Names>
static optional<int> index_of(const Names &names, const string &name) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<int>(i);
    return nullopt;
}

template<typename Actions>
static optional<int> action_index(const Actions &actions, const string &name) {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == name)
            return static_cast<int>(i);
    return nullopt;
}

optional<int> ConformantProblem::find_fluent(const string &n) const {
    return index_of(fluents, n);
}

optional<int> ConformantProblem::find_action(const string &n) const {
    return action_index(actions, n);
}

bool ConformantProblem::is_deterministic() const {
    return all_of(actions.begin(), actions.end(),
                  [](const Action &a) {return a.nondet.empty();});
}

string ConformantProblem::literal_name(Literal lit) const {
    return literal_to_string(lit, fluents);
}

optional<int> ClassicalProblem::find_fluent(const string &n) const {
    return index_of(fluents, n);
}

optional<int> ClassicalProblem::find_action(const string &n) const {
    return action_index(actions, n);
}

int ClassicalProblem::num_rules() const {
    int count = 0;
    for (const Action &a : actions)
        count += static_cast<int>(a.rules.size());
    return count;
}

State::State(int num_fluents)
    : words((num_fluents + 63) / 64, 0), size_(num_fluents) {
}

bool State::holds_all(const LiteralSet &lits) const {
    for (Literal lit : lits)
        if (!holds(lit))
            return false;
    return true;
}

LiteralSet State::literals() const {
    LiteralSet result;
    result.reserve(size_);
    for (int f = 0; f < size_; ++f)
        result.push_back(Literal(f, value(f)));
    return result;
}

size_t State::hash() const {
    size_t h = 0xcbf29ce484222325ULL;
    for (uint64_t w : words) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

State State::from_literals(int num_fluents, const LiteralSet &lits) {
    State s(num_fluents);
    for (Literal lit : lits)
        s.make_true(lit);
    return s;
}

Plan Plan::stripped() const {
    Plan result;
    for (size_t i = 0; i < steps.size(); ++i)
        if (!merge_mask[i])
            result.push_back(steps[i]);
    return result;
}

size_t Plan::stripped_length() const {
    return count(merge_mask.begin(), merge_mask.end(), false);
}

Plan plan_from_names(const vector<string> &names) {
    Plan plan;
    for (const string &name : names)
        plan.push_back(name);
    return plan;
}

LiteralSet precondition_and_goal_literals(const ConformantProblem &P) {
    LiteralSet result = P.goal;
    for (const Action &a : P.actions)
        result.insert(result.end(), a.preconditions.begin(), a.preconditions.end());
    normalize(result);
    return result;
}

vector<int> unknown_fluents(const ConformantProblem &P) {
    vector<bool> known(P.num_fluents(), false);
    for (const Clause &c : P.init)
        if (c.size() == 1)
            known[c[0].fluent()] = true;
    vector<int> result;
    for (int f = 0; f < P.num_fluents(); ++f)
        if (!known[f])
            result.push_back(f);
    return result;
}

ProblemBuilder::ProblemBuilder(const string &name) {
    problem.name = name;
}

int ProblemBuilder::fluent(const string &name) {
    auto it = ids.find(name);
    if (it != ids.end())
        return it->second;
    int id = static_cast<int>(problem.fluents.size());
    problem.fluents.push_back(name);
    ids[name] = id;
    return id;
}

ProblemBuilder &ProblemBuilder::fluents(initializer_list<string> names) {
    for (const string &name : names)
        fluent(name);
    return *this;
}

Literal ProblemBuilder::lit(const string &text) {
    if (!text.empty() && text[0] == '-')
        return Literal::neg(fluent(text.substr(1)));
    return Literal::pos(fluent(text));
}

LiteralSet ProblemBuilder::lits(const vector<string> &texts) {
    LiteralSet result;
    for (const string &t : texts)
        result.push_back(lit(t));
    normalize(result);
    return result;
}

ProblemBuilder &ProblemBuilder::init(const vector<string> &clause) {
    problem.init.push_back(lits(clause));
    return *this;
}

ProblemBuilder &ProblemBuilder::oneof(const vector<string> &atoms) {
    init(atoms);
    for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = i + 1; j < atoms.size(); ++j)
            init({"-" + atoms[i], "-" + atoms[j]});
    return *this;
}

ProblemBuilder &ProblemBuilder::goal(const vector<string> &literals) {
    LiteralSet g = lits(literals);
    problem.goal = set_union(problem.goal, g);
    return *this;
}

ProblemBuilder &ProblemBuilder::goal_clause(const vector<string> &clause) {
    problem.goal_clauses.push_back(lits(clause));
    return *this;
}

ProblemBuilder &ProblemBuilder::action(const string &name, const vector<string> &pre) {
    Action a;
    a.name = name;
    a.preconditions = lits(pre);
    problem.actions.push_back(a);
    return *this;
}

ProblemBuilder &ProblemBuilder::rule(const vector<string> &condition, const string &effect) {
    if (problem.actions.empty())
        throw InvalidParameters("rule added before any action");
    Rule r{lits(condition), lit(effect)};
    problem.actions.back().rules.push_back(r);
    return *this;
}

ProblemBuilder &ProblemBuilder::nondet(const vector<string> &condition,
                                       const vector<vector<string>> &outcomes) {
    if (problem.actions.empty())
        throw InvalidParameters("nondeterministic effect added before any action");
    NondetEffect e;
    e.condition = lits(condition);
    for (const auto &o : outcomes)
        e.outcomes.push_back(lits(o));
    problem.actions.back().nondet.push_back(e);
    return *this;
}

ConformantProblem ProblemBuilder::build() const {
    return problem;
}
}
