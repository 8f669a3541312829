#include "conformant/errors.h"
#include "conformant/generators.h"
#include "conformant/pddl.h"
#include "conformant/translate.h"

#include "support/test_support.h"

#include <gtest/gtest.h>

#include <set>

using namespace conformant;
using namespace testing_support;

namespace {
Literal L(const ConformantProblem &P, const std::string &text) {
    bool neg = text[0] == '-';
    return Literal(*P.find_fluent(neg ? text.substr(1) : text), !neg);
}

std::string merge_name(const Translation &K, Literal target) {
    for (const Action &a : K.problem.actions)
        if (a.kind == ActionKind::Merge && !a.rules.empty() &&
            a.rules[0].effect == Literal::pos(*K.atom(target, 0)))
            return a.name;
    return "";
}

std::vector<State> trace(const ClassicalProblem &K, const std::vector<std::string> &names) {
    State s = State::from_literals(K.num_fluents(), K.init);
    std::vector<State> out = {s};
    for (const std::string &n : names) {
        s = apply(s, K.actions[*K.find_action(n)]);
        out.push_back(s);
    }
    return out;
}

std::set<std::pair<Literal, Tag>> init_atoms(const Translation &K) {
    std::set<std::pair<Literal, Tag>> out;
    for (Literal l : K.problem.init) {
        const TaggedAtom &a = K.atoms[l.fluent()];
        out.insert({a.base, K.spec.tags[a.tag]});
    }
    return out;
}

Translation pick_drop_translation(const ConformantProblem &P, const Analysis &A) {
    Tag t1 = {L(P, "at(l1)")}, t2 = {L(P, "at(l2)")};
    std::vector<Merge> merges = {{{t1, t2}, L(P, "hold")}, {{t1, t2}, L(P, "at(l3)")}};
    return ktm(A, make_spec("custom", merges, {t1, t2}));
}

bool same_problem(const ClassicalProblem &a, const ClassicalProblem &b) {
    return a.fluents == b.fluents && a.init == b.init && a.goal == b.goal &&
           a.actions == b.actions;
}
}

TEST(K0, KnowledgeExample) {
    ConformantProblem P = knowledge_example();
    Analysis A(P);
    Translation K = k0(A);
    EXPECT_EQ(K.problem.num_rules(), 6);
    EXPECT_TRUE(run_plan(K.problem, plan_from_names({"a", "b"})).achieved_goal);
    RunResult only_a = run_plan(K.problem, plan_from_names({"a"}));
    EXPECT_TRUE(only_a.applicable);
    EXPECT_FALSE(only_a.achieved_goal);
    // Kp and Kr hold initially, nothing else.
    EXPECT_EQ(K.problem.init.size(), 2u);
}

TEST(K0, ClassicalProblemIsPreserved) {
    ProblemBuilder b;
    b.fluents({"p", "q"});
    b.init({"p"}).init({"-q"});
    b.action("a", {"p"}).rule({}, "q");
    b.goal({"q"});
    ConformantProblem P = b.build();
    Analysis A(P);
    Translation K = k0(A);
    RunResult r = run_plan(K.problem, plan_from_names({"a"}));
    EXPECT_TRUE(r.achieved_goal);
}

TEST(Ktm, PickDropInitialAtoms) {
    ConformantProblem P = pick_drop();
    Analysis A(P);
    Translation K = pick_drop_translation(P, A);
    Literal hold = L(P, "hold"), a1 = L(P, "at(l1)"), a2 = L(P, "at(l2)"), a3 = L(P, "at(l3)");
    std::set<std::pair<Literal, Tag>> expected = {
        {~hold, {}}, {~a3, {}},
        {~hold, {a1}}, {~a3, {a1}}, {a1, {a1}}, {~a2, {a1}},
        {~hold, {a2}}, {~a3, {a2}}, {a2, {a2}}, {~a1, {a2}},
    };
    EXPECT_EQ(init_atoms(K), expected);
    ASSERT_EQ(K.problem.goal.size(), 1u);
    EXPECT_EQ(K.atoms[K.problem.goal[0].fluent()].base, a3);
}

TEST(Ktm, PickDropPlansAndTrace) {
    ConformantProblem P = pick_drop();
    Analysis A(P);
    Translation K = pick_drop_translation(P, A);
    Literal hold = L(P, "hold"), a1 = L(P, "at(l1)"), a2 = L(P, "at(l2)"), a3 = L(P, "at(l3)");
    std::string merge_at3 = merge_name(K, a3), merge_hold = merge_name(K, hold);
    ASSERT_FALSE(merge_at3.empty());
    ASSERT_FALSE(merge_hold.empty());

    std::vector<std::string> pi1 = {"pick(l1)", "drop(l3)", "pick(l2)", "drop(l3)", merge_at3};
    EXPECT_TRUE(run_plan(K.problem, plan_from_names(pi1)).achieved_goal);
    std::vector<std::string> pi2 = {"pick(l1)", "pick(l2)", merge_hold, "drop(l3)"};
    EXPECT_FALSE(run_plan(K.problem, plan_from_names(pi2)).achieved_goal);

    auto atom = [&](Literal l, Tag t) {return *K.atom(l, t);};
    std::vector<int> monitors = {
        atom(a1, {a1}), atom(a2, {a2}), atom(hold, {a1}),
        atom(hold, {a2}), atom(a3, {a1}), atom(a3, {a2}),
    };
    std::vector<std::set<int>> rows = {
        {atom(a1, {a1}), atom(a2, {a2})},
        {atom(hold, {a1}), atom(a2, {a2})},
        {atom(a3, {a1}), atom(a2, {a2})},
        {atom(a3, {a1}), atom(hold, {a2})},
        {atom(a3, {a1}), atom(a3, {a2})},
    };
    std::vector<State> states = trace(K.problem, pi1);
    for (std::size_t row = 0; row < rows.size(); ++row)
        for (int m : monitors)
            EXPECT_EQ(states[row].value(m), rows[row].count(m) > 0) << "row " << row;
    EXPECT_TRUE(states[5].value(*K.atom(a3, 0)));

    // Khold/at(l1) holds after the first pick, not after the second.
    std::vector<State> bad = trace(K.problem, {"pick(l1)", "pick(l2)"});
    EXPECT_TRUE(bad[1].value(atom(hold, {a1})));
    EXPECT_FALSE(bad[2].value(atom(hold, {a1})));
}

TEST(Ktm, EmptySpecIsK0) {
    ConformantProblem P = knowledge_example();
    Analysis A(P);
    EXPECT_TRUE(same_problem(ktm(A, make_spec("k0", {})).problem, k0(A).problem));
    EXPECT_TRUE(same_problem(ki(A, 0).problem, k0(A).problem));
}

TEST(Ktm, InvalidMergeIsRejected) {
    ConformantProblem P = pick_drop();
    Analysis A(P);
    Tag t1 = {L(P, "at(l1)")};
    EXPECT_THROW(ktm(A, make_spec("custom", {{{t1}, L(P, "at(l3)")}}, {t1})), InvalidSpec);
    Tag bad = {L(P, "at(l1)"), L(P, "at(l2)")};
    EXPECT_THROW(ktm(A, make_spec("custom", {}, {bad})), InvalidSpec);
}

TEST(Ks0, TagsAreInitialStates) {
    ConformantProblem P = pick_drop();
    Analysis A(P);
    TranslationSpec s = ks0_spec(A);
    EXPECT_EQ(s.tags.size(), 3u);
    EXPECT_TRUE(s.tags[0].empty());
    ConformantProblem T = disjunction_toy(3);
    Analysis B(T);
    EXPECT_EQ(ks0_spec(B).tags.size(), 8u);
    ConformantProblem T7 = disjunction_toy(13);
    Analysis C(T7);
    EXPECT_THROW(ks0_spec(C, 4096), TooManyInitialStates);
}

TEST(Kmodels, OneofGivesOneTagPerValue) {
    ProblemBuilder b;
    b.fluent("l");
    b.oneof({"x1", "x2", "x3", "x4"});
    b.init({"-l"});
    for (int i = 1; i <= 4; ++i)
        b.action("a" + std::to_string(i)).rule({"x" + std::to_string(i)}, "l");
    b.goal({"l"});
    ConformantProblem P = b.build();
    Analysis A(P);
    TranslationSpec s = kmodels_spec(A);
    EXPECT_EQ(s.tags.size(), 5u);
    ASSERT_EQ(s.merges.size(), 1u);
    EXPECT_EQ(s.merges[0].tags.size(), 4u);
    Translation K = kmodels(A);
    SolveResult r = solve(K.problem);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    EXPECT_EQ(r.plan.stripped_length(), 4u);
}

TEST(Kmodels, NoRelevantClausesNoMerge) {
    ConformantProblem P = knowledge_example();
    Analysis A(P);
    EXPECT_TRUE(kmodels_spec(A).merges.empty());
}

TEST(Ki, ToySingleLinearMerge) {
    for (int m : {3, 5, 8}) {
        ConformantProblem P = disjunction_toy(m);
        Analysis A(P);
        TranslationSpec s = ki_spec(A, 1);
        ASSERT_EQ(s.merges.size(), 1u);
        EXPECT_EQ(s.merges[0].tags.size(), static_cast<std::size_t>(m));
        EXPECT_EQ(s.tags.size(), static_cast<std::size_t>(m + 1));
    }
}

TEST(Ki, SortnetGoalUnreachableAtOne) {
    GeneratedInstance g = generate("sortnet", {3});
    ConformantProblem P = cnf_goal_compile(load_problem(g.domain, g.problem));
    Analysis A(P);
    SolveResult r = solve(ki(A, 1).problem);
    EXPECT_EQ(r.status, SolveStatus::Unsolvable);
    EXPECT_TRUE(r.relaxed_unreachable);
}

TEST(Optimize, PreservesSolvability) {
    ConformantProblem P = pick_drop();
    Analysis A(P);
    Translation plain = ki(A, 1);
    Translation opt = optimize(plain, A);
    for (const Translation *K : {&plain, &opt}) {
        SolveResult r = solve(K->problem);
        ASSERT_EQ(r.status, SolveStatus::Solved);
        EXPECT_EQ(r.plan.stripped_length(), 4u);
        EXPECT_TRUE(conformant_check(P, r.plan.stripped()).conformant);
    }
}

TEST(Optimize, StaticDisjunctionsStepIsReasoning) {
    EXPECT_TRUE(is_reasoning_step_name("static-disjunctions"));
    EXPECT_TRUE(is_reasoning_step_name("merge_x__y"));
    EXPECT_FALSE(is_reasoning_step_name("pick(l1)"));
}

TEST(CnfGoal, CompiledPlansSolveOriginal) {
    ProblemBuilder b;
    b.fluents({"p", "q", "r"});
    b.init({"p", "q"}).init({"-r"});
    b.action("a").rule({"p"}, "r");
    b.action("c").rule({"q"}, "r");
    b.goal_clause({"p", "r"});
    b.goal_clause({"q", "r"});
    b.goal({"-p"});
    ConformantProblem P = b.build();
    ConformantProblem Q = cnf_goal_compile(P);
    EXPECT_TRUE(Q.goal_clauses.empty());
    EXPECT_EQ(Q.num_fluents(), P.num_fluents() + 4);
    EXPECT_EQ(Q.actions.size(), P.actions.size() + 2);
    EXPECT_NE(Q.find_action("achieve-goal-clause-1"), std::nullopt);
}

TEST(CnfGoal, SingletonClausesBecomeGoals) {
    ProblemBuilder b;
    b.fluents({"p"});
    b.goal_clause({"p"});
    ConformantProblem Q = cnf_goal_compile(b.build());
    EXPECT_EQ(Q.goal, LiteralSet{Literal::pos(0)});
    EXPECT_EQ(Q.num_fluents(), 1);
}

TEST(Nondet, CopiesAndHiddenFluents) {
    GeneratedInstance g = generate("sgripper", {2});
    ConformantProblem P = load_problem(g.domain, g.problem);
    NondetCompilation N = nondet_compile(P, 2);
    EXPECT_TRUE(N.problem.is_deterministic());
    EXPECT_EQ(N.origin.at("move-out_1"), "move-out");
    EXPECT_EQ(N.origin.at("move-out_2"), "move-out");
    EXPECT_FALSE(N.problem.find_action("move-out").has_value());
    EXPECT_EQ(N.reset_hidden.at("reset_move-out_1").size(), 2u);
    int hidden = 0;
    for (bool h : N.hidden)
        hidden += h;
    EXPECT_EQ(hidden, 4);
    EXPECT_EQ(N.hidden.size(), static_cast<std::size_t>(N.problem.num_fluents()));
    EXPECT_THROW(nondet_compile(P, 0), InvalidParameters);
}

TEST(Nondet, ResetsRestoreTaggedAtoms) {
    ProblemBuilder b;
    b.fluents({"p", "g"});
    b.init({"-p"}).init({"-g"});
    b.action("flip").nondet({}, {{"p"}, {"-p"}});
    b.action("fix").rule({}, "g");
    b.goal({"g"});
    ConformantProblem P = b.build();
    NondetCompilation N = nondet_compile(P, 1);
    Analysis A(N.problem);
    Translation K = ktm(A, ki_spec(A, 1, true));
    inject_resets(K, N);
    auto reset = K.problem.find_action("reset_flip_1");
    ASSERT_TRUE(reset.has_value());
    EXPECT_FALSE(K.problem.actions[*reset].rules.empty());
    EXPECT_EQ(K.problem.actions[*reset].kind, ActionKind::Reset);
}
