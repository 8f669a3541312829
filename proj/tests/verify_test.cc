#include "conformant/errors.h"
#include "conformant/translate.h"
#include "conformant/verify.h"

#include "support/test_support.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace conformant;
using namespace testing_support;

TEST(InitialStates, Counts) {
    EXPECT_EQ(initial_states(pick_drop()).size(), 2u);
    EXPECT_EQ(initial_states(disjunction_toy(4)).size(), 15u);
    EXPECT_EQ(initial_states(knowledge_example()).size(), 4u);
    EXPECT_THROW(initial_states(disjunction_toy(6), 10), TooManyInitialStates);
}

TEST(InitialStates, ForcedLiterals) {
    ConformantProblem P = disjunction_toy(3);
    std::size_t n = for_each_initial_state(P, 100, [](const State &) {return true;},
                                           {Literal::neg(1), Literal::neg(2)});
    EXPECT_EQ(n, 1u);
}

TEST(ConformantCheck, PickDropPlans) {
    ConformantProblem P = pick_drop();
    Verdict good = conformant_check(P, plan_from_names({"pick(l1)", "drop(l3)", "pick(l2)",
                                                        "drop(l3)"}));
    EXPECT_TRUE(good.conformant);
    EXPECT_EQ(good.states_checked, 2u);
    Verdict bad = conformant_check(P, plan_from_names({"pick(l1)", "pick(l2)", "drop(l3)"}));
    EXPECT_FALSE(bad.conformant);
    ASSERT_TRUE(bad.counterexample.has_value());
}

TEST(ConformantCheck, KnowledgeExampleCounterexample) {
    ConformantProblem P = knowledge_example();
    EXPECT_TRUE(conformant_check(P, plan_from_names({"a", "b"})).conformant);
    Verdict v = conformant_check(P, plan_from_names({"a"}));
    EXPECT_FALSE(v.conformant);
    ASSERT_TRUE(v.counterexample.has_value());
    EXPECT_TRUE(v.counterexample->holds(Literal::pos(0)));
}

TEST(ConformantCheck, NondeterministicBranches) {
    ProblemBuilder b;
    b.fluents({"p", "g"});
    b.init({"-p"}).init({"-g"});
    b.action("flip").nondet({}, {{"p"}, {"-p"}});
    b.action("use").rule({"p"}, "g");
    b.action("force").rule({}, "p");
    b.goal({"g"});
    ConformantProblem P = b.build();
    EXPECT_FALSE(conformant_check(P, plan_from_names({"flip", "use"})).conformant);
    EXPECT_TRUE(conformant_check(P, plan_from_names({"flip", "force", "use"})).conformant);
}

TEST(ZeroApprox, KnowledgeExample) {
    ConformantProblem P = knowledge_example();
    EXPECT_TRUE(zero_approx_run(P, plan_from_names({"a", "b"})).valid);
    ZeroApproxVerdict v = zero_approx_run(P, plan_from_names({"a"}));
    EXPECT_FALSE(v.valid);
    EXPECT_TRUE(v.final.holds(Literal::pos(1)));
    EXPECT_TRUE(v.final.holds(Literal::neg(3)));
}

TEST(ZeroApprox, IncompleteOnDisjunctions) {
    ConformantProblem P = disjunction_toy(2);
    Plan plan = plan_from_names({"a1", "a2"});
    EXPECT_TRUE(conformant_check(P, plan).conformant);
    EXPECT_FALSE(zero_approx_run(P, plan).valid);
}

TEST(BeliefBfs, FindsShortestPlans) {
    auto plan = belief_bfs(pick_drop(), 5);
    ASSERT_TRUE(plan.has_value());
    EXPECT_EQ(plan->size(), 4u);
    auto toy = belief_bfs(disjunction_toy(3), 5);
    ASSERT_TRUE(toy.has_value());
    EXPECT_EQ(toy->size(), 3u);
    EXPECT_FALSE(belief_bfs(disjunction_toy(3), 2).has_value());
}

TEST(RelState, ProjectsOnRelevantFluents) {
    ConformantProblem P = disjunction_toy(3);
    RelevanceGraph R = relevance(P);
    State s = State::from_literals(P.num_fluents(), {Literal::neg(0), Literal::pos(1),
                                                     Literal::pos(2), Literal::pos(3)});
    LiteralSet rs = rel_state(s, Literal::pos(0), R);
    EXPECT_EQ(rs.size(), 3u);
    LiteralSet only = rel_state(s, Literal::pos(1), R);
    EXPECT_EQ(only.size(), 1u);
}

TEST(Basis, ToyHasOneStatePerDisjunct) {
    for (int n = 3; n <= 5; ++n) {
        ConformantProblem P = disjunction_toy(n);
        Analysis A(P);
        Basis B = build_basis(A, ki_spec(A, 1));
        EXPECT_EQ(B.states.size(), static_cast<std::size_t>(n));
        EXPECT_EQ(initial_states(P).size(), static_cast<std::size_t>(std::pow(2, n) - 1));
        for (const State &s : B.states) {
            int set = 0;
            for (int i = 1; i <= n; ++i)
                set += s.value(i);
            EXPECT_EQ(set, 1);
        }
    }
}

TEST(Basis, PlansOnBasisConformOnToy) {
    ConformantProblem P = disjunction_toy(3);
    Analysis A(P);
    Basis B = build_basis(A, ki_spec(A, 1));
    for_each_sequence(static_cast<int>(P.actions.size()), 3, [&](const std::vector<int> &seq) {
            Plan plan = plan_of(P.actions, seq);
            if (check_on_states(P, plan, B.states).conformant)
                EXPECT_TRUE(conformant_check(P, plan).conformant);
        });
}
