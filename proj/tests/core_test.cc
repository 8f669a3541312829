#include "conformant/errors.h"
#include "conformant/problem.h"
#include "conformant/progression.h"

#include "support/test_support.h"

#include <gtest/gtest.h>

using namespace conformant;
using namespace testing_support;

TEST(Literal, PackingAndComplement) {
    Literal p = Literal::pos(3);
    EXPECT_EQ(p.fluent(), 3);
    EXPECT_TRUE(p.positive());
    EXPECT_EQ((~p).fluent(), 3);
    EXPECT_FALSE((~p).positive());
    EXPECT_EQ(~~p, p);
    EXPECT_EQ(Literal::from_code(p.code()), p);
}

TEST(Literal, SetHelpers) {
    LiteralSet s = normalized({Literal::pos(2), Literal::neg(1), Literal::pos(2)});
    EXPECT_EQ(s.size(), 2u);
    EXPECT_TRUE(contains(s, Literal::neg(1)));
    EXPECT_FALSE(contains(s, Literal::pos(1)));
    EXPECT_FALSE(has_complementary_pair(s));
    EXPECT_TRUE(has_complementary_pair(normalized({Literal::pos(1), Literal::neg(1)})));
    EXPECT_TRUE(is_subset({Literal::pos(2)}, s));
    EXPECT_EQ(negate_all(s), normalized({Literal::pos(1), Literal::neg(2)}));
}

TEST(State, SetAndHold) {
    State s(70);
    s.make_true(Literal::pos(65));
    EXPECT_TRUE(s.holds(Literal::pos(65)));
    EXPECT_TRUE(s.holds(Literal::neg(64)));
    s.make_true(Literal::neg(65));
    EXPECT_FALSE(s.value(65));
    EXPECT_EQ(State::from_literals(70, {Literal::pos(1)}).literals().size(), 70u);
}

TEST(Progression, ConditionalEffectsUseOldState) {
    ConformantProblem P = knowledge_example();
    ClassicalProblem K = restrict(P, initial_states(P)[0]);
    RunResult r = run_plan(K, plan_from_names({"a", "b"}));
    EXPECT_TRUE(r.applicable);
    EXPECT_TRUE(r.achieved_goal);
    RunResult only_a = run_plan(K, plan_from_names({"a"}));
    EXPECT_TRUE(only_a.applicable);
    EXPECT_FALSE(only_a.achieved_goal);
}

TEST(Progression, PreconditionViolationAndConflict) {
    ProblemBuilder b;
    b.fluents({"p", "q"});
    b.init({"-p"}).init({"-q"});
    b.action("needs-p", {"p"}).rule({}, "q");
    b.action("clash").rule({}, "q").rule({}, "-q");
    ConformantProblem P = b.build();
    State s = initial_states(P)[0];
    EXPECT_THROW(apply(s, P.actions[0]), PreconditionViolation);
    EXPECT_THROW(apply(s, P.actions[1]), InconsistentResult);
    State out;
    EXPECT_FALSE(apply_checked(s, P.actions[1], out));
    ClassicalProblem K = restrict(P, s);
    RunResult r = run_plan(K, plan_from_names({"clash"}));
    EXPECT_FALSE(r.applicable);
    EXPECT_TRUE(r.conflict);
    EXPECT_EQ(r.failed_step, 0);
}

TEST(Progression, RestrictRejectsImpossibleState) {
    ConformantProblem P = knowledge_example();
    State s(P.num_fluents());
    EXPECT_THROW(restrict(P, s), NotAPossibleInitialState);
}

TEST(Progression, UnknownActionIsReported) {
    ConformantProblem P = knowledge_example();
    EXPECT_THROW(resolve_plan(P.actions, plan_from_names({"nope"})), UnknownAction);
}

TEST(Plan, StrippingDropsMerges) {
    Plan p;
    p.push_back("a");
    p.push_back("merge_x", true);
    p.push_back("b");
    EXPECT_EQ(p.stripped_length(), 2u);
    EXPECT_EQ(p.stripped().steps, (std::vector<std::string>{"a", "b"}));
}

TEST(Problem, BuilderAndQueries) {
    ConformantProblem P = pick_drop();
    EXPECT_EQ(P.num_fluents(), 4);
    EXPECT_EQ(P.actions.size(), 6u);
    EXPECT_TRUE(P.find_action("pick(l2)").has_value());
    EXPECT_TRUE(P.is_deterministic());
    EXPECT_EQ(unknown_fluents(P), (std::vector<int>{1, 2}));
    EXPECT_EQ(precondition_and_goal_literals(P), LiteralSet{Literal::pos(3)});
    EXPECT_EQ(P.literal_name(Literal::neg(0)), "-hold");
}
