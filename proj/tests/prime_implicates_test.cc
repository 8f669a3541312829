#include "conformant/errors.h"
#include "conformant/prime_implicates.h"

#include "support/test_support.h"

#include <gtest/gtest.h>

#include <set>

using namespace conformant;
using namespace testing_support;

namespace {
const Literal x1 = Literal::pos(0), x2 = Literal::pos(1), x3 = Literal::pos(2);

std::vector<Clause> oneof3() {
    return {normalized({x1, x2, x3}), normalized({~x1, ~x2}), normalized({~x1, ~x3}),
            normalized({~x2, ~x3})};
}
}

TEST(PrimeImplicates, ResolvesToUnit) {
    PICNF pi = prime_implicates(2, {normalized({x1, x2}), normalized({~x1, x2})});
    EXPECT_EQ(pi.clauses(), std::vector<Clause>{Clause{x2}});
}

TEST(PrimeImplicates, OneofIsAlreadyPrime) {
    PICNF pi = prime_implicates(3, oneof3());
    std::set<Clause> got(pi.clauses().begin(), pi.clauses().end());
    std::vector<Clause> in = oneof3();
    EXPECT_EQ(got, std::set<Clause>(in.begin(), in.end()));
}

TEST(PrimeImplicates, Inconsistent) {
    EXPECT_THROW(prime_implicates(1, {{x1}, {~x1}}), InconsistentInit);
}

TEST(PrimeImplicates, CapIsEnforced) {
    std::mt19937 rng(3);
    std::vector<Clause> cnf;
    // Pairwise xor chains produce many implicates.
    for (int i = 0; i + 1 < 14; ++i) {
        Literal a = Literal::pos(i), b = Literal::pos(i + 1);
        cnf.push_back(normalized({a, b}));
        cnf.push_back(normalized({~a, ~b}));
    }
    for (int i = 0; i + 2 < 14; i += 2)
        cnf.push_back(normalized({Literal::pos(i), Literal::pos(i + 2), Literal::neg(i + 1)}));
    EXPECT_THROW(prime_implicates(14, cnf, 5), PiBlowup);
}

TEST(PrimeImplicates, MatchesTruthTables) {
    std::mt19937 rng(11);
    for (int round = 0; round < 100; ++round) {
        int n = 2 + round % 5;
        std::vector<Clause> cnf = random_cnf(rng, n, 2 + round % 5, 3);
        bool satisfiable = true;
        std::set<Clause> expected = truth_table_prime_implicates(n, cnf, satisfiable);
        if (!satisfiable) {
            EXPECT_THROW(prime_implicates(n, cnf), InconsistentInit);
            continue;
        }
        PICNF pi = prime_implicates(n, cnf);
        EXPECT_EQ(std::set<Clause>(pi.clauses().begin(), pi.clauses().end()), expected);
    }
}

TEST(Entailment, LiteralsUnderTags) {
    PICNF pi = prime_implicates(2, {normalized({x1, x2}), normalized({~x1, ~x2})});
    EXPECT_TRUE(entails_literal(pi, {x1}, ~x2));
    EXPECT_TRUE(entails_literal(pi, {x1}, x1));
    PICNF disj = prime_implicates(2, {normalized({x1, x2})});
    EXPECT_FALSE(entails_literal(disj, {}, x1));
}

TEST(Entailment, ClosureAndConsistency) {
    PICNF pi = prime_implicates(3, oneof3());
    EXPECT_EQ(closure(pi, {x1}), normalized({x1, ~x2, ~x3}));
    EXPECT_TRUE(tag_consistent(pi, {x1}));
    EXPECT_FALSE(tag_consistent(pi, normalized({x1, x2})));
    EXPECT_FALSE(consistent_with(pi, normalized({~x1, ~x2, ~x3})));
    EXPECT_TRUE(consistent_with(pi, normalized({~x1, ~x2})));
    // Inconsistent tags close to every literal.
    EXPECT_EQ(closure(pi, normalized({x1, x2})).size(), 6u);
}

TEST(Merges, Validity) {
    PICNF pi = prime_implicates(3, oneof3());
    EXPECT_TRUE(merge_valid(pi, {{{x1}, {x2}, {x3}}, x1}));
    EXPECT_FALSE(merge_valid(pi, {{{x1}, {x2}}, x1}));
    PICNF empty = prime_implicates(1, {});
    EXPECT_TRUE(merge_valid(empty, {{{x1}, {~x1}}, x1}));
}

TEST(Merges, ProjectedModels) {
    PICNF pi = prime_implicates(3, oneof3());
    EXPECT_EQ(projected_models(pi, {0, 1, 2}, 100).size(), 3u);
    EXPECT_EQ(projected_models(pi, {0, 1}, 100).size(), 3u);
    EXPECT_THROW(projected_models(pi, {0, 1, 2}, 2), TooManyModels);
}
