#include "conformant/analysis.h"

#include "conformant/errors.h"

#include <algorithm>
#include <string>

using namespace std;

namespace conformant {
static int count_unknown(const PICNF &pi) {
    LiteralSet units = pi.units();
    return pi.num_fluents() - static_cast<int>(units.size());
}

LiteralWidth width_of_literal(const Analysis &A, Literal lit, optional<int> bound) {
    LiteralWidth result;
    result.literal = lit;
    RelevantClauseSet rc = A.relevant(lit);
    result.relevant_clause_count = rc.clauses.size();
    if (rc.clauses.empty())
        return result;
    int limit = bound ? *bound : count_unknown(A.pi);
    int n = static_cast<int>(rc.extended.size());
    for (int k = 1; k <= n; ++k) {
        if (k > limit)
            throw WidthSearchCap("width of " + A.problem->literal_name(lit) +
                                 " exceeds search bound " + to_string(limit));
        vector<Clause> chosen;
        bool found = for_each_subset(n, k, [&](const vector<int> &idx) {
                chosen.clear();
                for (int i : idx)
                    chosen.push_back(rc.extended[i]);
                return satisfies(cover(chosen, A.pi), rc.clauses, A.pi);
            });
        if (found) {
            result.width = k;
            result.witness = chosen;
            return result;
        }
    }
    // Unreachable: the tautologies of every fluent in C_I(L) always qualify.
    throw WidthSearchCap("no witness found for " + A.problem->literal_name(lit));
}

WidthReport width(const Analysis &A, optional<int> bound) {
    WidthReport report;
    for (Literal lit : precondition_and_goal_literals(*A.problem)) {
        report.literals.push_back(width_of_literal(A, lit, bound));
        report.width = max(report.width, report.literals.back().width);
    }
    return report;
}
}
