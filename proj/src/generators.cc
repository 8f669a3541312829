#include "conformant/generators.h"

#include "conformant/errors.h"

#include <sstream>

using namespace std;

namespace conformant {
namespace {
string objects(const string &prefix, int n, const string &type) {
    string s;
    for (int i = 1; i <= n; ++i)
        s += " " + prefix + to_string(i);
    return s + " - " + type;
}

GeneratedInstance safe(int n) {
    GeneratedInstance g;
    g.name = "safe-" + to_string(n);
    g.domain =
        "(define (domain safe)\n"
        "  (:requirements :strips :typing :conditional-effects)\n"
        "  (:types comb)\n"
        "  (:predicates (opened) (right-comb ?c - comb))\n"
        "  (:action try\n"
        "    :parameters (?c - comb)\n"
        "    :effect (when (right-comb ?c) (opened))))\n";
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain safe)\n"
      << "  (:objects" << objects("c", n, "comb") << ")\n"
      << "  (:init (oneof";
    for (int i = 1; i <= n; ++i)
        p << " (right-comb c" << i << ")";
    p << "))\n  (:goal (opened)))\n";
    g.problem = p.str();
    return g;
}

GeneratedInstance bomb(int x, int y) {
    GeneratedInstance g;
    g.name = "bomb-" + to_string(x) + "-" + to_string(y);
    g.domain =
        "(define (domain bomb)\n"
        "  (:requirements :strips :typing :conditional-effects :negative-preconditions)\n"
        "  (:types package toilet)\n"
        "  (:predicates (armed ?p - package) (clogged ?t - toilet))\n"
        "  (:action dunk\n"
        "    :parameters (?p - package ?t - toilet)\n"
        "    :precondition (not (clogged ?t))\n"
        "    :effect (and (when (armed ?p) (not (armed ?p))) (clogged ?t)))\n"
        "  (:action flush\n"
        "    :parameters (?t - toilet)\n"
        "    :effect (not (clogged ?t))))\n";
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain bomb)\n"
      << "  (:objects" << objects("p", x, "package") << objects("t", y, "toilet") << ")\n"
      << "  (:init";
    for (int i = 1; i <= x; ++i)
        p << " (unknown (armed p" << i << "))";
    p << ")\n  (:goal (and";
    for (int i = 1; i <= x; ++i)
        p << " (not (armed p" << i << "))";
    p << ")))\n";
    g.problem = p.str();
    return g;
}

GeneratedInstance ring(int n) {
    GeneratedInstance g;
    g.name = "ring-" + to_string(n);
    ostringstream d;
    d << "(define (domain ring)\n"
      << "  (:requirements :strips :typing :conditional-effects)\n"
      << "  (:types room)\n"
      << "  (:constants" << objects("r", n, "room") << ")\n"
      << "  (:predicates (at ?r - room) (closed ?r - room) (opened ?r - room)"
      << " (locked ?r - room))\n"
      << "  (:action fwd\n    :effect (and";
    for (int i = 1; i <= n; ++i) {
        int j = i % n + 1;
        d << "\n      (when (at r" << i << ") (and (at r" << j << ") (not (at r" << i << "))))";
    }
    d << "))\n  (:action bwd\n    :effect (and";
    for (int i = 1; i <= n; ++i) {
        int j = (i + n - 2) % n + 1;
        d << "\n      (when (at r" << i << ") (and (at r" << j << ") (not (at r" << i << "))))";
    }
    d << "))\n"
      << "  (:action close\n"
      << "    :effect (forall (?r - room) (when (at ?r) (and (closed ?r) (not (opened ?r))))))\n"
      << "  (:action lock\n"
      << "    :effect (forall (?r - room) (when (and (at ?r) (closed ?r)) (locked ?r)))))\n";
    g.domain = d.str();
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain ring)\n"
      << "  (:init (oneof";
    for (int i = 1; i <= n; ++i)
        p << " (at r" << i << ")";
    p << ")";
    for (int i = 1; i <= n; ++i)
        p << "\n    (oneof (closed r" << i << ") (opened r" << i << "))"
          << " (or (not (locked r" << i << ")) (closed r" << i << "))";
    p << ")\n  (:goal (and";
    for (int i = 1; i <= n; ++i)
        p << " (locked r" << i << ")";
    p << ")))\n";
    g.problem = p.str();
    return g;
}

string grid_domain(const string &name, int n) {
    ostringstream d;
    d << "(define (domain " << name << ")\n"
      << "  (:requirements :strips :typing :conditional-effects)\n"
      << "  (:types pos)\n"
      << "  (:constants" << objects("p", n, "pos") << ")\n"
      << "  (:predicates (x ?p - pos) (y ?p - pos))\n";
    auto move = [&](const string &action, const string &axis, int step) {
            d << "  (:action " << action << "\n    :effect (and";
            for (int i = 1; i <= n; ++i) {
                int j = i + step;
                if (j < 1 || j > n)
                    continue;
                d << "\n      (when (" << axis << " p" << i << ") (and (" << axis << " p" << j
                  << ") (not (" << axis << " p" << i << "))))";
            }
            d << "))\n";
        };
    move("right", "x", 1);
    move("left", "x", -1);
    move("up", "y", 1);
    move("down", "y", -1);
    d << ")\n";
    return d.str();
}

GeneratedInstance square_center(int n) {
    GeneratedInstance g;
    g.name = "square-center-" + to_string(n);
    g.domain = grid_domain("square-center", n);
    int c = (n + 1) / 2;
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain square-center)\n"
      << "  (:init (oneof";
    for (int i = 1; i <= n; ++i)
        p << " (x p" << i << ")";
    p << ")\n    (oneof";
    for (int i = 1; i <= n; ++i)
        p << " (y p" << i << ")";
    p << "))\n  (:goal (and (x p" << c << ") (y p" << c << "))))\n";
    g.problem = p.str();
    return g;
}

GeneratedInstance corners_square(int n) {
    GeneratedInstance g;
    g.name = "corners-square-" + to_string(n);
    g.domain = grid_domain("corners-square", n);
    int c = (n + 1) / 2;
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain corners-square)\n"
      << "  (:init (oneof (x p1) (x p" << n << ")) (oneof (y p1) (y p" << n << ")))\n"
      << "  (:goal (and (x p" << c << ") (y p" << c << "))))\n";
    g.problem = p.str();
    return g;
}

GeneratedInstance sortnet(int n) {
    GeneratedInstance g;
    g.name = "sortnet-" + to_string(n);
    g.domain =
        "(define (domain sortnet)\n"
        "  (:requirements :strips :typing :conditional-effects :equality)\n"
        "  (:types line)\n"
        "  (:predicates (high ?l - line) (less ?i ?j - line))\n"
        "  (:action cmpswap\n"
        "    :parameters (?i ?j - line)\n"
        "    :precondition (less ?i ?j)\n"
        "    :effect (when (and (high ?i) (not (high ?j)))\n"
        "              (and (not (high ?i)) (high ?j)))))\n";
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain sortnet)\n"
      << "  (:objects" << objects("l", n, "line") << ")\n"
      << "  (:init";
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            p << " (less l" << i << " l" << j << ")";
    for (int i = 1; i <= n; ++i)
        p << " (unknown (high l" << i << "))";
    p << ")\n  (:goal (and";
    for (int i = 1; i < n; ++i)
        p << " (or (not (high l" << i << ")) (high l" << i + 1 << "))";
    p << ")))\n";
    g.problem = p.str();
    return g;
}

GeneratedInstance disjtoy(int n) {
    GeneratedInstance g;
    g.name = "disjtoy-" + to_string(n);
    ostringstream d;
    d << "(define (domain disjtoy)\n"
      << "  (:requirements :strips :conditional-effects)\n"
      << "  (:predicates (l)";
    for (int i = 1; i <= n; ++i)
        d << " (x" << i << ")";
    d << ")\n";
    for (int i = 1; i <= n; ++i)
        d << "  (:action a" << i << "\n    :effect (when (x" << i << ") (l)))\n";
    d << ")\n";
    g.domain = d.str();
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain disjtoy)\n"
      << "  (:init (or";
    for (int i = 1; i <= n; ++i)
        p << " (x" << i << ")";
    p << "))\n  (:goal (l)))\n";
    g.problem = p.str();
    return g;
}

GeneratedInstance sgripper(int n) {
    GeneratedInstance g;
    g.name = "sgripper-" + to_string(n);
    g.domain =
        "(define (domain sgripper)\n"
        "  (:requirements :strips :typing :conditional-effects :non-deterministic)\n"
        "  (:types room ball gripper)\n"
        "  (:constants a b c d - room)\n"
        "  (:predicates (at-robby ?r - room) (at ?o - ball ?r - room)\n"
        "               (carry ?o - ball ?g - gripper) (free ?g - gripper))\n"
        "  (:action pick\n"
        "    :parameters (?o - ball ?r - room ?g - gripper)\n"
        "    :precondition (and (at-robby ?r) (at ?o ?r) (free ?g))\n"
        "    :effect (and (carry ?o ?g) (not (at ?o ?r)) (not (free ?g))))\n"
        "  (:action drop\n"
        "    :parameters (?o - ball ?r - room ?g - gripper)\n"
        "    :precondition (and (at-robby ?r) (carry ?o ?g))\n"
        "    :effect (and (at ?o ?r) (free ?g) (not (carry ?o ?g))))\n"
        "  (:action move-out\n"
        "    :precondition (at-robby a)\n"
        "    :effect (and (not (at-robby a))\n"
        "                 (oneof (at-robby c) (at-robby d))))\n"
        "  (:action move\n"
        "    :effect (and\n"
        "      (when (at-robby c) (and (at-robby b) (not (at-robby c))))\n"
        "      (when (at-robby d) (and (at-robby b) (not (at-robby d))))\n"
        "      (when (at-robby b) (and (at-robby a) (not (at-robby b)))))))\n";
    ostringstream p;
    p << "(define (problem " << g.name << ")\n"
      << "  (:domain sgripper)\n"
      << "  (:objects" << objects("o", n, "ball") << " left right - gripper)\n"
      << "  (:init (at-robby a) (free left) (free right)";
    for (int i = 1; i <= n; ++i)
        p << " (at o" << i << " a)";
    p << ")\n  (:goal (and";
    for (int i = 1; i <= n; ++i)
        p << " (at o" << i << " b)";
    p << ")))\n";
    g.problem = p.str();
    return g;
}

void require(bool ok, const string &msg) {
    if (!ok)
        throw InvalidParameters(msg);
}
}

vector<string> generator_families() {
    return {"safe", "bomb", "ring", "square-center", "corners-square", "sortnet",
            "disjtoy", "sgripper"};
}

GeneratedInstance generate(const string &family, const vector<int> &params) {
    auto one = [&](int min_value) {
            require(params.size() == 1, family + " takes one parameter");
            require(params[0] >= min_value,
                    family + " needs a parameter of at least " + to_string(min_value));
            return params[0];
        };
    if (family == "safe")
        return safe(one(1));
    if (family == "bomb") {
        require(params.size() == 2, "bomb takes two parameters (packages toilets)");
        require(params[0] >= 1 && params[1] >= 1, "bomb needs positive parameters");
        return bomb(params[0], params[1]);
    }
    if (family == "ring")
        return ring(one(2));
    if (family == "square-center")
        return square_center(one(2));
    if (family == "corners-square")
        return corners_square(one(2));
    if (family == "sortnet")
        return sortnet(one(2));
    if (family == "disjtoy")
        return disjtoy(one(1));
    if (family == "sgripper")
        return sgripper(one(1));
    throw InvalidParameters("unknown family " + family);
}
}
