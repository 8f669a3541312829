#include "conformant/pddl.h"

#include "conformant/errors.h"

#include <algorithm>
#include <cctype>
#include <set>

using namespace std;

namespace conformant {
namespace {
struct SExpr {
    bool is_list = false;
    string atom;
    vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is(const string &word) const {return !is_list && atom == word;}
    string head() const {
        return is_list && !items.empty() && !items[0].is_list ? items[0].atom : "";
    }
};

[[noreturn]] void fail(const string &msg, const SExpr &e) {
    throw SyntaxError(msg, e.line, e.column);
}

class Reader {
    const string &text;
    size_t pos = 0;
    int line = 1;
    int column = 1;

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++pos;
    }

    void skip_space() {
        while (pos < text.size()) {
            if (isspace(static_cast<unsigned char>(text[pos]))) {
                advance();
            } else if (text[pos] == ';') {
                while (pos < text.size() && text[pos] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

public:
    explicit Reader(const string &text) : text(text) {}

    SExpr read() {
        skip_space();
        if (pos >= text.size())
            throw SyntaxError("unexpected end of input", line, column);
        SExpr e;
        e.line = line;
        e.column = column;
        if (text[pos] == '(') {
            e.is_list = true;
            advance();
            while (true) {
                skip_space();
                if (pos >= text.size())
                    throw SyntaxError("unbalanced parenthesis", e.line, e.column);
                if (text[pos] == ')') {
                    advance();
                    break;
                }
                e.items.push_back(read());
            }
        } else if (text[pos] == ')') {
            throw SyntaxError("unexpected ')'", line, column);
        } else {
            while (pos < text.size() && !isspace(static_cast<unsigned char>(text[pos])) &&
                   text[pos] != '(' && text[pos] != ')' && text[pos] != ';') {
                e.atom += static_cast<char>(tolower(static_cast<unsigned char>(text[pos])));
                advance();
            }
        }
        return e;
    }

    void expect_end() {
        skip_space();
        if (pos < text.size())
            throw SyntaxError("trailing input after definition", line, column);
    }
};

const set<string> SUPPORTED_REQUIREMENTS = {
    ":strips", ":typing", ":conditional-effects", ":negative-preconditions",
    ":equality", ":disjunctive-preconditions", ":universal-effects",
    ":non-deterministic", ":adl"
};

const set<string> UNSUPPORTED_SECTIONS = {
    ":functions", ":derived", ":durative-action", ":constraints",
    ":process", ":event", ":metric", ":timed-initial-literals"
};

vector<string> parse_requirements(const SExpr &section) {
    vector<string> reqs;
    for (size_t i = 1; i < section.items.size(); ++i) {
        const SExpr &r = section.items[i];
        if (r.is_list)
            fail("malformed requirement", r);
        if (!SUPPORTED_REQUIREMENTS.count(r.atom))
            throw UnsupportedFeature("requirement " + r.atom + " is not supported");
        reqs.push_back(r.atom);
    }
    return reqs;
}

vector<TypedName> parse_typed_list(const SExpr &list, size_t start) {
    vector<TypedName> result;
    size_t untyped_from = 0;
    for (size_t i = start; i < list.items.size(); ++i) {
        const SExpr &e = list.items[i];
        if (e.is_list)
            fail("expected a name", e);
        if (e.atom == "-") {
            if (i + 1 >= list.items.size())
                fail("missing type after '-'", e);
            const SExpr &type = list.items[++i];
            if (type.is_list)
                throw UnsupportedFeature("either-types are not supported");
            for (size_t k = untyped_from; k < result.size(); ++k)
                result[k].type = type.atom;
            untyped_from = result.size();
            continue;
        }
        result.push_back({e.atom, "object"});
    }
    return result;
}

struct Scope {
    const DomainAst &domain;
    set<string> names;
};

AtomAst parse_atom(const SExpr &e, const Scope &scope) {
    if (!e.is_list || e.items.empty() || e.items[0].is_list)
        fail("expected an atom", e);
    AtomAst atom;
    atom.predicate = e.items[0].atom;
    atom.line = e.line;
    atom.column = e.column;
    for (size_t i = 1; i < e.items.size(); ++i) {
        const SExpr &arg = e.items[i];
        if (arg.is_list)
            fail("nested term in atom", arg);
        if (!scope.names.count(arg.atom))
            fail("undeclared " + string(arg.atom[0] == '?' ? "variable " : "object ") +
                 arg.atom, arg);
        atom.args.push_back(arg.atom);
    }
    if (atom.predicate == "=") {
        if (atom.args.size() != 2)
            fail("equality takes two arguments", e);
        return atom;
    }
    const PredicateAst *pred = scope.domain.find_predicate(atom.predicate);
    if (!pred)
        fail("undeclared predicate " + atom.predicate, e);
    if (pred->parameters.size() != atom.args.size())
        fail("wrong number of arguments for " + atom.predicate, e);
    return atom;
}

LiteralAst parse_literal(const SExpr &e, const Scope &scope) {
    if (e.head() == "not") {
        if (e.items.size() != 2)
            fail("not takes one argument", e);
        if (!e.items[1].is_list || e.items[1].head() == "not" ||
            e.items[1].head() == "and" || e.items[1].head() == "or")
            throw UnsupportedFeature("negation of a compound formula at " +
                                     to_string(e.line) + ":" + to_string(e.column));
        return {parse_atom(e.items[1], scope), true};
    }
    return {parse_atom(e, scope), false};
}

ConditionAst parse_condition(const SExpr &e, const Scope &scope) {
    ConditionAst c;
    if (!e.is_list)
        fail("expected a formula", e);
    string head = e.head();
    if (e.items.empty() || head == "and" || head == "or") {
        c.kind = head == "or" ? ConditionAst::Kind::Or : ConditionAst::Kind::And;
        for (size_t i = 1; i < e.items.size(); ++i)
            c.children.push_back(parse_condition(e.items[i], scope));
        return c;
    }
    if (head == "forall" || head == "exists" || head == "imply" || head == "oneof")
        throw UnsupportedFeature(head + " in formulas is not supported");
    c.kind = ConditionAst::Kind::Literal;
    c.literal = parse_literal(e, scope);
    return c;
}

EffectAst parse_effect(const SExpr &e, Scope scope) {
    EffectAst eff;
    if (!e.is_list)
        fail("expected an effect", e);
    string head = e.head();
    if (e.items.empty() || head == "and" || head == "oneof") {
        eff.kind = head == "oneof" ? EffectAst::Kind::Oneof : EffectAst::Kind::And;
        for (size_t i = 1; i < e.items.size(); ++i)
            eff.children.push_back(parse_effect(e.items[i], scope));
        if (eff.kind == EffectAst::Kind::Oneof && eff.children.size() < 2)
            fail("oneof needs at least two outcomes", e);
        return eff;
    }
    if (head == "when") {
        if (e.items.size() != 3)
            fail("when takes a condition and an effect", e);
        eff.kind = EffectAst::Kind::When;
        eff.condition = parse_condition(e.items[1], scope);
        eff.children.push_back(parse_effect(e.items[2], scope));
        return eff;
    }
    if (head == "forall") {
        if (e.items.size() != 3 || !e.items[1].is_list)
            fail("forall takes a variable list and an effect", e);
        eff.kind = EffectAst::Kind::Forall;
        eff.variables = parse_typed_list(e.items[1], 0);
        for (const TypedName &v : eff.variables)
            scope.names.insert(v.name);
        eff.children.push_back(parse_effect(e.items[2], scope));
        return eff;
    }
    if (head == "increase" || head == "decrease" || head == "assign" ||
        head == "scale-up" || head == "scale-down")
        throw UnsupportedFeature("numeric effect " + head + " is not supported");
    eff.kind = EffectAst::Kind::Literal;
    eff.literal = parse_literal(e, scope);
    if (eff.literal.atom.predicate == "=")
        fail("equality cannot be an effect", e);
    return eff;
}

ActionSchema parse_action(const SExpr &e, const DomainAst &domain) {
    if (e.items.size() < 2 || e.items[1].is_list)
        fail("action needs a name", e);
    ActionSchema a;
    a.name = e.items[1].atom;
    Scope scope{domain, {}};
    for (const TypedName &c : domain.constants)
        scope.names.insert(c.name);
    const SExpr *pre = nullptr;
    const SExpr *eff = nullptr;
    for (size_t i = 2; i < e.items.size(); i += 2) {
        const SExpr &key = e.items[i];
        if (key.is_list || i + 1 >= e.items.size())
            fail("malformed action body", key);
        const SExpr &value = e.items[i + 1];
        if (key.atom == ":parameters") {
            if (!value.is_list)
                fail("parameters must be a list", value);
            a.parameters = parse_typed_list(value, 0);
            for (const TypedName &p : a.parameters) {
                if (p.name.empty() || p.name[0] != '?')
                    fail("parameter names start with '?'", value);
                if (p.type != "object" && !domain.types.count(p.type))
                    fail("undeclared type " + p.type, value);
                scope.names.insert(p.name);
            }
        } else if (key.atom == ":precondition") {
            pre = &value;
        } else if (key.atom == ":effect") {
            eff = &value;
        } else if (key.atom == ":observe") {
            throw UnsupportedFeature("sensing actions are not supported");
        } else {
            fail("unknown action key " + key.atom, key);
        }
    }
    if (pre)
        a.precondition = parse_condition(*pre, scope);
    if (eff)
        a.effect = parse_effect(*eff, scope);
    return a;
}

void check_define(const SExpr &top, const string &kind) {
    if (top.head() != "define" || top.items.size() < 2 || top.items[1].head() != kind ||
        top.items[1].items.size() != 2)
        fail("expected (define (" + kind + " NAME) ...)", top);
}
}

const PredicateAst *DomainAst::find_predicate(const string &name) const {
    for (const PredicateAst &p : predicates)
        if (p.name == name)
            return &p;
    return nullptr;
}

DomainAst parse_domain(const string &text) {
    Reader reader(text);
    SExpr top = reader.read();
    reader.expect_end();
    check_define(top, "domain");
    DomainAst d;
    d.name = top.items[1].items[1].atom;
    for (size_t i = 2; i < top.items.size(); ++i) {
        const SExpr &section = top.items[i];
        string head = section.head();
        if (UNSUPPORTED_SECTIONS.count(head))
            throw UnsupportedFeature(head + " is not supported");
        if (head == ":requirements") {
            d.requirements = parse_requirements(section);
        } else if (head == ":types") {
            for (const TypedName &t : parse_typed_list(section, 1))
                d.types[t.name] = t.type;
        } else if (head == ":constants") {
            vector<TypedName> cs = parse_typed_list(section, 1);
            d.constants.insert(d.constants.end(), cs.begin(), cs.end());
        } else if (head == ":predicates") {
            for (size_t k = 1; k < section.items.size(); ++k) {
                const SExpr &p = section.items[k];
                if (!p.is_list || p.items.empty() || p.items[0].is_list)
                    fail("malformed predicate", p);
                d.predicates.push_back({p.items[0].atom, parse_typed_list(p, 1)});
            }
        } else if (head == ":action") {
            d.actions.push_back(parse_action(section, d));
        } else {
            fail("unknown domain section " + head, section);
        }
    }
    for (const auto &[type, parent] : d.types)
        if (parent != "object" && !d.types.count(parent))
            throw SyntaxError("undeclared type " + parent, top.line, top.column);
    return d;
}

ProblemAst parse_problem(const string &text, const DomainAst &domain) {
    Reader reader(text);
    SExpr top = reader.read();
    reader.expect_end();
    check_define(top, "problem");
    ProblemAst p;
    p.name = top.items[1].items[1].atom;
    Scope scope{domain, {}};
    for (const TypedName &c : domain.constants)
        scope.names.insert(c.name);
    const SExpr *init = nullptr;
    const SExpr *goal = nullptr;
    for (size_t i = 2; i < top.items.size(); ++i) {
        const SExpr &section = top.items[i];
        string head = section.head();
        if (UNSUPPORTED_SECTIONS.count(head))
            throw UnsupportedFeature(head + " is not supported");
        if (head == ":domain") {
            if (section.items.size() != 2)
                fail("malformed :domain", section);
            p.domain = section.items[1].atom;
            if (p.domain != domain.name)
                fail("problem refers to domain " + p.domain, section);
        } else if (head == ":requirements") {
            p.requirements = parse_requirements(section);
        } else if (head == ":objects") {
            vector<TypedName> objs = parse_typed_list(section, 1);
            for (const TypedName &o : objs) {
                if (o.type != "object" && !domain.types.count(o.type))
                    fail("undeclared type " + o.type, section);
                scope.names.insert(o.name);
            }
            p.objects.insert(p.objects.end(), objs.begin(), objs.end());
        } else if (head == ":init") {
            init = &section;
        } else if (head == ":goal") {
            goal = &section;
        } else {
            fail("unknown problem section " + head, section);
        }
    }
    if (init) {
        vector<const SExpr *> entries;
        for (size_t i = 1; i < init->items.size(); ++i) {
            const SExpr &e = init->items[i];
            if (e.head() == "and")
                for (size_t k = 1; k < e.items.size(); ++k)
                    entries.push_back(&e.items[k]);
            else
                entries.push_back(&e);
        }
        for (const SExpr *e : entries) {
            InitEntry entry;
            string head = e->head();
            if (head == "or" || head == "oneof") {
                entry.kind = head == "or" ? InitEntry::Kind::Or : InitEntry::Kind::Oneof;
                for (size_t k = 1; k < e->items.size(); ++k)
                    entry.members.push_back(parse_literal(e->items[k], scope));
                if (entry.kind == InitEntry::Kind::Oneof && entry.members.size() < 2)
                    fail("oneof needs at least two members", *e);
                if (entry.members.empty())
                    fail("empty disjunction", *e);
            } else if (head == "unknown") {
                if (e->items.size() != 2)
                    fail("unknown takes one atom", *e);
                entry.kind = InitEntry::Kind::Unknown;
                entry.members.push_back({parse_atom(e->items[1], scope), false});
            } else if (head == "=" || (e->is_list && !e->items.empty() && e->items[0].is_list)) {
                fail("malformed init entry", *e);
            } else {
                entry.members.push_back(parse_literal(*e, scope));
            }
            for (const LiteralAst &m : entry.members)
                if (m.atom.predicate == "=")
                    fail("equality in init", *e);
            p.init.push_back(entry);
        }
    }
    if (!goal || goal->items.size() != 2)
        fail("problem needs exactly one goal formula", goal ? *goal : top);
    p.goal = parse_condition(goal->items[1], scope);
    return p;
}

pair<DomainAst, ProblemAst> parse(const string &domain_text, const string &problem_text) {
    DomainAst d = parse_domain(domain_text);
    ProblemAst p = parse_problem(problem_text, d);
    return {move(d), move(p)};
}

Plan read_plan(const string &text) {
    Plan plan;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == string::npos)
            end = text.size();
        string line = text.substr(start, end - start);
        start = end + 1;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == string::npos || line[b] == ';')
            continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '(' && line.back() == ')') {
            vector<string> words;
            string word;
            for (char c : line.substr(1, line.size() - 2)) {
                if (isspace(static_cast<unsigned char>(c))) {
                    if (!word.empty())
                        words.push_back(word);
                    word.clear();
                } else {
                    word += c;
                }
            }
            if (!word.empty())
                words.push_back(word);
            if (words.empty())
                continue;
            line = words[0];
            if (words.size() > 1) {
                line += "(";
                for (size_t i = 1; i < words.size(); ++i)
                    line += (i > 1 ? "," : "") + words[i];
                line += ")";
            }
        }
        plan.push_back(line);
    }
    return plan;
}
}
