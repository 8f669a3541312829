#ifndef CONFORMANT_LITERAL_H
#define CONFORMANT_LITERAL_H

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace conformant {
/*
  A literal is a fluent id plus a sign, packed as 2*fluent + (negated ? 1 : 0).
  The packing makes complement a single xor and gives literal codes that can
  index arrays of size 2*|F| directly.
*/
class Literal {
    int code_;
    explicit constexpr Literal(int code) : code_(code) {}
public:
    constexpr Literal() : code_(0) {}
    constexpr Literal(int fluent, bool positive)
        : code_(2 * fluent + (positive ? 0 : 1)) {}

    static constexpr Literal from_code(int code) {return Literal(code);}
    static constexpr Literal pos(int fluent) {return Literal(fluent, true);}
    static constexpr Literal neg(int fluent) {return Literal(fluent, false);}

    constexpr int fluent() const {return code_ >> 1;}
    constexpr bool positive() const {return (code_ & 1) == 0;}
    constexpr int code() const {return code_;}
    constexpr Literal operator~() const {return Literal(code_ ^ 1);}

    constexpr auto operator<=>(const Literal &) const = default;
};

inline constexpr Literal complement(Literal lit) {return ~lit;}

// Sorted, duplicate-free literal set. Used for clauses, tags, conditions.
using LiteralSet = std::vector<Literal>;
using Clause = LiteralSet;
using Tag = LiteralSet;

void normalize(LiteralSet &lits);
LiteralSet normalized(LiteralSet lits);
bool contains(const LiteralSet &set, Literal lit);
bool is_subset(const LiteralSet &sub, const LiteralSet &super);
bool has_complementary_pair(const LiteralSet &lits);
bool intersects(const LiteralSet &a, const LiteralSet &b);
LiteralSet set_union(const LiteralSet &a, const LiteralSet &b);
LiteralSet negate_all(const LiteralSet &lits);

struct LiteralSetHash {
    std::size_t operator()(const LiteralSet &lits) const;
};

// Names: "p" / "-p" for display.
std::string literal_to_string(Literal lit, const std::vector<std::string> &fluent_names);
std::string literals_to_string(const LiteralSet &lits,
                               const std::vector<std::string> &fluent_names,
                               const std::string &separator = ", ");
}

template<>
struct std::hash<conformant::Literal> {
    std::size_t operator()(conformant::Literal lit) const noexcept {
        return std::hash<int>()(lit.code());
    }
};

#endif
