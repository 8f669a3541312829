#include "conformant/literal.h"

#include <algorithm>

using namespace std;

namespace conformant {
void normalize(LiteralSet &lits) {
    sort(lits.begin(), lits.end());
    lits.erase(unique(lits.begin(), lits.end()), lits.end());
}

LiteralSet normalized(LiteralSet lits) {
    normalize(lits);
    return lits;
}

bool contains(const LiteralSet &set, Literal lit) {
    return binary_search(set.begin(), set.end(), lit);
}

bool is_subset(const LiteralSet &sub, const LiteralSet &super) {
    return includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool has_complementary_pair(const LiteralSet &lits) {
    // Sorted by code, so x and -x are adjacent.
    for (size_t i = 1; i < lits.size(); ++i)
        if (lits[i].fluent() == lits[i - 1].fluent())
            return true;
    return false;
}

bool intersects(const LiteralSet &a, const LiteralSet &b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j)
            return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

LiteralSet set_union(const LiteralSet &a, const LiteralSet &b) {
    LiteralSet result;
    result.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), back_inserter(result));
    return result;
}

LiteralSet negate_all(const LiteralSet &lits) {
    LiteralSet result;
    result.reserve(lits.size());
    for (Literal lit : lits)
        result.push_back(~lit);
    normalize(result);
    return result;
}

size_t LiteralSetHash::operator()(const LiteralSet &lits) const {
    size_t h = 0x9e3779b97f4a7c15ULL;
    for (Literal lit : lits)
        h = (h ^ static_cast<size_t>(lit.code())) * 0x100000001b3ULL;
    return h;
}

string literal_to_string(Literal lit, const vector<string> &fluent_names) {
    string name = lit.fluent() < static_cast<int>(fluent_names.size())
        ? fluent_names[lit.fluent()] : "f" + to_string(lit.fluent());
    return lit.positive() ? name : "-" + name;
}

string literals_to_string(const LiteralSet &lits, const vector<string> &fluent_names,
                          const string &separator) {
    string result;
    for (size_t i = 0; i < lits.size(); ++i) {
        if (i)
            result += separator;
        result += literal_to_string(lits[i], fluent_names);
    }
    return result;
}
}
