#ifndef CONFORMANT_GENERATORS_H
#define CONFORMANT_GENERATORS_H

#include <string>
#include <vector>

namespace conformant {
struct GeneratedInstance {
    std::string name;
    std::string domain;
    std::string problem;
};

// Families: safe N, bomb X Y, ring N, square-center N, corners-square N,
// sortnet N, disjtoy N, sgripper N. Throws InvalidParameters on bad input.
GeneratedInstance generate(const std::string &family, const std::vector<int> &params);
std::vector<std::string> generator_families();
}

#endif
