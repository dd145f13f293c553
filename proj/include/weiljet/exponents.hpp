#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace weiljet {

// Exponent vector of a monomial; length equals the variable count of the
// surrounding polynomial ring or presentation.
using Exp = std::vector<uint32_t>;

inline uint32_t total_degree(const Exp& e) {
    uint32_t t = 0;
    for (uint32_t x : e) t += x;
    return t;
}

inline Exp exp_add(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Does the monomial g divide e (componentwise <=)?
inline bool exp_divides(const Exp& g, const Exp& e) {
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] > e[i]) return false;
    return true;
}

// Graded-lexicographic order, constant monomial first. Within a degree,
// earlier variables sort first (X1 before X2).
struct GradedLexLess {
    bool operator()(const Exp& a, const Exp& b) const {
        uint32_t ta = total_degree(a), tb = total_degree(b);
        if (ta != tb) return ta < tb;
        return a > b; // lexicographically greater vector = earlier variables
    }
};

std::string monomial_string(const Exp& e, const char* var = "X");

} // namespace weiljet
