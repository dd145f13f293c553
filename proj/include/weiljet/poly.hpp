#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "weiljet/exponents.hpp"
#include "weiljet/scalar.hpp"

namespace weiljet {

// Sparse multivariate polynomial over a fixed ring with a fixed variable
// count. Terms are kept in graded-lex order and never carry zero
// coefficients.
class SparsePoly {
public:
    using Terms = std::map<Exp, Scalar, GradedLexLess>;

    SparsePoly(Ring ring, int nvars);

    static SparsePoly constant(const Ring& ring, int nvars, const Scalar& c);
    static SparsePoly variable(const Ring& ring, int nvars, int v);
    static SparsePoly monomial(const Ring& ring, Exp e, const Scalar& c);

    const Ring& ring() const { return ring_; }
    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Total degree; -1 for the zero polynomial.
    int degree() const;
    Scalar coefficient(const Exp& e) const;
    bool is_constant() const;

    // Adds c * X^e, erasing the term if the sum cancels.
    void add_term(const Exp& e, const Scalar& c);

    SparsePoly operator-() const;
    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly operator*(const Scalar& s) const;
    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }
    bool operator==(const SparsePoly& o) const;
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    // Product with every term of total degree > cap dropped. Truncation
    // commutes with the quotient by the degree ideal, so chained capped
    // products stay exact modulo that ideal.
    SparsePoly mul_capped(const SparsePoly& o, int cap) const;
    SparsePoly pow(uint32_t n) const;

    // Terms of total degree > cap dropped.
    SparsePoly truncated(int cap) const;
    // Slice of the given total degree.
    SparsePoly homogeneous_part(int d) const;

    Scalar eval(const std::vector<Scalar>& point) const;

    // Variables print as x0, x1, ...
    std::string to_string() const;

private:
    void require_compatible(const SparsePoly& o) const;

    Ring ring_;
    int nvars_;
    Terms terms_;
};

inline SparsePoly operator*(const Scalar& s, const SparsePoly& p) { return p * s; }

// Exact division of p by (x_var - root), where root must not involve x_var.
// DivisionNotExactError when a nonzero remainder survives.
SparsePoly divide_exact(const SparsePoly& p, int var, const SparsePoly& root);

// Polynomial map K^arity -> K^coarity; component i is a polynomial in
// x0..x_{arity-1}.
class PolyMap {
public:
    PolyMap(Ring ring, int arity, std::vector<SparsePoly> components);

    const Ring& ring() const { return ring_; }
    int arity() const { return arity_; }
    int coarity() const { return static_cast<int>(comps_.size()); }
    const std::vector<SparsePoly>& components() const { return comps_; }
    const SparsePoly& component(int i) const { return comps_[i]; }
    int degree() const;

    std::vector<Scalar> eval(const std::vector<Scalar>& point) const;

    bool operator==(const PolyMap& o) const;
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

private:
    Ring ring_;
    int arity_;
    std::vector<SparsePoly> comps_;
};

// Splits every component into slices of total degree 0..degree(); entry d is
// the degree-d part of the map.
std::vector<PolyMap> homogeneous_parts(const PolyMap& p);

// Composition g after f with all terms of total degree > cap dropped at every
// intermediate product; exact modulo the degree ideal.
PolyMap truncated_compose(const PolyMap& g, const PolyMap& f, int cap);

// Recovers the values of the homogeneous slices P_0(x), ..., P_K(x) of a map
// P of total degree <= degree_bound from evaluations at scalar multiples of a
// single point: eval_at_multiple(c) must return P(c * x). The slices are
// separated exactly by forming differences r^i * F(c) - F(r * c), which kill
// one degree at a time; each step needs a unit r with r^i - r^D a unit, and
// NoSeparatingScalarsError is thrown when the ring has none (small prime
// moduli lack them once the degree spread is large enough). Evaluations are
// memoized; the scalar choices are deterministic, so results are reproducible.
std::vector<std::vector<Scalar>> separate_homogeneous(
    const std::function<std::vector<Scalar>(const Scalar&)>& eval_at_multiple,
    const Ring& ring, int degree_bound, int width);

} // namespace weiljet
