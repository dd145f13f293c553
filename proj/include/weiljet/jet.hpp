#pragma once
#include <vector>

#include "weiljet/expr.hpp"

namespace weiljet {

// Taylor polynomial of f at base_point: a map in the displacement variables,
// of degree <= order, with no constant term.
struct TaylorPoly {
    std::vector<Scalar> base_point;
    int order;
    PolyMap poly;
};

// Jet of order k: k+1 coarity-vectors; component 0 is the value at the base.
struct JetValue {
    int order;
    std::vector<std::vector<Scalar>> components;
};

// Plain evaluation on base-ring points.
std::vector<Scalar> scalar_eval(const ExprMap& f, const std::vector<Scalar>& x);

// Extracted by evaluating f over the truncated polynomial algebra in
// arity-many variables at x + (X_1, ..., X_m): division-free, valid in every
// characteristic.
TaylorPoly taylor(const ExprMap& f, const std::vector<Scalar>& x, int k);

// f(x + t v) split as f(x) + a_1 t + ... + a_k t^k + t^k R(t) with R(0) = 0.
struct RadialExpansion {
    std::vector<std::vector<Scalar>> coefficients; // a_1..a_k
    PolyMap remainder;                             // R, a map in the single variable t
};
// Polynomial f only (NotPolynomialError otherwise); the split is exact and
// unique, and R(0) = 0 holds by construction.
RadialExpansion radial_expansion(const ExprMap& f, const std::vector<Scalar>& x,
                                 const std::vector<Scalar>& v, int k);

// Normalized differential D^alpha: the coefficient of prod_i d_i^{alpha_i} in
// f(x + sum_i d_i v_i) over the tensor of single-variable truncated algebras
// of orders alpha_i — the iterated per-variable coefficient extraction done
// in one pass. No factorials involved, so this exists over every base ring.
std::vector<Scalar> normalized_diff(const ExprMap& f, const std::vector<Scalar>& x,
                                    const std::vector<std::vector<Scalar>>& vlist,
                                    const std::vector<uint32_t>& alpha);

// Components 0..k of the jet: coefficient of d^l in f(v0 + d v1 + ... + d^k vk).
JetValue simplicial_jet(const ExprMap& f, const std::vector<std::vector<Scalar>>& v);

// Fiber components 1..k obtained by feeding the nilpotent argument
// d v1 + ... + d^k vk into the Taylor polynomial at x; asserted equal to the
// simplicial jet fibers before returning.
std::vector<std::vector<Scalar>> jet_from_taylor(const ExprMap& f,
                                                 const std::vector<Scalar>& x, int k,
                                                 const std::vector<std::vector<Scalar>>& v);

// Sum of D^alpha over all alpha with sum_i i*alpha_i = j: the closed form of
// jet component j in terms of normalized differentials.
std::vector<Scalar> taylor_eqn_rhs(const ExprMap& f, const std::vector<Scalar>& x,
                                   const std::vector<std::vector<Scalar>>& v, int j);

// Compares D^j_v f(x) with the classical d^j f(x)(v,...,v)/j!, where d^j is
// computed as an iterated first differential. Throws NotAUnitError when j!
// is not invertible — the expected small-characteristic behavior; D^j itself
// never needs the division.
bool factorial_check(const ExprMap& f, const std::vector<Scalar>& x,
                     const std::vector<Scalar>& v, int j);

// Chain rule at the Taylor level: Tay(g∘h) vs the truncated composition of
// the two Taylor polynomials, compared exactly.
EqualityReport taylor_chain(const ExprMap& g, const ExprMap& h,
                            const std::vector<Scalar>& x, int k);

} // namespace weiljet
