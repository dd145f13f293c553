#pragma once
#include <utility>
#include <vector>

#include "weiljet/jet.hpp"

namespace weiljet {

// Point of the order-k cubic extended domain: one space vector per subset of
// {1..k} (bitmask index, bit i-1 for index i) and one time scalar per
// nonempty subset (slot 0 of `times` is unused and kept at zero). The same
// shape carries the output of the extended tangent map, with `width` then
// equal to the map's coarity.
struct CubicPoint {
    Ring ring;
    int order;  // k, 0 <= k <= 6
    int width;  // m
    std::vector<std::vector<Scalar>> space;  // size 2^k
    std::vector<Scalar> times;               // size 2^k, index 0 unused
};

// Point of the order-k simplicial extended domain: vectors v_0..v_k and
// scalars s_1..s_k, with s_0 = 0 fixed by convention.
struct SimplicialPoint {
    Ring ring;
    int order;  // k >= 0
    int width;  // m
    std::vector<std::vector<Scalar>> v;  // size k+1
    std::vector<Scalar> s;               // size k
};

CubicPoint make_cubic(const Ring& ring, int order, int width,
                      std::vector<std::vector<Scalar>> space, std::vector<Scalar> times);
SimplicialPoint make_simplicial(const Ring& ring, int order, int width,
                                std::vector<std::vector<Scalar>> v, std::vector<Scalar> s);

bool cubic_equal(const CubicPoint& a, const CubicPoint& b);
bool simplicial_equal(const SimplicialPoint& a, const SimplicialPoint& b);

// Splits off the top index k: `x` keeps the subsets without k, `u` collects
// the subsets containing k (re-indexed over {1..k-1}), and `t` is the time of
// the singleton {k}. `u`'s slot for the empty set holds the space vector of
// {k}; its times are those of the supersets of {k}. cubic_join inverts this.
struct CubicSplit {
    CubicPoint x;
    CubicPoint u;
    Scalar t;
};
CubicSplit cubic_split(const CubicPoint& p);
CubicPoint cubic_join(const CubicPoint& x, const CubicPoint& u, const Scalar& t);

// x + t*u on all space and time slots (the affine structure of the domain).
CubicPoint cubic_axpy(const CubicPoint& x, const Scalar& t, const CubicPoint& u);

// The recursive domain condition for difference quotients: the top time is a
// unit and both recursive halves (x and x + t*u) satisfy it again. This is
// what the evaluation actually divides by; it is weaker than "every stored
// time is a unit" (images of the chain embedding carry zero times at the
// off-chain slots) and stronger where iterated times must combine to units.
bool cubic_nonsingular(const CubicPoint& p);

// All pairwise differences s_i - s_j (0 <= j < i <= k, s_0 = 0) are units.
bool simplicial_nonsingular(const SimplicialPoint& p);

// First-order difference quotient (f(x + t v) - f(x)) * t^{-1} for an
// order-1 point (x, v, t).
std::vector<Scalar> cubic_dq(const ExprMap& f, const CubicPoint& p);

// Extended tangent map of order k: recursively, with p split as (x, u, t),
// the output is (Tf(x), (Tf(x + t u) - Tf(x)) * t^{-1}, t). The output's
// times reproduce the input's times exactly; the spaces are coarity-wide.
CubicPoint extended_tangent(const ExprMap& f, const CubicPoint& p);

// Divided difference of order k as the explicit uniform sum
// sum_{i=0..k} f(node_i) / prod_{j != i} (s_i - s_j), with
// node_i = v_0 + sum_{j=1..i} prod_{m=0..j-1} (s_i - s_m) v_j and s_0 = 0.
std::vector<Scalar> simplicial_dq(const ExprMap& f, const SimplicialPoint& p);

// Extended jet map: all divided differences of orders 0..k at the same s;
// output v-slot l holds the order-l quotient of (v_0..v_l; s_1..s_l).
SimplicialPoint extended_jet(const ExprMap& f, const SimplicialPoint& p);

// Affine embedding of the simplicial domain into the cubic one: spaces sit
// on the chain subsets {1..i}, times are 1 on adjacent pairs {i,i+1} and
// s_i - s_{i-1} on singletons, everything else zero.
CubicPoint g_embed(const SimplicialPoint& p);

// Inverse on the image; NotInImageError when the zero/one pattern is broken.
SimplicialPoint g_unembed(const CubicPoint& q);

// Scalar actions: on cubic points v_alpha -> r^{|alpha|} v_alpha and
// t_alpha -> r^{|alpha|-2} t_alpha; on simplicial points
// (v_0, r v_1, ..., r^k v_k; r^{-1} s). r must be a unit.
CubicPoint rho_cubic(const Scalar& r, const CubicPoint& p);
SimplicialPoint rho_simplicial(const Scalar& r, const SimplicialPoint& p);

// Exact symbolic divided differences of a polynomial map at fixed vectors
// v_0..v_k, as polynomials in the formal scalars s_1..s_k (variable i-1
// stands for s_i). Entry j-1 of the result is the order-j map: it is built
// by evaluating f at the order-j node with formal times, subtracting the
// lower-order terms verbatim, and dividing exactly by every (s_j - s_l),
// l = 0..j-1 in turn. A failed division is a DivisionNotExactError and
// falsifies the calculus — it is never tolerated. Setting s = 0 recovers
// the jet components without any division by the time variables.
std::vector<PolyMap> symbolic_simplicial(const ExprMap& f,
                                         const std::vector<std::vector<Scalar>>& v);

// Discovers the componentwise sign relating the two routes around the chain
// embedding: extended_tangent(f, g_embed(p)) versus g_embed(extended_jet(f, p)),
// compared on the chain space slots {1..l}. Every trial must yield the same
// pattern and every slot must be decided by some trial; inconsistency or an
// all-zero slot is an Error. Returns k+1 entries of +1/-1.
std::vector<int> discover_embedding_signs(
    const std::vector<std::pair<ExprMap, SimplicialPoint>>& trials);

// The frozen pattern (calibrated once at orders 1..3 and extended by the
// stationary shape of the recursion): all entries +1.
std::vector<int> embedding_sign_pattern(int k);

// Checks the embedding identity with the frozen signs on one map and point.
EqualityReport embedding_compatibility(const ExprMap& f, const SimplicialPoint& p);

} // namespace weiljet
