#include <vector>

#include "doctest.h"
#include "weiljet/jet.hpp"
#include "weiljet/json_io.hpp"

using namespace weiljet;

namespace {

Ring Q = Ring::rationals();

std::vector<Scalar> pt(const Ring& ring, std::initializer_list<long long> xs) {
    std::vector<Scalar> out;
    for (long long x : xs) out.push_back(Scalar::from_int(ring, x));
    return out;
}

Scalar coeff_of(const TaylorPoly& t, int out, std::initializer_list<uint32_t> exps) {
    return t.poly.component(out).coefficient(Exp(exps));
}

} // namespace

TEST_CASE("truncated expansion of a product map, all coefficients") {
    // f(x, y) = x^2 y at (2, 3): (2+h)^2 (3+u) expanded without the constant
    ExprMap f = ExprMap::parse(Q, "x0^2 * x1");
    TaylorPoly t = taylor(f, pt(Q, {2, 3}), 3);
    CHECK(t.poly.arity() == 2);
    CHECK(coeff_of(t, 0, {0, 0}).is_zero()); // no constant term
    CHECK(coeff_of(t, 0, {1, 0}) == Scalar::from_int(Q, 12));
    CHECK(coeff_of(t, 0, {0, 1}) == Scalar::from_int(Q, 4));
    CHECK(coeff_of(t, 0, {2, 0}) == Scalar::from_int(Q, 3));
    CHECK(coeff_of(t, 0, {1, 1}) == Scalar::from_int(Q, 4));
    CHECK(coeff_of(t, 0, {2, 1}) == Scalar::from_int(Q, 1));
    CHECK(coeff_of(t, 0, {3, 0}).is_zero());
    CHECK(scalar_eval(f, pt(Q, {2, 3}))[0] == Scalar::from_int(Q, 12));
}

TEST_CASE("expansion of a reciprocal reproduces the alternating series") {
    ExprMap f = ExprMap::parse(Q, "1/(1 + x0)");
    TaylorPoly t = taylor(f, pt(Q, {0}), 4);
    for (uint32_t j = 1; j <= 4; ++j)
        CHECK(coeff_of(t, 0, {j}) == Scalar::from_int(Q, j % 2 ? -1 : 1));
    CHECK_THROWS_AS(taylor(f, pt(Q, {-1}), 2), DomainError);
}

TEST_CASE("order zero expansions are empty maps over a checked domain") {
    ExprMap f = ExprMap::parse(Q, "1/(1 + x0)");
    TaylorPoly t = taylor(f, pt(Q, {1}), 0);
    CHECK(t.poly.component(0).terms().empty());
    CHECK_THROWS_AS(taylor(f, pt(Q, {-1}), 0), DomainError);
}

TEST_CASE("radial expansion splits exactly with a vanishing remainder at zero") {
    // f(x) = x^3 at x = 2 along v = 1: 8 + 12t + 6t^2 + t^3
    ExprMap f = ExprMap::parse(Q, "x0^3");
    RadialExpansion r = radial_expansion(f, pt(Q, {2}), pt(Q, {1}), 2);
    REQUIRE(r.coefficients.size() == 2);
    CHECK(r.coefficients[0][0] == Scalar::from_int(Q, 12));
    CHECK(r.coefficients[1][0] == Scalar::from_int(Q, 6));
    // remainder in t: f(x+tv) - f(x) - 12t - 6t^2 = t^3 = t^2 * (t); R = t
    CHECK(r.remainder.component(0) == SparsePoly::variable(Q, 1, 0));
    CHECK(r.remainder.component(0).eval({Scalar::zero(Q)}).is_zero());
    CHECK_THROWS_AS(radial_expansion(ExprMap::parse(Q, "1/(1 + x0)"), pt(Q, {0}),
                                     pt(Q, {1}), 2),
                    NotPolynomialError);
}

TEST_CASE("normalized differentials need no factorial divisions") {
    ExprMap f = ExprMap::parse(Q, "x0^3");
    // coefficients of (2 + d)^3: D^1 = 12, D^2 = 6, D^3 = 1
    CHECK(normalized_diff(f, pt(Q, {2}), {pt(Q, {1})}, {1})[0] == Scalar::from_int(Q, 12));
    CHECK(normalized_diff(f, pt(Q, {2}), {pt(Q, {1})}, {2})[0] == Scalar::from_int(Q, 6));
    CHECK(normalized_diff(f, pt(Q, {2}), {pt(Q, {1})}, {3})[0] == Scalar::from_int(Q, 1));

    // mixed second-order coefficient of (2 + d1)^2 (3 + d2) is 4
    ExprMap g = ExprMap::parse(Q, "x0^2 * x1");
    std::vector<std::vector<Scalar>> dirs{pt(Q, {1, 0}), pt(Q, {0, 1})};
    CHECK(normalized_diff(g, pt(Q, {2, 3}), dirs, {1, 1})[0] == Scalar::from_int(Q, 4));
    // and is symmetric under swapping the direction list
    std::vector<std::vector<Scalar>> swapped{pt(Q, {0, 1}), pt(Q, {1, 0})};
    CHECK(normalized_diff(g, pt(Q, {2, 3}), swapped, {1, 1}) ==
          normalized_diff(g, pt(Q, {2, 3}), dirs, {1, 1}));
}

TEST_CASE("curve coefficients, the nilpotent route, and the differential sums agree") {
    ExprMap f = ExprMap::parse(Q, "x0^2 + x0*x1; x1^3");
    std::vector<std::vector<Scalar>> curve{pt(Q, {2, 1}), pt(Q, {1, 3}), pt(Q, {0, 1})};
    JetValue jv = simplicial_jet(f, curve);
    REQUIRE(jv.order == 2);
    // (2+d)^2 + (2+d)(1+3d+d^2) -> value 6, d: 4 + 6 + 1 = 11, d^2: 1 + 3 + 2 = 6
    CHECK(jv.components[0] == pt(Q, {6, 1}));
    CHECK(jv.components[1][0] == Scalar::from_int(Q, 11));
    CHECK(jv.components[2][0] == Scalar::from_int(Q, 6));
    // (1+3d+d^2)^3 -> d: 9, d^2: 3*9 + 3 = 30
    CHECK(jv.components[1][1] == Scalar::from_int(Q, 9));
    CHECK(jv.components[2][1] == Scalar::from_int(Q, 30));

    std::vector<std::vector<Scalar>> dirs{curve[1], curve[2]};
    auto fibers = jet_from_taylor(f, curve[0], 2, dirs);
    CHECK(fibers[0] == jv.components[1]);
    CHECK(fibers[1] == jv.components[2]);
    CHECK(taylor_eqn_rhs(f, curve[0], dirs, 1) == jv.components[1]);
    CHECK(taylor_eqn_rhs(f, curve[0], dirs, 2) == jv.components[2]);
}

TEST_CASE("factorial comparison works over the rationals and refuses mod 2") {
    ExprMap f = ExprMap::parse(Q, "x0^3");
    CHECK(factorial_check(f, pt(Q, {2}), pt(Q, {1}), 2));
    CHECK(factorial_check(f, pt(Q, {2}), pt(Q, {5}), 3));

    Ring m2 = Ring::modular(2);
    ExprMap g = ExprMap::parse(m2, "x0^3");
    CHECK(factorial_check(g, pt(m2, {1}), pt(m2, {1}), 1));
    CHECK_THROWS_AS(factorial_check(g, pt(m2, {1}), pt(m2, {1}), 2), NotAUnitError);
}

TEST_CASE("characteristic two keeps square expansions without linear terms") {
    Ring m2 = Ring::modular(2);
    ExprMap f = ExprMap::parse(m2, "x0^2");
    TaylorPoly t = taylor(f, pt(m2, {1}), 2);
    CHECK(t.poly.component(0).coefficient(Exp{1}).is_zero()); // 2h vanishes
    CHECK(t.poly.component(0).coefficient(Exp{2}).is_one());
}

TEST_CASE("pushforward splits into a base value and nilpotent fiber") {
    ExprMap f = ExprMap::parse(Q, "1/(x0 - 3)");
    MonomialPtr w = whitney_sum(make_jet(Q, 2), make_tangent(Q, 1));
    const int ix1 = w->monomial_index(Exp{1, 0});
    const int ix1sq = w->monomial_index(Exp{2, 0});
    const int ix2 = w->monomial_index(Exp{0, 1});
    // nu = 4 X1 + X1^2 in the first summand
    std::vector<Scalar> coords(static_cast<size_t>(w->dim()), Scalar::zero(Q));
    coords[static_cast<size_t>(ix1)] = Scalar::from_int(Q, 4);
    coords[static_cast<size_t>(ix1sq)] = Scalar::one(Q);
    WeilElement nu(w, coords);
    Pushforward p = pushforward(f, w, pt(Q, {5}), {nu});
    CHECK(p.base[0] == Scalar::parse(Q, "1/2"));
    CHECK(p.fiber[0].coeff(w->monomial_index(Exp{0, 0})).is_zero());
    CHECK(p.fiber[0].coeff(ix1) == Scalar::from_int(Q, -1));
    CHECK(p.fiber[0].coeff(ix1sq) == Scalar::parse(Q, "7/4"));
    CHECK(p.fiber[0].coeff(ix2).is_zero());

    // arguments with a unit part are rejected: the fiber input must be nilpotent
    CHECK_THROWS_AS(pushforward(f, w, pt(Q, {5}), {WeilElement::unit(w)}), DomainError);
    // base point outside the domain
    CHECK_THROWS_AS(pushforward(f, w, pt(Q, {3}), {nu}), DomainError);
}

TEST_CASE("iterating two extensions equals the single tensor extension") {
    ExprMap f = ExprMap::parse(Q, "x0^2 + 1/(2 + x0)");
    MonomialPtr a = make_jet(Q, 2);
    MonomialPtr b = make_tangent(Q, 1);
    MonomialPtr ab = tensor(a, b);
    std::vector<Scalar> coords(static_cast<size_t>(ab->dim()), Scalar::zero(Q));
    for (int i = 0; i < ab->dim(); ++i) coords[static_cast<size_t>(i)] = Scalar::from_int(Q, i + 1);
    WeilElement z(ab, coords);
    EqualityReport rep = nested_vs_direct(f, a, b, {z});
    INFO(rep.detail);
    CHECK(rep.equal);
}

TEST_CASE("expansion of a composition equals the truncated composition of expansions") {
    ExprMap h = ExprMap::parse(Q, "x0 + x1^2; x0*x1");
    ExprMap g = ExprMap::parse(Q, "x0^2 - x1");
    for (int k = 1; k <= 3; ++k) {
        EqualityReport rep = taylor_chain(g, h, pt(Q, {1, 2}), k);
        INFO(rep.detail);
        CHECK(rep.equal);
    }
    Ring m101 = Ring::modular(101);
    EqualityReport rep = taylor_chain(ExprMap::parse(m101, "x0^3"),
                                      ExprMap::parse(m101, "x0^2 + 7"), pt(m101, {5}), 3);
    CHECK(rep.equal);
}

TEST_CASE("json encodings carry exact values") {
    ExprMap f = ExprMap::parse(Q, "x0^2");
    TaylorPoly t = taylor(f, pt(Q, {3}), 2);
    Json j = taylor_json(t);
    CHECK(j["order"] == 2);
    CHECK(j["base_point"][0] == "3");
    bool found_linear = false;
    for (const auto& term : j["terms"])
        if (term["exps"][0] == 1) {
            CHECK(term["coef"] == "6");
            found_linear = true;
        }
    CHECK(found_linear);

    Ring m5 = Ring::modular(5);
    CHECK(scalar_json(Scalar::from_int(m5, 9)) == Json(4)); // residues as integers
    CHECK(scalar_json(Scalar::parse(Q, "-2/3")) == Json("-2/3"));
}
