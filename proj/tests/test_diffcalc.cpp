#include <vector>

#include "doctest.h"
#include "weiljet/diffcalc.hpp"
#include "weiljet/jet.hpp"
#include "weiljet/rng.hpp"

using namespace weiljet;

namespace {

Ring Q = Ring::rationals();

std::vector<Scalar> pt(const Ring& ring, std::initializer_list<long long> xs) {
    std::vector<Scalar> out;
    for (long long x : xs) out.push_back(Scalar::from_int(ring, x));
    return out;
}

Scalar sc(long long v) { return Scalar::from_int(Q, v); }

} // namespace

TEST_CASE("first-order quotient of a square: (x+tv)^2 - x^2 over t") {
    ExprMap f = ExprMap::parse(Q, "x0^2");
    CubicPoint p = make_cubic(Q, 1, 1, {pt(Q, {3}), pt(Q, {2})}, {Scalar::zero(Q), sc(5)});
    CHECK(cubic_nonsingular(p));
    std::vector<Scalar> q = cubic_dq(f, p);
    // 2xv + tv^2 = 12 + 20 = 32; and directly (169 - 9)/5
    CHECK(q[0] == sc(32));

    // linear maps have t-independent quotients
    ExprMap lin = ExprMap::parse(Q, "7*x0 + 2");
    CubicPoint p2 = make_cubic(Q, 1, 1, {pt(Q, {3}), pt(Q, {2})}, {Scalar::zero(Q), sc(9)});
    CHECK(cubic_dq(lin, p)[0] == sc(14));
    CHECK(cubic_dq(lin, p2)[0] == sc(14));

    CubicPoint sing = make_cubic(Q, 1, 1, {pt(Q, {3}), pt(Q, {2})},
                                 {Scalar::zero(Q), Scalar::zero(Q)});
    CHECK_FALSE(cubic_nonsingular(sing));
    CHECK_THROWS_AS(cubic_dq(f, sing), SingularTimeError);
}

TEST_CASE("assembled extended tangent keeps the input times") {
    ExprMap f = ExprMap::parse(Q, "x0^2");
    CubicPoint p = make_cubic(
        Q, 2, 1, {pt(Q, {3}), pt(Q, {2}), pt(Q, {1}), pt(Q, {4})},
        {Scalar::zero(Q), sc(5), sc(7), sc(2)});
    REQUIRE(cubic_nonsingular(p));
    CubicPoint out = extended_tangent(f, p);
    CHECK(out.times == p.times);
    CHECK(out.order == 2);
    CHECK(out.width == 1);
    // slot for the empty set is plain evaluation
    CHECK(out.space[0][0] == sc(9));
}

TEST_CASE("second-order divided difference of a square matches the weight formula") {
    // f = x^2, v = (0, 1, 0), s = (1, 2): 0/2 + 1/(-1) + 4/2 = 1
    ExprMap f = ExprMap::parse(Q, "x0^2");
    SimplicialPoint p = make_simplicial(Q, 2, 1, {pt(Q, {0}), pt(Q, {1}), pt(Q, {0})},
                                        {sc(1), sc(2)});
    REQUIRE(simplicial_nonsingular(p));
    CHECK(simplicial_dq(f, p)[0] == sc(1));

    // constants are annihilated by every positive order
    ExprMap c = ExprMap::parse(Q, "5 + 0*x0");
    CHECK(simplicial_dq(c, p)[0].is_zero());

    // s with a repeated value is singular
    SimplicialPoint bad = make_simplicial(Q, 2, 1, {pt(Q, {0}), pt(Q, {1}), pt(Q, {0})},
                                          {sc(2), sc(2)});
    CHECK_FALSE(simplicial_nonsingular(bad));
    CHECK_THROWS_AS(simplicial_dq(f, bad), SingularTimeError);
    // s touching 0 is singular too: s_0 = 0 is part of the tuple
    SimplicialPoint bad0 = make_simplicial(Q, 2, 1, {pt(Q, {0}), pt(Q, {1}), pt(Q, {0})},
                                           {Scalar::zero(Q), sc(2)});
    CHECK_FALSE(simplicial_nonsingular(bad0));
}

TEST_CASE("chain embedding lands on the documented slots") {
    SimplicialPoint p = make_simplicial(
        Q, 2, 1, {pt(Q, {10}), pt(Q, {20}), pt(Q, {30})}, {sc(4), sc(9)});
    CubicPoint c = g_embed(p);
    // spaces on the chain subsets {}, {1}, {1,2}
    CHECK(c.space[0] == pt(Q, {10}));
    CHECK(c.space[1] == pt(Q, {20}));
    CHECK(c.space[3] == pt(Q, {30}));
    CHECK(c.space[2] == pt(Q, {0})); // off-chain space is zero
    // times: singleton {1} -> s1, singleton {2} -> s2 - s1, pair -> 1
    CHECK(c.times[1] == sc(4));
    CHECK(c.times[2] == sc(5));
    CHECK(c.times[3] == sc(1));

    SimplicialPoint back = g_unembed(c);
    CHECK(simplicial_equal(back, p));

    // tampering with an off-chain slot leaves the image
    CubicPoint tampered = c;
    tampered.space[2][0] = sc(1);
    CHECK_THROWS_AS(g_unembed(tampered), NotInImageError);
}

TEST_CASE("degree scaling acts as documented and is natural") {
    ExprMap f = ExprMap::parse(Q, "x0^3 - x0");
    SimplicialPoint p = make_simplicial(
        Q, 2, 1, {pt(Q, {2}), pt(Q, {3}), pt(Q, {4})}, {sc(1), sc(3)});
    Scalar r = Scalar::parse(Q, "2");
    // identity at r = 1
    CHECK(simplicial_equal(rho_simplicial(Scalar::one(Q), p), p));
    // v_i scales by r^i, s by r^{-1}
    SimplicialPoint rp = rho_simplicial(r, p);
    CHECK(rp.v[0] == pt(Q, {2}));
    CHECK(rp.v[1] == pt(Q, {6}));
    CHECK(rp.v[2] == pt(Q, {16}));
    CHECK(rp.s[0] == Scalar::parse(Q, "1/2"));
    CHECK(rp.s[1] == Scalar::parse(Q, "3/2"));
    // naturality through the divided-difference prolongation
    CHECK(simplicial_equal(extended_jet(f, rp), rho_simplicial(r, extended_jet(f, p))));

    // cubic side: v_a scales by r^{|a|}, t_a by r^{|a|-2}
    CubicPoint c = g_embed(p);
    CubicPoint rc = rho_cubic(r, c);
    CHECK(rc.space[0] == pt(Q, {2}));
    CHECK(rc.space[1] == pt(Q, {6}));
    CHECK(rc.space[3] == pt(Q, {16}));
    CHECK(rc.times[1] == Scalar::parse(Q, "1/2")); // |a| = 1: r^{-1} t
    CHECK(rc.times[3] == sc(1));                   // |a| = 2: unchanged
    CHECK(cubic_equal(extended_tangent(f, rc), rho_cubic(r, extended_tangent(f, c))));
    // the embedding itself is equivariant
    CHECK(cubic_equal(g_embed(rp), rc));
}

TEST_CASE("formal divided differences of a square in the difference variables") {
    // f = x^2 with formal expansion points (v0, v1, v2)
    ExprMap f = ExprMap::parse(Q, "x0^2");
    std::vector<std::vector<Scalar>> v{pt(Q, {2}), pt(Q, {3}), pt(Q, {5})};
    std::vector<PolyMap> F = symbolic_simplicial(f, v);
    REQUIRE(F.size() == 2);
    // F1 = 2 v0 v1 + s1 v1^2 = 12 + 9 s1
    SparsePoly f1 = F[0].component(0);
    CHECK(f1.coefficient(Exp{0, 0}) == sc(12));
    CHECK(f1.coefficient(Exp{1, 0}) == sc(9));
    // F2 = v1^2 + 2 v0 v2 + 2 s2 v1 v2 + s2(s2 - s1) v2^2 = 29 + 30 s2 + 25 s2^2 - 25 s1 s2
    SparsePoly f2 = F[1].component(0);
    CHECK(f2.coefficient(Exp{0, 0}) == sc(29));
    CHECK(f2.coefficient(Exp{0, 1}) == sc(30));
    CHECK(f2.coefficient(Exp{0, 2}) == sc(25));
    CHECK(f2.coefficient(Exp{1, 1}) == sc(-25));
    CHECK(f2.coefficient(Exp{1, 0}).is_zero());

    // linear maps: every formal difference is the constant f applied to v_j
    ExprMap lin = ExprMap::parse(Q, "3*x0 + 1");
    std::vector<PolyMap> L = symbolic_simplicial(lin, v);
    CHECK(L[0].component(0) == SparsePoly::constant(Q, 2, sc(9)));
    CHECK(L[1].component(0) == SparsePoly::constant(Q, 2, sc(15)));
}

TEST_CASE("formal differences specialize to quotients and to curve coefficients") {
    ExprMap f = ExprMap::parse(Q, "x0^3 - 2*x0");
    std::vector<std::vector<Scalar>> v{pt(Q, {1}), pt(Q, {2}), pt(Q, {1})};
    std::vector<PolyMap> F = symbolic_simplicial(f, v);

    // at nonsingular s both routes give the same numbers
    std::vector<Scalar> s{sc(3), sc(7)};
    SimplicialPoint p = make_simplicial(Q, 2, 1, v, s);
    std::vector<Scalar> direct = simplicial_dq(f, p);
    CHECK(F[1].component(0).eval(s) == direct[0]);

    // at s = 0 they become the curve coefficients
    std::vector<Scalar> zeros{Scalar::zero(Q), Scalar::zero(Q)};
    JetValue jv = simplicial_jet(f, v);
    CHECK(F[0].component(0).eval(zeros) == jv.components[1][0]);
    CHECK(F[1].component(0).eval(zeros) == jv.components[2][0]);
}

TEST_CASE("prolongations compose with map composition at nonsingular points") {
    ExprMap f = ExprMap::parse(Q, "x0^2 + x1; x0*x1");
    ExprMap g = ExprMap::parse(Q, "x0 - x1^2");
    ExprMap gf = compose(g, f);

    SimplicialPoint p = make_simplicial(
        Q, 2, 2, {pt(Q, {1, 2}), pt(Q, {3, 1}), pt(Q, {0, 2})}, {sc(2), sc(5)});
    REQUIRE(simplicial_nonsingular(p));
    CHECK(simplicial_equal(extended_jet(g, extended_jet(f, p)), extended_jet(gf, p)));

    CubicPoint c = make_cubic(
        Q, 2, 2,
        {pt(Q, {1, 2}), pt(Q, {3, 1}), pt(Q, {0, 2}), pt(Q, {2, 2})},
        {Scalar::zero(Q), sc(2), sc(3), sc(4)});
    REQUIRE(cubic_nonsingular(c));
    CHECK(cubic_equal(extended_tangent(g, extended_tangent(f, c)),
                      extended_tangent(gf, c)));
}

TEST_CASE("the frozen chain-slot sign pattern is the identity and verifies") {
    for (int k = 1; k <= 3; ++k) {
        auto pattern = embedding_sign_pattern(k);
        REQUIRE(static_cast<int>(pattern.size()) == k + 1);
        for (int v : pattern) CHECK(v == 1);
    }

    // discovery on a concrete batch reproduces it
    Rng rng(314159);
    std::vector<std::pair<ExprMap, SimplicialPoint>> batch;
    for (int trial = 0; trial < 6; ++trial) {
        ExprMap f = ExprMap::parse(Q, trial % 2 ? "x0^3 - x0" : "x0^2 + 2*x0");
        std::vector<std::vector<Scalar>> v;
        for (int i = 0; i <= 2; ++i) v.push_back(pt(Q, {rng.range(-5, 5)}));
        std::vector<Scalar> s{sc(1 + rng.range(0, 3)), sc(5 + rng.range(0, 3))};
        batch.emplace_back(f, make_simplicial(Q, 2, 1, v, s));
    }
    auto discovered = discover_embedding_signs(batch);
    CHECK(discovered == embedding_sign_pattern(2));

    // the compatibility square itself, on a rational map
    ExprMap f = ExprMap::parse(Q, "1/(10 + x0)");
    SimplicialPoint p = make_simplicial(
        Q, 3, 1, {pt(Q, {1}), pt(Q, {2}), pt(Q, {1}), pt(Q, {3})},
        {sc(1), sc(3), sc(6)});
    EqualityReport rep = embedding_compatibility(f, p);
    INFO(rep.detail);
    CHECK(rep.equal);
}

TEST_CASE("malformed extended points are rejected at construction") {
    CHECK_THROWS_AS(make_cubic(Q, 1, 1, {pt(Q, {1})}, {Scalar::zero(Q)}),
                    ArityMismatchError);
    CHECK_THROWS_AS(make_cubic(Q, 7, 1,
                               std::vector<std::vector<Scalar>>(128, pt(Q, {0})),
                               std::vector<Scalar>(128, Scalar::zero(Q))),
                    DomainError);
    CHECK_THROWS_AS(make_simplicial(Q, 2, 1, {pt(Q, {0}), pt(Q, {1})}, {sc(1), sc(2)}),
                    ArityMismatchError);
    // the unused time slot must stay zero
    CHECK_THROWS_AS(make_cubic(Q, 1, 1, {pt(Q, {1}), pt(Q, {2})}, {sc(1), sc(1)}),
                    DomainError);
}
