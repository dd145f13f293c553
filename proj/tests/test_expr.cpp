#include "doctest.h"
#include "weiljet/context.hpp"
#include "weiljet/expr.hpp"

using namespace weiljet;

namespace {
Ring Q = Ring::rationals();
}

TEST_CASE("expression parsing round trips through printing") {
    for (const char* text :
         {"x0^2 + 3*x1 - 1", "1/(1 + x0)", "(x0 - x1)^3", "-x0 * (2/3)",
          "1/(1/(1 + x0) + x1)", "x2"}) {
        ExprMap f = ExprMap::parse(Q, text);
        ExprMap g = ExprMap::parse(Q, f.to_string());
        CHECK(f == g);
    }
    CHECK(ExprMap::parse(Q, "x2").arity() == 3); // arity from highest index
    CHECK(ExprMap::parse(Q, "x0; x0 + x1").coarity() == 2);
}

TEST_CASE("malformed expressions are syntax errors") {
    CHECK_THROWS_AS(ExprMap::parse(Q, "x0 +"), SyntaxError);
    CHECK_THROWS_AS(ExprMap::parse(Q, "(x0"), SyntaxError);
    CHECK_THROWS_AS(ExprMap::parse(Q, "x0 ^ x1"), SyntaxError);
    CHECK_THROWS_AS(ExprMap::parse(Q, "y0"), SyntaxError);
}

TEST_CASE("evaluation is exact and flags poles as domain errors") {
    ExprMap f = ExprMap::parse(Q, "1/(1 + x0)");
    ScalarCtx ctx(Q);
    auto val = eval_expr(ctx, f, {Scalar::from_int(Q, 3)});
    CHECK(val[0] == Scalar::parse(Q, "1/4"));
    CHECK_THROWS_AS(eval_expr(ctx, f, {Scalar::from_int(Q, -1)}), DomainError);
    CHECK_THROWS_AS(eval_expr(ctx, f, std::vector<Scalar>{}), ArityMismatchError);
}

TEST_CASE("evaluation over a nilpotent extension expands reciprocals") {
    MonomialPtr j2 = make_jet(Q, 2);
    WeilCtx ctx((AlgebraPtr(j2)));
    ExprMap f = ExprMap::parse(Q, "1/(1 + x0)");
    WeilElement d = WeilElement::basis(j2, 1);
    auto val = eval_expr(ctx, f, {d});
    // 1/(1 + d) = 1 - d + d^2
    CHECK(val[0] == WeilElement::unit(j2) - d + d * d);
}

TEST_CASE("composition substitutes outputs for variables") {
    ExprMap f = ExprMap::parse(Q, "x0 + 1; x0^2"); // 1 -> 2
    ExprMap g = ExprMap::parse(Q, "x0 * x1");      // 2 -> 1
    ExprMap gf = compose(g, f);
    ScalarCtx ctx(Q);
    Scalar x = Scalar::from_int(Q, 3);
    CHECK(eval_expr(ctx, gf, {x})[0] == Scalar::from_int(Q, (3 + 1) * 9));
    CHECK_THROWS_AS(compose(f, f), ArityMismatchError); // coarity 2 into arity 1
}

TEST_CASE("polynomial expressions convert to maps and back") {
    ExprMap f = ExprMap::parse(Q, "(x0 + x1)^2 - x1*(2/3)");
    CHECK(is_polynomial(f));
    PolyMap p = to_polymap(f);
    ExprMap g = from_polymap(p);
    ScalarCtx ctx(Q);
    std::vector<Scalar> at{Scalar::from_int(Q, 4), Scalar::from_int(Q, -6)};
    CHECK(eval_expr(ctx, f, at) == eval_expr(ctx, g, at));

    ExprMap r = ExprMap::parse(Q, "1/(x0 - 3)");
    CHECK_FALSE(is_polynomial(r));
    CHECK_THROWS_AS(to_polymap(r), NotPolynomialError);
    // reciprocals of unit constants stay polynomial
    CHECK(is_polynomial(ExprMap::parse(Q, "x0 * (1/4)")));
}

TEST_CASE("expressions respect their declared ring") {
    Ring m5 = Ring::modular(5);
    ExprMap f = ExprMap::parse(m5, "x0^2 + 3");
    ScalarCtx ctx(m5);
    CHECK(eval_expr(ctx, f, {Scalar::from_int(m5, 4)})[0] == Scalar::from_int(m5, 4));
    ScalarCtx wrong(Q);
    CHECK_THROWS_AS(eval_expr(wrong, f, {Scalar::from_int(Q, 4)}), RingMismatchError);
}
