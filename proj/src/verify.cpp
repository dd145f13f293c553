#include "weiljet/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>

#include "weiljet/context.hpp"

namespace weiljet {

// ---------------------------------------------------------------- generators

Scalar random_scalar(const Ring& ring, Rng& rng, int span) {
    if (ring.is_rationals()) {
        long long num = rng.range(-span, span);
        long long den = rng.range(1, 4);
        return Scalar::from_rational(Rational(num) / den);
    }
    return Scalar::from_residue(ring, rng.below(ring.modulus()));
}

Scalar random_unit(const Ring& ring, Rng& rng) {
    if (ring.is_rationals()) {
        long long num = rng.range(1, 12);
        long long den = rng.range(1, 4);
        Rational q(num, den);
        return Scalar::from_rational(rng.chance(1, 2) ? q : -q);
    }
    for (int i = 0; i < 4096; ++i) {
        Scalar c = Scalar::from_residue(ring, rng.below(ring.modulus()));
        if (c.is_unit()) return c;
    }
    throw ExhaustedError("no unit found in " + ring.to_string());
}

std::vector<Scalar> random_point(const Ring& ring, int width, Rng& rng, int span) {
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(width));
    for (int i = 0; i < width; ++i) out.push_back(random_scalar(ring, rng, span));
    return out;
}

PolyMap random_polymap(const Ring& ring, int arity, int coarity, int max_degree, int terms,
                       Rng& rng) {
    std::vector<SparsePoly> comps;
    comps.reserve(static_cast<size_t>(coarity));
    for (int w = 0; w < coarity; ++w) {
        SparsePoly p(ring, arity);
        for (int t = 0; t < terms; ++t) {
            Exp e(static_cast<size_t>(arity), 0u);
            int deg = static_cast<int>(rng.below(static_cast<uint64_t>(max_degree) + 1));
            for (int d = 0; d < deg; ++d)
                e[rng.below(static_cast<uint64_t>(arity))] += 1;
            Scalar c = random_scalar(ring, rng, 8);
            if (!c.is_zero()) p.add_term(e, c);
        }
        comps.push_back(std::move(p));
    }
    return PolyMap(ring, arity, std::move(comps));
}

ExprMap random_poly_expr(const Ring& ring, int arity, int coarity, int max_degree, int terms,
                         Rng& rng) {
    return from_polymap(random_polymap(ring, arity, coarity, max_degree, terms, rng));
}

namespace {

ExprPtr random_expr_node(const Ring& ring, int arity, int depth, Rng& rng) {
    if (depth <= 0 || rng.chance(1, 4)) {
        if (rng.chance(1, 3)) return expr_const(random_scalar(ring, rng, 6));
        return expr_var(static_cast<int>(rng.below(static_cast<uint64_t>(arity))));
    }
    switch (rng.below(6)) {
        case 0:
            return expr_add(random_expr_node(ring, arity, depth - 1, rng),
                            random_expr_node(ring, arity, depth - 1, rng));
        case 1:
            return expr_mul(random_expr_node(ring, arity, depth - 1, rng),
                            random_expr_node(ring, arity, depth - 1, rng));
        case 2:
            return expr_scalar_mul(random_scalar(ring, rng, 6),
                                   random_expr_node(ring, arity, depth - 1, rng));
        case 3:
            return expr_int_pow(random_expr_node(ring, arity, depth - 1, rng),
                                1 + static_cast<uint32_t>(rng.below(3)));
        case 4:
            return expr_neg(random_expr_node(ring, arity, depth - 1, rng));
        default:
            return expr_inv(expr_add(expr_const(random_unit(ring, rng)),
                                     random_expr_node(ring, arity, depth - 1, rng)));
    }
}

} // namespace

ExprMap random_rational_expr(const Ring& ring, int arity, int coarity, int depth, Rng& rng) {
    std::vector<ExprPtr> outs;
    outs.reserve(static_cast<size_t>(coarity));
    for (int w = 0; w < coarity; ++w) outs.push_back(random_expr_node(ring, arity, depth, rng));
    return ExprMap(ring, arity, std::move(outs));
}

std::vector<Scalar> random_domain_point(const ExprMap& f, Rng& rng, int attempts) {
    for (int i = 0; i < attempts; ++i) {
        std::vector<Scalar> x = random_point(f.ring(), f.arity(), rng);
        try {
            scalar_eval(f, x);
            return x;
        } catch (const DomainError&) {
            continue;
        }
    }
    throw DomainError("no point in the domain of " + f.to_string() + " found");
}

SimplicialPoint random_nonsingular_simplicial(const Ring& ring, int k, int width, Rng& rng) {
    std::vector<Scalar> s = sample_units(ring, k, rng.next());
    std::vector<std::vector<Scalar>> v;
    v.reserve(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) v.push_back(random_point(ring, width, rng));
    SimplicialPoint p = make_simplicial(ring, k, width, std::move(v), std::move(s));
    if (!simplicial_nonsingular(p)) throw Error("internal: sampled units are not nonsingular");
    return p;
}

CubicPoint random_nonsingular_cubic(const Ring& ring, int k, int width, Rng& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        const size_t slots = size_t{1} << k;
        std::vector<std::vector<Scalar>> space;
        for (size_t b = 0; b < slots; ++b) space.push_back(random_point(ring, width, rng));
        std::vector<Scalar> times{Scalar::zero(ring)};
        if (ring.is_rationals()) {
            // positive times keep every recursive combination positive
            for (size_t b = 1; b < slots; ++b)
                times.push_back(Scalar::from_int(ring, rng.range(1, 9)));
        } else {
            for (size_t b = 1; b < slots; ++b) times.push_back(random_unit(ring, rng));
        }
        CubicPoint p = make_cubic(ring, k, width, std::move(space), std::move(times));
        if (cubic_nonsingular(p)) return p;
    }
    throw ExhaustedError("no nonsingular cubic point of order " + std::to_string(k) +
                         " found in " + ring.to_string());
}

WeilElement random_element(const AlgebraPtr& a, Rng& rng) {
    std::vector<Scalar> c;
    c.reserve(static_cast<size_t>(a->dim()));
    for (int i = 0; i < a->dim(); ++i) c.push_back(random_scalar(a->ring(), rng, 6));
    return WeilElement(a, std::move(c));
}

WeilElement random_unit_element(const AlgebraPtr& a, Rng& rng) {
    WeilElement x = random_element(a, rng);
    std::vector<Scalar> c = x.coeffs();
    c[static_cast<size_t>(a->unit_index())] = random_unit(a->ring(), rng);
    return WeilElement(a, std::move(c));
}

WeilElement random_nilpotent(const AlgebraPtr& a, Rng& rng) {
    WeilElement x = random_element(a, rng);
    std::vector<Scalar> c = x.coeffs();
    c[static_cast<size_t>(a->unit_index())] = Scalar::zero(a->ring());
    return WeilElement(a, std::move(c));
}

// ------------------------------------------------------------------- runner

namespace {

struct Trial {
    const VerifyOptions& opt;
    Rng rng;
    int index;
    std::vector<SuiteFailure>& failures;
    int& skipped;

    void fail(const std::string& what) { failures.push_back({index, what}); }
    void expect(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

using SuiteFn = std::function<void(Trial&)>;

std::string describe_point(const std::vector<Scalar>& x) {
    std::string out = "(";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) out += ", ";
        out += x[i].to_string();
    }
    return out + ")";
}

// ---- weil-laws ----

AlgebraPtr random_small_algebra(const Ring& ring, Rng& rng) {
    switch (rng.below(5)) {
        case 0: return make_jet(ring, 1 + static_cast<int>(rng.below(4)));
        case 1: return make_tangent(ring, 1 + static_cast<int>(rng.below(3)));
        case 2:
            return make_truncated(ring, 1 + static_cast<int>(rng.below(2)),
                                  1 + static_cast<int>(rng.below(3)));
        case 3:
            return tensor(make_jet(ring, 1 + static_cast<int>(rng.below(2))),
                          make_tangent(ring, 1 + static_cast<int>(rng.below(2))));
        default:
            return whitney_sum(make_jet(ring, 1 + static_cast<int>(rng.below(3))),
                               make_truncated(ring, 2, 1));
    }
}

void suite_weil_laws(Trial& t) {
    AlgebraPtr a = random_small_algebra(t.opt.ring, t.rng);
    ValidationReport rep = validate(*a);
    t.expect(rep.ok, a->describe() + ": " + rep.violation);
    // the same laws on the densified multiplication-table form
    std::shared_ptr<const TableAlgebra> dense = TableAlgebra::from_algebra(a);
    ValidationReport drep = validate(*dense);
    t.expect(drep.ok, a->describe() + " (dense): " + drep.violation);

    WeilElement u = random_unit_element(a, t.rng);
    WeilElement ui = u.inv();
    t.expect((u * ui) == WeilElement::unit(a), a->describe() + ": inverse round trip");

    // scale_action is a ring endomorphism for any r and multiplicative in r
    Scalar r = random_unit(t.opt.ring, t.rng);
    Scalar s = random_unit(t.opt.ring, t.rng);
    WeilElement x = random_element(a, t.rng);
    WeilElement y = random_element(a, t.rng);
    t.expect(scale_action(r, x * y) == scale_action(r, x) * scale_action(r, y),
             a->describe() + ": scaling is not multiplicative");
    t.expect(scale_action(r, scale_action(s, x)) == scale_action(r * s, x),
             a->describe() + ": scaling composition");

    // flip is an algebra isomorphism tensor(A,B) -> tensor(B,A), involutive
    MonomialPtr ta = make_jet(t.opt.ring, 1 + static_cast<int>(t.rng.below(2)));
    MonomialPtr tb = make_tangent(t.opt.ring, 1);
    MonomialPtr ab = tensor(ta, tb);
    WeilElement z = random_element(ab, t.rng);
    WeilElement wz = random_element(ab, t.rng);
    t.expect(flip(flip(z)) == z, "flip is not an involution");
    t.expect(flip(z * wz) == flip(z) * flip(wz), "flip is not multiplicative");
}

// ---- ktheory: nesting + whitney ----

void suite_ktheory(Trial& t) {
    const Ring& R = t.opt.ring;
    MonomialPtr A = t.rng.chance(1, 2) ? make_jet(R, 1) : make_jet(R, 2);
    MonomialPtr B = t.rng.chance(1, 2) ? make_jet(R, 1) : make_tangent(R, 1);
    MonomialPtr AB = tensor(A, B);

    int arity = 1 + static_cast<int>(t.rng.below(2));
    ExprMap f = random_rational_expr(R, arity, 1 + static_cast<int>(t.rng.below(2)), 3, t.rng);

    // arguments whose base coordinates are in the domain
    for (int attempt = 0;; ++attempt) {
        std::vector<WeilElement> z;
        z.reserve(static_cast<size_t>(arity));
        for (int i = 0; i < arity; ++i) z.push_back(random_element(AB, t.rng));
        try {
            EqualityReport rep = nested_vs_direct(f, A, B, z);
            t.expect(rep.equal, "nesting: " + rep.detail + " for " + f.to_string());
            break;
        } catch (const DomainError&) {
            if (attempt >= 32) {
                ++t.skipped;
                break;
            }
        }
    }

    // whitney: pushforward over the sum is the fiberwise pair
    MonomialPtr W = whitney_sum(A, B);
    ExprMap g = random_poly_expr(R, arity, 2, t.opt.max_degree, 3, t.rng);
    std::vector<Scalar> x = random_point(R, arity, t.rng);
    std::vector<WeilElement> nuA, nuB, nuW;
    for (int i = 0; i < arity; ++i) {
        WeilElement na = random_nilpotent(A, t.rng);
        WeilElement nb = random_nilpotent(B, t.rng);
        nuA.push_back(na);
        nuB.push_back(nb);
        // embed into the sum: A occupies the first variables, B the rest;
        // degree-1-and-up monomials of each factor survive verbatim
        std::vector<Scalar> c(static_cast<size_t>(W->dim()), Scalar::zero(R));
        for (int j = 0; j < A->dim(); ++j) {
            Exp e = A->basis_monomial(j);
            e.resize(static_cast<size_t>(W->nvars()), 0u);
            int idx = W->monomial_index(e);
            if (idx >= 0) c[static_cast<size_t>(idx)] = na.coeff(j);
        }
        for (int j = 0; j < B->dim(); ++j) {
            Exp be = B->basis_monomial(j);
            Exp e(static_cast<size_t>(W->nvars()), 0u);
            for (size_t v = 0; v < be.size(); ++v) e[static_cast<size_t>(A->nvars()) + v] = be[v];
            int idx = W->monomial_index(e);
            if (idx >= 0) c[static_cast<size_t>(idx)] = c[static_cast<size_t>(idx)] + nb.coeff(j);
        }
        nuW.emplace_back(W, std::move(c));
    }
    Pushforward pw = pushforward(g, W, x, nuW);
    Pushforward pa = pushforward(g, A, x, nuA);
    Pushforward pb = pushforward(g, B, x, nuB);
    for (int w = 0; w < g.coarity(); ++w) {
        t.expect(pw.base[static_cast<size_t>(w)] == pa.base[static_cast<size_t>(w)],
                 "whitney: base disagrees");
        // project the sum fiber back onto each factor
        bool okA = true, okB = true;
        for (int j = 0; j < A->dim(); ++j) {
            if (A->grading()[static_cast<size_t>(j)] == 0) continue;
            Exp e = A->basis_monomial(j);
            e.resize(static_cast<size_t>(W->nvars()), 0u);
            int idx = W->monomial_index(e);
            okA = okA && pw.fiber[static_cast<size_t>(w)].coeff(idx) ==
                             pa.fiber[static_cast<size_t>(w)].coeff(j);
        }
        for (int j = 0; j < B->dim(); ++j) {
            if (B->grading()[static_cast<size_t>(j)] == 0) continue;
            Exp be = B->basis_monomial(j);
            Exp e(static_cast<size_t>(W->nvars()), 0u);
            for (size_t v = 0; v < be.size(); ++v) e[static_cast<size_t>(A->nvars()) + v] = be[v];
            int idx = W->monomial_index(e);
            okB = okB && pw.fiber[static_cast<size_t>(w)].coeff(idx) ==
                             pb.fiber[static_cast<size_t>(w)].coeff(j);
        }
        t.expect(okA && okB, "whitney: fiber projection disagrees for " + g.to_string() +
                                 " at " + describe_point(x));
    }
}

// ---- taylor-chain ----

void suite_taylor_chain(Trial& t) {
    const Ring& R = t.opt.ring;
    int mid = 1 + static_cast<int>(t.rng.below(2));
    ExprMap h = random_poly_expr(R, t.opt.vars, mid, t.opt.max_degree, 3, t.rng);
    ExprMap g = random_poly_expr(R, mid, 1 + static_cast<int>(t.rng.below(2)),
                                 t.opt.max_degree, 3, t.rng);
    std::vector<Scalar> x = random_point(R, t.opt.vars, t.rng);
    int k = 1 + static_cast<int>(t.rng.below(3));
    EqualityReport rep = taylor_chain(g, h, x, k);
    t.expect(rep.equal, "chain rule k=" + std::to_string(k) + ": " + rep.detail + " for g=" +
                            g.to_string() + ", h=" + h.to_string() + " at " +
                            describe_point(x));
}

// ---- jets-vs-oracle ----

void suite_jets_vs_oracle(Trial& t) {
    const Ring& R = t.opt.ring;
    int k = 1 + static_cast<int>(t.rng.below(3));
    int arity = 1 + static_cast<int>(t.rng.below(2));
    ExprMap f = random_poly_expr(R, arity, 1 + static_cast<int>(t.rng.below(2)),
                                 t.opt.max_degree, 3, t.rng);
    std::optional<SimplicialPoint> maybe;
    try {
        maybe = random_nonsingular_simplicial(R, k, arity, t.rng);
    } catch (const ExhaustedError&) {
        ++t.skipped;
        return;
    }
    const SimplicialPoint& p = *maybe;

    std::vector<PolyMap> F = symbolic_simplicial(f, p.v);
    std::vector<Scalar> sval(p.s.begin(), p.s.end());
    std::vector<Scalar> top;
    for (int w = 0; w < F.back().coarity(); ++w)
        top.push_back(F.back().component(w).eval(sval));
    t.expect(top == simplicial_dq(f, p),
             "symbolic at s != quotient for " + f.to_string());

    std::vector<Scalar> zeros(static_cast<size_t>(k), Scalar::zero(R));
    JetValue jv = simplicial_jet(f, p.v);
    for (int j = 1; j <= k; ++j) {
        std::vector<Scalar> js;
        for (int w = 0; w < F[static_cast<size_t>(j - 1)].coarity(); ++w)
            js.push_back(F[static_cast<size_t>(j - 1)].component(w).eval(zeros));
        t.expect(js == jv.components[static_cast<size_t>(j)],
                 "symbolic at 0 != jet for " + f.to_string());
    }

    std::vector<std::vector<Scalar>> dirs(p.v.begin() + 1, p.v.end());
    auto fib = jet_from_taylor(f, p.v[0], k, dirs);
    for (int j = 1; j <= k; ++j)
        t.expect(fib[static_cast<size_t>(j - 1)] == jv.components[static_cast<size_t>(j)],
                 "taylor route != jet for " + f.to_string());
    for (int j = 1; j <= k; ++j)
        t.expect(taylor_eqn_rhs(f, p.v[0], dirs, j) == jv.components[static_cast<size_t>(j)],
                 "differential sum != jet component " + std::to_string(j) + " for " +
                     f.to_string());
}

// ---- difference-functoriality ----

void suite_difference_functoriality(Trial& t) {
    const Ring& R = t.opt.ring;
    int k = 1 + static_cast<int>(t.rng.below(3));
    int arity = 1 + static_cast<int>(t.rng.below(2));
    int mid = 1 + static_cast<int>(t.rng.below(2));
    ExprMap f = random_poly_expr(R, arity, mid, t.opt.max_degree, 3, t.rng);
    ExprMap g = random_poly_expr(R, mid, 1, t.opt.max_degree, 3, t.rng);

    try {
        SimplicialPoint p = random_nonsingular_simplicial(R, k, arity, t.rng);
        SimplicialPoint lhs = extended_jet(g, extended_jet(f, p));
        SimplicialPoint rhs = extended_jet(compose(g, f), p);
        t.expect(simplicial_equal(lhs, rhs), "jet functoriality for g o f, k=" +
                                                 std::to_string(k));
        Scalar r = random_unit(R, t.rng);
        t.expect(simplicial_equal(extended_jet(f, rho_simplicial(r, p)),
                                  rho_simplicial(r, extended_jet(f, p))),
                 "jet homogeneity at r=" + r.to_string());
    } catch (const ExhaustedError&) {
        ++t.skipped;
    }

    try {
        int ck = 1 + static_cast<int>(t.rng.below(2));
        CubicPoint cp = random_nonsingular_cubic(R, ck, arity, t.rng);
        CubicPoint inner = extended_tangent(f, cp);
        if (cubic_nonsingular(inner)) {
            CubicPoint lhs = extended_tangent(g, inner);
            CubicPoint rhs = extended_tangent(compose(g, f), cp);
            t.expect(cubic_equal(lhs, rhs), "tangent functoriality, k=" + std::to_string(ck));
        }
        Scalar r = random_unit(R, t.rng);
        t.expect(cubic_equal(extended_tangent(f, rho_cubic(r, cp)),
                             rho_cubic(r, extended_tangent(f, cp))),
                 "tangent homogeneity at r=" + r.to_string());
    } catch (const ExhaustedError&) {
        ++t.skipped;
    }
}

// ---- embedding-sign ----

void suite_embedding_sign(Trial& t) {
    const Ring& R = t.opt.ring;
    int k = 1 + static_cast<int>(t.rng.below(3));
    int arity = 1 + static_cast<int>(t.rng.below(2));
    ExprMap f = random_poly_expr(R, arity, 1 + static_cast<int>(t.rng.below(2)),
                                 t.opt.max_degree, 3, t.rng);
    try {
        SimplicialPoint p = random_nonsingular_simplicial(R, k, arity, t.rng);
        EqualityReport rep = embedding_compatibility(f, p);
        t.expect(rep.equal,
                 "embedding (k=" + std::to_string(k) + "): " + rep.detail + " for " +
                     f.to_string());
    } catch (const ExhaustedError&) {
        ++t.skipped;
    } catch (const SingularTimeError& e) {
        // nonsingular input guarantees all divisions succeed; reaching this
        // is a genuine failure
        t.fail(std::string("unexpected singular time: ") + e.what());
    }
}

// ---- graded-star ----

void suite_graded_star(Trial& t) {
    const Ring& R = t.opt.ring;
    AlgebraPtr a = t.rng.chance(1, 2) ? AlgebraPtr(make_jet(R, 3))
                                      : AlgebraPtr(make_truncated(R, 2, 2));
    WeilElement x = random_element(a, t.rng);
    WeilElement y = random_element(a, t.rng);
    WeilElement z = random_element(a, t.rng);
    t.expect(star(star(x, y), z) == star(x, star(y, z)),
             a->describe() + ": star is not associative");
    t.expect(star(x + y, z) == star(x, z) + star(y, z),
             a->describe() + ": star does not distribute on the left argument");
    t.expect(graded_endo(y, x * z) == graded_endo(y, x) * graded_endo(y, z),
             a->describe() + ": attached endomorphism is not multiplicative");
    t.expect(graded_endo(y, graded_endo(x, z)) == graded_endo(star(x, y), z),
             a->describe() + ": endomorphism composition law");
    WeilElement u = random_unit_element(a, t.rng);
    WeilElement ui = star_inverse(u);
    t.expect(star(u, ui) == WeilElement::unit(a) && star(ui, u) == WeilElement::unit(a),
             a->describe() + ": star inverse is not two-sided");
}

// ---- separation ----

void suite_separation(Trial& t) {
    const Ring& R = t.opt.ring;
    int deg = 2 + static_cast<int>(t.rng.below(4)); // 2..5
    PolyMap p = random_polymap(R, t.opt.vars, 1 + static_cast<int>(t.rng.below(2)), deg, 4,
                               t.rng);
    std::vector<Scalar> x = random_point(R, t.opt.vars, t.rng);
    int bound = p.degree() < 0 ? 0 : p.degree();
    auto eval_multiple = [&](const Scalar& c) {
        std::vector<Scalar> cx;
        cx.reserve(x.size());
        for (const Scalar& xi : x) cx.push_back(c * xi);
        std::vector<Scalar> out;
        for (int w = 0; w < p.coarity(); ++w) out.push_back(p.component(w).eval(cx));
        return out;
    };
    std::vector<std::vector<Scalar>> parts =
        separate_homogeneous(eval_multiple, R, bound, p.coarity());
    std::vector<PolyMap> truth = homogeneous_parts(p);
    for (int d = 0; d <= bound; ++d) {
        std::vector<Scalar> expect;
        for (int w = 0; w < p.coarity(); ++w)
            expect.push_back(truth[static_cast<size_t>(d)].component(w).eval(x));
        t.expect(parts[static_cast<size_t>(d)] == expect,
                 "separation degree " + std::to_string(d) + " at " + describe_point(x));
    }
}

// ---- naturality ----

void suite_naturality(Trial& t) {
    const Ring& R = t.opt.ring;
    MonomialPtr A, B;
    if (t.rng.chance(1, 2)) {
        int k = 2 + static_cast<int>(t.rng.below(2));
        A = make_jet(R, k);
        B = make_jet(R, k - 1);
    } else {
        A = make_truncated(R, 2, 2);
        B = make_truncated(R, 2, 1);
    }
    MorphismMatrix phi = basis_truncation(A, B);
    t.expect(phi.check(), "truncation morphism fails its own laws: " + phi.violation());

    int arity = 1 + static_cast<int>(t.rng.below(2));
    ExprMap f = random_rational_expr(R, arity, 1 + static_cast<int>(t.rng.below(2)), 2, t.rng);
    std::vector<Scalar> x;
    try {
        x = random_domain_point(f, t.rng);
    } catch (const DomainError&) {
        ++t.skipped;
        return;
    }
    std::vector<WeilElement> nuA, nuB;
    for (int i = 0; i < arity; ++i) {
        WeilElement n = random_nilpotent(A, t.rng);
        nuA.push_back(n);
        nuB.push_back(phi.apply(n));
    }
    try {
        Pushforward pa = pushforward(f, A, x, nuA);
        Pushforward pb = pushforward(f, B, x, nuB);
        for (int w = 0; w < f.coarity(); ++w) {
            t.expect(phi.apply(pa.fiber[static_cast<size_t>(w)]) ==
                         pb.fiber[static_cast<size_t>(w)],
                     "naturality of " + A->describe() + " -> " + B->describe() + " for " +
                         f.to_string());
        }
        // the augmentation morphism collapses the fiber entirely
        MorphismMatrix aug = augmentation_morphism(A);
        for (int w = 0; w < f.coarity(); ++w) {
            WeilElement collapsed = aug.apply(pa.fiber[static_cast<size_t>(w)]);
            t.expect(collapsed == WeilElement::zero(aug.target()),
                     "augmentation naturality for " + f.to_string());
        }
    } catch (const DomainError&) {
        ++t.skipped;
    }
}

const std::map<std::string, SuiteFn>& suite_table() {
    static const std::map<std::string, SuiteFn> table{
        {"weil-laws", suite_weil_laws},
        {"ktheory", suite_ktheory},
        {"taylor-chain", suite_taylor_chain},
        {"jets-vs-oracle", suite_jets_vs_oracle},
        {"difference-functoriality", suite_difference_functoriality},
        {"embedding-sign", suite_embedding_sign},
        {"graded-star", suite_graded_star},
        {"separation", suite_separation},
        {"naturality", suite_naturality},
    };
    return table;
}

// Rings where the separation recursion cannot even start for the degree
// spreads the suite uses (too few units with unit pairwise differences).
bool separation_possible(const Ring& ring, int max_degree) {
    auto eval = [&](const Scalar&) {
        return std::vector<Scalar>{Scalar::zero(ring)};
    };
    try {
        separate_homogeneous(eval, ring, max_degree, 1);
        return true;
    } catch (const NoSeparatingScalarsError&) {
        return false;
    }
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : suite_table()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
    auto it = suite_table().find(name);
    if (it == suite_table().end()) throw DomainError("unknown suite '" + name + "'");
    SuiteReport report;
    report.suite = name;
    auto t0 = std::chrono::steady_clock::now();

    if (name == "separation" && !separation_possible(options.ring, 5)) {
        report.suite_skipped = true;
        report.skip_reason = "ring " + options.ring.to_string() +
                             " has no separating units for the tested degrees";
    } else {
        Rng root(options.seed);
        for (int i = 0; i < options.trials; ++i) {
            Trial trial{options, root.fork(static_cast<uint64_t>(i)), i, report.failures,
                        report.skipped};
            it->second(trial);
            ++report.trials_run;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    return report;
}

} // namespace weiljet
