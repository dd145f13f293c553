#include "weiljet/jet.hpp"

#include <cstdint>
#include <functional>
#include <string>

#include "weiljet/context.hpp"

namespace weiljet {

namespace {

Exp unit_exp(size_t nvars, size_t i) {
    Exp e(nvars, 0u);
    e[i] = 1u;
    return e;
}

// x + sum_l d^l v[l] inside jet(k), one coordinate at a time.
std::vector<WeilElement> curve_argument(const MonomialPtr& jetk,
                                        const std::vector<std::vector<Scalar>>& v) {
    const size_t width = v.at(0).size();
    const size_t k = v.size() - 1;
    std::vector<WeilElement> args;
    args.reserve(width);
    for (size_t c = 0; c < width; ++c) {
        WeilElement z = embed(jetk, v[0][c]);
        for (size_t l = 1; l <= k; ++l) {
            if (v[l].size() != width) throw ArityMismatchError("jet data width mismatch");
            int idx = jetk->monomial_index(Exp{static_cast<uint32_t>(l)});
            if (idx >= 0) z = z + WeilElement::basis(jetk, idx) * v[l][c];
        }
        args.push_back(z);
    }
    return args;
}

} // namespace

std::vector<Scalar> scalar_eval(const ExprMap& f, const std::vector<Scalar>& x) {
    return eval_expr(ScalarCtx{f.ring()}, f, x);
}

TaylorPoly taylor(const ExprMap& f, const std::vector<Scalar>& x, int k) {
    if (k < 0) throw DomainError("taylor order must be nonnegative");
    const size_t m = f.arity();
    if (x.size() != m) throw ArityMismatchError("taylor: point arity mismatch");
    if (k == 0 || m == 0) {
        // Still evaluate once so domain violations surface the same way.
        scalar_eval(f, x);
        std::vector<SparsePoly> comps(static_cast<size_t>(f.coarity()),
                                      SparsePoly(f.ring(), static_cast<int>(m)));
        return TaylorPoly{x, k, PolyMap(f.ring(), static_cast<int>(m), std::move(comps))};
    }
    MonomialPtr A = make_truncated(f.ring(), static_cast<int>(m), k);
    std::vector<WeilElement> args;
    args.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        int idx = A->monomial_index(unit_exp(m, i));
        args.push_back(embed(A, x[i]) + WeilElement::basis(A, idx));
    }
    std::vector<WeilElement> vals = eval_expr(WeilCtx{A}, f, args);
    std::vector<SparsePoly> comps;
    comps.reserve(vals.size());
    for (const WeilElement& val : vals) {
        SparsePoly p(f.ring(), static_cast<int>(m));
        for (int b = 0; b < static_cast<int>(A->dim()); ++b) {
            if (A->grading()[b] == 0) continue; // constant term excluded
            const Scalar& c = val.coeff(b);
            if (!c.is_zero()) p.add_term(A->basis_monomial(b), c);
        }
        comps.push_back(std::move(p));
    }
    return TaylorPoly{x, k, PolyMap(f.ring(), static_cast<int>(m), std::move(comps))};
}

RadialExpansion radial_expansion(const ExprMap& f, const std::vector<Scalar>& x,
                                 const std::vector<Scalar>& v, int k) {
    if (k < 0) throw DomainError("radial expansion order must be nonnegative");
    const size_t m = f.arity();
    if (x.size() != m || v.size() != m)
        throw ArityMismatchError("radial expansion: point or direction arity mismatch");
    PolyCtx ctx{f.ring(), 1};
    std::vector<SparsePoly> args;
    args.reserve(m);
    SparsePoly t = SparsePoly::variable(f.ring(), 1, 0);
    for (size_t i = 0; i < m; ++i)
        args.push_back(SparsePoly::constant(f.ring(), 1, x[i]) +
                       t * SparsePoly::constant(f.ring(), 1, v[i]));
    std::vector<SparsePoly> vals = eval_expr(ctx, f, args);

    std::vector<std::vector<Scalar>> coeffs(static_cast<size_t>(k));
    std::vector<SparsePoly> rems;
    rems.reserve(vals.size());
    for (const SparsePoly& p : vals) {
        for (int d = 1; d <= k; ++d)
            coeffs[static_cast<size_t>(d - 1)].push_back(
                p.coefficient(Exp{static_cast<uint32_t>(d)}));
        SparsePoly rem(f.ring(), 1);
        for (const auto& [e, c] : p.terms()) {
            if (e[0] <= static_cast<uint32_t>(k)) continue;
            rem.add_term(Exp{e[0] - static_cast<uint32_t>(k)}, c);
        }
        if (!rem.coefficient(Exp{0u}).is_zero())
            throw Error("internal: radial remainder has a constant term");
        rems.push_back(std::move(rem));
    }
    return RadialExpansion{std::move(coeffs), PolyMap(f.ring(), 1, std::move(rems))};
}

std::vector<Scalar> normalized_diff(const ExprMap& f, const std::vector<Scalar>& x,
                                    const std::vector<std::vector<Scalar>>& vlist,
                                    const std::vector<uint32_t>& alpha) {
    const size_t m = f.arity();
    if (x.size() != m) throw ArityMismatchError("normalized_diff: point arity mismatch");
    if (vlist.size() != alpha.size())
        throw ArityMismatchError("normalized_diff: one direction per multi-order entry");
    const size_t j = alpha.size();
    if (j == 0) return scalar_eval(f, x);
    for (const auto& v : vlist)
        if (v.size() != m) throw ArityMismatchError("normalized_diff: direction arity mismatch");

    MonomialPtr A = make_jet(f.ring(), static_cast<int>(alpha[0]));
    for (size_t i = 1; i < j; ++i) A = tensor(A, make_jet(f.ring(), static_cast<int>(alpha[i])));

    std::vector<WeilElement> args;
    args.reserve(m);
    for (size_t c = 0; c < m; ++c) {
        WeilElement z = embed(A, x[c]);
        for (size_t i = 0; i < j; ++i) {
            if (alpha[i] == 0) continue; // that variable is dead in its factor
            int idx = A->monomial_index(unit_exp(j, i));
            z = z + WeilElement::basis(A, idx) * vlist[i][c];
        }
        args.push_back(z);
    }
    std::vector<WeilElement> vals = eval_expr(WeilCtx{A}, f, args);

    Exp target(alpha.begin(), alpha.end());
    int tidx = A->monomial_index(target);
    if (tidx < 0) throw Error("internal: top monomial missing from truncation");
    std::vector<Scalar> out;
    out.reserve(vals.size());
    for (const WeilElement& val : vals) out.push_back(val.coeff(tidx));
    return out;
}

JetValue simplicial_jet(const ExprMap& f, const std::vector<std::vector<Scalar>>& v) {
    if (v.empty()) throw ArityMismatchError("simplicial_jet: need at least the base point");
    const size_t m = f.arity();
    for (const auto& vi : v)
        if (vi.size() != m) throw ArityMismatchError("simplicial_jet: data width mismatch");
    const int k = static_cast<int>(v.size()) - 1;
    MonomialPtr A = make_jet(f.ring(), k);
    std::vector<WeilElement> vals = eval_expr(WeilCtx{A}, f, curve_argument(A, v));
    JetValue out;
    out.order = k;
    out.components.assign(static_cast<size_t>(k) + 1, std::vector<Scalar>());
    for (int l = 0; l <= k; ++l) {
        int idx = A->monomial_index(Exp{static_cast<uint32_t>(l)});
        for (const WeilElement& val : vals)
            out.components[static_cast<size_t>(l)].push_back(
                idx >= 0 ? val.coeff(idx) : Scalar::zero(f.ring()));
    }
    return out;
}

std::vector<std::vector<Scalar>> jet_from_taylor(const ExprMap& f,
                                                 const std::vector<Scalar>& x, int k,
                                                 const std::vector<std::vector<Scalar>>& v) {
    if (static_cast<int>(v.size()) != k)
        throw ArityMismatchError("jet_from_taylor: need one direction per order 1..k");
    const size_t m = f.arity();
    TaylorPoly tay = taylor(f, x, k);
    MonomialPtr A = make_jet(f.ring(), k);
    std::vector<WeilElement> nil;
    nil.reserve(m);
    for (size_t c = 0; c < m; ++c) {
        WeilElement h = WeilElement::zero(A);
        for (int l = 1; l <= k; ++l) {
            int idx = A->monomial_index(Exp{static_cast<uint32_t>(l)});
            h = h + WeilElement::basis(A, idx) * v[static_cast<size_t>(l - 1)][c];
        }
        nil.push_back(h);
    }
    WeilCtx ctx{A};
    std::vector<WeilElement> vals = eval_polymap(ctx, tay.poly, nil);

    std::vector<std::vector<Scalar>> fibers(static_cast<size_t>(k));
    for (int l = 1; l <= k; ++l) {
        int idx = A->monomial_index(Exp{static_cast<uint32_t>(l)});
        for (const WeilElement& val : vals)
            fibers[static_cast<size_t>(l - 1)].push_back(val.coeff(idx));
    }

    // The curve route must give the same fibers; both are exact.
    std::vector<std::vector<Scalar>> curve = v;
    curve.insert(curve.begin(), x);
    JetValue direct = simplicial_jet(f, curve);
    for (int l = 1; l <= k; ++l)
        if (direct.components[static_cast<size_t>(l)] != fibers[static_cast<size_t>(l - 1)])
            throw Error("internal: jet components disagree between the Taylor and curve routes");
    return fibers;
}

namespace {

void enumerate_multiorders(size_t pos, uint32_t remaining, std::vector<uint32_t>& alpha,
                           const std::function<void(const std::vector<uint32_t>&)>& emit) {
    if (pos == alpha.size()) {
        if (remaining == 0) emit(alpha);
        return;
    }
    const uint32_t weight = static_cast<uint32_t>(pos) + 1;
    for (uint32_t a = 0; a * weight <= remaining; ++a) {
        alpha[pos] = a;
        enumerate_multiorders(pos + 1, remaining - a * weight, alpha, emit);
    }
    alpha[pos] = 0;
}

} // namespace

std::vector<Scalar> taylor_eqn_rhs(const ExprMap& f, const std::vector<Scalar>& x,
                                   const std::vector<std::vector<Scalar>>& v, int j) {
    if (j < 0) throw DomainError("taylor_eqn_rhs: order must be nonnegative");
    if (static_cast<size_t>(j) > v.size())
        throw ArityMismatchError("taylor_eqn_rhs: need directions v_1..v_j");
    std::vector<Scalar> total(f.coarity(), Scalar::zero(f.ring()));
    std::vector<uint32_t> alpha(static_cast<size_t>(j), 0u);
    if (j == 0) return scalar_eval(f, x);
    enumerate_multiorders(0, static_cast<uint32_t>(j), alpha,
                          [&](const std::vector<uint32_t>& a) {
                              std::vector<std::vector<Scalar>> dirs;
                              std::vector<uint32_t> orders;
                              for (size_t i = 0; i < a.size(); ++i) {
                                  if (a[i] == 0) continue;
                                  dirs.push_back(v[i]);
                                  orders.push_back(a[i]);
                              }
                              std::vector<Scalar> term = normalized_diff(f, x, dirs, orders);
                              for (size_t w = 0; w < total.size(); ++w)
                                  total[w] = total[w] + term[w];
                          });
    return total;
}

bool factorial_check(const ExprMap& f, const std::vector<Scalar>& x,
                     const std::vector<Scalar>& v, int j) {
    if (j < 1) throw DomainError("factorial_check: order must be at least 1");
    std::vector<Scalar> lhs = normalized_diff(f, x, {v}, {static_cast<uint32_t>(j)});
    std::vector<std::vector<Scalar>> copies(static_cast<size_t>(j), v);
    std::vector<uint32_t> ones(static_cast<size_t>(j), 1u);
    std::vector<Scalar> iter = normalized_diff(f, x, copies, ones);
    Scalar fact = Scalar::one(f.ring());
    for (int i = 2; i <= j; ++i) fact = fact * Scalar::from_int(f.ring(), i);
    Scalar finv = fact.inv(); // NotAUnitError propagates in small characteristic
    for (size_t w = 0; w < lhs.size(); ++w)
        if (!(lhs[w] == iter[w] * finv)) return false;
    return true;
}

EqualityReport taylor_chain(const ExprMap& g, const ExprMap& h,
                            const std::vector<Scalar>& x, int k) {
    if (g.arity() != h.coarity())
        throw ArityMismatchError("taylor_chain: inner coarity must match outer arity");
    ExprMap gh = compose(g, h);
    TaylorPoly lhs = taylor(gh, x, k);
    std::vector<Scalar> hx = scalar_eval(h, x);
    TaylorPoly outer = taylor(g, hx, k);
    TaylorPoly inner = taylor(h, x, k);
    PolyMap rhs = truncated_compose(outer.poly, inner.poly, k);
    if (lhs.poly == rhs) return {true, ""};
    for (int w = 0; w < lhs.poly.coarity(); ++w)
        if (!(lhs.poly.component(w) == rhs.component(w)))
            return {false, "component " + std::to_string(w) + ": " +
                               lhs.poly.component(w).to_string() + " vs " +
                               rhs.component(w).to_string()};
    return {false, "coarity mismatch"};
}

Pushforward pushforward(const ExprMap& f, const AlgebraPtr& A,
                        const std::vector<Scalar>& x, const std::vector<WeilElement>& nu) {
    const size_t m = f.arity();
    if (x.size() != m || nu.size() != m)
        throw ArityMismatchError("pushforward: point and nilpotent data must match arity");
    for (const WeilElement& n : nu) {
        if (!same_algebra(*n.algebra(), *A))
            throw AlgebraMismatchError("pushforward: nilpotent parts live in the wrong algebra");
        if (!n.project().is_zero())
            throw DomainError("pushforward: offsets must have zero augmentation");
    }
    std::vector<WeilElement> args;
    args.reserve(m);
    for (size_t i = 0; i < m; ++i) args.push_back(embed(A, x[i]) + nu[i]);
    std::vector<WeilElement> direct = eval_expr(WeilCtx{A}, f, args);

    Pushforward out;
    out.base.reserve(direct.size());
    out.fiber.reserve(direct.size());
    for (const WeilElement& d : direct) {
        out.base.push_back(d.project());
        out.fiber.push_back(d.nilpotent_part());
    }

    // Cross-check through the Taylor polynomial: same fibers, no exceptions.
    int q = A->nilpotency();
    if (q < 1) throw DomainError("pushforward: algebra must be nilpotent");
    TaylorPoly tay = taylor(f, x, q - 1);
    WeilCtx ctx{A};
    std::vector<WeilElement> taylored = eval_polymap(ctx, tay.poly, nu);
    std::vector<Scalar> fx = scalar_eval(f, x);
    for (size_t w = 0; w < direct.size(); ++w) {
        if (!(out.base[w] == fx[w]) || !(taylored[w] == out.fiber[w]))
            throw Error("internal: pushforward routes disagree");
    }
    return out;
}

} // namespace weiljet
