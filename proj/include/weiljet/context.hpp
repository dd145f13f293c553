#pragma once
#include <concepts>
#include <vector>

#include "weiljet/poly.hpp"
#include "weiljet/weil_algebra.hpp"

namespace weiljet {

// A commutative ring with a chosen embedding of the base ring: everything the
// generic evaluators need. inv() may throw (NotAUnitError, or
// NotPolynomialError where inversion would leave the carrier).
template <class C>
concept AlgebraContext = requires(const C& ctx, const typename C::value_type& v,
                                  const Scalar& s) {
    typename C::value_type;
    { ctx.ring() } -> std::convertible_to<const Ring&>;
    { ctx.zero() } -> std::convertible_to<typename C::value_type>;
    { ctx.one() } -> std::convertible_to<typename C::value_type>;
    { ctx.embed(s) } -> std::convertible_to<typename C::value_type>;
    { ctx.add(v, v) } -> std::convertible_to<typename C::value_type>;
    { ctx.neg(v) } -> std::convertible_to<typename C::value_type>;
    { ctx.mul(v, v) } -> std::convertible_to<typename C::value_type>;
    { ctx.inv(v) } -> std::convertible_to<typename C::value_type>;
    { ctx.equal(v, v) } -> std::convertible_to<bool>;
};

// Plain base-ring arithmetic.
class ScalarCtx {
public:
    using value_type = Scalar;

    explicit ScalarCtx(Ring ring) : ring_(std::move(ring)) {}

    const Ring& ring() const { return ring_; }
    Scalar zero() const { return Scalar::zero(ring_); }
    Scalar one() const { return Scalar::one(ring_); }
    Scalar embed(const Scalar& s) const {
        if (s.ring() != ring_) throw RingMismatchError("embedding foreign scalar");
        return s;
    }
    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar inv(const Scalar& a) const { return a.inv(); }
    bool equal(const Scalar& a, const Scalar& b) const { return a == b; }

private:
    Ring ring_;
};

// Arithmetic in a Weil algebra.
class WeilCtx {
public:
    using value_type = WeilElement;

    explicit WeilCtx(AlgebraPtr a) : a_(std::move(a)) {}

    const Ring& ring() const { return a_->ring(); }
    const AlgebraPtr& algebra() const { return a_; }
    WeilElement zero() const { return WeilElement::zero(a_); }
    WeilElement one() const { return WeilElement::unit(a_); }
    WeilElement embed(const Scalar& s) const { return weiljet::embed(a_, s); }
    WeilElement add(const WeilElement& a, const WeilElement& b) const { return a + b; }
    WeilElement neg(const WeilElement& a) const { return -a; }
    WeilElement mul(const WeilElement& a, const WeilElement& b) const { return a * b; }
    WeilElement inv(const WeilElement& a) const { return a.inv(); }
    bool equal(const WeilElement& a, const WeilElement& b) const { return a == b; }

private:
    AlgebraPtr a_;
};

// Polynomial arithmetic; inversion is only defined for unit constants, so
// evaluating anything with a genuine division in it fails loudly.
class PolyCtx {
public:
    using value_type = SparsePoly;

    PolyCtx(Ring ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {}

    const Ring& ring() const { return ring_; }
    int nvars() const { return nvars_; }
    SparsePoly zero() const { return SparsePoly(ring_, nvars_); }
    SparsePoly one() const { return embed(Scalar::one(ring_)); }
    SparsePoly embed(const Scalar& s) const {
        return SparsePoly::constant(ring_, nvars_, s);
    }
    SparsePoly variable(int v) const { return SparsePoly::variable(ring_, nvars_, v); }
    SparsePoly add(const SparsePoly& a, const SparsePoly& b) const { return a + b; }
    SparsePoly neg(const SparsePoly& a) const { return -a; }
    SparsePoly mul(const SparsePoly& a, const SparsePoly& b) const { return a * b; }
    SparsePoly inv(const SparsePoly& a) const {
        if (!a.is_constant())
            throw NotPolynomialError("inverse of a nonconstant polynomial");
        return embed(a.coefficient(Exp(nvars_, 0)).inv());
    }
    bool equal(const SparsePoly& a, const SparsePoly& b) const { return a == b; }

private:
    Ring ring_;
    int nvars_;
};

// Arithmetic in outer ⊗ inner realized as vectors over the outer basis with
// inner-algebra entries: the value an iterated application of two functors
// works with. Lets nested evaluation be compared against the one-shot tensor
// evaluation without ever forming the tensor algebra here.
class NestedCtx {
public:
    using value_type = std::vector<WeilElement>;

    NestedCtx(AlgebraPtr outer, AlgebraPtr inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {
        if (outer_->ring() != inner_->ring())
            throw RingMismatchError("nested algebras over different rings");
    }

    const Ring& ring() const { return inner_->ring(); }
    const AlgebraPtr& outer() const { return outer_; }
    const AlgebraPtr& inner() const { return inner_; }

    value_type zero() const {
        return value_type(outer_->dim(), WeilElement::zero(inner_));
    }
    value_type one() const { return lift(WeilElement::unit(inner_)); }
    value_type embed(const Scalar& s) const { return lift(weiljet::embed(inner_, s)); }
    // Constant along the outer algebra.
    value_type lift(const WeilElement& a) const {
        value_type v = zero();
        v[outer_->unit_index()] = a;
        return v;
    }
    // Outer augmentation, landing in the inner algebra.
    WeilElement base(const value_type& x) const {
        WeilElement acc = WeilElement::zero(inner_);
        const auto& aug = outer_->augmentation();
        for (int i = 0; i < outer_->dim(); ++i)
            if (!aug[i].is_zero()) acc += x[i] * aug[i];
        return acc;
    }

    value_type add(const value_type& a, const value_type& b) const {
        value_type r = a;
        for (int i = 0; i < outer_->dim(); ++i) r[i] += b[i];
        return r;
    }
    value_type neg(const value_type& a) const {
        value_type r = a;
        for (auto& e : r) e = -e;
        return r;
    }
    value_type mul(const value_type& a, const value_type& b) const {
        value_type r = zero();
        for (int i = 0; i < outer_->dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (int j = 0; j < outer_->dim(); ++j) {
                if (b[j].is_zero()) continue;
                const WeilElement prod = a[i] * b[j];
                outer_->for_product(
                    i, j, [&](int l, const Scalar& c) { r[l] += prod * c; });
            }
        }
        return r;
    }
    value_type inv(const value_type& x) const {
        const WeilElement a0 = base(x);
        const WeilElement a0inv = a0.inv(); // NotAUnitError propagates
        const int q = outer_->nilpotency();
        if (q < 1) throw Error("outer algebra kernel is not nilpotent");
        value_type z = mul(add(x, neg(lift(a0))), lift(a0inv));
        value_type acc = one();
        value_type term = one();
        for (int j = 1; j < q; ++j) {
            term = mul(term, z);
            acc = j % 2 ? add(acc, neg(term)) : add(acc, term);
        }
        return mul(acc, lift(a0inv));
    }
    bool equal(const value_type& a, const value_type& b) const {
        for (int i = 0; i < outer_->dim(); ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

private:
    AlgebraPtr outer_, inner_;
};

namespace detail {

template <AlgebraContext Ctx>
class PowerCache {
public:
    PowerCache(const Ctx& ctx, const std::vector<typename Ctx::value_type>& args)
        : ctx_(ctx), args_(args), pw_(args.size()) {}

    const typename Ctx::value_type& get(size_t v, uint32_t k) {
        auto& col = pw_[v];
        if (col.empty()) col.push_back(ctx_.one());
        while (col.size() <= k) col.push_back(ctx_.mul(col.back(), args_[v]));
        return col[k];
    }

private:
    const Ctx& ctx_;
    const std::vector<typename Ctx::value_type>& args_;
    std::vector<std::vector<typename Ctx::value_type>> pw_;
};

} // namespace detail

// Evaluates p term by term with cached argument powers.
template <AlgebraContext Ctx>
typename Ctx::value_type eval_poly(const Ctx& ctx, const SparsePoly& p,
                                   const std::vector<typename Ctx::value_type>& args) {
    if (static_cast<int>(args.size()) != p.nvars())
        throw ArityMismatchError("argument count does not match polynomial arity");
    if (p.ring() != ctx.ring())
        throw RingMismatchError("polynomial over the wrong ring for this context");
    detail::PowerCache<Ctx> cache(ctx, args);
    auto acc = ctx.zero();
    for (const auto& [e, c] : p.terms()) {
        auto t = ctx.embed(c);
        for (size_t v = 0; v < args.size(); ++v)
            if (e[v]) t = ctx.mul(t, cache.get(v, e[v]));
        acc = ctx.add(acc, t);
    }
    return acc;
}

template <AlgebraContext Ctx>
std::vector<typename Ctx::value_type> eval_polymap(
    const Ctx& ctx, const PolyMap& f,
    const std::vector<typename Ctx::value_type>& args) {
    if (static_cast<int>(args.size()) != f.arity())
        throw ArityMismatchError("argument count does not match map arity");
    if (f.ring() != ctx.ring())
        throw RingMismatchError("map over the wrong ring for this context");
    detail::PowerCache<Ctx> cache(ctx, args);
    std::vector<typename Ctx::value_type> out;
    out.reserve(f.coarity());
    for (const auto& p : f.components()) {
        auto acc = ctx.zero();
        for (const auto& [e, c] : p.terms()) {
            auto t = ctx.embed(c);
            for (size_t v = 0; v < args.size(); ++v)
                if (e[v]) t = ctx.mul(t, cache.get(v, e[v]));
            acc = ctx.add(acc, t);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

template <AlgebraContext Ctx>
typename Ctx::value_type ctx_pow(const Ctx& ctx, const typename Ctx::value_type& x,
                                 uint32_t n) {
    auto acc = ctx.one();
    for (uint32_t i = 0; i < n; ++i) acc = ctx.mul(acc, x);
    return acc;
}

} // namespace weiljet
