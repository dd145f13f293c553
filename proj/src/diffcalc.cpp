#include "weiljet/diffcalc.hpp"

#include <string>

#include "weiljet/context.hpp"

namespace weiljet {

namespace {

int popcount(size_t mask) {
    int n = 0;
    while (mask) {
        n += static_cast<int>(mask & 1u);
        mask >>= 1;
    }
    return n;
}

void require_cubic_shape(const CubicPoint& p) {
    if (p.order < 0 || p.order > 6)
        throw DomainError("cubic order must lie in 0..6");
    const size_t slots = size_t{1} << p.order;
    if (p.space.size() != slots || p.times.size() != slots)
        throw ArityMismatchError("cubic point has the wrong number of slots");
    for (const auto& vec : p.space) {
        if (static_cast<int>(vec.size()) != p.width)
            throw ArityMismatchError("cubic space vector width mismatch");
        for (const Scalar& c : vec)
            if (c.ring() != p.ring) throw RingMismatchError("cubic point mixes base rings");
    }
    for (const Scalar& t : p.times)
        if (t.ring() != p.ring) throw RingMismatchError("cubic point mixes base rings");
    if (!p.times[0].is_zero())
        throw DomainError("cubic time slot 0 is unused and must be zero");
}

void require_simplicial_shape(const SimplicialPoint& p) {
    if (p.order < 0) throw DomainError("simplicial order must be nonnegative");
    if (p.v.size() != static_cast<size_t>(p.order) + 1 ||
        p.s.size() != static_cast<size_t>(p.order))
        throw ArityMismatchError("simplicial point has the wrong number of slots");
    for (const auto& vec : p.v) {
        if (static_cast<int>(vec.size()) != p.width)
            throw ArityMismatchError("simplicial vector width mismatch");
        for (const Scalar& c : vec)
            if (c.ring() != p.ring) throw RingMismatchError("simplicial point mixes base rings");
    }
    for (const Scalar& t : p.s)
        if (t.ring() != p.ring) throw RingMismatchError("simplicial point mixes base rings");
}

void require_map_fits(const ExprMap& f, const Ring& ring, int width) {
    if (f.ring() != ring) throw RingMismatchError("map and point use different base rings");
    if (f.arity() != width) throw ArityMismatchError("map arity does not match point width");
}

std::vector<Scalar> sub_scaled(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                               const Scalar& tinv) {
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back((b[i] - a[i]) * tinv);
    return out;
}

} // namespace

CubicPoint make_cubic(const Ring& ring, int order, int width,
                      std::vector<std::vector<Scalar>> space, std::vector<Scalar> times) {
    CubicPoint p{ring, order, width, std::move(space), std::move(times)};
    require_cubic_shape(p);
    return p;
}

SimplicialPoint make_simplicial(const Ring& ring, int order, int width,
                                std::vector<std::vector<Scalar>> v, std::vector<Scalar> s) {
    SimplicialPoint p{ring, order, width, std::move(v), std::move(s)};
    require_simplicial_shape(p);
    return p;
}

bool cubic_equal(const CubicPoint& a, const CubicPoint& b) {
    return a.ring == b.ring && a.order == b.order && a.width == b.width &&
           a.space == b.space && a.times == b.times;
}

bool simplicial_equal(const SimplicialPoint& a, const SimplicialPoint& b) {
    return a.ring == b.ring && a.order == b.order && a.width == b.width && a.v == b.v &&
           a.s == b.s;
}

CubicSplit cubic_split(const CubicPoint& p) {
    require_cubic_shape(p);
    if (p.order < 1) throw DomainError("cannot split an order-0 cubic point");
    const size_t top = size_t{1} << (p.order - 1);
    CubicPoint x{p.ring, p.order - 1, p.width, {}, {}};
    CubicPoint u{p.ring, p.order - 1, p.width, {}, {}};
    x.space.reserve(top);
    u.space.reserve(top);
    x.times.reserve(top);
    u.times.reserve(top);
    for (size_t b = 0; b < top; ++b) {
        x.space.push_back(p.space[b]);
        u.space.push_back(p.space[b | top]);
        x.times.push_back(b == 0 ? Scalar::zero(p.ring) : p.times[b]);
        u.times.push_back(b == 0 ? Scalar::zero(p.ring) : p.times[b | top]);
    }
    return CubicSplit{std::move(x), std::move(u), p.times[top]};
}

CubicPoint cubic_join(const CubicPoint& x, const CubicPoint& u, const Scalar& t) {
    require_cubic_shape(x);
    require_cubic_shape(u);
    if (x.order != u.order || x.width != u.width || !(x.ring == u.ring))
        throw AlgebraMismatchError("join requires halves of identical shape");
    const size_t top = size_t{1} << x.order;
    CubicPoint p{x.ring, x.order + 1, x.width, {}, {}};
    p.space.resize(top * 2);
    p.times.assign(top * 2, Scalar::zero(x.ring));
    for (size_t b = 0; b < top; ++b) {
        p.space[b] = x.space[b];
        p.space[b | top] = u.space[b];
        if (b != 0) {
            p.times[b] = x.times[b];
            p.times[b | top] = u.times[b];
        }
    }
    p.times[top] = t;
    return p;
}

CubicPoint cubic_axpy(const CubicPoint& x, const Scalar& t, const CubicPoint& u) {
    if (x.order != u.order || x.width != u.width || !(x.ring == u.ring))
        throw AlgebraMismatchError("affine combination requires identical shapes");
    CubicPoint out = x;
    for (size_t b = 0; b < x.space.size(); ++b)
        for (int c = 0; c < x.width; ++c) out.space[b][c] = x.space[b][c] + t * u.space[b][c];
    for (size_t b = 1; b < x.times.size(); ++b) out.times[b] = x.times[b] + t * u.times[b];
    return out;
}

bool cubic_nonsingular(const CubicPoint& p) {
    require_cubic_shape(p);
    if (p.order == 0) return true;
    CubicSplit sp = cubic_split(p);
    if (!sp.t.is_unit()) return false;
    return cubic_nonsingular(sp.x) && cubic_nonsingular(cubic_axpy(sp.x, sp.t, sp.u));
}

bool simplicial_nonsingular(const SimplicialPoint& p) {
    require_simplicial_shape(p);
    for (int i = 0; i < p.order; ++i) {
        if (!p.s[static_cast<size_t>(i)].is_unit()) return false;
        for (int j = 0; j < i; ++j)
            if (!(p.s[static_cast<size_t>(i)] - p.s[static_cast<size_t>(j)]).is_unit())
                return false;
    }
    return true;
}

std::vector<Scalar> cubic_dq(const ExprMap& f, const CubicPoint& p) {
    require_cubic_shape(p);
    require_map_fits(f, p.ring, p.width);
    if (p.order != 1) throw DomainError("first-order quotient needs an order-1 point");
    const Scalar& t = p.times[1];
    if (!t.is_unit()) throw SingularTimeError("time is not a unit: " + t.to_string());
    std::vector<Scalar> shifted;
    shifted.reserve(p.space[0].size());
    for (int c = 0; c < p.width; ++c) shifted.push_back(p.space[0][c] + t * p.space[1][c]);
    std::vector<Scalar> fx = scalar_eval(f, p.space[0]);
    std::vector<Scalar> fy = scalar_eval(f, shifted);
    return sub_scaled(fx, fy, t.inv());
}

CubicPoint extended_tangent(const ExprMap& f, const CubicPoint& p) {
    require_cubic_shape(p);
    require_map_fits(f, p.ring, p.width);
    if (p.order == 0) {
        return CubicPoint{p.ring, 0, f.coarity(), {scalar_eval(f, p.space[0])},
                          {Scalar::zero(p.ring)}};
    }
    CubicSplit sp = cubic_split(p);
    if (!sp.t.is_unit())
        throw SingularTimeError("top time is not a unit: " + sp.t.to_string());
    CubicPoint X = extended_tangent(f, sp.x);
    CubicPoint Y = extended_tangent(f, cubic_axpy(sp.x, sp.t, sp.u));
    Scalar tinv = sp.t.inv();
    CubicPoint quot{p.ring, p.order - 1, f.coarity(), {}, {}};
    quot.space.reserve(X.space.size());
    for (size_t b = 0; b < X.space.size(); ++b)
        quot.space.push_back(sub_scaled(X.space[b], Y.space[b], tinv));
    quot.times.reserve(X.times.size());
    for (size_t b = 0; b < X.times.size(); ++b)
        quot.times.push_back(b == 0 ? Scalar::zero(p.ring)
                                    : (Y.times[b] - X.times[b]) * tinv);
    CubicPoint out = cubic_join(X, quot, sp.t);
    // The time half of the quotient is the input's own time data; make sure
    // the recursion reproduced it exactly.
    if (out.times != p.times) throw Error("internal: extended tangent altered the times");
    return out;
}

namespace {

// node_i = v_0 + sum_{j=1..i} prod_{m=0..j-1} (s_i - s_m) v_j, s_0 = 0.
std::vector<Scalar> simplicial_node(const SimplicialPoint& p, int i) {
    std::vector<Scalar> node = p.v[0];
    Scalar coeff = Scalar::one(p.ring);
    for (int j = 1; j <= i; ++j) {
        const Scalar sm = (j == 1) ? Scalar::zero(p.ring) : p.s[static_cast<size_t>(j - 2)];
        coeff = coeff * (p.s[static_cast<size_t>(i - 1)] - sm);
        for (int c = 0; c < p.width; ++c)
            node[static_cast<size_t>(c)] =
                node[static_cast<size_t>(c)] + coeff * p.v[static_cast<size_t>(j)][c];
    }
    return node;
}

Scalar simplicial_time(const SimplicialPoint& p, int i) {
    return i == 0 ? Scalar::zero(p.ring) : p.s[static_cast<size_t>(i - 1)];
}

} // namespace

std::vector<Scalar> simplicial_dq(const ExprMap& f, const SimplicialPoint& p) {
    require_simplicial_shape(p);
    require_map_fits(f, p.ring, p.width);
    const int k = p.order;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j < i; ++j) {
            Scalar d = simplicial_time(p, i) - simplicial_time(p, j);
            if (!d.is_unit())
                throw SingularTimeError("time difference s_" + std::to_string(i) + " - s_" +
                                        std::to_string(j) + " = " + d.to_string() +
                                        " is not a unit");
        }
    std::vector<Scalar> total(static_cast<size_t>(f.coarity()), Scalar::zero(p.ring));
    for (int i = 0; i <= k; ++i) {
        Scalar denom = Scalar::one(p.ring);
        for (int j = 0; j <= k; ++j) {
            if (j == i) continue;
            denom = denom * (simplicial_time(p, i) - simplicial_time(p, j));
        }
        std::vector<Scalar> fi = scalar_eval(f, simplicial_node(p, i));
        Scalar dinv = denom.inv();
        for (size_t w = 0; w < total.size(); ++w) total[w] = total[w] + fi[w] * dinv;
    }
    return total;
}

SimplicialPoint extended_jet(const ExprMap& f, const SimplicialPoint& p) {
    require_simplicial_shape(p);
    require_map_fits(f, p.ring, p.width);
    SimplicialPoint out{p.ring, p.order, f.coarity(), {}, p.s};
    out.v.reserve(static_cast<size_t>(p.order) + 1);
    for (int l = 0; l <= p.order; ++l) {
        SimplicialPoint sub{
            p.ring, l, p.width,
            std::vector<std::vector<Scalar>>(p.v.begin(), p.v.begin() + l + 1),
            std::vector<Scalar>(p.s.begin(), p.s.begin() + l)};
        out.v.push_back(simplicial_dq(f, sub));
    }
    return out;
}

CubicPoint g_embed(const SimplicialPoint& p) {
    require_simplicial_shape(p);
    if (p.order > 6) throw DomainError("cubic order must lie in 0..6");
    const int k = p.order;
    const size_t slots = size_t{1} << k;
    CubicPoint q{p.ring, k, p.width, {}, {}};
    q.space.assign(slots, std::vector<Scalar>(static_cast<size_t>(p.width),
                                              Scalar::zero(p.ring)));
    q.times.assign(slots, Scalar::zero(p.ring));
    for (int i = 0; i <= k; ++i) q.space[(size_t{1} << i) - 1] = p.v[static_cast<size_t>(i)];
    for (int i = 1; i <= k; ++i) {
        Scalar prev = (i == 1) ? Scalar::zero(p.ring) : p.s[static_cast<size_t>(i - 2)];
        q.times[size_t{1} << (i - 1)] = p.s[static_cast<size_t>(i - 1)] - prev;
    }
    for (int i = 1; i < k; ++i)
        q.times[(size_t{1} << (i - 1)) | (size_t{1} << i)] = Scalar::one(p.ring);
    return q;
}

SimplicialPoint g_unembed(const CubicPoint& q) {
    require_cubic_shape(q);
    const int k = q.order;
    const size_t slots = size_t{1} << k;
    std::vector<bool> space_used(slots, false);
    std::vector<bool> time_used(slots, false);
    SimplicialPoint p{q.ring, k, q.width, {}, {}};
    for (int i = 0; i <= k; ++i) {
        const size_t mask = (size_t{1} << i) - 1;
        p.v.push_back(q.space[mask]);
        space_used[mask] = true;
    }
    Scalar acc = Scalar::zero(q.ring);
    for (int i = 1; i <= k; ++i) {
        const size_t mask = size_t{1} << (i - 1);
        acc = acc + q.times[mask];
        p.s.push_back(acc);
        time_used[mask] = true;
    }
    for (int i = 1; i < k; ++i) {
        const size_t mask = (size_t{1} << (i - 1)) | (size_t{1} << i);
        if (!q.times[mask].is_one())
            throw NotInImageError("adjacent-pair time at mask " + std::to_string(mask) +
                                  " must be 1, found " + q.times[mask].to_string());
        time_used[mask] = true;
    }
    time_used[0] = true;
    for (size_t b = 0; b < slots; ++b) {
        if (!space_used[b]) {
            for (const Scalar& c : q.space[b])
                if (!c.is_zero())
                    throw NotInImageError("space slot at mask " + std::to_string(b) +
                                          " must vanish");
        }
        if (!time_used[b] && !q.times[b].is_zero())
            throw NotInImageError("time slot at mask " + std::to_string(b) + " must vanish");
    }
    return p;
}

CubicPoint rho_cubic(const Scalar& r, const CubicPoint& p) {
    require_cubic_shape(p);
    if (r.ring() != p.ring) throw RingMismatchError("scaling scalar from the wrong ring");
    Scalar rinv = r.inv(); // NotAUnitError if r is not a unit
    CubicPoint out = p;
    const size_t slots = size_t{1} << p.order;
    for (size_t b = 0; b < slots; ++b) {
        const int card = popcount(b);
        Scalar vf = r.pow(static_cast<uint64_t>(card));
        for (int c = 0; c < p.width; ++c) out.space[b][c] = vf * p.space[b][c];
        if (b == 0) continue;
        Scalar tf = (card >= 2) ? r.pow(static_cast<uint64_t>(card - 2))
                                : rinv.pow(static_cast<uint64_t>(2 - card));
        out.times[b] = tf * p.times[b];
    }
    return out;
}

SimplicialPoint rho_simplicial(const Scalar& r, const SimplicialPoint& p) {
    require_simplicial_shape(p);
    if (r.ring() != p.ring) throw RingMismatchError("scaling scalar from the wrong ring");
    Scalar rinv = r.inv();
    SimplicialPoint out = p;
    Scalar power = Scalar::one(p.ring);
    for (int i = 1; i <= p.order; ++i) {
        power = power * r;
        for (int c = 0; c < p.width; ++c)
            out.v[static_cast<size_t>(i)][c] = power * p.v[static_cast<size_t>(i)][c];
    }
    for (int i = 0; i < p.order; ++i)
        out.s[static_cast<size_t>(i)] = rinv * p.s[static_cast<size_t>(i)];
    return out;
}

std::vector<PolyMap> symbolic_simplicial(const ExprMap& f,
                                         const std::vector<std::vector<Scalar>>& v) {
    if (v.empty()) throw ArityMismatchError("need at least the base vector");
    const int k = static_cast<int>(v.size()) - 1;
    const int m = f.arity();
    const Ring& ring = f.ring();
    for (const auto& vec : v)
        if (static_cast<int>(vec.size()) != m)
            throw ArityMismatchError("vector width does not match map arity");

    PolyCtx ctx{ring, k};
    auto constant = [&](const Scalar& c) { return SparsePoly::constant(ring, k, c); };
    auto svar = [&](int l) {
        // s_l as a polynomial; s_0 = 0.
        return l == 0 ? SparsePoly(ring, k) : SparsePoly::variable(ring, k, l - 1);
    };

    // known[i] = order-i map as polynomials (width components); known[0] = f(v_0).
    std::vector<std::vector<SparsePoly>> known;
    {
        std::vector<Scalar> f0 = scalar_eval(f, v[0]);
        std::vector<SparsePoly> row;
        row.reserve(f0.size());
        for (const Scalar& c : f0) row.push_back(constant(c));
        known.push_back(std::move(row));
    }

    for (int j = 1; j <= k; ++j) {
        // prefix[i] = prod_{l=0..i-1} (s_j - s_l), so prefix[0] = 1.
        std::vector<SparsePoly> prefix{SparsePoly::constant(ring, k, Scalar::one(ring))};
        for (int i = 1; i <= j; ++i)
            prefix.push_back(prefix.back() * (svar(j) - svar(i - 1)));

        std::vector<SparsePoly> args;
        args.reserve(static_cast<size_t>(m));
        for (int c = 0; c < m; ++c) {
            SparsePoly coord = constant(v[0][static_cast<size_t>(c)]);
            for (int i = 1; i <= j; ++i)
                coord = coord + prefix[static_cast<size_t>(i)] *
                                    constant(v[static_cast<size_t>(i)][static_cast<size_t>(c)]);
            args.push_back(std::move(coord));
        }
        std::vector<SparsePoly> E = eval_expr(ctx, f, args);

        for (int w = 0; w < f.coarity(); ++w) {
            SparsePoly rem = E[static_cast<size_t>(w)];
            for (int i = 0; i < j; ++i)
                rem = rem - prefix[static_cast<size_t>(i)] *
                                known[static_cast<size_t>(i)][static_cast<size_t>(w)];
            for (int l = 0; l < j; ++l) rem = divide_exact(rem, j - 1, svar(l));
            E[static_cast<size_t>(w)] = std::move(rem);
        }
        known.push_back(std::move(E));
    }

    std::vector<PolyMap> out;
    out.reserve(static_cast<size_t>(k));
    for (int j = 1; j <= k; ++j) out.emplace_back(ring, k, std::move(known[static_cast<size_t>(j)]));
    return out;
}

std::vector<int> discover_embedding_signs(
    const std::vector<std::pair<ExprMap, SimplicialPoint>>& trials) {
    if (trials.empty()) throw DomainError("sign discovery needs at least one trial");
    const int k = trials.front().second.order;
    std::vector<int> signs(static_cast<size_t>(k) + 1, 0);
    for (const auto& [f, p] : trials) {
        if (p.order != k) throw DomainError("sign discovery trials must share one order");
        CubicPoint lhs = extended_tangent(f, g_embed(p));
        CubicPoint rhs = g_embed(extended_jet(f, p));
        if (lhs.times != rhs.times) throw Error("sign discovery: time halves disagree");
        const size_t slots = size_t{1} << k;
        std::vector<bool> chain(slots, false);
        for (int i = 0; i <= k; ++i) {
            const size_t mask = (size_t{1} << i) - 1;
            chain[mask] = true;
            bool all_zero = true, plus = true, minus = true;
            for (size_t c = 0; c < lhs.space[mask].size(); ++c) {
                const Scalar& a = lhs.space[mask][c];
                const Scalar& b = rhs.space[mask][c];
                if (!b.is_zero() || !a.is_zero()) all_zero = false;
                if (!(a == b)) plus = false;
                if (!(a == -b)) minus = false;
            }
            if (all_zero) continue;
            int found = plus ? (minus ? 0 : 1) : (minus ? -1 : 0);
            if (found == 0)
                throw Error("sign discovery: chain slot " + std::to_string(i) +
                            " is not a componentwise sign flip");
            int& slot = signs[static_cast<size_t>(i)];
            if (slot == 0)
                slot = found;
            else if (slot != found)
                throw Error("sign discovery: inconsistent sign at chain slot " +
                            std::to_string(i));
        }
        for (size_t b = 0; b < slots; ++b) {
            if (chain[b]) continue;
            for (const Scalar& c : lhs.space[b])
                if (!c.is_zero())
                    throw Error("sign discovery: off-chain slot " + std::to_string(b) +
                                " is nonzero");
            for (const Scalar& c : rhs.space[b])
                if (!c.is_zero())
                    throw Error("sign discovery: off-chain slot " + std::to_string(b) +
                                " is nonzero");
        }
    }
    for (int i = 0; i <= k; ++i)
        if (signs[static_cast<size_t>(i)] == 0)
            throw Error("sign discovery: chain slot " + std::to_string(i) +
                        " was zero in every trial");
    return signs;
}

std::vector<int> embedding_sign_pattern(int k) {
    if (k < 0 || k > 6) throw DomainError("cubic order must lie in 0..6");
    return std::vector<int>(static_cast<size_t>(k) + 1, 1);
}

EqualityReport embedding_compatibility(const ExprMap& f, const SimplicialPoint& p) {
    CubicPoint lhs = extended_tangent(f, g_embed(p));
    CubicPoint rhs = g_embed(extended_jet(f, p));
    std::vector<int> signs = embedding_sign_pattern(p.order);
    for (int i = 0; i <= p.order; ++i) {
        const size_t mask = (size_t{1} << i) - 1;
        if (signs[static_cast<size_t>(i)] == -1)
            for (Scalar& c : rhs.space[mask]) c = -c;
    }
    if (cubic_equal(lhs, rhs)) return {true, ""};
    for (size_t b = 0; b < lhs.space.size(); ++b) {
        if (lhs.space[b] != rhs.space[b])
            return {false, "space slot at mask " + std::to_string(b) + " disagrees"};
        if (lhs.times[b] != rhs.times[b])
            return {false, "time slot at mask " + std::to_string(b) + " disagrees"};
    }
    return {false, "shape mismatch"};
}

} // namespace weiljet
