#include "weiljet/poly.hpp"

#include <algorithm>

#include "weiljet/error.hpp"

namespace weiljet {

SparsePoly::SparsePoly(Ring ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {
    if (nvars < 0) throw InvalidPresetError("negative variable count");
}

SparsePoly SparsePoly::constant(const Ring& ring, int nvars, const Scalar& c) {
    SparsePoly p(ring, nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
}

SparsePoly SparsePoly::variable(const Ring& ring, int nvars, int v) {
    if (v < 0 || v >= nvars) throw ArityMismatchError("variable index out of range");
    Exp e(nvars, 0);
    e[v] = 1;
    return monomial(ring, std::move(e), Scalar::one(ring));
}

SparsePoly SparsePoly::monomial(const Ring& ring, Exp e, const Scalar& c) {
    SparsePoly p(ring, static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

int SparsePoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
}

Scalar SparsePoly::coefficient(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
}

bool SparsePoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

void SparsePoly::add_term(const Exp& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw ArityMismatchError("exponent arity mismatch");
    if (c.ring() != ring_) throw RingMismatchError("coefficient from the wrong ring");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void SparsePoly::require_compatible(const SparsePoly& o) const {
    if (ring_ != o.ring_) throw RingMismatchError("polynomials over different rings");
    if (nvars_ != o.nvars_)
        throw ArityMismatchError("polynomials in different variable counts");
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r(ring_, nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    require_compatible(o);
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
    require_compatible(o);
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    require_compatible(o);
    SparsePoly r(ring_, nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) r.add_term(exp_add(ea, eb), ca * cb);
    return r;
}

SparsePoly SparsePoly::operator*(const Scalar& s) const {
    if (s.ring() != ring_) throw RingMismatchError("scaling by foreign scalar");
    SparsePoly r(ring_, nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    require_compatible(o);
    return terms_ == o.terms_;
}

SparsePoly SparsePoly::mul_capped(const SparsePoly& o, int cap) const {
    require_compatible(o);
    SparsePoly r(ring_, nvars_);
    for (const auto& [ea, ca] : terms_) {
        const int da = static_cast<int>(total_degree(ea));
        if (da > cap) continue;
        for (const auto& [eb, cb] : o.terms_) {
            if (da + static_cast<int>(total_degree(eb)) > cap) continue;
            r.add_term(exp_add(ea, eb), ca * cb);
        }
    }
    return r;
}

SparsePoly SparsePoly::pow(uint32_t n) const {
    SparsePoly r = constant(ring_, nvars_, Scalar::one(ring_));
    for (uint32_t i = 0; i < n; ++i) r *= *this;
    return r;
}

SparsePoly SparsePoly::truncated(int cap) const {
    SparsePoly r(ring_, nvars_);
    for (const auto& [e, c] : terms_)
        if (static_cast<int>(total_degree(e)) <= cap) r.terms_.emplace(e, c);
    return r;
}

SparsePoly SparsePoly::homogeneous_part(int d) const {
    SparsePoly r(ring_, nvars_);
    for (const auto& [e, c] : terms_)
        if (static_cast<int>(total_degree(e)) == d) r.terms_.emplace(e, c);
    return r;
}

Scalar SparsePoly::eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw ArityMismatchError("evaluation point arity mismatch");
    for (const auto& s : point)
        if (s.ring() != ring_) throw RingMismatchError("evaluation point over wrong ring");
    Scalar acc = Scalar::zero(ring_);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (int v = 0; v < nvars_; ++v)
            if (e[v]) t *= point[v].pow(e[v]);
        acc += t;
    }
    return acc;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")";
        for (int v = 0; v < nvars_; ++v) {
            if (!e[v]) continue;
            s += "*x" + std::to_string(v);
            if (e[v] > 1) s += "^" + std::to_string(e[v]);
        }
    }
    return s;
}

SparsePoly divide_exact(const SparsePoly& p, int var, const SparsePoly& root) {
    if (var < 0 || var >= p.nvars()) throw ArityMismatchError("division variable out of range");
    if (root.nvars() != p.nvars() || root.ring() != p.ring())
        throw ArityMismatchError("divisor root incompatible with dividend");
    for (const auto& [e, c] : root.terms())
        if (e[var]) throw Error("divisor root must not involve the division variable");

    // Coefficients of p as a polynomial in x_var.
    std::vector<SparsePoly> c;
    for (const auto& [e, coef] : p.terms()) {
        const uint32_t d = e[var];
        if (d >= c.size()) c.resize(d + 1, SparsePoly(p.ring(), p.nvars()));
        Exp stripped = e;
        stripped[var] = 0;
        c[d].add_term(stripped, coef);
    }
    if (c.empty()) return SparsePoly(p.ring(), p.nvars()); // 0 / (x - g) = 0

    const int D = static_cast<int>(c.size()) - 1;
    if (D == 0) {
        if (!c[0].is_zero())
            throw DivisionNotExactError("dividend free of the division variable");
        return SparsePoly(p.ring(), p.nvars());
    }

    // Synthetic division by (x_var - root).
    std::vector<SparsePoly> b(D, SparsePoly(p.ring(), p.nvars()));
    b[D - 1] = c[D];
    for (int d = D - 1; d >= 1; --d) b[d - 1] = c[d] + root * b[d];
    SparsePoly rem = c[0] + root * b[0];
    if (!rem.is_zero())
        throw DivisionNotExactError("nonzero remainder: " + rem.to_string());

    SparsePoly q(p.ring(), p.nvars());
    for (int d = 0; d < D; ++d)
        for (const auto& [e, coef] : b[d].terms()) {
            Exp lifted = e;
            lifted[var] = static_cast<uint32_t>(d);
            q.add_term(lifted, coef);
        }
    return q;
}

// --- PolyMap ---------------------------------------------------------------

PolyMap::PolyMap(Ring ring, int arity, std::vector<SparsePoly> components)
    : ring_(std::move(ring)), arity_(arity), comps_(std::move(components)) {
    if (arity < 0) throw ArityMismatchError("negative arity");
    for (const auto& p : comps_) {
        if (p.ring() != ring_) throw RingMismatchError("component over the wrong ring");
        if (p.nvars() != arity_)
            throw ArityMismatchError("component variable count differs from arity");
    }
}

int PolyMap::degree() const {
    int d = -1;
    for (const auto& p : comps_) d = std::max(d, p.degree());
    return d;
}

std::vector<Scalar> PolyMap::eval(const std::vector<Scalar>& point) const {
    std::vector<Scalar> out;
    out.reserve(comps_.size());
    for (const auto& p : comps_) out.push_back(p.eval(point));
    return out;
}

bool PolyMap::operator==(const PolyMap& o) const {
    return ring_ == o.ring_ && arity_ == o.arity_ && comps_ == o.comps_;
}

std::vector<PolyMap> homogeneous_parts(const PolyMap& p) {
    const int deg = std::max(p.degree(), 0);
    std::vector<PolyMap> out;
    out.reserve(deg + 1);
    for (int d = 0; d <= deg; ++d) {
        std::vector<SparsePoly> comps;
        comps.reserve(p.coarity());
        for (const auto& c : p.components()) comps.push_back(c.homogeneous_part(d));
        out.emplace_back(p.ring(), p.arity(), std::move(comps));
    }
    return out;
}

PolyMap truncated_compose(const PolyMap& g, const PolyMap& f, int cap) {
    if (g.ring() != f.ring()) throw RingMismatchError("composing maps over different rings");
    if (g.arity() != f.coarity())
        throw ArityMismatchError("inner coarity does not feed outer arity");
    const Ring& ring = g.ring();
    const int n = f.arity();

    std::vector<std::vector<SparsePoly>> pw(f.coarity());
    auto power = [&](int v, uint32_t k) -> const SparsePoly& {
        auto& col = pw[v];
        if (col.empty())
            col.push_back(SparsePoly::constant(ring, n, Scalar::one(ring)));
        while (col.size() <= k)
            col.push_back(col.back().mul_capped(f.component(v).truncated(cap), cap));
        return col[k];
    };

    std::vector<SparsePoly> comps;
    comps.reserve(g.coarity());
    for (const auto& gc : g.components()) {
        SparsePoly out(ring, n);
        for (const auto& [e, c] : gc.terms()) {
            SparsePoly acc = SparsePoly::constant(ring, n, c);
            for (int v = 0; v < g.arity(); ++v)
                if (e[v]) acc = acc.mul_capped(power(v, e[v]), cap);
            out += acc;
        }
        comps.push_back(std::move(out));
    }
    return PolyMap(ring, n, std::move(comps));
}

// --- homogeneous separation from blackbox evaluations -----------------------

namespace {

// A unit r with r^i - r^D invertible, i.e. r and 1 - r^{D-i} both units.
Scalar separating_unit(const Ring& ring, int i, int D) {
    if (ring.is_rationals()) return Scalar::from_int(ring, 2);
    const uint64_t m = ring.modulus();
    const uint64_t limit = std::min<uint64_t>(m - 1, 4096);
    for (uint64_t r = 2; r <= limit; ++r) {
        Scalar s = Scalar::from_residue(ring, r);
        if (!s.is_unit()) continue;
        if ((s.pow(static_cast<uint64_t>(i)) - s.pow(static_cast<uint64_t>(D))).is_unit())
            return s;
    }
    if (m - 1 > limit)
        throw ExhaustedError("separating-unit search gave up for large modulus");
    throw NoSeparatingScalarsError("no unit r with r^" + std::to_string(i) + " - r^" +
                                   std::to_string(D) + " invertible mod " +
                                   std::to_string(m));
}

} // namespace

std::vector<std::vector<Scalar>> separate_homogeneous(
    const std::function<std::vector<Scalar>(const Scalar&)>& eval_at_multiple,
    const Ring& ring, int degree_bound, int width) {
    if (degree_bound < 0) throw DomainError("negative degree bound");
    if (degree_bound > 20)
        throw DomainError("degree bound too large for blackbox separation");

    std::map<Scalar, std::vector<Scalar>, ScalarKeyLess> cache;
    auto E = [&](const Scalar& c) -> const std::vector<Scalar>& {
        auto it = cache.find(c);
        if (it == cache.end()) {
            auto v = eval_at_multiple(c);
            if (static_cast<int>(v.size()) != width)
                throw ArityMismatchError("blackbox returned the wrong width");
            it = cache.emplace(c, std::move(v)).first;
        }
        return it->second;
    };

    const int K = degree_bound;
    std::vector<std::vector<Scalar>> parts(
        K + 1, std::vector<Scalar>(width, Scalar::zero(ring)));
    std::vector<bool> known(K + 1, false);

    parts[0] = E(Scalar::zero(ring));
    known[0] = true;

    // Remainder after subtracting every slice already recovered.
    auto R = [&](const Scalar& c) {
        std::vector<Scalar> v = E(c);
        for (int d = 0; d <= K; ++d) {
            if (!known[d]) continue;
            const Scalar cd = c.pow(static_cast<uint64_t>(d));
            for (int j = 0; j < width; ++j) v[j] -= cd * parts[d][j];
        }
        return v;
    };

    for (int D = K; D >= 1; --D) {
        // R now has degrees 1..D only. Kill 1..D-1; what survives at c = 1 is
        // lambda * P_D(x).
        std::vector<std::pair<Scalar, Scalar>> combo{
            {Scalar::one(ring), Scalar::one(ring)}}; // (weight, argument)
        Scalar lambda = Scalar::one(ring);
        for (int i = 1; i < D; ++i) {
            const Scalar r = separating_unit(ring, i, D);
            const Scalar u = r.pow(static_cast<uint64_t>(i));
            lambda *= u - r.pow(static_cast<uint64_t>(D));
            std::vector<std::pair<Scalar, Scalar>> next;
            next.reserve(2 * combo.size());
            for (const auto& [w, s] : combo) {
                next.emplace_back(w * u, s);
                next.emplace_back(-w, r * s);
            }
            combo = std::move(next);
        }
        std::vector<Scalar> g(width, Scalar::zero(ring));
        for (const auto& [w, s] : combo) {
            const auto v = R(s);
            for (int j = 0; j < width; ++j) g[j] += w * v[j];
        }
        const Scalar li = lambda.inv();
        for (int j = 0; j < width; ++j) parts[D][j] = li * g[j];
        known[D] = true;
    }
    return parts;
}

} // namespace weiljet
