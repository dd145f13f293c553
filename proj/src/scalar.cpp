#include "weiljet/scalar.hpp"

#include <algorithm>
#include <functional>

#include "weiljet/exponents.hpp"
#include "weiljet/rng.hpp"

namespace weiljet {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Inverse of a mod m via extended Euclid; caller checks gcd(a, m) == 1.
uint64_t invmod(uint64_t a, uint64_t m) {
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += m;
    return static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

Ring Ring::modular(uint64_t m) {
    if (m < 2) throw InvalidPresetError("modulus must be at least 2");
    if (m > (1ull << 62)) throw InvalidPresetError("modulus too large");
    return Ring(Kind::modular, m);
}

Ring Ring::parse(const std::string& text) {
    if (text == "rat") return rationals();
    if (text.rfind("mod:", 0) == 0) {
        const std::string body = text.substr(4);
        if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
            throw SyntaxError("bad modulus in ring string '" + text + "'");
        return modular(std::stoull(body));
    }
    throw SyntaxError("unknown ring string '" + text + "' (expected rat or mod:<m>)");
}

std::string Ring::to_string() const {
    return is_rationals() ? "rat" : "mod:" + std::to_string(modulus_);
}

bool Ring::is_field() const {
    return is_rationals() || is_prime_u64(modulus_);
}

Scalar Scalar::from_int(const Ring& ring, long long v) {
    if (ring.is_rationals()) return Scalar(ring, Rational(v), 0);
    const int64_t m = static_cast<int64_t>(ring.modulus());
    int64_t r = static_cast<int64_t>(v % m);
    if (r < 0) r += m;
    return Scalar(ring, Rational(), static_cast<uint64_t>(r));
}

Scalar Scalar::from_rational(Rational q) {
    return Scalar(Ring::rationals(), std::move(q), 0);
}

Scalar Scalar::from_residue(const Ring& ring, uint64_t v) {
    if (!ring.is_modular()) throw RingMismatchError("residue in non-modular ring");
    return Scalar(ring, Rational(), v % ring.modulus());
}

Scalar Scalar::parse(const Ring& ring, const std::string& text) {
    if (text.empty()) throw SyntaxError("empty scalar literal");
    const auto slash = text.find('/');
    const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "" : text.substr(slash + 1);
    auto check_int = [](const std::string& s) {
        const size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start ||
            s.find_first_not_of("0123456789", start) != std::string::npos)
            throw SyntaxError("bad scalar literal '" + s + "'");
    };
    check_int(num);
    if (slash != std::string::npos) check_int(den);

    if (ring.is_rationals()) {
        boost::multiprecision::cpp_int p(num), q(den.empty() ? "1" : den);
        if (q == 0) throw NotAUnitError("zero denominator");
        return from_rational(Rational(p, q));
    }
    // Modular: reduce numerator and (optionally) divide by denominator.
    auto residue_of = [&](const std::string& s) {
        bool neg = s[0] == '-';
        const size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        uint64_t acc = 0;
        const uint64_t m = ring.modulus();
        for (size_t i = start; i < s.size(); ++i)
            acc = (mulmod(acc, 10, m) + static_cast<uint64_t>(s[i] - '0')) % m;
        if (neg) acc = (m - acc) % m;
        return from_residue(ring, acc);
    };
    Scalar v = residue_of(num);
    if (slash != std::string::npos) v = v * residue_of(den).inv();
    return v;
}

void Scalar::require_same_ring(const Scalar& o) const {
    if (ring_ != o.ring_)
        throw RingMismatchError("scalars from different rings: " +
                                ring_.to_string() + " vs " + o.ring_.to_string());
}

bool Scalar::is_zero() const {
    return ring_.is_rationals() ? q_.is_zero() : r_ == 0;
}

bool Scalar::is_one() const {
    return ring_.is_rationals() ? q_ == 1 : r_ == 1;
}

bool Scalar::is_unit() const {
    if (ring_.is_rationals()) return !q_.is_zero();
    return gcd_u64(r_, ring_.modulus()) == 1;
}

Scalar Scalar::inv() const {
    if (!is_unit())
        throw NotAUnitError("cannot invert " + to_string() + " in " + ring_.to_string());
    if (ring_.is_rationals()) return from_rational(Rational(1) / q_);
    return from_residue(ring_, invmod(r_, ring_.modulus()));
}

Scalar Scalar::pow(uint64_t n) const {
    Scalar acc = one(ring_);
    Scalar base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Scalar Scalar::operator-() const {
    if (ring_.is_rationals()) return from_rational(-q_);
    return from_residue(ring_, (ring_.modulus() - r_) % ring_.modulus());
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_ring(o);
    if (ring_.is_rationals()) return from_rational(q_ + o.q_);
    uint64_t m = ring_.modulus();
    return from_residue(ring_, static_cast<uint64_t>(
        (static_cast<unsigned __int128>(r_) + o.r_) % m));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_ring(o);
    if (ring_.is_rationals()) return from_rational(q_ * o.q_);
    return from_residue(ring_, mulmod(r_, o.r_, ring_.modulus()));
}

bool Scalar::operator==(const Scalar& o) const {
    require_same_ring(o);
    return ring_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
    if (ring_.is_modular()) return std::to_string(r_);
    const auto num = numerator(q_), den = denominator(q_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

bool scalar_key_less(const Scalar& a, const Scalar& b) {
    if (a.ring() != b.ring())
        throw RingMismatchError("ordering scalars from different rings");
    if (a.ring().is_rationals()) return a.rational_value() < b.rational_value();
    return a.residue_value() < b.residue_value();
}

namespace {

bool extend_ok(const Scalar& c, const std::vector<Scalar>& chosen) {
    if (!c.is_unit()) return false;
    for (const auto& x : chosen)
        if (!(c - x).is_unit()) return false;
    return true;
}

// Exhaustive search for modular rings small enough to scan.
bool backtrack_units(const Ring& ring, int n, uint64_t from,
                     std::vector<Scalar>& chosen) {
    if (static_cast<int>(chosen.size()) == n) return true;
    for (uint64_t v = from; v < ring.modulus(); ++v) {
        Scalar c = Scalar::from_residue(ring, v);
        if (!extend_ok(c, chosen)) continue;
        chosen.push_back(c);
        if (backtrack_units(ring, n, v + 1, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace

std::vector<Scalar> sample_units(const Ring& ring, int n, uint64_t seed) {
    std::vector<Scalar> out;
    if (n <= 0) return out;
    Rng rng(seed ^ 0x75a9e0c1b4d2f386ull);

    if (ring.is_rationals()) {
        // Distinct nonzero integers: units with unit differences.
        std::vector<int64_t> picked;
        while (static_cast<int>(picked.size()) < n) {
            int64_t v = rng.range(1, 6 * static_cast<int64_t>(n) + 2);
            if (std::find(picked.begin(), picked.end(), v) == picked.end())
                picked.push_back(v);
        }
        for (int64_t v : picked) out.push_back(Scalar::from_int(ring, v));
        return out;
    }

    const uint64_t m = ring.modulus();
    for (int attempt = 0; attempt < 64 * n; ++attempt) {
        Scalar c = Scalar::from_residue(ring, 1 + rng.below(m - 1));
        if (extend_ok(c, out)) {
            out.push_back(c);
            if (static_cast<int>(out.size()) == n) return out;
        }
    }
    // Randomized fill stalled; fall back to exhaustive search when feasible.
    if (m <= 4096) {
        out.clear();
        if (backtrack_units(ring, n, 1, out)) return out;
        throw ExhaustedError("no " + std::to_string(n) +
                             " units with unit differences in " + ring.to_string());
    }
    throw ExhaustedError("unit sampling exhausted in " + ring.to_string());
}

std::string monomial_string(const Exp& e, const char* var) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += var + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

} // namespace weiljet
