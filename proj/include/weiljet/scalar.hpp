#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "weiljet/error.hpp"

namespace weiljet {

using Rational = boost::multiprecision::cpp_rational;

// Base ring descriptor: the rationals, or integers mod m (m >= 2, not
// necessarily prime).
class Ring {
public:
    enum class Kind : uint8_t { rationals, modular };

    static Ring rationals() { return Ring(Kind::rationals, 0); }
    static Ring modular(uint64_t m);

    // "rat" or "mod:<m>".
    static Ring parse(const std::string& text);
    std::string to_string() const;

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }
    bool is_modular() const { return kind_ == Kind::modular; }
    uint64_t modulus() const { return modulus_; }
    // 0 for the rationals, m for integers mod m.
    uint64_t characteristic() const { return modulus_; }
    bool is_field() const;

    bool operator==(const Ring& o) const {
        return kind_ == o.kind_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

private:
    Ring(Kind k, uint64_t m) : kind_(k), modulus_(m) {}
    Kind kind_;
    uint64_t modulus_;
};

// Exact scalar: arbitrary-precision rational or residue mod m. All binary
// operations require both operands to come from the same ring.
class Scalar {
public:
    Scalar() = delete;

    static Scalar zero(const Ring& r) { return from_int(r, 0); }
    static Scalar one(const Ring& r) { return from_int(r, 1); }
    static Scalar from_int(const Ring& r, long long v);
    static Scalar from_rational(Rational q);
    static Scalar from_residue(const Ring& r, uint64_t v);
    // Accepts "p", "-p", "p/q" in both rings (the modular reading divides).
    static Scalar parse(const Ring& r, const std::string& text);

    const Ring& ring() const { return ring_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;
    Scalar inv() const; // NotAUnitError if not a unit
    Scalar pow(uint64_t n) const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Rationals: "p" or "p/q" reduced; modular: canonical residue.
    std::string to_string() const;

    const Rational& rational_value() const { return q_; }
    uint64_t residue_value() const { return r_; }

private:
    Scalar(const Ring& ring, Rational q, uint64_t r)
        : ring_(ring), q_(std::move(q)), r_(r) {}

    void require_same_ring(const Scalar& o) const;

    Ring ring_;
    Rational q_; // payload when rationals
    uint64_t r_; // payload when modular
};

// Total order usable as a container key. Ring-internal bookkeeping order,
// not an ordered-ring structure.
bool scalar_key_less(const Scalar& a, const Scalar& b);

struct ScalarKeyLess {
    bool operator()(const Scalar& a, const Scalar& b) const {
        return scalar_key_less(a, b);
    }
};

// n distinct units whose pairwise differences are all units, deterministic
// under seed. ExhaustedError when the ring cannot supply them.
std::vector<Scalar> sample_units(const Ring& ring, int n, uint64_t seed);

} // namespace weiljet
