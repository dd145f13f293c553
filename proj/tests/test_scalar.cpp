#include "doctest.h"
#include "weiljet/scalar.hpp"

using namespace weiljet;

namespace {

// Independent oracle: extended Euclid, returning x with a*x ≡ 1 (mod m).
long long euclid_inverse(long long a, long long m) {
    long long old_r = a % m, r = m;
    long long old_s = 1, s = 0;
    while (r != 0) {
        long long q = old_r / r;
        long long tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    REQUIRE(old_r == 1); // gcd must be 1 for the inverse to exist
    return ((old_s % m) + m) % m;
}

} // namespace

TEST_CASE("ring parsing and identity") {
    Ring q = Ring::parse("rat");
    CHECK(q.is_rationals());
    CHECK(q == Ring::rationals());
    CHECK(q.is_field());
    CHECK(q.characteristic() == 0);

    Ring m = Ring::parse("mod:101");
    CHECK(m.is_modular());
    CHECK(m.modulus() == 101);
    CHECK(m.is_field());
    CHECK(m.characteristic() == 101);
    CHECK(m != q);

    Ring z6 = Ring::parse("mod:6");
    CHECK_FALSE(z6.is_field());
    CHECK(z6.characteristic() == 6);

    CHECK_THROWS_AS(Ring::parse("float"), SyntaxError);
    CHECK_THROWS_AS(Ring::parse("mod:x"), SyntaxError);
}

TEST_CASE("exact rational arithmetic") {
    Ring q = Ring::rationals();
    Scalar third = Scalar::parse(q, "1/3");
    Scalar sixth = Scalar::parse(q, "1/6");
    CHECK((third + sixth).to_string() == "1/2");
    CHECK((third - third).is_zero());
    CHECK((third * Scalar::from_int(q, 3)).is_one());
    CHECK(Scalar::parse(q, "-7/3") == -Scalar::parse(q, "7/3"));
    CHECK(Scalar::parse(q, "4/6") == Scalar::parse(q, "2/3")); // normalized
    CHECK(Scalar::parse(q, "5").inv().to_string() == "1/5");
    CHECK_THROWS_AS(Scalar::zero(q).inv(), NotAUnitError);
    CHECK(Scalar::from_int(q, 2).pow(10) == Scalar::from_int(q, 1024));
}

TEST_CASE("modular inverses match extended Euclid") {
    Ring m = Ring::modular(101);
    CHECK(Scalar::from_int(m, 2).inv() == Scalar::from_int(m, 51)); // 2*51 = 102
    for (long long a = 1; a < 101; ++a) {
        Scalar s = Scalar::from_int(m, a);
        CHECK(s.inv() == Scalar::from_int(m, euclid_inverse(a, 101)));
        CHECK((s * s.inv()).is_one());
    }
}

TEST_CASE("non-field moduli expose genuine non-units") {
    Ring z6 = Ring::modular(6);
    CHECK_FALSE(Scalar::from_int(z6, 2).is_unit());
    CHECK_FALSE(Scalar::from_int(z6, 3).is_unit());
    CHECK_FALSE(Scalar::from_int(z6, 4).is_unit());
    CHECK(Scalar::from_int(z6, 5).is_unit());
    CHECK(Scalar::from_int(z6, 5).inv() == Scalar::from_int(z6, 5));
    CHECK_THROWS_AS(Scalar::from_int(z6, 2).inv(), NotAUnitError);
    // arithmetic wraps: 4 + 5 = 3, 4 * 5 = 2
    CHECK(Scalar::from_int(z6, 4) + Scalar::from_int(z6, 5) == Scalar::from_int(z6, 3));
    CHECK(Scalar::from_int(z6, 4) * Scalar::from_int(z6, 5) == Scalar::from_int(z6, 2));
}

TEST_CASE("negative integers reduce to canonical residues") {
    Ring m = Ring::modular(7);
    CHECK(Scalar::from_int(m, -1) == Scalar::from_int(m, 6));
    CHECK(Scalar::from_int(m, -15) == Scalar::from_int(m, 6));
    CHECK(Scalar::parse(m, "-1").residue_value() == 6);
}

TEST_CASE("unit tuples have unit pairwise differences") {
    Ring m = Ring::modular(7);
    auto units = sample_units(m, 3, 42);
    REQUIRE(units.size() == 3);
    for (size_t i = 0; i < units.size(); ++i) {
        CHECK(units[i].is_unit());
        for (size_t j = 0; j < i; ++j) CHECK((units[i] - units[j]).is_unit());
    }
    // mod 2 has a single unit, so no 2-tuple exists
    CHECK_THROWS_AS(sample_units(Ring::modular(2), 2, 1), ExhaustedError);
    // mod 3: 1 and 2 differ by a unit, but no third choice remains
    CHECK(sample_units(Ring::modular(3), 2, 1).size() == 2);
    CHECK_THROWS_AS(sample_units(Ring::modular(3), 3, 1), ExhaustedError);
}

TEST_CASE("scalars from different rings refuse to mix") {
    Scalar a = Scalar::from_int(Ring::rationals(), 1);
    Scalar b = Scalar::from_int(Ring::modular(5), 1);
    CHECK_THROWS_AS(a + b, RingMismatchError);
}
