#include "doctest.h"

#include <random>

#include "qtorus/scalar.hpp"

using namespace qtorus;

TEST_CASE("rational arithmetic") {
    Scalar half = parse_scalar("1/2");
    Scalar third = parse_scalar("1/3");
    CHECK((half + third) == parse_scalar("5/6"));
    CHECK((half * third) == parse_scalar("1/6"));
    CHECK(half.inv() == Scalar::integer(2));
    CHECK_THROWS_AS(Scalar::integer(0).inv(), DivisionByZero);
    CHECK_THROWS_AS(half + Scalar::zeta(4), KindMismatch);
}

TEST_CASE("cyclotomic arithmetic and inverse of zeta_4") {
    Scalar z4 = Scalar::zeta(4);
    // inv(zeta_4) = zeta_4^3 since zeta_4^4 = 1
    CHECK(z4.inv() == z4.pow(3));
    CHECK(z4.pow(4).is_one());
    CHECK((z4 * z4) == -Scalar::one(z4.field()));

    Scalar z12 = Scalar::zeta(12);
    CHECK(z12.pow(12).is_one());
    CHECK_FALSE(z12.pow(6).is_one());
    // embedding: zeta_3 -> zeta_12^4
    Scalar z3 = Scalar::zeta(3);
    CHECK(z3.coerced(FieldKind::cyclotomic(12)) == z12.pow(4));
}

TEST_CASE("rational function field") {
    Scalar s = Scalar::transcendental();
    CHECK((s * s.inv()).is_one());
    Scalar f = (s + Scalar::one(s.field())) * (s - Scalar::one(s.field()));
    Scalar g = s * s - Scalar::one(s.field());
    CHECK(f == g);
    // canonical representation: (s^2-1)/(s-1) reduces to s+1
    Scalar h = g / (s - Scalar::one(s.field()));
    CHECK(h == s + Scalar::one(s.field()));
}

TEST_CASE("multiplicative orders") {
    CHECK(*Scalar::zeta(6).mult_order() == 6);
    CHECK(*(-Scalar::zeta(3)).mult_order() == 6);
    CHECK_FALSE(Scalar::transcendental().mult_order().has_value());
    CHECK_FALSE(Scalar::rational(Rat(2)).mult_order().has_value());
    CHECK(*Scalar::rational(Rat(-1)).mult_order() == 2);

    // order of 3 in F_7 is 6: brute-force oracle agrees
    Scalar three = Scalar::prime_element(7, 3);
    unsigned long k = 1;
    Scalar x = three;
    while (!x.is_one()) {
        x = x * three;
        ++k;
    }
    CHECK(k == 6);
    CHECK(*three.mult_order() == 6);

    CHECK_THROWS_AS(Scalar::integer(0).mult_order(), ZeroArgument);
}

TEST_CASE("mult_order finite implies a^k = 1 and no proper divisor works") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned m = 1 + static_cast<unsigned>(rng() % 12);
        long j = static_cast<long>(rng() % (2 * m));
        Scalar a = root_of_unity_in(m, m % 2 == 0 ? m : 2 * m).pow(j);
        if (a.is_zero()) continue;
        auto ord = a.mult_order();
        REQUIRE(ord.has_value());
        CHECK(a.pow(static_cast<long>(*ord)).is_one());
        for (unsigned long d = 1; d < *ord; ++d)
            if (*ord % d == 0) CHECK_FALSE(a.pow(static_cast<long>(d)).is_one());
    }
}

TEST_CASE("residue maps") {
    // h: p = 7, s -> 3: residue(s^2) = 2
    ResidueMap h{7, 1, 1, 3};
    h.validate();
    Scalar s = Scalar::transcendental();
    CHECK(s.pow(2).residue(h) == Scalar::prime_element(7, 2));
    CHECK(Scalar::one(s.field()).residue(h).is_one());

    // h: p = 13, zeta_3 -> 3 (3^3 = 27 = 1 mod 13)
    ResidueMap h2{13, 3, 3, 1};
    h2.validate();
    CHECK(Scalar::zeta(3).residue(h2) == Scalar::prime_element(13, 3));

    // denominator vanishing mod p is outside the subring
    Scalar bad = parse_scalar("1/7");
    CHECK_THROWS_AS(bad.residue(h), OutsideSubring);

    // ring homomorphism on random pairs
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        long a_num = static_cast<long>(rng() % 19) - 9;
        long b_num = static_cast<long>(rng() % 19) - 9;
        Scalar a = Scalar::zeta(3).pow(static_cast<long>(rng() % 3)) *
                   Scalar::integer(a_num == 0 ? 1 : a_num).coerced(FieldKind::cyclotomic(3));
        Scalar b = Scalar::zeta(3).pow(static_cast<long>(rng() % 3)) *
                   Scalar::integer(b_num == 0 ? 1 : b_num).coerced(FieldKind::cyclotomic(3));
        CHECK((a * b).residue(h2) == a.residue(h2) * b.residue(h2));
        CHECK((a + b).residue(h2) == a.residue(h2) + b.residue(h2));
    }
}

TEST_CASE("field axioms hold exactly on random triples") {
    std::mt19937_64 rng(2024);
    auto random_scalar = [&](int kind) {
        switch (kind) {
        case 0:
            return Scalar::rational(Rat(static_cast<long>(rng() % 41) - 20,
                                        1 + static_cast<long>(rng() % 9)));
        case 1: {
            Scalar z = Scalar::zeta(6);
            Scalar v = Scalar::zero(z.field());
            for (int i = 0; i < 2; ++i)
                v = v + z.pow(static_cast<long>(rng() % 6)) *
                            Scalar::rational(Rat(static_cast<long>(rng() % 7) - 3)).coerced(z.field());
            return v;
        }
        case 2: {
            Scalar s = Scalar::transcendental();
            return s.pow(static_cast<long>(rng() % 3)) +
                   Scalar::integer(static_cast<long>(rng() % 5) - 2).coerced(s.field());
        }
        default:
            return Scalar::prime_element(11, static_cast<std::int64_t>(rng() % 11));
        }
    };
    for (int kind = 0; kind < 4; ++kind) {
        for (int trial = 0; trial < 2500; ++trial) {
            Scalar a = random_scalar(kind), b = random_scalar(kind), c = random_scalar(kind);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + (b + c) == (a + b) + c);
            CHECK(a + (-a) == Scalar::zero(a.field()));
            if (!b.is_zero()) CHECK(b * b.inv() == Scalar::one(b.field()));
        }
    }
}

TEST_CASE("literal grammar round trip") {
    const char* cases[] = {
        "3/2 * zeta(4)^1 * s^-2",
        "zeta(6)^5",
        "-7/3",
        "s^3 + 2*s + 1",
        "(s + 1) / (s - 1)",
        "1 + -1*zeta(3)^1",
    };
    for (const char* text : cases) {
        Scalar v = parse_scalar(text);
        Scalar again = parse_scalar(v.str());
        FieldKind k = Scalar::join(v.field(), again.field());
        CHECK(v.coerced(k) == again.coerced(k));
    }
    CHECK_THROWS_AS(parse_scalar("zeta(4"), ParseError);
    CHECK_THROWS_AS(parse_scalar("3 **"), ParseError);
}
