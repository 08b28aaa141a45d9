#include "doctest.h"

#include <random>

#include "qtorus/conjugacy.hpp"
#include "qtorus/random_gen.hpp"

using namespace qtorus;

namespace {

PresentationPtr rank2(const Scalar& q12) {
    std::vector<std::vector<Scalar>> upper(2, std::vector<Scalar>(2, Scalar::integer(1)));
    upper[0][1] = q12;
    return share(Presentation(2, upper));
}

} // namespace

TEST_CASE("prime proposal") {
    auto ps = rank2(Scalar::transcendental());
    ResidueMap h = propose_prime({ps.get()}, 2, 2, {}, 5);
    CHECK(h.p == 7);
    CHECK(h.s_image == 3);
    CHECK(order_mod_p(h.s_image, h.p) == 6);

    auto p3 = rank2(Scalar::zeta(3));
    ResidueMap h3 = propose_prime({p3.get()}, 2, 2, {}, 0);
    CHECK(h3.p == 7);
    CHECK(h3.zeta_image == 2);
    CHECK(order_mod_p(2, 7) == 3);

    // forbidding s - 1 does not change the proposal: 3 != 1 mod 7
    Scalar s = Scalar::transcendental();
    ResidueMap h2 = propose_prime({ps.get()}, 2, 2, {s - Scalar::one(s.field())}, 5);
    CHECK(h2.p == 7);
    CHECK(h2.s_image == 3);

    CHECK_THROWS_AS(propose_prime({ps.get()}, 2, 2, {}, 5, 6), NoPrimeInRange);
}

TEST_CASE("presentation reduction") {
    auto ps = rank2(Scalar::transcendental());
    ResidueMap h{7, 1, 1, 3};
    Presentation reduced = specialize_presentation(*ps, h);
    CHECK(reduced.q(0, 1) == Scalar::prime_element(7, 3));
    CHECK(is_fgc(reduced));
    CHECK(*reduced.q(0, 1).mult_order() == 6);

    auto p3 = rank2(Scalar::zeta(3));
    ResidueMap h3{7, 3, 2, 1};
    CHECK(specialize_presentation(*p3, h3).q(0, 1) == Scalar::prime_element(7, 2));

    auto comm = share(Presentation::commutative(2, FieldKind::rational()));
    Presentation rcomm = specialize_presentation(*comm, h);
    CHECK(rcomm.q(0, 1).is_one());

    // non-fgc in, fgc out, always
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        Presentation mixed = random_presentation(rng, 2 + rng() % 2, 3, 100);
        ResidueMap hm = propose_prime({&mixed}, 2, 2, {}, 3);
        CHECK(is_fgc(specialize_presentation(mixed, hm)));
    }
}

TEST_CASE("element, matrix and word reduction") {
    auto ps = rank2(Scalar::transcendental());
    ResidueMap h{7, 1, 1, 3};
    auto target = share(specialize_presentation(*ps, h));

    TorusElement x = TorusElement::monomial(ps, {1, 0}, Scalar::integer(2));
    CHECK(specialize_element(x, h, target) ==
          TorusElement::monomial(target, {1, 0}, Scalar::prime_element(7, 2)));

    // numerator divisible by p: the support shrinks
    TorusElement y = TorusElement::monomial(ps, {1, 1}, parse_scalar("7/2"));
    CHECK(specialize_element(y, h, target).is_zero());

    // g = I + s E_12 reduces to I + 3 E_12 with verified inverse
    MorphismWord w(ps, 2);
    w.push(int_elementary(ps, 2, 0, 1,
                          TorusElement::constant(ps, Scalar::transcendental())));
    MorphismWord wbar = specialize_word(w, h);
    const auto* ig = std::get_if<GenInt>(&wbar.generators()[0]);
    REQUIRE(ig != nullptr);
    CHECK(ig->g.at(0, 1) == TorusElement::constant(target, Scalar::prime_element(7, 3)));

    // functoriality on random data
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        TorusElement a = random_element(rng, ps, 3, 2);
        TorusElement b = random_element(rng, ps, 3, 2);
        CHECK(specialize_element(qt_mul(a, b), h, target) ==
              qt_mul(specialize_element(a, h, target), specialize_element(b, h, target)));
    }
    for (int trial = 0; trial < 25; ++trial) {
        TorusMatrix ma = random_matrix(rng, ps, 2, 2, 2);
        TorusMatrix mb = random_matrix(rng, ps, 2, 2, 2);
        CHECK(specialize_matrix(lie_bracket(ma, mb), h, target) ==
              lie_bracket(specialize_matrix(ma, h, target), specialize_matrix(mb, h, target)));
    }
    // reduction commutes with applying a structured word
    for (int trial = 0; trial < 10; ++trial) {
        MorphismWord wr = random_word(rng, ps, 2, 2, true);
        MorphismWord wrbar = specialize_word(wr, h);
        TorusMatrix m = random_matrix(rng, ps, 2, 2, 2);
        CHECK(wrbar.apply(specialize_matrix(m, h, share(*wrbar.source()))) ==
              specialize_matrix(wr.apply(m), h, share(*wrbar.target())));
    }
}

TEST_CASE("certificate for the generic rank-2 instance") {
    auto ps = rank2(Scalar::transcendental());
    Scalar s = Scalar::transcendental();
    TorusElement designated = TorusElement::monomial(ps, {1, 1}, Scalar::integer(1));
    TorusElement s_minus_1 = TorusElement::constant(ps, s - Scalar::one(s.field()));

    ResidueMap h = propose_prime({ps.get()}, 2, 2,
                                 {s, s - Scalar::one(s.field())}, 5);
    CHECK(h.p == 7);

    SpecializationCertificate cert = certify(*ps, nullptr, 2, 2, {designated, s_minus_1}, {}, h);
    CHECK(cert.valid());
    bool saw_index = false;
    for (const auto& c : cert.conditions)
        if (c.name == "A_index_coprime_to_p") {
            saw_index = true;
            CHECK(c.ok);
            CHECK(c.witness == "[A:Z(A)] = 36");
        }
    CHECK(saw_index);

    // valid certificate: the reduced standard MAD still passes the test
    auto target = share(specialize_presentation(*ps, h));
    for (const auto& b : standard_mad(target, 2).basis)
        CHECK(mad_extension_test(b).in_standard_mad);
}

TEST_CASE("certificate failures are recorded, not thrown") {
    auto p5 = rank2(Scalar::zeta(3));
    ResidueMap bad{5, 1, 1, 1}; // p = 5 with ell = 5: p | ell
    SpecializationCertificate cert = certify(*p5, nullptr, 5, 2, {}, {}, bad);
    CHECK_FALSE(cert.valid());
    CHECK(cert.conditions[0].name == "char_very_good");
    CHECK_FALSE(cert.conditions[0].ok);

    // designated element with all coefficients divisible by p
    auto pr = rank2(Scalar::integer(-1));
    TorusElement z = TorusElement::monomial(pr, {1, 0}, Scalar::integer(7));
    ResidueMap h7{7, 2, 6, 1};
    SpecializationCertificate c2 = certify(*pr, nullptr, 2, 2, {z}, {}, h7);
    CHECK_FALSE(c2.valid());
}
