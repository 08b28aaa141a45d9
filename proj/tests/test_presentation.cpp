#include "doctest.h"

#include <algorithm>
#include <random>

#include "qtorus/presentation.hpp"
#include "qtorus/random_gen.hpp"

using namespace qtorus;

namespace {

Presentation rank2(const Scalar& q12) {
    std::vector<std::vector<Scalar>> upper(2, std::vector<Scalar>(2, Scalar::integer(1)));
    upper[0][1] = q12;
    return Presentation(2, upper);
}

} // namespace

TEST_CASE("presentation construction invariants") {
    Presentation p = rank2(Scalar::zeta(3));
    CHECK(p.q(0, 0).is_one());
    CHECK(p.q(1, 0) == Scalar::zeta(3).pow(2)); // inverse of zeta_3
    CHECK((p.q(0, 1) * p.q(1, 0)).is_one());
    CHECK_THROWS_AS(rank2(Scalar::integer(0)), DivisionByZero);
}

TEST_CASE("central lattice matches the quantum 2-torus example") {
    for (unsigned ell : {2u, 3u, 5u, 6u, 12u}) {
        Presentation p = rank2(Scalar::zeta(ell));
        CentralLattice xi = central_lattice(p);
        REQUIRE(xi.index.has_value());
        CHECK(*xi.index == static_cast<long>(ell) * ell);
        IMat expect(2, 2);
        expect.at(0, 0) = ell;
        expect.at(1, 1) = ell;
        CHECK(xi.basis == expect);
    }
}

TEST_CASE("central lattice: rank one and transcendental entries") {
    Presentation one = Presentation::commutative(1, FieldKind::rational());
    CentralLattice xi1 = central_lattice(one);
    REQUIRE(xi1.index.has_value());
    CHECK(*xi1.index == 1);

    Presentation ps = rank2(Scalar::transcendental());
    CentralLattice xis = central_lattice(ps);
    CHECK_FALSE(xis.index.has_value());
    // brute force |lambda_i| <= 10: only 0 is central
    for (Int a = -10; a <= 10; ++a)
        for (Int b = -10; b <= 10; ++b) {
            bool central = is_central_point(ps, {a, b});
            CHECK(central == (lattice_member(xis.basis, {a, b})));
            CHECK(central == (a == 0 && b == 0));
        }
}

TEST_CASE("central lattice saturation on random fgc presentations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        Presentation p = random_fgc_presentation(rng, 1 + rng() % 3, 12);
        CentralLattice xi = central_lattice(p);
        for (int probe = 0; probe < 60; ++probe) {
            IVec lam(p.rank());
            for (auto& v : lam) v = static_cast<Int>(rng() % 11) - 5;
            CHECK(is_central_point(p, lam) == lattice_member(xi.basis, lam));
        }
    }
}

TEST_CASE("fgc detection") {
    CHECK(is_fgc(rank2(Scalar::zeta(3))));
    CHECK_FALSE(is_fgc(rank2(Scalar::transcendental())));
    CHECK(is_fgc(Presentation::commutative(3, FieldKind::rational())));
}

TEST_CASE("change of basis formula") {
    Presentation p = rank2(Scalar::zeta(3));
    CHECK(change_basis(p, IMat::identity(2)) == p);

    // swap of generators inverts q12
    Presentation swapped = change_basis(p, IMat{{0, 1}, {1, 0}});
    CHECK(swapped.q(0, 1) == Scalar::zeta(3).pow(-1));

    // shear fixes q12 for n = 2
    Presentation p5 = rank2(Scalar::zeta(5));
    Presentation sheared = change_basis(p5, IMat{{1, 1}, {0, 1}});
    CHECK(sheared.q(0, 1) == Scalar::zeta(5));

    CHECK_THROWS_AS(change_basis(p, IMat{{2, 0}, {0, 1}}), NotUnimodular);
}

TEST_CASE("change of basis is a right action: (P.A).B = P.(B*A)") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + rng() % 2;
        Presentation p = random_fgc_presentation(rng, n, 6);
        IMat a = random_unimodular(rng, n, 3);
        IMat b = random_unimodular(rng, n, 3);
        CHECK(change_basis(change_basis(p, a), b) == change_basis(p, imat_mul(b, a)));
    }
}

TEST_CASE("canonical presentation basics") {
    // n = 2 is canonical by definition
    Presentation p = rank2(Scalar::zeta(5));
    auto canon = canonical_presentation(p);
    CHECK(is_canonical_shape(canon.presentation));
    CHECK(canon.presentation == change_basis(p, canon.base_change));

    Presentation comm = Presentation::commutative(3, FieldKind::rational());
    auto cc = canonical_presentation(comm);
    CHECK(is_canonical_shape(cc.presentation));
    CHECK(symbol_decomposition(cc.presentation).blocks == 0);

    CHECK_THROWS_AS(canonical_presentation(rank2(Scalar::transcendental())), NotFgc);
}

TEST_CASE("canonicalization round trip on scrambles") {
    std::mt19937_64 rng(23);

    auto run_seed = [&](unsigned e1, unsigned e2, int trials) {
        // canonical seed: n = 4, orders 6/gcd(e,6) per block, over Q(zeta_6)
        std::vector<std::vector<Scalar>> upper(4, std::vector<Scalar>(4, Scalar::integer(1)));
        upper[0][1] = Scalar::zeta(6).pow(e1);
        upper[2][3] = Scalar::zeta(6).pow(e2);
        Presentation seed(4, upper);
        REQUIRE(is_canonical_shape(seed));

        auto reference = symbol_decomposition(canonical_presentation(seed).presentation).orders;
        std::sort(reference.begin(), reference.end());

        for (int trial = 0; trial < trials; ++trial) {
            IMat scramble = random_unimodular(rng, 4, 5);
            Presentation scrambled = change_basis(seed, scramble);
            auto canon = canonical_presentation(scrambled);
            CHECK(is_canonical_shape(canon.presentation));
            CHECK(is_unimodular(canon.base_change));
            CHECK(canon.presentation == change_basis(scrambled, canon.base_change));

            auto orders = symbol_decomposition(canon.presentation).orders;
            std::sort(orders.begin(), orders.end());
            CHECK(orders == reference);
        }
        return reference;
    };

    // divisor-compatible block orders survive verbatim: {6, 2}
    auto r62 = run_seed(1, 3, 10);
    CHECK(r62 == std::vector<unsigned long>{2, 6});

    // coprime block orders merge under re-coordinatization (CRT): the
    // scramble-invariant normal form of {3, 2} is a single block of order 6
    auto r32 = run_seed(2, 3, 10);
    CHECK(r32 == std::vector<unsigned long>{6});
}

TEST_CASE("symbol decomposition of worked examples") {
    Presentation p = rank2(Scalar::zeta(7));
    auto dec = symbol_decomposition(p);
    CHECK(dec.blocks == 1);
    CHECK(dec.orders == std::vector<unsigned long>{7});
    CHECK(dec.central_generators[0] == IVec{7, 0});
    CHECK(dec.central_generators[1] == IVec{0, 7});

    // n = 4, q12 = zeta_6, q34 = -1: two blocks of orders 6, 2
    std::vector<std::vector<Scalar>> upper(4, std::vector<Scalar>(4, Scalar::integer(1)));
    upper[0][1] = Scalar::zeta(6);
    upper[2][3] = Scalar::zeta(6).pow(3);
    Presentation p4(4, upper);
    auto dec4 = symbol_decomposition(p4);
    CHECK(dec4.blocks == 2);
    CHECK(dec4.orders == std::vector<unsigned long>{6, 2});
    CHECK(dec4.etale_indices == std::vector<std::size_t>{0, 2});

    // n = 3 commutative: no blocks, t_j = eps_j
    Presentation p3 = Presentation::commutative(3, FieldKind::rational());
    auto dec3 = symbol_decomposition(p3);
    CHECK(dec3.blocks == 0);
    for (std::size_t j = 0; j < 3; ++j) {
        IVec e(3, 0);
        e[j] = 1;
        CHECK(dec3.central_generators[j] == e);
    }
}

TEST_CASE("opposite presentation is an involution") {
    Presentation p = rank2(Scalar::zeta(5));
    CHECK(p.opposite().q(0, 1) == Scalar::zeta(5).pow(-1));
    CHECK(p.opposite().opposite() == p);
    Presentation comm = Presentation::commutative(2, FieldKind::rational());
    CHECK(comm.opposite() == comm);
}
