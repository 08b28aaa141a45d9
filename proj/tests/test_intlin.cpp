#include "doctest.h"

#include <random>

#include "qtorus/intlin.hpp"

using namespace qtorus;

TEST_CASE("smith normal form frozen examples") {
    // diag(2,3) has divisor chain 1 | 6 (gcd steps)
    auto s = smith_normal_form(IMat{{2, 0}, {0, 3}});
    CHECK(s.divisors == std::vector<mpz_class>{1, 6});

    auto id = smith_normal_form(IMat::identity(3));
    CHECK(id.D == IMat::identity(3));

    auto z = smith_normal_form(IMat{{0}});
    CHECK(z.D == IMat{{0}});
    CHECK(z.rank == 0);
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IMat m(r, c);
        for (auto& v : m.a) v = static_cast<Int>(rng() % 41) - 20;
        auto s = smith_normal_form(m);
        CHECK(is_unimodular(s.U));
        CHECK(is_unimodular(s.V));
        CHECK(imat_mul(imat_mul(s.U, m), s.V) == s.D);
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
            CHECK(s.divisors[i] > 0);
            CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
        }
        for (std::size_t i = 0; i < s.D.rows; ++i)
            for (std::size_t j = 0; j < s.D.cols; ++j)
                if (i != j) CHECK(s.D.at(i, j) == 0);
    }
}

TEST_CASE("left kernel and row solve") {
    IMat m{{2, 4}, {1, 2}};
    IMat k = left_kernel(m);
    REQUIRE(k.rows == 1);
    IVec kv;
    for (std::size_t j = 0; j < k.cols; ++j) kv.push_back(to_int(k.at(0, j)));
    CHECK(row_times(kv, m) == IVec{0, 0});

    auto sol = row_solve(IMat{{1, 2}, {0, 3}}, {1, 5});
    REQUIRE(sol.has_value());
    CHECK(row_times(*sol, IMat{{1, 2}, {0, 3}}) == IVec{1, 5});
    CHECK_FALSE(row_solve(IMat{{2, 0}, {0, 2}}, {1, 0}).has_value());
}

TEST_CASE("row basis and lattice operations") {
    IMat b = row_basis(IMat{{2, 0}, {0, 2}, {1, 1}});
    // index of <(2,0),(0,2),(1,1)> in Z^2 is 2
    auto idx = lattice_index(b, 2);
    REQUIRE(idx.has_value());
    CHECK(*idx == 2);
    CHECK(lattice_member(b, {1, 1}));
    CHECK(lattice_member(b, {3, 1}));
    CHECK_FALSE(lattice_member(b, {1, 0}));

    IMat l1{{2, 0}, {0, 1}};
    IMat l2{{1, 0}, {0, 3}};
    IMat meet = lattice_intersect(l1, l2);
    auto idx2 = lattice_index(meet, 2);
    REQUIRE(idx2.has_value());
    CHECK(*idx2 == 6);

    CHECK_FALSE(lattice_index(IMat{{1, 1}}, 2).has_value());
}

TEST_CASE("unimodular inverse") {
    IMat a{{1, 2}, {0, 1}};
    IMat inv = inverse_unimodular(a);
    CHECK(imat_mul(a, inv) == IMat::identity(2));
    CHECK_THROWS_AS(inverse_unimodular(IMat{{2, 0}, {0, 1}}), NotUnimodular);
}
