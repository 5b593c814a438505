/*
   Copyright 2026 The perfect-stbc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "pstbc/quad_arith.hpp"

using namespace pstbc;

namespace {

QuadInt G(long a, long b = 0) { return QuadInt::gaussian(a, b); }
QuadInt E(long a, long b = 0) { return QuadInt::eisenstein(a, b); }

QuadInt random_quad(std::mt19937_64& rng, Ring ring, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    return QuadInt(ring, d(rng), d(rng));
}

}  // namespace

TEST(QuadInt, NormAndConjugation) {
    EXPECT_EQ(G(2, 1).norm(), 5);
    EXPECT_EQ(E(-2, 1).norm(), 7);  // j - 2
    EXPECT_EQ(E(7, -3).norm(), 79);
    EXPECT_EQ(G(-25, 12).norm(), 769);
    EXPECT_EQ(E(3, -8).norm(), 97);
    EXPECT_EQ(E(-9, 5).norm(), 151);
    // j * conj(j) = 1 and j^2 + j + 1 = 0
    QuadInt j = E(0, 1);
    EXPECT_EQ(j * j.conj(), E(1));
    EXPECT_EQ(j * j + j + E(1), E(0));
    EXPECT_EQ(G(0, 1) * G(0, 1), G(-1));
}

TEST(QuadInt, MixedRingsRejected) { EXPECT_THROW(G(1) + E(1), std::invalid_argument); }

TEST(QuadInt, UnitsHaveNormOne) {
    for (Ring r : {Ring::gaussian, Ring::eisenstein}) {
        std::set<std::string> seen;
        for (int k = 0; k < unit_count(r); ++k) {
            QuadInt u = QuadInt::unit(r, k);
            EXPECT_TRUE(u.is_unit());
            seen.insert(u.str());
            auto z = u.to_complex();
            double expected = 2 * M_PI * k / unit_count(r);
            EXPECT_NEAR(std::remainder(std::arg(z) - expected, 2 * M_PI), 0.0, 1e-12);
        }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(unit_count(r)));
    }
}

TEST(EuclidDiv, SevenByTwoPlusI) {
    auto [q, r] = euclid_div(G(7), G(2, 1));
    EXPECT_EQ(G(2, 1) * q + r, G(7));
    EXPECT_LT(r.norm(), 5);
    // Oracle: some q' in the 3x3 neighbourhood of the rounded quotient works.
    bool any = false;
    for (long da = -1; da <= 1; ++da)
        for (long db = -1; db <= 1; ++db) {
            QuadInt qq = q + G(da, db);
            if ((G(7) - G(2, 1) * qq).norm() < 5) any = true;
        }
    EXPECT_TRUE(any);
}

TEST(EuclidDiv, UnitDivisor) {
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
        QuadInt x(ring, 123, -45);
        auto [q, r] = euclid_div(x, QuadInt(ring, 1));
        EXPECT_EQ(q, x);
        EXPECT_TRUE(r.is_zero());
    }
}

TEST(EuclidDiv, EisensteinWitness) {
    auto [q, r] = euclid_div(E(7, -3), E(-2, 1));
    EXPECT_EQ(E(-2, 1) * q + r, E(7, -3));
    EXPECT_LT(r.norm(), 7);
}

TEST(EuclidDiv, ZeroDivisor) { EXPECT_THROW(euclid_div(G(3), G(0)), std::domain_error); }

TEST(EuclidDiv, TiesRoundTowardZero) {
    // 5 / 2 = 2.5 -> 2 and -5 / 2 = -2.5 -> -2
    EXPECT_EQ(euclid_div(G(5), G(2)).quotient, G(2));
    EXPECT_EQ(euclid_div(G(-5), G(2)).quotient, G(-2));
    EXPECT_EQ(euclid_div(E(5, -5), E(2)).quotient, E(2, -2));
}

TEST(EuclidDiv, RandomDivisionContract) {
    std::mt19937_64 rng(17);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein})
        for (int t = 0; t < 5000; ++t) {
            QuadInt x = random_quad(rng, ring, 1000);
            QuadInt y = random_quad(rng, ring, 40);
            if (y.is_zero()) continue;
            auto [q, r] = euclid_div(x, y);
            ASSERT_EQ(y * q + r, x);
            ASSERT_LT(r.norm(), y.norm());
        }
}

TEST(QuadInt, NormIsMultiplicative) {
    std::mt19937_64 rng(3);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein})
        for (int t = 0; t < 2000; ++t) {
            QuadInt x = random_quad(rng, ring, 100000);
            QuadInt y = random_quad(rng, ring, 100000);
            ASSERT_EQ((x * y).norm(), x.norm() * y.norm());
        }
}

TEST(Gcd, ZeroArgumentGivesCanonicalAssociate) {
    EXPECT_EQ(quad_gcd(G(0, -3), G(0)), G(3));
    EXPECT_EQ(quad_gcd(E(-5), E(0)), E(5));
    EXPECT_THROW(quad_gcd(E(0), E(0)), std::domain_error);
}

TEST(Gcd, CoprimePairs) {
    EXPECT_TRUE(quad_gcd(G(2, 1), G(2, -1)).is_unit());
    EXPECT_TRUE(quad_gcd(E(-2, 1), E(3, 1)).is_unit());
    // 7 = (j - 2)(j + 3) up to a unit
    EXPECT_EQ((E(-2, 1) * E(3, 1)).norm(), 49);
    EXPECT_TRUE(divides(E(-2, 1) * E(3, 1), E(7)));
}

TEST(Gcd, CommonFactorRecovered) {
    std::mt19937_64 rng(5);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein})
        for (int t = 0; t < 500; ++t) {
            QuadInt c = random_quad(rng, ring, 30);
            QuadInt x = random_quad(rng, ring, 30) * c;
            QuadInt y = random_quad(rng, ring, 30) * c;
            if (x.is_zero() && y.is_zero()) continue;
            QuadInt g = quad_gcd(x, y);
            ASSERT_TRUE(divides(g, x));
            ASSERT_TRUE(divides(g, y));
            if (!c.is_zero()) ASSERT_TRUE(divides(c, g));
            ASSERT_EQ(g, canonical_associate(g));
            auto bz = quad_xgcd(x, y);
            ASSERT_EQ(bz.g, g);
            ASSERT_EQ(bz.s * x + bz.t * y, g);
        }
}

TEST(Gcd, CanonicalAssociateArgumentRange) {
    std::mt19937_64 rng(9);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
        const double width = 2 * M_PI / unit_count(ring);
        for (int t = 0; t < 500; ++t) {
            QuadInt x = random_quad(rng, ring, 50);
            if (x.is_zero()) continue;
            double arg = std::arg(canonical_associate(x).to_complex());
            ASSERT_GE(arg, -1e-12);
            ASSERT_LT(arg, width - 1e-12);
        }
    }
}

TEST(Crt, SingleModulusReduces) {
    QuadInt m = G(3, 2);
    QuadInt r = G(40, -17);
    QuadInt y = crt_solve(std::vector{r}, std::vector{m});
    EXPECT_EQ(y, mod(r, m));
    EXPECT_TRUE(divides(m, y - r));
}

TEST(Crt, EisensteinNonNormWitness) {
    // y = 1 mod (j-2), j*y = 1 mod (j+3), i.e. y = j^2 mod (j+3)
    QuadInt j2 = E(-1, -1);
    std::vector res{E(1), j2};
    std::vector mods{E(-2, 1), E(3, 1)};
    QuadInt y = crt_solve(res, mods);
    EXPECT_TRUE(divides(mods[0], y - E(1)));
    EXPECT_TRUE(divides(mods[1], E(0, 1) * y - E(1)));
    QuadInt expected = E(7, -3);
    EXPECT_TRUE(divides(mods[0], expected - E(1)));
    EXPECT_TRUE(divides(mods[1], E(0, 1) * expected - E(1)));
    EXPECT_TRUE(divides(mods[0] * mods[1], y - expected));
}

TEST(Crt, GaussianNonNormWitness) {
    std::vector res{G(1), G(-1), G(-1)};
    std::vector mods{G(2, 1), G(-2, 1), G(3)};
    QuadInt y = crt_solve(res, mods);
    QuadInt prod = mods[0] * mods[1] * mods[2];
    EXPECT_TRUE(divides(prod, y - G(-25, 12)));
}

TEST(Crt, NonCoprimeRejected) {
    std::vector res{G(1), G(0)};
    std::vector mods{G(2, 1), G(4, 2)};
    EXPECT_THROW(crt_solve(res, mods), std::domain_error);
}

TEST(Crt, RandomRoundTrip) {
    std::mt19937_64 rng(11);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
        int done = 0;
        while (done < 300) {
            std::vector<QuadInt> mods{random_quad(rng, ring, 12), random_quad(rng, ring, 12), random_quad(rng, ring, 12)};
            bool ok = true;
            for (auto& m : mods) ok = ok && !m.is_zero() && !m.is_unit();
            if (!ok) continue;
            if (!coprime(mods[0], mods[1]) || !coprime(mods[0], mods[2]) || !coprime(mods[1], mods[2])) continue;
            std::vector<QuadInt> res{random_quad(rng, ring, 50), random_quad(rng, ring, 50), random_quad(rng, ring, 50)};
            QuadInt y = crt_solve(res, mods);
            for (int k = 0; k < 3; ++k) ASSERT_TRUE(divides(mods[k], y - res[k]));
            ASSERT_LT(y.norm(), (mods[0] * mods[1] * mods[2]).norm());
            ++done;
        }
    }
}

TEST(SquaresModP, Examples) {
    EXPECT_TRUE(is_square_mod_p(-1, 5));
    EXPECT_TRUE(is_square_mod_p(1, 101));
    EXPECT_FALSE(is_square_mod_p(2, 5));
    EXPECT_THROW(is_square_mod_p(3, 9), std::invalid_argument);
    EXPECT_THROW(is_square_mod_p(5, 5), std::invalid_argument);
}

TEST(SquaresModP, AgreesWithExhaustiveSquaring) {
    for (long p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        std::set<long> squares;
        for (long x = 1; x < p; ++x) squares.insert(x * x % p);
        for (long x = 1; x < p; ++x) ASSERT_EQ(is_square_mod_p(x, p), squares.count(x) == 1) << x << " mod " << p;
    }
}

TEST(TwoSquares, Examples) {
    EXPECT_EQ(two_squares(5), std::make_pair(BigInt(2), BigInt(1)));
    EXPECT_EQ(two_squares(13), std::make_pair(BigInt(3), BigInt(2)));
    EXPECT_EQ(two_squares(37), std::make_pair(BigInt(6), BigInt(1)));
    EXPECT_THROW(two_squares(7), std::invalid_argument);
    EXPECT_THROW(two_squares(21), std::invalid_argument);
}

TEST(TwoSquares, AgreesWithExhaustiveSearch) {
    for (long p = 5; p < 2000; p += 4) {
        if (!is_prime(p)) continue;
        long u0 = 0, v0 = 0;
        for (long u = 1; u * u <= p; ++u)
            for (long v = 1; v <= u; ++v)
                if (u * u + v * v == p) u0 = u, v0 = v;
        auto [u, v] = two_squares(p);
        ASSERT_EQ(u, u0);
        ASSERT_EQ(v, v0);
    }
}

TEST(QuadRat, FieldOperations) {
    QuadRat x(Ring::eisenstein, 3, -2, 4);
    QuadRat y(Ring::eisenstein, -1, 5, 3);
    EXPECT_EQ((x / y) * y, x);
    EXPECT_EQ(x - x, QuadRat(Ring::eisenstein));
    EXPECT_EQ(QuadRat(Ring::gaussian, 4, 6, 8), QuadRat(Ring::gaussian, 2, 3, 4));
    EXPECT_EQ(QuadRat(Ring::gaussian, 1, 1, -2).den(), 2);
    EXPECT_EQ(x.norm(), BigRational(9 + 6 + 4, 16));
    EXPECT_THROW(x / QuadRat(Ring::eisenstein), std::domain_error);
}
