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

#include <gtest/gtest.h>

#include "pstbc/code_constructions.hpp"
#include "pstbc/lattice_tools.hpp"

using namespace pstbc;

namespace {

std::vector<NfElement> power_basis(const FieldPtr& f) {
    std::vector<NfElement> b;
    for (int k = 0; k < f->degree(); ++k) b.push_back(NfElement::theta_pow(f, k));
    return b;
}

// Independent numeric Gram: sum over embeddings of nu_k conj(nu_l).
std::complex<double> numeric_gram(const NfElement& x, const NfElement& y) {
    std::complex<double> acc = 0;
    for (int l = 0; l < x.degree(); ++l) acc += embed(x, l) * std::conj(embed(y, l));
    return acc;
}

void expect_lll_conditions(const HermitianGram& g) {
    auto s = detail::gram_schmidt(g);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            QuadInt r = round_to_ring(s.mu[i][j]);
            EXPECT_TRUE(r.is_zero()) << "mu[" << i << "][" << j << "] = " << s.mu[i][j];
        }
    for (std::size_t k = 1; k < n; ++k)
        EXPECT_GE(s.b[k], (BigRational(3, 4) - s.mu[k][k - 1].norm()) * s.b[k - 1]);
}

}  // namespace

TEST(LatticeTools, GramOfPowerBasisQuartic) {
    auto f = fields::quartic();
    auto g = gram(power_basis(f));
    EXPECT_EQ(g[1][1], QuadRat(Ring::gaussian, 9));
    EXPECT_EQ(g[0][0], QuadRat(Ring::gaussian, 4));
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) {
            EXPECT_TRUE(g[k][l].is_rational() && g[k][l].is_integral());
            EXPECT_EQ(g[k][l], g[l][k]);
        }
}

TEST(LatticeTools, GramMatchesNumericTraceForm) {
    auto s = make_code_4x4();
    auto g = gram(s.basis);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l)
            EXPECT_LT(std::abs(g[k][l].to_complex() - numeric_gram(s.basis[k], s.basis[l])), 1e-9);
}

TEST(LatticeTools, CubicBasisIsOrthogonal) {
    EXPECT_TRUE(is_scaled_identity(gram(make_code_3x3().basis), 7));
    auto g1 = gram({make_code_3x3().basis[1]});
    EXPECT_EQ(g1[0][0], QuadRat(Ring::eisenstein, 7));
}

TEST(LatticeTools, LllKeepsOrthogonalGram) {
    auto g = gram(make_code_4x4().basis);
    auto r = lll_reduce(g, Ring::gaussian);
    EXPECT_TRUE(is_scaled_identity(r.gram, 15));
    EXPECT_TRUE(quad_det(r.transform).is_unit());
}

TEST(LatticeTools, LllOnRandomBasesPreservesLattice) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> d(-6, 6);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
        auto f = ring == Ring::gaussian ? fields::quartic() : fields::cubic();
        const int n = f->degree();
        for (int trial = 0; trial < 4; ++trial) {
            // Random unimodular mix of an orthogonal basis: lower unitriangular times upper unitriangular.
            std::vector<NfElement> base = ring == Ring::gaussian ? make_code_4x4().basis : make_code_3x3().basis;
            std::vector<NfElement> mixed = base;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) mixed[i] += base[j] * QuadRat(QuadInt(ring, d(rng), d(rng)) * QuadInt(ring, i > j ? 1 : 0));
            for (int i = n - 1; i >= 0; --i)
                for (int j = i + 1; j < n; ++j) mixed[i] += mixed[j] * QuadRat(QuadInt(ring, d(rng), d(rng)));
            auto g = gram(mixed);
            auto r = lll_reduce(g, ring);
            EXPECT_EQ(gram_determinant(r.gram), gram_determinant(g));
            EXPECT_TRUE(quad_det(r.transform).is_unit());
            EXPECT_EQ(gram(apply_transform(r.transform, mixed)), r.gram);
            expect_lll_conditions(r.gram);
        }
    }
}

TEST(LatticeTools, LllRejectsIndefiniteInput) {
    const Ring R = Ring::gaussian;
    HermitianGram g{{QuadRat(R, 1), QuadRat(R, 2)}, {QuadRat(R, 2), QuadRat(R, 1)}};
    EXPECT_THROW(lll_reduce(g, R), std::domain_error);
}

TEST(LatticeTools, QuadraticBasesBecomeOrthogonal) {
    for (int p : {5, 13, 37}) {
        auto f = fields::quadratic(p);
        auto alpha = find_ideal_generator_2x2(f, p);
        std::vector<NfElement> b{alpha, alpha * NfElement::theta_pow(f, 1)};
        auto r = lll_reduce(gram(b), Ring::gaussian);
        EXPECT_TRUE(is_scaled_identity(r.gram, p)) << p;
    }
}

TEST(LatticeTools, HnfOfPowerBasisHasIndexOne) {
    for (const auto& f : {fields::cubic(), fields::quartic()}) {
        auto h = hnf_module_basis(power_basis(f), f->ring());
        EXPECT_EQ(h.index, 1);
        EXPECT_EQ(h.basis, power_basis(f));
    }
}

TEST(LatticeTools, HnfIsIdempotentAndBasisIndependent) {
    auto s = make_code_3x3();
    auto h1 = hnf_module_basis(s.basis, Ring::eisenstein);
    auto h2 = hnf_module_basis(h1.basis, Ring::eisenstein);
    EXPECT_EQ(h1.basis, h2.basis);
    // The ideal generated by (1+j)+theta, written through its O_K-multiples.
    auto f = s.desc;
    std::vector<NfElement> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(s.basis[0] * NfElement::theta_pow(f, k));
    auto h3 = hnf_module_basis(gens, Ring::eisenstein);
    EXPECT_EQ(h3.basis, h1.basis);
    EXPECT_EQ(h3.index, 7);
    for (std::size_t r = 0; r < h1.basis.size(); ++r)
        for (std::size_t c = 0; c < r; ++c) EXPECT_TRUE(h1.basis[r][static_cast<int>(c)].is_zero());
}

TEST(LatticeTools, HnfRejectsRankDeficiency) {
    auto f = fields::cubic();
    EXPECT_THROW(hnf_module_basis({NfElement::one(f), NfElement::theta_pow(f, 1)}, Ring::eisenstein),
                 std::invalid_argument);
}

TEST(LatticeTools, SexticIdealPipeline) {
    auto f = fields::sextic();
    auto pipe = sextic_pipeline(f, sextic_prime_factor());
    EXPECT_EQ(pipe.t, 0);
    EXPECT_EQ(pipe.ideal_norm, 7);
    EXPECT_TRUE(is_scaled_identity(gram(pipe.basis), 14));
    // Both factors of 7 in Z[j] give orthogonal ideals.
    auto other = sextic_pipeline(f, QuadInt::eisenstein(-2, 1));
    EXPECT_EQ(other.ideal_norm, 7);
}

TEST(LatticeTools, SelfDuality) {
    for (int p : {5, 13, 17}) {
        auto f = fields::quadratic(p);
        EXPECT_TRUE(check_selfdual_2x2(ideal_basis_2x2(f, p), p)) << p;
    }
    auto f5 = fields::quadratic(5);
    EXPECT_FALSE(check_selfdual_2x2({NfElement::one(f5), NfElement::theta_pow(f5, 1)}, 5));
    EXPECT_THROW(check_selfdual_2x2({NfElement::one(f5), NfElement::theta_pow(f5, 1)}, 3), std::invalid_argument);
}
