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

#include "pstbc/int_field.hpp"
#include "pstbc/verification.hpp"

using namespace pstbc;

namespace {

std::vector<QuadInt> random_symbols(const CodeSpec& s, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    std::vector<QuadInt> u;
    for (int k = 0; k < s.n() * s.n(); ++k) u.emplace_back(s.ring(), d(rng), d(rng));
    return u;
}

// Brute force over a tiny box through the general exact determinant.
BigInt slow_min_abs2(const CodeSpec& s, const std::vector<QuadInt>& values) {
    const int dim = s.n() * s.n();
    std::vector<std::size_t> idx(dim, 0);
    BigInt best = -1;
    for (;;) {
        std::vector<QuadInt> u;
        bool nz = false;
        for (auto i : idx) {
            u.push_back(values[i]);
            nz = nz || !values[i].is_zero();
        }
        if (nz) {
            BigInt v = codeword_det(s, u).exact.norm();
            if (best < 0 || v < best) best = v;
        }
        int k = 0;
        while (k < dim && ++idx[k] == values.size()) idx[k++] = 0;
        if (k == dim) break;
    }
    return best;
}

}  // namespace

TEST(Verification, FixedWidthDeterminantMatchesExact) {
    std::mt19937_64 rng(41);
    for (const auto& s : {make_code_2x2(5), make_code_3x3(), make_code_4x4(), make_code_6x6()}) {
        DetEvaluator ev(s);
        for (int t = 0; t < 5; ++t) {
            auto u = random_symbols(s, rng, 3);
            EXPECT_EQ(ev.det(u), codeword_det(s, u).exact) << s.name;
        }
    }
}

TEST(Verification, WideSymbolsFallBackToBigIntegers) {
    auto s = make_code_6x6();
    std::vector<QuadInt> u(36, QuadInt::eisenstein(0));
    for (int k = 0; k < 36; k += 5) u[k] = QuadInt::eisenstein(40000, -30000);
    DetEvaluator ev(s);
    EXPECT_EQ(ev.det(u), codeword_det(s, u).exact);
}

TEST(Verification, GoldenRadiusOne) {
    auto r = min_det_bruteforce(make_code_2x2(5), 1);
    EXPECT_EQ(r.min_abs2, BigRational(1, 5));
    EXPECT_TRUE(r.meets_target());
    EXPECT_EQ(r.evaluated, 9u * 9 * 9 * 9 - 1);
    EXPECT_NE(format_report(r).find("min |det|^2 = 1/5"), std::string::npos);
}

TEST(Verification, QuadraticClosedFormAgreesWithSlowSearch) {
    // Symbols restricted to {0, 1, i}: closed-form enumeration vs general determinant.
    for (int p : {5, 13}) {
        auto s = make_code_2x2(p);
        std::vector<QuadInt> vals{QuadInt::gaussian(0), QuadInt::gaussian(1), QuadInt::gaussian(0, 1)};
        BigInt slow = slow_min_abs2(s, vals);
        EXPECT_EQ(BigRational(slow, p * p), BigRational(1, p)) << p;
    }
}

TEST(Verification, MonotoneInRadius) {
    auto s = make_code_2x2(13);
    auto r1 = min_det_bruteforce(s, 1), r2 = min_det_bruteforce(s, 2);
    EXPECT_LE(r2.min_abs2, r1.min_abs2);
    EXPECT_EQ(r1.min_abs2, BigRational(1, 13));
}

TEST(Verification, BudgetGuard) {
    EXPECT_THROW(min_det_bruteforce(make_code_4x4(), 1), std::length_error);
    EXPECT_THROW(min_det_bruteforce(make_code_3x3(), 1, 1e6), std::length_error);
}

TEST(Verification, SampledSearchFindsSingleSymbolMinimum) {
    auto s = make_code_4x4();
    auto r = min_det_sampled(s, 1, 1, 2000);
    EXPECT_EQ(r.min_abs2, BigRational(1, 1125));
    EXPECT_FALSE(r.zero_found);
    auto s6 = make_code_6x6();
    auto r6 = min_det_sampled(s6, 1, 1, 200);
    EXPECT_EQ(r6.min_abs2, BigRational(1, 64 * 2401));
    EXPECT_GE(r6.min_abs2_unnormalized, 7);
}

TEST(Verification, SexticDeterminantsAreMultiplesOfIdealNorm) {
    // |det|^2 (unnormalized) lies in N(I) Z = 7 Z
    std::mt19937_64 rng(43);
    auto s = make_code_6x6();
    DetEvaluator ev(s);
    for (int t = 0; t < 50; ++t) EXPECT_EQ(ev.det(random_symbols(s, rng, 1)).norm() % 7, 0);
}

TEST(Verification, Discreteness) {
    for (const auto& s : {make_code_2x2(5), make_code_3x3(), make_code_4x4()}) {
        auto r = check_det_discreteness(s, 200, 3, 3, 10);
        EXPECT_TRUE(r.passed()) << s.name << ": " << r.first_failure;
        EXPECT_EQ(r.exact_cross_checks, 10u);
    }
}

TEST(Verification, NormCondition) {
    EXPECT_EQ(norm_condition_2x2(5).status, NormStatus::proven);
    EXPECT_EQ(norm_condition_2x2(13).status, NormStatus::proven);
    auto r = norm_condition_2x2(17);
    ASSERT_EQ(r.status, NormStatus::counterexample_found);
    EXPECT_EQ(rel_norm(*r.counterexample), QuadRat(QuadInt::gaussian(0, 1)));
    EXPECT_THROW(norm_condition_2x2(7), std::invalid_argument);
}

TEST(Verification, Q17ExampleElement) {
    auto f = fields::quadratic(17);
    EXPECT_EQ(rel_norm(q17_example_element(f)), QuadRat(QuadInt::gaussian(0, 1)));
    // 4 + sqrt(17) = 3 + 2 theta has norm -1
    EXPECT_EQ(rel_norm(NfElement::from_ints(f, {QuadInt::gaussian(3), QuadInt::gaussian(2)})),
              QuadRat(Ring::gaussian, -1));
}

TEST(Verification, Q17SingularCodeword) {
    auto w = q17_singular_codeword();
    EXPECT_TRUE(w.det.is_zero());
    bool nonzero = false;
    for (const auto& x : w.symbols) nonzero = nonzero || !x.is_zero();
    EXPECT_TRUE(nonzero);
    EXPECT_GT(w.codeword.numeric.norm(), 0.0);
    EXPECT_LT(std::abs(w.codeword.numeric.determinant()), 1e-9);
    // The same symbols under the Golden code give an invertible codeword.
    EXPECT_FALSE(codeword_det(make_code_2x2(5), w.symbols).exact.is_zero());
}

TEST(Verification, NonNormWitnesses) {
    auto ws = nonnorm_witnesses();
    ASSERT_EQ(ws.size(), 4u);
    const std::vector<long> norms{79, 151, 769, 97};
    for (std::size_t k = 0; k < ws.size(); ++k) {
        EXPECT_TRUE(ws[k].passed()) << format_report(ws[k]);
        EXPECT_EQ(ws[k].norm, norms[k]);
    }
}

TEST(Verification, WitnessDetectsWrongCongruence) {
    auto E = [](long a, long b) { return QuadInt::eisenstein(a, b); };
    auto w = check_witness("bad", E(7, -3), {{E(1, 0), E(3, 1)}}, 79);
    EXPECT_FALSE(w.passed());
}
