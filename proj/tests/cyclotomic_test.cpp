#include "cyclogap/cyclotomic.hpp"
#include "cyclogap/dispatch.hpp"
#include "cyclogap/gaps.hpp"
#include "cyclogap/poly_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace cyclogap;
using cyclogap::test::P;

TEST(Golden, DisplayedPolynomials) {
    EXPECT_EQ(to_text(phi_poly_mobius(3)), test::read_golden("phi_3.txt"));
    EXPECT_EQ(to_text(phi_poly_mobius(15)), test::read_golden("phi_15.txt"));
    EXPECT_EQ(to_text(psi_poly_division(3)), test::read_golden("psi_3.txt"));
    EXPECT_EQ(to_text(psi_poly_division(15)), test::read_golden("psi_15.txt"));
    EXPECT_EQ(to_text(psi_poly_division(105)), test::read_golden("psi_105.txt"));
    EXPECT_EQ(to_text(psi_poly_moree(3, 5, 7)), test::read_golden("psi_105.txt"));
}

TEST(Golden, Psi105Shape) {
    const auto f = psi_poly_moree(3, 5, 7);
    EXPECT_EQ(f.size(), 26u);
    EXPECT_EQ(f.deg(), 57u);
    EXPECT_EQ(f.leading_coefficient(), 1);
}

TEST(PhiMobius, SmallIndices) {
    EXPECT_EQ(phi_poly_mobius(1), P("-1 + x"));
    EXPECT_EQ(phi_poly_mobius(3), P("1 + x + x^2"));
    EXPECT_EQ(phi_poly_mobius(15), P("1 - x + x^3 - x^4 + x^5 - x^7 + x^8"));
    EXPECT_EQ(phi_poly_mobius(2), P("1 + x"));
    EXPECT_EQ(phi_poly_mobius(12), P("1 - x^2 + x^4"));
    EXPECT_THROW(phi_poly_mobius(0), InputError);
    EXPECT_THROW(phi_poly_mobius(11, 10), LimitExceeded);
}

TEST(PsiDivision, SmallIndices) {
    EXPECT_EQ(psi_poly_division(1), SparsePoly::constant(1));
    EXPECT_EQ(psi_poly_division(3), P("-1 + x"));
    EXPECT_EQ(psi_poly_division(15), P("-1 - x - x^2 + x^5 + x^6 + x^7"));
}

TEST(PsiMoree, AgreesWithDivision) {
    EXPECT_EQ(psi_poly_moree(3, 5, 11), psi_poly_division(165));
    EXPECT_EQ(psi_poly_moree(5, 7, 11), psi_poly_division(385));
    EXPECT_THROW(psi_poly_moree(3, 5, 9), NotOddPrimes);
}

TEST(Oracle, PhiAndPsiMatchDenseRecursion) {
    oracle::Cyclotomics dense;
    for (std::uint64_t n = 1; n <= 400; ++n) {
        ASSERT_EQ(phi_poly_mobius(n), test::from_oracle(dense.phi(n))) << n;
        ASSERT_EQ(psi_poly_division(n), test::from_oracle(dense.psi(n))) << n;
    }
}

TEST(Oracle, PsiDivisionMatchesLongDivision) {
    for (std::uint64_t n : {105u, 210u, 315u, 385u, 1155u, 3003u}) {
        ASSERT_EQ(psi_poly_division(n), exact_div(SparsePoly::binomial(n), phi_poly_mobius(n))) << n;
    }
}

TEST(CyclotomicProperty, StructuralInvariants) {
    for (std::uint64_t n = 1; n <= 600; ++n) {
        const auto f = factor(n);
        const auto phi = phi_poly_mobius(n);
        const auto psi = psi_poly_division(n);
        ASSERT_EQ(phi * psi, SparsePoly::binomial(n)) << n;
        ASSERT_EQ(phi.deg(), f.totient) << n;
        ASSERT_EQ(psi.deg(), n - f.totient) << n;
        if (n > 1) {
            ASSERT_EQ(psi.value_at_one(), 0) << n;
            const auto e = phi.exponents();
            for (auto x : e) {
                ASSERT_NE(phi.coefficient(f.totient - x), 0) << n;
            }
        }
        if (f.prime_factors.size() >= 2) {
            ASSERT_EQ(phi.value_at_one(), 1) << n;
        } else if (f.prime_factors.size() == 1 && f.prime_factors[0].multiplicity == 1) {
            ASSERT_EQ(phi.value_at_one(), static_cast<std::int64_t>(n)) << n;
        }
    }
}

TEST(CyclotomicProperty, TwoPrimeCoefficientsAreFlat) {
    const auto ps = test::odd_primes_upto(60);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const auto phi = phi_poly_mobius(ps[i] * ps[j]);
            for (const auto& t : phi.terms()) {
                ASSERT_TRUE(t.coefficient == 1 || t.coefficient == -1);
            }
        }
    }
}

TEST(ReduceIndex, RadicalStep) {
    const auto c = reduce_index(9);
    EXPECT_EQ(c.multiplier, 3u);
    EXPECT_EQ(c.core, 3u);
    EXPECT_FALSE(c.even);
    ASSERT_EQ(c.steps.size(), 1u);
    EXPECT_EQ(c.steps[0].kind, ReductionKind::Radical);
    EXPECT_EQ(max_gap(phi_poly_mobius(9)), 3 * max_gap(phi_poly_mobius(3)));
}

TEST(ReduceIndex, AlreadyCore) {
    const auto c = reduce_index(15);
    EXPECT_EQ(c.multiplier, 1u);
    EXPECT_EQ(c.core, 15u);
    EXPECT_TRUE(c.steps.empty());
}

TEST(ReduceIndex, EvenStep) {
    const auto c = reduce_index(30);
    EXPECT_TRUE(c.even);
    EXPECT_EQ(c.core, 15u);
    EXPECT_EQ(c.core_totient, 8u);
    ASSERT_EQ(c.steps.size(), 1u);
    EXPECT_EQ(c.steps[0].kind, ReductionKind::Even);
    EXPECT_EQ(c.steps[0].core_degree, 8u);
    EXPECT_EQ(max_gap(psi_poly_division(30)), 8u);
}

TEST(ReduceIndex, BothSteps) {
    const auto c = reduce_index(360);
    EXPECT_EQ(c.radical, 30u);
    EXPECT_EQ(c.multiplier, 12u);
    EXPECT_EQ(c.core, 15u);
    EXPECT_EQ(c.steps.size(), 2u);
}

TEST(GapDispatch, TrivialCores) {
    auto d = gap_dispatch(7);
    EXPECT_EQ(d.phi.kind, GapKind::Exact);
    EXPECT_EQ(d.phi.value, 1);
    EXPECT_EQ(d.psi.value, 1);
    d = gap_dispatch(1);
    EXPECT_EQ(d.phi.value, 1);
    EXPECT_EQ(d.psi.value, 0);
    d = gap_dispatch(15);
    EXPECT_EQ(d.phi.value, 2);
    EXPECT_EQ(d.psi.value, 3);
    d = gap_dispatch(30);
    EXPECT_EQ(d.psi.kind, GapKind::Exact);
    EXPECT_EQ(d.psi.value, 8);
}

TEST(GapDispatch, ThreePrimeCore) {
    auto d = gap_dispatch(105);
    ASSERT_TRUE(d.conditions.has_value());
    EXPECT_EQ(d.psi.kind, GapKind::Exact);
    EXPECT_EQ(d.psi.value, 13);
    EXPECT_EQ(d.phi.kind, GapKind::BruteForceOnly);
    d = gap_dispatch(1155);
    EXPECT_EQ(d.psi.kind, GapKind::BruteForceOnly);
}

TEST(GapDispatch, ConsistentWithBruteForce) {
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        const auto d = gap_dispatch(n);
        ASSERT_TRUE(d.phi.consistent_with(max_gap(phi_poly_mobius(n)))) << "phi " << n;
        ASSERT_TRUE(d.psi.consistent_with(max_gap(psi_poly_division(n)))) << "psi " << n;
    }
}
