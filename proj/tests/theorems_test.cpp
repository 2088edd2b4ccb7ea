#include "cyclogap/theorems.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace cyclogap;
using cyclogap::test::P;

TEST(LamLeung, ThreeFive) {
    const auto f = lam_leung(3, 5);
    EXPECT_EQ(f.rho, 1u);
    EXPECT_EQ(f.sigma, 1u);
    EXPECT_GE(f.rho, 1u);
    EXPECT_EQ(f.A, P("1 + x^3"));
    EXPECT_EQ(f.B, P("1 + x^5"));
    EXPECT_EQ(f.C, P("1 + x^3 + x^6"));
    EXPECT_EQ(f.D, P("-x"));
    EXPECT_EQ(f.A * f.B, P("1 + x^3 + x^5 + x^8"));
    EXPECT_EQ(f.C * f.D, P("-x - x^4 - x^7"));
}

TEST(LamLeung, FiveSeven) {
    const auto f = lam_leung(5, 7);
    // 5*7 + 1 = 36 = 3*5 + 3*7
    EXPECT_EQ(f.rho, 2u);
    EXPECT_EQ(f.sigma, 2u);
    EXPECT_EQ((f.rho + 1) * 5 + (f.sigma + 1) * 7, 36u);
    EXPECT_EQ(f.A * f.B + f.C * f.D, phi_poly_mobius(35));
    EXPECT_TRUE(disjoint_supports(f.A * f.B, f.C * f.D));
}

TEST(LamLeung, RejectsBadInput) {
    EXPECT_THROW(lam_leung(4, 5), NotOddPrimes);
    EXPECT_THROW(lam_leung(5, 3), NotOddPrimes);
    EXPECT_THROW(lam_leung(3, 3), NotOddPrimes);
}

TEST(ClosedForms, PhiTwoPrimes) {
    EXPECT_EQ(gap_phi_closed(3, 5), 2u);
    EXPECT_EQ(gap_phi_closed(3, 7), 2u);
    EXPECT_EQ(gap_phi_closed(5, 7), 4u);
    EXPECT_EQ(max_gap(phi_poly_mobius(35)), 4u);
}

TEST(ClosedForms, PsiThreePrimes) {
    EXPECT_EQ(gap_psi3_closed(3, 5, 7), 13);
    EXPECT_EQ(gap_psi3_closed(3, 5, 11), 25);
    EXPECT_EQ(max_gap(psi_poly_division(165)), 25u);
    const auto c = conditions(3, 7, 11);
    EXPECT_TRUE(c.C2);
    EXPECT_TRUE(c.eq2);
    EXPECT_EQ(static_cast<std::int64_t>(max_gap(psi_poly_division(231))), gap_psi3_closed(3, 7, 11));
    // Signed: no gap between the two blocks.
    EXPECT_LT(gap_psi3_closed(13, 17, 19), 0);
}

TEST(Conditions, Examples) {
    auto c = conditions(3, 5, 7);
    EXPECT_FALSE(c.C1);
    EXPECT_FALSE(c.C2);
    EXPECT_FALSE(c.eq2);
    EXPECT_FALSE(c.D1);
    EXPECT_TRUE(c.D2);
    EXPECT_EQ(c.lambda, 13);
    c = conditions(3, 11, 13);
    EXPECT_TRUE(c.C1);
    EXPECT_TRUE(c.eq2);
    EXPECT_THROW(conditions(3, 5, 9), NotOddPrimes);
}

TEST(Conditions, D1BoundaryIsStrict) {
    // D1 compares 2 p2 p3 with (4/3) psi exactly; check against rational arithmetic.
    const auto ps = test::odd_primes_upto(60);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            for (std::size_t k = j + 1; k < ps.size(); ++k) {
                const auto c = conditions(ps[i], ps[j], ps[k]);
                const auto psi = psi_degree(ps[i], ps[j], ps[k]);
                const auto lhs = 3 * 2 * static_cast<std::int64_t>(ps[j] * ps[k]);
                ASSERT_EQ(c.D1, lhs > 4 * psi);
            }
        }
    }
}

TEST(Bounds, Examples) {
    auto b = bounds_psi3(3, 5, 7);
    EXPECT_EQ(b.lower, 13);
    EXPECT_EQ(b.upper_exclusive, 85);
    EXPECT_TRUE(b.contains(13));
    EXPECT_FALSE(b.contains(85));
    b = bounds_psi3(5, 7, 11);
    EXPECT_EQ(b.lower, 9);
}

TEST(SumBound, Examples) {
    EXPECT_EQ(gap_sum_bound(P("1"), P("x^3")), 3u);
    EXPECT_EQ(max_gap(P("1 + x^3")), 3u);
    const auto a = phi_poly_mobius(15);
    const auto b = a.shifted(20);
    EXPECT_GE(gap_sum_bound(a, b), max_gap(a + b));
    EXPECT_THROW(gap_sum_bound(P("1 + x"), P("-x + x^2")), CancellationDetected);
    EXPECT_THROW(gap_sum_bound(P("1"), SparsePoly{}), ZeroPolynomial);
}

TEST(ProductBound, Examples) {
    const auto f = lam_leung(3, 5);
    const auto ab = gap_product_bound(f.A, f.B);
    EXPECT_EQ(ab, 3u);
    EXPECT_GE(ab, max_gap(f.A * f.B));
    const auto cd = gap_product_bound(f.C, f.D);
    EXPECT_LE(cd, 4u);
    EXPECT_GE(cd, max_gap(f.C * f.D));
    EXPECT_THROW(gap_product_bound(P("1 + x"), P("1 - x^2")), MixedSigns);
}

TEST(InitialGap, TwoPrimes) {
    EXPECT_TRUE(initial_gap_check(3, 5));
    EXPECT_TRUE(initial_gap_check(3, 7));
    EXPECT_TRUE(initial_gap_check(5, 7));
}

TEST(InitialGap, ThreePrimesStartNegated) {
    // Psi_{p1 p2 p3} starts -1 + x - x^{p1}.
    EXPECT_TRUE(starts_with_initial_gap(psi_poly_moree(3, 5, 7), 3, -1));
    EXPECT_TRUE(starts_with_initial_gap(psi_poly_moree(5, 7, 11), 5, -1));
    EXPECT_FALSE(starts_with_initial_gap(psi_poly_moree(3, 5, 7), 3, 1));
}

TEST(VerifyTriple, Examples) {
    auto r = verify_triple(3, 5, 7);
    EXPECT_EQ(r.g, 13u);
    EXPECT_EQ(r.lambda, 13);
    EXPECT_TRUE(r.exact_match);
    EXPECT_FALSE(r.eq2);
    EXPECT_TRUE(r.bounds_hold);
    EXPECT_TRUE(theorem_guarantees_hold(r));
    r = verify_triple(3, 5, 11);
    EXPECT_TRUE(r.C2);
    EXPECT_TRUE(r.exact_match);
    EXPECT_THROW(verify_triple(3, 5, 4), NotOddPrimes);
    EXPECT_THROW(verify_triple(97, 101, 103, 1000), LimitExceeded);
}

TEST(VerifyTriple, AgreesWithOracle) {
    oracle::Cyclotomics dense;
    for (auto [p1, p2, p3] : {std::tuple{3u, 5u, 7u}, {3u, 5u, 11u}, {3u, 7u, 11u}, {5u, 7u, 11u}, {5u, 7u, 13u},
                              {7u, 11u, 13u}, {3u, 11u, 13u}}) {
        const auto r = verify_triple(p1, p2, p3);
        EXPECT_EQ(r.g, oracle::max_gap(dense.psi(p1 * p2 * p3)));
    }
}

TEST(VerificationRecord, JsonRoundTrip) {
    const auto r = verify_triple(5, 7, 11);
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"p1", "p2", "p3", "n", "g", "lambda", "lower", "upper_exclusive", "C1",
                                              "C2", "D1", "D2", "eq2", "exact_match", "trivial_match",
                                              "bounds_hold"}));
    EXPECT_EQ(verification_record_from_json(nlohmann::json::parse(j.dump())), r);
    EXPECT_THROW(verification_record_from_json(nlohmann::json::object()), ParseError);
}
