#pragma once

/**
 * @file theorems.hpp
 * @brief Closed forms, bounds and conditions for the maximum gap of
 * Phi_{p1 p2} and Psi_{p1 p2 p3}, together with the brute-force harness that
 * checks them.
 *
 * Throughout, p1 < p2 < p3 are odd primes, n = p1 p2 p3 and
 * psi(n) = deg(Psi_n) = n - (p1-1)(p2-1)(p3-1).
 */

#include "cyclogap/cyclotomic.hpp"
#include "cyclogap/errors.hpp"
#include "cyclogap/gaps.hpp"
#include "cyclogap/number_theory.hpp"
#include "cyclogap/sparse_poly.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace cyclogap {

/// Phi_{p1 p2} = A*B + C*D with (rho+1) p1 + (sigma+1) p2 = p1 p2 + 1.
struct LamLeungForm {
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t rho = 0;
    std::uint64_t sigma = 0;
    SparsePoly A;
    SparsePoly B;
    SparsePoly C;
    SparsePoly D;
};

/// True when no exponent occurs in both a and b.
inline bool disjoint_supports(const SparsePoly& a, const SparsePoly& b) {
    auto ta = a.terms();
    auto tb = b.terms();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ta.size() && j < tb.size()) {
        if (ta[i].exponent == tb[j].exponent) {
            return false;
        }
        ta[i].exponent < tb[j].exponent ? ++i : ++j;
    }
    return true;
}

/**
 * Solves for (rho, sigma) by scanning sigma in [0, p1-2], builds A, B, C, D
 * and checks A*B + C*D == Phi_{p1 p2} with disjoint supports before returning.
 */
inline LamLeungForm lam_leung(std::uint64_t p1, std::uint64_t p2) {
    require_ascending_odd_primes({p1, p2});
    LamLeungForm form;
    form.p1 = p1;
    form.p2 = p2;
    const std::uint64_t target = p1 * p2 + 1;
    int solutions = 0;
    for (std::uint64_t sigma = 0; sigma + 2 <= p1; ++sigma) {
        const std::uint64_t used = (sigma + 1) * p2;
        if (used >= target || (target - used) % p1 != 0) {
            continue;
        }
        const std::uint64_t rho_plus_one = (target - used) / p1;
        if (rho_plus_one == 0 || rho_plus_one - 1 > p2 - 2) {
            continue;
        }
        form.rho = rho_plus_one - 1;
        form.sigma = sigma;
        ++solutions;
    }
    if (solutions != 1) {
        throw InvariantViolation("expected a unique (rho, sigma) for (" + std::to_string(p1) + ", " +
                                 std::to_string(p2) + "), found " + std::to_string(solutions));
    }
    form.A = SparsePoly::geometric(p1, form.rho + 1);
    form.B = SparsePoly::geometric(p2, form.sigma + 1);
    form.C = SparsePoly::geometric(p1, p2 - 1 - form.rho);
    form.D = (-SparsePoly::geometric(p2, p1 - 1 - form.sigma)).shifted(1);

    const SparsePoly ab = mul(form.A, form.B);
    const SparsePoly cd = mul(form.C, form.D);
    if (!disjoint_supports(ab, cd)) {
        throw InvariantViolation("A*B and C*D share an exponent");
    }
    if (add(ab, cd) != phi_poly_mobius(p1 * p2)) {
        throw InvariantViolation("A*B + C*D does not reconstruct Phi_" + std::to_string(p1 * p2));
    }
    return form;
}

/// g(Phi_{p1 p2}) = p1 - 1.
inline std::uint64_t gap_phi_closed(std::uint64_t p1, std::uint64_t p2) {
    require_ascending_odd_primes({p1, p2});
    return p1 - 1;
}

/// deg(Psi_{p1 p2 p3}) = n - (p1-1)(p2-1)(p3-1).
inline std::int64_t psi_degree(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    return static_cast<std::int64_t>(p1 * p2 * p3 - (p1 - 1) * (p2 - 1) * (p3 - 1));
}

/// lambda = 2n/p1 - deg(Psi_n). Signed: it is <= 0 when Psi_n has no gap between its two halves.
inline std::int64_t gap_psi3_closed(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    require_ascending_odd_primes({p1, p2, p3});
    return 2 * static_cast<std::int64_t>(p2 * p3) - psi_degree(p1, p2, p3);
}

struct ConditionReport {
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t p3 = 0;
    bool C1 = false;  ///< 4(p1-1) <= p2
    bool C2 = false;  ///< p1^2 <= p3
    bool D1 = false;  ///< 2n/p1 > (4/3) deg(Psi_n)
    bool D2 = false;  ///< 2 p3 > p2 (p1-1)
    bool eq2 = false; ///< C1 or C2
    std::int64_t lambda = 0;
};

inline ConditionReport conditions(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    require_ascending_odd_primes({p1, p2, p3});
    ConditionReport r;
    r.p1 = p1;
    r.p2 = p2;
    r.p3 = p3;
    r.C1 = 4 * (p1 - 1) <= p2;
    r.C2 = p1 * p1 <= p3;
    const std::int64_t psi = psi_degree(p1, p2, p3);
    // 2 p2 p3 > (4/3) psi  <=>  6 p2 p3 > 4 psi
    r.D1 = 6 * static_cast<std::int64_t>(p2 * p3) > 4 * psi;
    r.D2 = 2 * p3 > p2 * (p1 - 1);
    r.eq2 = r.C1 || r.C2;
    r.lambda = 2 * static_cast<std::int64_t>(p2 * p3) - psi;
    return r;
}

/// lower <= g(Psi_n) < upper_exclusive.
struct GapBounds {
    std::int64_t lower = 0;
    std::int64_t upper_exclusive = 0;

    bool contains(std::int64_t g) const { return lower <= g && g < upper_exclusive; }
};

inline GapBounds bounds_psi3(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    const std::int64_t lambda = gap_psi3_closed(p1, p2, p3);
    const auto s = static_cast<std::int64_t>(p2 * p3 + p1 * p3 + p1 * p2);
    return {std::max(static_cast<std::int64_t>(p1 - 1), lambda), 2 * s - psi_degree(p1, p2, p3)};
}

/**
 * max{g(a), g(b), tdeg(b) - deg(a), tdeg(a) - deg(b)}, an upper bound on
 * g(a + b) when no coefficients cancel in the sum.
 *
 * Throws CancellationDetected when a + b has fewer terms than the union of
 * the supports of a and b.
 */
inline std::uint64_t gap_sum_bound(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) {
        throw ZeroPolynomial();
    }
    std::size_t shared = 0;
    {
        auto ta = a.terms();
        auto tb = b.terms();
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < ta.size() && j < tb.size()) {
            if (ta[i].exponent == tb[j].exponent) {
                ++shared;
                ++i;
                ++j;
            } else {
                ta[i].exponent < tb[j].exponent ? ++i : ++j;
            }
        }
    }
    if (add(a, b).size() != a.size() + b.size() - shared) {
        throw CancellationDetected("terms cancel in the sum");
    }
    const auto sa = [](Exponent e) { return static_cast<std::int64_t>(e); };
    const std::int64_t bound = std::max({sa(max_gap(a)), sa(max_gap(b)), sa(b.tdeg()) - sa(a.deg()),
                                         sa(a.tdeg()) - sa(b.deg())});
    return static_cast<std::uint64_t>(bound);
}

/**
 * min{u, v} with u = max{g(b), g(a) + tdeg(b) - deg(b)} and
 * v = max{g(a), g(b) + tdeg(a) - deg(a)}, an upper bound on g(a*b) when each
 * operand has coefficients of a single sign.
 */
inline std::uint64_t gap_product_bound(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) {
        throw ZeroPolynomial();
    }
    if (!a.single_signed() || !b.single_signed()) {
        throw MixedSigns("each operand must have coefficients of a single sign");
    }
    const auto sa = [](Exponent e) { return static_cast<std::int64_t>(e); };
    const std::int64_t ga = sa(max_gap(a));
    const std::int64_t gb = sa(max_gap(b));
    const std::int64_t u = std::max(gb, ga + sa(b.tdeg()) - sa(b.deg()));
    const std::int64_t v = std::max(ga, gb + sa(a.tdeg()) - sa(a.deg()));
    return static_cast<std::uint64_t>(std::min(u, v));
}

/// True when the polynomial starts sign*(1 - x + x^p1) with nothing strictly between x and x^p1.
inline bool starts_with_initial_gap(const SparsePoly& f, std::uint64_t p1, std::int64_t sign = 1) {
    auto t = f.terms();
    return t.size() >= 3 && t[0] == Term<std::int64_t>{0, sign} && t[1] == Term<std::int64_t>{1, -sign} &&
           t[2] == Term<std::int64_t>{p1, sign};
}

/// Phi_{p1 p2} = 1 - x + x^{p1} + higher terms.
inline bool initial_gap_check(std::uint64_t p1, std::uint64_t p2) {
    require_ascending_odd_primes({p1, p2});
    return starts_with_initial_gap(phi_poly_mobius(p1 * p2), p1);
}

struct VerificationRecord {
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t p3 = 0;
    std::uint64_t n = 0;
    std::uint64_t g = 0;
    std::int64_t lambda = 0;
    std::int64_t lower = 0;
    std::int64_t upper_exclusive = 0;
    bool C1 = false;
    bool C2 = false;
    bool D1 = false;
    bool D2 = false;
    bool eq2 = false;
    bool exact_match = false;
    bool trivial_match = false;
    bool bounds_hold = false;

    friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

/// Fills every field except g from the closed forms.
inline VerificationRecord closed_form_record(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3,
                                             std::uint64_t g) {
    const ConditionReport c = conditions(p1, p2, p3);
    const GapBounds b = bounds_psi3(p1, p2, p3);
    VerificationRecord r;
    r.p1 = p1;
    r.p2 = p2;
    r.p3 = p3;
    r.n = p1 * p2 * p3;
    r.g = g;
    r.lambda = c.lambda;
    r.lower = b.lower;
    r.upper_exclusive = b.upper_exclusive;
    r.C1 = c.C1;
    r.C2 = c.C2;
    r.D1 = c.D1;
    r.D2 = c.D2;
    r.eq2 = c.eq2;
    r.exact_match = static_cast<std::int64_t>(g) == c.lambda;
    r.trivial_match = g == p1 - 1;
    r.bounds_hold = b.contains(static_cast<std::int64_t>(g));
    return r;
}

/**
 * Builds Psi_{p1 p2 p3} with both the three-factor product and the binomial
 * quotient, requires them to agree, and compares the brute-force gap with the
 * closed form and bounds.
 */
inline VerificationRecord verify_triple(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3,
                                        std::uint64_t limit = kDefaultLimitN) {
    require_ascending_odd_primes({p1, p2, p3});
    const std::uint64_t n = p1 * p2 * p3;
    if (n > limit) {
        throw LimitExceeded("n = " + std::to_string(n) + " exceeds the configured limit " + std::to_string(limit));
    }
    const SparsePoly product_form = psi_poly_moree(p1, p2, p3);
    const SparsePoly quotient_form = psi_poly_division(n, limit);
    if (product_form != quotient_form) {
        throw InvariantViolation("Psi_" + std::to_string(n) + ": product and quotient constructions differ");
    }
    return closed_form_record(p1, p2, p3, max_gap(product_form));
}

/// Bounds hold, and the closed form is exact whenever the condition p2 >= 4(p1-1) or p3 >= p1^2 holds.
inline bool theorem_guarantees_hold(const VerificationRecord& r) {
    return r.bounds_hold && (!r.eq2 || r.exact_match);
}

inline nlohmann::ordered_json to_json(const VerificationRecord& r) {
    nlohmann::ordered_json j;
    j["p1"] = r.p1;
    j["p2"] = r.p2;
    j["p3"] = r.p3;
    j["n"] = r.n;
    j["g"] = r.g;
    j["lambda"] = r.lambda;
    j["lower"] = r.lower;
    j["upper_exclusive"] = r.upper_exclusive;
    j["C1"] = r.C1;
    j["C2"] = r.C2;
    j["D1"] = r.D1;
    j["D2"] = r.D2;
    j["eq2"] = r.eq2;
    j["exact_match"] = r.exact_match;
    j["trivial_match"] = r.trivial_match;
    j["bounds_hold"] = r.bounds_hold;
    return j;
}

inline VerificationRecord verification_record_from_json(const nlohmann::json& j) {
    VerificationRecord r;
    try {
        r.p1 = j.at("p1").get<std::uint64_t>();
        r.p2 = j.at("p2").get<std::uint64_t>();
        r.p3 = j.at("p3").get<std::uint64_t>();
        r.n = j.at("n").get<std::uint64_t>();
        r.g = j.at("g").get<std::uint64_t>();
        r.lambda = j.at("lambda").get<std::int64_t>();
        r.lower = j.at("lower").get<std::int64_t>();
        r.upper_exclusive = j.at("upper_exclusive").get<std::int64_t>();
        r.C1 = j.at("C1").get<bool>();
        r.C2 = j.at("C2").get<bool>();
        r.D1 = j.at("D1").get<bool>();
        r.D2 = j.at("D2").get<bool>();
        r.eq2 = j.at("eq2").get<bool>();
        r.exact_match = j.at("exact_match").get<bool>();
        r.trivial_match = j.at("trivial_match").get<bool>();
        r.bounds_hold = j.at("bounds_hold").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed verification record: ") + e.what());
    }
    return r;
}

} // namespace cyclogap
