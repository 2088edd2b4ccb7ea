#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Constructors for the cyclotomic polynomial Phi_n and the inverse
 * cyclotomic polynomial Psi_n = (x^n - 1) / Phi_n, and the index reductions
 * that carry gap questions from arbitrary n down to an odd squarefree core.
 */

#include "cyclogap/errors.hpp"
#include "cyclogap/number_theory.hpp"
#include "cyclogap/sparse_poly.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace cyclogap {

/**
 * Phi_n = prod_{d | n} (x^{n/d} - 1)^{mu(d)}.
 *
 * All binomials with mu(d) = +1 are multiplied first; the result is then
 * divided by each binomial with mu(d) = -1 in turn.
 */
inline SparsePoly phi_poly_mobius(std::uint64_t n, std::uint64_t limit = kDefaultLimitN) {
    const FactoredIndex f = factor(n, limit);
    std::vector<Exponent> divide_by;
    SparsePoly acc = SparsePoly::constant(1);
    for (const auto& [d, mu] : squarefree_divisors(f)) {
        if (mu > 0) {
            acc = mul(acc, SparsePoly::binomial(n / d));
        } else {
            divide_by.push_back(n / d);
        }
    }
    // Larger binomials first keeps the intermediate quotients short.
    std::sort(divide_by.rbegin(), divide_by.rend());
    for (Exponent k : divide_by) {
        acc = div_binomial(acc, k);
    }
    return acc;
}

/**
 * Psi_n as the quotient (x^n - 1) / Phi_n.
 *
 * Substituting the Moebius product for Phi_n cancels x^n - 1 and leaves
 *   Psi_n = prod_{d | n, d > 1} (x^{n/d} - 1)^{-mu(d)},
 * so the quotient is taken one binomial at a time. Divisions are applied as
 * soon as they are exact and multiplications are deferred, smallest first,
 * which keeps every intermediate a short polynomial.
 */
inline SparsePoly psi_poly_division(std::uint64_t n, std::uint64_t limit = kDefaultLimitN) {
    const FactoredIndex f = factor(n, limit);
    std::vector<Exponent> multiply_by;
    std::vector<Exponent> divide_by;
    for (const auto& [d, mu] : squarefree_divisors(f)) {
        if (d == 1) {
            continue;
        }
        (mu < 0 ? multiply_by : divide_by).push_back(n / d);
    }
    std::sort(multiply_by.begin(), multiply_by.end());

    SparsePoly acc = SparsePoly::constant(1);
    std::size_t next = 0;
    while (true) {
        bool divided = true;
        while (divided && !divide_by.empty()) {
            divided = false;
            for (auto it = divide_by.begin(); it != divide_by.end(); ++it) {
                if (auto q = try_div_binomial(acc, *it)) {
                    acc = std::move(*q);
                    divide_by.erase(it);
                    divided = true;
                    break;
                }
            }
        }
        if (next == multiply_by.size()) {
            break;
        }
        acc = mul(acc, SparsePoly::binomial(multiply_by[next++]));
    }
    if (!divide_by.empty()) {
        throw InvariantViolation("Psi_" + std::to_string(n) + ": binomial quotient did not close");
    }
    return acc;
}

/// Psi_{p1 p2 p3} = Phi_{p1 p2}(x) * Phi_{p1}(x^{p3}) * (x^{p2 p3} - 1).
inline SparsePoly psi_poly_moree(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    require_ascending_odd_primes({p1, p2, p3});
    const SparsePoly phi_p1p2 = phi_poly_mobius(p1 * p2);
    const SparsePoly phi_p1_stretched = compose_power(SparsePoly::geometric(1, p1), p3);
    return mul(mul(phi_p1p2, phi_p1_stretched), SparsePoly::binomial(p2 * p3));
}

enum class ReductionKind { Radical, Even };

struct ReductionStep {
    ReductionKind kind;
    std::uint64_t from;
    std::uint64_t to;
    /// n / radical(n) for a radical step; 1 for an even step.
    std::uint64_t multiplier = 1;
    /// phi(to) for an even step: deg(Phi_m) in g(Psi_{2m}) = max{g(Psi_m), deg(Phi_m)}.
    std::uint64_t core_degree = 0;
};

/// The chain n -> radical(n) -> odd part, ending at an odd squarefree core.
struct ReductionChain {
    std::uint64_t n = 1;
    std::uint64_t radical = 1;
    std::uint64_t multiplier = 1;
    bool even = false;
    std::uint64_t core = 1;
    std::vector<std::uint64_t> core_primes;
    std::uint64_t core_totient = 1;
    std::vector<ReductionStep> steps;
};

inline ReductionChain reduce_index(std::uint64_t n, std::uint64_t limit = kDefaultLimitN) {
    const FactoredIndex f = factor(n, limit);
    ReductionChain chain;
    chain.n = n;
    chain.radical = f.radical;
    chain.multiplier = n / f.radical;
    if (chain.multiplier != 1) {
        chain.steps.push_back({ReductionKind::Radical, n, f.radical, chain.multiplier, 0});
    }
    chain.core = f.radical;
    chain.core_primes = f.distinct_primes();
    if (f.radical % 2 == 0) {
        chain.even = true;
        chain.core = f.radical / 2;
        chain.core_primes.erase(chain.core_primes.begin());
    }
    chain.core_totient = 1;
    for (auto p : chain.core_primes) {
        chain.core_totient *= p - 1;
    }
    if (chain.even) {
        chain.steps.push_back({ReductionKind::Even, f.radical, chain.core, 1, chain.core_totient});
    }
    return chain;
}

inline std::string describe(const ReductionStep& step) {
    const auto from = std::to_string(step.from);
    const auto to = std::to_string(step.to);
    if (step.kind == ReductionKind::Radical) {
        const auto m = std::to_string(step.multiplier);
        return "radical rule: g(Φ_" + from + ") = " + m + "·g(Φ_" + to + "), g(Ψ_" + from + ") = " + m +
               "·g(Ψ_" + to + ")";
    }
    return "even rule: g(Φ_" + from + ") = g(Φ_" + to + "), g(Ψ_" + from + ") = max{g(Ψ_" + to + "), deg Φ_" +
           to + " = " + std::to_string(step.core_degree) + "}";
}

} // namespace cyclogap
