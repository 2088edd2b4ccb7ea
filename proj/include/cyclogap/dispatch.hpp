#pragma once

// Closed-form answers for g(Phi_n) and g(Psi_n), found by reducing n to its
// odd squarefree core and then looking at how many primes the core has.

#include "cyclogap/cyclotomic.hpp"
#include "cyclogap/theorems.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

namespace cyclogap {

enum class GapKind {
    Exact,          ///< value holds g
    Bounded,        ///< lower <= g < upper_exclusive
    BruteForceOnly, ///< no closed form in scope
};

struct GapAnswer {
    GapKind kind = GapKind::BruteForceOnly;
    std::int64_t value = 0;
    std::int64_t lower = 0;
    std::int64_t upper_exclusive = 0;
    /// Formula that produced the core answer, e.g. "p1-1" or "lambda".
    std::string rule;

    bool consistent_with(std::uint64_t g) const {
        const auto s = static_cast<std::int64_t>(g);
        switch (kind) {
        case GapKind::Exact:
            return s == value;
        case GapKind::Bounded:
            return lower <= s && s < upper_exclusive;
        case GapKind::BruteForceOnly:
            return true;
        }
        return false;
    }
};

struct GapDispatch {
    ReductionChain chain;
    GapAnswer phi;
    GapAnswer psi;
    GapAnswer core_phi;
    GapAnswer core_psi;
    /// Present for three-prime cores.
    std::optional<ConditionReport> conditions;
};

namespace detail {

inline GapAnswer exact(std::int64_t v, std::string rule) {
    return {GapKind::Exact, v, v, v + 1, std::move(rule)};
}

inline GapAnswer scale(GapAnswer a, std::int64_t m) {
    if (m == 1 || a.kind == GapKind::BruteForceOnly) {
        return a;
    }
    a.value *= m;
    a.lower *= m;
    // g < U  =>  m g <= m (U - 1)
    a.upper_exclusive = m * (a.upper_exclusive - 1) + 1;
    return a;
}

inline GapAnswer even_psi(GapAnswer a, std::int64_t core_degree) {
    if (a.kind == GapKind::BruteForceOnly) {
        return a;
    }
    a.value = std::max(a.value, core_degree);
    a.lower = std::max(a.lower, core_degree);
    a.upper_exclusive = std::max(a.upper_exclusive, core_degree + 1);
    if (a.kind == GapKind::Bounded && a.lower + 1 == a.upper_exclusive) {
        a.kind = GapKind::Exact;
        a.value = a.lower;
    }
    return a;
}

} // namespace detail

/**
 * Cores with at most two primes have exact answers for both polynomials.
 * For three primes Psi is exact when D1 or D2 holds (each alone forces
 * g = lambda, and the condition C1 or C2 implies one of them) and bounded
 * otherwise; Phi has no closed form there. Four or more primes are brute
 * force only.
 */
inline GapDispatch gap_dispatch(std::uint64_t n, std::uint64_t limit = kDefaultLimitN) {
    GapDispatch d;
    d.chain = reduce_index(n, limit);
    const auto& ps = d.chain.core_primes;
    switch (ps.size()) {
    case 0:
        d.core_phi = detail::exact(1, "g(Φ_1)");
        d.core_psi = detail::exact(0, "g(Ψ_1)");
        break;
    case 1:
        d.core_phi = detail::exact(1, "g(Φ_p)");
        d.core_psi = detail::exact(1, "g(Ψ_p)");
        break;
    case 2:
        d.core_phi = detail::exact(static_cast<std::int64_t>(gap_phi_closed(ps[0], ps[1])), "p1-1");
        d.core_psi = detail::exact(static_cast<std::int64_t>(ps[1] - (ps[0] - 1)), "p2-(p1-1)");
        break;
    case 3: {
        d.conditions = conditions(ps[0], ps[1], ps[2]);
        const GapBounds b = bounds_psi3(ps[0], ps[1], ps[2]);
        if (d.conditions->D1 || d.conditions->D2) {
            d.core_psi = detail::exact(d.conditions->lambda, "lambda");
        } else {
            d.core_psi = {GapKind::Bounded, 0, b.lower, b.upper_exclusive, "bounds"};
        }
        d.core_phi = {GapKind::BruteForceOnly, 0, 0, 0, "no closed form in scope"};
        break;
    }
    default:
        d.core_phi = {GapKind::BruteForceOnly, 0, 0, 0, "no closed form in scope"};
        d.core_psi = d.core_phi;
        break;
    }
    d.phi = d.core_phi;
    d.psi = d.core_psi;
    if (d.chain.even) {
        d.psi = detail::even_psi(d.psi, static_cast<std::int64_t>(d.chain.core_totient));
    }
    const auto m = static_cast<std::int64_t>(d.chain.multiplier);
    d.phi = detail::scale(d.phi, m);
    d.psi = detail::scale(d.psi, m);
    return d;
}

} // namespace cyclogap
