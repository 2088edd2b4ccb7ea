#pragma once

/**
 * @file sparse_poly.hpp
 * @brief Exact univariate polynomials over the integers, stored sparsely.
 *
 * A polynomial is a strictly increasing list of (exponent, coefficient)
 * terms with no zero coefficients; the empty list is the zero polynomial.
 * Every operation returns canonical form and checks coefficient arithmetic
 * for overflow.
 *
 * The kernels pick their strategy from the operand shapes. Products and
 * binomial quotients use a dense window when the window is small compared
 * to the number of terms produced, and an output-sensitive sparse path
 * otherwise, so that huge but sparse polynomials such as
 * (x^(p2 p3) - 1) * Phi_{p1 p2}(x) stay cheap.
 */

#include "cyclogap/errors.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cyclogap {

using Exponent = std::uint64_t;

template <std::signed_integral C>
struct Term {
    Exponent exponent{};
    C coefficient{};

    friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {

template <std::signed_integral C>
C checked_add(C a, C b) {
    C r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowDetected("coefficient overflow in addition");
    }
    return r;
}

template <std::signed_integral C>
C checked_sub(C a, C b) {
    C r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowDetected("coefficient overflow in subtraction");
    }
    return r;
}

template <std::signed_integral C>
C checked_mul(C a, C b) {
    C r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowDetected("coefficient overflow in multiplication");
    }
    return r;
}

template <std::signed_integral C>
C checked_neg(C a) {
    return checked_sub(C{0}, a);
}

inline Exponent checked_exponent_add(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowDetected("exponent overflow");
    }
    return r;
}

inline Exponent checked_exponent_mul(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowDetected("exponent overflow");
    }
    return r;
}

// Largest window for which a dense scratch array is allowed (cells).
inline constexpr std::size_t kDenseWindowLimit = std::size_t{1} << 27;

} // namespace detail

template <std::signed_integral C>
class BasicSparsePoly {
public:
    using coefficient_type = C;
    using term_type = Term<C>;

    BasicSparsePoly() = default;

    BasicSparsePoly(std::initializer_list<term_type> terms)
        : BasicSparsePoly(from_terms(std::vector<term_type>(terms))) {}

    /// Sorts, merges repeated exponents and drops zeros.
    static BasicSparsePoly from_terms(std::vector<term_type> terms) {
        std::sort(terms.begin(), terms.end(), [](const term_type& a, const term_type& b) {
            return a.exponent < b.exponent;
        });
        std::vector<term_type> out;
        out.reserve(terms.size());
        for (const auto& t : terms) {
            if (!out.empty() && out.back().exponent == t.exponent) {
                out.back().coefficient = detail::checked_add(out.back().coefficient, t.coefficient);
            } else {
                out.push_back(t);
            }
            if (!out.empty() && out.back().coefficient == 0) {
                out.pop_back();
            }
        }
        return from_canonical(std::move(out));
    }

    /// Adopts a term list that must already be canonical.
    static BasicSparsePoly from_canonical(std::vector<term_type> terms) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].coefficient == 0 ||
                (i > 0 && terms[i - 1].exponent >= terms[i].exponent)) {
                throw InvariantViolation("term list is not canonical");
            }
        }
        BasicSparsePoly p;
        p.terms_ = std::move(terms);
        return p;
    }

    /// Coefficients of x^offset, x^(offset+1), ...
    static BasicSparsePoly from_dense(std::span<const C> coefficients, Exponent offset = 0) {
        std::vector<term_type> out;
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            if (coefficients[i] != 0) {
                out.push_back({offset + i, coefficients[i]});
            }
        }
        BasicSparsePoly p;
        p.terms_ = std::move(out);
        return p;
    }

    static BasicSparsePoly monomial(C coefficient, Exponent exponent) {
        if (coefficient == 0) {
            return {};
        }
        BasicSparsePoly p;
        p.terms_.push_back({exponent, coefficient});
        return p;
    }

    static BasicSparsePoly constant(C c) { return monomial(c, 0); }

    /// x^k - 1.
    static BasicSparsePoly binomial(Exponent k) {
        if (k == 0) {
            return {};
        }
        BasicSparsePoly p;
        p.terms_ = {{0, C{-1}}, {k, C{1}}};
        return p;
    }

    /// 1 + x^step + x^(2 step) + ... + x^(count-1)*step.
    static BasicSparsePoly geometric(Exponent step, std::size_t count) {
        if (count > 1 && step == 0) {
            return constant(static_cast<C>(count));
        }
        BasicSparsePoly p;
        p.terms_.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            p.terms_.push_back({detail::checked_exponent_mul(step, i), C{1}});
        }
        return p;
    }

    std::span<const term_type> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Exponent deg() const {
        require_nonzero();
        return terms_.back().exponent;
    }

    Exponent tdeg() const {
        require_nonzero();
        return terms_.front().exponent;
    }

    C leading_coefficient() const {
        require_nonzero();
        return terms_.back().coefficient;
    }

    C trailing_coefficient() const {
        require_nonzero();
        return terms_.front().coefficient;
    }

    C coefficient(Exponent e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const term_type& t, Exponent x) { return t.exponent < x; });
        return (it != terms_.end() && it->exponent == e) ? it->coefficient : C{0};
    }

    /// f(1), the sum of the coefficients.
    C value_at_one() const {
        C s{0};
        for (const auto& t : terms_) {
            s = detail::checked_add(s, t.coefficient);
        }
        return s;
    }

    std::vector<Exponent> exponents() const {
        std::vector<Exponent> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            out.push_back(t.exponent);
        }
        return out;
    }

    /// True when every coefficient has the same sign (vacuously for 0).
    bool single_signed() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const term_type& t) { return t.coefficient > 0; }) ||
               std::all_of(terms_.begin(), terms_.end(), [](const term_type& t) { return t.coefficient < 0; });
    }

    BasicSparsePoly operator-() const {
        BasicSparsePoly p = *this;
        for (auto& t : p.terms_) {
            t.coefficient = detail::checked_neg(t.coefficient);
        }
        return p;
    }

    /// x^k * f.
    BasicSparsePoly shifted(Exponent k) const {
        BasicSparsePoly p = *this;
        for (auto& t : p.terms_) {
            t.exponent = detail::checked_exponent_add(t.exponent, k);
        }
        return p;
    }

    friend bool operator==(const BasicSparsePoly&, const BasicSparsePoly&) = default;

private:
    void require_nonzero() const {
        if (terms_.empty()) {
            throw ZeroPolynomial();
        }
    }

    std::vector<term_type> terms_;
};

using SparsePoly = BasicSparsePoly<std::int64_t>;

template <std::signed_integral C>
Exponent deg(const BasicSparsePoly<C>& f) {
    return f.deg();
}

template <std::signed_integral C>
Exponent tdeg(const BasicSparsePoly<C>& f) {
    return f.tdeg();
}

template <std::signed_integral C>
BasicSparsePoly<C> add(const BasicSparsePoly<C>& a, const BasicSparsePoly<C>& b) {
    auto ta = a.terms();
    auto tb = b.terms();
    std::vector<Term<C>> out;
    out.reserve(ta.size() + tb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ta.size() && j < tb.size()) {
        if (ta[i].exponent < tb[j].exponent) {
            out.push_back(ta[i++]);
        } else if (tb[j].exponent < ta[i].exponent) {
            out.push_back(tb[j++]);
        } else {
            C c = detail::checked_add(ta[i].coefficient, tb[j].coefficient);
            if (c != 0) {
                out.push_back({ta[i].exponent, c});
            }
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), ta.begin() + static_cast<std::ptrdiff_t>(i), ta.end());
    out.insert(out.end(), tb.begin() + static_cast<std::ptrdiff_t>(j), tb.end());
    return BasicSparsePoly<C>::from_canonical(std::move(out));
}

template <std::signed_integral C>
BasicSparsePoly<C> sub(const BasicSparsePoly<C>& a, const BasicSparsePoly<C>& b) {
    return add(a, -b);
}

namespace detail {

template <std::signed_integral C>
BasicSparsePoly<C> collect_dense(const std::vector<C>& acc, Exponent offset) {
    return BasicSparsePoly<C>::from_dense(std::span<const C>(acc), offset);
}

// Merges the shifted copies small[i] * large; O(|small| |large| log |small|).
template <std::signed_integral C>
BasicSparsePoly<C> mul_merge(std::span<const Term<C>> small, std::span<const Term<C>> large) {
    struct Cursor {
        Exponent exponent;
        std::size_t row;
        std::size_t col;
    };
    auto later = [](const Cursor& x, const Cursor& y) {
        return x.exponent > y.exponent || (x.exponent == y.exponent && x.row > y.row);
    };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
    for (std::size_t r = 0; r < small.size(); ++r) {
        heap.push({checked_exponent_add(small[r].exponent, large[0].exponent), r, 0});
    }
    std::vector<Term<C>> out;
    out.reserve(small.size() * large.size());
    while (!heap.empty()) {
        Cursor cur = heap.top();
        heap.pop();
        C c = checked_mul(small[cur.row].coefficient, large[cur.col].coefficient);
        if (!out.empty() && out.back().exponent == cur.exponent) {
            out.back().coefficient = checked_add(out.back().coefficient, c);
        } else {
            if (!out.empty() && out.back().coefficient == 0) {
                out.pop_back();
            }
            out.push_back({cur.exponent, c});
        }
        if (cur.col + 1 < large.size()) {
            heap.push({small[cur.row].exponent + large[cur.col + 1].exponent, cur.row, cur.col + 1});
        }
    }
    if (!out.empty() && out.back().coefficient == 0) {
        out.pop_back();
    }
    return BasicSparsePoly<C>::from_canonical(std::move(out));
}

} // namespace detail

template <std::signed_integral C>
BasicSparsePoly<C> mul(const BasicSparsePoly<C>& a, const BasicSparsePoly<C>& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    auto ta = a.terms();
    auto tb = b.terms();
    const Exponent lo = detail::checked_exponent_add(a.tdeg(), b.tdeg());
    const Exponent hi = detail::checked_exponent_add(a.deg(), b.deg());
    const Exponent window = hi - lo + 1;
    const double products = static_cast<double>(ta.size()) * static_cast<double>(tb.size());

    if (window <= detail::kDenseWindowLimit && static_cast<double>(window) <= 4.0 * products) {
        std::vector<C> acc(window, C{0});
        for (const auto& x : ta) {
            const Exponent base = x.exponent - a.tdeg();
            for (const auto& y : tb) {
                C& cell = acc[base + (y.exponent - b.tdeg())];
                cell = detail::checked_add(cell, detail::checked_mul(x.coefficient, y.coefficient));
            }
        }
        return detail::collect_dense(acc, lo);
    }
    if (ta.size() <= tb.size()) {
        return detail::mul_merge<C>(ta, tb);
    }
    return detail::mul_merge<C>(tb, ta);
}

template <std::signed_integral C>
BasicSparsePoly<C> operator+(const BasicSparsePoly<C>& a, const BasicSparsePoly<C>& b) {
    return add(a, b);
}

template <std::signed_integral C>
BasicSparsePoly<C> operator-(const BasicSparsePoly<C>& a, const BasicSparsePoly<C>& b) {
    return sub(a, b);
}

template <std::signed_integral C>
BasicSparsePoly<C> operator*(const BasicSparsePoly<C>& a, const BasicSparsePoly<C>& b) {
    return mul(a, b);
}

/// f(x^m).
template <std::signed_integral C>
BasicSparsePoly<C> compose_power(const BasicSparsePoly<C>& f, Exponent m) {
    if (m == 0) {
        throw InputError("compose_power requires m >= 1");
    }
    std::vector<Term<C>> out(f.terms().begin(), f.terms().end());
    for (auto& t : out) {
        t.exponent = detail::checked_exponent_mul(t.exponent, m);
    }
    return BasicSparsePoly<C>::from_canonical(std::move(out));
}

/**
 * Quotient of num by x^k - 1, or nullopt when the division leaves a remainder.
 *
 * Uses the telescoping recurrence q_i = q_{i-k} - num_i. Within one residue
 * class mod k the quotient is constant between consecutive numerator terms,
 * so the quotient is emitted run by run and the cost is proportional to the
 * size of the result rather than to deg(num).
 */
template <std::signed_integral C>
std::optional<BasicSparsePoly<C>> try_div_binomial(const BasicSparsePoly<C>& num, Exponent k) {
    if (k == 0) {
        throw InputError("division by x^0 - 1 = 0");
    }
    if (num.is_zero()) {
        return BasicSparsePoly<C>{};
    }
    if (num.deg() < k) {
        return std::nullopt;
    }
    const Exponent qmax = num.deg() - k;

    std::vector<Term<C>> by_class(num.terms().begin(), num.terms().end());
    std::sort(by_class.begin(), by_class.end(), [k](const Term<C>& x, const Term<C>& y) {
        const Exponent rx = x.exponent % k;
        const Exponent ry = y.exponent % k;
        return rx != ry ? rx < ry : x.exponent < y.exponent;
    });

    std::vector<Term<C>> out;
    std::size_t i = 0;
    while (i < by_class.size()) {
        const Exponent residue = by_class[i].exponent % k;
        C running{0};
        for (; i < by_class.size() && by_class[i].exponent % k == residue; ++i) {
            running = detail::checked_add(running, by_class[i].coefficient);
            const bool last = i + 1 == by_class.size() || by_class[i + 1].exponent % k != residue;
            const Exponent stop = last ? qmax + 1 : std::min(by_class[i + 1].exponent, qmax + 1);
            if (running == 0) {
                continue;
            }
            const C q = detail::checked_neg(running);
            for (Exponent e = by_class[i].exponent; e < stop; e += k) {
                out.push_back({e, q});
            }
        }
        if (running != 0) {
            return std::nullopt;
        }
    }

    if (out.empty()) {
        return BasicSparsePoly<C>{};
    }
    const Exponent lo = num.tdeg();
    const Exponent window = qmax - lo + 1;
    double log_n = 1.0;
    for (std::size_t s = out.size(); s > 1; s >>= 1) {
        log_n += 1.0;
    }
    if (window <= detail::kDenseWindowLimit &&
        static_cast<double>(window) < static_cast<double>(out.size()) * log_n) {
        std::vector<C> acc(window, C{0});
        for (const auto& t : out) {
            acc[t.exponent - lo] = t.coefficient;
        }
        return detail::collect_dense(acc, lo);
    }
    std::sort(out.begin(), out.end(),
              [](const Term<C>& x, const Term<C>& y) { return x.exponent < y.exponent; });
    return BasicSparsePoly<C>::from_canonical(std::move(out));
}

/// num / (x^k - 1); throws NonExactDivision if it does not divide.
template <std::signed_integral C>
BasicSparsePoly<C> div_binomial(const BasicSparsePoly<C>& num, Exponent k) {
    auto q = try_div_binomial(num, k);
    if (!q) {
        throw NonExactDivision("x^" + std::to_string(k) + " - 1 does not divide the numerator");
    }
    return std::move(*q);
}

/**
 * Exact quotient num / den over the integers.
 *
 * Long division from the low end on a dense window spanning the numerator:
 * each quotient coefficient is the current remainder coefficient divided by
 * the trailing coefficient of den, which must divide it exactly.
 */
template <std::signed_integral C>
BasicSparsePoly<C> exact_div(const BasicSparsePoly<C>& num, const BasicSparsePoly<C>& den) {
    if (den.is_zero()) {
        throw ZeroPolynomial();
    }
    if (num.is_zero()) {
        return {};
    }
    if (num.deg() < den.deg() || num.tdeg() < den.tdeg() ||
        num.deg() - den.deg() < num.tdeg() - den.tdeg()) {
        throw NonExactDivision("divisor does not divide the numerator");
    }
    const Exponent lo = num.tdeg();
    const Exponent window = num.deg() - lo + 1;
    if (window > detail::kDenseWindowLimit) {
        throw LimitExceeded("exact_div window too large");
    }
    std::vector<C> rem(window, C{0});
    for (const auto& t : num.terms()) {
        rem[t.exponent - lo] = t.coefficient;
    }

    const Exponent dlo = den.tdeg();
    const C d0 = den.trailing_coefficient();
    const Exponent qlo = lo - dlo;
    const Exponent qlen = (num.deg() - den.deg()) - qlo + 1;
    std::vector<C> quot(qlen, C{0});
    for (Exponent i = 0; i < qlen; ++i) {
        const C r = rem[i];
        if (r == 0) {
            continue;
        }
        if (r % d0 != 0) {
            throw NonExactDivision("trailing coefficient of divisor does not divide remainder");
        }
        const C q = r / d0;
        quot[i] = q;
        for (const auto& t : den.terms()) {
            C& cell = rem[i + (t.exponent - dlo)];
            cell = detail::checked_sub(cell, detail::checked_mul(q, t.coefficient));
        }
    }
    for (Exponent i = qlen; i < window; ++i) {
        if (rem[i] != 0) {
            throw NonExactDivision("nonzero remainder");
        }
    }
    return detail::collect_dense(quot, qlo);
}

} // namespace cyclogap
