#pragma once

#include "cyclogap/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cyclogap {

inline constexpr std::uint64_t kDefaultLimitN = 10'000'000;

/// Sieve of Eratosthenes over [0, limit].
class PrimeSieve {
public:
    explicit PrimeSieve(std::uint64_t limit) : limit_(limit), composite_(limit + 1, false) {
        composite_[0] = true;
        if (limit >= 1) {
            composite_[1] = true;
        }
        for (std::uint64_t p = 2; p * p <= limit; ++p) {
            if (!composite_[p]) {
                for (std::uint64_t m = p * p; m <= limit; m += p) {
                    composite_[m] = true;
                }
            }
        }
        for (std::uint64_t p = 2; p <= limit; ++p) {
            if (!composite_[p]) {
                primes_.push_back(p);
            }
        }
    }

    std::uint64_t limit() const { return limit_; }

    bool is_prime(std::uint64_t n) const {
        if (n > limit_) {
            throw LimitExceeded(std::to_string(n) + " exceeds the sieve limit " + std::to_string(limit_));
        }
        return !composite_[n];
    }

    const std::vector<std::uint64_t>& primes() const { return primes_; }

    /// Primes p with lo <= p <= hi.
    std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) const {
        if (hi > limit_) {
            throw LimitExceeded(std::to_string(hi) + " exceeds the sieve limit " + std::to_string(limit_));
        }
        auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
        auto last = std::upper_bound(primes_.begin(), primes_.end(), hi);
        return first < last ? std::vector<std::uint64_t>(first, last) : std::vector<std::uint64_t>{};
    }

private:
    std::uint64_t limit_;
    std::vector<bool> composite_;
    std::vector<std::uint64_t> primes_;
};

/// Process-wide read-only sieve up to kDefaultLimitN, built on first use.
inline const PrimeSieve& shared_sieve() {
    static const PrimeSieve sieve(kDefaultLimitN);
    return sieve;
}

inline bool is_prime(std::uint64_t n) {
    if (n <= kDefaultLimitN) {
        return shared_sieve().is_prime(n);
    }
    if (n % 2 == 0) {
        return false;
    }
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline bool is_odd_prime(std::uint64_t n) {
    return n > 2 && is_prime(n);
}

/// Throws NotOddPrimes unless the arguments are odd primes in strictly increasing order.
inline void require_ascending_odd_primes(std::initializer_list<std::uint64_t> ps) {
    std::uint64_t prev = 0;
    for (auto p : ps) {
        if (!is_odd_prime(p)) {
            throw NotOddPrimes(std::to_string(p) + " is not an odd prime");
        }
        if (p <= prev) {
            throw NotOddPrimes("primes must be strictly increasing (" + std::to_string(prev) + " >= " +
                               std::to_string(p) + ")");
        }
        prev = p;
    }
}

struct PrimePower {
    std::uint64_t prime;
    unsigned multiplicity;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactoredIndex {
    std::uint64_t n = 1;
    std::vector<PrimePower> prime_factors;
    std::uint64_t radical = 1;
    bool is_squarefree = true;
    bool is_odd = true;
    std::uint64_t totient = 1;

    /// deg(Psi_n) = n - phi(n).
    std::uint64_t psi_degree() const { return n - totient; }

    std::vector<std::uint64_t> distinct_primes() const {
        std::vector<std::uint64_t> out;
        for (const auto& pp : prime_factors) {
            out.push_back(pp.prime);
        }
        return out;
    }
};

/// Trial division; n must lie in [1, limit].
inline FactoredIndex factor(std::uint64_t n, std::uint64_t limit = kDefaultLimitN) {
    if (n == 0) {
        throw InputError("index must be positive");
    }
    if (n > limit) {
        throw LimitExceeded("n = " + std::to_string(n) + " exceeds the configured limit " + std::to_string(limit));
    }
    FactoredIndex f;
    f.n = n;
    f.is_odd = (n % 2) == 1;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (rest % p != 0) {
            continue;
        }
        unsigned m = 0;
        while (rest % p == 0) {
            rest /= p;
            ++m;
        }
        f.prime_factors.push_back({p, m});
    }
    if (rest > 1) {
        f.prime_factors.push_back({rest, 1});
    }
    for (const auto& pp : f.prime_factors) {
        f.radical *= pp.prime;
        f.is_squarefree = f.is_squarefree && pp.multiplicity == 1;
        std::uint64_t phi_part = pp.prime - 1;
        for (unsigned i = 1; i < pp.multiplicity; ++i) {
            phi_part *= pp.prime;
        }
        f.totient *= phi_part;
    }
    return f;
}

inline std::uint64_t totient(std::uint64_t n) {
    return factor(n, n).totient;
}

/// A squarefree divisor d of n together with mu(d).
struct SignedDivisor {
    std::uint64_t divisor;
    int mobius;
};

/// All squarefree divisors of n in ascending order, each with its Moebius value.
inline std::vector<SignedDivisor> squarefree_divisors(const FactoredIndex& f) {
    std::vector<SignedDivisor> out{{1, 1}};
    for (const auto& pp : f.prime_factors) {
        const std::size_t count = out.size();
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back({out[i].divisor * pp.prime, -out[i].mobius});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SignedDivisor& a, const SignedDivisor& b) { return a.divisor < b.divisor; });
    return out;
}

namespace detail {

inline std::uint64_t parse_decimal(std::string_view s) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError("\"" + std::string(s) + "\" is not a decimal natural number");
    }
    return v;
}

} // namespace detail

/// Reads an index given as a decimal ("105") or as a product of primes ("3*5*7").
inline std::uint64_t parse_index(std::string_view s, std::uint64_t limit = kDefaultLimitN) {
    const auto trim = [](std::string_view v) {
        const auto a = v.find_first_not_of(" \t");
        const auto b = v.find_last_not_of(" \t");
        return a == std::string_view::npos ? std::string_view{} : v.substr(a, b - a + 1);
    };
    s = trim(s);
    if (s.find('*') == std::string_view::npos) {
        const auto n = detail::parse_decimal(s);
        if (n == 0) {
            throw InputError("index must be positive");
        }
        if (n > limit) {
            throw LimitExceeded("n = " + std::to_string(n) + " exceeds the configured limit " + std::to_string(limit));
        }
        return n;
    }
    std::uint64_t n = 1;
    while (true) {
        const auto star = s.find('*');
        const auto piece = trim(s.substr(0, star));
        const auto p = detail::parse_decimal(piece);
        if (p > limit || !is_prime(p)) {
            throw InputError(std::string(piece) + " is not a prime factor");
        }
        if (__builtin_mul_overflow(n, p, &n) || n > limit) {
            throw LimitExceeded("product " + std::string(s) + " exceeds the configured limit " + std::to_string(limit));
        }
        if (star == std::string_view::npos) {
            break;
        }
        s = s.substr(star + 1);
    }
    return n;
}

} // namespace cyclogap
