#pragma once

// Dense reference implementations used to cross-check the sparse library.
// Nothing here calls into cyclogap: Phi_n comes from the recursion
// x^n - 1 = prod_{d | n} Phi_d, one schoolbook long division at a time.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

/// Coefficient i is the coefficient of x^i.
using Dense = std::vector<std::int64_t>;

inline void trim(Dense& f) {
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

inline Dense mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Dense r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

/// Long division from the top; the divisor must be monic and divide exactly.
inline Dense div(Dense num, const Dense& den) {
    if (den.empty() || den.back() != 1) {
        throw std::logic_error("oracle::div needs a monic divisor");
    }
    if (num.size() < den.size()) {
        throw std::logic_error("oracle::div: divisor has larger degree");
    }
    Dense q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        const std::int64_t c = num[i + den.size() - 1];
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j) {
            num[i + j] -= c * den[j];
        }
    }
    for (auto c : num) {
        if (c != 0) {
            throw std::logic_error("oracle::div: nonzero remainder");
        }
    }
    return q;
}

inline Dense binomial(std::size_t n) {
    Dense f(n + 1, 0);
    f[0] = -1;
    f[n] = 1;
    return f;
}

class Cyclotomics {
public:
    const Dense& phi(std::uint64_t n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) {
            return it->second;
        }
        Dense den{1};
        for (std::uint64_t d = 1; d < n; ++d) {
            if (n % d == 0) {
                den = mul(den, phi(d));
            }
        }
        return cache_.emplace(n, div(binomial(n), den)).first->second;
    }

    Dense psi(std::uint64_t n) { return div(binomial(n), phi(n)); }

private:
    std::map<std::uint64_t, Dense> cache_;
};

inline std::vector<std::pair<std::uint64_t, std::int64_t>> terms(const Dense& f) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != 0) {
            out.emplace_back(i, f[i]);
        }
    }
    return out;
}

inline std::uint64_t max_gap(const Dense& f) {
    std::uint64_t g = 0;
    bool seen = false;
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) {
            continue;
        }
        if (seen && i - last > g) {
            g = i - last;
        }
        seen = true;
        last = i;
    }
    return g;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::uint64_t totient(std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            r -= r / p;
        }
    }
    if (n > 1) {
        r -= r / n;
    }
    return r;
}

} // namespace oracle
