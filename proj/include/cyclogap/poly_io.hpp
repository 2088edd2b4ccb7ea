#pragma once

// Text and JSON forms of a SparsePoly.
//
//   text: "1 - x + x^3 - 2*x^5", ascending exponents, "0" for the zero polynomial
//   json: {"terms":[[0,1],[1,-1],[3,1],[5,-2]]}

#include "cyclogap/errors.hpp"
#include "cyclogap/sparse_poly.hpp"

#include "json.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <type_traits>
#include <string>
#include <string_view>
#include <vector>

namespace cyclogap {

template <std::signed_integral C>
std::string to_text(const BasicSparsePoly<C>& f) {
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        // Magnitude via unsigned negation so INT64_MIN renders correctly.
        using U = std::make_unsigned_t<C>;
        const bool negative = t.coefficient < 0;
        const U magnitude = negative ? U(0) - static_cast<U>(t.coefficient) : static_cast<U>(t.coefficient);
        if (first) {
            if (negative) {
                out += '-';
            }
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        if (t.exponent == 0) {
            out += std::to_string(magnitude);
            continue;
        }
        if (magnitude != 1) {
            out += std::to_string(magnitude);
            out += '*';
        }
        out += 'x';
        if (t.exponent != 1) {
            out += '^';
            out += std::to_string(t.exponent);
        }
    }
    return out;
}

namespace detail {

class TextPolyParser {
public:
    explicit TextPolyParser(std::string_view s) : s_(s) {}

    SparsePoly parse() {
        std::vector<Term<std::int64_t>> terms;
        skip_ws();
        if (pos_ == s_.size()) {
            fail("empty polynomial text");
        }
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = s_[pos_++] == '-';
            skip_ws();
        }
        terms.push_back(parse_term(negative));
        skip_ws();
        while (pos_ < s_.size()) {
            const char op = s_[pos_];
            if (op != '+' && op != '-') {
                fail("expected '+' or '-'");
            }
            ++pos_;
            skip_ws();
            terms.push_back(parse_term(op == '-'));
            skip_ws();
        }
        return SparsePoly::from_terms(std::move(terms));
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

    std::uint64_t parse_unsigned() {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{}) {
            fail("expected a non-negative integer");
        }
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    Term<std::int64_t> parse_term(bool negative) {
        std::uint64_t magnitude = 1;
        bool has_number = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            magnitude = parse_unsigned();
            has_number = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'x') {
                    fail("expected 'x' after '*'");
                }
            } else {
                return {0, signed_coefficient(magnitude, negative)};
            }
        }
        if (peek() != 'x') {
            fail(has_number ? "expected 'x'" : "expected a term");
        }
        ++pos_;
        Exponent e = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            e = parse_unsigned();
        }
        return {e, signed_coefficient(magnitude, negative)};
    }

    std::int64_t signed_coefficient(std::uint64_t magnitude, bool negative) const {
        constexpr auto max = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
        if (negative) {
            if (magnitude > max + 1) {
                throw OverflowDetected("coefficient out of range");
            }
            return magnitude == max + 1 ? std::numeric_limits<std::int64_t>::min()
                                        : -static_cast<std::int64_t>(magnitude);
        }
        if (magnitude > max) {
            throw OverflowDetected("coefficient out of range");
        }
        return static_cast<std::int64_t>(magnitude);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the text form. Terms may come in any order and repeat; the result is canonical.
inline SparsePoly parse_text(std::string_view s) {
    return detail::TextPolyParser(s).parse();
}

inline nlohmann::ordered_json to_json(const SparsePoly& f) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : f.terms()) {
        terms.push_back({t.exponent, t.coefficient});
    }
    nlohmann::ordered_json j;
    j["terms"] = std::move(terms);
    return j;
}

inline std::string to_json_string(const SparsePoly& f) {
    return to_json(f).dump();
}

/// Reads {"terms": [[e, c], ...]}. Exponents must be strictly ascending and coefficients nonzero.
inline SparsePoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
        throw ParseError("polynomial JSON must be an object with a \"terms\" array");
    }
    std::vector<Term<std::int64_t>> terms;
    for (const auto& pair : j.at("terms")) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
            !pair[1].is_number_integer()) {
            throw ParseError("each term must be [exponent, coefficient] with integer entries");
        }
        terms.push_back({pair[0].get<Exponent>(), pair[1].get<std::int64_t>()});
    }
    try {
        return SparsePoly::from_canonical(std::move(terms));
    } catch (const InvariantViolation&) {
        throw ParseError("terms must have ascending exponents and nonzero coefficients");
    }
}

inline SparsePoly parse_json(std::string_view s) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return poly_from_json(j);
}

/// Accepts either form, deciding by the first non-blank character.
inline SparsePoly parse_poly(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && s[first] == '{') {
        return parse_json(s);
    }
    return parse_text(s);
}

} // namespace cyclogap
