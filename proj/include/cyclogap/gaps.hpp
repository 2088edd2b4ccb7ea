#pragma once

#include "cyclogap/errors.hpp"
#include "cyclogap/sparse_poly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyclogap {

/// Exponents of f, their consecutive differences, and the largest one.
struct GapProfile {
    std::vector<Exponent> exponents;
    std::vector<Exponent> diffs;
    Exponent max_gap = 0;
    /// Lowest pair (e_i, e_{i+1}) achieving max_gap; empty for a monomial.
    std::optional<std::pair<Exponent, Exponent>> argmax;
};

template <std::signed_integral C>
GapProfile gap_profile(const BasicSparsePoly<C>& f) {
    if (f.is_zero()) {
        throw ZeroPolynomial();
    }
    GapProfile p;
    p.exponents = f.exponents();
    p.diffs.reserve(p.exponents.size() - 1);
    for (std::size_t i = 0; i + 1 < p.exponents.size(); ++i) {
        const Exponent d = p.exponents[i + 1] - p.exponents[i];
        p.diffs.push_back(d);
        if (d > p.max_gap) {
            p.max_gap = d;
            p.argmax = std::make_pair(p.exponents[i], p.exponents[i + 1]);
        }
    }
    return p;
}

/// g(f): the largest difference of consecutive exponents, 0 for a monomial.
template <std::signed_integral C>
Exponent max_gap(const BasicSparsePoly<C>& f) {
    if (f.is_zero()) {
        throw ZeroPolynomial();
    }
    Exponent g = 0;
    auto t = f.terms();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        g = std::max(g, t[i + 1].exponent - t[i].exponent);
    }
    return g;
}

enum class DiagramFormat { Ascii, Svg };

inline constexpr std::uint64_t kDefaultRenderLimit = 10'000;
inline constexpr int kSvgCellWidth = 10;
inline constexpr int kSvgCellHeight = 20;

/**
 * One cell per exponent 0..deg(f), filled when the exponent occurs.
 *
 * ASCII uses '#' and '.'. SVG emits one black <rect> per occupied cell on a
 * white background; attributes are always written in the same order.
 */
template <std::signed_integral C>
std::string render_diagram(const BasicSparsePoly<C>& f, DiagramFormat format,
                           std::uint64_t limit = kDefaultRenderLimit) {
    if (f.is_zero()) {
        throw ZeroPolynomial();
    }
    const std::uint64_t cells = f.deg() + 1;
    if (cells > limit) {
        throw RenderLimitExceeded("diagram needs " + std::to_string(cells) + " cells, limit is " +
                                  std::to_string(limit));
    }
    if (format == DiagramFormat::Ascii) {
        std::string out(cells, '.');
        for (const auto& t : f.terms()) {
            out[t.exponent] = '#';
        }
        return out;
    }
    const auto width = std::to_string(cells * kSvgCellWidth);
    const auto height = std::to_string(kSvgCellHeight);
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + width + "\" height=\"" + height +
                      "\" viewBox=\"0 0 " + width + " " + height + "\" style=\"background:white\">\n";
    for (const auto& t : f.terms()) {
        out += "<rect x=\"" + std::to_string(t.exponent * kSvgCellWidth) + "\" y=\"0\" width=\"" +
               std::to_string(kSvgCellWidth) + "\" height=\"" + height + "\" fill=\"black\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace cyclogap
