#pragma once

/**
 * @file survey.hpp
 * @brief Census of the prime pairs (p2, p3) that violate
 * "p2 >= 4(p1-1) or p3 >= p1^2" for a fixed p1, with each Psi_{p1 p2 p3}
 * classified by how its brute-force gap compares to the closed forms:
 *
 *   V1  g == lambda
 *   V2  g == p1 - 1 and g != lambda
 *   V3  anything else
 */

#include "cyclogap/errors.hpp"
#include "cyclogap/number_theory.hpp"
#include "cyclogap/parallel.hpp"
#include "cyclogap/theorems.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cyclogap {

enum class Classification { V1, V2, V3 };

inline std::string to_string(Classification c) {
    switch (c) {
    case Classification::V1:
        return "V1";
    case Classification::V2:
        return "V2";
    case Classification::V3:
        return "V3";
    }
    return "?";
}

inline Classification classification_from_string(const std::string& s) {
    if (s == "V1") {
        return Classification::V1;
    }
    if (s == "V2") {
        return Classification::V2;
    }
    if (s == "V3") {
        return Classification::V3;
    }
    throw ParseError("unknown classification \"" + s + "\"");
}

struct SurveyRecord {
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t p3 = 0;
    std::uint64_t n = 0;
    std::uint64_t g = 0;
    std::int64_t lambda = 0;
    std::int64_t lower = 0;
    std::int64_t upper_exclusive = 0;
    Classification classification = Classification::V3;
    bool eq2 = false;
    bool C1 = false;
    bool C2 = false;
    bool D1 = false;
    bool D2 = false;

    friend bool operator==(const SurveyRecord&, const SurveyRecord&) = default;
};

inline Classification classify_gap(std::uint64_t g, std::int64_t lambda, std::uint64_t p1) {
    if (static_cast<std::int64_t>(g) == lambda) {
        return Classification::V1;
    }
    if (g == p1 - 1) {
        return Classification::V2;
    }
    return Classification::V3;
}

inline SurveyRecord to_survey_record(const VerificationRecord& v) {
    SurveyRecord r;
    r.p1 = v.p1;
    r.p2 = v.p2;
    r.p3 = v.p3;
    r.n = v.n;
    r.g = v.g;
    r.lambda = v.lambda;
    r.lower = v.lower;
    r.upper_exclusive = v.upper_exclusive;
    r.classification = classify_gap(v.g, v.lambda, v.p1);
    r.eq2 = v.eq2;
    r.C1 = v.C1;
    r.C2 = v.C2;
    r.D1 = v.D1;
    r.D2 = v.D2;
    return r;
}

/// Prime pairs p1 < p2 < p3 with p2 < 4(p1-1) and p3 < p1^2, in lexicographic order.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> enumerate_violations(std::uint64_t p1) {
    if (!is_odd_prime(p1)) {
        throw NotOddPrimes(std::to_string(p1) + " is not an odd prime");
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    const auto& sieve = shared_sieve();
    const std::uint64_t p3_bound = p1 * p1;
    for (auto p2 : sieve.primes_between(p1 + 1, 4 * (p1 - 1) - 1)) {
        for (auto p3 : sieve.primes_between(p2 + 1, p3_bound - 1)) {
            out.emplace_back(p2, p3);
        }
    }
    return out;
}

struct SurveyOptions {
    unsigned threads = default_thread_count();
    /// Largest p1 the survey will run for.
    std::uint64_t budget_p1 = 23;
};

struct FrequencyRow {
    std::uint64_t p1 = 0;
    std::size_t total = 0;
    std::size_t v1 = 0;
    std::size_t v2 = 0;
    std::size_t v3 = 0;
    std::vector<SurveyRecord> records;
};

/// Sum of n log2 n over the triples of V_{p1}; the cost model of a survey run.
inline double estimated_work(std::uint64_t p1) {
    double w = 0;
    for (const auto& [p2, p3] : enumerate_violations(p1)) {
        const double n = static_cast<double>(p1 * p2 * p3);
        w += n * std::log2(n);
    }
    return w;
}

inline FrequencyRow classify(std::uint64_t p1, const SurveyOptions& options = {}) {
    if (!is_odd_prime(p1)) {
        throw NotOddPrimes(std::to_string(p1) + " is not an odd prime");
    }
    if (p1 > options.budget_p1) {
        throw BudgetExceeded("p1 = " + std::to_string(p1) + " is above the survey budget p1 <= " +
                             std::to_string(options.budget_p1));
    }
    const auto pairs = enumerate_violations(p1);
    FrequencyRow row;
    row.p1 = p1;
    row.records = parallel_map(pairs, options.threads, [p1](const std::pair<std::uint64_t, std::uint64_t>& pair) {
        return to_survey_record(verify_triple(p1, pair.first, pair.second));
    });
    row.total = row.records.size();
    for (const auto& r : row.records) {
        switch (r.classification) {
        case Classification::V1:
            ++row.v1;
            break;
        case Classification::V2:
            ++row.v2;
            break;
        case Classification::V3:
            ++row.v3;
            break;
        }
    }
    return row;
}

enum class ExportFormat { Csv, Json };

inline constexpr const char* kSurveyCsvHeader = "p1,p2,p3,n,g,lambda,lower,upper_exclusive,classification,eq2,C1,C2,D1,D2";

namespace detail {

inline void sort_records(std::vector<SurveyRecord>& records) {
    std::sort(records.begin(), records.end(), [](const SurveyRecord& a, const SurveyRecord& b) {
        return std::tie(a.p1, a.p2, a.p3) < std::tie(b.p1, b.p2, b.p3);
    });
}

inline const char* flag(bool b) {
    return b ? "true" : "false";
}

} // namespace detail

inline void write_csv(std::ostream& out, std::vector<SurveyRecord> records) {
    detail::sort_records(records);
    out << kSurveyCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.p1 << ',' << r.p2 << ',' << r.p3 << ',' << r.n << ',' << r.g << ',' << r.lambda << ',' << r.lower
            << ',' << r.upper_exclusive << ',' << to_string(r.classification) << ',' << detail::flag(r.eq2) << ','
            << detail::flag(r.C1) << ',' << detail::flag(r.C2) << ',' << detail::flag(r.D1) << ','
            << detail::flag(r.D2) << '\n';
    }
}

inline nlohmann::ordered_json to_json(const SurveyRecord& r) {
    nlohmann::ordered_json j;
    j["p1"] = r.p1;
    j["p2"] = r.p2;
    j["p3"] = r.p3;
    j["n"] = r.n;
    j["g"] = r.g;
    j["lambda"] = r.lambda;
    j["lower"] = r.lower;
    j["upper_exclusive"] = r.upper_exclusive;
    j["classification"] = to_string(r.classification);
    j["eq2"] = r.eq2;
    j["C1"] = r.C1;
    j["C2"] = r.C2;
    j["D1"] = r.D1;
    j["D2"] = r.D2;
    return j;
}

inline void write_json(std::ostream& out, std::vector<SurveyRecord> records) {
    detail::sort_records(records);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        arr.push_back(to_json(r));
    }
    out << arr.dump(2) << '\n';
}

inline std::vector<SurveyRecord> survey_records_from_json(const nlohmann::json& j) {
    if (!j.is_array()) {
        throw ParseError("survey JSON must be an array");
    }
    std::vector<SurveyRecord> out;
    for (const auto& o : j) {
        SurveyRecord r;
        try {
            r.p1 = o.at("p1").get<std::uint64_t>();
            r.p2 = o.at("p2").get<std::uint64_t>();
            r.p3 = o.at("p3").get<std::uint64_t>();
            r.n = o.at("n").get<std::uint64_t>();
            r.g = o.at("g").get<std::uint64_t>();
            r.lambda = o.at("lambda").get<std::int64_t>();
            r.lower = o.at("lower").get<std::int64_t>();
            r.upper_exclusive = o.at("upper_exclusive").get<std::int64_t>();
            r.classification = classification_from_string(o.at("classification").get<std::string>());
            r.eq2 = o.at("eq2").get<bool>();
            r.C1 = o.at("C1").get<bool>();
            r.C2 = o.at("C2").get<bool>();
            r.D1 = o.at("D1").get<bool>();
            r.D2 = o.at("D2").get<bool>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed survey record: ") + e.what());
        }
        out.push_back(r);
    }
    return out;
}

inline std::vector<SurveyRecord> read_json_records(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return survey_records_from_json(j);
}

/// Writes records sorted by (p1, p2, p3).
inline void export_records(const std::vector<SurveyRecord>& records, ExportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    if (format == ExportFormat::Csv) {
        write_csv(out, records);
    } else {
        write_json(out, records);
    }
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

} // namespace cyclogap
