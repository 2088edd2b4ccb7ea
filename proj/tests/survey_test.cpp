#include "cyclogap/survey.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cyclogap;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cyclogap_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + name);
}

} // namespace

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_violations(3), (std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 7}}));
    const auto v5 = enumerate_violations(5);
    EXPECT_EQ(v5.size(), 12u);
    for (const auto& [p2, p3] : v5) {
        EXPECT_TRUE(p2 == 7 || p2 == 11 || p2 == 13);
        EXPECT_LT(p3, 25u);
    }
    EXPECT_TRUE(std::is_sorted(v5.begin(), v5.end()));
    EXPECT_EQ(enumerate_violations(7).size(), 40u);
    EXPECT_THROW(enumerate_violations(9), NotOddPrimes);
}

TEST(Classify, SmallRows) {
    auto row = classify(3);
    EXPECT_EQ(std::tie(row.total, row.v1, row.v2, row.v3), std::make_tuple(1u, 1u, 0u, 0u));
    row = classify(5);
    EXPECT_EQ(std::tie(row.total, row.v1, row.v2, row.v3), std::make_tuple(12u, 12u, 0u, 0u));
    row = classify(7);
    EXPECT_EQ(std::tie(row.total, row.v1, row.v2, row.v3), std::make_tuple(40u, 39u, 0u, 1u));
    row = classify(13);
    EXPECT_EQ(std::tie(row.total, row.v1, row.v2, row.v3), std::make_tuple(252u, 244u, 6u, 2u));
}

TEST(Classify, RecordsAreConsistent) {
    const auto row = classify(11);
    EXPECT_EQ(row.total, row.v1 + row.v2 + row.v3);
    for (const auto& r : row.records) {
        EXPECT_FALSE(r.eq2);
        EXPECT_LT(r.p2, 4 * (r.p1 - 1));
        EXPECT_LT(r.p3, r.p1 * r.p1);
        EXPECT_LE(r.lower, static_cast<std::int64_t>(r.g));
        EXPECT_LT(static_cast<std::int64_t>(r.g), r.upper_exclusive);
        EXPECT_EQ(r.classification, classify_gap(r.g, r.lambda, r.p1));
    }
}

TEST(Classify, IndependentOfThreadCount) {
    SurveyOptions one;
    one.threads = 1;
    SurveyOptions four;
    four.threads = 4;
    EXPECT_EQ(classify(11, one).records, classify(11, four).records);
}

TEST(Classify, PrecedencePutsLambdaFirst) {
    EXPECT_EQ(classify_gap(4, 4, 5), Classification::V1);
    EXPECT_EQ(classify_gap(4, 3, 5), Classification::V2);
    EXPECT_EQ(classify_gap(7, 3, 5), Classification::V3);
}

TEST(Classify, Budget) {
    SurveyOptions o;
    o.budget_p1 = 7;
    EXPECT_THROW(classify(11, o), BudgetExceeded);
    EXPECT_NO_THROW(classify(7, o));
    EXPECT_GT(estimated_work(11), estimated_work(7));
}

TEST(Export, EmptyCsvIsHeaderOnly) {
    std::ostringstream out;
    write_csv(out, {});
    EXPECT_EQ(out.str(), std::string(kSurveyCsvHeader) + "\n");
}

TEST(Export, CsvRowForP1Three) {
    std::ostringstream out;
    write_csv(out, classify(3).records);
    EXPECT_EQ(out.str(), std::string(kSurveyCsvHeader) + "\n3,5,7,105,13,13,13,85,V1,false,false,false,false,true\n");
}

TEST(Export, SortedOutput) {
    auto records = classify(5).records;
    std::reverse(records.begin(), records.end());
    std::ostringstream a;
    std::ostringstream b;
    write_csv(a, records);
    write_csv(b, classify(5).records);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Export, JsonRoundTrip) {
    const auto records = classify(7).records;
    std::ostringstream out;
    write_json(out, records);
    std::istringstream in(out.str());
    EXPECT_EQ(read_json_records(in), records);
}

TEST(Export, Files) {
    const auto records = classify(5).records;
    const auto csv = temp_file("v5.csv");
    const auto json = temp_file("v5.json");
    export_records(records, ExportFormat::Csv, csv.string());
    export_records(records, ExportFormat::Json, json.string());
    std::ostringstream expect_csv;
    write_csv(expect_csv, records);
    EXPECT_EQ(slurp(csv), expect_csv.str());
    std::ifstream in(json);
    EXPECT_EQ(read_json_records(in), records);
    std::filesystem::remove(csv);
    std::filesystem::remove(json);
    EXPECT_THROW(export_records(records, ExportFormat::Csv, "/nonexistent-dir/x.csv"), IoError);
}

TEST(Export, MalformedJson) {
    std::istringstream bad("[{\"p1\": 3}]");
    EXPECT_THROW(read_json_records(bad), ParseError);
    std::istringstream garbage("not json");
    EXPECT_THROW(read_json_records(garbage), ParseError);
}
