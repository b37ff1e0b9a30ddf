#include <gtest/gtest.h>

#include "netra/fixtures.hpp"
#include "netra/report.hpp"
#include "support.hpp"

namespace netra {
namespace {

using test::error_kind;

MetricsReport end_to_end_report() {
    Scenario sc;
    sc.name = "e2e";
    sc.trace.generator = GeneratorSpec{};
    sc.battery_wh = 74.0;
    return run(sc, fixtures::end_to_end()).report;
}

TEST(Report, JsonRoundTrip) {
    const MetricsReport r = end_to_end_report();
    const std::string text = to_json(r);
    EXPECT_EQ(to_json(report_from_json(text)), text);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_NE(text.find("\"format\": \"netra-report\""), std::string::npos);
}

TEST(Report, EmptyRatesSerialiseAsNull) {
    MetricsReport r;
    const std::string text = to_json(r);
    EXPECT_NE(text.find("\"detection_rate\": null"), std::string::npos);
    EXPECT_FALSE(report_from_json(text).detection_rate);
}

TEST(Report, MultiReportDocument) {
    Scenario sc;
    sc.trace.generator = GeneratorSpec{};
    const std::vector<double> taus{0.45, 0.65};
    const auto reports = sweep(sc, fixtures::activation_table(), taus);
    const std::string text = to_json(std::span<const MetricsReport>(reports));
    const auto back = reports_from_json(text);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(to_json(back[1]), to_json(reports[1]));
    EXPECT_EQ(reports_from_json(to_json(reports[0])).size(), 1u);
}

TEST(Report, Errors) {
    EXPECT_EQ(error_kind([] { report_from_json("{not json"); }), ErrorKind::Parse);
    EXPECT_EQ(error_kind([] { report_from_json(R"({"format":"other","version":1,"report":{}})"); }),
              ErrorKind::Version);
    EXPECT_EQ(error_kind([] { report_from_json(R"({"format":"netra-report","version":9,"report":{}})"); }),
              ErrorKind::Version);
    EXPECT_EQ(error_kind([] { report_from_json(R"({"format":"netra-report","version":1,"report":{}})"); }),
              ErrorKind::Parse);
}

TEST(Report, TableMentionsKeyFigures) {
    const std::string table = render_table(end_to_end_report());
    EXPECT_NE(table.find("113"), std::string::npos);
    EXPECT_NE(table.find("91.2"), std::string::npos);
    EXPECT_NE(table.find("100.0"), std::string::npos);
}

TEST(Report, SweepTableOneRowPerThreshold) {
    Scenario sc;
    sc.trace.generator = GeneratorSpec{};
    const std::vector<double> taus{0.45, 0.55, 0.65};
    const auto reports = sweep(sc, fixtures::activation_table(), taus);
    const std::string table = render_sweep_table(reports);
    EXPECT_NE(table.find("0.45"), std::string::npos);
    EXPECT_NE(table.find("0.65"), std::string::npos);
    EXPECT_GE(std::count(table.begin(), table.end(), '\n'), 4);
}

}  // namespace
}  // namespace netra
