#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "nnst/error.hpp"
#include "nnst/report.hpp"

using namespace nnst;

namespace {

Report sample_report() {
    Report r;
    r.config.n_list = {100, 200};
    r.config.p_list = {{0.25, "1/4"}, {0.4, "1/2.5"}};
    r.config.r = 0.5;
    r.config.eta = EtaSpec::ar(0.4);
    r.config.alt = AlternativeConfig{3.0, std::nullopt, RhoRule::h_direct};
    r.config.reps = 10;
    for (std::size_t n : r.config.n_list)
        for (const auto& p : r.config.p_list) {
            for (double level : r.config.levels)
                r.cells.push_back({n, p.label, p.value, level, 0.3, 0.1, 3, 10});
            r.failures.push_back({n, p.label, 0});
        }
    r.runtime_seconds = 1.25;
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t k = 0;
    for (char c : s) k += c == '\n';
    return k;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
    const auto r = sample_report();
    const auto back = parse_report_json(emit_report(r, ReportFormat::json, {true}));
    EXPECT_EQ(back, r);
    auto no_rt = r;
    no_rt.runtime_seconds = 0.0;
    EXPECT_EQ(parse_report_json(emit_report(r, ReportFormat::json)), no_rt);
    EXPECT_EQ(emit_report(r, ReportFormat::json).find("runtime_seconds"), std::string::npos);
}

TEST(Report, JsonErrors) {
    EXPECT_THROW((void)parse_report_json("{"), ParseError);
    EXPECT_THROW((void)parse_report_json(R"({"schema":"other"})"), ParseError);
}

TEST(Report, Csv) {
    const auto csv = emit_report(sample_report(), ReportFormat::csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,p_label,p,level,rate,se,rejections,valid");
    EXPECT_EQ(count_lines(csv), 1u + 8u);
    EXPECT_NE(csv.find("100,1/4,0.25,0.05,0.3,0.1,3,10\n"), std::string::npos);
}

TEST(Report, Markdown) {
    const auto md = emit_report(sample_report(), ReportFormat::markdown);
    EXPECT_NE(md.find("### Nominal size 5%"), std::string::npos);
    EXPECT_NE(md.find("### Nominal size 1%"), std::string::npos);
    EXPECT_NE(md.find("| n | h = n^-1/4 | h = n^-1/2.5 |"), std::string::npos);
    EXPECT_NE(md.find("| 200 | 0.300 | 0.300 |"), std::string::npos);
}

TEST(Report, FormatNames) {
    EXPECT_EQ(parse_report_format("md"), ReportFormat::markdown);
    EXPECT_THROW((void)parse_report_format("xml"), InvalidSpec);
    EXPECT_EQ(parse_eta_mode("ar"), EtaMode::ar);
    EXPECT_THROW((void)parse_eta_mode("garch"), InvalidSpec);
}
