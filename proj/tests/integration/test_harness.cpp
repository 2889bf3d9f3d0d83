#include <gtest/gtest.h>

#include <cmath>

#include "nnst/error.hpp"
#include "nnst/harness.hpp"
#include "nnst/parallel.hpp"
#include "nnst/report.hpp"
#include "nnst/reproduce.hpp"

using namespace nnst;

namespace {

ExperimentConfig small(std::size_t reps = 60) {
    ExperimentConfig c;
    c.n_list = {60, 120};
    c.r = 0.5;
    c.eta = EtaSpec::ar(0.4);
    c.reps = reps;
    c.base_seed = 99;
    return c;
}

}  // namespace

TEST(Harness, DeterministicAcrossWorkerCounts) {
    const auto cfg = small();
    set_worker_count(1);
    const auto a = run_experiment(cfg);
    set_worker_count(8);
    const auto b = run_experiment(cfg);
    set_worker_count(1);
    EXPECT_EQ(emit_report(a, ReportFormat::json), emit_report(b, ReportFormat::json));
    EXPECT_EQ(a.cells, b.cells);
}

TEST(Harness, CellLayout) {
    const auto r = run_experiment(small(20));
    EXPECT_EQ(r.cells.size(), 2u * 3u * 2u);
    EXPECT_EQ(r.cells[0].n, 60u);
    EXPECT_EQ(r.cells[0].p_label, "1/4");
    EXPECT_EQ(r.cells[0].level, 0.05);
    EXPECT_EQ(r.cells[1].level, 0.01);
    for (const auto& c : r.cells) {
        EXPECT_EQ(c.valid, 20u);
        EXPECT_LE(c.rejections, c.valid);
        EXPECT_NEAR(c.se, std::sqrt(c.rate * (1 - c.rate) / c.valid), 1e-15);
    }
    for (const auto& c : r.cells)
        if (c.level == 0.01) EXPECT_LE(c.rejections, r.cell(c.n, c.p_label, 0.05).rejections);
}

TEST(Harness, SingleReplicationRates) {
    const auto r = run_experiment(small(1));
    for (const auto& c : r.cells) EXPECT_TRUE(c.rate == 0.0 || c.rate == 1.0);
}

TEST(Harness, ZeroRhoPowerEqualsSize) {
    auto cfg = small(40);
    const auto size = run_size(cfg);
    cfg.alt = AlternativeConfig{3.0, 0.0, RhoRule::h_inverse};
    const auto power = run_power(cfg);
    EXPECT_EQ(size.cells, power.cells);
}

TEST(Harness, PowerExceedsSizeForStrongAlternative) {
    auto cfg = small(100);
    cfg.n_list = {200};
    cfg.alt = AlternativeConfig{3.0, std::nullopt, RhoRule::h_direct};
    const auto power = run_power(cfg);
    EXPECT_GT(power.cell(200, "1/4", 0.05).rate, 0.5);
}

TEST(Harness, ReplicationSeedDistinct) {
    EXPECT_NE(replication_seed(1, 100, 0, 0), replication_seed(1, 100, 0, 1));
    EXPECT_NE(replication_seed(1, 100, 0, 0), replication_seed(1, 100, 1, 0));
    EXPECT_NE(replication_seed(1, 100, 0, 0), replication_seed(1, 200, 0, 0));
    EXPECT_NE(replication_seed(1, 100, 0, 0), replication_seed(2, 100, 0, 0));
}

TEST(Harness, NullSample) {
    auto cfg = small(50);
    cfg.n_list = {100};
    cfg.p_list = {{1.0 / 3.0, "1/3"}};
    const auto z = null_distribution_sample(cfg);
    EXPECT_EQ(z.size(), 50u);
    const auto s = summarize_null(z);
    EXPECT_EQ(s.count, 50u);
    EXPECT_LT(std::abs(s.mean), 1.0);
}

TEST(Harness, Validation) {
    auto cfg = small();
    cfg.reps = 0;
    EXPECT_THROW(cfg.validate(), InvalidSpec);
    cfg = small();
    cfg.r = 1.5;
    EXPECT_THROW(cfg.validate(), InvalidSpec);
    cfg = small();
    cfg.n_list = {};
    EXPECT_THROW(cfg.validate(), InvalidSpec);
    EXPECT_THROW((void)parse_rho_rule("sideways"), InvalidSpec);
}

TEST(Harness, RhoRules) {
    const double h = std::pow(200.0, -0.25);
    const double inv = rho_from_rule(RhoRule::h_inverse, 200, h, 2.0);
    const double dir = rho_from_rule(RhoRule::h_direct, 200, h, 2.0);
    EXPECT_NEAR(dir / inv, std::sqrt(h), 1e-14);
}

TEST(Reproduce, PublishedTables) {
    for (int t = 1; t <= 6; ++t) EXPECT_FALSE(published_table(t).blocks.empty());
    EXPECT_THROW((void)published_table(7), InvalidSpec);
    EXPECT_FALSE(published_table(1).nu.has_value());
    EXPECT_TRUE(published_table(4).nu.has_value());
    EXPECT_EQ(reproduction_tolerance(false, 0.05, 0.05), 0.010);
    EXPECT_EQ(reproduction_tolerance(false, 0.01, 0.01), 0.005);
    EXPECT_EQ(reproduction_tolerance(true, 0.05, 0.5), 0.03);
    EXPECT_EQ(reproduction_tolerance(true, 0.05, 0.1), 0.015);
}

TEST(Reproduce, CompareBlockFlagsCells) {
    const auto& table = published_table(1);
    auto cfg = block_config(table, 0, 10, 1);
    Report r;
    r.config = cfg;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            r.cells.push_back({kPublishedN[i], cfg.p_list[j].label, cfg.p_list[j].value, 0.05,
                               table.blocks[0].at05[i][j], 0.0, 0, 10});
            r.cells.push_back({kPublishedN[i], cfg.p_list[j].label, cfg.p_list[j].value, 0.01,
                               table.blocks[0].at01[i][j] + 0.02, 0.0, 0, 10});
        }
    const auto cells = compare_block(table, 0, r);
    ASSERT_EQ(cells.size(), 18u);
    for (const auto& c : cells) EXPECT_EQ(c.pass, c.level == 0.05);
}

TEST(Reproduce, SmallRunProducesTable) {
    ReproduceOptions opt;
    opt.reps = 10;
    opt.blocks = {0};
    opt.n_list = {100};
    const auto rep = reproduce_table(4, opt);
    EXPECT_EQ(rep.cells.size(), 6u);
    EXPECT_NE(rep.markdown().find("published"), std::string::npos);
}
