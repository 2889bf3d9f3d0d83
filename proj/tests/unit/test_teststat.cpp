#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nnst/dgp.hpp"
#include "nnst/error.hpp"
#include "nnst/teststat.hpp"
#include "nnst/ustat.hpp"

using namespace nnst;

namespace {

struct Naive {
    double s = 0, v2 = 0;
};

Naive naive(const std::vector<double>& u, const std::vector<double>& x, Kernel k, double h) {
    Naive out;
    for (std::size_t s = 0; s < u.size(); ++s)
        for (std::size_t t = 0; t < u.size(); ++t) {
            if (s == t) continue;
            const double kv = k((x[t] - x[s]) / h);
            out.s += u[s] * u[t] * kv;
            out.v2 += u[s] * u[s] * u[t] * u[t] * kv * kv;
        }
    return out;
}

SamplePath path(std::size_t n, std::uint64_t seed) {
    SimulationSpec spec;
    spec.n = n;
    spec.innovations.r = 0.5;
    return simulate_path(spec, seed);
}

}  // namespace

TEST(Statistic, HandExample) {
    const double h = 0.7;
    const std::vector<double> u{1.0, 2.0}, x{0.0, h};
    EXPECT_NEAR(statistic_S(u, x, Kernel(), h), 0.967883, 1e-6);
    EXPECT_NEAR(statistic_V2(u, x, Kernel(), h), 0.468399, 1e-6);
}

TEST(Statistic, MatchesNaiveDoubleLoop) {
    for (auto fam : {KernelFamily::gaussian, KernelFamily::epanechnikov, KernelFamily::uniform}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto p = path(137, seed);
            const double h = std::pow(137.0, -1.0 / 3.0) * std::sqrt(137.0) * 0.2;
            const auto ref = naive(p.u, p.x, Kernel(fam), h);
            EXPECT_NEAR(statistic_S(p.u, p.x, Kernel(fam), h), ref.s, 1e-12 * (1 + std::abs(ref.s)));
            EXPECT_NEAR(statistic_V2(p.u, p.x, Kernel(fam), h), ref.v2, 1e-12 * (1 + ref.v2));
        }
    }
}

TEST(PairSums, SerialParallelBitIdentical) {
    const auto p = path(700, 9);
    const auto a = pair_sums(p.u, p.x, Kernel(), 1.3, Execution::serial);
    const auto b = pair_sums(p.u, p.x, Kernel(), 1.3, Execution::parallel);
    const auto c = reference::pair_sums(p.u, p.x, Kernel(), 1.3);
    EXPECT_EQ(a.s, b.s);
    EXPECT_EQ(a.v2, b.v2);
    EXPECT_EQ(a.pairs, 700u * 699u);
    EXPECT_NEAR(a.s, c.s, 1e-11 * (1 + std::abs(c.s)));
    EXPECT_NEAR(a.v2, c.v2, 1e-11 * (1 + c.v2));
}

TEST(Statistic, Homogeneity) {
    const auto p = path(90, 4);
    std::vector<double> u3 = p.u;
    for (double& v : u3) v *= 3.0;
    const double h = 0.8;
    EXPECT_NEAR(statistic_V2(u3, p.x, Kernel(), h), 81.0 * statistic_V2(p.u, p.x, Kernel(), h),
                1e-10 * statistic_V2(u3, p.x, Kernel(), h));
    EXPECT_NEAR(statistic_S(u3, p.x, Kernel(), h), 9.0 * statistic_S(p.u, p.x, Kernel(), h), 1e-10 * 81);
    const auto a = test_from_residuals(p.u, p.x, Kernel(), h);
    const auto b = test_from_residuals(u3, p.x, Kernel(), h);
    EXPECT_NEAR(a.Z, b.Z, 1e-12);
}

TEST(Statistic, ZAndCritical) {
    EXPECT_DOUBLE_EQ(z_statistic(std::sqrt(2.0), 1.0), 1.0);
    EXPECT_THROW((void)z_statistic(1.0, 0.0), DegenerateStatistic);
    EXPECT_NEAR(critical_value(0.05), 1.644854, 1e-6);
    EXPECT_NEAR(critical_value(0.01), 2.326348, 1e-6);
}

TEST(Statistic, ZeroResidualsDegenerate) {
    const std::vector<double> u(10, 0.0);
    std::vector<double> x(10);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
    EXPECT_THROW((void)test_from_residuals(u, x, Kernel(), 1.0), DegenerateStatistic);
}

TEST(RunTest, DecisionsConsistent) {
    const auto p = path(200, 13);
    const auto r = run_test(p.x, p.y, linear_model(), Kernel(), std::pow(200.0, -1.0 / 3.0));
    EXPECT_EQ(r.reject_05, r.Z > critical_value(0.05));
    EXPECT_EQ(r.reject_01, r.Z > critical_value(0.01));
    EXPECT_NEAR(r.p_value, 0.5 * std::erfc(r.Z / std::sqrt(2.0)), 1e-12);
    EXPECT_EQ(r.theta_hat.size(), 2u);
}

TEST(RunTest, LengthMismatch) {
    const std::vector<double> x{1, 2, 3, 4}, y{1, 2, 3};
    EXPECT_THROW((void)run_test(x, y, linear_model(), Kernel(), 1.0), LengthMismatch);
}

TEST(Decomposition, SumsToStatistic) {
    NormalStream s(77);
    const auto model = linear_model();
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 5 + static_cast<std::size_t>(rep % 40);
        const auto p = path(n, 1000 + rep);
        const std::vector<double> theta_true{0.0, 1.0};
        const std::vector<double> theta_hat{0.3 * s.next(), 1.0 + 0.1 * s.next()};
        const double h = 0.5 + std::abs(s.next());
        const auto d = decompose(p.u, theta_true, theta_hat, model, p.x, Kernel(), h);
        const auto uhat = residuals(model, theta_hat, p.x, p.y);
        const double S = statistic_S(uhat, p.x, Kernel(), h);
        const double total = 2 * d.S1 + 2 * d.S2 + d.S3;
        EXPECT_NEAR(total, S, 1e-9 * (1 + std::abs(S)));
        double y2 = 0;
        for (double v : d.Y) y2 += v * v;
        EXPECT_NEAR(d.sumY2, y2, 1e-10 * (1 + y2));
    }
}

TEST(Normalizers, Values) {
    const auto a = normalizers(100, 0.1, 1.0, 1.0, 0.2820948);
    EXPECT_NEAR(a.d2, 14.10474, 1e-4);
    EXPECT_NEAR(a.tau2, 3.526185, 1e-5);
    const auto b = normalizers(100, 0.1, 1.0, 2.0, 0.2820948);
    EXPECT_NEAR(b.d2, a.d2 / 2, 1e-12);
    EXPECT_NEAR(normalizers(100, 0.1, 1.0, 1.0, Kernel()).kernel_l2, 0.2820948, 1e-7);
}
