#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nnst/dgp.hpp"
#include "nnst/error.hpp"

using namespace nnst;

namespace {

double corr(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double var(const std::vector<double>& a) {
    double m = 0, v = 0;
    for (double x : a) m += x;
    m /= static_cast<double>(a.size());
    for (double x : a) v += (x - m) * (x - m);
    return v / static_cast<double>(a.size());
}

}  // namespace

TEST(Innovations, IndependentWhenRIsZero) {
    const std::size_t n = 100000;
    const auto inn = draw_innovations(n, {0.0}, 11);
    EXPECT_LT(std::abs(corr(inn.eps, inn.u)), 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Innovations, CorrelationAndVariance) {
    const auto inn = draw_innovations(100000, {0.5}, 12);
    EXPECT_NEAR(corr(inn.eps, inn.u), 0.5, 0.01);
    EXPECT_NEAR(var(inn.eps), 1.0, 0.02);
    EXPECT_NEAR(var(inn.u), 1.0, 0.02);
}

TEST(Innovations, Deterministic) {
    const auto a = draw_innovations(1000, {0.3}, 5);
    const auto b = draw_innovations(1000, {0.3}, 5);
    EXPECT_EQ(a.eps, b.eps);
    EXPECT_EQ(a.u, b.u);
}

TEST(Innovations, SignOfRFlipsSlope) {
    const auto a = draw_innovations(50000, {0.6}, 8);
    const auto b = draw_innovations(50000, {-0.6}, 8);
    EXPECT_EQ(a.eps, b.eps);
    double sa = 0, sb = 0, ee = 0;
    for (std::size_t i = 0; i < a.eps.size(); ++i) {
        sa += a.u[i] * a.eps[i];
        sb += b.u[i] * b.eps[i];
        ee += a.eps[i] * a.eps[i];
    }
    EXPECT_NEAR(sa / ee, 0.6, 0.02);
    EXPECT_NEAR(sb / ee, -0.6, 0.02);
}

TEST(Innovations, RejectsInvalidR) { EXPECT_THROW(draw_innovations(10, {1.5}, 1), InvalidSpec); }

TEST(Eta, IidIsIdentity) {
    const std::vector<double> eps{0.3, -1.0, 2.0, 0.5};
    EXPECT_EQ(build_eta(eps, EtaSpec::iid()), eps);
}

TEST(Eta, ArRecursionExact) {
    NormalStream s(3);
    const auto spec = EtaSpec::ar(0.4);
    const auto pre = draw_presample(spec, s);
    std::vector<double> eps(500);
    for (double& e : eps) e = s.next();
    const auto eta = build_eta(eps, spec, pre);
    // grouped as the recursion groups it the residual vanishes exactly
    EXPECT_EQ(eta[0] - (0.4 * pre.eta0 + eps[0]), 0.0);
    double worst = 0;
    for (std::size_t t = 1; t < eta.size(); ++t) {
        EXPECT_EQ(eta[t] - (0.4 * eta[t - 1] + eps[t]), 0.0) << t;
        worst = std::max(worst, std::abs(eta[t] - 0.4 * eta[t - 1] - eps[t]));
    }
    EXPECT_LT(worst, 1e-14);
}

TEST(Eta, ArRejectsUnitLambda) {
    EXPECT_THROW(EtaSpec::ar(1.0).validate(), InvalidSpec);
    EXPECT_THROW(EtaSpec::ar(-1.2).validate(), InvalidSpec);
}

TEST(Eta, MaHandExample) {
    const std::vector<double> eps{1.0, 2.0, -1.0};
    const auto eta = build_eta(eps, EtaSpec::ma(0.5));
    EXPECT_DOUBLE_EQ(eta[1], 2.5);
    EXPECT_DOUBLE_EQ(eta[2], 0.0);
}

TEST(Eta, LinearMatchesMa) {
    const std::vector<double> eps{0.2, -0.7, 1.1, 0.4};
    EtaPresample pre;
    pre.eps_history = {0.9};
    const auto a = build_eta(eps, EtaSpec::ma(0.3), pre);
    const auto b = build_eta(eps, EtaSpec::linear({1.0, 0.3}), pre);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(a[i], b[i]);
}

TEST(Eta, LinearTruncatesTail) {
    std::vector<double> phi(200);
    for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = std::pow(0.5, static_cast<double>(k));
    const auto spec = EtaSpec::linear(phi);
    EXPECT_LT(spec.coefficients.size(), 60u);
    double tail = 0;
    for (std::size_t k = spec.coefficients.size(); k < phi.size(); ++k) tail += phi[k];
    EXPECT_LT(tail, 1e-12);
}

TEST(Regressor, UnitRootIsPartialSum) {
    const std::vector<double> eta{0.5, -1.0, 2.0, 0.25};
    const auto x = build_regressor(eta, {0.0, 4});
    double s = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        s += eta[i];
        EXPECT_DOUBLE_EQ(x[i], s);
    }
}

TEST(Regressor, HandRecursion) {
    const auto x = build_regressor(std::vector<double>{1, 1, 1, 1}, {4.0, 4});
    EXPECT_EQ(x, (std::vector<double>{1, 3, 7, 15}));
}

TEST(Regressor, RhoZero) {
    const std::vector<double> eta{0.5, -1.0, 2.0};
    EXPECT_EQ(build_regressor(eta, {-3.0, 3}), eta);
}

TEST(Regressor, LengthMismatch) {
    EXPECT_THROW(build_regressor(std::vector<double>{1, 2}, {0.0, 3}), LengthMismatch);
}

TEST(Response, HandExample) {
    const auto y = build_response(std::vector<double>{1, 2}, std::vector<double>{0.1, -0.1},
                                  [](double x) { return 1 + x; });
    EXPECT_DOUBLE_EQ(y[0], 2.1);
    EXPECT_DOUBLE_EQ(y[1], 2.9);
}

TEST(Response, NoiselessIdentity) {
    const std::vector<double> x{0.3, -2.0, 5.0};
    EXPECT_EQ(build_response(x, std::vector<double>(3, 0.0), [](double v) { return v; }), x);
}

TEST(Response, NonFiniteThrows) {
    EXPECT_THROW(build_response(std::vector<double>{1.0}, std::vector<double>{0.0}, [](double) { return NAN; }),
                 NonFiniteData);
}

TEST(LongRun, Phi) {
    EXPECT_DOUBLE_EQ(long_run_phi(EtaSpec::iid()), 1.0);
    EXPECT_NEAR(long_run_phi(EtaSpec::ar(0.4)), 1.0 / 0.6, 1e-15);
    EXPECT_DOUBLE_EQ(long_run_phi(EtaSpec::ma(0.5)), 1.5);
}

TEST(SimulatePath, AlignmentAndDeterminism) {
    SimulationSpec spec;
    spec.n = 50;
    spec.innovations.r = 0.5;
    spec.f_true = [](double x) { return 2.0 + x; };
    const auto a = simulate_path(spec, 77);
    const auto b = simulate_path(spec, 77);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
    ASSERT_EQ(a.x.size(), 50u);
    ASSERT_EQ(a.u.size(), 50u);
    EXPECT_DOUBLE_EQ(a.x[0], a.eps[0]);
    for (std::size_t i = 0; i < a.n; ++i) EXPECT_DOUBLE_EQ(a.y[i], 2.0 + a.x[i] + a.u[i]);
}

TEST(SimulatePath, ScaledEndpointVariance) {
    const std::size_t n = 400, reps = 4000;
    std::vector<double> end(reps);
    SimulationSpec spec;
    spec.n = n;
    for (std::size_t r = 0; r < reps; ++r) end[r] = simulate_path(spec, mix_seed({1, r})).x.back() / std::sqrt(n);
    EXPECT_NEAR(var(end), 1.0, 3.0 * std::sqrt(2.0 / reps));
}
