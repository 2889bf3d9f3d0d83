#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nnst/error.hpp"
#include "nnst/models.hpp"
#include "nnst/rng.hpp"

using namespace nnst;

namespace {

// OLS via the 2x2 normal equations, solved by Cramer's rule.
std::vector<double> normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
    double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        n += 1;
        sx += x[i];
        sxx += x[i] * x[i];
        sy += y[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    return {(sxx * sy - sx * sxy) / det, (n * sxy - sx * sy) / det};
}

}  // namespace

TEST(Models, GradientMatchesFiniteDifference) {
    NormalStream s(21);
    const std::vector<std::pair<NullModel, std::vector<double>>> cases{
        {linear_model(), {0.3, -1.2}},
        {polynomial_model(3), {0.5, 0.2, -0.1}},
        {power_model(), {0.4, 1.3, 1.7}},
        {weighted_exp_model(), {-0.5, 2.0}},
    };
    for (const auto& [model, theta] : cases) {
        for (int k = 0; k < 20; ++k) {
            const double x = 2.0 * s.next() + (k % 2 ? 0.1 : -0.1);
            std::vector<double> g(model.dim);
            model.grad(x, theta, g);
            for (std::size_t j = 0; j < model.dim; ++j) {
                auto tp = theta, tm = theta;
                const double step = 1e-6;
                tp[j] += step;
                tm[j] -= step;
                const double fd = (model.f(x, tp) - model.f(x, tm)) / (2 * step);
                EXPECT_NEAR(g[j], fd, 1e-6 * (1.0 + std::abs(fd))) << model.name << " j=" << j << " x=" << x;
            }
        }
    }
}

TEST(Models, FromName) {
    EXPECT_EQ(model_from_name("linear").dim, 2u);
    EXPECT_EQ(model_from_name("poly:4").dim, 4u);
    EXPECT_EQ(model_from_name("power").dim, 3u);
    EXPECT_EQ(model_from_name("wexp").dim, 2u);
    EXPECT_THROW(model_from_name("spline"), InvalidSpec);
    EXPECT_THROW(model_from_name("poly:0"), InvalidSpec);
}

TEST(FitLinear, MatchesNormalEquations) {
    NormalStream s(3);
    std::vector<double> x(200), y(200);
    double acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += s.next();
        x[i] = acc;
        y[i] = 1.5 - 0.7 * x[i] + s.next();
    }
    const auto fit = fit_linear(x, y);
    const auto oracle = normal_equations(x, y);
    EXPECT_NEAR(fit.theta_hat[0], oracle[0], 1e-10);
    EXPECT_NEAR(fit.theta_hat[1], oracle[1], 1e-10);
    EXPECT_TRUE(fit.converged);
    // residuals orthogonal to the design
    double s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += fit.residuals[i];
        s1 += fit.residuals[i] * x[i];
    }
    EXPECT_NEAR(s0, 0.0, 1e-9);
    EXPECT_NEAR(s1, 0.0, 1e-7);
}

TEST(FitLinear, Noiseless) {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    std::vector<double> y;
    for (double v : x) y.push_back(2 + 3 * v);
    const auto fit = fit_linear(x, y);
    EXPECT_NEAR(fit.theta_hat[0], 2.0, 1e-12);
    EXPECT_NEAR(fit.theta_hat[1], 3.0, 1e-12);
}

TEST(FitLinear, ConstantRegressorIsSingular) {
    EXPECT_THROW(fit_linear(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), SingularDesign);
}

TEST(FitLinear, LengthMismatch) {
    EXPECT_THROW(fit_linear(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), LengthMismatch);
}

TEST(FitNls, LinearModelAgreesWithOls) {
    NormalStream s(5);
    std::vector<double> x(150), y(150);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = 3 * s.next();
        y[i] = -1 + 0.5 * x[i] + 0.3 * s.next();
    }
    const auto ols = fit_linear(x, y);
    const std::vector<double> init{0.0, 0.0};
    const auto nls = fit_nls(linear_model(), x, y, init);
    EXPECT_TRUE(nls.converged);
    EXPECT_NEAR(nls.theta_hat[0], ols.theta_hat[0], 1e-8);
    EXPECT_NEAR(nls.theta_hat[1], ols.theta_hat[1], 1e-8);
}

TEST(FitNls, PowerModelRecovery) {
    std::vector<double> x, y;
    for (int i = 1; i <= 60; ++i) {
        const double v = 0.1 * i;
        x.push_back(v);
        y.push_back(v * v);
    }
    const std::vector<double> init{0.1, 0.9, 1.8};
    const auto fit = fit_nls(power_model(), x, y, init);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.theta_hat[0], 0.0, 1e-6);
    EXPECT_NEAR(fit.theta_hat[1], 1.0, 1e-6);
    EXPECT_NEAR(fit.theta_hat[2], 2.0, 1e-6);
}

TEST(FitNls, FlatGradientIsRankDeficient) {
    NullModel flat;
    flat.name = "flat";
    flat.dim = 1;
    flat.f = [](double, std::span<const double>) { return 1.0; };
    flat.grad = [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    const std::vector<double> x{1, 2, 3, 4}, y{1, 2, 3, 4}, init{0.0};
    EXPECT_THROW(fit_nls(flat, x, y, init), RankDeficient);
}

TEST(Residuals, Values) {
    const std::vector<double> theta{1.0, 2.0}, x{0.0, 1.0, -1.0}, y{1.5, 2.0, -1.0};
    const auto r = residuals(linear_model(), theta, x, y);
    EXPECT_DOUBLE_EQ(r[0], 0.5);
    EXPECT_DOUBLE_EQ(r[1], -1.0);
    EXPECT_DOUBLE_EQ(r[2], 0.0);
}

TEST(Alternative, Values) {
    auto f = apply_alternative([](double x) { return x; }, {2.0, 0.1, {}});
    EXPECT_DOUBLE_EQ(f(3.0), 3.9);
    EXPECT_DOUBLE_EQ(f(-3.0), -2.1);
    auto zero = apply_alternative([](double x) { return 2.0 * x; }, {1.5, 0.0, {}});
    EXPECT_DOUBLE_EQ(zero(1.0), 2.0);
}

TEST(Alternative, Scale) {
    const double h = std::pow(100.0, -0.25);
    EXPECT_NEAR(local_alternative_scale(100, h, 3.0), 1.0 / (std::pow(100.0, 0.25 + 1.0) * std::pow(h, 0.25)), 1e-15);
}
