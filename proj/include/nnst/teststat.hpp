#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nnst/kernels.hpp"
#include "nnst/models.hpp"
#include "nnst/parallel.hpp"

namespace nnst {

struct TestResult {
    double S = 0.0;
    double V2 = 0.0;
    double Z = 0.0;        ///< S / (sqrt(2) sqrt(V2))
    double p_value = 0.0;  ///< 1 - Phi(Z), upper tail
    bool reject_05 = false;
    bool reject_01 = false;
    double alpha = 0.05;
    bool reject_alpha = false;
    std::size_t n = 0;
    double h = 0.0;
    std::string kernel;
    std::size_t pairs_used = 0;
    std::vector<double> theta_hat;
};

[[nodiscard]] double statistic_S(std::span<const double> u_hat, std::span<const double> x, Kernel k, double h,
                                 Execution exec = Execution::parallel);
[[nodiscard]] double statistic_V2(std::span<const double> u_hat, std::span<const double> x, Kernel k, double h,
                                  Execution exec = Execution::parallel);

/// S / (sqrt(2) sqrt(V2)); throws DegenerateStatistic when V2 == 0.
[[nodiscard]] double z_statistic(double S, double V2);

/// t_alpha with Phi(t_alpha) = 1 - alpha.
[[nodiscard]] double critical_value(double alpha);

struct TestOptions {
    double alpha = 0.05;
    /// Required for models that are not linear in theta.
    std::optional<std::vector<double>> theta_init;
    Execution exec = Execution::parallel;
};

/// Fits the null by least squares (closed form for "linear", Gauss-Newton
/// otherwise), then forms S, V2, Z and one-sided upper-tail decisions.
/// Throws EstimationFailure if the fit does not converge and
/// DegenerateStatistic if V2 == 0.
[[nodiscard]] TestResult run_test(std::span<const double> x, std::span<const double> y, const NullModel& model,
                                  Kernel k, double h, const TestOptions& options = {});

/// Test from precomputed residuals (no fitting).
[[nodiscard]] TestResult test_from_residuals(std::span<const double> u_hat, std::span<const double> x, Kernel k,
                                             double h, double alpha = 0.05, Execution exec = Execution::parallel);

/// Components of S_n = 2 S1 + 2 S2 + S3 under a known truth.
struct Decomposition {
    double S1 = 0.0;
    double S2 = 0.0;
    double S3 = 0.0;
    std::vector<double> Y;  ///< Y_t = sum_{i<t} u_i K((x_t - x_i)/h), positions aligned with x
    double sumY2 = 0.0;
};

[[nodiscard]] Decomposition decompose(std::span<const double> u_true, std::span<const double> theta_true,
                                      std::span<const double> theta_hat, const NullModel& model,
                                      std::span<const double> x, Kernel k, double h);

struct Normalizers {
    double d2 = 0.0;    ///< (2 phi)^{-1} sigma^2 n^{3/2} h int K^2
    double tau2 = 0.0;  ///< (8 phi)^{-1} sigma^4 n^{3/2} h int K^2
    double sigma = 0.0;
    double phi = 0.0;
    std::size_t n = 0;
    double h = 0.0;
    double kernel_l2 = 0.0;
};

[[nodiscard]] Normalizers normalizers(std::size_t n, double h, double sigma, double phi, Kernel k);
[[nodiscard]] Normalizers normalizers(std::size_t n, double h, double sigma, double phi, double kernel_l2);

}  // namespace nnst
