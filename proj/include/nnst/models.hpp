#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnst/dgp.hpp"

namespace nnst {

/// Parametric null family f(x, theta) with analytic gradient in theta.
struct NullModel {
    using Value = std::function<double(double x, std::span<const double> theta)>;
    using Gradient = std::function<void(double x, std::span<const double> theta, std::span<double> out)>;

    std::string name;
    std::size_t dim = 0;
    Value f;
    Gradient grad;
    double beta = 0.0;  ///< growth exponent: |grad| <= C (1 + |x|^beta)
    bool linear_in_theta = false;
};

/// theta_0 + theta_1 x
[[nodiscard]] NullModel linear_model();
/// theta_1 + theta_2 x + ... + theta_k x^{k-1}, k >= 1
[[nodiscard]] NullModel polynomial_model(std::size_t k);
/// a + b |x|^c. Evaluated on |x| so that negative regressor values are
/// admissible; for c > 0 the gradient in c uses |x|^c log|x| (0 at x = 0).
/// beta is reported as 2, a working bound valid while the fitted c stays in
/// (0, 2].
[[nodiscard]] NullModel power_model();
/// (a + b e^x) / (1 + e^x); bounded, beta = 0.
[[nodiscard]] NullModel weighted_exp_model();

/// "linear", "poly:k", "power", "wexp". Throws InvalidSpec otherwise.
[[nodiscard]] NullModel model_from_name(std::string_view name);

struct FitResult {
    std::vector<double> theta_hat;
    std::vector<double> residuals;
    std::size_t iterations = 0;
    bool converged = false;
    double objective = 0.0;  ///< sum of squared residuals as returned
};

/// Exact least squares of y on (1, x). Throws SingularDesign for constant x.
[[nodiscard]] FitResult fit_linear(std::span<const double> x, std::span<const double> y);
[[nodiscard]] FitResult fit_linear(const SamplePath& path);

struct NlsOptions {
    std::size_t max_iterations = 200;
    int max_halvings = 30;
    double step_tolerance = 1e-10;       ///< on ||delta|| / (||theta|| + 1e-300)
    double objective_tolerance = 1e-12;  ///< on relative decrease of the SSR
};

/// Damped Gauss-Newton with step halving. Throws RankDeficient when the
/// Jacobian loses column rank; hitting the iteration cap returns the best
/// iterate with converged = false.
[[nodiscard]] FitResult fit_nls(const NullModel& model, std::span<const double> x, std::span<const double> y,
                                std::span<const double> theta_init, const NlsOptions& options = {});

/// y[i] - f(x[i], theta). Throws NonFiniteData on a non-finite f.
[[nodiscard]] std::vector<double> residuals(const NullModel& model, std::span<const double> theta,
                                            std::span<const double> x, std::span<const double> y);

/// Local alternative m(x) scaled by rho_n. Default m(x) = |x|^nu.
struct AlternativeSpec {
    double nu = 0.0;
    double rho_n = 0.0;
    std::function<double(double)> m;  ///< empty means |x|^nu

    void validate() const;
};

/// x -> f_null(x) + rho_n m(x)
[[nodiscard]] std::function<double(double)> apply_alternative(std::function<double(double)> f_null,
                                                              const AlternativeSpec& alt);

/// rho_n = 1 / (n^{1/4 + nu/3} h^{1/4}), the deviation scale used in the
/// local-power simulations.
[[nodiscard]] double local_alternative_scale(std::size_t n, double h, double nu);

}  // namespace nnst
