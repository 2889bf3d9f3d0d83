#include "nnst/teststat.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nnst/error.hpp"
#include "nnst/numeric.hpp"
#include "nnst/ustat.hpp"

namespace nnst {

double statistic_S(std::span<const double> u_hat, std::span<const double> x, Kernel k, double h, Execution exec) {
    return pair_sums(u_hat, x, k, h, exec).s;
}

double statistic_V2(std::span<const double> u_hat, std::span<const double> x, Kernel k, double h, Execution exec) {
    return pair_sums(u_hat, x, k, h, exec).v2;
}

double z_statistic(double S, double V2) {
    if (!(V2 >= 0.0)) throw InvalidSpec("z_statistic: V2 must be nonnegative");
    if (V2 == 0.0)
        throw DegenerateStatistic("V2 = 0: no kernel overlap between distinct observations (h or n too small)");
    return S / (std::numbers::sqrt2 * std::sqrt(V2));
}

double critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidSpec("significance level must lie in (0, 1)");
    return normal_quantile(1.0 - alpha);
}

TestResult test_from_residuals(std::span<const double> u_hat, std::span<const double> x, Kernel k, double h,
                               double alpha, Execution exec) {
    if (x.size() < 2) throw InvalidSpec("test: need at least 2 observations");
    const PairSums sums = pair_sums(u_hat, x, k, h, exec);
    TestResult r;
    r.S = sums.s;
    r.V2 = sums.v2;
    r.Z = z_statistic(sums.s, sums.v2);
    r.p_value = normal_upper_tail(r.Z);
    r.reject_05 = r.Z >= critical_value(0.05);
    r.reject_01 = r.Z >= critical_value(0.01);
    r.alpha = alpha;
    r.reject_alpha = r.Z >= critical_value(alpha);
    r.n = x.size();
    r.h = h;
    r.kernel = std::string(k.name());
    r.pairs_used = sums.pairs;
    return r;
}

TestResult run_test(std::span<const double> x, std::span<const double> y, const NullModel& model, Kernel k,
                    double h, const TestOptions& options) {
    FitResult fit;
    if (model.name == "linear") {
        fit = fit_linear(x, y);
    } else {
        std::vector<double> init;
        if (options.theta_init) {
            init = *options.theta_init;
        } else if (model.linear_in_theta) {
            // Gauss-Newton reaches the exact minimizer of a linear-in-theta
            // model in one step from any start.
            init.assign(model.dim, 0.0);
        } else {
            throw InvalidSpec("run_test: model '" + model.name + "' needs an initial theta");
        }
        fit = fit_nls(model, x, y, init);
        if (!fit.converged)
            throw EstimationFailure("run_test: Gauss-Newton did not converge for model " + model.name);
    }
    TestResult r = test_from_residuals(fit.residuals, x, k, h, options.alpha, options.exec);
    r.theta_hat = fit.theta_hat;
    return r;
}

Decomposition decompose(std::span<const double> u_true, std::span<const double> theta_true,
                        std::span<const double> theta_hat, const NullModel& model, std::span<const double> x,
                        Kernel k, double h) {
    const std::size_t n = x.size();
    if (u_true.size() != n) throw LengthMismatch("decompose: u_true and x differ in length");
    if (!(h > 0.0)) throw InvalidSpec("decompose: bandwidth must be positive");
    if (theta_true.size() != model.dim || theta_hat.size() != model.dim)
        throw InvalidSpec("decompose: theta has wrong dimension for " + model.name);

    // diff_t = f(x_t, theta) - f(x_t, theta_hat), so u_hat = u + diff.
    std::vector<double> diff(n);
    for (std::size_t t = 0; t < n; ++t) diff[t] = model.f(x[t], theta_true) - model.f(x[t], theta_hat);

    Decomposition d;
    d.Y.assign(n, 0.0);
    CompensatedSum s1, s2, s3, y2;
    for (std::size_t t = 0; t < n; ++t) {
        CompensatedSum yt;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == t) continue;
            const double kv = k((x[t] - x[i]) / h);
            if (i < t) yt.add(u_true[i] * kv);
            s2.add(u_true[i] * diff[t] * kv);
            s3.add(diff[i] * diff[t] * kv);
        }
        d.Y[t] = yt.value();
        s1.add(u_true[t] * d.Y[t]);
        y2.add(d.Y[t] * d.Y[t]);
    }
    d.S1 = s1.value();
    d.S2 = s2.value();
    d.S3 = s3.value();
    d.sumY2 = y2.value();
    return d;
}

Normalizers normalizers(std::size_t n, double h, double sigma, double phi, double kernel_l2) {
    if (phi == 0.0) throw InvalidSpec("normalizers: phi must be nonzero");
    if (!(sigma > 0.0)) throw InvalidSpec("normalizers: sigma must be positive");
    if (!(h > 0.0)) throw InvalidSpec("normalizers: h must be positive");
    Normalizers out;
    const double base = std::pow(static_cast<double>(n), 1.5) * h * kernel_l2;
    out.d2 = sigma * sigma * base / (2.0 * phi);
    out.tau2 = std::pow(sigma, 4) * base / (8.0 * phi);
    out.sigma = sigma;
    out.phi = phi;
    out.n = n;
    out.h = h;
    out.kernel_l2 = kernel_l2;
    return out;
}

Normalizers normalizers(std::size_t n, double h, double sigma, double phi, Kernel k) {
    return normalizers(n, h, sigma, phi, kernel_l2(k));
}

}  // namespace nnst
