#include "nnst/models.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <string>

#include "nnst/error.hpp"
#include "nnst/numeric.hpp"

namespace nnst {

NullModel linear_model() {
    NullModel m;
    m.name = "linear";
    m.dim = 2;
    m.f = [](double x, std::span<const double> th) { return th[0] + th[1] * x; };
    m.grad = [](double x, std::span<const double>, std::span<double> g) {
        g[0] = 1.0;
        g[1] = x;
    };
    m.beta = 1.0;
    m.linear_in_theta = true;
    return m;
}

NullModel polynomial_model(std::size_t k) {
    if (k < 1) throw InvalidSpec("poly:k requires k >= 1");
    NullModel m;
    m.name = "poly:" + std::to_string(k);
    m.dim = k;
    m.f = [k](double x, std::span<const double> th) {
        double v = th[k - 1];
        for (std::size_t i = k - 1; i-- > 0;) v = v * x + th[i];
        return v;
    };
    m.grad = [k](double x, std::span<const double>, std::span<double> g) {
        double p = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            g[i] = p;
            p *= x;
        }
    };
    m.beta = static_cast<double>(k - 1);
    m.linear_in_theta = true;
    return m;
}

NullModel power_model() {
    NullModel m;
    m.name = "power";
    m.dim = 3;
    m.f = [](double x, std::span<const double> th) { return th[0] + th[1] * std::pow(std::abs(x), th[2]); };
    m.grad = [](double x, std::span<const double> th, std::span<double> g) {
        const double ax = std::abs(x);
        const double p = std::pow(ax, th[2]);
        g[0] = 1.0;
        g[1] = p;
        g[2] = ax > 0.0 ? th[1] * p * std::log(ax) : 0.0;
    };
    m.beta = 2.0;
    return m;
}

NullModel weighted_exp_model() {
    NullModel m;
    m.name = "wexp";
    m.dim = 2;
    // Written in terms of the logistic weight w = e^x / (1 + e^x) to avoid overflow.
    auto weight = [](double x) { return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); };
    m.f = [weight](double x, std::span<const double> th) {
        const double w = weight(x);
        return th[0] * (1.0 - w) + th[1] * w;
    };
    m.grad = [weight](double x, std::span<const double>, std::span<double> g) {
        const double w = weight(x);
        g[0] = 1.0 - w;
        g[1] = w;
    };
    m.beta = 0.0;
    m.linear_in_theta = true;
    return m;
}

NullModel model_from_name(std::string_view name) {
    if (name == "linear") return linear_model();
    if (name == "power") return power_model();
    if (name == "wexp") return weighted_exp_model();
    if (name.starts_with("poly:")) {
        const auto digits = name.substr(5);
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 1) return polynomial_model(k);
    }
    throw InvalidSpec("unknown model '" + std::string(name) + "' (expected linear|poly:k|power|wexp)");
}

namespace {

void check_aligned(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("x has " + std::to_string(x.size()) + " entries, y has " + std::to_string(y.size()));
}

double sum_squares(std::span<const double> r) {
    CompensatedSum s;
    for (double v : r) s.add(v * v);
    return s.value();
}

}  // namespace

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
    check_aligned(x, y);
    const std::size_t n = x.size();
    if (n < 3) throw InvalidSpec("fit_linear: need at least 3 observations");

    const double xbar = mean(x);
    const double ybar = mean(y);
    CompensatedSum sxx, sxy, sx2;
    for (std::size_t t = 0; t < n; ++t) {
        const double dx = x[t] - xbar;
        sxx.add(dx * dx);
        sxy.add(dx * (y[t] - ybar));
        sx2.add(x[t] * x[t]);
    }
    if (!(sxx.value() > 1e-20 * sx2.value()) || sxx.value() == 0.0)
        throw SingularDesign("fit_linear: regressor is constant");

    FitResult fit;
    const double slope = sxy.value() / sxx.value();
    fit.theta_hat = {ybar - slope * xbar, slope};
    fit.residuals.resize(n);
    for (std::size_t t = 0; t < n; ++t) fit.residuals[t] = (y[t] - ybar) - slope * (x[t] - xbar);
    fit.iterations = 0;
    fit.converged = true;
    fit.objective = sum_squares(fit.residuals);
    return fit;
}

FitResult fit_linear(const SamplePath& path) { return fit_linear(path.x, path.y); }

std::vector<double> residuals(const NullModel& model, std::span<const double> theta, std::span<const double> x,
                              std::span<const double> y) {
    check_aligned(x, y);
    if (theta.size() != model.dim) throw InvalidSpec("residuals: theta has wrong dimension for " + model.name);
    std::vector<double> r(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double fx = model.f(x[t], theta);
        if (!std::isfinite(fx))
            throw NonFiniteData("model " + model.name + " is not finite at position " + std::to_string(t));
        r[t] = y[t] - fx;
    }
    return r;
}

FitResult fit_nls(const NullModel& model, std::span<const double> x, std::span<const double> y,
                  std::span<const double> theta_init, const NlsOptions& options) {
    check_aligned(x, y);
    const std::size_t n = x.size();
    const std::size_t k = model.dim;
    if (theta_init.size() != k) throw InvalidSpec("fit_nls: theta_init has wrong dimension for " + model.name);
    for (double v : theta_init)
        if (!std::isfinite(v)) throw InvalidSpec("fit_nls: theta_init must be finite");
    if (n < k) throw InvalidSpec("fit_nls: fewer observations than parameters");

    FitResult fit;
    fit.theta_hat.assign(theta_init.begin(), theta_init.end());
    fit.residuals = residuals(model, fit.theta_hat, x, y);
    fit.objective = sum_squares(fit.residuals);

    Eigen::MatrixXd jac(n, k);
    Eigen::VectorXd resid(n);
    std::vector<double> g(k);
    std::vector<double> candidate(k);

    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        fit.iterations = iter;
        if (fit.objective == 0.0) {
            fit.converged = true;
            return fit;
        }
        for (std::size_t t = 0; t < n; ++t) {
            model.grad(x[t], fit.theta_hat, g);
            for (std::size_t j = 0; j < k; ++j) jac(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = g[j];
            resid(static_cast<Eigen::Index>(t)) = fit.residuals[t];
        }
        if (!jac.allFinite()) throw NonFiniteData("fit_nls: non-finite Jacobian for " + model.name);

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
        qr.setThreshold(1e-12);
        if (static_cast<std::size_t>(qr.rank()) < k)
            throw RankDeficient("fit_nls: Jacobian of " + model.name + " is rank deficient at iteration " +
                                std::to_string(iter));
        const Eigen::VectorXd delta = qr.solve(resid);

        double theta_norm = 0.0;
        for (double v : fit.theta_hat) theta_norm += v * v;
        theta_norm = std::sqrt(theta_norm);

        double step = 1.0;
        bool accepted = false;
        std::vector<double> cand_resid;
        double cand_obj = 0.0;
        for (int halving = 0; halving <= options.max_halvings; ++halving, step *= 0.5) {
            for (std::size_t j = 0; j < k; ++j)
                candidate[j] = fit.theta_hat[j] + step * delta(static_cast<Eigen::Index>(j));
            bool finite = true;
            cand_resid.resize(n);
            for (std::size_t t = 0; t < n && finite; ++t) {
                cand_resid[t] = y[t] - model.f(x[t], candidate);
                finite = std::isfinite(cand_resid[t]);
            }
            if (!finite) continue;
            cand_obj = sum_squares(cand_resid);
            if (cand_obj <= fit.objective) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No step along the Gauss-Newton direction lowers the SSR: the
            // gradient vanishes to working precision.
            fit.converged = true;
            return fit;
        }

        const double rel_step = step * delta.norm() / (theta_norm + 1e-300);
        const double rel_decrease = (fit.objective - cand_obj) / fit.objective;
        fit.theta_hat = candidate;
        fit.residuals = std::move(cand_resid);
        fit.objective = cand_obj;
        if (rel_step < options.step_tolerance || rel_decrease < options.objective_tolerance) {
            fit.converged = true;
            return fit;
        }
    }
    fit.converged = false;
    return fit;
}

void AlternativeSpec::validate() const {
    if (!(nu >= 0.0)) throw InvalidSpec("alternative: nu must be >= 0");
    if (!(rho_n >= 0.0)) throw InvalidSpec("alternative: rho_n must be >= 0");
}

std::function<double(double)> apply_alternative(std::function<double(double)> f_null, const AlternativeSpec& alt) {
    alt.validate();
    std::function<double(double)> m = alt.m;
    if (!m) m = [nu = alt.nu](double x) { return std::pow(std::abs(x), nu); };
    return [f = std::move(f_null), m = std::move(m), rho = alt.rho_n](double x) { return f(x) + rho * m(x); };
}

double local_alternative_scale(std::size_t n, double h, double nu) {
    if (!(h > 0.0)) throw InvalidSpec("local_alternative_scale: h must be positive");
    const double nd = static_cast<double>(n);
    return 1.0 / (std::pow(nd, 0.25 + nu / 3.0) * std::pow(h, 0.25));
}

}  // namespace nnst
