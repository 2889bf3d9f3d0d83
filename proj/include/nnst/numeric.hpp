#pragma once

#include <cmath>
#include <functional>
#include <span>

namespace nnst {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

[[nodiscard]] double normal_cdf(double z) noexcept;

/// Upper-tail probability 1 - Phi(z), accurate in the far tail.
[[nodiscard]] double normal_upper_tail(double z) noexcept;

/// Inverse standard normal CDF (Wichura AS241, ~1e-16 relative).
[[nodiscard]] double normal_quantile(double p);

/// Adaptive Simpson quadrature on [a, b]. Subdivides until the Richardson
/// error estimate of each panel falls below its share of `tol`.
[[nodiscard]] double integrate(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int max_depth = 50);

[[nodiscard]] double mean(std::span<const double> v) noexcept;

/// Population variance (divides by n).
[[nodiscard]] double variance(std::span<const double> v) noexcept;

/// Sample quantile with linear interpolation between order statistics
/// (position p (n - 1)). Throws InvalidSpec for empty input or p outside [0, 1].
[[nodiscard]] double quantile(std::span<const double> v, double p);

/// sup_z |F_n(z) - Phi(z)|.
[[nodiscard]] double ks_distance_normal(std::span<const double> v);

/// m4 / m2^2 - 3 with population moments.
[[nodiscard]] double excess_kurtosis(std::span<const double> v) noexcept;

}  // namespace nnst
