#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>

namespace nnst {

enum class KernelFamily { gaussian, epanechnikov, uniform };

/// Symmetric nonnegative smoothing kernel that integrates to one.
///   gaussian:     (2 pi)^{-1/2} exp(-x^2 / 2)
///   epanechnikov: 0.75 (1 - x^2) on [-1, 1]
///   uniform:      1 on [-1/2, 1/2]
class Kernel {
public:
    constexpr Kernel() = default;
    constexpr explicit Kernel(KernelFamily family) : family_(family) {}

    /// Accepts "gaussian", "epanechnikov", "uniform"; throws InvalidSpec otherwise.
    static Kernel parse(std::string_view name);

    [[nodiscard]] constexpr KernelFamily family() const noexcept { return family_; }
    [[nodiscard]] std::string_view name() const noexcept;

    [[nodiscard]] double operator()(double x) const noexcept {
        switch (family_) {
            case KernelFamily::gaussian:
                return gaussian(x);
            case KernelFamily::epanechnikov:
                return epanechnikov(x);
            case KernelFamily::uniform:
                return uniform(x);
        }
        return 0.0;
    }

    /// Half-width of the support; infinity for the Gaussian.
    [[nodiscard]] double support_radius() const noexcept;

    static double gaussian(double x) noexcept {
        constexpr double kNorm = 0.3989422804014327;  // 1 / sqrt(2 pi)
        return kNorm * std::exp(-0.5 * x * x);
    }
    static constexpr double epanechnikov(double x) noexcept {
        return (x > -1.0 && x < 1.0) ? 0.75 * (1.0 - x * x) : 0.0;
    }
    static constexpr double uniform(double x) noexcept { return (x >= -0.5 && x <= 0.5) ? 1.0 : 0.0; }

    friend constexpr bool operator==(Kernel, Kernel) = default;

private:
    KernelFamily family_ = KernelFamily::gaussian;
};

[[nodiscard]] inline double kernel_eval(Kernel k, double x) noexcept { return k(x); }

/// Integral of K^2 over the real line (closed form).
[[nodiscard]] double kernel_l2(Kernel k);

/// Same integral by adaptive quadrature on the support ([-40, 40] for the
/// Gaussian), relative error below 1e-10.
[[nodiscard]] double kernel_l2_quadrature(Kernel k);

/// Integral of |x|^m K(x) (closed form).
[[nodiscard]] double kernel_moment(Kernel k, unsigned m);

[[nodiscard]] double kernel_moment_quadrature(Kernel k, unsigned m);

/// Bandwidth h > 0, optionally produced from h = n^{-p}.
struct Bandwidth {
    double h = 0.0;
    double exponent = 0.0;     ///< p; zero when h was given explicitly
    bool from_exponent = false;
    bool satisfies_nh2 = false;        ///< n h^2 > 1, proxy for n h^2 -> infinity
    bool satisfies_nh4_log2n = false;  ///< n h^4 log^2 n < 1, proxy for n h^4 log^2 n -> 0
};

[[nodiscard]] Bandwidth bandwidth_from_exponent(std::size_t n, double p);
[[nodiscard]] Bandwidth bandwidth_explicit(std::size_t n, double h);

/// Parses "0.25", "1/4" or "1/2.5" into p.
[[nodiscard]] double parse_exponent(std::string_view text);

}  // namespace nnst
