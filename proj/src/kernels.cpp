#include "nnst/kernels.hpp"

#include <charconv>
#include <limits>
#include <string>

#include "nnst/error.hpp"
#include "nnst/numeric.hpp"

namespace nnst {

Kernel Kernel::parse(std::string_view name) {
    if (name == "gaussian") return Kernel(KernelFamily::gaussian);
    if (name == "epanechnikov") return Kernel(KernelFamily::epanechnikov);
    if (name == "uniform") return Kernel(KernelFamily::uniform);
    throw InvalidSpec("unknown kernel '" + std::string(name) + "' (expected gaussian|epanechnikov|uniform)");
}

std::string_view Kernel::name() const noexcept {
    switch (family_) {
        case KernelFamily::gaussian:
            return "gaussian";
        case KernelFamily::epanechnikov:
            return "epanechnikov";
        case KernelFamily::uniform:
            return "uniform";
    }
    return "gaussian";
}

double Kernel::support_radius() const noexcept {
    switch (family_) {
        case KernelFamily::gaussian:
            return std::numeric_limits<double>::infinity();
        case KernelFamily::epanechnikov:
            return 1.0;
        case KernelFamily::uniform:
            return 0.5;
    }
    return 0.0;
}

double kernel_l2(Kernel k) {
    switch (k.family()) {
        case KernelFamily::gaussian:
            return 0.5 / std::sqrt(std::numbers::pi);
        case KernelFamily::epanechnikov:
            return 0.6;
        case KernelFamily::uniform:
            return 1.0;
    }
    return 0.0;
}

namespace {

double integration_radius(Kernel k) { return k.family() == KernelFamily::gaussian ? 40.0 : k.support_radius(); }

}  // namespace

double kernel_l2_quadrature(Kernel k) {
    const double a = integration_radius(k);
    return integrate([k](double x) { return k(x) * k(x); }, -a, a, 1e-14);
}

double kernel_moment(Kernel k, unsigned m) {
    const double md = static_cast<double>(m);
    switch (k.family()) {
        case KernelFamily::gaussian:
            // E|Z|^m = 2^{m/2} Gamma((m+1)/2) / sqrt(pi)
            return std::pow(2.0, 0.5 * md) * std::tgamma(0.5 * (md + 1.0)) / std::sqrt(std::numbers::pi);
        case KernelFamily::epanechnikov:
            return 3.0 / ((md + 1.0) * (md + 3.0));
        case KernelFamily::uniform:
            return std::pow(0.5, md) / (md + 1.0);
    }
    throw DivergentMoment("kernel_moment: unknown family");
}

double kernel_moment_quadrature(Kernel k, unsigned m) {
    const double a = integration_radius(k);
    const double md = static_cast<double>(m);
    // Integrate over the nonnegative half and double; the kernel is symmetric.
    return 2.0 * integrate([k, md](double x) { return std::pow(x, md) * k(x); }, 0.0, a, 1e-14);
}

namespace {

Bandwidth with_flags(Bandwidth b, std::size_t n) {
    const double nd = static_cast<double>(n);
    const double logn = std::log(nd);
    b.satisfies_nh2 = nd * b.h * b.h > 1.0;
    b.satisfies_nh4_log2n = nd * std::pow(b.h, 4) * logn * logn < 1.0;
    return b;
}

}  // namespace

Bandwidth bandwidth_from_exponent(std::size_t n, double p) {
    if (n < 2) throw InvalidSpec("bandwidth: n must be at least 2");
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidSpec("bandwidth: exponent p must be positive");
    Bandwidth b;
    b.h = std::pow(static_cast<double>(n), -p);
    b.exponent = p;
    b.from_exponent = true;
    return with_flags(b, n);
}

Bandwidth bandwidth_explicit(std::size_t n, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidSpec("bandwidth: h must be positive");
    Bandwidth b;
    b.h = h;
    return with_flags(b, n);
}

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw InvalidSpec("cannot parse number '" + std::string(s) + "'");
    return v;
}

}  // namespace

double parse_exponent(std::string_view text) {
    const auto slash = text.find('/');
    double p;
    if (slash == std::string_view::npos) {
        p = parse_number(text);
    } else {
        const double num = parse_number(text.substr(0, slash));
        const double den = parse_number(text.substr(slash + 1));
        if (den == 0.0) throw InvalidSpec("bandwidth exponent has zero denominator");
        p = num / den;
    }
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidSpec("bandwidth exponent must be positive");
    return p;
}

}  // namespace nnst
