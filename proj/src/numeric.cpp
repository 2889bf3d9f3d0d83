#include "nnst/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>
#include <stdexcept>

#include "nnst/error.hpp"

namespace nnst {

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_upper_tail(double z) noexcept { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

namespace {

double poly(const double* c, int degree, double r) {
    double v = c[degree];
    for (int i = degree - 1; i >= 0; --i) v = v * r + c[i];
    return v;
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");

    static constexpr double a[] = {3.387132872796366608,  133.14166789178437745, 1971.5909503065514427,
                                   13731.693765509461125, 45921.953931549871457, 67265.770927008700853,
                                   33430.575583588128105, 2509.0809287301226727};
    static constexpr double b[] = {1.0,
                                   42.313330701600911252,
                                   687.1870074920579083,
                                   5394.1960214247511077,
                                   21213.794301586595867,
                                   39307.89580009271061,
                                   28729.085735721942674,
                                   5226.495278852545925};
    static constexpr double c[] = {1.42343711074968357734,  4.6303378461565452959,   5.7694972214606914055,
                                   3.64784832476320460504,  1.27045825245236838258,  0.24178072517745061177,
                                   0.0227238449892691845833, 7.7454501427834140764e-4};
    static constexpr double d[] = {1.0,
                                   2.05319162663775882187,
                                   1.6763848301838038494,
                                   0.68976733498510000455,
                                   0.14810397642748007459,
                                   0.0151986665636164571966,
                                   5.475938084995344946e-4,
                                   1.05075007164441684324e-9};
    static constexpr double e[] = {6.6579046435011037772,  5.4637849111641143699,    1.7848265399172913358,
                                   0.29656057182850489123, 0.026532189526576123093,  0.0012426609473880784386,
                                   2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[] = {1.0,
                                   0.59983220655588793769,
                                   0.13692988092273580531,
                                   0.0148753612908506148525,
                                   7.868691311456132591e-4,
                                   1.8463183175100546818e-5,
                                   1.4215117583164458887e-7,
                                   2.04426310338993978564e-15};

    const double q = p - 0.5;
    double x;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        x = q * poly(a, 7, r) / poly(b, 7, r);
    } else {
        double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
        if (r <= 5.0) {
            r -= 1.6;
            x = poly(c, 7, r) / poly(d, 7, r);
        } else {
            r -= 5.0;
            x = poly(e, 7, r) / poly(f, 7, r);
        }
        if (q < 0.0) x = -x;
    }
    // One Newton step against erfc polishes the last ulp or two.
    const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (density > 0.0) {
        const double err = (q < 0.0) ? normal_cdf(x) - p : (1.0 - p) - normal_upper_tail(x);
        x -= err / density;
    }
    return x;
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                     double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_panel(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_panel(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    // Start from 16 panels so narrow features are not missed by the first estimate.
    constexpr int kPanels = 16;
    const double width = (b - a) / kPanels;
    CompensatedSum total;
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == kPanels) ? b : lo + width;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fhi = f(hi), fmid = f(mid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total.add(simpson_panel(f, lo, flo, hi, fhi, mid, fmid, whole, tol / kPanels, max_depth));
    }
    return total.value();
}

double mean(std::span<const double> v) noexcept {
    if (v.empty()) return 0.0;
    CompensatedSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
}

double variance(std::span<const double> v) noexcept {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    CompensatedSum s;
    for (double x : v) s.add((x - m) * (x - m));
    return s.value() / static_cast<double>(v.size());
}

double quantile(std::span<const double> v, double p) {
    if (v.empty()) throw InvalidSpec("quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec("quantile: p must lie in [0, 1]");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const double pos = p * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

double ks_distance_normal(std::span<const double> v) {
    if (v.empty()) throw InvalidSpec("ks_distance_normal: empty sample");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double F = normal_cdf(s[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double excess_kurtosis(std::span<const double> v) noexcept {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    CompensatedSum m2, m4;
    for (double x : v) {
        const double d2 = (x - m) * (x - m);
        m2.add(d2);
        m4.add(d2 * d2);
    }
    const double n = static_cast<double>(v.size());
    const double var = m2.value() / n;
    if (var == 0.0) return 0.0;
    return m4.value() / n / (var * var) - 3.0;
}

}  // namespace nnst
