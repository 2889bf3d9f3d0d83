#include "nnst/localtime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nnst/error.hpp"
#include "nnst/numeric.hpp"

namespace nnst {

namespace {

/// floor(count * r) with a guard against r * count landing a hair below an integer.
std::size_t horizon_points(std::size_t count, double r) {
    if (!(r >= 0.0)) throw InvalidSpec("time horizon r must be nonnegative");
    const double v = std::floor(static_cast<double>(count) * r + 1e-9);
    return std::min(count, static_cast<std::size_t>(std::max(0.0, v)));
}

}  // namespace

GaussPath GaussPath::from_values(std::vector<double> values, double kappa) {
    if (values.size() < 2) throw InvalidSpec("GaussPath: need at least two grid values");
    GaussPath p;
    p.m = values.size() - 1;
    p.dt = 1.0 / static_cast<double>(p.m);
    p.values = std::move(values);
    p.kappa = kappa;
    return p;
}

GaussPath simulate_G(double kappa, std::size_t m, std::uint64_t seed) {
    if (m < 2) throw InvalidSpec("simulate_G: m must be at least 2");
    if (!std::isfinite(kappa)) throw InvalidSpec("simulate_G: kappa must be finite");
    GaussPath p;
    p.m = m;
    p.dt = 1.0 / static_cast<double>(m);
    p.kappa = kappa;
    p.seed = seed;
    p.values.resize(m + 1);
    p.values[0] = 0.0;
    const double decay = std::exp(kappa * p.dt);
    const double sd = kappa == 0.0 ? std::sqrt(p.dt) : std::sqrt(std::expm1(2.0 * kappa * p.dt) / (2.0 * kappa));
    NormalStream stream(seed);
    for (std::size_t i = 1; i <= m; ++i) p.values[i] = decay * p.values[i - 1] + sd * stream.next();
    return p;
}

double default_window(const GaussPath& path) {
    const double sd = std::sqrt(variance(path.values));
    return std::pow(static_cast<double>(path.m), -0.25) * sd;
}

LocalTimeEstimate intersection_L(const GaussPath& path, double r, double u, double epsilon, Execution exec) {
    if (!(epsilon > 0.0)) throw InvalidSpec("intersection_L: epsilon must be positive");
    if (r > 1.0 + 1e-12) throw InvalidSpec("intersection_L: horizon r exceeds the simulated grid");
    const std::size_t count = horizon_points(path.m, r);

    std::vector<double> sorted(path.values.begin() + 1, path.values.begin() + 1 + static_cast<std::ptrdiff_t>(count));
    std::sort(sorted.begin(), sorted.end());

    // (a - v) - u is non-increasing in v, so each window is a contiguous run
    // of the sorted values; the bounds use the same expression as the naive loop.
    long long pairs = 0;
    const long long nc = static_cast<long long>(count);
    const bool fan_out = exec == Execution::parallel && count >= 4096;
#pragma omp parallel for reduction(+ : pairs) schedule(static) if (fan_out)
    for (long long i = 1; i <= nc; ++i) {
        const double a = path.values[static_cast<std::size_t>(i)];
        const auto lo = std::partition_point(sorted.begin(), sorted.end(),
                                             [&](double v) { return !((a - v) - u < epsilon); });
        const auto hi =
            std::partition_point(lo, sorted.end(), [&](double v) { return (a - v) - u > -epsilon; });
        pairs += hi - lo;
    }

    LocalTimeEstimate est;
    est.pairs_in_window = static_cast<std::size_t>(pairs);
    est.value = static_cast<double>(pairs) * path.dt * path.dt / (2.0 * epsilon);
    est.r = r;
    est.u = u;
    est.epsilon = epsilon;
    est.m = path.m;
    return est;
}

OccupationComparison occupation_identity(const GaussPath& path, std::size_t bins, double epsilon) {
    if (bins < 10) throw InvalidSpec("occupation_identity: need at least 10 bins");
    OccupationComparison out;
    out.L_direct = intersection_L(path, 1.0, 0.0, epsilon).value;

    const auto first = path.values.begin() + 1;
    const auto [lo_it, hi_it] = std::minmax_element(first, path.values.end());
    const double lo = *lo_it;
    const double width = (*hi_it - lo) / static_cast<double>(bins);
    if (!(width > 0.0)) throw InvalidSpec("occupation_identity: path is constant");

    std::vector<std::size_t> hist(bins, 0);
    for (auto it = first; it != path.values.end(); ++it) {
        const auto b = static_cast<std::size_t>((*it - lo) / width);
        ++hist[std::min(b, bins - 1)];
    }
    // l(a) = count * dt / width, and sum l^2 width = dt^2 sum count^2 / width.
    CompensatedSum acc;
    for (auto c : hist) acc.add(static_cast<double>(c) * static_cast<double>(c));
    out.L_via_density = acc.value() * path.dt * path.dt / width;
    out.bin_width = width;
    return out;
}

PairFunction PairFunction::gaussian(double scale) {
    PairFunction g;
    g.shape_ = Shape::gaussian;
    g.scale_ = scale;
    return g;
}

PairFunction PairFunction::indicator(double half_width, double scale) {
    if (!(half_width > 0.0)) throw InvalidSpec("indicator: half width must be positive");
    PairFunction g;
    g.shape_ = Shape::indicator;
    g.half_width_ = half_width;
    g.scale_ = scale;
    return g;
}

PairFunction PairFunction::cosine(double scale) {
    PairFunction g;
    g.shape_ = Shape::cosine;
    g.scale_ = scale;
    return g;
}

PairFunction PairFunction::constant(double value) {
    PairFunction g;
    g.shape_ = Shape::constant;
    g.scale_ = value;
    return g;
}

PairFunction PairFunction::custom(std::function<double(double)> fn, bool symmetric) {
    if (!fn) throw InvalidSpec("custom pair function is empty");
    PairFunction g;
    g.shape_ = Shape::custom;
    g.fn_ = std::move(fn);
    g.symmetric_ = symmetric;
    return g;
}

double PairFunction::operator()(double x) const {
    switch (shape_) {
        case Shape::gaussian:
            return scale_ * 0.3989422804014327 * std::exp(-0.5 * x * x);
        case Shape::indicator:
            return std::abs(x) < half_width_ ? scale_ : 0.0;
        case Shape::cosine:
            return scale_ * std::cos(x);
        case Shape::constant:
            return scale_;
        case Shape::custom:
            return fn_(x);
    }
    return 0.0;
}

double PairFunction::integral(double radius) const {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    switch (shape_) {
        case Shape::gaussian:
            return scale_;
        case Shape::indicator:
            return scale_ * 2.0 * half_width_;
        case Shape::cosine:
            return scale_ == 0.0 ? 0.0 : nan;
        case Shape::constant:
            return scale_ == 0.0 ? 0.0 : nan;
        case Shape::custom:
            return integrate(fn_, -radius, radius, 1e-12);
    }
    return nan;
}

FunctionalConfig FunctionalConfig::with_integral(PairFunction g, double c_n) {
    FunctionalConfig c;
    c.omega = g.integral();
    c.g = std::move(g);
    c.c_n = c_n;
    return c;
}

namespace {

/// Row k of the prefix decomposition:
///   R_k = g(0) + sum_{j<k} [g(c (x_k - x_j)) + g(c (x_j - x_k))]
/// so that sum_{k,j<N} g(c (x_k - x_j)) = sum_{k<N} R_k.
template <class Fn>
std::vector<double> row_terms(std::span<const double> x, std::size_t rows, double c, bool symmetric, Fn g,
                              Execution exec) {
    std::vector<double> out(rows);
    const long long nr = static_cast<long long>(rows);
    const bool fan_out = exec == Execution::parallel && rows >= 256;
    const double g0 = g(0.0);
#pragma omp parallel for schedule(dynamic, 16) if (fan_out)
    for (long long kk = 0; kk < nr; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        const double xk = x[k];
        CompensatedSum acc;
        if (symmetric) {
            for (std::size_t j = 0; j < k; ++j) acc.add(g(c * (xk - x[j])));
            out[k] = g0 + 2.0 * acc.value();
        } else {
            for (std::size_t j = 0; j < k; ++j) {
                acc.add(g(c * (xk - x[j])));
                acc.add(g(c * (x[j] - xk)));
            }
            out[k] = g0 + acc.value();
        }
    }
    return out;
}

std::vector<double> dispatch_rows(std::span<const double> x, std::size_t rows, double c, const PairFunction& g,
                                  Execution exec) {
    const double scale = g.scale();
    switch (g.shape()) {
        case PairFunction::Shape::gaussian:
            return row_terms(
                x, rows, c, true, [scale](double z) { return scale * 0.3989422804014327 * std::exp(-0.5 * z * z); },
                exec);
        case PairFunction::Shape::indicator: {
            const double hw = g.half_width();
            return row_terms(
                x, rows, c, true, [scale, hw](double z) { return std::abs(z) < hw ? scale : 0.0; }, exec);
        }
        case PairFunction::Shape::cosine:
            return row_terms(x, rows, c, true, [scale](double z) { return scale * std::cos(z); }, exec);
        case PairFunction::Shape::constant:
            return row_terms(x, rows, c, true, [scale](double) { return scale; }, exec);
        case PairFunction::Shape::custom:
            return row_terms(x, rows, c, g.symmetric(), [&g](double z) { return g.function()(z); }, exec);
    }
    return {};
}

}  // namespace

std::vector<double> functional_S_profile(std::span<const double> x_norm, const FunctionalConfig& config,
                                         std::span<const double> grid_r, Execution exec) {
    if (!(config.c_n > 0.0)) throw InvalidSpec("functional_S: c_n must be positive");
    const std::size_t n = x_norm.size();
    if (n == 0) throw InvalidSpec("functional_S: empty series");
    std::size_t max_rows = 0;
    for (double r : grid_r) max_rows = std::max(max_rows, horizon_points(n, r));

    const auto rows = dispatch_rows(x_norm, max_rows, config.c_n, config.g, exec);
    std::vector<double> prefix(max_rows + 1, 0.0);
    CompensatedSum running;
    for (std::size_t k = 0; k < max_rows; ++k) {
        running.add(rows[k]);
        prefix[k + 1] = running.value();
    }
    const double nd = static_cast<double>(n);
    std::vector<double> out;
    out.reserve(grid_r.size());
    for (double r : grid_r) out.push_back(config.c_n * prefix[horizon_points(n, r)] / (nd * nd));
    return out;
}

double functional_S(std::span<const double> x_norm, const FunctionalConfig& config, double r, Execution exec) {
    const double grid[] = {r};
    return functional_S_profile(x_norm, config, grid, exec).front();
}

CoupledSample couple(std::span<const double> eps, const CouplingSpec& spec, const EtaPresample& presample,
                     NormalStream& bridge) {
    if (spec.n < 2) throw InvalidSpec("couple: n must be at least 2");
    if (eps.size() != spec.n) throw LengthMismatch("couple: innovation stream length differs from n");
    if (spec.refine < 1) throw InvalidSpec("couple: refine must be at least 1");

    const std::size_t n = spec.n;
    const double nd = static_cast<double>(n);
    const double phi = long_run_phi(spec.eta);

    CoupledSample out;
    out.n = n;
    out.refine = spec.refine;
    const auto eta = build_eta(eps, spec.eta, presample);
    const auto y = build_regressor(eta, {spec.kappa, n});
    out.x_norm.resize(n);
    const double norm = std::sqrt(nd) * phi;
    for (std::size_t k = 0; k < n; ++k) out.x_norm[k] = y[k] / norm;

    const std::size_t m = n * spec.refine;
    const double dt = 1.0 / static_cast<double>(m);
    std::vector<double> w(m + 1, 0.0);
    const double inv_sqrt_n = 1.0 / std::sqrt(nd);
    double knot = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double next_knot = knot + eps[k - 1] * inv_sqrt_n;
        const std::size_t base = (k - 1) * spec.refine;
        // Sequential Brownian-bridge fill between the partial-sum knots.
        double prev = knot;
        for (std::size_t q = 1; q < spec.refine; ++q) {
            const double remaining = static_cast<double>(spec.refine - q + 1);  // steps from prev to next knot
            const double mean = prev + (next_knot - prev) / remaining;
            const double var = dt * (remaining - 1.0) / remaining;
            prev = mean + std::sqrt(var) * bridge.next();
            w[base + q] = prev;
        }
        w[base + spec.refine] = next_knot;
        knot = next_knot;
    }

    std::vector<double> g(m + 1, 0.0);
    if (spec.kappa == 0.0) {
        g = w;
    } else {
        const double decay = std::exp(spec.kappa * dt);
        double integral = 0.0;
        for (std::size_t i = 1; i <= m; ++i) {
            integral = decay * integral + 0.5 * dt * (decay * w[i - 1] + w[i]);
            g[i] = w[i] + spec.kappa * integral;
        }
    }
    out.g1 = GaussPath::from_values(std::move(g), spec.kappa);
    return out;
}

CoupledSample couple(const CouplingSpec& spec, std::uint64_t seed) {
    NormalStream stream(seed);
    const EtaPresample pre = draw_presample(spec.eta, stream);
    std::vector<double> eps(spec.n);
    for (double& e : eps) e = stream.next();
    CoupledSample s = couple(eps, spec, pre, stream);
    s.g1.seed = seed;
    return s;
}

CoupledDiscrepancy coupled_convergence(const CoupledSample& sample, const FunctionalConfig& config,
                                       std::span<const double> grid_r, double epsilon, Execution exec) {
    if (!(config.omega != 0.0) || !std::isfinite(config.omega))
        throw InvalidSpec("coupled_convergence: omega = int g must be finite and nonzero");
    CoupledDiscrepancy out;
    out.epsilon = epsilon > 0.0 ? epsilon : default_window(sample.g1);
    out.S = functional_S_profile(sample.x_norm, config, grid_r, exec);
    out.L.reserve(grid_r.size());
    for (std::size_t i = 0; i < grid_r.size(); ++i) {
        out.L.push_back(intersection_L(sample.g1, grid_r[i], 0.0, out.epsilon, exec).value);
        out.sup_discrepancy = std::max(out.sup_discrepancy, std::abs(out.S[i] - config.omega * out.L[i]));
    }
    return out;
}

RiemannComparison riemann_compare(const CoupledSample& sample, const PairFunction& g, Execution exec) {
    FunctionalConfig cfg;
    cfg.g = g;
    cfg.c_n = 1.0;
    cfg.omega = 1.0;
    RiemannComparison out;
    out.lhs = functional_S(sample.x_norm, cfg, 1.0, exec);
    const std::span<const double> grid(sample.g1.values.data() + 1, sample.g1.m);
    out.rhs = functional_S(grid, cfg, 1.0, exec);
    return out;
}

namespace reference {

LocalTimeEstimate intersection_L(const GaussPath& path, double r, double u, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidSpec("intersection_L: epsilon must be positive");
    const std::size_t count = horizon_points(path.m, r);
    std::size_t pairs = 0;
    for (std::size_t i = 1; i <= count; ++i)
        for (std::size_t j = 1; j <= count; ++j)
            if (std::abs(path.values[i] - path.values[j] - u) < epsilon) ++pairs;
    LocalTimeEstimate est;
    est.pairs_in_window = pairs;
    est.value = static_cast<double>(pairs) * path.dt * path.dt / (2.0 * epsilon);
    est.r = r;
    est.u = u;
    est.epsilon = epsilon;
    est.m = path.m;
    return est;
}

double functional_S(std::span<const double> x_norm, const FunctionalConfig& config, double r) {
    const std::size_t n = x_norm.size();
    const std::size_t count = horizon_points(n, r);
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k)
        for (std::size_t j = 0; j < count; ++j) acc += config.g(config.c_n * (x_norm[k] - x_norm[j]));
    const double nd = static_cast<double>(n);
    return config.c_n * acc / (nd * nd);
}

}  // namespace reference

}  // namespace nnst
