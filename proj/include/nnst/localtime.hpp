#pragma once

// Limit process G(t) = int_0^t e^{kappa (t-s)} dW(s), intersection local time
// estimates, and the partial-sum functional that converges to them.
//
// Conventions. Double sums over a time horizon r run over grid indices
// i, j = 1 .. floor(r m) and include the diagonal i = j, as do the unrestricted
// sums defining L_G(t, u) and S_[nr]. The test statistic S_n in teststat.hpp
// excludes its diagonal; the two conventions are deliberate.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nnst/dgp.hpp"
#include "nnst/parallel.hpp"
#include "nnst/rng.hpp"

namespace nnst {

struct GaussPath {
    std::size_t m = 0;  ///< grid intervals; values has m + 1 entries
    double dt = 0.0;
    std::vector<double> values;  ///< G(i / m), i = 0 .. m, values[0] = 0
    double kappa = 0.0;
    std::uint64_t seed = 0;

    /// Wraps an arbitrary path on [0, 1] (first value is G(0)).
    static GaussPath from_values(std::vector<double> values, double kappa = 0.0);
};

/// Exact transition: G_i = e^{kappa dt} G_{i-1} + xi_i,
/// xi_i ~ N(0, (e^{2 kappa dt} - 1) / (2 kappa)), or N(0, dt) when kappa = 0.
[[nodiscard]] GaussPath simulate_G(double kappa, std::size_t m, std::uint64_t seed);

/// m^{-1/4} * sd(path values).
[[nodiscard]] double default_window(const GaussPath& path);

struct LocalTimeEstimate {
    double value = 0.0;
    double r = 0.0;
    double u = 0.0;
    double epsilon = 0.0;
    std::size_t m = 0;
    std::size_t pairs_in_window = 0;  ///< ordered pairs, diagonal included
};

/// (1 / 2 eps) dt^2 #{(i, j) : i, j <= floor(r m), |G_i - G_j - u| < eps}.
/// Counts with a sorted sweep in O(N log N).
[[nodiscard]] LocalTimeEstimate intersection_L(const GaussPath& path, double r, double u, double epsilon,
                                               Execution exec = Execution::parallel);

struct OccupationComparison {
    double L_direct = 0.0;
    double L_via_density = 0.0;
    double bin_width = 0.0;
};

/// L_direct = intersection_L(path, 1, 0, eps); the occupation density is a
/// time histogram over [min G, max G] with `bins` equal bins, and
/// L_via_density = sum_a l(a)^2 * bin_width.
[[nodiscard]] OccupationComparison occupation_identity(const GaussPath& path, std::size_t bins, double epsilon);

/// Real function g used inside the pair functional. Built-in shapes are
/// evaluated inline; `custom` goes through std::function.
class PairFunction {
public:
    enum class Shape { gaussian, indicator, cosine, constant, custom };

    /// Standard normal density.
    static PairFunction gaussian(double scale = 1.0);
    /// scale * 1[|x| < half_width]
    static PairFunction indicator(double half_width, double scale = 1.0);
    static PairFunction cosine(double scale = 1.0);
    static PairFunction constant(double value);
    static PairFunction custom(std::function<double(double)> g, bool symmetric);

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] Shape shape() const noexcept { return shape_; }
    [[nodiscard]] bool symmetric() const noexcept { return symmetric_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] const std::function<double(double)>& function() const noexcept { return fn_; }

    /// int g; closed form for built-ins (NaN when g is not integrable),
    /// adaptive quadrature over [-radius, radius] for custom g.
    [[nodiscard]] double integral(double radius = 50.0) const;

private:
    Shape shape_ = Shape::gaussian;
    double scale_ = 1.0;
    double half_width_ = 0.0;
    bool symmetric_ = true;
    std::function<double(double)> fn_;
};

struct FunctionalConfig {
    PairFunction g = PairFunction::gaussian();
    double c_n = 1.0;
    double omega = 1.0;  ///< int g

    /// omega taken from g.integral().
    static FunctionalConfig with_integral(PairFunction g, double c_n);
};

/// (c_n / n^2) sum_{k, j <= floor(n r)} g(c_n (x_k - x_j)), n = x_norm.size().
[[nodiscard]] double functional_S(std::span<const double> x_norm, const FunctionalConfig& config, double r,
                                  Execution exec = Execution::parallel);

/// functional_S at every r in grid_r from a single O(n^2) pass.
[[nodiscard]] std::vector<double> functional_S_profile(std::span<const double> x_norm,
                                                       const FunctionalConfig& config,
                                                       std::span<const double> grid_r,
                                                       Execution exec = Execution::parallel);

/// A near-integrated sample and a limit path G_1 built from the same
/// innovations on a richer space.
struct CoupledSample {
    std::vector<double> x_norm;  ///< x_{k,n} = y_{k,n} / (sqrt(n) phi), k = 1 .. n
    GaussPath g1;                ///< on the grid i / (refine * n)
    std::size_t n = 0;
    std::size_t refine = 1;
};

struct CouplingSpec {
    std::size_t n = 0;
    double kappa = 0.0;
    EtaSpec eta;
    std::size_t refine = 2;  ///< grid points of G_1 per observation
};

/// Builds the coupled pair. W_1(k/n) = n^{-1/2} sum_{j<=k} eps_j exactly;
/// between those knots W_1 is filled in with Brownian bridges drawn from
/// `bridge`, and G_1(t) = W_1(t) + kappa int_0^t e^{kappa (t-s)} W_1(s) ds is
/// evaluated by the exponential recursion with trapezoidal panels.
[[nodiscard]] CoupledSample couple(std::span<const double> eps, const CouplingSpec& spec,
                                   const EtaPresample& presample, NormalStream& bridge);

/// Seeded convenience: presample, n innovations and bridge draws all come
/// from NormalStream(seed) in that order.
[[nodiscard]] CoupledSample couple(const CouplingSpec& spec, std::uint64_t seed);

struct CoupledDiscrepancy {
    double sup_discrepancy = 0.0;
    std::vector<double> S;  ///< S_[nr] on grid_r
    std::vector<double> L;  ///< L_{G_1}(r, 0) estimates on grid_r
    double epsilon = 0.0;
};

/// max over grid_r of |S_[nr] - omega L_{G_1}(r, 0)|. epsilon <= 0 selects
/// default_window(g1). Throws InvalidSpec when omega == 0.
[[nodiscard]] CoupledDiscrepancy coupled_convergence(const CoupledSample& sample, const FunctionalConfig& config,
                                                     std::span<const double> grid_r, double epsilon = 0.0,
                                                     Execution exec = Execution::parallel);

struct RiemannComparison {
    double lhs = 0.0;  ///< n^{-2} sum_{k,j} g(x_k - x_j)
    double rhs = 0.0;  ///< dt^2 sum_{i,j} g(G_1(i dt) - G_1(j dt))
};

[[nodiscard]] RiemannComparison riemann_compare(const CoupledSample& sample, const PairFunction& g,
                                                Execution exec = Execution::parallel);

namespace reference {

/// O(N^2) double loop over the same index set as intersection_L.
[[nodiscard]] LocalTimeEstimate intersection_L(const GaussPath& path, double r, double u, double epsilon);

/// Literal double sum, no symmetry or prefix reuse.
[[nodiscard]] double functional_S(std::span<const double> x_norm, const FunctionalConfig& config, double r);

}  // namespace reference

}  // namespace nnst
