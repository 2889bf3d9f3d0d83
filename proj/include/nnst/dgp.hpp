#pragma once

// Data-generating processes: correlated Gaussian innovations, linear-process
// regressor errors, near-integrated regressors and responses.
//
// Index alignment. Innovation pairs (eps_t, u_t) are i.i.d. bivariate normal
// with unit variances and correlation r. A SamplePath of length n stores
//   x[i]   = x_{i+1}          (regressor, x_0 = 0 implicit)
//   u[i]   = u_{i+2}          (regression error paired with x[i])
//   y[i]   = y_{i+2} = f(x[i]) + u[i]
//   eps[i] = eps_{i+1}        (innovation driving x)
// so the regression pair at position i is (x_t, y_{t+1}) with t = i + 1, and
// u_{t+1} is contemporaneously correlated with eps_{t+1}, the innovation that
// first enters x_{t+1}.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nnst/rng.hpp"

namespace nnst {

struct InnovationSpec {
    double r = 0.0;  ///< corr(eps_t, u_t), |r| <= 1
};

enum class EtaMode { iid, ar, ma, linear };

/// Regressor error eta_t = sum_k phi_k eps_{t-k}.
struct EtaSpec {
    EtaMode mode = EtaMode::iid;
    double lambda = 0.0;               ///< AR / MA coefficient
    std::vector<double> coefficients;  ///< phi_0, phi_1, ... for EtaMode::linear

    static EtaSpec iid() { return {}; }
    static EtaSpec ar(double lambda) { return {EtaMode::ar, lambda, {}}; }
    static EtaSpec ma(double lambda) { return {EtaMode::ma, lambda, {}}; }
    /// General linear process. Trailing coefficients are dropped once their
    /// absolute tail mass falls below 1e-12.
    static EtaSpec linear(std::vector<double> phi);

    /// Throws InvalidSpec for |lambda| >= 1 in AR mode or a zero long-run sum.
    void validate() const;

    friend bool operator==(const EtaSpec&, const EtaSpec&) = default;
};

struct RegressorSpec {
    double kappa = 0.0;  ///< rho = 1 + kappa / n
    std::size_t n = 0;
};

struct SamplePath {
    std::size_t n = 0;
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> y;
    std::vector<double> eps;
    std::uint64_t seed = 0;
};

struct Innovations {
    std::vector<double> eps;
    std::vector<double> u;
};

/// State carried in from before t = 1: eta_0 for AR, eps_0, eps_{-1}, ... for
/// MA and linear modes. Value-initialized presample means a zero start.
struct EtaPresample {
    double eta0 = 0.0;
    std::vector<double> eps_history;  ///< eps_0, eps_{-1}, ...
};

/// Number of AR(1) recursion steps run from eta = 0 before eta_0 is taken.
inline constexpr std::size_t kArBurnIn = 500;

/// Draws n i.i.d. pairs via u = r eps + sqrt(1 - r^2) xi, consuming two
/// normals (eps then xi) per pair.
[[nodiscard]] Innovations draw_innovations(std::size_t n, InnovationSpec spec, NormalStream& stream);
[[nodiscard]] Innovations draw_innovations(std::size_t n, InnovationSpec spec, std::uint64_t seed);

/// Burn-in for the eta recursion. AR: kArBurnIn steps from zero. MA: one
/// extra innovation eps_0. Linear: L pre-sample innovations. IID: no draws.
[[nodiscard]] EtaPresample draw_presample(const EtaSpec& spec, NormalStream& stream);

[[nodiscard]] std::vector<double> build_eta(std::span<const double> eps, const EtaSpec& spec,
                                            const EtaPresample& presample = {});

/// x_t = (1 + kappa/n) x_{t-1} + eta_t, x_0 = 0.
[[nodiscard]] std::vector<double> build_regressor(std::span<const double> eta, RegressorSpec spec);

/// y[i] = f_true(x[i]) + u[i]; throws NonFiniteData on a non-finite result.
[[nodiscard]] std::vector<double> build_response(std::span<const double> x, std::span<const double> u,
                                                 const std::function<double(double)>& f_true);

/// phi = sum_k phi_k.
[[nodiscard]] double long_run_phi(const EtaSpec& spec);

struct SimulationSpec {
    std::size_t n = 0;
    InnovationSpec innovations;
    EtaSpec eta;
    double kappa = 0.0;
    std::function<double(double)> f_true = [](double x) { return x; };
};

/// One full replication. Stream order: presample draws, then n + 1
/// innovation pairs (t = 1 .. n + 1); u_1 and eps_{n+1} are discarded.
[[nodiscard]] SamplePath simulate_path(const SimulationSpec& spec, std::uint64_t seed);

}  // namespace nnst
