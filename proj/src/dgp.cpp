#include "nnst/dgp.hpp"

#include <cmath>
#include <string>

#include "nnst/error.hpp"

namespace nnst {

namespace {

constexpr double kTailMass = 1e-12;

}  // namespace

EtaSpec EtaSpec::linear(std::vector<double> phi) {
    // Keep the shortest prefix whose dropped tail has mass below kTailMass.
    double tail = 0.0;
    std::size_t keep = phi.size();
    while (keep > 1 && tail + std::abs(phi[keep - 1]) < kTailMass) {
        tail += std::abs(phi[keep - 1]);
        --keep;
    }
    phi.resize(keep);
    return {EtaMode::linear, 0.0, std::move(phi)};
}

void EtaSpec::validate() const {
    if (!std::isfinite(lambda)) throw InvalidSpec("eta: lambda must be finite");
    switch (mode) {
        case EtaMode::iid:
            break;
        case EtaMode::ar:
            if (std::abs(lambda) >= 1.0)
                throw InvalidSpec("eta: AR mode requires |lambda| < 1, got " + std::to_string(lambda));
            break;
        case EtaMode::ma:
            if (lambda == -1.0) throw InvalidSpec("eta: MA(-1) has zero long-run coefficient");
            break;
        case EtaMode::linear:
            if (coefficients.empty()) throw InvalidSpec("eta: linear mode needs coefficients");
            for (double c : coefficients)
                if (!std::isfinite(c)) throw InvalidSpec("eta: non-finite linear coefficient");
            break;
    }
    if (long_run_phi(*this) == 0.0) throw InvalidSpec("eta: long-run coefficient phi must be nonzero");
}

Innovations draw_innovations(std::size_t n, InnovationSpec spec, NormalStream& stream) {
    if (!(std::abs(spec.r) <= 1.0)) throw InvalidSpec("innovations: |r| must be <= 1");
    const double s = std::sqrt(1.0 - spec.r * spec.r);
    Innovations out;
    out.eps.resize(n);
    out.u.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double e = stream.next();
        const double xi = stream.next();
        out.eps[t] = e;
        out.u[t] = spec.r * e + s * xi;
    }
    return out;
}

Innovations draw_innovations(std::size_t n, InnovationSpec spec, std::uint64_t seed) {
    NormalStream stream(seed);
    return draw_innovations(n, spec, stream);
}

EtaPresample draw_presample(const EtaSpec& spec, NormalStream& stream) {
    spec.validate();
    EtaPresample pre;
    switch (spec.mode) {
        case EtaMode::iid:
            break;
        case EtaMode::ar:
            for (std::size_t k = 0; k < kArBurnIn; ++k) pre.eta0 = spec.lambda * pre.eta0 + stream.next();
            break;
        case EtaMode::ma:
            pre.eps_history.push_back(stream.next());
            break;
        case EtaMode::linear:
            pre.eps_history.resize(spec.coefficients.size() - 1);
            for (double& e : pre.eps_history) e = stream.next();
            break;
    }
    return pre;
}

std::vector<double> build_eta(std::span<const double> eps, const EtaSpec& spec, const EtaPresample& presample) {
    spec.validate();
    if (eps.empty()) throw InvalidSpec("build_eta: empty innovation series");
    const std::size_t n = eps.size();
    std::vector<double> eta(n);
    switch (spec.mode) {
        case EtaMode::iid:
            eta.assign(eps.begin(), eps.end());
            break;
        case EtaMode::ar: {
            double prev = presample.eta0;
            for (std::size_t t = 0; t < n; ++t) {
                prev = spec.lambda * prev + eps[t];
                eta[t] = prev;
            }
            break;
        }
        case EtaMode::ma: {
            const double eps0 = presample.eps_history.empty() ? 0.0 : presample.eps_history.front();
            eta[0] = eps[0] + spec.lambda * eps0;
            for (std::size_t t = 1; t < n; ++t) eta[t] = eps[t] + spec.lambda * eps[t - 1];
            break;
        }
        case EtaMode::linear: {
            const auto& phi = spec.coefficients;
            // eps_{t-k} for t - k <= 0 comes from the presample history.
            auto lagged = [&](std::size_t t, std::size_t k) -> double {
                if (k <= t) return eps[t - k];
                const std::size_t back = k - t - 1;
                return back < presample.eps_history.size() ? presample.eps_history[back] : 0.0;
            };
            for (std::size_t t = 0; t < n; ++t) {
                double acc = 0.0;
                for (std::size_t k = 0; k < phi.size(); ++k) acc += phi[k] * lagged(t, k);
                eta[t] = acc;
            }
            break;
        }
    }
    return eta;
}

std::vector<double> build_regressor(std::span<const double> eta, RegressorSpec spec) {
    if (eta.size() != spec.n)
        throw LengthMismatch("build_regressor: eta has " + std::to_string(eta.size()) + " entries, spec.n = " +
                             std::to_string(spec.n));
    if (spec.n < 1) throw InvalidSpec("build_regressor: n must be positive");
    const double rho = 1.0 + spec.kappa / static_cast<double>(spec.n);
    if (!std::isfinite(rho)) throw InvalidSpec("build_regressor: rho is not finite");
    std::vector<double> x(spec.n);
    double prev = 0.0;
    for (std::size_t t = 0; t < spec.n; ++t) {
        prev = rho * prev + eta[t];
        x[t] = prev;
    }
    return x;
}

std::vector<double> build_response(std::span<const double> x, std::span<const double> u,
                                   const std::function<double(double)>& f_true) {
    if (x.size() != u.size()) throw LengthMismatch("build_response: x and u differ in length");
    std::vector<double> y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        y[t] = f_true(x[t]) + u[t];
        if (!std::isfinite(y[t]))
            throw NonFiniteData("build_response: non-finite response at position " + std::to_string(t));
    }
    return y;
}

double long_run_phi(const EtaSpec& spec) {
    switch (spec.mode) {
        case EtaMode::iid:
            return 1.0;
        case EtaMode::ar:
            return 1.0 / (1.0 - spec.lambda);
        case EtaMode::ma:
            return 1.0 + spec.lambda;
        case EtaMode::linear: {
            double s = 0.0;
            for (double c : spec.coefficients) s += c;
            return s;
        }
    }
    return 1.0;
}

SamplePath simulate_path(const SimulationSpec& spec, std::uint64_t seed) {
    if (spec.n < 2) throw InvalidSpec("simulate_path: n must be at least 2");
    NormalStream stream(seed);
    const EtaPresample pre = draw_presample(spec.eta, stream);
    Innovations inn = draw_innovations(spec.n + 1, spec.innovations, stream);

    SamplePath path;
    path.n = spec.n;
    path.seed = seed;
    path.eps.assign(inn.eps.begin(), inn.eps.end() - 1);
    path.u.assign(inn.u.begin() + 1, inn.u.end());
    const auto eta = build_eta(path.eps, spec.eta, pre);
    path.x = build_regressor(eta, {spec.kappa, spec.n});
    path.y = build_response(path.x, path.u, spec.f_true);
    return path;
}

}  // namespace nnst
