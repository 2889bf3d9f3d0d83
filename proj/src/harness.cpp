#include "nnst/harness.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "nnst/error.hpp"
#include "nnst/models.hpp"
#include "nnst/numeric.hpp"

namespace nnst {

RhoRule parse_rho_rule(const std::string& name) {
    if (name == "h-inverse") return RhoRule::h_inverse;
    if (name == "h-direct") return RhoRule::h_direct;
    throw InvalidSpec("unknown rho rule '" + name + "' (expected h-inverse or h-direct)");
}

std::string rho_rule_name(RhoRule rule) { return rule == RhoRule::h_inverse ? "h-inverse" : "h-direct"; }

double rho_from_rule(RhoRule rule, std::size_t n, double h, double nu) {
    const double inv = local_alternative_scale(n, h, nu);
    if (rule == RhoRule::h_inverse) return inv;
    return inv * std::sqrt(h);
}

BandwidthExponent BandwidthExponent::parse(const std::string& text) { return {parse_exponent(text), text}; }

void ExperimentConfig::validate() const {
    if (reps < 1) throw InvalidSpec("experiment: reps must be >= 1");
    if (n_list.empty() || p_list.empty()) throw InvalidSpec("experiment: n and bandwidth lists must be nonempty");
    for (auto n : n_list)
        if (n < 10) throw InvalidSpec("experiment: every n must be >= 10");
    for (const auto& p : p_list)
        if (!(p.value > 0.0)) throw InvalidSpec("experiment: bandwidth exponents must be positive");
    for (double a : levels)
        if (!(a > 0.0 && a < 1.0)) throw InvalidSpec("experiment: levels must lie in (0, 1)");
    if (!(std::abs(r) <= 1.0)) throw InvalidSpec("experiment: |r| must be <= 1");
    eta.validate();
    if (alt) {
        if (!(alt->nu >= 0.0)) throw InvalidSpec("experiment: nu must be >= 0");
        if (alt->rho_n && !(*alt->rho_n >= 0.0)) throw InvalidSpec("experiment: rho_n must be >= 0");
    }
    if (theta_true.size() != 2) throw InvalidSpec("experiment: theta_true must hold (theta_0, theta_1)");
    const NullModel m = model_from_name(model);
    if (m.name != "linear" && !m.name.starts_with("poly:"))
        throw InvalidSpec("experiment: the simulated truth is linear, so the null model must be linear or poly:k");
    if (m.dim < 2) throw InvalidSpec("experiment: poly:1 cannot nest the linear truth");
}

const RateCell& Report::cell(std::size_t n, const std::string& p_label, double level) const {
    for (const auto& c : cells)
        if (c.n == n && c.p_label == p_label && c.level == level) return c;
    throw InvalidSpec("report has no cell n=" + std::to_string(n) + " p=" + p_label);
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t n, std::size_t p_index, std::size_t rep) {
    return mix_seed({base_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p_index),
                     static_cast<std::uint64_t>(rep)});
}

ReplicationOutcome run_replication(const ExperimentConfig& config, std::size_t n, std::size_t p_index,
                                   std::size_t rep) {
    const double h = bandwidth_from_exponent(n, config.p_list.at(p_index).value).h;
    const double th0 = config.theta_true[0];
    const double th1 = config.theta_true[1];

    SimulationSpec sim;
    sim.n = n;
    sim.innovations.r = config.r;
    sim.eta = config.eta;
    sim.kappa = config.kappa;
    if (config.alt) {
        AlternativeSpec alt;
        alt.nu = config.alt->nu;
        alt.rho_n = config.alt->rho_n.value_or(rho_from_rule(config.alt->rule, n, h, config.alt->nu));
        sim.f_true = apply_alternative([th0, th1](double x) { return th0 + th1 * x; }, alt);
    } else {
        sim.f_true = [th0, th1](double x) { return th0 + th1 * x; };
    }

    ReplicationOutcome out;
    try {
        const SamplePath path = simulate_path(sim, replication_seed(config.base_seed, n, p_index, rep));
        FitResult fit;
        if (config.model == "linear") {
            fit = fit_linear(path);
        } else {
            // Start from the truth perturbed by 10% (alternating sign, at
            // least 0.1 in absolute terms).
            const NullModel model = model_from_name(config.model);
            std::vector<double> init(model.dim, 0.0);
            init[0] = th0;
            init[1] = th1;
            for (std::size_t j = 0; j < init.size(); ++j) {
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                init[j] += sign * 0.1 * std::max(1.0, std::abs(init[j]));
            }
            fit = fit_nls(model, path.x, path.y, init);
            if (!fit.converged) throw EstimationFailure("replication did not converge");
        }
        const TestResult t =
            test_from_residuals(fit.residuals, path.x, Kernel(config.kernel), h, 0.05, Execution::serial);
        out.z = t.Z;
    } catch (const Error&) {
        out.failed = true;
    }
    return out;
}

std::vector<ReplicationOutcome> run_cell(const ExperimentConfig& config, std::size_t n, std::size_t p_index) {
    std::vector<ReplicationOutcome> outcomes(config.reps);
    const long long reps = static_cast<long long>(config.reps);
#pragma omp parallel for schedule(dynamic, 8)
    for (long long rep = 0; rep < reps; ++rep)
        outcomes[static_cast<std::size_t>(rep)] = run_replication(config, n, p_index, static_cast<std::size_t>(rep));
    return outcomes;
}

Report run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.config = config;
    std::vector<double> critical;
    for (double a : config.levels) critical.push_back(critical_value(a));

    for (std::size_t n : config.n_list) {
        for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
            const auto outcomes = run_cell(config, n, pi);
            std::size_t failed = 0;
            for (const auto& o : outcomes) failed += o.failed ? 1 : 0;
            const std::size_t valid = outcomes.size() - failed;
            report.failures.push_back({n, config.p_list[pi].label, failed});
            for (std::size_t li = 0; li < config.levels.size(); ++li) {
                std::size_t rejections = 0;
                for (const auto& o : outcomes)
                    if (!o.failed && o.z >= critical[li]) ++rejections;
                RateCell cell;
                cell.n = n;
                cell.p_label = config.p_list[pi].label;
                cell.p = config.p_list[pi].value;
                cell.level = config.levels[li];
                cell.rejections = rejections;
                cell.valid = valid;
                cell.rate = valid > 0 ? static_cast<double>(rejections) / static_cast<double>(valid) : 0.0;
                cell.se = valid > 0 ? std::sqrt(cell.rate * (1.0 - cell.rate) / static_cast<double>(valid)) : 0.0;
                report.cells.push_back(cell);
            }
        }
    }
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Report run_size(const ExperimentConfig& config) {
    if (config.alt) throw InvalidSpec("run_size: configuration carries an alternative");
    return run_experiment(config);
}

Report run_power(const ExperimentConfig& config) {
    if (!config.alt) throw InvalidSpec("run_power: configuration has no alternative");
    return run_experiment(config);
}

std::vector<double> null_distribution_sample(const ExperimentConfig& config) {
    config.validate();
    if (config.alt) throw InvalidSpec("null_distribution_sample: configuration carries an alternative");
    const auto outcomes = run_cell(config, config.n_list.front(), 0);
    std::vector<double> z;
    z.reserve(outcomes.size());
    for (const auto& o : outcomes)
        if (!o.failed) z.push_back(o.z);
    return z;
}

NullSummary summarize_null(std::span<const double> z) {
    NullSummary s;
    s.count = z.size();
    if (z.empty()) return s;
    s.mean = mean(z);
    s.sd = std::sqrt(variance(z));
    s.q95 = quantile(z, 0.95);
    s.ks = ks_distance_normal(z);
    s.excess_kurtosis = excess_kurtosis(z);
    return s;
}

}  // namespace nnst
