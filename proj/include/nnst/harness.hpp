#pragma once

// Monte Carlo engine for size and local-power studies.
//
// Replication `rep` of cell (n, p_index) draws its sample path from the
// Philox stream keyed by mix_seed({base_seed, n, p_index, rep}). Replications
// run in parallel, each one serially; per-replication outcomes land in a
// vector indexed by rep and are then counted, so no reported number depends
// on the worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nnst/dgp.hpp"
#include "nnst/kernels.hpp"
#include "nnst/teststat.hpp"

namespace nnst {

/// Bandwidth exponent p (h = n^{-p}) together with its input spelling.
struct BandwidthExponent {
    double value = 0.25;
    std::string label = "1/4";

    static BandwidthExponent parse(const std::string& text);
    friend bool operator==(const BandwidthExponent&, const BandwidthExponent&) = default;
};

/// How rho_n scales with the bandwidth when it is not fixed.
///   h_inverse: rho_n = 1 / (n^{1/4 + nu/3} h^{1/4})
///   h_direct:  rho_n = h^{1/4} / n^{1/4 + nu/3}
enum class RhoRule { h_inverse, h_direct };

[[nodiscard]] RhoRule parse_rho_rule(const std::string& name);
[[nodiscard]] std::string rho_rule_name(RhoRule rule);
[[nodiscard]] double rho_from_rule(RhoRule rule, std::size_t n, double h, double nu);

struct AlternativeConfig {
    double nu = 0.0;
    /// Fixed deviation scale; empty means rho_n follows `rule`.
    std::optional<double> rho_n;
    RhoRule rule = RhoRule::h_inverse;

    friend bool operator==(const AlternativeConfig&, const AlternativeConfig&) = default;
};

inline constexpr std::uint64_t kDefaultBaseSeed = 20120615;

struct ExperimentConfig {
    std::vector<std::size_t> n_list{100, 200, 500};
    std::vector<BandwidthExponent> p_list{{0.25, "1/4"}, {1.0 / 3.0, "1/3"}, {0.4, "1/2.5"}};
    double r = 0.0;
    EtaSpec eta;
    double kappa = 0.0;
    std::string model = "linear";
    std::optional<AlternativeConfig> alt;
    std::size_t reps = 5000;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::vector<double> levels{0.05, 0.01};
    KernelFamily kernel = KernelFamily::gaussian;
    std::vector<double> theta_true{0.0, 1.0};  ///< truth theta_0 + theta_1 x

    void validate() const;
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct RateCell {
    std::size_t n = 0;
    std::string p_label;
    double p = 0.0;
    double level = 0.0;
    double rate = 0.0;
    double se = 0.0;  ///< sqrt(rate (1 - rate) / valid)
    std::size_t rejections = 0;
    std::size_t valid = 0;

    friend bool operator==(const RateCell&, const RateCell&) = default;
};

struct CellFailures {
    std::size_t n = 0;
    std::string p_label;
    std::size_t failed = 0;  ///< estimation failures or degenerate statistics, excluded from rates

    friend bool operator==(const CellFailures&, const CellFailures&) = default;
};

struct Report {
    ExperimentConfig config;
    std::vector<RateCell> cells;  ///< ordered by n, then p, then level
    std::vector<CellFailures> failures;
    double runtime_seconds = 0.0;

    [[nodiscard]] const RateCell& cell(std::size_t n, const std::string& p_label, double level) const;
    friend bool operator==(const Report&, const Report&) = default;
};

struct ReplicationOutcome {
    bool failed = false;
    double z = 0.0;
};

[[nodiscard]] std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t n, std::size_t p_index,
                                             std::size_t rep);

/// One replication of cell (n, p_index).
[[nodiscard]] ReplicationOutcome run_replication(const ExperimentConfig& config, std::size_t n,
                                                 std::size_t p_index, std::size_t rep);

/// All replications of one cell, in rep order.
[[nodiscard]] std::vector<ReplicationOutcome> run_cell(const ExperimentConfig& config, std::size_t n,
                                                       std::size_t p_index);

/// Size study; config.alt must be empty.
[[nodiscard]] Report run_size(const ExperimentConfig& config);
/// Local power study; config.alt must be set.
[[nodiscard]] Report run_power(const ExperimentConfig& config);
/// Dispatches on config.alt.
[[nodiscard]] Report run_experiment(const ExperimentConfig& config);

/// Z draws for the first (n, p) of a null config, failures dropped.
[[nodiscard]] std::vector<double> null_distribution_sample(const ExperimentConfig& config);

struct NullSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double q95 = 0.0;
    double ks = 0.0;  ///< distance to N(0, 1)
    double excess_kurtosis = 0.0;
};

[[nodiscard]] NullSummary summarize_null(std::span<const double> z);

}  // namespace nnst
