#pragma once

// Published size and local-power tables and the machinery that reruns their
// configurations and compares cell by cell.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nnst/harness.hpp"

namespace nnst {

/// One (r, lambda) block: rows n = 100, 200, 500; columns p = 1/4, 1/3, 1/2.5.
struct PublishedBlock {
    double r = 0.0;
    EtaMode mode = EtaMode::iid;
    double lambda = 0.0;
    std::array<std::array<double, 3>, 3> at05{};
    std::array<std::array<double, 3>, 3> at01{};
};

struct PublishedTable {
    int number = 0;
    std::string title;
    std::optional<double> nu;  ///< set for local-power tables
    std::vector<PublishedBlock> blocks;
};

inline constexpr std::array<std::size_t, 3> kPublishedN{100, 200, 500};

/// Tables 1..6; throws InvalidSpec otherwise.
[[nodiscard]] const PublishedTable& published_table(int number);

/// Size cells: 0.010 at 5%, 0.005 at 1%. Power cells: 0.03 when the
/// published value is at least 0.2, else 0.015.
[[nodiscard]] double reproduction_tolerance(bool power, double level, double published);

/// Rule used for rho_n when rerunning the power tables.
inline constexpr RhoRule kReproductionRhoRule = RhoRule::h_direct;

/// Experiment that regenerates one block of a published table.
[[nodiscard]] ExperimentConfig block_config(const PublishedTable& table, std::size_t block, std::size_t reps,
                                            std::uint64_t base_seed);

struct ReproductionCell {
    std::size_t block = 0;
    std::size_t n = 0;
    std::string p_label;
    double level = 0.0;
    double published = 0.0;
    double simulated = 0.0;
    double se = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Reproduction {
    int table = 0;
    std::vector<Report> reports;      ///< one per block run
    std::vector<std::size_t> blocks;  ///< block index of each report
    std::vector<ReproductionCell> cells;

    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] std::size_t failures() const;
    /// Side-by-side table of published vs simulated values with a verdict per cell.
    [[nodiscard]] std::string markdown() const;
};

struct ReproduceOptions {
    std::size_t reps = 5000;
    std::uint64_t base_seed = kDefaultBaseSeed;
    /// Restrict to these block indices; empty means all blocks.
    std::vector<std::size_t> blocks;
    /// Restrict to these sample sizes; empty means 100, 200 and 500.
    std::vector<std::size_t> n_list;
};

[[nodiscard]] Reproduction reproduce_table(int number, const ReproduceOptions& options = {});

/// Compares an existing report against block `block` of a published table.
[[nodiscard]] std::vector<ReproductionCell> compare_block(const PublishedTable& table, std::size_t block,
                                                          const Report& report);

}  // namespace nnst
