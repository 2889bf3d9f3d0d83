#pragma once

// Local time demonstration: sup discrepancy between the pair functional and
// omega * L on coupled samples, plus window sensitivity of the estimate.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nnst/dgp.hpp"

namespace nnst {

struct LocaltimeDemoOptions {
    std::vector<std::size_t> n_list{500, 1000, 2000};
    std::size_t seeds = 10;
    double kappa = 0.0;
    EtaSpec eta;
    double bw_exponent = 1.0 / 3.0;  ///< c_n = sqrt(n) phi / h, h = n^{-p}
    std::size_t m = 20000;           ///< grid size for the sensitivity rows
    std::size_t sensitivity_paths = 5;
    std::uint64_t base_seed = 20120615;
};

/// CSV with header section,n,seed,epsilon,value. "discrepancy" rows carry
/// sup_r |S_[nr] - omega L(r, 0)| per (n, seed); "sensitivity" rows carry
/// L(1, 0) on a Brownian path of m steps at eps/2, eps and 2 eps (n = m).
[[nodiscard]] std::string localtime_demo_csv(const LocaltimeDemoOptions& options);

}  // namespace nnst
