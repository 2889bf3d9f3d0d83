#pragma once

// Pairwise kernel sums behind the test statistic:
//   S  = sum_{s != t} u_s u_t K((x_t - x_s) / h)
//   V2 = sum_{s != t} u_s^2 u_t^2 K^2((x_t - x_s) / h)
//
// pair_sums() evaluates the upper triangle once and doubles it. Rows s are
// cut into fixed blocks of kBlockRows; inside a block pairs are visited with s
// ascending, then t ascending, into a compensated accumulator, and the block
// partials are combined in block order. The decomposition does not depend on
// the number of threads, so neither does the result.
//
// reference::pair_sums() is the naive full double loop kept as a test oracle.

#include <cstddef>
#include <span>

#include "nnst/kernels.hpp"
#include "nnst/parallel.hpp"

namespace nnst {

struct PairSums {
    double s = 0.0;
    double v2 = 0.0;
    std::size_t pairs = 0;  ///< ordered pairs (s, t), s != t
};

inline constexpr std::size_t kBlockRows = 16;

[[nodiscard]] PairSums pair_sums(std::span<const double> u, std::span<const double> x, Kernel k, double h,
                                 Execution exec = Execution::parallel);

/// sum_{s != t} K^2((x_t - x_s) / h), the sigma-free part of V2.
[[nodiscard]] double kernel_square_sum(std::span<const double> x, Kernel k, double h,
                                       Execution exec = Execution::parallel);

namespace reference {

[[nodiscard]] PairSums pair_sums(std::span<const double> u, std::span<const double> x, Kernel k, double h);

}  // namespace reference

}  // namespace nnst
