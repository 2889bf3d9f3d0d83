#include "nnst/ustat.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "nnst/error.hpp"
#include "nnst/numeric.hpp"

namespace nnst {

namespace {

void check_inputs(std::span<const double> u, std::span<const double> x, double h) {
    if (u.size() != x.size())
        throw LengthMismatch("pair sums: u has " + std::to_string(u.size()) + " entries, x has " +
                             std::to_string(x.size()));
    if (!(h > 0.0)) throw InvalidSpec("pair sums: bandwidth must be positive");
}

struct Partial {
    double s = 0.0;
    double v2 = 0.0;
};

template <class KernelFn>
PairSums blocked_pair_sums(std::span<const double> u, std::span<const double> x, double h, KernelFn kern,
                           Execution exec) {
    const std::size_t n = x.size();
    const double inv_h = 1.0 / h;
    const std::size_t blocks = (n + kBlockRows - 1) / kBlockRows;
    std::vector<Partial> partial(blocks);
    const long long nb = static_cast<long long>(blocks);
    const bool fan_out = exec == Execution::parallel && n >= 4 * kBlockRows;

#pragma omp parallel for schedule(dynamic, 1) if (fan_out)
    for (long long b = 0; b < nb; ++b) {
        CompensatedSum s_acc, v_acc;
        const std::size_t lo = static_cast<std::size_t>(b) * kBlockRows;
        const std::size_t hi = std::min(n, lo + kBlockRows);
        for (std::size_t s = lo; s < hi; ++s) {
            const double us = u[s];
            const double xs = x[s];
            for (std::size_t t = s + 1; t < n; ++t) {
                const double kv = kern((x[t] - xs) * inv_h);
                const double prod = us * u[t];
                s_acc.add(prod * kv);
                v_acc.add(prod * prod * kv * kv);
            }
        }
        partial[static_cast<std::size_t>(b)] = {s_acc.value(), v_acc.value()};
    }

    CompensatedSum s_tot, v_tot;
    for (const auto& p : partial) {
        s_tot.add(p.s);
        v_tot.add(p.v2);
    }
    return {2.0 * s_tot.value(), 2.0 * v_tot.value(), n * (n - 1)};
}

}  // namespace

PairSums pair_sums(std::span<const double> u, std::span<const double> x, Kernel k, double h, Execution exec) {
    check_inputs(u, x, h);
    if (x.size() < 2) return {};
    switch (k.family()) {
        case KernelFamily::gaussian:
            return blocked_pair_sums(u, x, h, [](double z) { return Kernel::gaussian(z); }, exec);
        case KernelFamily::epanechnikov:
            return blocked_pair_sums(u, x, h, [](double z) { return Kernel::epanechnikov(z); }, exec);
        case KernelFamily::uniform:
            return blocked_pair_sums(u, x, h, [](double z) { return Kernel::uniform(z); }, exec);
    }
    return {};
}

double kernel_square_sum(std::span<const double> x, Kernel k, double h, Execution exec) {
    const std::vector<double> ones(x.size(), 1.0);
    return pair_sums(ones, x, k, h, exec).v2;
}

namespace reference {

PairSums pair_sums(std::span<const double> u, std::span<const double> x, Kernel k, double h) {
    check_inputs(u, x, h);
    const std::size_t n = x.size();
    PairSums out;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            const double kv = k((x[t] - x[s]) / h);
            out.s += u[t] * u[s] * kv;
            out.v2 += u[t] * u[t] * u[s] * u[s] * kv * kv;
            ++out.pairs;
        }
    }
    return out;
}

}  // namespace reference

}  // namespace nnst
