#include "nnst/demo.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nnst/error.hpp"
#include "nnst/localtime.hpp"

namespace nnst {

std::string localtime_demo_csv(const LocaltimeDemoOptions& options) {
    if (options.seeds == 0) throw InvalidSpec("localtime demo: seeds must be >= 1");
    options.eta.validate();
    const double phi = long_run_phi(options.eta);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);

    std::ostringstream os;
    char buf[160];
    os << "section,n,seed,epsilon,value\n";
    for (std::size_t n : options.n_list) {
        if (n < 10) throw InvalidSpec("localtime demo: n must be >= 10");
        const double h = std::pow(static_cast<double>(n), -options.bw_exponent);
        const auto config = FunctionalConfig::with_integral(PairFunction::gaussian(),
                                                            std::sqrt(static_cast<double>(n)) * phi / h);
        for (std::size_t s = 0; s < options.seeds; ++s) {
            CouplingSpec spec;
            spec.n = n;
            spec.kappa = options.kappa;
            spec.eta = options.eta;
            const std::uint64_t seed = mix_seed({options.base_seed, n, s});
            const auto d = coupled_convergence(couple(spec, seed), config, grid);
            std::snprintf(buf, sizeof buf, "discrepancy,%zu,%llu,%.10g,%.10g\n", n,
                          static_cast<unsigned long long>(seed), d.epsilon, d.sup_discrepancy);
            os << buf;
        }
    }
    for (std::size_t s = 0; s < options.sensitivity_paths; ++s) {
        const std::uint64_t seed = mix_seed({options.base_seed, options.m, s, 1});
        const GaussPath path = simulate_G(options.kappa, options.m, seed);
        const double eps = default_window(path);
        for (double f : {0.5, 1.0, 2.0}) {
            const auto L = intersection_L(path, 1.0, 0.0, f * eps);
            std::snprintf(buf, sizeof buf, "sensitivity,%zu,%llu,%.10g,%.10g\n", options.m,
                          static_cast<unsigned long long>(seed), f * eps, L.value);
            os << buf;
        }
    }
    return os.str();
}

}  // namespace nnst
