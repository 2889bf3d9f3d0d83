#include "nnst/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nnst/error.hpp"

namespace nnst {

namespace {

// Rates as printed, three decimals.
const std::vector<PublishedTable> kTables = {
    {1, "Size, i.i.d. eta", std::nullopt, {
        {0.0, EtaMode::iid, 0.0, {{{0.028, 0.035, 0.033}, {0.034, 0.042, 0.041}, {0.044, 0.045, 0.050}}}, {{{0.006, 0.006, 0.007}, {0.007, 0.007, 0.008}, {0.009, 0.010, 0.010}}}},
        {0.5, EtaMode::iid, 0.0, {{{0.030, 0.035, 0.040}, {0.038, 0.044, 0.045}, {0.041, 0.045, 0.048}}}, {{{0.006, 0.007, 0.007}, {0.009, 0.008, 0.008}, {0.008, 0.009, 0.009}}}},
        {-0.5, EtaMode::iid, 0.0, {{{0.031, 0.035, 0.037}, {0.036, 0.045, 0.046}, {0.041, 0.047, 0.051}}}, {{{0.007, 0.008, 0.008}, {0.007, 0.008, 0.009}, {0.009, 0.010, 0.011}}}},
    }},
    {2, "Size, AR(1) eta, r = +-0.5", std::nullopt, {
        {0.5, EtaMode::ar, 0.4, {{{0.034, 0.038, 0.041}, {0.044, 0.044, 0.047}, {0.058, 0.058, 0.057}}}, {{{0.002, 0.004, 0.005}, {0.004, 0.006, 0.007}, {0.007, 0.010, 0.011}}}},
        {0.5, EtaMode::ar, -0.4, {{{0.038, 0.042, 0.046}, {0.051, 0.051, 0.051}, {0.070, 0.061, 0.057}}}, {{{0.013, 0.013, 0.011}, {0.018, 0.015, 0.014}, {0.026, 0.022, 0.016}}}},
        {-0.5, EtaMode::ar, 0.4, {{{0.034, 0.038, 0.040}, {0.044, 0.044, 0.048}, {0.058, 0.058, 0.057}}}, {{{0.002, 0.004, 0.005}, {0.004, 0.006, 0.007}, {0.007, 0.009, 0.011}}}},
        {-0.5, EtaMode::ar, -0.4, {{{0.035, 0.040, 0.043}, {0.050, 0.049, 0.050}, {0.073, 0.064, 0.056}}}, {{{0.012, 0.012, 0.012}, {0.018, 0.015, 0.013}, {0.026, 0.018, 0.016}}}},
    }},
    {3, "Size, AR(1) eta, r = +-0.75", std::nullopt, {
        {0.75, EtaMode::ar, 0.4, {{{0.036, 0.038, 0.039}, {0.043, 0.049, 0.050}, {0.057, 0.055, 0.053}}}, {{{0.003, 0.003, 0.004}, {0.005, 0.006, 0.007}, {0.007, 0.009, 0.008}}}},
        {0.75, EtaMode::ar, -0.4, {{{0.074, 0.068, 0.027}, {0.108, 0.096, 0.087}, {0.177, 0.140, 0.115}}}, {{{0.036, 0.033, 0.027}, {0.050, 0.043, 0.034}, {0.094, 0.062, 0.048}}}},
        {0.75, EtaMode::iid, 0.0, {{{0.026, 0.029, 0.032}, {0.037, 0.044, 0.046}, {0.040, 0.042, 0.047}}}, {{{0.005, 0.006, 0.006}, {0.007, 0.008, 0.010}, {0.008, 0.009, 0.009}}}},
        {-0.75, EtaMode::iid, 0.0, {{{0.027, 0.035, 0.036}, {0.036, 0.040, 0.043}, {0.041, 0.045, 0.044}}}, {{{0.005, 0.008, 0.007}, {0.008, 0.010, 0.010}, {0.008, 0.008, 0.009}}}},
        {-0.75, EtaMode::ar, 0.4, {{{0.074, 0.071, 0.063}, {0.103, 0.085, 0.074}, {0.135, 0.105, 0.088}}}, {{{0.003, 0.004, 0.004}, {0.011, 0.012, 0.011}, {0.027, 0.020, 0.015}}}},
        {-0.75, EtaMode::ar, -0.4, {{{0.070, 0.066, 0.065}, {0.109, 0.094, 0.087}, {0.175, 0.136, 0.109}}}, {{{0.033, 0.026, 0.023}, {0.055, 0.042, 0.033}, {0.093, 0.065, 0.048}}}},
    }},
    {4, "Local power, nu = 3, AR(1) eta", 3.0, {
        {0.5, EtaMode::ar, 0.4, {{{0.819, 0.779, 0.743}, {0.906, 0.878, 0.845}, {0.971, 0.950, 0.923}}}, {{{0.787, 0.739, 0.693}, {0.892, 0.849, 0.811}, {0.963, 0.935, 0.901}}}},
        {0.5, EtaMode::ar, -0.4, {{{0.247, 0.211, 0.179}, {0.358, 0.306, 0.265}, {0.522, 0.448, 0.389}}}, {{{0.197, 0.154, 0.126}, {0.302, 0.247, 0.199}, {0.458, 0.376, 0.310}}}},
        {-0.5, EtaMode::ar, 0.4, {{{0.829, 0.780, 0.743}, {0.910, 0.879, 0.845}, {0.965, 0.947, 0.921}}}, {{{0.792, 0.742, 0.696}, {0.891, 0.851, 0.813}, {0.957, 0.931, 0.903}}}},
        {-0.5, EtaMode::ar, -0.4, {{{0.238, 0.204, 0.176}, {0.352, 0.297, 0.253}, {0.513, 0.431, 0.367}}}, {{{0.189, 0.151, 0.127}, {0.295, 0.239, 0.193}, {0.449, 0.367, 0.301}}}},
    }},
    {5, "Local power, nu = 2, AR(1) eta", 2.0, {
        {0.5, EtaMode::ar, 0.4, {{{0.357, 0.282, 0.228}, {0.484, 0.389, 0.315}, {0.682, 0.557, 0.458}}}, {{{0.282, 0.205, 0.147}, {0.418, 0.310, 0.228}, {0.616, 0.482, 0.376}}}},
        {0.5, EtaMode::ar, -0.4, {{{0.058, 0.054, 0.053}, {0.103, 0.083, 0.068}, {0.169, 0.118, 0.094}}}, {{{0.027, 0.020, 0.016}, {0.048, 0.034, 0.024}, {0.098, 0.057, 0.036}}}},
        {-0.5, EtaMode::ar, 0.4, {{{0.114, 0.123, 0.128}, {0.226, 0.235, 0.244}, {0.437, 0.457, 0.462}}}, {{{0.065, 0.066, 0.067}, {0.157, 0.159, 0.160}, {0.350, 0.359, 0.367}}}},
        {-0.5, EtaMode::ar, -0.4, {{{0.056, 0.050, 0.046}, {0.102, 0.082, 0.066}, {0.173, 0.123, 0.096}}}, {{{0.022, 0.016, 0.014}, {0.053, 0.031, 0.022}, {0.103, 0.061, 0.037}}}},
    }},
    {6, "Local power, nu = 1.5, AR(1) eta", 1.5, {
        {0.5, EtaMode::ar, 0.4, {{{0.058, 0.051, 0.045}, {0.087, 0.065, 0.057}, {0.158, 0.103, 0.077}}}, {{{0.021, 0.012, 0.010}, {0.040, 0.022, 0.015}, {0.096, 0.046, 0.024}}}},
        {0.5, EtaMode::ar, -0.4, {{{0.043, 0.040, 0.041}, {0.061, 0.058, 0.055}, {0.096, 0.074, 0.070}}}, {{{0.016, 0.014, 0.012}, {0.024, 0.019, 0.015}, {0.038, 0.031, 0.023}}}},
        {-0.5, EtaMode::ar, 0.4, {{{0.066, 0.053, 0.050}, {0.093, 0.065, 0.052}, {0.152, 0.094, 0.090}}}, {{{0.025, 0.015, 0.011}, {0.046, 0.023, 0.015}, {0.088, 0.042, 0.023}}}},
        {-0.5, EtaMode::ar, -0.4, {{{0.049, 0.049, 0.049}, {0.063, 0.058, 0.059}, {0.092, 0.074, 0.064}}}, {{{0.018, 0.017, 0.013}, {0.024, 0.021, 0.017}, {0.037, 0.029, 0.021}}}},
    }},
};

const std::array<BandwidthExponent, 3> kPublishedP{{{0.25, "1/4"}, {1.0 / 3.0, "1/3"}, {0.4, "1/2.5"}}};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string block_title(const PublishedBlock& b) {
    std::string s = "r = " + fmt("%g", b.r);
    if (b.mode == EtaMode::ar) s += ", lambda = " + fmt("%g", b.lambda);
    return s;
}

}  // namespace

const PublishedTable& published_table(int number) {
    if (number < 1 || number > static_cast<int>(kTables.size()))
        throw InvalidSpec("no published table " + std::to_string(number) + " (expected 1..6)");
    return kTables[static_cast<std::size_t>(number - 1)];
}

double reproduction_tolerance(bool power, double level, double published) {
    if (power) return published >= 0.2 ? 0.03 : 0.015;
    return level >= 0.05 ? 0.010 : 0.005;
}

ExperimentConfig block_config(const PublishedTable& table, std::size_t block, std::size_t reps,
                              std::uint64_t base_seed) {
    const PublishedBlock& b = table.blocks.at(block);
    ExperimentConfig c;
    c.n_list.assign(kPublishedN.begin(), kPublishedN.end());
    c.p_list.assign(kPublishedP.begin(), kPublishedP.end());
    c.r = b.r;
    c.eta = b.mode == EtaMode::ar ? EtaSpec::ar(b.lambda) : EtaSpec::iid();
    if (table.nu) {
        AlternativeConfig alt;
        alt.nu = *table.nu;
        alt.rule = kReproductionRhoRule;
        c.alt = alt;
    }
    c.reps = reps;
    c.base_seed = base_seed;
    return c;
}

std::vector<ReproductionCell> compare_block(const PublishedTable& table, std::size_t block, const Report& report) {
    const PublishedBlock& b = table.blocks.at(block);
    std::vector<ReproductionCell> out;
    for (std::size_t i = 0; i < kPublishedN.size(); ++i) {
        const std::size_t n = kPublishedN[i];
        if (std::find(report.config.n_list.begin(), report.config.n_list.end(), n) == report.config.n_list.end())
            continue;
        for (double level : {0.05, 0.01}) {
            for (std::size_t j = 0; j < kPublishedP.size(); ++j) {
                const RateCell& rc = report.cell(n, kPublishedP[j].label, level);
                ReproductionCell c;
                c.block = block;
                c.n = n;
                c.p_label = kPublishedP[j].label;
                c.level = level;
                c.published = level == 0.05 ? b.at05[i][j] : b.at01[i][j];
                c.simulated = rc.rate;
                c.se = rc.se;
                c.tolerance = reproduction_tolerance(table.nu.has_value(), level, c.published);
                // small slack so a rate exactly on the boundary passes
                c.pass = std::abs(c.simulated - c.published) <= c.tolerance + 1e-9;
                out.push_back(c);
            }
        }
    }
    return out;
}

Reproduction reproduce_table(int number, const ReproduceOptions& options) {
    const PublishedTable& table = published_table(number);
    Reproduction rep;
    rep.table = number;
    std::vector<std::size_t> blocks = options.blocks;
    if (blocks.empty())
        for (std::size_t b = 0; b < table.blocks.size(); ++b) blocks.push_back(b);
    for (std::size_t b : blocks) {
        if (b >= table.blocks.size())
            throw InvalidSpec("table " + std::to_string(number) + " has no block " + std::to_string(b));
        ExperimentConfig c = block_config(table, b, options.reps, options.base_seed);
        if (!options.n_list.empty()) c.n_list = options.n_list;
        Report r = run_experiment(c);
        auto cells = compare_block(table, b, r);
        rep.cells.insert(rep.cells.end(), cells.begin(), cells.end());
        rep.reports.push_back(std::move(r));
        rep.blocks.push_back(b);
    }
    return rep;
}

std::size_t Reproduction::failures() const {
    std::size_t k = 0;
    for (const auto& c : cells) k += c.pass ? 0 : 1;
    return k;
}

bool Reproduction::all_pass() const { return failures() == 0; }

std::string Reproduction::markdown() const {
    const PublishedTable& t = published_table(table);
    std::ostringstream os;
    os << "## Table " << table << ": " << t.title << "\n\n";
    os << "Each cell: published / simulated (verdict). Tolerances: ";
    if (t.nu)
        os << "+-0.03 for published values >= 0.2, +-0.015 below.\n";
    else
        os << "+-0.010 at 5%, +-0.005 at 1%.\n";
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const Report& r = reports[k];
        const std::size_t block = blocks[k];
        os << "\n### " << block_title(t.blocks[block]) << ", reps = " << r.config.reps << "\n";
        for (double level : {0.05, 0.01}) {
            os << "\n" << (level == 0.05 ? "Nominal size 5%" : "Nominal size 1%") << "\n\n| n |";
            for (const auto& p : kPublishedP) os << " h = n^-" << p.label << " |";
            os << "\n|---|---|---|---|\n";
            for (std::size_t n : r.config.n_list) {
                os << "| " << n << " |";
                for (const auto& p : kPublishedP) {
                    for (const auto& c : cells) {
                        if (c.block == block && c.n == n && c.p_label == p.label && c.level == level) {
                            os << ' ' << fmt("%.3f", c.published) << " / " << fmt("%.3f", c.simulated) << " ("
                               << (c.pass ? "ok" : "FAIL") << ") |";
                        }
                    }
                }
                os << '\n';
            }
        }
    }
    os << "\n" << cells.size() - failures() << " of " << cells.size() << " cells within tolerance.\n";
    return os.str();
}

}  // namespace nnst
