// nnst: size / power studies, null-distribution draws, observed-data tests,
// local time demo and table reproduction.
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 degenerate statistic,
// 4 reproduction outside tolerance.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nnst/datafile.hpp"
#include "nnst/demo.hpp"
#include "nnst/error.hpp"
#include "nnst/harness.hpp"
#include "nnst/parallel.hpp"
#include "nnst/report.hpp"
#include "nnst/reproduce.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kDegenerate = 3, kReproduction = 4 };

struct Common {
    std::vector<std::size_t> n;
    std::vector<std::string> bw_exp;
    double r = 0.0;
    std::string eta = "iid";
    double lambda = 0.0;
    double kappa = 0.0;
    std::optional<double> nu;
    std::size_t reps = 5000;
    std::uint64_t seed = nnst::kDefaultBaseSeed;
    std::string kernel = "gaussian";
    std::string format = "markdown";
    std::string out;
    int workers = 0;
    bool runtime = false;
    std::string model = "linear";
    std::string rho_rule = "h-inverse";
    std::optional<double> rho;
};

void add_common(CLI::App* app, Common& c, bool with_alt) {
    app->add_option("--n", c.n, "sample sizes (repeatable or comma separated)")->delimiter(',');
    app->add_option("--bw-exp", c.bw_exp, "bandwidth exponents p, h = n^-p; fractions like 1/2.5 allowed")
        ->delimiter(',');
    app->add_option("--r", c.r, "corr(eps, u)");
    app->add_option("--eta", c.eta, "regressor error: iid, ar or ma")->check(CLI::IsMember({"iid", "ar", "ma"}));
    app->add_option("--lambda", c.lambda, "AR / MA coefficient");
    app->add_option("--kappa", c.kappa, "near-integration parameter, rho = 1 + kappa/n");
    app->add_option("--reps", c.reps, "replications per cell");
    app->add_option("--seed", c.seed, "base seed");
    app->add_option("--kernel", c.kernel, "gaussian, epanechnikov or uniform");
    app->add_option("--format", c.format, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
    app->add_option("--out", c.out, "output file (default stdout)");
    app->add_option("--workers", c.workers, "OpenMP worker count (default: runtime choice)");
    app->add_option("--model", c.model, "null model: linear or poly:k");
    app->add_flag("--include-runtime", c.runtime, "write wall-clock runtime into the report");
    if (with_alt) {
        app->add_option("--nu", c.nu, "local alternative exponent, m(x) = |x|^nu")->required();
        app->add_option("--rho-rule", c.rho_rule, "h-inverse or h-direct")
            ->check(CLI::IsMember({"h-inverse", "h-direct"}));
        app->add_option("--rho", c.rho, "fixed rho_n, overrides --rho-rule");
    }
}

nnst::ExperimentConfig make_config(const Common& c) {
    nnst::ExperimentConfig cfg;
    if (!c.n.empty()) cfg.n_list = c.n;
    if (!c.bw_exp.empty()) {
        cfg.p_list.clear();
        for (const auto& s : c.bw_exp) cfg.p_list.push_back(nnst::BandwidthExponent::parse(s));
    }
    cfg.r = c.r;
    const auto mode = nnst::parse_eta_mode(c.eta);
    cfg.eta = mode == nnst::EtaMode::ar ? nnst::EtaSpec::ar(c.lambda)
              : mode == nnst::EtaMode::ma ? nnst::EtaSpec::ma(c.lambda)
                                          : nnst::EtaSpec::iid();
    cfg.kappa = c.kappa;
    cfg.model = c.model;
    if (c.nu) {
        nnst::AlternativeConfig alt;
        alt.nu = *c.nu;
        alt.rule = nnst::parse_rho_rule(c.rho_rule);
        alt.rho_n = c.rho;
        cfg.alt = alt;
    }
    cfg.reps = c.reps;
    cfg.base_seed = c.seed;
    cfg.kernel = nnst::Kernel::parse(c.kernel).family();
    return cfg;
}

void apply_workers(int workers) {
    if (workers < 0) throw nnst::InvalidSpec("--workers must be >= 1");
    if (workers > 0) nnst::set_worker_count(workers);
}

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

int run_study(const Common& c) {
    apply_workers(c.workers);
    const auto report = nnst::run_experiment(make_config(c));
    nnst::write_report(report, nnst::parse_report_format(c.format), c.out, {c.runtime});
    return kOk;
}

int run_nulldist(const Common& c) {
    apply_workers(c.workers);
    auto cfg = make_config(c);
    if (cfg.n_list.size() > 1 || cfg.p_list.size() > 1)
        std::cerr << "nulldist: using the first --n and --bw-exp only\n";
    cfg.n_list.resize(1);
    cfg.p_list.resize(1);
    const auto z = nnst::null_distribution_sample(cfg);
    const auto s = nnst::summarize_null(z);
    std::ostringstream os;
    const auto format = nnst::parse_report_format(c.format);
    if (format == nnst::ReportFormat::json) {
        nlohmann::json j = {{"n", cfg.n_list[0]},
                            {"p_label", cfg.p_list[0].label},
                            {"reps", cfg.reps},
                            {"base_seed", cfg.base_seed},
                            {"failed", cfg.reps - z.size()},
                            {"summary",
                             {{"count", s.count},
                              {"mean", s.mean},
                              {"sd", s.sd},
                              {"q95", s.q95},
                              {"ks", s.ks},
                              {"excess_kurtosis", s.excess_kurtosis}}},
                            {"z", z}};
        os << j.dump(2) << '\n';
    } else if (format == nnst::ReportFormat::csv) {
        os << "index,z\n";
        for (std::size_t i = 0; i < z.size(); ++i) os << i << ',' << shortest(z[i]) << '\n';
    } else {
        os << "Null draws of Z: n = " << cfg.n_list[0] << ", h = n^-" << cfg.p_list[0].label << ", " << s.count
           << " valid of " << cfg.reps << "\n\n| statistic | value | N(0,1) |\n|---|---|---|\n"
           << "| mean | " << fmt("%.4f", s.mean) << " | 0 |\n"
           << "| sd | " << fmt("%.4f", s.sd) << " | 1 |\n"
           << "| 95th percentile | " << fmt("%.4f", s.q95) << " | 1.6449 |\n"
           << "| excess kurtosis | " << fmt("%.4f", s.excess_kurtosis) << " | 0 |\n"
           << "| KS distance | " << fmt("%.4f", s.ks) << " | |\n";
    }
    nnst::write_text(os.str(), c.out);
    return kOk;
}

struct TestArgs {
    std::string file;
    std::string model = "linear";
    std::string kernel = "gaussian";
    std::string bw_exp = "1/3";
    std::optional<double> h;
    double alpha = 0.05;
    std::vector<double> theta_init;
    std::string format = "markdown";
    std::string out;
};

int run_test_cmd(const TestArgs& a) {
    nnst::CsvTestOptions o;
    o.model = a.model;
    o.kernel = nnst::Kernel::parse(a.kernel).family();
    o.bw_exponent = nnst::parse_exponent(a.bw_exp);
    o.h = a.h;
    o.alpha = a.alpha;
    if (!a.theta_init.empty()) o.theta_init = a.theta_init;
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw nnst::InvalidSpec("--alpha must lie in (0, 1)");
    const auto res = nnst::apply_test_csv(a.file, o);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    const auto& t = res.result;
    std::ostringstream os;
    const auto format = nnst::parse_report_format(a.format);
    if (format == nnst::ReportFormat::json) {
        nlohmann::json j = {{"S", t.S},         {"V2", t.V2},           {"Z", t.Z},
                            {"p_value", t.p_value}, {"alpha", t.alpha}, {"reject", t.reject_alpha},
                            {"reject_05", t.reject_05}, {"reject_01", t.reject_01}, {"n", t.n},
                            {"h", t.h},         {"kernel", t.kernel},   {"model", a.model},
                            {"theta_hat", t.theta_hat}, {"pairs_used", t.pairs_used}, {"warnings", res.warnings}};
        os << j.dump(2) << '\n';
    } else if (format == nnst::ReportFormat::csv) {
        os << "n,h,kernel,model,S,V2,Z,p_value,alpha,reject\n"
           << t.n << ',' << shortest(t.h) << ',' << t.kernel << ',' << a.model << ',' << shortest(t.S) << ','
           << shortest(t.V2) << ',' << shortest(t.Z) << ',' << shortest(t.p_value) << ','
           << fmt("%g", t.alpha) << ',' << (t.reject_alpha ? 1 : 0) << '\n';
    } else {
        os << res.verdict << '\n';
    }
    nnst::write_text(os.str(), a.out);
    if (format != nnst::ReportFormat::markdown && !a.out.empty()) std::cout << res.verdict << '\n';
    return kOk;
}

struct DemoArgs {
    std::vector<std::size_t> n{500, 1000, 2000};
    std::size_t seeds = 10;
    std::size_t m = 20000;
    std::size_t paths = 5;
    double kappa = 0.0;
    std::string eta = "iid";
    double lambda = 0.0;
    std::string bw_exp = "1/3";
    std::uint64_t seed = nnst::kDefaultBaseSeed;
    std::string format = "csv";
    std::string out;
    int workers = 0;
};

int run_demo(const DemoArgs& a) {
    apply_workers(a.workers);
    nnst::LocaltimeDemoOptions o;
    o.n_list = a.n;
    o.seeds = a.seeds;
    o.m = a.m;
    o.sensitivity_paths = a.paths;
    o.kappa = a.kappa;
    const auto mode = nnst::parse_eta_mode(a.eta);
    o.eta = mode == nnst::EtaMode::ar ? nnst::EtaSpec::ar(a.lambda)
            : mode == nnst::EtaMode::ma ? nnst::EtaSpec::ma(a.lambda)
                                        : nnst::EtaSpec::iid();
    o.bw_exponent = nnst::parse_exponent(a.bw_exp);
    o.base_seed = a.seed;
    nnst::write_text(nnst::localtime_demo_csv(o), a.out);
    return kOk;
}

struct ReproduceArgs {
    int table = 0;
    std::size_t reps = 5000;
    std::uint64_t seed = nnst::kDefaultBaseSeed;
    std::vector<std::size_t> blocks;
    std::vector<std::size_t> n;
    std::string format = "markdown";
    std::string out;
    int workers = 0;
    bool runtime = false;
};

int run_reproduce(const ReproduceArgs& a) {
    apply_workers(a.workers);
    nnst::ReproduceOptions o;
    o.reps = a.reps;
    o.base_seed = a.seed;
    o.blocks = a.blocks;
    o.n_list = a.n;
    const auto rep = nnst::reproduce_table(a.table, o);
    const auto format = nnst::parse_report_format(a.format);
    std::string text;
    if (format == nnst::ReportFormat::markdown) {
        text = rep.markdown();
    } else if (format == nnst::ReportFormat::json) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : rep.cells)
            cells.push_back({{"block", c.block},
                             {"n", c.n},
                             {"p_label", c.p_label},
                             {"level", c.level},
                             {"published", c.published},
                             {"simulated", c.simulated},
                             {"se", c.se},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
        nlohmann::json reports = nlohmann::json::array();
        for (const auto& r : rep.reports)
            reports.push_back(nlohmann::json::parse(nnst::emit_report(r, nnst::ReportFormat::json, {a.runtime})));
        text = nlohmann::json{{"table", rep.table}, {"all_pass", rep.all_pass()}, {"cells", cells}, {"reports", reports}}
                   .dump(2) +
               "\n";
    } else {
        std::ostringstream os;
        os << "table,block,n,p_label,level,published,simulated,se,tolerance,pass\n";
        for (const auto& c : rep.cells)
            os << rep.table << ',' << c.block << ',' << c.n << ',' << c.p_label << ',' << fmt("%g", c.level) << ','
               << fmt("%.3f", c.published) << ',' << shortest(c.simulated) << ',' << shortest(c.se) << ','
               << fmt("%g", c.tolerance) << ',' << (c.pass ? 1 : 0) << '\n';
        text = os.str();
    }
    nnst::write_text(text, a.out);
    std::cerr << rep.cells.size() - rep.failures() << " of " << rep.cells.size() << " cells within tolerance\n";
    return rep.all_pass() ? kOk : kReproduction;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Specification test for nonlinear cointegrating regression"};
    app.require_subcommand(1);

    Common size_args, power_args, null_args;
    auto* size = app.add_subcommand("size", "rejection rates under the linear null");
    add_common(size, size_args, false);
    auto* power = app.add_subcommand("power", "rejection rates under a local alternative");
    add_common(power, power_args, true);
    auto* nulldist = app.add_subcommand("nulldist", "Z draws under the null for one (n, h)");
    add_common(nulldist, null_args, false);

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "run the test on observed data (CSV with columns t,x,y)");
    test->add_option("file", test_args.file, "input CSV")->required();
    test->add_option("--model", test_args.model, "null model: linear, poly:k, power or wexp");
    test->add_option("--kernel", test_args.kernel, "gaussian, epanechnikov or uniform");
    test->add_option("--bw-exp", test_args.bw_exp, "bandwidth exponent p, h = n^-p");
    test->add_option("--bandwidth", test_args.h, "explicit bandwidth h, overrides --bw-exp");
    test->add_option("--alpha", test_args.alpha, "test level");
    test->add_option("--theta-init", test_args.theta_init, "starting values for nonlinear models")->delimiter(',');
    test->add_option("--format", test_args.format, "json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    test->add_option("--out", test_args.out, "output file (default stdout)");

    DemoArgs demo_args;
    auto* demo = app.add_subcommand("localtime-demo", "pair functional vs local time on coupled paths");
    demo->add_option("--n", demo_args.n, "sample sizes")->delimiter(',');
    demo->add_option("--seeds", demo_args.seeds, "seeds per n");
    demo->add_option("--m", demo_args.m, "grid size for the window sensitivity rows");
    demo->add_option("--paths", demo_args.paths, "paths for the sensitivity rows");
    demo->add_option("--kappa", demo_args.kappa, "near-integration parameter");
    demo->add_option("--eta", demo_args.eta, "iid, ar or ma")->check(CLI::IsMember({"iid", "ar", "ma"}));
    demo->add_option("--lambda", demo_args.lambda, "AR / MA coefficient");
    demo->add_option("--bw-exp", demo_args.bw_exp, "c_n = sqrt(n) phi / h with h = n^-p");
    demo->add_option("--seed", demo_args.seed, "base seed");
    demo->add_option("--format", demo_args.format, "csv only")->check(CLI::IsMember({"csv"}));
    demo->add_option("--out", demo_args.out, "output file (default stdout)");
    demo->add_option("--workers", demo_args.workers, "OpenMP worker count");

    ReproduceArgs rep_args;
    auto* reproduce = app.add_subcommand("reproduce", "rerun a published table and compare cell by cell");
    reproduce->add_option("--table", rep_args.table, "table number")->required()->check(CLI::Range(1, 6));
    reproduce->add_option("--reps", rep_args.reps, "replications per cell");
    reproduce->add_option("--seed", rep_args.seed, "base seed");
    reproduce->add_option("--block", rep_args.blocks, "restrict to block indices (0-based)")->delimiter(',');
    reproduce->add_option("--n", rep_args.n, "restrict to sample sizes")->delimiter(',');
    reproduce->add_option("--format", rep_args.format, "json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    reproduce->add_option("--out", rep_args.out, "output file (default stdout)");
    reproduce->add_option("--workers", rep_args.workers, "OpenMP worker count");
    reproduce->add_flag("--include-runtime", rep_args.runtime, "write runtimes into json output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*size) return run_study(size_args);
        if (*power) return run_study(power_args);
        if (*nulldist) return run_nulldist(null_args);
        if (*test) return run_test_cmd(test_args);
        if (*demo) return run_demo(demo_args);
        if (*reproduce) return run_reproduce(rep_args);
    } catch (const nnst::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nnst::DegenerateStatistic& e) {
        std::cerr << "degenerate statistic: " << e.what() << '\n';
        return kDegenerate;
    } catch (const nnst::ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const nnst::Error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
