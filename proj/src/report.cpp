#include "nnst/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "nnst/error.hpp"

namespace nnst {

using nlohmann::json;

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw InvalidSpec("unknown format '" + std::string(name) + "' (expected json, csv or markdown)");
}

std::string kernel_name(KernelFamily family) { return std::string(Kernel(family).name()); }

std::string eta_mode_name(EtaMode mode) {
    switch (mode) {
        case EtaMode::iid:
            return "iid";
        case EtaMode::ar:
            return "ar";
        case EtaMode::ma:
            return "ma";
        case EtaMode::linear:
            return "linear";
    }
    return "iid";
}

EtaMode parse_eta_mode(std::string_view name) {
    if (name == "iid") return EtaMode::iid;
    if (name == "ar") return EtaMode::ar;
    if (name == "ma") return EtaMode::ma;
    if (name == "linear") return EtaMode::linear;
    throw InvalidSpec("unknown eta mode '" + std::string(name) + "' (expected iid, ar or ma)");
}

namespace {

json config_json(const ExperimentConfig& c) {
    json p = json::array();
    for (const auto& e : c.p_list) p.push_back({{"value", e.value}, {"label", e.label}});
    json alt = nullptr;
    if (c.alt) {
        alt = {{"nu", c.alt->nu}, {"rule", rho_rule_name(c.alt->rule)}};
        alt["rho_n"] = c.alt->rho_n ? json(*c.alt->rho_n) : json(nullptr);
    }
    return {{"n_list", c.n_list},
            {"p_list", p},
            {"r", c.r},
            {"eta", {{"mode", eta_mode_name(c.eta.mode)}, {"lambda", c.eta.lambda}, {"coefficients", c.eta.coefficients}}},
            {"kappa", c.kappa},
            {"model", c.model},
            {"alt", alt},
            {"reps", c.reps},
            {"base_seed", c.base_seed},
            {"levels", c.levels},
            {"kernel", kernel_name(c.kernel)},
            {"theta_true", c.theta_true}};
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("report json: missing field '") + key + "'", 0, key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("report json: bad field '") + key + "': " + e.what(), 0, key);
    }
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.n_list = field<std::vector<std::size_t>>(j, "n_list");
    c.p_list.clear();
    for (const auto& e : field<json>(j, "p_list"))
        c.p_list.push_back({field<double>(e, "value"), field<std::string>(e, "label")});
    c.r = field<double>(j, "r");
    const json eta = field<json>(j, "eta");
    c.eta.mode = parse_eta_mode(field<std::string>(eta, "mode"));
    c.eta.lambda = field<double>(eta, "lambda");
    c.eta.coefficients = field<std::vector<double>>(eta, "coefficients");
    c.kappa = field<double>(j, "kappa");
    c.model = field<std::string>(j, "model");
    const json alt = field<json>(j, "alt");
    if (!alt.is_null()) {
        AlternativeConfig a;
        a.nu = field<double>(alt, "nu");
        a.rule = parse_rho_rule(field<std::string>(alt, "rule"));
        const json rho = field<json>(alt, "rho_n");
        if (!rho.is_null()) a.rho_n = rho.get<double>();
        c.alt = a;
    }
    c.reps = field<std::size_t>(j, "reps");
    c.base_seed = field<std::uint64_t>(j, "base_seed");
    c.levels = field<std::vector<double>>(j, "levels");
    c.kernel = Kernel::parse(field<std::string>(j, "kernel")).family();
    c.theta_true = field<std::vector<double>>(j, "theta_true");
    return c;
}

std::string emit_json(const Report& r, const EmitOptions& options) {
    json cells = json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"n", c.n},
                         {"p_label", c.p_label},
                         {"p", c.p},
                         {"level", c.level},
                         {"rate", c.rate},
                         {"se", c.se},
                         {"rejections", c.rejections},
                         {"valid", c.valid}});
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"n", f.n}, {"p_label", f.p_label}, {"failed", f.failed}});
    json out = {{"schema", kReportSchema}, {"config", config_json(r.config)}, {"cells", cells}, {"failures", failures}};
    if (options.include_runtime) out["runtime_seconds"] = r.runtime_seconds;
    return out.dump(2) + "\n";
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

std::string emit_csv(const Report& r) {
    std::ostringstream os;
    os << "n,p_label,p,level,rate,se,rejections,valid\n";
    for (const auto& c : r.cells)
        os << c.n << ',' << c.p_label << ',' << shortest(c.p) << ',' << shortest(c.level) << ','
           << shortest(c.rate) << ',' << shortest(c.se) << ',' << c.rejections << ',' << c.valid << '\n';
    return os.str();
}

std::string level_title(double level) { return "Nominal size " + fmt("%g", 100.0 * level) + "%"; }

std::string emit_markdown(const Report& r, const EmitOptions& options) {
    const auto& c = r.config;
    std::ostringstream os;
    os << "r = " << fmt("%g", c.r) << ", eta = " << eta_mode_name(c.eta.mode);
    if (c.eta.mode == EtaMode::ar || c.eta.mode == EtaMode::ma) os << " (lambda = " << fmt("%g", c.eta.lambda) << ")";
    if (c.kappa != 0.0) os << ", kappa = " << fmt("%g", c.kappa);
    if (c.alt) os << ", nu = " << fmt("%g", c.alt->nu);
    os << ", kernel = " << kernel_name(c.kernel) << ", reps = " << c.reps << ", seed = " << c.base_seed << "\n";
    for (double level : c.levels) {
        os << "\n### " << level_title(level) << "\n\n| n |";
        for (const auto& p : c.p_list) os << " h = n^-" << p.label << " |";
        os << "\n|---|";
        for (std::size_t i = 0; i < c.p_list.size(); ++i) os << "---|";
        os << '\n';
        for (std::size_t n : c.n_list) {
            os << "| " << n << " |";
            for (const auto& p : c.p_list) os << ' ' << fmt("%.3f", r.cell(n, p.label, level).rate) << " |";
            os << '\n';
        }
    }
    std::size_t failed = 0;
    for (const auto& f : r.failures) failed += f.failed;
    if (failed > 0) os << "\nFailed replications (excluded): " << failed << '\n';
    if (options.include_runtime) os << "\nRuntime: " << fmt("%.1f", r.runtime_seconds) << " s\n";
    return os.str();
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format, const EmitOptions& options) {
    switch (format) {
        case ReportFormat::json:
            return emit_json(report, options);
        case ReportFormat::csv:
            return emit_csv(report);
        case ReportFormat::markdown:
            return emit_markdown(report, options);
    }
    return {};
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw IoError("write to '" + path + "' failed");
}

void write_report(const Report& report, ReportFormat format, const std::string& path, const EmitOptions& options) {
    write_text(emit_report(report, format, options), path);
}

Report parse_report_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report json: ") + e.what(), 0, "");
    }
    if (field<std::string>(j, "schema") != kReportSchema)
        throw ParseError("report json: unsupported schema", 0, "schema");
    Report r;
    r.config = config_from_json(field<json>(j, "config"));
    for (const auto& c : field<json>(j, "cells")) {
        RateCell cell;
        cell.n = field<std::size_t>(c, "n");
        cell.p_label = field<std::string>(c, "p_label");
        cell.p = field<double>(c, "p");
        cell.level = field<double>(c, "level");
        cell.rate = field<double>(c, "rate");
        cell.se = field<double>(c, "se");
        cell.rejections = field<std::size_t>(c, "rejections");
        cell.valid = field<std::size_t>(c, "valid");
        r.cells.push_back(cell);
    }
    for (const auto& f : field<json>(j, "failures"))
        r.failures.push_back({field<std::size_t>(f, "n"), field<std::string>(f, "p_label"), field<std::size_t>(f, "failed")});
    if (j.contains("runtime_seconds")) r.runtime_seconds = field<double>(j, "runtime_seconds");
    return r;
}

}  // namespace nnst
