#include "nnst/datafile.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nnst/error.hpp"
#include "nnst/models.hpp"

namespace nnst {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& text, std::size_t row, const std::string& column) {
    if (text.empty()) throw ParseError("row " + std::to_string(row) + ", column " + column + ": empty value", row, column);
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("row " + std::to_string(row) + ", column " + column + ": '" + text + "' is not a number",
                         row, column);
    if (!std::isfinite(v) || errno == ERANGE)
        throw ParseError("row " + std::to_string(row) + ", column " + column + ": non-finite value '" + text + "'",
                         row, column);
    return v;
}

}  // namespace

ObservedSeries parse_series_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t row = 0;
    int col_t = -1, col_x = -1, col_y = -1;
    std::size_t width = 0;
    ObservedSeries s;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (!have_header) {
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (cells[j] == "t") col_t = static_cast<int>(j);
                if (cells[j] == "x") col_x = static_cast<int>(j);
                if (cells[j] == "y") col_y = static_cast<int>(j);
            }
            for (auto [col, name] : {std::pair{col_t, "t"}, std::pair{col_x, "x"}, std::pair{col_y, "y"}})
                if (col < 0) throw ParseError(std::string("header is missing column '") + name + "'", row, name);
            width = cells.size();
            have_header = true;
            continue;
        }
        if (cells.size() != width)
            throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(cells.size()),
                             row, "");
        s.t.push_back(parse_number(cells[static_cast<std::size_t>(col_t)], row, "t"));
        s.x.push_back(parse_number(cells[static_cast<std::size_t>(col_x)], row, "x"));
        s.y.push_back(parse_number(cells[static_cast<std::size_t>(col_y)], row, "y"));
    }
    if (!have_header) throw ParseError("empty file", 0, "");
    if (s.x.size() < kMinObservations)
        throw ParseError("need at least " + std::to_string(kMinObservations) + " observations, found " +
                             std::to_string(s.x.size()),
                         row, "");
    return s;
}

ObservedSeries read_series_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_series_csv(buf.str());
}

CsvTestOutcome apply_test(const ObservedSeries& series, const CsvTestOptions& options) {
    const std::size_t n = series.x.size();
    CsvTestOutcome out;
    out.bandwidth = options.h ? bandwidth_explicit(n, *options.h) : bandwidth_from_exponent(n, options.bw_exponent);
    if (!out.bandwidth.satisfies_nh2)
        out.warnings.push_back("bandwidth: n h^2 <= 1, too small for the null limit to be reliable");
    if (!out.bandwidth.satisfies_nh4_log2n)
        out.warnings.push_back("bandwidth: n h^4 log^2 n >= 1, smoothing bias may not be negligible");

    TestOptions t;
    t.alpha = options.alpha;
    t.theta_init = options.theta_init;
    out.result = run_test(series.x, series.y, model_from_name(options.model), Kernel(options.kernel),
                          out.bandwidth.h, t);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s at %g%%: Z = %.4f, p = %.4g (n = %zu, h = %.4g, model %s)",
                  out.result.reject_alpha ? "REJECT" : "do not reject", 100.0 * options.alpha, out.result.Z,
                  out.result.p_value, n, out.bandwidth.h, options.model.c_str());
    out.verdict = buf;
    return out;
}

CsvTestOutcome apply_test_csv(const std::string& path, const CsvTestOptions& options) {
    return apply_test(read_series_csv(path), options);
}

}  // namespace nnst
