#pragma once

// Observed-data mode: read aligned (x_t, y_{t+1}) pairs from CSV and run the
// specification test on them.
//
// File layout: a header naming the columns t, x and y (any order, extra
// columns ignored), then one row per observation. Row t holds x_t and the
// response y_{t+1} it predicts, so no shifting is needed by the caller.

#include <optional>
#include <string>
#include <vector>

#include "nnst/kernels.hpp"
#include "nnst/teststat.hpp"

namespace nnst {

struct ObservedSeries {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
};

inline constexpr std::size_t kMinObservations = 10;

/// Throws IoError if the file cannot be read and ParseError (with 1-based
/// row, header = row 1, and column name) for malformed content, non-finite
/// values or fewer than kMinObservations rows.
[[nodiscard]] ObservedSeries read_series_csv(const std::string& path);
[[nodiscard]] ObservedSeries parse_series_csv(const std::string& text);

struct CsvTestOptions {
    std::string model = "linear";
    KernelFamily kernel = KernelFamily::gaussian;
    double bw_exponent = 1.0 / 3.0;  ///< h = n^{-p} unless `h` is set
    std::optional<double> h;
    double alpha = 0.05;
    std::optional<std::vector<double>> theta_init;
};

struct CsvTestOutcome {
    TestResult result;
    Bandwidth bandwidth;
    std::vector<std::string> warnings;  ///< bandwidth-rate flags
    std::string verdict;                ///< one line
};

[[nodiscard]] CsvTestOutcome apply_test(const ObservedSeries& series, const CsvTestOptions& options);
[[nodiscard]] CsvTestOutcome apply_test_csv(const std::string& path, const CsvTestOptions& options);

}  // namespace nnst
