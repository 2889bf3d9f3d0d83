#pragma once

// Report emission. JSON carries schema "nnst.report/1" and parses back into
// an equal Report; runtime is written only on request so that two runs of the
// same configuration produce byte-identical files.

#include <string>
#include <string_view>

#include "nnst/harness.hpp"

namespace nnst {

enum class ReportFormat { json, csv, markdown };

[[nodiscard]] ReportFormat parse_report_format(std::string_view name);

inline constexpr const char* kReportSchema = "nnst.report/1";

struct EmitOptions {
    bool include_runtime = false;
};

[[nodiscard]] std::string emit_report(const Report& report, ReportFormat format, const EmitOptions& options = {});

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// IoError when the destination cannot be written.
void write_report(const Report& report, ReportFormat format, const std::string& path,
                  const EmitOptions& options = {});

/// Inverse of emit_report(json). Throws ParseError on schema violations.
[[nodiscard]] Report parse_report_json(std::string_view text);

/// Writes text to path (or stdout for "" / "-").
void write_text(const std::string& text, const std::string& path);

[[nodiscard]] std::string kernel_name(KernelFamily family);
[[nodiscard]] std::string eta_mode_name(EtaMode mode);
[[nodiscard]] EtaMode parse_eta_mode(std::string_view name);

}  // namespace nnst
