#pragma once

namespace nnst {

/// Whether an O(n^2) kernel may fan out over OpenMP threads. Both policies
/// use the same fixed block decomposition and block-ordered reduction, so
/// the result is bit-identical for every thread count.
enum class Execution { serial, parallel };

/// Thin wrappers over the OpenMP runtime (no-ops when built without OpenMP).
void set_worker_count(int workers);
[[nodiscard]] int worker_count();

}  // namespace nnst
