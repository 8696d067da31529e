#pragma once

#include <string_view>

namespace diplab {

// Every data-parallel kernel takes one of these. The serial path is the
// reference implementation and must produce identical results.
enum class ExecPolicy { serial, parallel };

// Applies DIP_LAB_THREADS (if set and positive) as the OpenMP thread cap.
// Returns the thread count in effect.
int configure_threads_from_env();

std::string_view to_string(ExecPolicy policy);

}  // namespace diplab
