#include "diplab/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace diplab {

int configure_threads_from_env() {
  if (const char* env = std::getenv("DIP_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // ignored: an unparsable cap leaves the OpenMP default in place
    }
  }
  return omp_get_max_threads();
}

std::string_view to_string(ExecPolicy policy) {
  return policy == ExecPolicy::serial ? "serial" : "parallel";
}

}  // namespace diplab
