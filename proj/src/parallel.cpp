#include "fuzzrel/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace fuzzrel {

int resolved_threads(const Execution& exec) {
  if (!exec.is_parallel()) return 1;
  return exec.threads > 0 ? exec.threads : omp_get_max_threads();
}

Execution execution_from_env() {
  Execution exec = Execution::parallel();
  if (const char* env = std::getenv("FUZZREL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) exec.threads = n;
    } catch (const std::exception&) {
      // Unparsable values fall back to the OpenMP default.
    }
  }
  return exec;
}

}  // namespace fuzzrel
