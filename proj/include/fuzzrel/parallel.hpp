#pragma once

namespace fuzzrel {

/// Selects between the serial reference loops and the OpenMP kernels.
/// Both paths produce bitwise-identical results.
struct Execution {
  enum class Policy { Serial, Parallel };

  Policy policy = Policy::Parallel;
  int threads = 0;  // 0 = OpenMP default

  static Execution serial() { return {Policy::Serial, 1}; }
  static Execution parallel(int threads = 0) { return {Policy::Parallel, threads}; }

  bool is_parallel() const { return policy == Policy::Parallel; }
};

/// Number of OpenMP threads a parallel region launched with `exec` uses.
int resolved_threads(const Execution& exec);

/// Reads FUZZREL_THREADS (0 or unset = auto).
Execution execution_from_env();

}  // namespace fuzzrel
