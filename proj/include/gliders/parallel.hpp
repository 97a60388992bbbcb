#pragma once

#include <exception>

#include "gliders/ca.hpp"

namespace gliders {

/// Runs body(state, trial) for trial in [0, trials) on `workers` OpenMP
/// threads. Each thread builds its own scratch state with make_state().
/// Results must be written to per-trial slots; nothing here depends on the
/// schedule. The first exception thrown by any trial is rethrown.
template <class MakeState, class Body>
void parallel_trials(Index trials, int workers, MakeState make_state, Body body) {
  std::exception_ptr error;
  const int threads = workers < 1 ? 1 : workers;
#pragma omp parallel num_threads(threads)
  {
    auto state = make_state();
#pragma omp for schedule(dynamic, 32)
    for (Index trial = 0; trial < trials; ++trial) {
      try {
        body(state, trial);
      } catch (...) {
#pragma omp critical(gliders_trial_error)
        {
          if (!error) error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace gliders
