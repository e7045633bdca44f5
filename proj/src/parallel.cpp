#include "sta/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace sta {

namespace {
int default_threads = 0;
}

void set_thread_count(int n) {
  if (default_threads == 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : default_threads);
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("STA_THREADS")) {
    try {
      set_thread_count(std::stoi(env));
    } catch (const std::exception&) {
      // Unparseable value: keep the runtime default.
    }
  }
  return thread_count();
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace sta
