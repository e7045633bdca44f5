#pragma once

namespace sta {

/// Selects the serial reference loop or the OpenMP kernel.
enum class Execution { serial, parallel };

/// Applies the STA_THREADS environment variable (0 or unset = OpenMP default).
/// Returns the thread count that parallel regions will use.
int configure_threads_from_env();

/// Caps OpenMP worker threads; n <= 0 restores the runtime default.
void set_thread_count(int n);

int thread_count();

}  // namespace sta
