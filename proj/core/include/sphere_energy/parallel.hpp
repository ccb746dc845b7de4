#pragma once

#include <functional>

namespace sphere_energy {

// Process-wide default worker count (CLI --workers sets it).  0 means
// "use hardware concurrency".
void set_default_workers(int workers);
int default_workers();

// Run fn(0..n_chunks-1), possibly on several threads.  The chunk
// decomposition is fixed by the caller and each chunk must write only its
// own slot, so results never depend on the worker count.  workers <= 0
// uses the process default.  Exceptions thrown by fn are rethrown on the
// calling thread (first one wins).
void parallel_chunks(int n_chunks, int workers,
                     const std::function<void(int)>& fn);

}  // namespace sphere_energy
