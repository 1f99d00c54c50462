#include "envrisk/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace envrisk {

int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("ENVRISK_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
        } catch (...) {
            // Unparseable cap is ignored; the kernels still run.
        }
    }
    return n;
#else
    return 1;
#endif
}

} // namespace envrisk
