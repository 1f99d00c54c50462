#ifndef ENVRISK_PARALLEL_HPP
#define ENVRISK_PARALLEL_HPP

namespace envrisk {

// Worker count for the OpenMP kernels: hardware threads capped by the
// ENVRISK_THREADS environment variable when set. Returns 1 in builds
// without OpenMP.
int worker_count();

} // namespace envrisk

#endif
