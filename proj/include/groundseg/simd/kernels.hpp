#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the pipeline. Every kernel has a scalar
// reference implementation and may have SIMD variants; the active backend is
// chosen at runtime from CPU capabilities and can be forced for testing. All
// variants of a kernel produce bit-identical results (the kernel translation
// units are compiled without FP contraction).

namespace groundseg::simd {

enum class Backend {
    Scalar,
    Avx2,
};

bool backend_supported(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws UsageError if unsupported

// out[i] = sqrt(x[i]^2 + y[i]^2)
void planar_radius(const double *x, const double *y, double *out, std::size_t n);

// out[i] = sqrt(x[i]^2 + y[i]^2 + z[i]^2)
void point_range(const double *x, const double *y, const double *z, double *out, std::size_t n);

// Windowed pair sweep over two range-image rows given as dense planar
// coordinates (NaN marks an empty cell). Sets marks[j] = 1 for every upper
// column j whose point lies within sqrt(threshold_sq) of some lower-row point
// in columns j-window..j+window; columns wrap. Cells that are empty on either
// side never match (NaN compares false).
void mark_close_pairs(const double *lower_x, const double *lower_y,
                      const double *upper_x, const double *upper_y,
                      std::size_t cols, int window, double threshold_sq,
                      std::uint8_t *marks);

}  // namespace groundseg::simd
