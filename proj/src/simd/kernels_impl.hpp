#pragma once

#include <cstddef>
#include <cstdint>

// Backend entry points. Only kernels.cpp and the backend TUs include this.

namespace groundseg::simd::detail {

void planar_radius_scalar(const double *x, const double *y, double *out, std::size_t n);
void point_range_scalar(const double *x, const double *y, const double *z, double *out, std::size_t n);
void mark_close_pairs_scalar(const double *lower_x, const double *lower_y, const double *upper_x,
                             const double *upper_y, std::size_t cols, int window, double threshold_sq,
                             std::uint8_t *marks);

#if defined(GROUNDSEG_HAVE_AVX2)
void planar_radius_avx2(const double *x, const double *y, double *out, std::size_t n);
void point_range_avx2(const double *x, const double *y, const double *z, double *out, std::size_t n);
void mark_close_pairs_avx2(const double *lower_x, const double *lower_y, const double *upper_x,
                           const double *upper_y, std::size_t cols, int window, double threshold_sq,
                           std::uint8_t *marks);
#endif

}  // namespace groundseg::simd::detail
