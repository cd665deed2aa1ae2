#include <immintrin.h>

#include "kernels_impl.hpp"

// Same operations per lane as the scalar backend (mul, add, sqrt, compare;
// no FMA), so results are bit-identical.

namespace groundseg::simd::detail {

void planar_radius_avx2(const double *x, const double *y, double *out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d sq = _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy));
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sq));
    }
    planar_radius_scalar(x + i, y + i, out + i, n - i);
}

void point_range_avx2(const double *x, const double *y, const double *z, double *out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vz = _mm256_loadu_pd(z + i);
        __m256d sq = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)),
                                   _mm256_mul_pd(vz, vz));
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sq));
    }
    point_range_scalar(x + i, y + i, z + i, out + i, n - i);
}

void mark_close_pairs_avx2(const double *lower_x, const double *lower_y, const double *upper_x,
                           const double *upper_y, std::size_t cols, int window, double threshold_sq,
                           std::uint8_t *marks) {
    const auto n = static_cast<std::ptrdiff_t>(cols);
    const auto w = static_cast<std::ptrdiff_t>(window);
    if (n < 4 || 2 * w >= n) {
        mark_close_pairs_scalar(lower_x, lower_y, upper_x, upper_y, cols, window, threshold_sq, marks);
        return;
    }

    const __m256d thr = _mm256_set1_pd(threshold_sq);
    // Interior columns: every shifted lower-row load stays in bounds.
    std::ptrdiff_t j = w;
    const std::ptrdiff_t interior_end = n - w;
    for (; j + 4 <= interior_end; j += 4) {
        __m256d ux = _mm256_loadu_pd(upper_x + j);
        __m256d uy = _mm256_loadu_pd(upper_y + j);
        __m256d hit = _mm256_setzero_pd();
        for (std::ptrdiff_t o = -w; o <= w; ++o) {
            __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(lower_x + j + o), ux);
            __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(lower_y + j + o), uy);
            __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            hit = _mm256_or_pd(hit, _mm256_cmp_pd(d2, thr, _CMP_LT_OQ));
        }
        int mask = _mm256_movemask_pd(hit);
        if (mask) {
            if (mask & 1) marks[j] = 1;
            if (mask & 2) marks[j + 1] = 1;
            if (mask & 4) marks[j + 2] = 1;
            if (mask & 8) marks[j + 3] = 1;
        }
    }

    // Remaining interior tail plus the wrapping seam columns.
    auto scalar_column = [&](std::ptrdiff_t col) {
        const double ux = upper_x[col];
        const double uy = upper_y[col];
        for (std::ptrdiff_t o = -w; o <= w; ++o) {
            std::ptrdiff_t p = col + o;
            if (p < 0) p += n;
            if (p >= n) p -= n;
            const double dx = lower_x[p] - ux;
            const double dy = lower_y[p] - uy;
            if (dx * dx + dy * dy < threshold_sq) {
                marks[col] = 1;
                return;
            }
        }
    };
    for (; j < interior_end; ++j) scalar_column(j);
    for (std::ptrdiff_t c = 0; c < w; ++c) scalar_column(c);
    for (std::ptrdiff_t c = interior_end; c < n; ++c) scalar_column(c);
}

}  // namespace groundseg::simd::detail
