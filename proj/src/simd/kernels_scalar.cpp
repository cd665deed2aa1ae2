#include <cmath>

#include "kernels_impl.hpp"

namespace groundseg::simd::detail {

void planar_radius_scalar(const double *x, const double *y, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
}

void point_range_scalar(const double *x, const double *y, const double *z, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
}

void mark_close_pairs_scalar(const double *lower_x, const double *lower_y, const double *upper_x,
                             const double *upper_y, std::size_t cols, int window, double threshold_sq,
                             std::uint8_t *marks) {
    const auto n = static_cast<std::ptrdiff_t>(cols);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const double ux = upper_x[j];
        const double uy = upper_y[j];
        for (int o = -window; o <= window; ++o) {
            std::ptrdiff_t p = j + o;
            if (p < 0) p += n;
            if (p >= n) p -= n;
            const double dx = lower_x[p] - ux;
            const double dy = lower_y[p] - uy;
            // NaN (empty cell) compares false and never marks.
            if (dx * dx + dy * dy < threshold_sq) {
                marks[j] = 1;
                break;
            }
        }
    }
}

}  // namespace groundseg::simd::detail
