#include "groundseg/simd/kernels.hpp"

#include <atomic>

#include "groundseg/errors.hpp"
#include "kernels_impl.hpp"

namespace groundseg::simd {

namespace {

bool cpu_has_avx2() {
#if defined(GROUNDSEG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect_backend() { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

bool backend_supported(Backend b) {
    switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
    }
    return false;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_supported(b)) throw UsageError("simd backend not supported on this CPU");
    g_backend.store(b, std::memory_order_relaxed);
}

void planar_radius(const double *x, const double *y, double *out, std::size_t n) {
#if defined(GROUNDSEG_HAVE_AVX2)
    if (active_backend() == Backend::Avx2) {
        detail::planar_radius_avx2(x, y, out, n);
        return;
    }
#endif
    detail::planar_radius_scalar(x, y, out, n);
}

void point_range(const double *x, const double *y, const double *z, double *out, std::size_t n) {
#if defined(GROUNDSEG_HAVE_AVX2)
    if (active_backend() == Backend::Avx2) {
        detail::point_range_avx2(x, y, z, out, n);
        return;
    }
#endif
    detail::point_range_scalar(x, y, z, out, n);
}

void mark_close_pairs(const double *lower_x, const double *lower_y, const double *upper_x,
                      const double *upper_y, std::size_t cols, int window, double threshold_sq,
                      std::uint8_t *marks) {
#if defined(GROUNDSEG_HAVE_AVX2)
    if (active_backend() == Backend::Avx2) {
        detail::mark_close_pairs_avx2(lower_x, lower_y, upper_x, upper_y, cols, window, threshold_sq,
                                      marks);
        return;
    }
#endif
    detail::mark_close_pairs_scalar(lower_x, lower_y, upper_x, upper_y, cols, window, threshold_sq, marks);
}

}  // namespace groundseg::simd
