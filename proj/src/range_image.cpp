#include "groundseg/range_image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "groundseg/errors.hpp"
#include "groundseg/simd/kernels.hpp"

namespace groundseg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::size_t RangeImage::occupied_count() const {
    return static_cast<std::size_t>(
        std::count_if(point_index.begin(), point_index.end(), [](std::int32_t i) { return i >= 0; }));
}

void assign_rings(PointCloud &cloud, const SensorModel &model, RingAssignStats *stats) {
    if (cloud.empty()) throw UsageError("assign_rings: empty cloud");
    model.validate();

    // Nearest-angle search over an ascending view of the model angles.
    const int L = model.laser_count();
    const bool ascending = model.vertical_angles[1] > model.vertical_angles[0];
    std::vector<double> angles(model.vertical_angles);
    if (!ascending) std::reverse(angles.begin(), angles.end());
    auto to_model_index = [&](int sorted_idx) { return ascending ? sorted_idx : L - 1 - sorted_idx; };

    const std::size_t n = cloud.size();
    std::vector<double> planar(n);
    simd::planar_radius(cloud.x.data(), cloud.y.data(), planar.data(), n);

    std::size_t clamped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // Angle from the downward vertical, in [0, pi].
        const double from_nadir = std::atan2(planar[i], -cloud.z[i]);
        int idx;
        if (from_nadir <= angles.front()) {
            idx = 0;
            if (from_nadir < angles.front()) ++clamped;
        } else if (from_nadir >= angles.back()) {
            idx = L - 1;
            if (from_nadir > angles.back()) ++clamped;
        } else {
            auto it = std::lower_bound(angles.begin(), angles.end(), from_nadir);
            int hi = static_cast<int>(it - angles.begin());
            idx = (from_nadir - angles[hi - 1] <= angles[hi] - from_nadir) ? hi - 1 : hi;
        }
        cloud.ring[i] = to_model_index(idx);

        double az = std::atan2(cloud.y[i], cloud.x[i]);
        if (az < 0.0) az += kTwoPi;
        cloud.azimuth[i] = az;
    }
    if (stats) stats->clamped = clamped;
}

int azimuth_bin(double azimuth, int bins) {
    int b = static_cast<int>(azimuth * (bins / kTwoPi));
    return std::clamp(b, 0, bins - 1);
}

RangeImage build_range_image(const PointCloud &cloud, const SensorModel &model) {
    const int rows = model.laser_count();
    const int cols = model.azimuth_bins;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    RangeImage image;
    image.rows = rows;
    image.cols = cols;
    const std::size_t cells = static_cast<std::size_t>(rows) * cols;
    image.point_index.assign(cells, -1);
    image.range.assign(cells, nan);
    image.px.assign(cells, nan);
    image.py.assign(cells, nan);
    image.pz.assign(cells, nan);

    if (cloud.empty()) return image;
    if (!cloud.rings_assigned()) throw UsageError("build_range_image: rings not assigned");

    const std::size_t n = cloud.size();
    std::vector<double> ranges(n);
    simd::point_range(cloud.x.data(), cloud.y.data(), cloud.z.data(), ranges.data(), n);

    for (std::size_t i = 0; i < n; ++i) {
        const int r = cloud.ring[i];
        if (r < 0 || r >= rows) throw UsageError("build_range_image: ring out of range");
        const int c = azimuth_bin(cloud.azimuth[i], cols);
        const std::size_t cell = image.cell(r, c);
        if (image.point_index[cell] >= 0) {
            ++image.evictions;
            if (!(ranges[i] < image.range[cell])) continue;  // keep the nearer return
        }
        image.point_index[cell] = static_cast<std::int32_t>(i);
        image.range[cell] = ranges[i];
        image.px[cell] = cloud.x[i];
        image.py[cell] = cloud.y[i];
        image.pz[cell] = cloud.z[i];
    }
    return image;
}

}  // namespace groundseg
