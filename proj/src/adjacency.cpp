#include "groundseg/adjacency.hpp"

#include <cmath>
#include <numbers>

#include "groundseg/errors.hpp"
#include "groundseg/simd/kernels.hpp"

namespace groundseg {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kMinTan = 1e-9;

// A pair is usable when both beams point below the horizon and are distinct;
// horizon-grazing or inverted pairs have no flat-ground spacing to test.
bool valid_pair(double delta1, double delta2) {
    return delta1 > 0.0 && delta2 < kHalfPi && delta2 > delta1 && std::tan(delta2) >= kMinTan;
}

}  // namespace

double height_diff(double dd, double h, double delta1, double delta2) {
    if (!(delta2 > delta1)) throw DomainError("height_diff: requires delta2 > delta1");
    if (delta2 >= kHalfPi || delta1 <= 0.0) throw DomainError("height_diff: angles must lie in (0, pi/2)");
    const double t2 = std::tan(delta2);
    if (std::abs(t2) < kMinTan) throw DomainError("height_diff: near-vertical laser");
    return (h * (t2 - std::tan(delta1)) - dd) / t2;
}

double elevation_angle(double dh, double dd) {
    if (!(dd > 0.0)) throw DomainError("elevation_angle: requires dd > 0");
    return std::atan(dh / dd);
}

double min_flat_distance(double h, double delta1, double delta2, double max_slope) {
    if (!(delta2 >= delta1)) throw DomainError("min_flat_distance: requires delta2 >= delta1");
    if (delta2 >= kHalfPi || delta1 < 0.0)
        throw DomainError("min_flat_distance: angles must lie in [0, pi/2)");
    const double t2 = std::tan(delta2);
    const double denom = std::tan(max_slope) * t2 + 1.0;
    if (!(denom > 0.0)) throw DomainError("min_flat_distance: non-positive denominator");
    return h * (t2 - std::tan(delta1)) / denom;
}

PairThresholds PairThresholds::compute(const SensorModel &model, double max_slope, int row_stride) {
    if (row_stride < 1) throw UsageError("PairThresholds: row_stride must be >= 1");
    const int L = model.laser_count();
    PairThresholds thresholds;
    thresholds.row_stride = row_stride;
    thresholds.min_flat_dd.assign(L, 0.0);
    for (int l = 0; l + row_stride < L; ++l) {
        double d1 = model.vertical_angles[l];
        double d2 = model.vertical_angles[l + row_stride];
        if (d2 < d1) std::swap(d1, d2);
        if (!valid_pair(d1, d2)) continue;  // threshold stays 0: the row never marks
        thresholds.min_flat_dd[l] = min_flat_distance(model.mount_height, d1, d2, max_slope);
    }
    return thresholds;
}

std::vector<LabelState> mark_obstacles(const RangeImage &image, const PointCloud &cloud,
                                       const PairThresholds &thresholds,
                                       std::vector<LabelState> labels, int window) {
    if (labels.size() != cloud.size()) throw UsageError("mark_obstacles: labels/cloud size mismatch");
    if (window < 0) throw UsageError("mark_obstacles: window must be >= 0");
    if (static_cast<int>(thresholds.min_flat_dd.size()) < image.rows)
        throw UsageError("mark_obstacles: thresholds do not cover the image rows");

    const int stride = thresholds.row_stride;
    const std::size_t cols = static_cast<std::size_t>(image.cols);
    std::vector<std::uint8_t> marks(cols);

    for (int l = 0; l + stride < image.rows; ++l) {
        const double dd = thresholds.min_flat_dd[l];
        if (dd <= 0.0) continue;
        const int upper = l + stride;
        std::fill(marks.begin(), marks.end(), 0);
        simd::mark_close_pairs(image.row_px(l), image.row_py(l), image.row_px(upper),
                               image.row_py(upper), cols, window, dd * dd, marks.data());
        const std::int32_t *cells = image.point_index.data() + static_cast<std::size_t>(upper) * cols;
        for (std::size_t c = 0; c < cols; ++c)
            if (marks[c] && cells[c] >= 0) labels[cells[c]] = LabelState::Obstacle;
    }
    return labels;
}

}  // namespace groundseg
