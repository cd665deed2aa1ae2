#pragma once

#include <vector>

#include "groundseg/point_cloud.hpp"
#include "groundseg/range_image.hpp"
#include "groundseg/sensor_model.hpp"

namespace groundseg {

// Slope test between two lasers observed at the same horizontal angle.
// Angles are measured from the downward vertical; delta2 is the farther
// (larger) beam. dd is the planar distance between the two returns.

// Height difference implied by the observed spacing:
//   dh = (h*(tan d2 - tan d1) - dd) / tan d2
double height_diff(double dd, double h, double delta1, double delta2);

// Slope angle of the segment between the two returns: atan(dh / dd).
double elevation_angle(double dh, double dd);

// Smallest planar spacing consistent with ground sloped at most K:
//   dd >= h*(tan d2 - tan d1) / (tan K * tan d2 + 1)
// Pairs closer than this imply a slope steeper than K.
double min_flat_distance(double h, double delta1, double delta2, double max_slope);

// Per-row spacing thresholds for the sweep. Row l is paired with row
// l + row_stride; rows whose pair has no valid ground geometry (equal or
// horizon-grazing angles) get a zero threshold and never mark.
struct PairThresholds {
    int row_stride = 2;
    std::vector<double> min_flat_dd;  // indexed by lower row l

    static PairThresholds compute(const SensorModel &model, double max_slope, int row_stride);
};

// Sweeps the range image: every occupied cell (l, p) is compared with the
// occupied cells (l + stride, p-window .. p+window), columns wrapping, and
// the upper point is relabeled Obstacle when the pair's planar distance falls
// under the row threshold. Only adds Obstacle labels; a pure gather, so the
// result does not depend on iteration order.
std::vector<LabelState> mark_obstacles(const RangeImage &image, const PointCloud &cloud,
                                       const PairThresholds &thresholds,
                                       std::vector<LabelState> labels, int window);

}  // namespace groundseg
