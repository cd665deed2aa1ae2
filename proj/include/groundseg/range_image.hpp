#pragma once

#include <cstdint>
#include <vector>

#include "groundseg/point_cloud.hpp"
#include "groundseg/sensor_model.hpp"

namespace groundseg {

// Dense (laser row x azimuth column) grid over one revolution. Each occupied
// cell caches the point's planar coordinates and height so the sweep and MRF
// stages read contiguous rows instead of gathering through point indices.
// Empty cells hold index -1 and NaN coordinates.
struct RangeImage {
    int rows = 0;
    int cols = 0;
    std::vector<std::int32_t> point_index;
    std::vector<double> range;
    std::vector<double> px;
    std::vector<double> py;
    std::vector<double> pz;
    std::size_t evictions = 0;  // collision losers (nearer range kept)

    std::size_t cell(int r, int c) const { return static_cast<std::size_t>(r) * cols + c; }
    bool occupied(int r, int c) const { return point_index[cell(r, c)] >= 0; }
    std::size_t occupied_count() const;

    const double *row_px(int r) const { return px.data() + static_cast<std::size_t>(r) * cols; }
    const double *row_py(int r) const { return py.data() + static_cast<std::size_t>(r) * cols; }
};

struct RingAssignStats {
    std::size_t clamped = 0;  // elevation outside the model span, snapped to an end ring
};

// Recovers per-point laser indices by nearest vertical angle and fills in
// azimuth in [0, 2pi). Overwrites any previous assignment.
void assign_rings(PointCloud &cloud, const SensorModel &model, RingAssignStats *stats = nullptr);

int azimuth_bin(double azimuth, int bins);

// Requires rings assigned. On cell collisions the nearer return wins.
RangeImage build_range_image(const PointCloud &cloud, const SensorModel &model);

}  // namespace groundseg
