#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "groundseg/point_cloud.hpp"
#include "groundseg/sensor_model.hpp"

namespace groundseg {

struct PolarCell {
    double min_z = 0.0;
    double max_z = 0.0;
    std::vector<std::uint32_t> points;

    bool empty() const { return points.empty(); }
};

// Ring-based elevation map: radial bands follow the calibrated ring radii
// (midpoint boundaries) instead of a fixed Cartesian pitch, so flat-ground
// cells hold comparable point counts at every range. Band L is the overflow
// band for returns beyond the outermost boundary.
struct PolarGrid {
    std::vector<double> ring_boundaries;  // L+1 ascending radii, meters
    int sector_count = 0;
    std::vector<PolarCell> cells;  // (band_count x sector_count), row-major

    int band_count() const { return static_cast<int>(ring_boundaries.size()); }  // L regular + overflow

    PolarCell &cell(int band, int sector) { return cells[static_cast<std::size_t>(band) * sector_count + sector]; }
    const PolarCell &cell(int band, int sector) const {
        return cells[static_cast<std::size_t>(band) * sector_count + sector];
    }

    int band_of(double planar_radius) const;
};

// Boundaries: 0, midpoints between consecutive ring radii, and one outer edge
// extrapolated half a gap past the last ring.
std::vector<double> make_ring_boundaries(const SensorModel &model);

PolarGrid bin_points(const PointCloud &cloud, const SensorModel &model, int sector_count);

// Per-cell height threshold against the cell minimum. Points more than
// h_thresh above their cell's lowest point become Obstacle, the rest Ground.
std::vector<LabelState> coarse_segment(const PolarGrid &grid, const PointCloud &cloud, double h_thresh);

// Expected point count inside an axis-aligned cell [x1,x2] x [y2,y1] for a
// sensor on flat ground, assuming each laser spreads total_per_laser points
// uniformly over its ring. Diagnostic only.
double expected_points(double x1, double x2, double y1, double y2, const SensorModel &model,
                       double total_per_laser);

// CSV dump: ring_band,sector,count,min_z,max_z (non-empty cells only).
void dump_grid_csv(const PolarGrid &grid, std::ostream &out);

}  // namespace groundseg
