#include "groundseg/polar_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "groundseg/errors.hpp"
#include "groundseg/simd/kernels.hpp"

namespace groundseg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int PolarGrid::band_of(double planar_radius) const {
    // Bands are [b_i, b_{i+1}); everything past the last boundary lands in
    // the overflow band (index band_count()-1).
    auto it = std::upper_bound(ring_boundaries.begin(), ring_boundaries.end(), planar_radius);
    if (it == ring_boundaries.begin()) return 0;
    int band = static_cast<int>(it - ring_boundaries.begin()) - 1;
    return std::min(band, band_count() - 1);
}

std::vector<double> make_ring_boundaries(const SensorModel &model) {
    std::vector<double> radii(model.ring_radii);
    std::sort(radii.begin(), radii.end());
    const std::size_t L = radii.size();
    std::vector<double> bounds;
    bounds.reserve(L + 1);
    bounds.push_back(0.0);
    for (std::size_t i = 1; i < L; ++i) bounds.push_back(0.5 * (radii[i - 1] + radii[i]));
    bounds.push_back(radii[L - 1] + 0.5 * (radii[L - 1] - radii[L - 2]));
    return bounds;
}

PolarGrid bin_points(const PointCloud &cloud, const SensorModel &model, int sector_count) {
    if (sector_count < 1) throw UsageError("bin_points: sector_count must be >= 1");
    if (!cloud.empty() && !cloud.rings_assigned()) throw UsageError("bin_points: rings not assigned");

    PolarGrid grid;
    grid.ring_boundaries = make_ring_boundaries(model);
    grid.sector_count = sector_count;
    grid.cells.assign(static_cast<std::size_t>(grid.band_count()) * sector_count, PolarCell{});

    const std::size_t n = cloud.size();
    if (n == 0) return grid;

    std::vector<double> planar(n);
    simd::planar_radius(cloud.x.data(), cloud.y.data(), planar.data(), n);

    for (std::size_t i = 0; i < n; ++i) {
        const int band = grid.band_of(planar[i]);
        int sector = static_cast<int>(cloud.azimuth[i] * (sector_count / kTwoPi));
        sector = std::clamp(sector, 0, sector_count - 1);
        PolarCell &cell = grid.cell(band, sector);
        if (cell.empty()) {
            cell.min_z = cell.max_z = cloud.z[i];
        } else {
            cell.min_z = std::min(cell.min_z, cloud.z[i]);
            cell.max_z = std::max(cell.max_z, cloud.z[i]);
        }
        cell.points.push_back(static_cast<std::uint32_t>(i));
    }
    return grid;
}

std::vector<LabelState> coarse_segment(const PolarGrid &grid, const PointCloud &cloud, double h_thresh) {
    if (!(h_thresh >= 0.0)) throw UsageError("coarse_segment: h_thresh must be >= 0");
    std::vector<LabelState> labels(cloud.size(), LabelState::Ground);
    for (const PolarCell &cell : grid.cells) {
        if (cell.empty()) continue;
        for (std::uint32_t idx : cell.points)
            if (cloud.z[idx] - cell.min_z > h_thresh) labels[idx] = LabelState::Obstacle;
    }
    return labels;
}

double expected_points(double x1, double x2, double y1, double y2, const SensorModel &model,
                       double total_per_laser) {
    if (!(x1 < x2) || !(y2 < y1)) throw UsageError("expected_points: need x1 < x2 and y2 < y1");
    if (!(total_per_laser > 0.0)) throw UsageError("expected_points: total_per_laser must be > 0");

    double total = 0.0;
    for (double r : model.ring_radii) {
        if (std::abs(x1) > r || std::abs(x2) > r) continue;
        const double s1 = std::sqrt(std::max(r * r - x1 * x1, 0.0));
        const double s2 = std::sqrt(std::max(r * r - x2 * x2, 0.0));
        if (!(y2 < s1 && s1 < y1 && y2 < s2 && s2 < y1)) continue;
        const double arc = std::abs(std::atan2(x1, s1) - std::atan2(x2, s2));
        total += total_per_laser * arc / kTwoPi;
    }
    return total;
}

void dump_grid_csv(const PolarGrid &grid, std::ostream &out) {
    out << "ring_band,sector,count,min_z,max_z\n";
    for (int band = 0; band < grid.band_count(); ++band) {
        for (int sector = 0; sector < grid.sector_count; ++sector) {
            const PolarCell &cell = grid.cell(band, sector);
            if (cell.empty()) continue;
            out << band << ',' << sector << ',' << cell.points.size() << ',' << cell.min_z << ','
                << cell.max_z << '\n';
        }
    }
}

}  // namespace groundseg
