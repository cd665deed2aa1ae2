#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "groundseg/errors.hpp"
#include "groundseg/polar_grid.hpp"
#include "groundseg/synth.hpp"

using namespace groundseg;

namespace {

// Fixed-pitch Cartesian binning, the baseline the ring-based grid improves on.
std::vector<std::size_t> cartesian_counts(const PointCloud &cloud, double extent, double pitch) {
    const int cells = static_cast<int>(std::ceil(2.0 * extent / pitch));
    std::vector<std::size_t> counts(static_cast<std::size_t>(cells) * cells, 0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const int cx = static_cast<int>((cloud.x[i] + extent) / pitch);
        const int cy = static_cast<int>((cloud.y[i] + extent) / pitch);
        if (cx < 0 || cy < 0 || cx >= cells || cy >= cells) continue;
        ++counts[static_cast<std::size_t>(cy) * cells + cx];
    }
    return counts;
}

double coefficient_of_variation(const std::vector<std::size_t> &counts) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t c : counts)
        if (c > 0) {
            sum += static_cast<double>(c);
            ++n;
        }
    REQUIRE(n > 0);
    const double mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (std::size_t c : counts)
        if (c > 0) var += (c - mean) * (c - mean);
    var /= static_cast<double>(n);
    return std::sqrt(var) / mean;
}

}  // namespace

TEST_CASE("ring boundaries are ascending midpoints with an overflow band") {
    SensorModel model = SensorModel::default_64();
    const auto bounds = make_ring_boundaries(model);
    REQUIRE(bounds.size() == 65);  // L+1
    CHECK(bounds.front() == 0.0);
    for (std::size_t i = 1; i < bounds.size(); ++i) CHECK(bounds[i] > bounds[i - 1]);
    // each ring radius falls inside its own band
    PolarGrid grid;
    grid.ring_boundaries = bounds;
    grid.sector_count = 1;
    for (int i = 0; i < model.laser_count(); ++i) CHECK(grid.band_of(model.ring_radii[i]) == i);
    // beyond the outer edge lands in the overflow band
    CHECK(grid.band_of(bounds.back() + 1.0) == 64);
}

TEST_CASE("bin_points on synthetic scenes") {
    SensorModel model = SensorModel::default_64();

    SUBCASE("flat ground: every cell is height-flat and counts are uniform") {
        SceneSpec spec;
        SynthResult synth = generate(spec, model);
        PolarGrid grid = bin_points(synth.cloud, model, 360);
        std::size_t binned = 0;
        for (const PolarCell &cell : grid.cells) {
            if (cell.empty()) continue;
            binned += cell.points.size();
            CHECK(cell.max_z - cell.min_z == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(cell.points.size() == 5);  // 1800 bins / 360 sectors
        }
        CHECK(binned == synth.cloud.size());
    }

    SUBCASE("single point occupies exactly one cell and stays Ground") {
        PointCloud cloud;
        cloud.push_back(Point{10.0, 0.0, -1.7, 0.0});
        cloud.ring = {40};
        cloud.azimuth = {0.1};
        PolarGrid grid = bin_points(cloud, model, 360);
        std::size_t non_empty = 0;
        for (const PolarCell &cell : grid.cells) non_empty += cell.empty() ? 0 : 1;
        CHECK(non_empty == 1);
        // alone in its cell, the point is its own height reference
        auto labels = coarse_segment(grid, cloud, 0.3);
        CHECK(labels[0] == LabelState::Ground);
    }

    SUBCASE("box height shows up as the cell height spread") {
        // close enough that the beam fan sweeps the whole 1.5 m face
        SceneSpec spec;
        spec.boxes.push_back(SceneBox{5.0, 0.0, -1.73 + 0.75, 1.5, 1.5, 1.5, ClassLabel::KeyObstacle});
        SynthResult synth = generate(spec, model);
        PolarGrid grid = bin_points(synth.cloud, model, 360);
        double max_spread = 0.0;
        for (const PolarCell &cell : grid.cells)
            if (!cell.empty()) max_spread = std::max(max_spread, cell.max_z - cell.min_z);
        CHECK(max_spread == doctest::Approx(1.5).epsilon(0.02));
    }
}

TEST_CASE("coarse_segment") {
    SensorModel model = SensorModel::default_64();

    SUBCASE("flat ground is all Ground for any positive threshold") {
        SceneSpec spec;
        SynthResult synth = generate(spec, model);
        PolarGrid grid = bin_points(synth.cloud, model, 360);
        for (double thresh : {0.05, 0.3, 1.0}) {
            auto labels = coarse_segment(grid, synth.cloud, thresh);
            for (LabelState s : labels) REQUIRE(s == LabelState::Ground);
        }
    }

    SUBCASE("box flanks above the threshold become Obstacle") {
        SceneSpec spec;
        spec.boxes.push_back(SceneBox{10.0, 0.0, -1.73 + 0.75, 1.5, 1.5, 1.5, ClassLabel::KeyObstacle});
        SynthResult synth = generate(spec, model);
        PolarGrid grid = bin_points(synth.cloud, model, 360);
        auto labels = coarse_segment(grid, synth.cloud, 0.3);
        std::size_t high_box_points = 0, high_marked = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (synth.truth[i] != ClassLabel::KeyObstacle) continue;
            if (synth.cloud.z[i] > -1.73 + 0.35) {
                ++high_box_points;
                if (labels[i] == LabelState::Obstacle) ++high_marked;
            }
        }
        REQUIRE(high_box_points > 0);
        CHECK(high_marked == high_box_points);
    }

    SUBCASE("a cell's minimum-z point is never Obstacle") {
        SceneSpec spec;
        spec.noise_sigma = 0.05;
        spec.rng_seed = 11;
        spec.boxes.push_back(SceneBox{8.0, 2.0, -0.9, 2.0, 2.0, 1.6, ClassLabel::KeyObstacle});
        SynthResult synth = generate(spec, model);
        PolarGrid grid = bin_points(synth.cloud, model, 360);
        auto labels = coarse_segment(grid, synth.cloud, 0.2);
        for (const PolarCell &cell : grid.cells) {
            if (cell.empty()) continue;
            for (std::uint32_t idx : cell.points)
                if (synth.cloud.z[idx] == cell.min_z) REQUIRE(labels[idx] == LabelState::Ground);
        }
    }

    SUBCASE("raising the threshold never converts Ground to Obstacle") {
        SceneSpec spec;
        spec.noise_sigma = 0.02;
        spec.rng_seed = 4;
        spec.boxes.push_back(SceneBox{12.0, -3.0, -0.8, 2.0, 1.0, 1.8, ClassLabel::KeyObstacle});
        SynthResult synth = generate(spec, model);
        PolarGrid grid = bin_points(synth.cloud, model, 360);
        auto low = coarse_segment(grid, synth.cloud, 0.2);
        auto high = coarse_segment(grid, synth.cloud, 0.5);
        for (std::size_t i = 0; i < low.size(); ++i)
            if (low[i] == LabelState::Ground) REQUIRE(high[i] == LabelState::Ground);
    }
}

TEST_CASE("expected_points reproduces the fixed-grid imbalance") {
    // two well-separated rings so each example cell sees exactly one of them,
    // matching the per-ring illustration the formula comes from
    SensorModel model;
    model.mount_height = 1.73;
    model.azimuth_bins = 1800;
    const double r = 9.3665;
    model.vertical_angles = {std::atan(r / 1.73), std::atan(60.0 / 1.73)};
    model.ring_radii = {r, 60.0};
    model.validate();
    const double total = 1800.0;

    SUBCASE("cell spanning half the ring's arc holds half the points") {
        const double n = expected_points(-r, r, r + 1.0, -0.5, model, total);
        CHECK(n == doctest::Approx(total / 2).epsilon(1e-9));
    }

    SUBCASE("1-meter cell at the top of the ring holds about 1.7% of it") {
        const double n = expected_points(-0.5, 0.5, r + 0.5, r - 0.5, model, total);
        const double fraction = n / total;
        CHECK(fraction == doctest::Approx(2.0 * std::atan2(0.5, std::sqrt(r * r - 0.25)) /
                                          (2.0 * std::acos(-1.0)))
                              .epsilon(1e-9));
        CHECK(fraction == doctest::Approx(0.017).epsilon(0.01));
        // the nearly-30x imbalance between the two example cells
        const double ratio = (total / 2) / n;
        CHECK(ratio > 25.0);
        CHECK(ratio < 35.0);
    }

    SUBCASE("cell strictly inside the innermost ring sees nothing") {
        CHECK(expected_points(-0.5, 0.5, 0.6, -0.6, model, total) == 0.0);
    }

    SUBCASE("precondition violations") {
        CHECK_THROWS_AS(expected_points(1.0, -1.0, 1.0, -1.0, model, total), UsageError);
        CHECK_THROWS_AS(expected_points(-1.0, 1.0, -1.0, 1.0, model, total), UsageError);
        CHECK_THROWS_AS(expected_points(-1.0, 1.0, 1.0, -1.0, model, 0.0), UsageError);
    }
}

TEST_CASE("ring grid balances counts better than a 1 m Cartesian grid") {
    SensorModel model = SensorModel::uniform(64, -24.0, -2.0, 1.73, 900);
    SceneSpec spec;
    spec.noise_sigma = 0.01;
    spec.rng_seed = 21;
    SynthResult synth = generate(spec, model);

    PolarGrid grid = bin_points(synth.cloud, model, 180);
    std::vector<std::size_t> ring_counts;
    for (const PolarCell &cell : grid.cells)
        if (!cell.empty()) ring_counts.push_back(cell.points.size());

    const double extent = make_ring_boundaries(model).back();
    const auto cart = cartesian_counts(synth.cloud, extent, 1.0);

    CHECK(coefficient_of_variation(ring_counts) < coefficient_of_variation(cart));
}

TEST_CASE("grid csv dump") {
    SensorModel model = SensorModel::default_64();
    PointCloud cloud;
    cloud.push_back(Point{10.0, 0.0, -1.7, 0.0});
    cloud.ring = {40};
    cloud.azimuth = {0.1};
    PolarGrid grid = bin_points(cloud, model, 360);
    std::ostringstream out;
    dump_grid_csv(grid, out);
    CHECK(out.str().find("ring_band,sector,count,min_z,max_z\n") == 0);
    CHECK(out.str().find(",1,-1.7,-1.7") != std::string::npos);
}
