#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "groundseg/adjacency.hpp"
#include "groundseg/errors.hpp"
#include "groundseg/range_image.hpp"
#include "groundseg/synth.hpp"

using namespace groundseg;

namespace {
constexpr double kPi = std::numbers::pi;
double deg(double d) { return d * kPi / 180.0; }
}  // namespace

TEST_CASE("height_diff") {
    SUBCASE("flat-ground spacing gives zero height difference") {
        const double h = 1.8, d1 = deg(70), d2 = deg(75);
        const double flat_dd = h * (std::tan(d2) - std::tan(d1));
        CHECK(height_diff(flat_dd, h, d1, d2) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("zero spacing gives the full inter-ring height") {
        const double h = 1.8, d1 = deg(70), d2 = deg(75);
        const double want = h * (std::tan(d2) - std::tan(d1)) / std::tan(d2);
        CHECK(height_diff(0.0, h, d1, d2) == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("closed-form value") {
        // h=2, d1=80deg, d2=85deg, dd=5; verified with a high-precision evaluator
        CHECK(height_diff(5.0, 2.0, deg(80), deg(85)) ==
              doctest::Approx(0.57021094861593232).epsilon(1e-12));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(height_diff(1.0, 2.0, deg(85), deg(80)), DomainError);
        CHECK_THROWS_AS(height_diff(1.0, 2.0, deg(80), deg(95)), DomainError);
    }
}

TEST_CASE("elevation_angle") {
    CHECK(elevation_angle(0.0, 5.0) == doctest::Approx(0.0));
    CHECK(elevation_angle(3.0, 3.0) == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(elevation_angle(0.570, 5.0) == doctest::Approx(0.11350996743999514).epsilon(1e-12));
    // composed with the height_diff example
    CHECK(elevation_angle(height_diff(5.0, 2.0, deg(80), deg(85)), 5.0) ==
          doctest::Approx(0.11355161570203113).epsilon(1e-12));
    CHECK_THROWS_AS(elevation_angle(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(elevation_angle(1.0, -2.0), DomainError);
}

TEST_CASE("min_flat_distance") {
    SUBCASE("K=0 reduces to the flat-ground spacing") {
        const double h = 1.73, d1 = deg(66), d2 = deg(67);
        CHECK(min_flat_distance(h, d1, d2, 0.0) ==
              doctest::Approx(h * (std::tan(d2) - std::tan(d1))).epsilon(1e-12));
    }
    SUBCASE("equal angles give a zero bound") {
        CHECK(min_flat_distance(2.0, deg(75), deg(75), deg(15)) == doctest::Approx(0.0));
    }
    SUBCASE("closed-form value") {
        // h=2, d1=80deg, d2=85deg, K=15deg; verified with a high-precision evaluator
        CHECK(min_flat_distance(2.0, deg(80), deg(85), deg(15)) ==
              doctest::Approx(2.8349660829805463).epsilon(1e-12));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(min_flat_distance(2.0, deg(85), deg(80), deg(15)), DomainError);
        CHECK_THROWS_AS(min_flat_distance(2.0, deg(80), deg(92), deg(15)), DomainError);
    }
}

TEST_CASE("slope-test identities") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> hs(0.5, 3.0);
    std::uniform_real_distribution<double> lo(5.0, 80.0);
    std::uniform_real_distribution<double> gap(0.2, 8.0);
    std::uniform_real_distribution<double> ks(1.0, 30.0);

    SUBCASE("composing the three forms at the bound recovers K") {
        for (int i = 0; i < 2000; ++i) {
            const double h = hs(rng);
            const double d1 = deg(lo(rng));
            const double d2 = std::min(d1 + deg(gap(rng)), deg(88.5));
            const double k = deg(ks(rng));
            const double dd = min_flat_distance(h, d1, d2, k);
            const double theta = elevation_angle(height_diff(dd, h, d1, d2), dd);
            CHECK(std::abs(theta - k) <= 1e-9 * std::abs(k));
        }
    }

    SUBCASE("scaling h and dd together leaves the angle unchanged") {
        for (int i = 0; i < 500; ++i) {
            const double h = hs(rng);
            const double d1 = deg(lo(rng));
            const double d2 = std::min(d1 + deg(gap(rng)), deg(88.5));
            const double dd = gap(rng);
            const double theta1 = elevation_angle(height_diff(dd, h, d1, d2), dd);
            const double theta2 = elevation_angle(height_diff(2 * dd, 2 * h, d1, d2), 2 * dd);
            CHECK(theta1 == doctest::Approx(theta2).epsilon(1e-12));
        }
    }
}

TEST_CASE("pair thresholds") {
    SensorModel model = SensorModel::default_64();
    PairThresholds thresholds = PairThresholds::compute(model, deg(15), 2);
    REQUIRE(thresholds.min_flat_dd.size() == 64);
    for (int l = 0; l + 2 < 64; ++l) {
        double d1 = model.vertical_angles[l], d2 = model.vertical_angles[l + 2];
        CHECK(thresholds.min_flat_dd[l] ==
              doctest::Approx(min_flat_distance(model.mount_height, d1, d2, deg(15))));
    }
    // last rows have no pair
    CHECK(thresholds.min_flat_dd[62] == 0.0);
    CHECK(thresholds.min_flat_dd[63] == 0.0);

    SUBCASE("horizon-grazing lasers are disabled, not fatal") {
        SensorModel weird = SensorModel::uniform(4, -10.0, -4.0, 1.73, 100);
        weird.vertical_angles[3] = deg(91.0);  // above the horizon
        weird.ring_radii[3] = weird.ring_radii[2] + 1.0;
        PairThresholds t = PairThresholds::compute(weird, deg(15), 1);
        CHECK(t.min_flat_dd[2] == 0.0);
        CHECK(t.min_flat_dd[1] > 0.0);
    }
}

TEST_CASE("mark_obstacles") {
    SensorModel model = SensorModel::default_64();
    PairThresholds thresholds = PairThresholds::compute(model, deg(15), 2);

    SUBCASE("flat ground marks nothing") {
        SceneSpec spec;
        SynthResult synth = generate(spec, model);
        RangeImage image = build_range_image(synth.cloud, model);
        std::vector<LabelState> labels(synth.cloud.size(), LabelState::Ground);
        auto marked = mark_obstacles(image, synth.cloud, thresholds, labels, 3);
        for (LabelState s : marked) REQUIRE(s == LabelState::Ground);
    }

    SUBCASE("a vertical wall's compared rows are marked") {
        SceneSpec spec;
        spec.boxes.push_back(SceneBox{0.0, 15.0, -1.73 + 2.0, 12.0, 0.4, 4.0, ClassLabel::KeyObstacle});
        SynthResult synth = generate(spec, model);
        RangeImage image = build_range_image(synth.cloud, model);
        std::vector<LabelState> labels(synth.cloud.size(), LabelState::Ground);
        auto marked = mark_obstacles(image, synth.cloud, thresholds, labels, 3);

        // wall rows whose stride-partner column is also on the wall must be
        // marked; the wall's lowest sampled row varies per column
        std::vector<int> lowest_wall_row(1800, 64);
        for (std::size_t i = 0; i < synth.truth.size(); ++i)
            if (synth.truth[i] == ClassLabel::KeyObstacle) {
                const int col = azimuth_bin(synth.cloud.azimuth[i], 1800);
                lowest_wall_row[col] = std::min(lowest_wall_row[col],
                                                static_cast<int>(synth.cloud.ring[i]));
            }
        std::size_t expected = 0, got = 0;
        for (std::size_t i = 0; i < synth.truth.size(); ++i) {
            if (synth.truth[i] != ClassLabel::KeyObstacle) continue;
            const int col = azimuth_bin(synth.cloud.azimuth[i], 1800);
            if (synth.cloud.ring[i] < lowest_wall_row[col] + 2) continue;
            ++expected;
            if (marked[i] == LabelState::Obstacle) ++got;
        }
        REQUIRE(expected > 0);
        CHECK(got == expected);

        // monotone: never clears a label
        std::vector<LabelState> pre(synth.cloud.size(), LabelState::Ground);
        pre[0] = LabelState::Obstacle;
        auto marked2 = mark_obstacles(image, synth.cloud, thresholds, pre, 3);
        CHECK(marked2[0] == LabelState::Obstacle);
        for (std::size_t i = 0; i < marked2.size(); ++i)
            if (marked[i] == LabelState::Obstacle) REQUIRE(marked2[i] == LabelState::Obstacle);
    }

    SUBCASE("window wraps across the azimuth seam") {
        // two points straddling azimuth 0: lower at the last column, upper at
        // column 0 of the row two above, closer than the flat bound
        PointCloud cloud;
        const int l = 10;
        const double r_lo = model.ring_radii[l];
        const double az_lo = 2.0 * kPi - 1e-4;
        const double az_up = 1e-4;
        cloud.push_back(Point{r_lo * std::cos(az_lo), r_lo * std::sin(az_lo), -1.73, 0.0});
        cloud.push_back(Point{(r_lo + 0.05) * std::cos(az_up), (r_lo + 0.05) * std::sin(az_up),
                              -1.70, 0.0});
        cloud.ring = {l, l + 2};
        cloud.azimuth = {az_lo, az_up};
        RangeImage image = build_range_image(cloud, model);
        std::vector<LabelState> labels(2, LabelState::Ground);
        auto marked = mark_obstacles(image, cloud, thresholds, labels, 3);
        CHECK(marked[0] == LabelState::Ground);
        CHECK(marked[1] == LabelState::Obstacle);
    }
}
