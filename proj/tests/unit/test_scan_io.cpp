#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "groundseg/errors.hpp"
#include "groundseg/scan_io.hpp"
#include "support.hpp"

using namespace groundseg;

namespace {

void write_bytes(const std::filesystem::path &path, const std::vector<float> &values) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char *>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
}

}  // namespace

TEST_CASE("load_scan parses 16-byte records") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "scan.bin";
    write_bytes(path, {1.0f, 2.0f, 3.0f, 0.5f, -4.0f, 0.0f, 1.0f, 0.25f});

    ScanLoadStats stats;
    PointCloud cloud = load_scan(path, &stats);
    CHECK(stats.records == 2);
    CHECK(stats.dropped == 0);
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.x[0] == doctest::Approx(1.0));
    CHECK(cloud.intensity[1] == doctest::Approx(0.25));
    CHECK(cloud.ring[0] == PointCloud::kInvalidRing);
}

TEST_CASE("load_scan drops degenerate and non-finite records") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "scan.bin";
    const float nan = std::numeric_limits<float>::quiet_NaN();
    write_bytes(path, {0.0f, 0.0f, 0.0f, 0.0f,      // zero range
                       nan, 1.0f, 1.0f, 0.0f,       // non-finite
                       2.0f, 0.0f, -1.0f, 0.1f});   // valid
    ScanLoadStats stats;
    PointCloud cloud = load_scan(path, &stats);
    CHECK(stats.records == 3);
    CHECK(stats.dropped == 2);
    CHECK(cloud.size() == 1);
}

TEST_CASE("load_scan rejects truncated files") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "scan.bin";
    std::ofstream(path, std::ios::binary).write("abcde", 5);
    CHECK_THROWS_AS(load_scan(path), ParseError);
}

TEST_CASE("scan write/load round trip is bit exact") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "scan.bin";
    PointCloud cloud;
    cloud.push_back(Point{1.25, -2.5, 0.125, 0.75});
    cloud.push_back(Point{10.0, 20.0, -1.73, 0.0});
    write_scan(path, cloud);
    PointCloud back = load_scan(path);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.x[i] == static_cast<float>(cloud.x[i]));
        CHECK(back.y[i] == static_cast<float>(cloud.y[i]));
        CHECK(back.z[i] == static_cast<float>(cloud.z[i]));
    }
}

TEST_CASE("label remap merges raw ids") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "scan.label";
    // road, car, building, unknown id 777
    std::vector<std::uint32_t> raw = {40, 10, 50, 777};
    {
        std::ofstream out(path, std::ios::binary);
        out.write(reinterpret_cast<const char *>(raw.data()), 16);
    }
    LabelLoadStats stats;
    auto labels = load_labels(path, LabelRemap::semantic_kitti(), 4, &stats);
    CHECK(labels[0] == ClassLabel::Ground);
    CHECK(labels[1] == ClassLabel::KeyObstacle);
    CHECK(labels[2] == ClassLabel::OrdinaryObstacle);
    CHECK(labels[3] == ClassLabel::OrdinaryObstacle);  // unmapped fallback
    CHECK(stats.unmapped == 1);

    CHECK_THROWS_AS(load_labels(path, LabelRemap::semantic_kitti(), 5), ParseError);
}

TEST_CASE("empty label file with empty scan") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "empty.label";
    std::ofstream(path, std::ios::binary);
    auto labels = load_labels(path, LabelRemap::semantic_kitti(), 0);
    CHECK(labels.empty());
}

TEST_CASE("label remap config file") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "remap.cfg";
    std::ofstream(path) << "40 ground\n10 key\n50 ordinary\n";
    LabelRemap remap = LabelRemap::load(path);
    CHECK(remap.table.at(40) == ClassLabel::Ground);
    CHECK(remap.table.at(10) == ClassLabel::KeyObstacle);

    std::ofstream(path) << "40 bogus\n";
    CHECK_THROWS_AS(LabelRemap::load(path), ConfigError);
}

TEST_CASE("prediction labels round trip through the binary format") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "pred.label";
    std::vector<LabelState> labels = {LabelState::Ground, LabelState::Obstacle,
                                      LabelState::HighConfGround, LabelState::HighConfObstacle};
    write_prediction_labels(path, labels);
    auto back = load_prediction_labels(path, LabelRemap::semantic_kitti());
    REQUIRE(back.size() == 4);
    CHECK(back[0] == LabelState::Ground);
    CHECK(back[1] == LabelState::Obstacle);
    CHECK(back[2] == LabelState::Ground);
    CHECK(back[3] == LabelState::Obstacle);
}

TEST_CASE("truth labels round trip through the stock remap") {
    testsupport::TempDir tmp;
    const auto path = tmp.path() / "truth.label";
    std::vector<ClassLabel> truth = {ClassLabel::Ground, ClassLabel::OrdinaryObstacle,
                                     ClassLabel::KeyObstacle};
    write_truth_labels(path, truth);
    auto back = load_labels(path, LabelRemap::semantic_kitti(), 3);
    CHECK(back == truth);
}
