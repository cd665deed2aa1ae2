#pragma once

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include "groundseg/point_cloud.hpp"

namespace groundseg {

// Binary scan format: 16-byte records of four little-endian IEEE-754 floats
// (x, y, z, intensity). Label format: one little-endian uint32 per point,
// class id in the low 16 bits.

struct ScanLoadStats {
    std::size_t records = 0;  // records present in the file
    std::size_t dropped = 0;  // non-finite or zero-range records
};

PointCloud load_scan(const std::filesystem::path &path, ScanLoadStats *stats = nullptr);
void write_scan(const std::filesystem::path &path, const PointCloud &cloud);

// Maps raw dataset class ids onto the three merged classes. Ids missing from
// the table fall back to OrdinaryObstacle (counted per load).
struct LabelRemap {
    std::unordered_map<std::uint16_t, ClassLabel> table;

    static LabelRemap semantic_kitti();
    static LabelRemap load(const std::filesystem::path &path);
};

struct LabelLoadStats {
    std::size_t unmapped = 0;
};

std::vector<ClassLabel> load_labels(const std::filesystem::path &path, const LabelRemap &remap,
                                    std::size_t expected_count, LabelLoadStats *stats = nullptr);

std::vector<std::uint32_t> load_raw_labels(const std::filesystem::path &path);

// Raw ids used when writing labels. Predictions are binary (ground/obstacle);
// synthetic ground truth uses one id per merged class so the stock remap
// reads it back.
constexpr std::uint16_t kGroundWriteId = 40;
constexpr std::uint16_t kObstacleWriteId = 50;
constexpr std::uint16_t kKeyObstacleWriteId = 10;

void write_prediction_labels(const std::filesystem::path &path, const std::vector<LabelState> &labels);
void write_truth_labels(const std::filesystem::path &path, const std::vector<ClassLabel> &truth);

// Reads a prediction file: ids remapping to Ground are Ground, anything else
// is Obstacle.
std::vector<LabelState> load_prediction_labels(const std::filesystem::path &path, const LabelRemap &remap);

}  // namespace groundseg
