#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "groundseg/point_cloud.hpp"
#include "groundseg/sensor_model.hpp"

namespace groundseg {

// Deterministic ray-cast scene generator with exact per-point ground truth.
// Scenes are built from a (possibly sloped) ground plane, vertical curb steps
// and axis-aligned boxes; the nearest hit along each (laser, azimuth bin) ray
// wins. Range noise is applied along the ray from a seeded generator, so a
// given spec always produces a bit-identical cloud.

struct SceneBox {
    double cx = 0.0, cy = 0.0, cz = 0.0;  // center, sensor frame
    double sx = 1.0, sy = 1.0, sz = 1.0;  // full extents
    ClassLabel cls = ClassLabel::KeyObstacle;
};

// Step in the ground: the region with `axis`-coordinate beyond `offset` is
// raised by `height`. The vertical face at the step line is ground truth
// OrdinaryObstacle (a road edge), the raised surface is still Ground.
struct SceneCurb {
    double height = 0.15;
    int axis = 1;  // 0 = x, 1 = y
    double offset = 0.0;
};

struct SceneSpec {
    double ground_z = 0.0;       // base ground height; use_model_height replaces it with -h
    bool use_model_height = true;
    double slope_x = 0.0;        // dz/dx grade
    double slope_y = 0.0;        // dz/dy grade
    double noise_sigma = 0.0;    // range noise, meters
    std::uint64_t rng_seed = 0;
    std::vector<SceneBox> boxes;
    std::vector<SceneCurb> curbs;

    void validate(const SensorModel &model) const;  // throws ConfigError

    static SceneSpec load(const std::filesystem::path &path);
    void save(const std::filesystem::path &path) const;
};

struct SynthResult {
    PointCloud cloud;               // ring and azimuth exactly assigned
    std::vector<ClassLabel> truth;  // parallel to the cloud
};

SynthResult generate(const SceneSpec &spec, const SensorModel &model);

}  // namespace groundseg
