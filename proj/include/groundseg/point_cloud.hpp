#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace groundseg {

// Merged ground-truth classes used for evaluation.
enum class ClassLabel : std::uint8_t {
    Ground = 0,
    OrdinaryObstacle = 1,
    KeyObstacle = 2,
};

// Per-point segmentation state threaded from the coarse stage to the MRF.
// The high-confidence states are only assigned by seeding and act as hard
// constraints in the fine stage.
enum class LabelState : std::uint8_t {
    Unknown = 0,
    Ground = 1,
    Obstacle = 2,
    HighConfGround = 3,
    HighConfObstacle = 4,
};

inline bool is_ground_like(LabelState s) {
    return s == LabelState::Ground || s == LabelState::HighConfGround;
}

inline bool is_obstacle_like(LabelState s) {
    return s == LabelState::Obstacle || s == LabelState::HighConfObstacle;
}

// Collapses high-confidence states onto their base class. Unknown maps to
// Obstacle: an unresolved point must not be reported as drivable.
inline LabelState base_label(LabelState s) {
    switch (s) {
    case LabelState::HighConfGround: return LabelState::Ground;
    case LabelState::HighConfObstacle: return LabelState::Obstacle;
    case LabelState::Unknown: return LabelState::Obstacle;
    default: return s;
    }
}

struct Point {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double intensity = 0.0;

    double range() const { return std::sqrt(x * x + y * y + z * z); }
    double planar_radius() const { return std::sqrt(x * x + y * y); }
};

// One LiDAR revolution, stored as parallel arrays. `ring` and `azimuth` stay
// at their sentinels until assign_rings() has run.
struct PointCloud {
    static constexpr std::int32_t kInvalidRing = -1;

    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    std::vector<double> intensity;
    std::vector<std::int32_t> ring;
    std::vector<double> azimuth;

    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }

    Point point(std::size_t i) const { return Point{x[i], y[i], z[i], intensity[i]}; }

    void push_back(const Point &p) {
        x.push_back(p.x);
        y.push_back(p.y);
        z.push_back(p.z);
        intensity.push_back(p.intensity);
        ring.push_back(kInvalidRing);
        azimuth.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    void reserve(std::size_t n) {
        x.reserve(n);
        y.reserve(n);
        z.reserve(n);
        intensity.reserve(n);
        ring.reserve(n);
        azimuth.reserve(n);
    }

    bool rings_assigned() const {
        return !empty() && ring.front() != kInvalidRing;
    }
};

}  // namespace groundseg
