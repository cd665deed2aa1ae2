#pragma once

#include <filesystem>
#include <vector>

namespace groundseg {

// Spinning-LiDAR geometry. Vertical angles are measured from the downward
// vertical (the ground normal through the sensor): 0 points straight down,
// pi/2 is horizontal. On flat ground a laser at angle d paints a ring of
// radius mount_height * tan(d), which is what `ring_radii` calibrates.
struct SensorModel {
    std::vector<double> vertical_angles;  // radians, strictly monotonic
    std::vector<double> ring_radii;       // meters, monotonic with the angles
    double mount_height = 1.73;           // meters above ground
    int azimuth_bins = 1800;              // range image width

    int laser_count() const { return static_cast<int>(vertical_angles.size()); }

    // Throws ConfigError when any invariant is violated.
    void validate() const;

    // Evenly spaced beams between two elevation angles (degrees relative to
    // horizontal, negative = below horizon). Ring radii are derived from the
    // mount height.
    static SensorModel uniform(int lasers, double elevation_lo_deg, double elevation_hi_deg,
                               double mount_height, int azimuth_bins);

    // 64 beams from -24 to -2 degrees elevation, h=1.73, 1800 bins.
    static SensorModel default_64();

    static SensorModel load(const std::filesystem::path &path);
    void save(const std::filesystem::path &path) const;
};

}  // namespace groundseg
