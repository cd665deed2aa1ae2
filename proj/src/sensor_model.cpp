#include "groundseg/sensor_model.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "groundseg/config.hpp"
#include "groundseg/errors.hpp"

namespace groundseg {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

void SensorModel::validate() const {
    if (laser_count() < 2) throw ConfigError("sensor model: need at least 2 lasers");
    if (ring_radii.size() != vertical_angles.size())
        throw ConfigError("sensor model: ring_radii and vertical_angles length mismatch");
    if (!(mount_height > 0.0)) throw ConfigError("sensor model: mount_height must be > 0");
    if (azimuth_bins < 1) throw ConfigError("sensor model: azimuth_bins must be >= 1");

    const bool ascending = vertical_angles[1] > vertical_angles[0];
    for (std::size_t i = 1; i < vertical_angles.size(); ++i) {
        double d = vertical_angles[i] - vertical_angles[i - 1];
        if (ascending ? d <= 0.0 : d >= 0.0)
            throw ConfigError("sensor model: vertical_angles must be strictly monotonic");
        double dr = ring_radii[i] - ring_radii[i - 1];
        if (ascending ? dr < 0.0 : dr > 0.0)
            throw ConfigError("sensor model: ring_radii must be monotonic with vertical_angles");
    }
    for (double r : ring_radii)
        if (!std::isfinite(r) || r <= 0.0)
            throw ConfigError("sensor model: ring_radii must be finite and positive");
}

SensorModel SensorModel::uniform(int lasers, double elevation_lo_deg, double elevation_hi_deg,
                                 double mount_height, int azimuth_bins) {
    if (lasers < 2) throw ConfigError("sensor model: need at least 2 lasers");
    SensorModel m;
    m.mount_height = mount_height;
    m.azimuth_bins = azimuth_bins;
    m.vertical_angles.resize(lasers);
    m.ring_radii.resize(lasers);
    const double step = (elevation_hi_deg - elevation_lo_deg) / (lasers - 1);
    for (int i = 0; i < lasers; ++i) {
        double elevation = elevation_lo_deg + step * i;
        double from_nadir = (90.0 + elevation) * kDegToRad;
        m.vertical_angles[i] = from_nadir;
        m.ring_radii[i] = mount_height * std::tan(from_nadir);
    }
    m.validate();
    return m;
}

SensorModel SensorModel::default_64() { return uniform(64, -24.0, -2.0, 1.73, 1800); }

SensorModel SensorModel::load(const std::filesystem::path &path) {
    Config cfg = Config::load(path);
    SensorModel m;
    int lasers = cfg.get_int("laser_count", 0);
    if (lasers < 2) throw ConfigError("sensor model: laser_count missing or < 2");
    m.mount_height = cfg.get_double("mount_height", 0.0);
    m.azimuth_bins = cfg.get_int("azimuth_bins", 1800);
    m.vertical_angles.assign(lasers, 0.0);
    m.ring_radii.assign(lasers, 0.0);

    std::vector<bool> seen(lasers, false);
    for (const std::string &row : cfg.get_all("laser")) {
        std::istringstream is(row);
        int idx = -1;
        double angle_deg = 0.0, radius = 0.0;
        if (!(is >> idx >> angle_deg >> radius))
            throw ConfigError("sensor model: laser line must be '<index> <angle_deg> <radius_m>'");
        if (idx < 0 || idx >= lasers) throw ConfigError("sensor model: laser index out of range");
        if (seen[idx]) throw ConfigError("sensor model: duplicate laser index");
        seen[idx] = true;
        m.vertical_angles[idx] = angle_deg * kDegToRad;
        m.ring_radii[idx] = radius;
    }
    for (int i = 0; i < lasers; ++i)
        if (!seen[i]) throw ConfigError("sensor model: missing laser " + std::to_string(i));
    m.validate();
    return m;
}

void SensorModel::save(const std::filesystem::path &path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write sensor model: " + path.string());
    out << "# vertical angle is measured from the downward vertical, degrees\n";
    out << "laser_count " << laser_count() << "\n";
    out << "mount_height " << mount_height << "\n";
    out << "azimuth_bins " << azimuth_bins << "\n";
    out << std::setprecision(12);
    for (int i = 0; i < laser_count(); ++i)
        out << "laser " << i << " " << vertical_angles[i] / kDegToRad << " " << ring_radii[i] << "\n";
}

}  // namespace groundseg
