#include "groundseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "groundseg/config.hpp"
#include "groundseg/errors.hpp"

namespace groundseg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNoHit = std::numeric_limits<double>::infinity();

struct Ray {
    double dx, dy, dz;
};

// Deterministic standard normal: Box-Muller over raw mt19937_64 output, so
// identical seeds give bit-identical clouds on every platform.
class NormalDraw {
  public:
    explicit NormalDraw(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;          // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

  private:
    std::mt19937_64 rng_;
};

// Ground height at (x, y), optionally ignoring one curb (for face extents).
double ground_height(const SceneSpec &spec, double z0, double x, double y, int skip_curb = -1) {
    double z = z0 + spec.slope_x * x + spec.slope_y * y;
    for (std::size_t i = 0; i < spec.curbs.size(); ++i) {
        if (static_cast<int>(i) == skip_curb) continue;
        const SceneCurb &curb = spec.curbs[i];
        const double coord = curb.axis == 0 ? x : y;
        if (coord > curb.offset) z += curb.height;
    }
    return z;
}

double intersect_ground(const SceneSpec &spec, double z0, const Ray &ray, ClassLabel &cls) {
    double best = kNoHit;

    // Flat regions: one candidate plane per curb sign pattern; a hit counts
    // when the intersection point actually lies in that region.
    const std::size_t k = spec.curbs.size();
    const double denom = ray.dz - spec.slope_x * ray.dx - spec.slope_y * ray.dy;
    if (std::abs(denom) > 1e-12) {
        for (std::size_t pattern = 0; pattern < (1u << k); ++pattern) {
            double lift = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                if (pattern & (1u << i)) lift += spec.curbs[i].height;
            const double t = (z0 + lift) / denom;
            if (t <= 1e-9 || t >= best) continue;
            const double px = ray.dx * t;
            const double py = ray.dy * t;
            bool matches = true;
            for (std::size_t i = 0; i < k; ++i) {
                const double coord = spec.curbs[i].axis == 0 ? px : py;
                const bool raised = coord > spec.curbs[i].offset;
                if (raised != ((pattern & (1u << i)) != 0)) {
                    matches = false;
                    break;
                }
            }
            if (matches) {
                best = t;
                cls = ClassLabel::Ground;
            }
        }
    }

    // Curb faces: vertical strips at the step lines.
    for (std::size_t i = 0; i < k; ++i) {
        const SceneCurb &curb = spec.curbs[i];
        const double da = curb.axis == 0 ? ray.dx : ray.dy;
        if (std::abs(da) < 1e-15) continue;
        const double t = curb.offset / da;
        if (t <= 1e-9 || t >= best) continue;
        const double px = ray.dx * t;
        const double py = ray.dy * t;
        const double pz = ray.dz * t;
        const double base = ground_height(spec, z0, px, py, static_cast<int>(i));
        if (pz >= base && pz <= base + curb.height) {
            best = t;
            cls = ClassLabel::OrdinaryObstacle;
        }
    }
    return best;
}

double intersect_box(const SceneBox &box, const Ray &ray) {
    double t0 = 1e-9, t1 = kNoHit;
    const double lo[3] = {box.cx - box.sx / 2, box.cy - box.sy / 2, box.cz - box.sz / 2};
    const double hi[3] = {box.cx + box.sx / 2, box.cy + box.sy / 2, box.cz + box.sz / 2};
    const double d[3] = {ray.dx, ray.dy, ray.dz};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(d[i]) < 1e-15) {
            if (0.0 < lo[i] || 0.0 > hi[i]) return kNoHit;
            continue;
        }
        double ta = lo[i] / d[i];
        double tb = hi[i] / d[i];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return kNoHit;
    }
    return t0;
}

ClassLabel parse_class_name(const std::string &s) {
    if (s == "ground") return ClassLabel::Ground;
    if (s == "ordinary") return ClassLabel::OrdinaryObstacle;
    if (s == "key") return ClassLabel::KeyObstacle;
    throw ConfigError("scene: class must be ground|ordinary|key, got '" + s + "'");
}

const char *class_name(ClassLabel cls) {
    switch (cls) {
    case ClassLabel::Ground: return "ground";
    case ClassLabel::OrdinaryObstacle: return "ordinary";
    default: return "key";
    }
}

}  // namespace

void SceneSpec::validate(const SensorModel &model) const {
    if (noise_sigma < 0.0) throw ConfigError("scene: noise_sigma must be >= 0");
    const double z0 = use_model_height ? -model.mount_height : ground_z;
    for (const SceneBox &box : boxes) {
        if (box.sx <= 0.0 || box.sy <= 0.0 || box.sz <= 0.0)
            throw ConfigError("scene: box extents must be positive");
        const double bottom = box.cz - box.sz / 2;
        if (bottom < ground_height(*this, z0, box.cx, box.cy) - 1e-9)
            throw ConfigError("scene: box sinks below the ground surface");
    }
    for (const SceneCurb &curb : curbs) {
        if (curb.height <= 0.0) throw ConfigError("scene: curb height must be positive");
        if (curb.axis != 0 && curb.axis != 1) throw ConfigError("scene: curb axis must be x or y");
    }
}

SceneSpec SceneSpec::load(const std::filesystem::path &path) {
    Config cfg = Config::load(path);
    SceneSpec spec;
    if (cfg.has("ground.z0")) {
        spec.ground_z = cfg.get_double("ground.z0", 0.0);
        spec.use_model_height = false;
    }
    spec.slope_x = cfg.get_double("ground.slope_x", 0.0);
    spec.slope_y = cfg.get_double("ground.slope_y", 0.0);
    spec.noise_sigma = cfg.get_double("noise.sigma", 0.0);
    spec.rng_seed = static_cast<std::uint64_t>(cfg.get_double("rng.seed", 0.0));

    for (const std::string &row : cfg.get_all("box")) {
        std::istringstream is(row);
        SceneBox box;
        if (!(is >> box.cx >> box.cy >> box.cz >> box.sx >> box.sy >> box.sz))
            throw ConfigError("scene: box line must be '<cx> <cy> <cz> <sx> <sy> <sz> [class]'");
        std::string cls;
        if (is >> cls) box.cls = parse_class_name(cls);
        spec.boxes.push_back(box);
    }
    for (const std::string &row : cfg.get_all("curb")) {
        std::istringstream is(row);
        SceneCurb curb;
        std::string axis;
        if (!(is >> curb.height >> axis >> curb.offset) || (axis != "x" && axis != "y"))
            throw ConfigError("scene: curb line must be '<height> <x|y> <offset>'");
        curb.axis = axis == "x" ? 0 : 1;
        spec.curbs.push_back(curb);
    }
    return spec;
}

void SceneSpec::save(const std::filesystem::path &path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write scene file: " + path.string());
    out.precision(12);
    if (!use_model_height) out << "ground.z0 " << ground_z << "\n";
    out << "ground.slope_x " << slope_x << "\n";
    out << "ground.slope_y " << slope_y << "\n";
    out << "noise.sigma " << noise_sigma << "\n";
    out << "rng.seed " << rng_seed << "\n";
    for (const SceneBox &box : boxes)
        out << "box " << box.cx << ' ' << box.cy << ' ' << box.cz << ' ' << box.sx << ' ' << box.sy << ' '
            << box.sz << ' ' << class_name(box.cls) << "\n";
    for (const SceneCurb &curb : curbs)
        out << "curb " << curb.height << ' ' << (curb.axis == 0 ? 'x' : 'y') << ' ' << curb.offset << "\n";
}

SynthResult generate(const SceneSpec &spec, const SensorModel &model) {
    model.validate();
    spec.validate(model);

    const double z0 = spec.use_model_height ? -model.mount_height : spec.ground_z;
    const int L = model.laser_count();
    const int W = model.azimuth_bins;

    NormalDraw noise(spec.rng_seed);
    SynthResult result;
    result.cloud.reserve(static_cast<std::size_t>(L) * W);

    for (int l = 0; l < L; ++l) {
        const double delta = model.vertical_angles[l];
        const double sd = std::sin(delta);
        const double cd = std::cos(delta);
        for (int c = 0; c < W; ++c) {
            const double phi = (c + 0.5) * kTwoPi / W;
            const Ray ray{sd * std::cos(phi), sd * std::sin(phi), -cd};

            ClassLabel cls = ClassLabel::Ground;
            double best = intersect_ground(spec, z0, ray, cls);
            for (const SceneBox &box : spec.boxes) {
                const double t = intersect_box(box, ray);
                if (t < best) {
                    best = t;
                    cls = box.cls;
                }
            }
            if (!std::isfinite(best)) continue;  // ray escapes the scene

            double t = best;
            if (spec.noise_sigma > 0.0) t += spec.noise_sigma * noise();
            if (t <= 1e-9) continue;

            result.cloud.push_back(Point{ray.dx * t, ray.dy * t, ray.dz * t, 0.5});
            result.cloud.ring.back() = l;
            result.cloud.azimuth.back() = phi;
            result.truth.push_back(cls);
        }
    }
    return result;
}

}  // namespace groundseg
