#include "groundseg/scan_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "groundseg/config.hpp"
#include "groundseg/errors.hpp"

namespace groundseg {

namespace {

constexpr std::size_t kRecordSize = 16;

std::vector<char> read_all(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw ParseError("cannot open file: " + path.string());
    auto size = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    std::vector<char> bytes(size);
    if (size > 0 && !in.read(bytes.data(), static_cast<std::streamsize>(size)))
        throw ParseError("read failed: " + path.string());
    return bytes;
}

float le_float(const char *p) {
    std::uint32_t u = static_cast<std::uint8_t>(p[0]) | static_cast<std::uint8_t>(p[1]) << 8 |
                      static_cast<std::uint8_t>(p[2]) << 16 |
                      static_cast<std::uint32_t>(static_cast<std::uint8_t>(p[3])) << 24;
    return std::bit_cast<float>(u);
}

void put_le_float(char *p, float f) {
    std::uint32_t u = std::bit_cast<std::uint32_t>(f);
    p[0] = static_cast<char>(u & 0xff);
    p[1] = static_cast<char>((u >> 8) & 0xff);
    p[2] = static_cast<char>((u >> 16) & 0xff);
    p[3] = static_cast<char>((u >> 24) & 0xff);
}

std::uint32_t le_u32(const char *p) {
    return static_cast<std::uint8_t>(p[0]) | static_cast<std::uint8_t>(p[1]) << 8 |
           static_cast<std::uint8_t>(p[2]) << 16 |
           static_cast<std::uint32_t>(static_cast<std::uint8_t>(p[3])) << 24;
}

ClassLabel parse_class(const std::string &name, const std::string &context) {
    if (name == "ground") return ClassLabel::Ground;
    if (name == "ordinary") return ClassLabel::OrdinaryObstacle;
    if (name == "key") return ClassLabel::KeyObstacle;
    throw ConfigError(context + ": class must be ground|ordinary|key, got '" + name + "'");
}

}  // namespace

PointCloud load_scan(const std::filesystem::path &path, ScanLoadStats *stats) {
    std::vector<char> bytes = read_all(path);
    if (bytes.size() % kRecordSize != 0)
        throw ParseError("truncated scan file (size " + std::to_string(bytes.size()) +
                         " not a multiple of 16): " + path.string());

    const std::size_t records = bytes.size() / kRecordSize;
    PointCloud cloud;
    cloud.reserve(records);
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < records; ++i) {
        const char *rec = bytes.data() + i * kRecordSize;
        Point p{le_float(rec), le_float(rec + 4), le_float(rec + 8), le_float(rec + 12)};
        const bool finite = std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z) &&
                            std::isfinite(p.intensity);
        if (!finite || p.range() <= 0.0) {
            ++dropped;
            continue;
        }
        cloud.push_back(p);
    }
    if (stats) {
        stats->records = records;
        stats->dropped = dropped;
    }
    return cloud;
}

void write_scan(const std::filesystem::path &path, const PointCloud &cloud) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write scan file: " + path.string());
    std::vector<char> rec(kRecordSize);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        put_le_float(rec.data(), static_cast<float>(cloud.x[i]));
        put_le_float(rec.data() + 4, static_cast<float>(cloud.y[i]));
        put_le_float(rec.data() + 8, static_cast<float>(cloud.z[i]));
        put_le_float(rec.data() + 12, static_cast<float>(cloud.intensity[i]));
        out.write(rec.data(), kRecordSize);
    }
}

LabelRemap LabelRemap::semantic_kitti() {
    LabelRemap remap;
    // ground: road, parking, sidewalk, other-ground, lane marking, terrain
    for (std::uint16_t id : {40, 44, 48, 49, 60, 72}) remap.table[id] = ClassLabel::Ground;
    // key obstacles: people, riders and vehicles, moving or not
    for (std::uint16_t id : {10, 11, 13, 15, 16, 18, 20, 30, 31, 32, 252, 253, 254, 255, 256, 257, 258, 259})
        remap.table[id] = ClassLabel::KeyObstacle;
    // everything structural stays ordinary
    for (std::uint16_t id : {0, 1, 50, 51, 52, 70, 71, 80, 81, 99})
        remap.table[id] = ClassLabel::OrdinaryObstacle;
    return remap;
}

LabelRemap LabelRemap::load(const std::filesystem::path &path) {
    Config cfg = Config::load(path);
    LabelRemap remap;
    for (const auto &[key, value] : cfg.entries()) {
        int id = 0;
        try {
            id = std::stoi(key);
        } catch (const std::exception &) {
            throw ConfigError("label remap: keys must be raw class ids, got '" + key + "'");
        }
        if (id < 0 || id > 0xffff) throw ConfigError("label remap: id out of range: " + key);
        remap.table[static_cast<std::uint16_t>(id)] = parse_class(value, "label remap");
    }
    return remap;
}

std::vector<std::uint32_t> load_raw_labels(const std::filesystem::path &path) {
    std::vector<char> bytes = read_all(path);
    if (bytes.size() % 4 != 0)
        throw ParseError("truncated label file (size not a multiple of 4): " + path.string());
    std::vector<std::uint32_t> raw(bytes.size() / 4);
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = le_u32(bytes.data() + i * 4);
    return raw;
}

std::vector<ClassLabel> load_labels(const std::filesystem::path &path, const LabelRemap &remap,
                                    std::size_t expected_count, LabelLoadStats *stats) {
    std::vector<std::uint32_t> raw = load_raw_labels(path);
    if (raw.size() != expected_count)
        throw ParseError("label count " + std::to_string(raw.size()) + " does not match scan point count " +
                         std::to_string(expected_count) + ": " + path.string());
    std::vector<ClassLabel> out(raw.size());
    std::size_t unmapped = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto id = static_cast<std::uint16_t>(raw[i] & 0xffff);
        auto it = remap.table.find(id);
        if (it == remap.table.end()) {
            ++unmapped;
            out[i] = ClassLabel::OrdinaryObstacle;
        } else {
            out[i] = it->second;
        }
    }
    if (stats) stats->unmapped = unmapped;
    return out;
}

namespace {

void write_u32_labels(const std::filesystem::path &path, const std::vector<std::uint32_t> &ids) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write label file: " + path.string());
    for (std::uint32_t v : ids) {
        char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
        out.write(b, 4);
    }
}

}  // namespace

void write_prediction_labels(const std::filesystem::path &path, const std::vector<LabelState> &labels) {
    std::vector<std::uint32_t> ids(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        ids[i] = base_label(labels[i]) == LabelState::Ground ? kGroundWriteId : kObstacleWriteId;
    write_u32_labels(path, ids);
}

void write_truth_labels(const std::filesystem::path &path, const std::vector<ClassLabel> &truth) {
    std::vector<std::uint32_t> ids(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        switch (truth[i]) {
        case ClassLabel::Ground: ids[i] = kGroundWriteId; break;
        case ClassLabel::OrdinaryObstacle: ids[i] = kObstacleWriteId; break;
        case ClassLabel::KeyObstacle: ids[i] = kKeyObstacleWriteId; break;
        }
    }
    write_u32_labels(path, ids);
}

std::vector<LabelState> load_prediction_labels(const std::filesystem::path &path, const LabelRemap &remap) {
    std::vector<std::uint32_t> raw = load_raw_labels(path);
    std::vector<LabelState> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto id = static_cast<std::uint16_t>(raw[i] & 0xffff);
        auto it = remap.table.find(id);
        const bool ground = it != remap.table.end() && it->second == ClassLabel::Ground;
        out[i] = ground ? LabelState::Ground : LabelState::Obstacle;
    }
    return out;
}

}  // namespace groundseg
