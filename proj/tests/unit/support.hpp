#pragma once

// Test-only oracles. These stay independent of the implementation paths they
// check: the min-cut oracle enumerates labelings, the energy evaluator walks
// the range image itself, and the ray-box check intersects face planes
// directly.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "groundseg/mrf.hpp"
#include "groundseg/point_cloud.hpp"
#include "groundseg/range_image.hpp"

namespace testsupport {

struct OracleEdge {
    int u, v;
    double cap_uv, cap_vu;
};

struct OracleNet {
    int nodes = 0;
    std::vector<double> cap_source, cap_sink;
    std::vector<OracleEdge> edges;
};

// Minimum cut by exhaustive enumeration of all 2^n source-side subsets.
inline double brute_force_min_cut(const OracleNet &net) {
    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t combos = 1u << net.nodes;
    for (std::uint32_t mask = 0; mask < combos; ++mask) {
        double cut = 0.0;
        for (int u = 0; u < net.nodes; ++u) {
            const bool src = mask & (1u << u);
            cut += src ? net.cap_sink[u] : net.cap_source[u];
        }
        for (const OracleEdge &e : net.edges) {
            const bool us = mask & (1u << e.u);
            const bool vs = mask & (1u << e.v);
            if (us && !vs) cut += e.cap_uv;
            if (vs && !us) cut += e.cap_vu;
        }
        best = std::min(best, cut);
    }
    return best;
}

inline OracleNet random_net(std::mt19937 &rng, int max_nodes = 12, int max_cap = 10) {
    std::uniform_int_distribution<int> node_count(1, max_nodes);
    OracleNet net;
    net.nodes = node_count(rng);
    std::uniform_int_distribution<int> cap(0, max_cap);
    net.cap_source.resize(net.nodes);
    net.cap_sink.resize(net.nodes);
    for (int u = 0; u < net.nodes; ++u) {
        net.cap_source[u] = cap(rng);
        net.cap_sink[u] = cap(rng);
    }
    if (net.nodes > 1) {
        std::uniform_int_distribution<int> edge_count(0, 2 * net.nodes);
        std::uniform_int_distribution<int> pick(0, net.nodes - 1);
        const int m = edge_count(rng);
        for (int e = 0; e < m; ++e) {
            int u = pick(rng);
            int v = pick(rng);
            if (u == v) continue;
            net.edges.push_back(OracleEdge{u, v, static_cast<double>(cap(rng)),
                                           static_cast<double>(cap(rng))});
        }
    }
    return net;
}

// Eq-style labeling energy computed straight from the range image: the
// lambda-weighted regional term over Unknown-seeded nodes plus the boundary
// term over every 8-connected occupied pair in the active rows (columns
// wrap). `obstacle[]` is the candidate labeling per point.
inline double labeling_energy(const groundseg::RangeImage &image, const groundseg::PointCloud &cloud,
                              const std::vector<groundseg::LabelState> &seeded,
                              const std::vector<char> &obstacle,
                              const groundseg::HeightHistogram &d_obj,
                              const groundseg::HeightHistogram &d_bkg, const groundseg::MrfParams &params,
                              int row_min = 0, int row_max = -1) {
    using groundseg::LabelState;
    if (row_max < 0) row_max = image.rows - 1;

    double energy = 0.0;
    for (int r = row_min; r <= row_max; ++r) {
        for (int c = 0; c < image.cols; ++c) {
            const std::int32_t pt = image.point_index[image.cell(r, c)];
            if (pt < 0) continue;
            if (seeded[pt] != LabelState::Unknown) continue;
            const double p_obj = d_obj.query(cloud.z[pt], params.epsilon_prob);
            const double p_bkg = d_bkg.query(cloud.z[pt], params.epsilon_prob);
            const double cap = -std::log(params.epsilon_prob);
            const double cost = obstacle[pt] ? std::min(-std::log(p_obj), cap)
                                             : std::min(-std::log(p_bkg), cap);
            energy += params.lambda * cost;
        }
    }

    auto point_at = [&](int r, int c) -> std::int32_t {
        if (c < 0) c += image.cols;
        if (c >= image.cols) c -= image.cols;
        return image.point_index[image.cell(r, c)];
    };
    for (int r = row_min; r <= row_max; ++r) {
        for (int c = 0; c < image.cols; ++c) {
            const std::int32_t p = image.point_index[image.cell(r, c)];
            if (p < 0) continue;
            const std::int32_t neighbors[4] = {
                image.cols > 1 ? point_at(r, c + 1) : -1,
                r + 1 <= row_max && image.cols > 2 ? point_at(r + 1, c - 1) : -1,
                r + 1 <= row_max ? point_at(r + 1, c) : -1,
                r + 1 <= row_max && image.cols > 1 ? point_at(r + 1, c + 1) : -1,
            };
            for (std::int32_t q : neighbors) {
                if (q < 0) continue;
                if (obstacle[p] == obstacle[q]) continue;
                double d = std::hypot(cloud.x[p] - cloud.x[q], cloud.y[p] - cloud.y[q]);
                if (d < params.min_pair_distance) d = params.min_pair_distance;
                const double dh = cloud.z[p] - cloud.z[q];
                energy += std::exp(-params.sigma * dh * dh / d);
            }
        }
    }
    return energy;
}

// Second ray-box intersection: tests each of the six face planes directly
// instead of slab intervals.
inline double ray_box_by_faces(double dx, double dy, double dz, const double lo[3], const double hi[3]) {
    const double dir[3] = {dx, dy, dz};
    double best = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        if (std::abs(dir[axis]) < 1e-15) continue;
        for (double plane : {lo[axis], hi[axis]}) {
            const double t = plane / dir[axis];
            if (t <= 1e-9 || t >= best) continue;
            bool inside = true;
            for (int other = 0; other < 3; ++other) {
                if (other == axis) continue;
                const double coord = dir[other] * t;
                if (coord < lo[other] - 1e-12 || coord > hi[other] + 1e-12) {
                    inside = false;
                    break;
                }
            }
            if (inside) best = t;
        }
    }
    return best;
}

class TempDir {
  public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0;; ++attempt) {
            path_ = base / ("groundseg_test_" + std::to_string(std::random_device{}()) );
            if (std::filesystem::create_directory(path_)) break;
            if (attempt > 100) throw std::runtime_error("cannot create temp dir");
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path &path() const { return path_; }

  private:
    std::filesystem::path path_;
};

}  // namespace testsupport
