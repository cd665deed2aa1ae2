#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "groundseg/maxflow.hpp"
#include "groundseg/point_cloud.hpp"
#include "groundseg/range_image.hpp"

namespace groundseg {

struct MrfParams {
    double lambda = 1.0;        // region vs boundary weight, >= 0
    double sigma = 1.0;         // boundary sharpness, > 0
    double scale_k = 100.0;     // height histogram scale (bins of 1/scale_k meters)
    int seed_window = 5;        // odd window side for ground seeding
    double seed_ratio = 0.8;    // ground fraction required for a high-confidence seed
    double epsilon_prob = 1e-6; // probability floor for unseen histogram bins
    double min_pair_distance = 0.01;  // planar distance floor in the boundary term

    void validate() const;  // throws UsageError
};

// Discrete height distribution over g = round((z + h_l) * k) for one seed
// class. Probabilities over observed bins sum to 1; unseen bins are queried
// at the caller's floor.
struct HeightHistogram {
    double scale_k = 100.0;
    double h_l = 0.0;          // lowest z in the scan
    double floor_prob = 1e-6;  // returned for unseen bins
    std::unordered_map<long long, double> prob;
    std::size_t total = 0;

    long long bin_of(double z) const;
    double query(double z) const;
    double query(double z, double floor) const;
};

// Promotes every Obstacle point to HighConfObstacle. Ground points whose
// seed_window neighborhood (occupied cells only, window wrapping in azimuth)
// has a ground fraction above seed_ratio become HighConfGround; the remaining
// Ground points become Unknown. Points without a range-image cell, or on rows
// outside [row_min, row_max], are left untouched.
std::vector<LabelState> seed_high_confidence(const std::vector<LabelState> &labels,
                                             const RangeImage &image, const MrfParams &params,
                                             int row_min = 0, int row_max = -1);

// Height histograms of the two seed classes. h_l is the scan-wide minimum z.
// Throws SeedingError when either class is empty.
std::pair<HeightHistogram, HeightHistogram> build_histograms(const PointCloud &cloud,
                                                             const std::vector<LabelState> &labels,
                                                             double scale_k, double epsilon_prob);

struct RegionalCosts {
    double obstacle_label;  // -ln D_obj(g(z)), the cost of calling the point an obstacle
    double ground_label;    // -ln D_bkg(g(z))
};

RegionalCosts regional_costs(double z, const HeightHistogram &d_obj, const HeightHistogram &d_bkg,
                             double epsilon_prob);

// exp(-sigma * |h(p)-h(q)|^2 / d(p,q)) with the planar distance floored at
// min_distance. Symmetric, in (0, 1].
double boundary_weight(const Point &p, const Point &q, double sigma, double min_distance = 0.01);

// Binary MRF over occupied range-image cells. Terminal costs follow the
// interactive graph-cut convention: the arc to a terminal is cut when the
// node ends up on the other side, so the arc to the obstacle terminal carries
// the ground-label cost and vice versa. Seeds get an infinite-equivalent
// attachment (1 + sum of all finite capacities).
struct EnergyModel {
    struct TerminalCost {
        double to_obstacle = 0.0;  // cut when the node is labeled ground
        double to_ground = 0.0;    // cut when the node is labeled obstacle
    };
    struct Edge {
        std::int32_t a;
        std::int32_t b;
        double weight;
    };

    std::vector<std::int32_t> node_of_cell;  // image-sized, -1 where no node
    std::vector<std::int32_t> cell_of_node;
    std::vector<TerminalCost> terminal;
    std::vector<Edge> edges;
    double infinite_cost = 0.0;

    int node_count() const { return static_cast<int>(cell_of_node.size()); }
};

EnergyModel build_energy(const RangeImage &image, const PointCloud &cloud,
                         const std::vector<LabelState> &seeded,
                         const std::pair<HeightHistogram, HeightHistogram> &histograms,
                         const MrfParams &params, int row_min = 0, int row_max = -1);

struct FineSegmentResult {
    std::vector<LabelState> labels;  // Ground / Obstacle only
    bool fallback = false;           // seeding failed, labels are the coarse input
    double max_flow = 0.0;
};

// Full fine stage: seed, build histograms and the energy model, solve the
// min-cut and map cut sides back to points. Source side = obstacle. On
// SeedingError the coarse labels are returned with `fallback` set. `net`
// is reused across calls when provided.
FineSegmentResult fine_segment(const RangeImage &image, const PointCloud &cloud,
                               const std::vector<LabelState> &labels, const MrfParams &params,
                               FlowNetwork *net = nullptr, int row_min = 0, int row_max = -1);

}  // namespace groundseg
