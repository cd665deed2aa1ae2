#include "groundseg/mrf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "groundseg/errors.hpp"

namespace groundseg {

void MrfParams::validate() const {
    if (!(lambda >= 0.0)) throw UsageError("mrf: lambda must be >= 0");
    if (!(sigma > 0.0)) throw UsageError("mrf: sigma must be > 0");
    if (!(scale_k > 0.0)) throw UsageError("mrf: scale_k must be > 0");
    if (seed_window < 1 || seed_window % 2 == 0) throw UsageError("mrf: seed_window must be odd and >= 1");
    if (!(seed_ratio > 0.0) || seed_ratio > 1.0) throw UsageError("mrf: seed_ratio must be in (0, 1]");
    if (!(epsilon_prob > 0.0) || epsilon_prob >= 1.0)
        throw UsageError("mrf: epsilon_prob must be in (0, 1)");
    if (!(min_pair_distance > 0.0)) throw UsageError("mrf: min_pair_distance must be > 0");
}

long long HeightHistogram::bin_of(double z) const { return std::llround((z + h_l) * scale_k); }

double HeightHistogram::query(double z) const { return query(z, floor_prob); }

double HeightHistogram::query(double z, double floor) const {
    auto it = prob.find(bin_of(z));
    return it == prob.end() ? floor : it->second;
}

std::vector<LabelState> seed_high_confidence(const std::vector<LabelState> &labels,
                                             const RangeImage &image, const MrfParams &params,
                                             int row_min, int row_max) {
    params.validate();
    if (row_max < 0) row_max = image.rows - 1;
    row_max = std::min(row_max, image.rows - 1);
    row_min = std::max(row_min, 0);

    std::vector<LabelState> out(labels);
    const int half = params.seed_window / 2;
    const int cols = image.cols;

    for (int r = row_min; r <= row_max; ++r) {
        for (int c = 0; c < cols; ++c) {
            const std::int32_t pt = image.point_index[image.cell(r, c)];
            if (pt < 0) continue;
            const LabelState in = labels[pt];
            if (is_obstacle_like(in)) {
                out[pt] = LabelState::HighConfObstacle;
                continue;
            }
            if (!is_ground_like(in)) continue;  // Unknown stays as it is

            // Ground fraction over the occupied cells of the window; the
            // window clips to the image rows and wraps in azimuth.
            int occupied = 0;
            int ground = 0;
            const int r_lo = std::max(r - half, 0);
            const int r_hi = std::min(r + half, image.rows - 1);
            for (int wr = r_lo; wr <= r_hi; ++wr) {
                for (int dc = -half; dc <= half; ++dc) {
                    int wc = c + dc;
                    if (wc < 0) wc += cols;
                    if (wc >= cols) wc -= cols;
                    const std::int32_t q = image.point_index[image.cell(wr, wc)];
                    if (q < 0) continue;
                    ++occupied;
                    if (is_ground_like(labels[q])) ++ground;
                }
            }
            const double fraction = static_cast<double>(ground) / occupied;
            out[pt] = fraction > params.seed_ratio ? LabelState::HighConfGround : LabelState::Unknown;
        }
    }
    return out;
}

std::pair<HeightHistogram, HeightHistogram> build_histograms(const PointCloud &cloud,
                                                             const std::vector<LabelState> &labels,
                                                             double scale_k, double epsilon_prob) {
    if (labels.size() != cloud.size()) throw UsageError("build_histograms: labels/cloud size mismatch");
    if (cloud.empty()) throw SeedingError("build_histograms: empty cloud");

    const double h_l = *std::min_element(cloud.z.begin(), cloud.z.end());

    HeightHistogram d_obj, d_bkg;
    d_obj.scale_k = d_bkg.scale_k = scale_k;
    d_obj.h_l = d_bkg.h_l = h_l;
    d_obj.floor_prob = d_bkg.floor_prob = epsilon_prob;

    std::unordered_map<long long, std::size_t> obj_counts, bkg_counts;
    std::size_t obj_total = 0, bkg_total = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == LabelState::HighConfObstacle) {
            ++obj_counts[d_obj.bin_of(cloud.z[i])];
            ++obj_total;
        } else if (labels[i] == LabelState::HighConfGround) {
            ++bkg_counts[d_bkg.bin_of(cloud.z[i])];
            ++bkg_total;
        }
    }
    if (obj_total == 0) throw SeedingError("no high-confidence obstacle seeds");
    if (bkg_total == 0) throw SeedingError("no high-confidence ground seeds");

    d_obj.total = obj_total;
    d_obj.prob.reserve(obj_counts.size());
    for (const auto &[bin, count] : obj_counts)
        d_obj.prob[bin] = static_cast<double>(count) / static_cast<double>(obj_total);
    d_bkg.total = bkg_total;
    d_bkg.prob.reserve(bkg_counts.size());
    for (const auto &[bin, count] : bkg_counts)
        d_bkg.prob[bin] = static_cast<double>(count) / static_cast<double>(bkg_total);
    return {d_obj, d_bkg};
}

RegionalCosts regional_costs(double z, const HeightHistogram &d_obj, const HeightHistogram &d_bkg,
                             double epsilon_prob) {
    const double cap = -std::log(epsilon_prob);
    RegionalCosts costs;
    costs.obstacle_label = std::min(-std::log(d_obj.query(z, epsilon_prob)), cap);
    costs.ground_label = std::min(-std::log(d_bkg.query(z, epsilon_prob)), cap);
    return costs;
}

double boundary_weight(const Point &p, const Point &q, double sigma, double min_distance) {
    double d = std::hypot(p.x - q.x, p.y - q.y);
    if (d < min_distance) d = min_distance;
    const double dh = p.z - q.z;
    return std::exp(-sigma * dh * dh / d);
}

EnergyModel build_energy(const RangeImage &image, const PointCloud &cloud,
                         const std::vector<LabelState> &seeded,
                         const std::pair<HeightHistogram, HeightHistogram> &histograms,
                         const MrfParams &params, int row_min, int row_max) {
    params.validate();
    if (seeded.size() != cloud.size()) throw UsageError("build_energy: labels/cloud size mismatch");
    if (row_max < 0) row_max = image.rows - 1;
    row_max = std::min(row_max, image.rows - 1);
    row_min = std::max(row_min, 0);

    EnergyModel model;
    model.node_of_cell.assign(image.point_index.size(), -1);

    for (int r = row_min; r <= row_max; ++r) {
        for (int c = 0; c < image.cols; ++c) {
            const std::size_t cell = image.cell(r, c);
            if (image.point_index[cell] < 0) continue;
            model.node_of_cell[cell] = static_cast<std::int32_t>(model.cell_of_node.size());
            model.cell_of_node.push_back(static_cast<std::int32_t>(cell));
        }
    }

    const int n = model.node_count();
    model.terminal.assign(n, EnergyModel::TerminalCost{});

    double finite_sum = 0.0;
    std::vector<std::uint8_t> hard_obstacle(n, 0), hard_ground(n, 0);
    for (int node = 0; node < n; ++node) {
        const std::int32_t cell = model.cell_of_node[node];
        const std::int32_t pt = image.point_index[cell];
        switch (seeded[pt]) {
        case LabelState::Unknown: {
            const RegionalCosts rc =
                regional_costs(cloud.z[pt], histograms.first, histograms.second, params.epsilon_prob);
            // The arc to a terminal is cut when the node lands on the other
            // side, so the obstacle-terminal arc carries the ground-label
            // cost and vice versa.
            model.terminal[node].to_obstacle = params.lambda * rc.ground_label;
            model.terminal[node].to_ground = params.lambda * rc.obstacle_label;
            finite_sum += model.terminal[node].to_obstacle + model.terminal[node].to_ground;
            break;
        }
        case LabelState::HighConfObstacle: hard_obstacle[node] = 1; break;
        case LabelState::HighConfGround: hard_ground[node] = 1; break;
        default:
            throw UsageError("build_energy: labels must be seeded (run seed_high_confidence first)");
        }
    }

    // 8-connectivity, columns wrapping; each undirected pair appears once.
    const int cols = image.cols;
    auto node_at = [&](int r, int c) -> std::int32_t {
        if (c < 0) c += cols;
        if (c >= cols) c -= cols;
        return model.node_of_cell[image.cell(r, c)];
    };
    for (int r = row_min; r <= row_max; ++r) {
        for (int c = 0; c < cols; ++c) {
            const std::int32_t a = model.node_of_cell[image.cell(r, c)];
            if (a < 0) continue;
            const std::size_t cell_a = model.cell_of_node[a];
            const Point pa{image.px[cell_a], image.py[cell_a], image.pz[cell_a], 0.0};
            const std::array<std::int32_t, 4> neighbors = {
                cols > 1 ? node_at(r, c + 1) : -1,
                r + 1 <= row_max && cols > 2 ? node_at(r + 1, c - 1) : -1,
                r + 1 <= row_max ? node_at(r + 1, c) : -1,
                r + 1 <= row_max && cols > 1 ? node_at(r + 1, c + 1) : -1,
            };
            for (std::int32_t b : neighbors) {
                if (b < 0) continue;
                const std::size_t cell_b = model.cell_of_node[b];
                const Point pb{image.px[cell_b], image.py[cell_b], image.pz[cell_b], 0.0};
                const double w = boundary_weight(pa, pb, params.sigma, params.min_pair_distance);
                model.edges.push_back(EnergyModel::Edge{a, b, w});
                finite_sum += 2.0 * w;
            }
        }
    }

    model.infinite_cost = 1.0 + finite_sum;
    for (int node = 0; node < n; ++node) {
        if (hard_obstacle[node]) {
            model.terminal[node].to_obstacle = model.infinite_cost;
            model.terminal[node].to_ground = 0.0;
        } else if (hard_ground[node]) {
            model.terminal[node].to_obstacle = 0.0;
            model.terminal[node].to_ground = model.infinite_cost;
        }
    }
    return model;
}

FineSegmentResult fine_segment(const RangeImage &image, const PointCloud &cloud,
                               const std::vector<LabelState> &labels, const MrfParams &params,
                               FlowNetwork *net, int row_min, int row_max) {
    FineSegmentResult result;
    const std::vector<LabelState> seeded = seed_high_confidence(labels, image, params, row_min, row_max);

    std::pair<HeightHistogram, HeightHistogram> histograms;
    try {
        histograms = build_histograms(cloud, seeded, params.scale_k, params.epsilon_prob);
    } catch (const SeedingError &) {
        result.fallback = true;
        result.labels.resize(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) result.labels[i] = base_label(labels[i]);
        return result;
    }

    const EnergyModel model = build_energy(image, cloud, seeded, histograms, params, row_min, row_max);

    FlowNetwork local;
    FlowNetwork &network = net ? *net : local;
    network.reset();
    network.reserve(model.node_count(), model.edges.size());
    network.add_node(model.node_count());
    for (const auto &edge : model.edges) network.add_edge(edge.a, edge.b, edge.weight, edge.weight);
    for (int node = 0; node < model.node_count(); ++node)
        network.set_terminal(node, model.terminal[node].to_obstacle, model.terminal[node].to_ground);

    const CutResult cut = network.solve();
    result.max_flow = cut.max_flow;

    result.labels.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) result.labels[i] = base_label(seeded[i]);
    for (int node = 0; node < model.node_count(); ++node) {
        const std::int32_t pt = image.point_index[model.cell_of_node[node]];
        result.labels[pt] =
            cut.side[node] == CutSide::Source ? LabelState::Obstacle : LabelState::Ground;
    }
    return result;
}

}  // namespace groundseg
