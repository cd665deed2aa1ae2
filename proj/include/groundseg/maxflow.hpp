#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace groundseg {

enum class CutSide : std::uint8_t {
    Source,
    Sink,
};

struct CutResult {
    double max_flow = 0.0;
    std::vector<CutSide> side;
};

// Exact s-t max-flow / min-cut via augmenting paths with two search trees
// grown from both terminals and reused between augmentations. Sized for
// range-image graphs (~115k nodes, 8 neighbor arcs each) at per-frame rates;
// allocations survive reset() so a solver instance can be reused across scans.
//
// Capacities are doubles. Arcs with residual at or below kEpsilon are treated
// as saturated. Results are deterministic for a fixed insertion order. Nodes
// unreachable from either terminal in the residual graph land on the Sink
// side.
class FlowNetwork {
  public:
    static constexpr double kEpsilon = 1e-12;

    FlowNetwork() = default;

    void reserve(std::size_t nodes, std::size_t edges);

    // Appends n isolated nodes, returning the first new id.
    int add_node(int n = 1);

    // Adds the arc pair u->v / v->u with the given capacities.
    void add_edge(int u, int v, double cap_uv, double cap_vu);

    // Replaces the terminal capacities of u (source->u, u->sink).
    void set_terminal(int u, double cap_source, double cap_sink);

    int node_count() const { return static_cast<int>(first_arc_.size()); }
    std::size_t arc_count() const { return arcs_.size(); }

    // One-shot: call after the network is fully built.
    CutResult solve();

    // Clears the graph but keeps the allocations.
    void reset();

    // For tests: original capacity and current residual per directed arc.
    struct ArcInfo {
        int from = 0;
        int to = 0;
        double capacity = 0.0;
        double residual = 0.0;
    };
    std::vector<ArcInfo> arc_info() const;
    double terminal_capacity(int u, bool source_side) const;
    // Net terminal inflow consumed at u by the last solve (excludes the
    // canceled min(cap_source, cap_sink) that short-circuits s->u->t).
    double terminal_flow(int u) const;

    // DIMACS max-flow text format, for cross-checking with external solvers.
    void write_dimacs(std::ostream &out) const;

  private:
    struct Arc {
        std::int32_t head;
        std::int32_t next;
        double rcap;
        double cap;
    };

    static constexpr std::int32_t kNoArc = -1;
    static constexpr std::int32_t kParentNone = -1;
    static constexpr std::int32_t kParentTerminal = -2;

    enum : std::uint8_t { kFree = 0, kSource = 1, kSink = 2 };

    std::vector<Arc> arcs_;
    std::vector<std::int32_t> first_arc_;
    std::vector<double> cap_source_;
    std::vector<double> cap_sink_;

    // solve() state
    std::vector<double> tr_cap_;
    std::vector<std::int32_t> parent_;
    std::vector<std::uint8_t> tree_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::int32_t> dist_;
    std::vector<std::int32_t> active_;
    std::vector<std::int32_t> orphans_;
    std::size_t active_head_ = 0;
    std::uint32_t time_ = 0;
    bool solved_ = false;

    std::int32_t sister(std::int32_t a) const { return a ^ 1; }
    bool usable(double rcap) const { return rcap > kEpsilon; }

    std::int32_t grow();
    double augment(std::int32_t boundary_arc);
    void adopt();
    void process_orphan(std::int32_t node);
    bool rooted(std::int32_t node);
};

}  // namespace groundseg
