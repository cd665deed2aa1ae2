#include "groundseg/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "groundseg/errors.hpp"

namespace groundseg {

void FlowNetwork::reserve(std::size_t nodes, std::size_t edges) {
    first_arc_.reserve(nodes);
    cap_source_.reserve(nodes);
    cap_sink_.reserve(nodes);
    arcs_.reserve(2 * edges);
}

int FlowNetwork::add_node(int n) {
    if (n < 0) throw UsageError("add_node: negative count");
    if (solved_) throw UsageError("add_node: network already solved; reset() first");
    const int first = node_count();
    first_arc_.insert(first_arc_.end(), n, kNoArc);
    cap_source_.insert(cap_source_.end(), n, 0.0);
    cap_sink_.insert(cap_sink_.end(), n, 0.0);
    return first;
}

void FlowNetwork::add_edge(int u, int v, double cap_uv, double cap_vu) {
    if (u < 0 || u >= node_count() || v < 0 || v >= node_count())
        throw UsageError("add_edge: invalid node id");
    if (u == v) throw UsageError("add_edge: self loop");
    if (!(cap_uv >= 0.0) || !(cap_vu >= 0.0)) throw UsageError("add_edge: negative capacity");
    if (solved_) throw UsageError("add_edge: network already solved; reset() first");

    const auto a = static_cast<std::int32_t>(arcs_.size());
    arcs_.push_back(Arc{v, first_arc_[u], cap_uv, cap_uv});
    first_arc_[u] = a;
    arcs_.push_back(Arc{u, first_arc_[v], cap_vu, cap_vu});
    first_arc_[v] = a + 1;
}

void FlowNetwork::set_terminal(int u, double cap_source, double cap_sink) {
    if (u < 0 || u >= node_count()) throw UsageError("set_terminal: invalid node id");
    if (!(cap_source >= 0.0) || !(cap_sink >= 0.0)) throw UsageError("set_terminal: negative capacity");
    if (solved_) throw UsageError("set_terminal: network already solved; reset() first");
    cap_source_[u] = cap_source;
    cap_sink_[u] = cap_sink;
}

void FlowNetwork::reset() {
    arcs_.clear();
    first_arc_.clear();
    cap_source_.clear();
    cap_sink_.clear();
    tr_cap_.clear();
    parent_.clear();
    tree_.clear();
    stamp_.clear();
    dist_.clear();
    active_.clear();
    orphans_.clear();
    active_head_ = 0;
    time_ = 0;
    solved_ = false;
}

// Walks toward the root of `start`'s tree. Returns false when the chain is
// broken by an orphan; otherwise refreshes the cached depths along the chain.
bool FlowNetwork::rooted(std::int32_t start) {
    std::int32_t x = start;
    std::int32_t hops = 0;
    while (stamp_[x] != time_) {
        const std::int32_t p = parent_[x];
        if (p == kParentTerminal) {
            stamp_[x] = time_;
            dist_[x] = 1;
            break;
        }
        if (p == kParentNone) return false;
        x = arcs_[p].head;
        ++hops;
    }
    std::int32_t depth = dist_[x] + hops;
    for (std::int32_t y = start; y != x; y = arcs_[parent_[y]].head) {
        stamp_[y] = time_;
        dist_[y] = depth--;
    }
    return true;
}

std::int32_t FlowNetwork::grow() {
    while (active_head_ < active_.size()) {
        // Periodically drop the consumed queue prefix.
        if (active_head_ > 4096 && active_head_ * 2 > active_.size()) {
            active_.erase(active_.begin(), active_.begin() + static_cast<std::ptrdiff_t>(active_head_));
            active_head_ = 0;
            continue;
        }
        const std::int32_t u = active_[active_head_];
        const std::uint8_t side = tree_[u];
        if (side == kFree) {
            ++active_head_;
            continue;
        }
        for (std::int32_t a = first_arc_[u]; a != kNoArc; a = arcs_[a].next) {
            const double rcap = (side == kSource) ? arcs_[a].rcap : arcs_[sister(a)].rcap;
            if (!usable(rcap)) continue;
            const std::int32_t j = arcs_[a].head;
            if (tree_[j] == kFree) {
                tree_[j] = side;
                parent_[j] = sister(a);
                dist_[j] = dist_[u] + 1;
                stamp_[j] = stamp_[u];
                active_.push_back(j);
            } else if (tree_[j] != side) {
                return (side == kSource) ? a : sister(a);
            }
        }
        ++active_head_;  // all arcs explored; the node stays in its tree
    }
    return kNoArc;
}

double FlowNetwork::augment(std::int32_t boundary_arc) {
    const std::int32_t u = arcs_[sister(boundary_arc)].head;  // source-side endpoint
    const std::int32_t v = arcs_[boundary_arc].head;          // sink-side endpoint

    double bottleneck = arcs_[boundary_arc].rcap;
    for (std::int32_t x = u;;) {
        const std::int32_t p = parent_[x];
        if (p == kParentTerminal) {
            bottleneck = std::min(bottleneck, tr_cap_[x]);
            break;
        }
        bottleneck = std::min(bottleneck, arcs_[sister(p)].rcap);
        x = arcs_[p].head;
    }
    for (std::int32_t x = v;;) {
        const std::int32_t p = parent_[x];
        if (p == kParentTerminal) {
            bottleneck = std::min(bottleneck, -tr_cap_[x]);
            break;
        }
        bottleneck = std::min(bottleneck, arcs_[p].rcap);
        x = arcs_[p].head;
    }

    arcs_[boundary_arc].rcap -= bottleneck;
    arcs_[sister(boundary_arc)].rcap += bottleneck;

    for (std::int32_t x = u;;) {
        const std::int32_t p = parent_[x];
        if (p == kParentTerminal) {
            tr_cap_[x] -= bottleneck;
            if (!usable(tr_cap_[x])) {
                parent_[x] = kParentNone;
                orphans_.push_back(x);
            }
            break;
        }
        arcs_[sister(p)].rcap -= bottleneck;
        arcs_[p].rcap += bottleneck;
        if (!usable(arcs_[sister(p)].rcap)) {
            parent_[x] = kParentNone;
            orphans_.push_back(x);
        }
        x = arcs_[p].head;
    }
    for (std::int32_t x = v;;) {
        const std::int32_t p = parent_[x];
        if (p == kParentTerminal) {
            tr_cap_[x] += bottleneck;
            if (!usable(-tr_cap_[x])) {
                parent_[x] = kParentNone;
                orphans_.push_back(x);
            }
            break;
        }
        arcs_[p].rcap -= bottleneck;
        arcs_[sister(p)].rcap += bottleneck;
        if (!usable(arcs_[p].rcap)) {
            parent_[x] = kParentNone;
            orphans_.push_back(x);
        }
        x = arcs_[p].head;
    }

    ++time_;
    return bottleneck;
}

void FlowNetwork::process_orphan(std::int32_t u) {
    const std::uint8_t side = tree_[u];
    std::int32_t best_arc = kNoArc;
    std::int32_t best_dist = std::numeric_limits<std::int32_t>::max();

    for (std::int32_t a = first_arc_[u]; a != kNoArc; a = arcs_[a].next) {
        const std::int32_t j = arcs_[a].head;
        if (tree_[j] != side) continue;
        const double rcap = (side == kSource) ? arcs_[sister(a)].rcap : arcs_[a].rcap;
        if (!usable(rcap)) continue;
        if (!rooted(j)) continue;
        if (dist_[j] < best_dist) {
            best_dist = dist_[j];
            best_arc = a;
        }
    }

    if (best_arc != kNoArc) {
        parent_[u] = best_arc;
        dist_[u] = best_dist + 1;
        stamp_[u] = time_;
        return;
    }

    // No admissible parent: the node leaves the tree. Neighbors that fed
    // through it become orphans; neighbors that could re-grow toward it are
    // reactivated.
    for (std::int32_t a = first_arc_[u]; a != kNoArc; a = arcs_[a].next) {
        const std::int32_t j = arcs_[a].head;
        if (tree_[j] != side) continue;
        const double rcap_toward_u = (side == kSource) ? arcs_[a].rcap : arcs_[sister(a)].rcap;
        if (usable(rcap_toward_u)) active_.push_back(j);
        const std::int32_t pj = parent_[j];
        if (pj >= 0 && arcs_[pj].head == u) {
            parent_[j] = kParentNone;
            orphans_.push_back(j);
        }
    }
    tree_[u] = kFree;
}

void FlowNetwork::adopt() {
    std::size_t head = 0;
    while (head < orphans_.size()) {
        const std::int32_t u = orphans_[head++];
        process_orphan(u);
    }
    orphans_.clear();
}

CutResult FlowNetwork::solve() {
    if (solved_) throw UsageError("solve: network already solved; reset() first");
    solved_ = true;

    const int n = node_count();
    CutResult result;
    result.side.assign(n, CutSide::Sink);

    tr_cap_.assign(n, 0.0);
    parent_.assign(n, kParentNone);
    tree_.assign(n, kFree);
    stamp_.assign(n, 0);
    dist_.assign(n, 0);
    active_.clear();
    orphans_.clear();
    active_head_ = 0;
    time_ = 1;

    double flow = 0.0;
    for (int u = 0; u < n; ++u) {
        flow += std::min(cap_source_[u], cap_sink_[u]);  // s->u->t short circuit
        const double tr = cap_source_[u] - cap_sink_[u];
        tr_cap_[u] = tr;
        if (usable(tr)) {
            tree_[u] = kSource;
        } else if (usable(-tr)) {
            tree_[u] = kSink;
        } else {
            continue;
        }
        parent_[u] = kParentTerminal;
        dist_[u] = 1;
        stamp_[u] = time_;
        active_.push_back(u);
    }

    for (;;) {
        const std::int32_t boundary = grow();
        if (boundary == kNoArc) break;
        flow += augment(boundary);
        adopt();
    }

    for (int u = 0; u < n; ++u)
        if (tree_[u] == kSource) result.side[u] = CutSide::Source;
    result.max_flow = flow;
    return result;
}

std::vector<FlowNetwork::ArcInfo> FlowNetwork::arc_info() const {
    std::vector<ArcInfo> info;
    info.reserve(arcs_.size());
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        const std::int32_t tail = arcs_[a ^ 1].head;
        info.push_back(ArcInfo{tail, arcs_[a].head, arcs_[a].cap, arcs_[a].rcap});
    }
    return info;
}

double FlowNetwork::terminal_capacity(int u, bool source_side) const {
    if (u < 0 || u >= node_count()) throw UsageError("terminal_capacity: invalid node id");
    return source_side ? cap_source_[u] : cap_sink_[u];
}

double FlowNetwork::terminal_flow(int u) const {
    if (u < 0 || u >= node_count()) throw UsageError("terminal_flow: invalid node id");
    if (!solved_) return 0.0;
    return (cap_source_[u] - cap_sink_[u]) - tr_cap_[u];
}

void FlowNetwork::write_dimacs(std::ostream &out) const {
    const int n = node_count();
    std::size_t arc_lines = 0;
    for (int u = 0; u < n; ++u) {
        if (cap_source_[u] > 0.0) ++arc_lines;
        if (cap_sink_[u] > 0.0) ++arc_lines;
    }
    for (std::size_t a = 0; a < arcs_.size(); ++a)
        if (arcs_[a].cap > 0.0) ++arc_lines;

    // Node 1 is the source, node 2 the sink, graph nodes start at 3.
    out << "p max " << n + 2 << ' ' << arc_lines << '\n';
    out << "n 1 s\n";
    out << "n 2 t\n";
    for (int u = 0; u < n; ++u) {
        if (cap_source_[u] > 0.0) out << "a 1 " << u + 3 << ' ' << cap_source_[u] << '\n';
        if (cap_sink_[u] > 0.0) out << "a " << u + 3 << " 2 " << cap_sink_[u] << '\n';
    }
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        if (arcs_[a].cap <= 0.0) continue;
        const std::int32_t tail = arcs_[a ^ 1].head;
        out << "a " << tail + 3 << ' ' << arcs_[a].head + 3 << ' ' << arcs_[a].cap << '\n';
    }
}

}  // namespace groundseg
