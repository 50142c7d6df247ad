#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrtop/cell_complex.hpp"

namespace arrtop {

inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

/// Undirected 1-skeleton adjacency over cell ids, restricted to the given edges.
class SkeletonGraph {
public:
    SkeletonGraph(const CellGraphComplex& q, const std::vector<std::size_t>& edge_ids) : adjacent_(q.cells.size())
    {
        for (std::size_t i : edge_ids) {
            const auto& e = q.edges[i];
            adjacent_[e.tail].push_back(e.head);
            adjacent_[e.head].push_back(e.tail);
        }
    }

    explicit SkeletonGraph(const CellGraphComplex& q) : SkeletonGraph(q, all_edges(q)) {}

    /// Breadth-first distances from one vertex; `unreachable` for other components.
    std::vector<std::size_t> distances_from(std::size_t v) const
    {
        std::vector<std::size_t> d(adjacent_.size(), unreachable);
        std::deque<std::size_t> queue{v};
        d[v] = 0;
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t y : adjacent_[x])
                if (d[y] == unreachable) {
                    d[y] = d[x] + 1;
                    queue.push_back(y);
                }
        }
        return d;
    }

    std::size_t distance(std::size_t v, std::size_t w) const { return distances_from(v)[w]; }

    /// Two-colouring of the vertices; false when some circuit is odd.
    bool bipartite(const std::vector<std::size_t>& vertices) const
    {
        std::vector<int> colour(adjacent_.size(), -1);
        for (std::size_t s : vertices) {
            if (colour[s] >= 0)
                continue;
            colour[s] = 0;
            std::deque<std::size_t> queue{s};
            while (!queue.empty()) {
                std::size_t x = queue.front();
                queue.pop_front();
                for (std::size_t y : adjacent_[x]) {
                    if (colour[y] < 0) {
                        colour[y] = 1 - colour[x];
                        queue.push_back(y);
                    } else if (colour[y] == colour[x]) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

private:
    static std::vector<std::size_t> all_edges(const CellGraphComplex& q)
    {
        std::vector<std::size_t> out(q.edges.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = i;
        return out;
    }

    std::vector<std::vector<std::size_t>> adjacent_;
};

inline std::size_t graph_distance(const CellGraphComplex& q, std::size_t v, std::size_t w)
{
    return SkeletonGraph(q).distance(v, w);
}

inline bool even_circuits(const CellGraphComplex& q)
{
    return SkeletonGraph(q).bipartite(q.cells_of_dim(0));
}

/// A triple (or a group of cells) that breaks one of the conditions.
struct MhCertificate {
    std::string condition;              // "qmh", "local-qmh", "lmh-compatibility", "mh-compatibility"
    std::size_t vertex = 0;
    std::size_t cell = 0;
    std::size_t witness = 0;            // qmh: the vertex u breaking condition (3)
    std::vector<std::size_t> contexts;  // cells whose local maps disagree (local-qmh: the one cell)
};

/// Nearest candidates and the farthest vertex for each (vertex, cell) pair.
struct HemisphereMaps {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> nearest;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> farthest;
};

struct MhReport {
    bool qmh = false;
    bool lmh = false;
    bool mh = false;
    bool bipartite = false;
    bool connected = false;
    HemisphereMaps global;
    std::vector<MhCertificate> violations;
};

namespace detail {

using DistanceTable = std::map<std::size_t, std::vector<std::size_t>>;

inline DistanceTable distance_table(const SkeletonGraph& g, const std::vector<std::size_t>& vertices)
{
    DistanceTable d;
    for (std::size_t v : vertices)
        d[v] = g.distances_from(v);
    return d;
}

struct PairVerdict {
    std::vector<std::size_t> nearest;
    std::optional<std::size_t> farthest;
    std::size_t breaking = 0;  // some u breaking (3) for the first farthest candidate
};

/// Conditions (1)-(3) at one (vertex, cell) pair under the given distance table.
inline PairVerdict hemisphere_pair(const DistanceTable& d, std::size_t v, const std::vector<std::size_t>& verts)
{
    PairVerdict out;
    const auto& from = d.at(v);
    std::size_t lo = unreachable, hi = 0;
    for (std::size_t u : verts) {
        lo = std::min(lo, from[u]);
        hi = std::max(hi, from[u]);
    }
    for (std::size_t u : verts)
        if (from[u] == lo)
            out.nearest.push_back(u);
    if (hi == unreachable)
        return out;
    bool first = true;
    for (std::size_t w : verts) {
        if (from[w] != hi)
            continue;
        const auto& to_w = d.at(w);
        auto bad = std::find_if(verts.begin(), verts.end(), [&](std::size_t u) {
            return to_w[u] == unreachable || from[u] + to_w[u] != hi;
        });
        if (bad == verts.end()) {
            if (out.farthest && *out.farthest != w)
                throw ConsistencyError("qmh: two farthest vertices both satisfy condition (3)");
            out.farthest = w;
        } else if (first) {
            out.breaking = *bad;
        }
        first = false;
    }
    return out;
}

inline std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// QMH maps over the given vertices and cells; the first failing pair is reported.
inline std::optional<MhCertificate> hemisphere_maps(const CellGraphComplex& q, const DistanceTable& d,
                                                    const std::vector<std::size_t>& vertices,
                                                    const std::vector<std::size_t>& cells, HemisphereMaps& out)
{
    for (std::size_t v : vertices)
        for (std::size_t e : cells) {
            auto verdict = hemisphere_pair(d, v, q.cells[e].vertices);
            if (!verdict.farthest)
                return MhCertificate{"qmh", v, e, verdict.breaking, {}};
            out.nearest[{v, e}] = std::move(verdict.nearest);
            out.farthest[{v, e}] = *verdict.farthest;
        }
    return std::nullopt;
}

}  // namespace detail

/**
 * Checks the QMH, LMH and MH conditions.  Nearest-vertex maps need not be
 * unique, so compatibility asks for a common choice: for each (v, e) the
 * candidate sets of all cells involved must intersect.  Farthest vertices are
 * unique whenever condition (3) holds and are compared directly.
 */
inline MhReport check_mh(const CellGraphComplex& q)
{
    MhReport r;
    const auto vertices = q.cells_of_dim(0);
    const SkeletonGraph whole(q);
    r.bipartite = whole.bipartite(vertices);
    const auto global_d = detail::distance_table(whole, vertices);
    r.connected = std::all_of(vertices.begin(), vertices.end(), [&](std::size_t v) {
        return std::all_of(vertices.begin(), vertices.end(),
                           [&](std::size_t w) { return global_d.at(v)[w] != unreachable; });
    });

    std::vector<std::size_t> all_cells(q.cells.size());
    for (std::size_t i = 0; i < all_cells.size(); ++i)
        all_cells[i] = i;
    if (auto bad = detail::hemisphere_maps(q, global_d, vertices, all_cells, r.global))
        r.violations.push_back(*bad);
    else
        r.qmh = r.connected;

    // Local maps per cell, grouped by (vertex, sub-cell).
    struct Entry {
        std::size_t context;
        std::vector<std::size_t> nearest;
        std::size_t farthest;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Entry>> local;
    bool local_ok = true;
    for (std::size_t i = 0; i < q.cells.size(); ++i) {
        const SkeletonGraph g(q, q.edges_in(i));
        const auto& verts = q.cells[i].vertices;
        const auto d = detail::distance_table(g, verts);
        HemisphereMaps maps;
        if (auto bad = detail::hemisphere_maps(q, d, verts, q.cells[i].subcells, maps)) {
            bad->condition = "local-qmh";
            bad->contexts = {i};
            r.violations.push_back(*bad);
            local_ok = false;
            continue;
        }
        for (auto& [key, near] : maps.nearest)
            local[key].push_back({i, near, maps.farthest.at(key)});
    }
    bool compatible = local_ok;
    bool global_agrees = true;
    for (const auto& [key, entries] : local) {
        std::vector<std::size_t> common = entries.front().nearest;
        std::vector<std::size_t> contexts;
        bool far_agree = true;
        for (const auto& e : entries) {
            common = detail::intersect(common, e.nearest);
            contexts.push_back(e.context);
            far_agree = far_agree && e.farthest == entries.front().farthest;
        }
        if (common.empty() || !far_agree) {
            compatible = false;
            r.violations.push_back({"lmh-compatibility", key.first, key.second, 0, contexts});
            continue;
        }
        if (!r.qmh)
            continue;
        auto with_global = detail::intersect(common, r.global.nearest.at(key));
        if (with_global.empty() || r.global.farthest.at(key) != entries.front().farthest) {
            global_agrees = false;
            r.violations.push_back({"mh-compatibility", key.first, key.second, 0, contexts});
        }
    }
    r.lmh = compatible && r.connected;
    r.mh = r.qmh && r.lmh && global_agrees;
    return r;
}

/// Recomputes a certificate from scratch; true when it records a genuine violation.
inline bool recheck(const CellGraphComplex& q, const MhCertificate& c)
{
    auto verdict_in = [&](std::size_t context) {
        const SkeletonGraph g(q, q.edges_in(context));
        return detail::hemisphere_pair(detail::distance_table(g, q.cells[context].vertices), c.vertex,
                                       q.cells[c.cell].vertices);
    };
    if (c.condition == "qmh") {
        const SkeletonGraph g(q);
        auto d = detail::distance_table(g, q.cells_of_dim(0));
        return !detail::hemisphere_pair(d, c.vertex, q.cells[c.cell].vertices).farthest;
    }
    if (c.condition == "local-qmh")
        return !verdict_in(c.contexts.at(0)).farthest;
    if (c.contexts.empty())
        return false;
    auto first = verdict_in(c.contexts.front());
    std::vector<std::size_t> common = first.nearest;
    bool far_agree = true;
    for (std::size_t ctx : c.contexts) {
        auto v = verdict_in(ctx);
        common = detail::intersect(common, v.nearest);
        far_agree = far_agree && v.farthest == first.farthest;
    }
    if (c.condition == "lmh-compatibility")
        return common.empty() || !far_agree;
    if (c.condition == "mh-compatibility") {
        const SkeletonGraph g(q);
        auto d = detail::distance_table(g, q.cells_of_dim(0));
        auto global = detail::hemisphere_pair(d, c.vertex, q.cells[c.cell].vertices);
        return detail::intersect(common, global.nearest).empty() || global.farthest != first.farthest;
    }
    return false;
}

/// Global and local distances agree on the vertices of every cell.
inline bool local_distances_agree(const CellGraphComplex& q)
{
    const SkeletonGraph whole(q);
    for (std::size_t i = 0; i < q.cells.size(); ++i) {
        const SkeletonGraph g(q, q.edges_in(i));
        for (std::size_t v : q.cells[i].vertices) {
            auto global = whole.distances_from(v);
            auto local = g.distances_from(v);
            for (std::size_t w : q.cells[i].vertices)
                if (global[w] != local[w])
                    return false;
        }
    }
    return true;
}

}  // namespace arrtop
