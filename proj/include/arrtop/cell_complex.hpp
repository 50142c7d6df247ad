#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "arrtop/category.hpp"
#include "arrtop/errors.hpp"

namespace arrtop {

/// A closed cell: its dimension, vertex set V(e) and the sub-cells Q(e) (including e).
struct Cell {
    int dim = 0;
    std::string label;
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> subcells;
};

/// An oriented 1-cell of the 1-skeleton graph.
struct GraphEdge {
    std::size_t cell = 0;
    std::size_t tail = 0;
    std::size_t head = 0;
};

/**
 * Combinatorial data of a CW complex: cells with vertex and sub-cell sets and
 * the oriented 1-skeleton.  Vertices are referred to by their cell ids.
 */
struct CellGraphComplex {
    std::vector<Cell> cells;
    std::vector<GraphEdge> edges;
    bool regular = true;

    std::vector<std::size_t> cells_of_dim(int k) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].dim == k)
                out.push_back(i);
        return out;
    }

    std::vector<std::size_t> counts() const
    {
        std::vector<std::size_t> out;
        for (const auto& c : cells) {
            if (out.size() <= static_cast<std::size_t>(c.dim))
                out.resize(static_cast<std::size_t>(c.dim) + 1, 0);
            ++out[static_cast<std::size_t>(c.dim)];
        }
        return out;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (const auto& c : cells)
            chi += c.dim % 2 == 0 ? 1 : -1;
        return chi;
    }

    /// Edges of the 1-skeleton lying in Q(e).
    std::vector<std::size_t> edges_in(std::size_t cell) const
    {
        const auto& q = cells[cell].subcells;
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (std::binary_search(q.begin(), q.end(), edges[i].cell))
                out.push_back(i);
        return out;
    }

    /// Face poset of the cells: a < b iff a ∈ Q(b), a ≠ b.
    Poset face_poset() const
    {
        std::vector<std::string> labels;
        std::vector<int> ranks;
        std::vector<std::pair<std::size_t, std::size_t>> relations;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            labels.push_back(cells[i].label);
            ranks.push_back(cells[i].dim);
            for (std::size_t s : cells[i].subcells)
                if (s != i)
                    relations.push_back({s, i});
        }
        return Poset(std::move(labels), std::move(ranks), relations);
    }

    /// Q closed under sub-cells, V(e) = 0-cells of Q(e), dimensions drop strictly, edges have two ends.
    void validate() const
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& c = cells[i];
            if (!std::is_sorted(c.subcells.begin(), c.subcells.end()) ||
                !std::binary_search(c.subcells.begin(), c.subcells.end(), i))
                throw ConsistencyError("cell " + c.label + ": Q(e) must be sorted and contain e");
            std::vector<std::size_t> verts;
            for (std::size_t s : c.subcells) {
                if (s != i && cells[s].dim >= c.dim)
                    throw ConsistencyError("cell " + c.label + ": sub-cell of non-smaller dimension");
                for (std::size_t t : cells[s].subcells)
                    if (!std::binary_search(c.subcells.begin(), c.subcells.end(), t))
                        throw ConsistencyError("cell " + c.label + ": Q(e) not closed under sub-cells");
                if (cells[s].dim == 0)
                    verts.push_back(s);
            }
            if (verts != c.vertices)
                throw ConsistencyError("cell " + c.label + ": V(e) differs from the 0-cells of Q(e)");
        }
        for (const auto& e : edges) {
            if (cells[e.cell].dim != 1)
                throw ConsistencyError("graph edge on a cell of dimension " + std::to_string(cells[e.cell].dim));
            if (e.tail == e.head && regular)
                throw ConsistencyError("loop " + cells[e.cell].label + " in a complex declared regular");
        }
    }
};

/**
 * Regular 2-complex from vertices 0..n-1, edges as vertex pairs (tail, head)
 * and 2-cells given by their boundary edge ids.  Cell ids: vertices first,
 * then edges, then 2-cells.
 */
inline CellGraphComplex polygon_complex(std::size_t vertex_count,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                        const std::vector<std::vector<std::size_t>>& faces)
{
    CellGraphComplex q;
    for (std::size_t v = 0; v < vertex_count; ++v)
        q.cells.push_back({0, "v" + std::to_string(v), {v}, {v}});
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [a, b] = edges[i];
        if (a >= vertex_count || b >= vertex_count)
            throw ModelError("polygon_complex: edge endpoint out of range");
        std::size_t id = vertex_count + i;
        std::vector<std::size_t> verts{std::min(a, b), std::max(a, b)};
        std::vector<std::size_t> sub{verts[0], verts[1], id};
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
        q.cells.push_back({1, "e" + std::to_string(i), verts, sub});
        q.edges.push_back({id, a, b});
    }
    for (std::size_t f = 0; f < faces.size(); ++f) {
        std::vector<std::size_t> sub{vertex_count + edges.size() + f};
        std::vector<std::size_t> verts;
        for (std::size_t e : faces[f]) {
            if (e >= edges.size())
                throw ModelError("polygon_complex: 2-cell uses an unknown edge");
            sub.push_back(vertex_count + e);
            verts.push_back(edges[e].first);
            verts.push_back(edges[e].second);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        sub.insert(sub.end(), verts.begin(), verts.end());
        std::sort(sub.begin(), sub.end());
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
        q.cells.push_back({2, "f" + std::to_string(f), verts, sub});
    }
    q.regular = true;
    q.validate();
    return q;
}

}  // namespace arrtop
