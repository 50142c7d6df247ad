#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "arrtop/cell_complex.hpp"
#include "arrtop/homology.hpp"
#include "arrtop/nerve.hpp"
#include "arrtop/salvetti.hpp"

namespace arrtop {

/// One letter of an edge-path or group word: index with exponent ±1.
struct Letter {
    std::size_t index = 0;
    int power = 1;
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Word inverse(const Word& w)
{
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->index, -it->power});
    return out;
}

inline Word freely_reduce(const Word& w)
{
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().index == l.index && out.back().power == -l.power)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

/// Oriented graph with 2-cells attached along closed edge-paths.
struct TwoComplex {
    struct Edge {
        std::size_t tail = 0;
        std::size_t head = 0;
        std::string label;
    };
    struct Face {
        std::size_t base = 0;  // vertex the boundary word starts from
        Word boundary;         // over edge ids
        std::string label;
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;

    std::size_t start_of(const Letter& l) const { return l.power > 0 ? edges[l.index].tail : edges[l.index].head; }
    std::size_t end_of(const Letter& l) const { return l.power > 0 ? edges[l.index].head : edges[l.index].tail; }

    /// Every face boundary is a closed edge-path starting at its base.
    void validate() const
    {
        for (const auto& e : edges)
            if (e.tail >= vertices.size() || e.head >= vertices.size())
                throw ConsistencyError("two-complex: edge " + e.label + " has an unknown endpoint");
        for (const auto& f : faces) {
            std::size_t at = f.base;
            for (const auto& l : f.boundary) {
                if (l.index >= edges.size() || start_of(l) != at)
                    throw ConsistencyError("two-complex: boundary of " + f.label + " is not an edge-path");
                at = end_of(l);
            }
            if (at != f.base || f.boundary.empty())
                throw ConsistencyError("two-complex: boundary of " + f.label + " is not closed");
        }
    }

    long long euler_characteristic() const
    {
        return static_cast<long long>(vertices.size()) - static_cast<long long>(edges.size()) +
               static_cast<long long>(faces.size());
    }

    ChainComplex chains() const
    {
        ChainComplex cc;
        cc.ranks = {vertices.size(), edges.size(), faces.size()};
        cc.boundaries = {SparseMatrix(0, vertices.size()), SparseMatrix(vertices.size(), edges.size()),
                         SparseMatrix(edges.size(), faces.size())};
        for (std::size_t i = 0; i < edges.size(); ++i) {
            std::map<std::size_t, Integer> col;
            col[edges[i].head] += 1;
            col[edges[i].tail] -= 1;
            for (auto& [row, v] : col)
                if (v != 0)
                    cc.boundaries[1].columns[i].push_back({row, v});
        }
        for (std::size_t i = 0; i < faces.size(); ++i) {
            std::map<std::size_t, Integer> col;
            for (const auto& l : faces[i].boundary)
                col[l.index] += l.power;
            for (auto& [row, v] : col)
                if (v != 0)
                    cc.boundaries[2].columns[i].push_back({row, v});
        }
        return cc;
    }

    bool connected() const
    {
        if (vertices.empty())
            return true;
        std::vector<std::vector<std::size_t>> adj(vertices.size());
        for (const auto& e : edges) {
            adj[e.tail].push_back(e.head);
            adj[e.head].push_back(e.tail);
        }
        std::vector<char> seen(vertices.size(), 0);
        std::deque<std::size_t> queue{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (auto y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++count;
                    queue.push_back(y);
                }
        }
        return count == vertices.size();
    }
};

inline HomologyResult homology(const TwoComplex& t) { return homology(t.chains()); }

/**
 * 2-skeleton of a regular cell complex.  Each 2-cell boundary is read from
 * `bases[cell]` (the cell's lowest vertex when absent), leaving along the
 * lowest-numbered edge.
 */
inline TwoComplex two_complex(const CellGraphComplex& q, const std::map<std::size_t, std::size_t>& bases = {})
{
    TwoComplex t;
    std::map<std::size_t, std::size_t> vertex_of;
    for (std::size_t c : q.cells_of_dim(0)) {
        vertex_of[c] = t.vertices.size();
        t.vertices.push_back(q.cells[c].label);
    }
    std::map<std::size_t, std::size_t> edge_of;  // 1-cell id -> edge id
    for (const auto& e : q.edges) {
        edge_of[e.cell] = t.edges.size();
        t.edges.push_back({vertex_of.at(e.tail), vertex_of.at(e.head), q.cells[e.cell].label});
    }
    for (std::size_t c : q.cells_of_dim(2)) {
        std::vector<std::size_t> ring;
        for (std::size_t s : q.cells[c].subcells)
            if (q.cells[s].dim == 1)
                ring.push_back(edge_of.at(s));
        auto it = bases.find(c);
        std::size_t start = vertex_of.at(it == bases.end() ? q.cells[c].vertices.front() : it->second);
        TwoComplex::Face face{start, {}, q.cells[c].label};
        std::vector<char> used(ring.size(), 0);
        std::size_t at = start;
        for (std::size_t step = 0; step < ring.size(); ++step) {
            bool moved = false;
            for (std::size_t k = 0; k < ring.size() && !moved; ++k) {
                if (used[k])
                    continue;
                const auto& e = t.edges[ring[k]];
                if (e.tail == at || e.head == at) {
                    Letter l{ring[k], e.tail == at ? 1 : -1};
                    face.boundary.push_back(l);
                    at = t.end_of(l);
                    used[k] = 1;
                    moved = true;
                }
            }
            if (!moved)
                throw ConsistencyError("two_complex: boundary of " + face.label + " is not a circuit");
        }
        t.faces.push_back(std::move(face));
    }
    t.validate();
    return t;
}

/// 2-skeleton of a trisp: edges run d_1 -> d_0, a triangle bounds d_2 d_0 d_1^{-1}.
inline TwoComplex two_complex(const Trisp& s)
{
    TwoComplex t;
    if (s.dimension() < 0)
        return t;
    for (std::size_t i = 0; i < s.level(0).size(); ++i)
        t.vertices.push_back("v" + std::to_string(s.level(0)[i].vertices.front()));
    if (s.dimension() >= 1)
        for (std::size_t i = 0; i < s.level(1).size(); ++i) {
            const auto& e = s.level(1)[i];
            t.edges.push_back({e.faces[1], e.faces[0], "s" + std::to_string(i)});
        }
    if (s.dimension() >= 2)
        for (std::size_t i = 0; i < s.level(2).size(); ++i) {
            const auto& f = s.level(2)[i];
            std::size_t base = t.edges[f.faces[2]].tail;
            t.faces.push_back({base, {{f.faces[2], 1}, {f.faces[0], 1}, {f.faces[1], -1}}, "t" + std::to_string(i)});
        }
    t.validate();
    return t;
}

/// Graph of a Salvetti category of grade at most 1: each grade-1 object joins its two chamber sources.
inline TwoComplex two_complex(const SalvettiCategory& sal)
{
    TwoComplex t;
    std::map<ObjectId, std::size_t> vertex_of;
    for (ObjectId i = 0; i < sal.objects.size(); ++i) {
        if (sal.objects[i].grade > 1)
            throw ModelError("two_complex: Salvetti category has cells of grade above one");
        if (sal.objects[i].grade == 0) {
            vertex_of[i] = t.vertices.size();
            t.vertices.push_back(sal.category.object(i).label);
        }
    }
    for (ObjectId i = 0; i < sal.objects.size(); ++i) {
        if (sal.objects[i].grade != 1)
            continue;
        auto base = sal.find(sal.objects[i].chamber, sal.objects[i].chamber);
        std::vector<ObjectId> sources;
        for (MorphismId m : sal.category.in_morphisms(i))
            sources.push_back(sal.category.morphism(m).source);
        if (!base || sources.size() != 2)
            throw ConsistencyError("two_complex: grade-one object without two chamber sources");
        auto pos = std::find(sources.begin(), sources.end(), *base);
        if (pos == sources.end())
            throw ConsistencyError("two_complex: grade-one object misses its base chamber");
        sources.erase(pos);
        t.edges.push_back({vertex_of.at(*base), vertex_of.at(sources.front()), sal.category.object(i).label});
    }
    t.validate();
    return t;
}

/// The 2-complex used for π₁ and covers, and which construction produced it.
struct SalvettiTwoComplex {
    TwoComplex complex;
    std::string route;  // "cw", "graph" or "nerve"
};

/**
 * Cellular Salvetti complex when it is regular; the oriented graph when there
 * are no cells above grade one; otherwise the 2-skeleton of the nerve of the
 * Salvetti category.
 */
inline SalvettiTwoComplex salvetti_two_complex(const FaceData& fd)
{
    const auto sal = salvetti_category(fd);
    if (fd.regular && sal.category.is_poset()) {
        const auto cw = salvetti_cw(fd);
        std::map<std::size_t, std::size_t> bases;
        for (std::size_t c : cw.complex.cells_of_dim(2))
            bases[c] = cw.base_vertex[c];
        return {two_complex(cw.complex, bases), "cw"};
    }
    const auto grades = sal.grade_counts();
    if (grades.size() <= 2)
        return {two_complex(sal), "graph"};
    return {two_complex(nerve(sal.category)), "nerve"};
}

/// Arrangement graph: the oriented 1-skeleton.
inline TwoComplex arrangement_graph(const TwoComplex& t)
{
    TwoComplex g = t;
    g.faces.clear();
    return g;
}

/// A 2-cell word is αβ^{-1} with α, β positive paths of equal length.
inline bool balanced_boundary(const Word& w)
{
    if (w.size() % 2 != 0)
        return false;
    const std::size_t half = w.size() / 2;
    for (std::size_t i = 0; i < w.size(); ++i)
        if ((i < half) != (w[i].power > 0))
            return false;
    return true;
}

struct GroupPresentation {
    std::size_t base_vertex = 0;
    std::vector<std::size_t> tree_edges;
    std::vector<std::size_t> generators;  // edge ids of the non-tree edges
    std::vector<Word> relators;           // over generator indices, freely reduced, non-empty
};

/// Spanning tree by breadth-first search from vertex 0, scanning edges by id.
inline std::vector<std::size_t> spanning_tree(const TwoComplex& t)
{
    std::vector<std::vector<std::size_t>> incident(t.vertices.size());
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        incident[t.edges[i].tail].push_back(i);
        if (t.edges[i].head != t.edges[i].tail)
            incident[t.edges[i].head].push_back(i);
    }
    std::vector<char> seen(t.vertices.size(), 0);
    std::vector<std::size_t> tree;
    if (t.vertices.empty())
        return tree;
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (auto i : incident[x]) {
            std::size_t y = t.edges[i].tail == x ? t.edges[i].head : t.edges[i].tail;
            if (!seen[y]) {
                seen[y] = 1;
                tree.push_back(i);
                queue.push_back(y);
            }
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

inline GroupPresentation pi1_presentation(const TwoComplex& t)
{
    if (!t.connected())
        throw ModelError("pi1_presentation: complex is not connected");
    GroupPresentation p;
    p.tree_edges = spanning_tree(t);
    std::map<std::size_t, std::size_t> generator_of;
    for (std::size_t i = 0; i < t.edges.size(); ++i)
        if (!std::binary_search(p.tree_edges.begin(), p.tree_edges.end(), i)) {
            generator_of[i] = p.generators.size();
            p.generators.push_back(i);
        }
    for (const auto& f : t.faces) {
        Word w;
        for (const auto& l : f.boundary) {
            auto it = generator_of.find(l.index);
            if (it != generator_of.end())
                w.push_back({it->second, l.power});
        }
        w = freely_reduce(w);
        if (!w.empty())
            p.relators.push_back(std::move(w));
    }
    return p;
}

struct Abelianization {
    long long free_rank = 0;
    std::vector<Integer> torsion;
    friend bool operator==(const Abelianization&, const Abelianization&) = default;
};

/// Smith normal form of the relator exponent-sum matrix.
inline Abelianization abelianization(const GroupPresentation& p)
{
    SparseMatrix m(p.generators.size(), p.relators.size());
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        std::map<std::size_t, Integer> col;
        for (const auto& l : p.relators[r])
            col[l.index] += l.power;
        for (auto& [g, v] : col)
            if (v != 0)
                m.columns[r].push_back({g, v});
    }
    auto inv = smith_invariants(m);
    Abelianization a;
    a.free_rank = static_cast<long long>(p.generators.size()) - static_cast<long long>(inv.size());
    for (const auto& d : inv)
        if (d > 1)
            a.torsion.push_back(d);
    return a;
}

inline Abelianization first_homology(const HomologyResult& h)
{
    Abelianization a;
    if (h.betti.size() > 1)
        a.free_rank = h.betti[1];
    if (h.torsion.size() > 1)
        a.torsion = h.torsion[1];
    return a;
}

/// Permutation representation: permutations[g][s] is the image of sheet s under generator g (0-based).
struct PermutationCover {
    std::size_t sheets = 1;
    std::vector<std::vector<std::size_t>> permutations;
};

struct CoverReport {
    TwoComplex cover;
    bool star_bijection = false;
    bool transitive = false;
    bool connected = false;
    long long base_euler = 0;
    long long cover_euler = 0;
    bool euler_multiplicative = false;
    HomologyResult homology;
};

namespace detail {

inline bool is_permutation_of(const std::vector<std::size_t>& p, std::size_t n)
{
    if (p.size() != n)
        return false;
    std::vector<char> hit(n, 0);
    for (auto x : p) {
        if (x >= n || hit[x])
            return false;
        hit[x] = 1;
    }
    return true;
}

inline std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& p)
{
    std::vector<std::size_t> inv(p.size());
    for (std::size_t s = 0; s < p.size(); ++s)
        inv[p[s]] = s;
    return inv;
}

/// Incidences at a vertex: (kind, cell, position), kind 0 = edge tail, 1 = edge head, 2 = face corner.
using Incidence = std::tuple<int, std::size_t, std::size_t>;

inline std::vector<std::vector<Incidence>> stars(const TwoComplex& t)
{
    std::vector<std::vector<Incidence>> out(t.vertices.size());
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        out[t.edges[i].tail].push_back({0, i, 0});
        out[t.edges[i].head].push_back({1, i, 0});
    }
    for (std::size_t f = 0; f < t.faces.size(); ++f)
        for (std::size_t k = 0; k < t.faces[f].boundary.size(); ++k)
            out[t.start_of(t.faces[f].boundary[k])].push_back({2, f, k});
    for (auto& s : out)
        std::sort(s.begin(), s.end());
    return out;
}

}  // namespace detail

/**
 * Finite cover from a permutation representation of the presentation.  Tree
 * edges carry the identity, generator edges their permutation; a lifted edge
 * (e, s) runs from (tail, s) to (head, σ_e(s)).  Every relator must act
 * trivially on every sheet, otherwise the representation is rejected.
 */
inline CoverReport build_cover(const TwoComplex& base, const GroupPresentation& p, const PermutationCover& rho)
{
    const std::size_t n = rho.sheets;
    if (n == 0)
        throw ModelError("build_cover: a cover needs at least one sheet");
    if (rho.permutations.size() != p.generators.size())
        throw ModelError("build_cover: expected " + std::to_string(p.generators.size()) + " permutations, got " +
                         std::to_string(rho.permutations.size()));
    for (const auto& perm : rho.permutations)
        if (!detail::is_permutation_of(perm, n))
            throw ModelError("build_cover: not a permutation of " + std::to_string(n) + " sheets");

    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> voltage(base.edges.size(), identity);
    for (std::size_t g = 0; g < p.generators.size(); ++g)
        voltage[p.generators[g]] = rho.permutations[g];
    std::vector<std::vector<std::size_t>> back(base.edges.size());
    for (std::size_t i = 0; i < base.edges.size(); ++i)
        back[i] = detail::inverse_permutation(voltage[i]);

    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t at = s;
            for (const auto& l : p.relators[r])
                at = l.power > 0 ? rho.permutations[l.index][at]
                                 : detail::inverse_permutation(rho.permutations[l.index])[at];
            if (at != s)
                throw ModelError("build_cover: representation rejected, relator " + std::to_string(r) +
                                 " moves sheet " + std::to_string(s + 1));
        }

    CoverReport report;
    auto& c = report.cover;
    for (std::size_t v = 0; v < base.vertices.size(); ++v)
        for (std::size_t s = 0; s < n; ++s)
            c.vertices.push_back(base.vertices[v] + "^" + std::to_string(s + 1));
    auto lift_vertex = [n](std::size_t v, std::size_t s) { return v * n + s; };
    for (std::size_t i = 0; i < base.edges.size(); ++i)
        for (std::size_t s = 0; s < n; ++s)
            c.edges.push_back({lift_vertex(base.edges[i].tail, s), lift_vertex(base.edges[i].head, voltage[i][s]),
                               base.edges[i].label + "^" + std::to_string(s + 1)});
    for (const auto& f : base.faces)
        for (std::size_t s = 0; s < n; ++s) {
            TwoComplex::Face lifted{lift_vertex(f.base, s), {}, f.label + "^" + std::to_string(s + 1)};
            std::size_t at = s;
            for (const auto& l : f.boundary) {
                if (l.power > 0) {
                    lifted.boundary.push_back({l.index * n + at, 1});
                    at = voltage[l.index][at];
                } else {
                    at = back[l.index][at];
                    lifted.boundary.push_back({l.index * n + at, -1});
                }
            }
            if (at != s)
                throw ConsistencyError("build_cover: lifted boundary of " + f.label + " does not close");
            c.faces.push_back(std::move(lifted));
        }
    c.validate();

    // Star bijection: the incidences at (v, s) project one-to-one onto those at v.
    const auto base_star = detail::stars(base);
    const auto cover_star = detail::stars(c);
    report.star_bijection = true;
    for (std::size_t v = 0; v < base.vertices.size() && report.star_bijection; ++v)
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<detail::Incidence> projected;
            for (auto [kind, cell, pos] : cover_star[lift_vertex(v, s)])
                projected.push_back({kind, cell / n, pos});
            std::sort(projected.begin(), projected.end());
            if (projected != base_star[v]) {
                report.star_bijection = false;
                break;
            }
        }

    std::vector<char> orbit(n, 0);
    std::deque<std::size_t> queue{0};
    orbit[0] = 1;
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (const auto& perm : rho.permutations)
            if (!orbit[perm[s]]) {
                orbit[perm[s]] = 1;
                queue.push_back(perm[s]);
            }
    }
    report.transitive = std::all_of(orbit.begin(), orbit.end(), [](char x) { return x != 0; });
    report.connected = c.connected();
    report.base_euler = base.euler_characteristic();
    report.cover_euler = c.euler_characteristic();
    report.euler_multiplicative = report.cover_euler == static_cast<long long>(n) * report.base_euler;
    report.homology = homology(c);
    return report;
}

}  // namespace arrtop
