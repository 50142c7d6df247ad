#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "arrtop/category.hpp"
#include "arrtop/models.hpp"

namespace arrtop {

namespace detail {

inline void require_separated(const FaceData& fd, const char* op)
{
    if (!fd.separating)
        throw ModelError(std::string(op) + ": chamber distance is only defined when every submanifold separates");
}

inline void require_chamber(const FaceData& fd, ObjectId c, const char* op)
{
    if (c >= fd.faces.size() || !fd.is_chamber(c))
        throw ModelError(std::string(op) + ": object " + std::to_string(c) + " is not a chamber");
}

}  // namespace detail

/// Submanifolds whose sides differ between two chambers.
inline std::vector<std::size_t> separation(const FaceData& fd, ObjectId c, ObjectId d)
{
    detail::require_separated(fd, "separation");
    detail::require_chamber(fd, c, "separation");
    detail::require_chamber(fd, d, "separation");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fd.submanifolds; ++i)
        if (fd.side(c, i) != fd.side(d, i))
            out.push_back(i);
    return out;
}

inline std::size_t chamber_distance(const FaceData& fd, ObjectId c, ObjectId d)
{
    return separation(fd, c, d).size();
}

/// Chambers incident to a face, in id order.
inline std::vector<ObjectId> chambers_above(const FaceData& fd, ObjectId f)
{
    if (fd.is_chamber(f))
        return {f};
    std::set<ObjectId> out;
    for (MorphismId m : fd.category.out_morphisms(f)) {
        ObjectId t = fd.category.morphism(m).target;
        if (fd.is_chamber(t))
            out.insert(t);
    }
    return {out.begin(), out.end()};
}

/// Partition of the chambers into the classes identified by the local projection at a face.
struct LocalClass {
    ObjectId face = 0;
    std::vector<std::vector<ObjectId>> blocks;
    std::map<ObjectId, std::size_t> block_of;
};

/**
 * Chambers joined by crossings of codimension-one faces that avoid every
 * submanifold through the face.  Connectivity rather than sign agreement, so
 * distinct components of the local complement stay apart.
 */
inline LocalClass local_class(const FaceData& fd, ObjectId f)
{
    const auto chambers = fd.chambers();
    std::map<ObjectId, std::size_t> index;
    for (std::size_t i = 0; i < chambers.size(); ++i)
        index[chambers[i]] = i;
    std::vector<std::size_t> parent(chambers.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    const auto& through = fd.faces[f].containing;
    for (ObjectId g = 0; g < fd.faces.size(); ++g) {
        if (fd.faces[g].dim != static_cast<int>(fd.dim) - 1)
            continue;
        const auto& mine = fd.faces[g].containing;
        bool avoids = std::none_of(mine.begin(), mine.end(), [&](std::size_t s) {
            return std::binary_search(through.begin(), through.end(), s);
        });
        if (!avoids)
            continue;
        auto adjacent = chambers_above(fd, g);
        for (std::size_t i = 1; i < adjacent.size(); ++i)
            parent[find(index.at(adjacent[i]))] = find(index.at(adjacent[0]));
    }
    LocalClass out;
    out.face = f;
    std::map<std::size_t, std::size_t> block_of_root;
    for (std::size_t i = 0; i < chambers.size(); ++i) {
        auto [it, inserted] = block_of_root.emplace(find(i), out.blocks.size());
        if (inserted)
            out.blocks.emplace_back();
        out.blocks[it->second].push_back(chambers[i]);
        out.block_of[chambers[i]] = it->second;
    }
    return out;
}

namespace detail {

inline ObjectId nearest_chamber(const FaceData& fd, ObjectId f, ObjectId c, const LocalClass& local)
{
    const std::size_t block = local.block_of.at(c);
    std::vector<ObjectId> best;
    std::size_t best_distance = 0;
    for (ObjectId d : chambers_above(fd, f)) {
        if (local.block_of.at(d) != block)
            continue;
        std::size_t dist = chamber_distance(fd, c, d);
        if (best.empty() || dist < best_distance) {
            best = {d};
            best_distance = dist;
        } else if (dist == best_distance) {
            best.push_back(d);
        }
    }
    if (best.size() != 1) {
        std::string msg = "face_action: " + std::to_string(best.size()) + " nearest chambers for face " +
                          fd.faces[f].label + " and chamber " + fd.faces[c].label;
        for (auto d : best)
            msg += " " + fd.faces[d].label;
        throw ConsistencyError(msg);
    }
    return best.front();
}

inline void require_action_model(const FaceData& fd, ObjectId c, const char* op)
{
    require_separated(fd, op);
    require_chamber(fd, c, op);
    if (!fd.regular)
        throw ModelError(std::string(op) + ": face category is not a poset");
}

}  // namespace detail

/**
 * F∘C: among the chambers incident to F in C's local class, the one closest
 * to C.  Existence and uniqueness are checked on every call.
 */
inline ObjectId face_action(const FaceData& fd, ObjectId f, ObjectId c)
{
    detail::require_action_model(fd, c, "face_action");
    return detail::nearest_chamber(fd, f, c, local_class(fd, f));
}

/// face_action for every (face, chamber) pair: table[f][c].
inline std::map<ObjectId, std::map<ObjectId, ObjectId>> face_action_table(const FaceData& fd)
{
    std::map<ObjectId, std::map<ObjectId, ObjectId>> table;
    const auto chambers = fd.chambers();
    for (ObjectId f = 0; f < fd.faces.size(); ++f) {
        const auto local = local_class(fd, f);
        for (ObjectId c : chambers) {
            detail::require_action_model(fd, c, "face_action");
            table[f][c] = detail::nearest_chamber(fd, f, c, local);
        }
    }
    return table;
}

/// F∗C: the chamber incident to F farthest from C; checks R(F∘C, F∗C) = A_F.
inline ObjectId far_action(const FaceData& fd, ObjectId f, ObjectId c)
{
    detail::require_separated(fd, "far_action");
    detail::require_chamber(fd, c, "far_action");
    std::vector<ObjectId> best;
    std::size_t best_distance = 0;
    for (ObjectId d : chambers_above(fd, f)) {
        std::size_t dist = chamber_distance(fd, c, d);
        if (best.empty() || dist > best_distance) {
            best = {d};
            best_distance = dist;
        } else if (dist == best_distance) {
            best.push_back(d);
        }
    }
    if (best.size() != 1)
        throw ConsistencyError("far_action: " + std::to_string(best.size()) + " farthest chambers for face " +
                               fd.faces[f].label + " and chamber " + fd.faces[c].label);
    ObjectId near = face_action(fd, f, c);
    if (separation(fd, near, best.front()) != fd.faces[f].containing)
        throw ConsistencyError("far_action: nearest and farthest chambers of " + fd.faces[f].label +
                               " are not separated by exactly the submanifolds through it");
    return best.front();
}

/**
 * The comma category of morphisms out of F: objects are the identity of F and
 * the morphisms F -> G; a morphism from f to g is an h with h∘f = g.
 */
inline AcyclicCategory local_category(const FaceData& fd, ObjectId f)
{
    const auto& cat = fd.category;
    std::vector<std::optional<MorphismId>> arrows{std::nullopt};
    for (MorphismId m : cat.out_morphisms(f))
        arrows.push_back(m);
    auto target = [&](const std::optional<MorphismId>& a) { return a ? cat.morphism(*a).target : f; };

    std::vector<CategoryObject> objects;
    for (const auto& a : arrows)
        objects.push_back({a ? cat.morphism(*a).label : "id(" + fd.faces[f].label + ")",
                           fd.faces[target(a)].dim});
    std::vector<CategoryMorphism> morphisms;
    std::vector<MorphismId> underlying;
    std::map<std::pair<std::size_t, MorphismId>, MorphismId> by_source_and_arrow;
    for (std::size_t x = 0; x < arrows.size(); ++x)
        for (MorphismId h : cat.out_morphisms(target(arrows[x]))) {
            std::optional<MorphismId> composite = arrows[x] ? cat.compose(*arrows[x], h) : std::optional(h);
            if (!composite)
                throw ConsistencyError("local_category: missing composite in the face category");
            auto y = static_cast<std::size_t>(
                std::find(arrows.begin(), arrows.end(), std::optional(*composite)) - arrows.begin());
            by_source_and_arrow[{x, h}] = morphisms.size();
            morphisms.push_back({x, y, cat.morphism(h).label});
            underlying.push_back(h);
        }
    CompositionTable composition;
    for (MorphismId m1 = 0; m1 < morphisms.size(); ++m1)
        for (MorphismId m2 = 0; m2 < morphisms.size(); ++m2) {
            if (morphisms[m2].source != morphisms[m1].target)
                continue;
            auto h = cat.compose(underlying[m1], underlying[m2]);
            if (!h)
                throw ConsistencyError("local_category: missing composite in the face category");
            composition[{m1, m2}] = by_source_and_arrow.at({morphisms[m1].source, *h});
        }
    return AcyclicCategory(std::move(objects), std::move(morphisms), std::move(composition));
}

}  // namespace arrtop
