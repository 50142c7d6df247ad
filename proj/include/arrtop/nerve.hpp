#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arrtop/category.hpp"

namespace arrtop {

/// A k-simplex of a trisp: its ordered vertices and k+1 face indices into level k-1.
struct Simplex {
    std::vector<ObjectId> vertices;
    std::vector<MorphismId> chain;     // composable non-identity morphisms (nerve only)
    std::vector<std::size_t> faces;   // faces[i] = d_i, empty for vertices
};

/// Semi-simplicial set.  levels()[k] holds the k-simplices.
class Trisp {
public:
    Trisp() = default;
    explicit Trisp(std::vector<std::vector<Simplex>> levels) : levels_(std::move(levels)) {}

    const std::vector<std::vector<Simplex>>& levels() const { return levels_; }
    const std::vector<Simplex>& level(std::size_t k) const { return levels_.at(k); }

    /// -1 for the empty trisp.
    int dimension() const { return static_cast<int>(levels_.size()) - 1; }

    std::vector<std::size_t> counts() const
    {
        std::vector<std::size_t> result;
        for (const auto& l : levels_)
            result.push_back(l.size());
        return result;
    }

    std::size_t size() const
    {
        std::size_t total = 0;
        for (const auto& l : levels_)
            total += l.size();
        return total;
    }

    /// Checks d_i d_j = d_{j-1} d_i for i < j on every simplex of dimension >= 2.
    bool satisfies_face_identities() const
    {
        for (std::size_t k = 2; k < levels_.size(); ++k)
            for (const auto& s : levels_[k])
                for (std::size_t j = 1; j <= k; ++j)
                    for (std::size_t i = 0; i < j; ++i) {
                        const auto& dj = levels_[k - 1][s.faces[j]];
                        const auto& di = levels_[k - 1][s.faces[i]];
                        if (dj.faces[i] != di.faces[j - 1])
                            return false;
                    }
        return true;
    }

private:
    std::vector<std::vector<Simplex>> levels_;
};

inline long long euler_characteristic(const Trisp& t)
{
    long long chi = 0;
    for (std::size_t k = 0; k < t.levels().size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(t.level(k).size());
    return chi;
}

/**
 * Nerve of an acyclic category.  k-simplices are the composable chains of k
 * non-identity morphisms, listed in lexicographic order of their morphism ids.
 * d_0 drops the first morphism, d_k drops the last, and an inner d_i composes
 * the two morphisms meeting at vertex i.
 */
inline Trisp nerve(const AcyclicCategory& cat, bool check = true)
{
    if (check)
        require_valid(cat);
    std::vector<std::vector<Simplex>> levels;
    if (cat.object_count() == 0)
        return Trisp{};

    std::vector<Simplex> vertices;
    for (ObjectId o = 0; o < cat.object_count(); ++o)
        vertices.push_back({{o}, {}, {}});
    levels.push_back(std::move(vertices));

    std::map<std::vector<MorphismId>, std::size_t> previous_index;
    while (true) {
        const auto& prev = levels.back();
        const std::size_t k = levels.size();  // dimension being built
        std::vector<Simplex> next;
        for (const auto& s : prev) {
            ObjectId last = s.vertices.back();
            for (MorphismId m : cat.out_morphisms(last)) {
                Simplex t;
                t.chain = s.chain;
                t.chain.push_back(m);
                t.vertices = s.vertices;
                t.vertices.push_back(cat.morphism(m).target);
                next.push_back(std::move(t));
            }
        }
        if (next.empty())
            break;
        for (auto& t : next) {
            t.faces.resize(k + 1);
            if (k == 1) {
                t.faces[0] = t.vertices[1];
                t.faces[1] = t.vertices[0];
                continue;
            }
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<MorphismId> face;
                if (i == 0) {
                    face.assign(t.chain.begin() + 1, t.chain.end());
                } else if (i == k) {
                    face.assign(t.chain.begin(), t.chain.end() - 1);
                } else {
                    face.assign(t.chain.begin(), t.chain.begin() + (i - 1));
                    auto composite = cat.compose(t.chain[i - 1], t.chain[i]);
                    if (!composite)
                        throw ConsistencyError("nerve: missing composite");
                    face.push_back(*composite);
                    face.insert(face.end(), t.chain.begin() + (i + 1), t.chain.end());
                }
                t.faces[i] = previous_index.at(face);
            }
        }
        previous_index.clear();
        for (std::size_t i = 0; i < next.size(); ++i)
            previous_index.emplace(next[i].chain, i);
        levels.push_back(std::move(next));
    }
    return Trisp(std::move(levels));
}

inline Trisp order_complex(const Poset& poset) { return nerve(poset.to_category(), false); }

/**
 * Barycentric subdivision as a poset: the elements are the objects together
 * with all composable chains, ordered by the face relation of the nerve.
 */
inline Poset barycentric_subdivision(const AcyclicCategory& cat)
{
    Trisp t = nerve(cat);
    std::vector<std::string> labels;
    std::vector<int> ranks;
    std::vector<std::size_t> offset;
    for (std::size_t k = 0; k < t.levels().size(); ++k) {
        offset.push_back(labels.size());
        for (const auto& s : t.level(k)) {
            std::string label;
            if (k == 0) {
                label = cat.object(s.vertices[0]).label;
            } else {
                label = "(";
                for (std::size_t i = 0; i < s.chain.size(); ++i)
                    label += (i ? "," : "") + std::string("m") + std::to_string(s.chain[i]);
                label += ")";
            }
            labels.push_back(label);
            ranks.push_back(static_cast<int>(k));
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> relations;
    for (std::size_t k = 1; k < t.levels().size(); ++k)
        for (std::size_t i = 0; i < t.level(k).size(); ++i)
            for (std::size_t f : t.level(k)[i].faces)
                relations.push_back({offset[k - 1] + f, offset[k] + i});
    return Poset(std::move(labels), std::move(ranks), relations);
}

}  // namespace arrtop
