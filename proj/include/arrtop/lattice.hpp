#pragma once

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "arrtop/category.hpp"
#include "arrtop/feasibility.hpp"
#include "arrtop/models.hpp"

namespace arrtop {

/**
 * Connected components of intersections, ordered by reverse inclusion and
 * ranked by codimension.  Faces are grouped by the set of submanifolds
 * through them; two faces of one group lie in the same component when they
 * are joined by a path of faces of that group crossing codimension-one faces
 * of the component.
 */
inline Poset intersection_poset(const FaceData& fd)
{
    const std::size_t n = fd.faces.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (ObjectId g = 0; g < n; ++g) {
        std::map<std::vector<std::size_t>, std::vector<ObjectId>> groups;
        std::set<ObjectId> targets;
        for (MorphismId m : fd.category.out_morphisms(g))
            targets.insert(fd.category.morphism(m).target);
        for (ObjectId f : targets)
            if (fd.faces[f].dim == fd.faces[g].dim + 1)
                groups[fd.faces[f].containing].push_back(f);
        for (const auto& [key, members] : groups)
            for (std::size_t i = 1; i < members.size(); ++i)
                parent[find(members[i])] = find(members[0]);
    }
    std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::size_t> element_of_root;
    std::vector<std::size_t> element(n);
    std::vector<std::string> labels;
    std::vector<int> ranks;
    std::map<std::vector<std::size_t>, int> components;
    for (ObjectId f = 0; f < n; ++f) {
        auto key = std::make_pair(fd.faces[f].containing, find(f));
        auto it = element_of_root.find(key);
        if (it == element_of_root.end()) {
            it = element_of_root.emplace(key, labels.size()).first;
            std::string label;
            if (key.first.empty()) {
                label = "ambient";
            } else {
                label = "{";
                for (std::size_t i = 0; i < key.first.size(); ++i)
                    label += (i ? "," : "") + std::to_string(key.first[i]);
                label += "}";
            }
            int copy = components[key.first]++;
            if (copy > 0)
                label += "#" + std::to_string(copy);
            labels.push_back(label);
            ranks.push_back(static_cast<int>(fd.dim) - fd.faces[f].dim);
        }
        element[f] = it->second;
    }
    std::set<std::pair<std::size_t, std::size_t>> relations;
    for (ObjectId g = 0; g < n; ++g)
        for (MorphismId m : fd.category.out_morphisms(g)) {
            std::size_t x = element[fd.category.morphism(m).target];
            std::size_t y = element[g];
            if (x != y)
                relations.insert({x, y});
        }
    // Order elements by rank, keeping discovery order inside a rank.
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
    std::vector<std::size_t> position(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        position[order[i]] = i;
    std::vector<std::string> sorted_labels;
    std::vector<int> sorted_ranks;
    for (std::size_t i : order) {
        sorted_labels.push_back(labels[i]);
        sorted_ranks.push_back(ranks[i]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (auto [a, b] : relations)
        rel.push_back({position[a], position[b]});
    return Poset(std::move(sorted_labels), std::move(sorted_ranks), rel);
}

struct WhitneyData {
    std::size_t chambers = 0;
    std::size_t bounded = 0;
    std::vector<long long> betti;  // b_k = Σ over rank-k flats of |μ|
    std::size_t flats = 0;
};

/**
 * Möbius-function oracle computed from the intersection lattice alone:
 * flats are closed subsets of hyperplanes with a common point, built by
 * rational linear algebra without touching the face enumeration.
 */
inline WhitneyData whitney_oracle(const HyperplaneArrangement& a)
{
    validate_arrangement(a);
    const std::size_t k = a.hyperplanes.size();
    auto augmented = [&](std::size_t i) {
        RationalVector row = a.hyperplanes[i].normal;
        row.push_back(a.hyperplanes[i].offset);
        return row;
    };
    auto normals_rank = [&](const std::vector<std::size_t>& s) {
        std::vector<RationalVector> rows;
        for (auto i : s)
            rows.push_back(a.hyperplanes[i].normal);
        return rank_of(std::move(rows));
    };
    auto closure = [&](const std::vector<std::size_t>& s) {
        std::vector<RationalVector> rows;
        for (auto i : s)
            rows.push_back(augmented(i));
        const std::size_t base = rank_of(rows);
        std::vector<std::size_t> closed;
        for (std::size_t j = 0; j < k; ++j) {
            auto with = rows;
            with.push_back(augmented(j));
            if (rank_of(std::move(with)) == base)
                closed.push_back(j);
        }
        return closed;
    };
    auto consistent = [&](const std::vector<std::size_t>& s) {
        std::vector<LinearConstraint> system;
        for (auto i : s)
            system.push_back({a.hyperplanes[i].normal, a.hyperplanes[i].offset, Relation::equal});
        return solve_linear_system(a.dim, system).has_value();
    };

    std::vector<std::vector<std::size_t>> flats{{}};
    std::vector<std::size_t> rank{0};
    std::set<std::vector<std::size_t>> known{{}};
    for (std::size_t cursor = 0; cursor < flats.size(); ++cursor) {
        for (std::size_t i = 0; i < k; ++i) {
            const auto& x = flats[cursor];
            if (std::binary_search(x.begin(), x.end(), i))
                continue;
            auto s = x;
            s.push_back(i);
            std::sort(s.begin(), s.end());
            if (!consistent(s))
                continue;
            auto c = closure(s);
            if (known.insert(c).second) {
                rank.push_back(normals_rank(c));
                flats.push_back(std::move(c));
            }
        }
    }
    std::vector<std::size_t> order(flats.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return rank[x] < rank[y]; });
    std::vector<long long> mu(flats.size(), 0);
    auto contained = [](const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    WhitneyData out;
    long long signed_sum = 0;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        std::size_t x = order[idx];
        if (flats[x].empty()) {
            mu[x] = 1;
        } else {
            long long sum = 0;
            for (std::size_t jdx = 0; jdx < idx; ++jdx) {
                std::size_t y = order[jdx];
                if (flats[y] != flats[x] && contained(flats[y], flats[x]))
                    sum += mu[y];
            }
            mu[x] = -sum;
        }
        long long magnitude = mu[x] < 0 ? -mu[x] : mu[x];
        if (out.betti.size() <= rank[x])
            out.betti.resize(rank[x] + 1, 0);
        out.betti[rank[x]] += magnitude;
        out.chambers += static_cast<std::size_t>(magnitude);
        signed_sum += mu[x];
    }
    out.bounded = static_cast<std::size_t>(signed_sum < 0 ? -signed_sum : signed_sum);
    out.flats = flats.size();
    return out;
}

/**
 * Restriction of the arrangement to the span of its normals: a maximal
 * independent set of normals b_1..b_r becomes the coordinate functions
 * y_j = b_j · x of R^r.
 */
inline HyperplaneArrangement essentialize(const HyperplaneArrangement& a)
{
    validate_arrangement(a);
    std::vector<std::size_t> basis;
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
        auto with = rows;
        with.push_back(a.hyperplanes[i].normal);
        if (rank_of(with) > rows.size()) {
            rows = std::move(with);
            basis.push_back(i);
        }
    }
    const std::size_t r = basis.size();
    if (r == 0)
        throw ModelError("essentialize: arrangement has rank 0");
    HyperplaneArrangement out;
    out.dim = r;
    for (const auto& h : a.hyperplanes) {
        // Solve Σ λ_j b_j = normal for λ.
        std::vector<LinearConstraint> system;
        for (std::size_t c = 0; c < a.dim; ++c) {
            RationalVector coeffs;
            for (std::size_t j = 0; j < r; ++j)
                coeffs.push_back(a.hyperplanes[basis[j]].normal[c]);
            system.push_back({coeffs, h.normal[c], Relation::equal});
        }
        auto lambda = solve_linear_system(r, system);
        if (!lambda)
            throw ConsistencyError("essentialize: normal outside the span of the basis");
        out.hyperplanes.push_back({*lambda, h.offset});
    }
    return out;
}

}  // namespace arrtop
