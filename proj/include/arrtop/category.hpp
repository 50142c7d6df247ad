#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arrtop/errors.hpp"

namespace arrtop {

using ObjectId = std::size_t;
using MorphismId = std::size_t;

struct CategoryObject {
    std::string label;
    int dim = 0;
};

/// A non-identity morphism.  Identities are implicit: one per object.
struct CategoryMorphism {
    ObjectId source = 0;
    ObjectId target = 0;
    std::string label;
};

/// Composition table key: (f, g) with target(f) == source(g); value g∘f.
using CompositionTable = std::map<std::pair<MorphismId, MorphismId>, MorphismId>;

/**
 * A finite category given by explicit objects, non-identity morphisms and a
 * composition table.  Nothing is checked on construction so that malformed
 * inputs can be handed to validate(); operations that need a genuine acyclic
 * category call require_valid() first.
 */
class AcyclicCategory {
public:
    AcyclicCategory() = default;

    AcyclicCategory(std::vector<CategoryObject> objects, std::vector<CategoryMorphism> morphisms,
                    CompositionTable composition)
        : objects_(std::move(objects)), morphisms_(std::move(morphisms)),
          composition_(std::move(composition))
    {
        index();
    }

    const std::vector<CategoryObject>& objects() const { return objects_; }
    const std::vector<CategoryMorphism>& morphisms() const { return morphisms_; }
    const CompositionTable& composition() const { return composition_; }

    std::size_t object_count() const { return objects_.size(); }
    std::size_t morphism_count() const { return morphisms_.size(); }

    const CategoryObject& object(ObjectId id) const { return objects_.at(id); }
    const CategoryMorphism& morphism(MorphismId id) const { return morphisms_.at(id); }

    /// Non-identity morphisms leaving `object`, in id order.
    const std::vector<MorphismId>& out_morphisms(ObjectId object) const { return out_.at(object); }
    const std::vector<MorphismId>& in_morphisms(ObjectId object) const { return in_.at(object); }

    /// Non-identity morphisms a -> b, in id order.
    std::vector<MorphismId> hom(ObjectId a, ObjectId b) const
    {
        std::vector<MorphismId> result;
        for (MorphismId m : out_.at(a))
            if (morphisms_[m].target == b)
                result.push_back(m);
        return result;
    }

    /// g∘f, when tabulated.
    std::optional<MorphismId> compose(MorphismId f, MorphismId g) const
    {
        auto it = composition_.find({f, g});
        if (it == composition_.end())
            return std::nullopt;
        return it->second;
    }

    /// At most one morphism between any ordered pair of objects.
    bool is_poset() const
    {
        for (ObjectId a = 0; a < objects_.size(); ++a) {
            std::vector<ObjectId> targets;
            for (MorphismId m : out_[a])
                targets.push_back(morphisms_[m].target);
            std::sort(targets.begin(), targets.end());
            if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
                return false;
        }
        return true;
    }

    int max_dim() const
    {
        int result = 0;
        for (const auto& o : objects_)
            result = std::max(result, o.dim);
        return result;
    }

    friend bool operator==(const AcyclicCategory& a, const AcyclicCategory& b)
    {
        auto same_object = [](const CategoryObject& x, const CategoryObject& y) {
            return x.label == y.label && x.dim == y.dim;
        };
        auto same_morphism = [](const CategoryMorphism& x, const CategoryMorphism& y) {
            return x.source == y.source && x.target == y.target && x.label == y.label;
        };
        return std::equal(a.objects_.begin(), a.objects_.end(), b.objects_.begin(), b.objects_.end(),
                          same_object) &&
               std::equal(a.morphisms_.begin(), a.morphisms_.end(), b.morphisms_.begin(),
                          b.morphisms_.end(), same_morphism) &&
               a.composition_ == b.composition_;
    }

private:
    void index()
    {
        out_.assign(objects_.size(), {});
        in_.assign(objects_.size(), {});
        for (MorphismId m = 0; m < morphisms_.size(); ++m) {
            const auto& mor = morphisms_[m];
            if (mor.source < objects_.size())
                out_[mor.source].push_back(m);
            if (mor.target < objects_.size())
                in_[mor.target].push_back(m);
        }
    }

    std::vector<CategoryObject> objects_;
    std::vector<CategoryMorphism> morphisms_;
    CompositionTable composition_;
    std::vector<std::vector<MorphismId>> out_;
    std::vector<std::vector<MorphismId>> in_;
};

struct Violation {
    std::string kind;
    std::vector<std::size_t> ids;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    bool has(const std::string& kind) const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const Violation& v) { return v.kind == kind; });
    }
};

/// Lists every violated acyclic-category invariant with the offending ids.
inline ValidationReport validate(const AcyclicCategory& cat)
{
    ValidationReport report;
    auto add = [&](std::string kind, std::vector<std::size_t> ids, std::string message) {
        report.violations.push_back({std::move(kind), std::move(ids), std::move(message)});
    };

    const std::size_t n = cat.object_count();
    bool endpoints_ok = true;
    for (MorphismId m = 0; m < cat.morphism_count(); ++m) {
        const auto& mor = cat.morphism(m);
        if (mor.source >= n || mor.target >= n) {
            add("dangling-morphism", {m}, "morphism refers to a missing object");
            endpoints_ok = false;
            continue;
        }
        if (mor.source == mor.target)
            add("self-loop", {m, mor.source}, "non-identity endomorphism");
        else if (cat.object(mor.source).dim >= cat.object(mor.target).dim)
            add("dimension-order", {m, mor.source, mor.target},
                "source dimension not smaller than target dimension");
    }
    if (!endpoints_ok)
        return report;

    // Acyclicity of the "a morphism exists" relation.
    {
        std::vector<int> state(n, 0);
        std::vector<std::pair<ObjectId, std::size_t>> stack;
        bool found = false;
        for (ObjectId start = 0; start < n && !found; ++start) {
            if (state[start] != 0)
                continue;
            stack.push_back({start, 0});
            state[start] = 1;
            while (!stack.empty() && !found) {
                auto& [obj, next] = stack.back();
                const auto& outs = cat.out_morphisms(obj);
                if (next == outs.size()) {
                    state[obj] = 2;
                    stack.pop_back();
                    continue;
                }
                MorphismId m = outs[next++];
                ObjectId t = cat.morphism(m).target;
                if (t == obj)
                    continue;  // reported as self-loop
                if (state[t] == 1) {
                    std::vector<std::size_t> cycle;
                    for (const auto& frame : stack)
                        cycle.push_back(frame.first);
                    add("acyclicity", cycle, "morphisms form a directed cycle through object " +
                                                 std::to_string(t));
                    found = true;
                } else if (state[t] == 0) {
                    state[t] = 1;
                    stack.push_back({t, 0});
                }
            }
        }
    }

    // Composition: defined exactly on composable pairs, with correct endpoints.
    for (const auto& [key, value] : cat.composition()) {
        const auto [f, g] = key;
        if (f >= cat.morphism_count() || g >= cat.morphism_count() ||
            value >= cat.morphism_count()) {
            add("composition-dangling", {f, g, value}, "composition refers to a missing morphism");
            continue;
        }
        if (cat.morphism(f).target != cat.morphism(g).source) {
            add("composition-not-composable", {f, g}, "composite defined on a non-composable pair");
            continue;
        }
        if (cat.morphism(value).source != cat.morphism(f).source ||
            cat.morphism(value).target != cat.morphism(g).target)
            add("composition-endpoints", {f, g, value}, "composite has the wrong endpoints");
    }
    for (MorphismId f = 0; f < cat.morphism_count(); ++f)
        for (MorphismId g : cat.out_morphisms(cat.morphism(f).target))
            if (!cat.compose(f, g))
                add("composition-missing", {f, g}, "composition not total on composable pairs");

    // Associativity on composable triples.
    for (MorphismId f = 0; f < cat.morphism_count(); ++f)
        for (MorphismId g : cat.out_morphisms(cat.morphism(f).target))
            for (MorphismId h : cat.out_morphisms(cat.morphism(g).target)) {
                auto gf = cat.compose(f, g);
                auto hg = cat.compose(g, h);
                if (!gf || !hg)
                    continue;
                auto left = cat.compose(*gf, h);
                auto right = cat.compose(f, *hg);
                if (left && right && *left != *right)
                    add("associativity", {f, g, h}, "(h∘g)∘f differs from h∘(g∘f)");
            }
    return report;
}

inline void require_valid(const AcyclicCategory& cat)
{
    auto report = validate(cat);
    if (!report.ok())
        throw ModelError("invalid acyclic category: " + report.violations.front().kind + " (" +
                         report.violations.front().message + ")");
}

/// Swaps sources and targets; grades become maxdim - dim.
inline AcyclicCategory opposite(const AcyclicCategory& cat)
{
    const int top = cat.max_dim();
    std::vector<CategoryObject> objects;
    for (const auto& o : cat.objects())
        objects.push_back({o.label, top - o.dim});
    std::vector<CategoryMorphism> morphisms;
    for (const auto& m : cat.morphisms())
        morphisms.push_back({m.target, m.source, m.label});
    CompositionTable composition;
    for (const auto& [key, value] : cat.composition())
        composition[{key.second, key.first}] = value;
    return AcyclicCategory(std::move(objects), std::move(morphisms), std::move(composition));
}

/**
 * Finite partial order stored as the full strict relation: for each element
 * the sorted list of elements strictly below it.
 */
class Poset {
public:
    Poset() = default;

    /// Builds the transitive closure of `relations` (pairs a < b).  Throws on cycles.
    Poset(std::vector<std::string> labels, std::vector<int> ranks,
          const std::vector<std::pair<std::size_t, std::size_t>>& relations)
        : labels_(std::move(labels)), ranks_(std::move(ranks))
    {
        const std::size_t n = labels_.size();
        if (ranks_.empty())
            ranks_.assign(n, 0);
        std::vector<std::vector<std::size_t>> up(n);
        for (auto [a, b] : relations) {
            if (a >= n || b >= n)
                throw ModelError("poset relation refers to a missing element");
            if (a == b)
                throw ModelError("poset relation is not strict at element " + labels_[a]);
            up[a].push_back(b);
        }
        above_.assign(n, {});
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<char> seen(n, 0);
            std::vector<std::size_t> stack(up[a].begin(), up[a].end());
            while (!stack.empty()) {
                std::size_t x = stack.back();
                stack.pop_back();
                if (seen[x])
                    continue;
                seen[x] = 1;
                if (x == a)
                    throw ModelError("poset relation has a cycle through " + labels_[a]);
                above_[a].push_back(x);
                for (std::size_t y : up[x])
                    stack.push_back(y);
            }
            std::sort(above_[a].begin(), above_[a].end());
        }
        below_.assign(n, {});
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b : above_[a])
                below_[b].push_back(a);
        for (auto& v : below_)
            std::sort(v.begin(), v.end());
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    int rank(std::size_t i) const { return ranks_.at(i); }
    const std::vector<int>& ranks() const { return ranks_; }

    bool less(std::size_t a, std::size_t b) const
    {
        return std::binary_search(below_.at(b).begin(), below_.at(b).end(), a);
    }
    bool less_equal(std::size_t a, std::size_t b) const { return a == b || less(a, b); }

    const std::vector<std::size_t>& below(std::size_t b) const { return below_.at(b); }
    const std::vector<std::size_t>& above(std::size_t a) const { return above_.at(a); }

    std::size_t relation_count() const
    {
        std::size_t count = 0;
        for (const auto& v : below_)
            count += v.size();
        return count;
    }

    /// Covering pairs (a, b): a < b with nothing strictly between.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> result;
        for (std::size_t b = 0; b < size(); ++b)
            for (std::size_t a : below_[b]) {
                bool between = false;
                for (std::size_t c : above_[a])
                    if (c != b && less(c, b)) {
                        between = true;
                        break;
                    }
                if (!between)
                    result.push_back({a, b});
            }
        std::sort(result.begin(), result.end());
        return result;
    }

    /// One morphism per strict pair, composition forced by transitivity.
    AcyclicCategory to_category() const
    {
        std::vector<CategoryObject> objects;
        for (std::size_t i = 0; i < size(); ++i)
            objects.push_back({labels_[i], ranks_[i]});
        std::vector<CategoryMorphism> morphisms;
        std::map<std::pair<std::size_t, std::size_t>, MorphismId> id_of;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b : above_[a]) {
                id_of[{a, b}] = morphisms.size();
                morphisms.push_back({a, b, ""});
            }
        CompositionTable composition;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b : above_[a])
                for (std::size_t c : above_[b])
                    composition[{id_of.at({a, b}), id_of.at({b, c})}] = id_of.at({a, c});
        return AcyclicCategory(std::move(objects), std::move(morphisms), std::move(composition));
    }

private:
    std::vector<std::string> labels_;
    std::vector<int> ranks_;
    std::vector<std::vector<std::size_t>> below_;
    std::vector<std::vector<std::size_t>> above_;
};

/// The underlying poset of an acyclic category ("a morphism exists").
inline Poset underlying_poset(const AcyclicCategory& cat)
{
    std::vector<std::string> labels;
    std::vector<int> ranks;
    for (const auto& o : cat.objects()) {
        labels.push_back(o.label);
        ranks.push_back(o.dim);
    }
    std::vector<std::pair<std::size_t, std::size_t>> relations;
    for (const auto& m : cat.morphisms())
        relations.push_back({m.source, m.target});
    return Poset(std::move(labels), std::move(ranks), relations);
}

namespace detail {

/// Colour refinement on both posets at once so colours are comparable across them.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refined_colours(const Poset& a, const Poset& b)
{
    using Signature = std::vector<std::size_t>;
    auto initial = [](const Poset& p) {
        std::vector<Signature> sig(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            sig[i] = {p.below(i).size(), p.above(i).size()};
        return sig;
    };
    auto sa = initial(a), sb = initial(b);
    std::vector<std::size_t> ca(a.size()), cb(b.size());
    std::size_t classes = 0;
    for (int round = 0;; ++round) {
        std::map<Signature, std::size_t> dictionary;
        for (const auto& s : sa)
            dictionary.emplace(s, 0);
        for (const auto& s : sb)
            dictionary.emplace(s, 0);
        std::size_t next = 0;
        for (auto& [key, id] : dictionary)
            id = next++;
        for (std::size_t i = 0; i < a.size(); ++i)
            ca[i] = dictionary.at(sa[i]);
        for (std::size_t i = 0; i < b.size(); ++i)
            cb[i] = dictionary.at(sb[i]);
        if (round > 0 && next == classes)
            break;
        classes = next;
        auto refine = [](const Poset& p, const std::vector<std::size_t>& c) {
            std::vector<Signature> sig(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
                Signature down, up;
                for (auto j : p.below(i))
                    down.push_back(c[j]);
                for (auto j : p.above(i))
                    up.push_back(c[j]);
                std::sort(down.begin(), down.end());
                std::sort(up.begin(), up.end());
                sig[i] = {c[i], down.size()};
                sig[i].insert(sig[i].end(), down.begin(), down.end());
                sig[i].insert(sig[i].end(), up.begin(), up.end());
            }
            return sig;
        };
        sa = refine(a, ca);
        sb = refine(b, cb);
    }
    return {ca, cb};
}

}  // namespace detail

/**
 * Order-preserving bijection test: colour refinement, then depth-first
 * matching in an order where each element is comparable to an earlier one
 * whenever possible.
 */
inline bool isomorphic(const Poset& a, const Poset& b)
{
    if (a.size() != b.size() || a.relation_count() != b.relation_count())
        return false;
    const std::size_t n = a.size();
    auto [ca, cb] = detail::refined_colours(a, b);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return false;
    }
    // Breadth-first order over the comparability graph, seeded at the rarest colour.
    std::map<std::size_t, std::size_t> frequency;
    for (auto c : ca)
        ++frequency[c];
    std::vector<std::size_t> order;
    std::vector<char> queued(n, 0);
    while (order.size() < n) {
        std::size_t seed = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!queued[i] && (seed == n || frequency[ca[i]] < frequency[ca[seed]]))
                seed = i;
        queued[seed] = 1;
        std::size_t k = order.size();
        order.push_back(seed);
        for (; k < order.size(); ++k) {
            std::size_t x = order[k];
            for (const auto* list : {&a.below(x), &a.above(x)})
                for (auto y : *list)
                    if (!queued[y]) {
                        queued[y] = 1;
                        order.push_back(y);
                    }
        }
    }
    std::vector<std::size_t> image(n, n);
    std::vector<char> used(n, 0);
    std::vector<std::size_t> cursor(n, 0);
    std::size_t depth = 0;
    while (true) {
        if (depth == n)
            return true;
        std::size_t x = order[depth];
        bool placed = false;
        for (std::size_t& y = cursor[depth]; y < n; ++y) {
            if (used[y] || ca[x] != cb[y])
                continue;
            bool consistent = true;
            for (std::size_t d = 0; d < depth && consistent; ++d) {
                std::size_t w = order[d];
                if (a.less(w, x) != b.less(image[w], y) || a.less(x, w) != b.less(y, image[w]))
                    consistent = false;
            }
            if (!consistent)
                continue;
            image[x] = y;
            used[y] = 1;
            ++y;
            placed = true;
            break;
        }
        if (placed) {
            ++depth;
            if (depth < n)
                cursor[depth] = 0;
            continue;
        }
        if (depth == 0)
            return false;
        --depth;
        std::size_t prev = order[depth];
        used[image[prev]] = 0;
        image[prev] = n;
    }
}

/// Hasse diagram in Graphviz DOT, bottom-to-top.
inline std::string to_dot(const Poset& poset, const std::string& name = "hasse")
{
    std::ostringstream out;
    out << "digraph " << name << " {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < poset.size(); ++i)
        out << "  n" << i << " [label=\"" << poset.label(i) << "\"];\n";
    for (auto [a, b] : poset.covers())
        out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace arrtop
