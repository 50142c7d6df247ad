#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arrtop/category.hpp"
#include "arrtop/cell_complex.hpp"
#include "arrtop/face_ops.hpp"
#include "arrtop/homology.hpp"
#include "arrtop/models.hpp"
#include "arrtop/nerve.hpp"

namespace arrtop {

/// Object (F, α) of the Salvetti category: a face and a morphism from it to a chamber.
struct SalvettiObject {
    ObjectId face = 0;
    std::optional<MorphismId> to_chamber;  // nullopt: F is a chamber, α = identity
    ObjectId chamber = 0;
    int grade = 0;                         // codimension of F
    std::size_t chamber_lift = 0;          // chamber lift adjacent to F's canonical lift
};

struct SalvettiCategory {
    AcyclicCategory category;
    std::vector<SalvettiObject> objects;
    std::vector<MorphismId> face_morphism;  // per morphism (G,β) -> (F,α): the face morphism F -> G

    std::vector<std::size_t> grade_counts() const
    {
        std::vector<std::size_t> out;
        for (const auto& o : objects) {
            if (out.size() <= static_cast<std::size_t>(o.grade))
                out.resize(static_cast<std::size_t>(o.grade) + 1, 0);
            ++out[static_cast<std::size_t>(o.grade)];
        }
        return out;
    }

    std::optional<ObjectId> find(ObjectId face, ObjectId chamber) const
    {
        for (ObjectId i = 0; i < objects.size(); ++i)
            if (objects[i].face == face && objects[i].chamber == chamber)
                return i;
        return std::nullopt;
    }
};

/**
 * Salvetti category built on the finite upstairs arrangement and quotiented by
 * the deck group.  Objects are orbits of pairs (F~, C~) with F~ ≤ C~; the
 * orbit representative uses F's canonical lift.  A morphism (G, D) -> (F, C)
 * is a face G~ above F~ with D~ = G~∘C~ (sign composition upstairs); chamber
 * objects are minimal and morphisms run towards deeper faces.
 */
inline SalvettiCategory salvetti_category(const FaceData& fd)
{
    const auto& up = fd.upstairs;
    const int top = static_cast<int>(fd.dim);

    struct Pending {
        SalvettiObject object;
        std::string label;
    };
    std::vector<Pending> pending;
    for (ObjectId f = 0; f < fd.faces.size(); ++f) {
        std::size_t lift = fd.faces[f].lift;
        if (fd.is_chamber(f)) {
            pending.push_back({{f, std::nullopt, f, 0, lift}, "<" + fd.faces[f].label + "|" + fd.faces[f].label + ">"});
            continue;
        }
        for (MorphismId m : fd.category.out_morphisms(f)) {
            ObjectId c = fd.category.morphism(m).target;
            if (!fd.is_chamber(c))
                continue;
            std::string label = "<" + fd.faces[f].label + "|" + fd.faces[c].label + ">";
            if (fd.kind == ModelKind::periodic)
                label = "<" + fd.category.morphism(m).label + ">";
            pending.push_back({{f, m, c, top - fd.faces[f].dim, fd.morphism_lift[m]}, label});
        }
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) { return a.object.grade < b.object.grade; });

    SalvettiCategory sal;
    std::vector<CategoryObject> objects;
    std::map<std::pair<ObjectId, std::size_t>, ObjectId> by_anchor;  // (face, chamber lift) -> object
    for (const auto& p : pending) {
        by_anchor[{p.object.face, p.object.chamber_lift}] = sal.objects.size();
        sal.objects.push_back(p.object);
        objects.push_back({p.label, p.object.grade});
    }

    // Canonical object of an upstairs pair (G~, D~).
    auto object_of = [&](std::size_t g, std::size_t d) -> ObjectId {
        std::size_t orbit = up.orbit[g];
        if (orbit == Upstairs::npos)
            throw ConsistencyError("salvetti_category: face outside the window");
        std::vector<Integer> back = up.translation[g];
        for (auto& v : back)
            v = -v;
        std::size_t base = up.translate(d, back);
        auto it = base == Upstairs::npos ? by_anchor.end() : by_anchor.find({orbit, base});
        if (it == by_anchor.end())
            throw ConsistencyError("salvetti_category: pair has no canonical representative");
        return it->second;
    };

    std::vector<CategoryMorphism> morphisms;
    std::map<std::pair<ObjectId, std::size_t>, MorphismId> by_target_lift;
    std::vector<std::size_t> morphism_lift;
    for (ObjectId target = 0; target < sal.objects.size(); ++target) {
        const auto& t = sal.objects[target];
        for (MorphismId m : fd.category.out_morphisms(t.face)) {
            std::size_t g = fd.morphism_lift[m];
            std::size_t d = up.compose(g, t.chamber_lift);
            ObjectId source = object_of(g, d);
            by_target_lift[{target, g}] = morphisms.size();
            morphisms.push_back({source, target, objects[source].label + "->" + objects[target].label});
            sal.face_morphism.push_back(m);
            morphism_lift.push_back(g);
        }
    }
    std::vector<std::vector<MorphismId>> out(objects.size());
    for (MorphismId m = 0; m < morphisms.size(); ++m)
        out[morphisms[m].source].push_back(m);
    CompositionTable composition;
    for (MorphismId m2 = 0; m2 < morphisms.size(); ++m2) {
        // m2: (G,D) -> (F,C) at lift G~ = G~0 + t; m1: (H,E) -> (G,D) at lift H~' above G~0.
        const auto& t2 = fd.morphism_translation[sal.face_morphism[m2]];
        ObjectId mid = morphisms[m2].source;
        for (MorphismId m1 = 0; m1 < morphisms.size(); ++m1) {
            if (morphisms[m1].target != mid)
                continue;
            std::size_t lifted = up.translate(morphism_lift[m1], t2);
            auto it = lifted == Upstairs::npos ? by_target_lift.end()
                                               : by_target_lift.find({morphisms[m2].target, lifted});
            if (it == by_target_lift.end())
                throw ConsistencyError("salvetti_category: composite lift missing");
            composition[{m1, m2}] = it->second;
        }
    }
    sal.category = AcyclicCategory(std::move(objects), std::move(morphisms), std::move(composition));
    require_valid(sal.category);
    return sal;
}

/// Salvetti poset computed through the face action, with the transitivity verdict.
struct SalvettiPoset {
    Poset poset;
    std::vector<std::pair<ObjectId, ObjectId>> pairs;  // (face, chamber) per element
    bool transitive = false;
    bool antisymmetric = false;
};

/**
 * Elements (F, C) with F ≤ C; (G, D) ≤ (F, C) iff F ≤ G and G∘C = D, with the
 * face action computed by chamber-distance search.  The raw relation is
 * checked for transitivity and antisymmetry on every triple before closing.
 */
inline SalvettiPoset salvetti_poset(const FaceData& fd)
{
    if (!fd.regular || !fd.separating)
        throw ModelError("salvetti_poset: needs a regular model whose submanifolds all separate");
    const auto action = face_action_table(fd);
    SalvettiPoset out;
    std::vector<std::string> labels;
    std::vector<int> ranks;
    for (int grade = 0; grade <= static_cast<int>(fd.dim); ++grade)
        for (ObjectId f = 0; f < fd.faces.size(); ++f) {
            if (static_cast<int>(fd.dim) - fd.faces[f].dim != grade)
                continue;
            for (ObjectId c : chambers_above(fd, f)) {
                out.pairs.push_back({f, c});
                labels.push_back("<" + fd.faces[f].label + "|" + fd.faces[c].label + ">");
                ranks.push_back(grade);
            }
        }
    std::map<std::pair<ObjectId, ObjectId>, std::size_t> index;
    for (std::size_t i = 0; i < out.pairs.size(); ++i)
        index[out.pairs[i]] = i;

    std::set<std::pair<std::size_t, std::size_t>> raw;
    for (std::size_t i = 0; i < out.pairs.size(); ++i) {
        auto [f, c] = out.pairs[i];
        for (std::size_t j = 0; j < out.pairs.size(); ++j) {
            auto [g, d] = out.pairs[j];
            if (i != j && fd.less_equal(f, g) && action.at(g).at(c) == d)
                raw.insert({j, i});
        }
    }
    std::vector<std::vector<std::size_t>> up_from(out.pairs.size());
    for (auto [a, b] : raw)
        up_from[a].push_back(b);
    out.transitive = true;
    out.antisymmetric = true;
    for (auto [a, b] : raw) {
        if (raw.count({b, a}))
            out.antisymmetric = false;
        for (std::size_t c : up_from[b])
            if (!raw.count({a, c}))
                out.transitive = false;
    }
    out.poset = Poset(std::move(labels), std::move(ranks), {raw.begin(), raw.end()});
    return out;
}

/**
 * Dual complex: one cell F* of dimension codim F per face, with vertices the
 * chambers incident to F and sub-cells the duals of the faces above F.
 */
inline CellGraphComplex dual_complex(const FaceData& fd)
{
    if (!fd.regular)
        throw ModelError("dual_complex: face category is not a poset");
    const int top = static_cast<int>(fd.dim);
    std::vector<ObjectId> order;
    for (int codim = 0; codim <= top; ++codim)
        for (ObjectId f = 0; f < fd.faces.size(); ++f)
            if (top - fd.faces[f].dim == codim)
                order.push_back(f);
    std::vector<std::size_t> cell_of(fd.faces.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        cell_of[order[i]] = i;

    CellGraphComplex q;
    for (ObjectId f : order) {
        Cell cell;
        cell.dim = top - fd.faces[f].dim;
        cell.label = fd.faces[f].label + "*";
        std::vector<std::size_t> sub{cell_of[f]};
        for (MorphismId m : fd.category.out_morphisms(f))
            sub.push_back(cell_of[fd.category.morphism(m).target]);
        std::sort(sub.begin(), sub.end());
        cell.subcells = sub;
        for (ObjectId c : chambers_above(fd, f))
            cell.vertices.push_back(cell_of[c]);
        std::sort(cell.vertices.begin(), cell.vertices.end());
        q.cells.push_back(std::move(cell));
    }
    for (ObjectId f : order) {
        if (top - fd.faces[f].dim != 1)
            continue;
        const auto& v = q.cells[cell_of[f]].vertices;
        if (v.size() != 2)
            throw ConsistencyError("dual_complex: codimension-one face " + fd.faces[f].label + " has " +
                                   std::to_string(v.size()) + " incident chambers");
        q.edges.push_back({cell_of[f], v[0], v[1]});
    }
    q.regular = true;
    q.validate();
    return q;
}

/// Cells <F*, C*> of the Salvetti complex together with the pair each one stands for.
struct SalvettiComplex {
    CellGraphComplex complex;
    std::vector<std::pair<ObjectId, ObjectId>> pairs;  // (face, chamber) per cell
    std::vector<std::size_t> base_vertex;              // <C, C> for each cell
};

/**
 * Cellular Salvetti complex: the cell <F*, C*> has dimension codim F, sub-cells
 * <G*, G∘C*> for the faces G above F, and its 1-cells are oriented away from
 * <C*, C*>.  Built from the Salvetti category, which must be a poset.
 */
inline SalvettiComplex salvetti_cw(const FaceData& fd)
{
    if (!fd.regular)
        throw ModelError("salvetti_cw: face category is not a poset, use the trisp realization");
    const auto sal = salvetti_category(fd);
    if (!sal.category.is_poset())
        throw ModelError("salvetti_cw: Salvetti category is not a poset");
    SalvettiComplex out;
    auto& q = out.complex;
    std::map<ObjectId, std::size_t> chamber_vertex;
    for (ObjectId i = 0; i < sal.objects.size(); ++i) {
        const auto& o = sal.objects[i];
        if (o.grade == 0)
            chamber_vertex[o.chamber] = i;
    }
    for (ObjectId i = 0; i < sal.objects.size(); ++i) {
        const auto& o = sal.objects[i];
        Cell cell;
        cell.dim = o.grade;
        cell.label = sal.category.object(i).label;
        std::vector<std::size_t> sub{i};
        for (MorphismId m : sal.category.in_morphisms(i))
            sub.push_back(sal.category.morphism(m).source);
        std::sort(sub.begin(), sub.end());
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
        for (std::size_t s : sub)
            if (sal.objects[s].grade == 0)
                cell.vertices.push_back(s);
        cell.subcells = std::move(sub);
        q.cells.push_back(std::move(cell));
        out.pairs.push_back({o.face, o.chamber});
        out.base_vertex.push_back(chamber_vertex.at(o.chamber));
    }
    for (ObjectId i = 0; i < sal.objects.size(); ++i) {
        if (sal.objects[i].grade != 1)
            continue;
        const auto& v = q.cells[i].vertices;
        if (v.size() != 2)
            throw ConsistencyError("salvetti_cw: 1-cell " + q.cells[i].label + " does not have two vertices");
        std::size_t tail = out.base_vertex[i];
        std::size_t head = v[0] == tail ? v[1] : v[0];
        if (v[0] != tail && v[1] != tail)
            throw ConsistencyError("salvetti_cw: 1-cell " + q.cells[i].label + " misses its base vertex");
        q.edges.push_back({i, tail, head});
    }
    q.regular = true;
    q.validate();
    return out;
}

struct PsiIotaReport {
    bool psi_cellular = true;             // (G,D) ≤ (F,C) implies G* ⊆ F*
    bool psi_vertex_bijection = true;     // ψ on 0-cells is onto the chambers, one-to-one
    bool retraction = true;               // ψ∘ι_C = id for every chamber C
    bool embeddings = true;               // every ι_C is injective and order-preserving
    bool covering = true;                 // the images of the ι_C cover every cell
    std::vector<std::size_t> fibre_sizes; // |ψ^{-1}(F*)| per face

    bool ok() const { return psi_cellular && psi_vertex_bijection && retraction && embeddings && covering; }
};

/// ψ: <F*, C*> ↦ F* and ι_C: F* ↦ <F*, (F∘C)*>, with the structural identities checked.
inline PsiIotaReport psi_iota(const FaceData& fd, const SalvettiComplex& sal)
{
    if (!fd.separating)
        throw ModelError("psi_iota: the maps ι_C need the face action of a separated model");
    const auto action = face_action_table(fd);
    PsiIotaReport r;
    std::map<std::pair<ObjectId, ObjectId>, std::size_t> cell_of;
    for (std::size_t i = 0; i < sal.pairs.size(); ++i)
        cell_of[sal.pairs[i]] = i;

    const auto& cells = sal.complex.cells;
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t s : cells[i].subcells) {
            ObjectId f = sal.pairs[i].first;
            ObjectId g = sal.pairs[s].first;
            if (!fd.less_equal(f, g))
                r.psi_cellular = false;
        }
    std::set<ObjectId> images;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].dim == 0)
            if (!images.insert(sal.pairs[i].first).second)
                r.psi_vertex_bijection = false;
    if (images.size() != fd.chambers().size())
        r.psi_vertex_bijection = false;

    r.fibre_sizes.assign(fd.faces.size(), 0);
    for (const auto& p : sal.pairs)
        ++r.fibre_sizes[p.first];

    std::vector<char> covered(cells.size(), 0);
    for (ObjectId c : fd.chambers()) {
        std::map<ObjectId, std::size_t> iota;
        for (ObjectId f = 0; f < fd.faces.size(); ++f) {
            auto it = cell_of.find({f, action.at(f).at(c)});
            if (it == cell_of.end()) {
                r.embeddings = false;
                continue;
            }
            iota[f] = it->second;
            covered[it->second] = 1;
            if (sal.pairs[it->second].first != f)
                r.retraction = false;
        }
        std::set<std::size_t> distinct;
        for (auto [f, cell] : iota)
            distinct.insert(cell);
        if (distinct.size() != iota.size())
            r.embeddings = false;
        // F ≤ G means G* is a face of F*; its image must be a sub-cell of ι_C(F*).
        for (auto [f, cell] : iota)
            for (auto [g, sub] : iota)
                if (f != g && fd.less_equal(f, g)) {
                    const auto& q = cells[cell].subcells;
                    if (!std::binary_search(q.begin(), q.end(), sub))
                        r.embeddings = false;
                }
        for (auto [f, cell] : iota)
            if (cells[cell].dim != static_cast<int>(fd.dim) - fd.faces[f].dim)
                r.embeddings = false;
    }
    r.covering = std::all_of(covered.begin(), covered.end(), [](char v) { return v != 0; });
    return r;
}

/**
 * Chambers whose boundary has the homology of a sphere of dimension r - 1
 * (r the rank for hyperplane models, the manifold dimension otherwise).  A
 * contractible boundary marks an unbounded chamber; anything else is a defect.
 */
inline std::vector<ObjectId> bounded_chambers(const FaceData& fd)
{
    if (!fd.regular)
        throw ModelError("bounded_chambers: face category is not a poset");
    const int r = static_cast<int>(fd.rank);
    const Poset whole = underlying_poset(fd.category);
    std::vector<ObjectId> out;
    for (ObjectId c : fd.chambers()) {
        const auto& below = whole.below(c);
        if (below.empty()) {
            if (r == 0)
                out.push_back(c);
            else
                throw ConsistencyError("bounded_chambers: chamber " + fd.faces[c].label + " has an empty boundary");
            continue;
        }
        std::vector<std::string> labels;
        std::vector<int> ranks;
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t b : below) {
            pos[b] = labels.size();
            labels.push_back(whole.label(b));
            ranks.push_back(whole.rank(b));
        }
        std::vector<std::pair<std::size_t, std::size_t>> rel;
        for (std::size_t b : below)
            for (std::size_t a : whole.below(b))
                rel.push_back({pos.at(a), pos.at(b)});
        auto h = reduced(homology(order_complex(Poset(labels, ranks, rel))));
        bool acyclic = h.torsion_free() &&
                       std::all_of(h.betti.begin(), h.betti.end(), [](long long b) { return b == 0; });
        bool sphere = h.torsion_free() && r >= 1;
        for (std::size_t k = 0; k < h.betti.size() && sphere; ++k)
            sphere = h.betti[k] == (static_cast<int>(k) == r - 1 ? 1 : 0);
        if (sphere && static_cast<int>(h.betti.size()) < r)
            sphere = false;
        if (sphere)
            out.push_back(c);
        else if (!acyclic)
            throw ConsistencyError("bounded_chambers: boundary of " + fd.faces[c].label +
                                   " is neither a sphere nor contractible");
    }
    return out;
}

/// Salvetti order on pairs upstairs near a face: elements (G~, C~) with F~ ≤ G~ ≤ C~.
struct LocalSalvetti {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // upstairs (face, chamber)
    std::set<std::pair<std::size_t, std::size_t>> less;      // strict relation by element index
};

inline LocalSalvetti local_salvetti(const FaceData& fd, std::size_t anchor_lift)
{
    const auto& up = fd.upstairs;
    std::vector<std::size_t> star{anchor_lift};
    for (std::size_t g : up.faces[anchor_lift].above)
        star.push_back(g);
    std::sort(star.begin(), star.end());
    const int top = static_cast<int>(up.arrangement.dim);
    LocalSalvetti out;
    for (std::size_t g : star)
        for (std::size_t c : star)
            if (up.faces[c].dim == top && up.less_equal(g, c))
                out.pairs.push_back({g, c});
    for (std::size_t i = 0; i < out.pairs.size(); ++i)
        for (std::size_t j = 0; j < out.pairs.size(); ++j) {
            auto [f, c] = out.pairs[i];
            auto [g, d] = out.pairs[j];
            if (i != j && up.less_equal(f, g) && up.compose(g, c) == d)
                out.less.insert({j, i});
        }
    return out;
}

struct EmbeddingReport {
    std::size_t source_objects = 0;
    std::size_t target_objects = 0;
    std::size_t source_relations = 0;
    bool injective = false;
    bool functorial = false;  // relations map to relations
    bool full = false;        // and only relations come from relations
    bool ok() const { return injective && functorial && full; }
};

/**
 * Checks that the local Salvetti category at F' sits inside the one at F,
 * for the face morphism F -> F' given (or the identity when F = F').
 */
inline EmbeddingReport local_embedding_check(const FaceData& fd, ObjectId f, std::optional<MorphismId> via)
{
    std::size_t inner_anchor = fd.faces[f].lift;
    std::vector<Integer> shift;
    if (via) {
        if (fd.category.morphism(*via).source != f)
            throw ModelError("local_embedding_check: morphism does not start at the face");
        inner_anchor = fd.faces[fd.category.morphism(*via).target].lift;
        shift = fd.morphism_translation[*via];
    }
    const auto outer = local_salvetti(fd, fd.faces[f].lift);
    const auto inner = local_salvetti(fd, inner_anchor);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> outer_index;
    for (std::size_t i = 0; i < outer.pairs.size(); ++i)
        outer_index[outer.pairs[i]] = i;

    EmbeddingReport r;
    r.source_objects = inner.pairs.size();
    r.target_objects = outer.pairs.size();
    r.source_relations = inner.less.size();
    const auto& up = fd.upstairs;
    std::vector<std::size_t> image;
    for (auto [g, c] : inner.pairs) {
        std::size_t tg = up.translate(g, shift), tc = up.translate(c, shift);
        auto it = outer_index.find({tg, tc});
        if (tg == Upstairs::npos || tc == Upstairs::npos || it == outer_index.end())
            return r;
        image.push_back(it->second);
    }
    r.injective = std::set<std::size_t>(image.begin(), image.end()).size() == image.size();
    r.functorial = std::all_of(inner.less.begin(), inner.less.end(),
                               [&](auto p) { return outer.less.count({image[p.first], image[p.second]}) > 0; });
    r.full = true;
    for (std::size_t a = 0; a < image.size(); ++a)
        for (std::size_t b = 0; b < image.size(); ++b)
            if (a != b && outer.less.count({image[a], image[b]}) && !inner.less.count({a, b}))
                r.full = false;
    return r;
}

}  // namespace arrtop
