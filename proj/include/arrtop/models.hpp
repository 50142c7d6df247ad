#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arrtop/category.hpp"
#include "arrtop/feasibility.hpp"
#include "arrtop/rational.hpp"

namespace arrtop {

/// The hyperplane { x : normal · x = offset }.
struct Hyperplane {
    RationalVector normal;
    Rational offset;
};

struct HyperplaneArrangement {
    std::size_t dim = 0;
    std::vector<Hyperplane> hyperplanes;
};

/// Great spheres of S^l cut out by a central arrangement in R^{l+1}.
struct SphereModel {
    HyperplaneArrangement central;
    std::size_t sphere_dim() const { return central.dim - 1; }
};

/// The Z^n-periodic family { x : normal · x ∈ offset + Z } in R^n, read on the torus R^n / Z^n.
struct PeriodicFamily {
    std::vector<Integer> normal;
    Rational offset;
};

struct PeriodicModel {
    std::size_t dim = 0;
    std::vector<PeriodicFamily> families;
};

using ArrangementModel = std::variant<HyperplaneArrangement, SphereModel, PeriodicModel>;

enum class ModelKind { hyperplane, sphere, periodic };

inline std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::hyperplane: return "hyperplane";
    case ModelKind::sphere: return "sphere";
    case ModelKind::periodic: return "periodic";
    }
    return "?";
}

/// Entries in {-1, 0, +1}, one per hyperplane.
using SignVector = std::vector<signed char>;

inline std::string sign_string(const SignVector& signs)
{
    std::string s;
    for (auto v : signs)
        s += v > 0 ? '+' : (v < 0 ? '-' : '0');
    return s;
}

/// Sign of normal · x - offset for every hyperplane.
inline SignVector sign_vector_of(const HyperplaneArrangement& a, const RationalVector& x)
{
    SignVector s;
    for (const auto& h : a.hyperplanes)
        s.push_back(static_cast<signed char>(sign_of(dot(h.normal, x) - h.offset)));
    return s;
}

/// Linear system {H_i = 0 where σ_i = 0, σ_i (H_i) > 0 elsewhere}.
inline std::vector<LinearConstraint> sign_constraints(const HyperplaneArrangement& a,
                                                      const SignVector& sigma)
{
    std::vector<LinearConstraint> system;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto& h = a.hyperplanes[i];
        if (sigma[i] == 0) {
            system.push_back({h.normal, h.offset, Relation::equal});
        } else if (sigma[i] > 0) {
            system.push_back({h.normal, h.offset, Relation::greater});
        } else {
            RationalVector neg = h.normal;
            for (auto& v : neg)
                v = -v;
            system.push_back({neg, -h.offset, Relation::greater});
        }
    }
    return system;
}

/// Realizability of a sign vector (a prefix of the hyperplanes is allowed); witness on success.
inline std::optional<RationalVector> feasible(const SignVector& sigma, const HyperplaneArrangement& a)
{
    if (sigma.size() > a.hyperplanes.size())
        throw ConsistencyError("feasible: sign vector longer than the arrangement");
    return solve_linear_system(a.dim, sign_constraints(a, sigma));
}

/// Rejects zero normals, wrong lengths and hyperplanes repeated up to scaling.
inline void validate_arrangement(const HyperplaneArrangement& a)
{
    if (a.dim < 1)
        throw ModelError("arrangement dimension must be at least 1");
    std::map<std::pair<RationalVector, Rational>, std::size_t> seen;
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
        const auto& h = a.hyperplanes[i];
        if (h.normal.size() != a.dim)
            throw ModelError("hyperplane " + std::to_string(i) + " has a normal of the wrong length");
        auto lead = std::find_if(h.normal.begin(), h.normal.end(), [](const Rational& v) { return v != 0; });
        if (lead == h.normal.end())
            throw ModelError("hyperplane " + std::to_string(i) + " has a zero normal");
        Rational scale = *lead;
        RationalVector key = h.normal;
        for (auto& v : key)
            v /= scale;
        auto [it, inserted] = seen.emplace(std::make_pair(key, h.offset / scale), i);
        if (!inserted)
            throw ModelError("hyperplanes " + std::to_string(it->second) + " and " + std::to_string(i) +
                             " coincide");
    }
}

inline std::size_t normal_rank(const HyperplaneArrangement& a)
{
    std::vector<RationalVector> rows;
    for (const auto& h : a.hyperplanes)
        rows.push_back(h.normal);
    return rank_of(std::move(rows));
}

struct EnumeratedFace {
    SignVector signs;
    RationalVector witness;
};

/**
 * All realizable sign vectors, built one hyperplane at a time: every face of
 * the first i+1 hyperplanes restricts to a face of the first i, so each face
 * is extended by the sign its witness already has plus the two other signs
 * when feasible.  `allowed(i, s)` prunes sign s on hyperplane i.
 */
template <class Allowed>
std::vector<EnumeratedFace> enumerate_sign_vectors(const HyperplaneArrangement& a, Allowed allowed)
{
    std::vector<EnumeratedFace> faces{{{}, RationalVector(a.dim, Rational(0))}};
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
        const auto& h = a.hyperplanes[i];
        std::vector<EnumeratedFace> next;
        for (auto& f : faces) {
            auto own = static_cast<signed char>(sign_of(dot(h.normal, f.witness) - h.offset));
            for (signed char s : {-1, 0, 1}) {
                if (!allowed(i, s))
                    continue;
                SignVector extended = f.signs;
                extended.push_back(s);
                if (s == own) {
                    next.push_back({std::move(extended), f.witness});
                } else if (auto w = feasible(extended, a)) {
                    next.push_back({std::move(extended), std::move(*w)});
                }
            }
        }
        faces = std::move(next);
    }
    std::sort(faces.begin(), faces.end(),
              [](const EnumeratedFace& x, const EnumeratedFace& y) { return x.signs < y.signs; });
    return faces;
}

/// A face of the finite arrangement on which computations happen (the window, for periodic models).
struct UpstairsFace {
    SignVector signs;
    int pole = 0;  // ±1 for the two lineality points of a sphere model
    int dim = 0;
    RationalVector sample;
    bool genuine = true;                 // not cut by an artificial window boundary
    std::vector<std::size_t> below;      // strict faces in the closure
    std::vector<std::size_t> above;      // strict cofaces
};

/**
 * The finite arrangement carrying the faces of a model together with the
 * bookkeeping that identifies its faces with faces of the model.  For
 * hyperplane and sphere models it is the model itself and the deck group is
 * trivial; for periodic models it is the window arrangement.
 */
struct Upstairs {
    HyperplaneArrangement arrangement;
    std::vector<long> submanifold_of;          // per hyperplane; -1 for artificial window planes
    std::vector<UpstairsFace> faces;
    std::vector<std::size_t> orbit;            // face -> model face id (npos when not genuine)
    std::vector<std::vector<Integer>> translation;  // face = canonical lift of its orbit + translation
    std::map<RationalVector, std::size_t> by_sample;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool less(std::size_t a, std::size_t b) const
    {
        const auto& v = faces[b].below;
        return std::binary_search(v.begin(), v.end(), a);
    }

    bool less_equal(std::size_t a, std::size_t b) const { return a == b || less(a, b); }

    /// Face translated by an integer vector; npos when the translate leaves the window.
    std::size_t translate(std::size_t face, const std::vector<Integer>& t) const
    {
        if (t.empty() || std::all_of(t.begin(), t.end(), [](const Integer& v) { return v == 0; }))
            return face;
        RationalVector key = faces[face].sample;
        for (std::size_t j = 0; j < key.size(); ++j)
            key[j] += Rational(t[j]);
        auto it = by_sample.find(key);
        return it == by_sample.end() ? npos : it->second;
    }

    /// Face composition G∘C: the nearby face on the side of C; poles act trivially.
    std::size_t compose(std::size_t g, std::size_t c) const
    {
        if (faces[g].pole != 0)
            return c;
        SignVector s = faces[g].signs;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == 0)
                s[i] = faces[c].signs[i];
        auto it = index_.find({s, 0});
        if (it == index_.end())
            throw ConsistencyError("face composition left the face set");
        return it->second;
    }

    std::optional<std::size_t> find(const SignVector& s, int pole = 0) const
    {
        auto it = index_.find({s, pole});
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    void build_index()
    {
        index_.clear();
        for (std::size_t i = 0; i < faces.size(); ++i)
            index_[{faces[i].signs, faces[i].pole}] = i;
    }

private:
    std::map<std::pair<SignVector, int>, std::size_t> index_;
};

struct FaceRecord {
    std::string label;
    int dim = 0;
    RationalVector sample;
    std::vector<std::size_t> containing;  // ids of the submanifolds through the face
    std::size_t lift = 0;                 // canonical lift in Upstairs::faces
};

/**
 * Face category of a model plus the data the later stages need.  Morphism m
 * from F to G corresponds to the lift morphism_lift[m] of G lying in the
 * closure-star of F's canonical lift; it differs from G's canonical lift by
 * morphism_translation[m].
 */
struct FaceData {
    ModelKind kind = ModelKind::hyperplane;
    std::size_t dim = 0;             // dimension of the manifold
    std::size_t rank = 0;            // rank of the normals (hyperplane); dim otherwise
    std::size_t submanifolds = 0;
    std::vector<FaceRecord> faces;
    AcyclicCategory category;
    std::vector<std::size_t> morphism_lift;
    std::vector<std::vector<Integer>> morphism_translation;
    Upstairs upstairs;
    bool regular = true;
    bool separating = true;

    std::vector<ObjectId> chambers() const
    {
        std::vector<ObjectId> result;
        for (ObjectId f = 0; f < faces.size(); ++f)
            if (faces[f].dim == static_cast<int>(dim))
                result.push_back(f);
        return result;
    }

    bool is_chamber(ObjectId f) const { return faces[f].dim == static_cast<int>(dim); }

    /// Face poset order (meaningful for regular models; any morphism for the others).
    bool less_equal(ObjectId a, ObjectId b) const
    {
        if (a == b)
            return true;
        for (MorphismId m : category.out_morphisms(a))
            if (category.morphism(m).target == b)
                return true;
        return false;
    }

    /// Side of a chamber with respect to a separating submanifold.
    int side(ObjectId chamber, std::size_t submanifold) const
    {
        if (!separating)
            throw ModelError("side: model has non-separating submanifolds");
        return upstairs.faces[faces[chamber].lift].signs.at(submanifold);
    }

    const UpstairsFace& lift_of(ObjectId f) const { return upstairs.faces[faces[f].lift]; }

    /// The morphism F -> orbit(lift) with the given target lift, if any.
    std::optional<MorphismId> morphism_to_lift(ObjectId source, std::size_t lift) const
    {
        for (MorphismId m : category.out_morphisms(source))
            if (morphism_lift[m] == lift)
                return m;
        return std::nullopt;
    }
};

struct EnumerationOptions {
    std::size_t max_hyperplanes = 12;
};

struct WindowOptions {
    Rational low = -1;
    Rational high = 2;
};

namespace detail {

inline int zero_set_dimension(const HyperplaneArrangement& a, const SignVector& s)
{
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == 0)
            rows.push_back(a.hyperplanes[i].normal);
    return static_cast<int>(a.dim - rank_of(std::move(rows)));
}

inline bool conforms(const UpstairsFace& low, const UpstairsFace& high)
{
    if (high.pole != 0)
        return false;
    if (low.pole != 0)
        return true;
    for (std::size_t i = 0; i < low.signs.size(); ++i)
        if (low.signs[i] != 0 && low.signs[i] != high.signs[i])
            return false;
    return true;
}

/// Fills below/above by conformality of sign vectors.
inline void order_faces(std::vector<UpstairsFace>& faces)
{
    for (auto& f : faces) {
        f.below.clear();
        f.above.clear();
    }
    for (std::size_t a = 0; a < faces.size(); ++a)
        for (std::size_t b = 0; b < faces.size(); ++b)
            if (a != b && faces[a].dim < faces[b].dim && conforms(faces[a], faces[b])) {
                faces[b].below.push_back(a);
                faces[a].above.push_back(b);
            }
}

/// Sort key putting faces in (dimension, sign vector, pole) order.
inline std::vector<std::size_t> canonical_order(const std::vector<UpstairsFace>& faces,
                                                const std::vector<std::size_t>& subset)
{
    std::vector<std::size_t> order = subset;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = faces[x];
        const auto& b = faces[y];
        if (a.dim != b.dim)
            return a.dim < b.dim;
        if (a.pole != b.pole)
            return a.pole > b.pole;
        return a.signs < b.signs;
    });
    return order;
}

/**
 * Builds the face category from upstairs data: objects are the orbits (in
 * `model_faces` order), morphisms F -> G are the strict cofaces of F's
 * canonical lift, composition translates the second lift along the first.
 */
inline void build_face_category(FaceData& fd, const std::vector<std::size_t>& model_faces)
{
    auto& up = fd.upstairs;
    std::vector<CategoryObject> objects;
    for (std::size_t f = 0; f < model_faces.size(); ++f)
        objects.push_back({fd.faces[f].label, fd.faces[f].dim});

    std::vector<CategoryMorphism> morphisms;
    std::map<std::pair<ObjectId, std::size_t>, MorphismId> by_lift;
    fd.morphism_lift.clear();
    fd.morphism_translation.clear();
    for (ObjectId f = 0; f < fd.faces.size(); ++f) {
        const auto& lift = up.faces[fd.faces[f].lift];
        std::vector<std::size_t> targets = lift.above;
        std::sort(targets.begin(), targets.end(), [&](std::size_t x, std::size_t y) {
            if (up.orbit[x] != up.orbit[y])
                return up.orbit[x] < up.orbit[y];
            return up.translation[x] < up.translation[y];
        });
        for (std::size_t g : targets) {
            if (up.orbit[g] == Upstairs::npos)
                throw ConsistencyError("window too small: a coface of " + fd.faces[f].label +
                                       " is cut by the window boundary");
            MorphismId id = morphisms.size();
            std::string label = fd.faces[f].label + "->" + fd.faces[up.orbit[g]].label;
            if (fd.kind == ModelKind::periodic) {
                label += "@(";
                for (std::size_t j = 0; j < up.translation[g].size(); ++j)
                    label += (j ? "," : "") + up.translation[g][j].str();
                label += ")";
            }
            morphisms.push_back({f, up.orbit[g], label});
            fd.morphism_lift.push_back(g);
            fd.morphism_translation.push_back(up.translation[g]);
            by_lift[{f, g}] = id;
        }
    }

    std::vector<std::vector<MorphismId>> out(objects.size());
    for (MorphismId m = 0; m < morphisms.size(); ++m)
        out[morphisms[m].source].push_back(m);
    CompositionTable composition;
    for (MorphismId m1 = 0; m1 < morphisms.size(); ++m1) {
        for (MorphismId m2 : out[morphisms[m1].target]) {
            std::size_t lifted = up.translate(fd.morphism_lift[m2], fd.morphism_translation[m1]);
            auto it = lifted == Upstairs::npos ? by_lift.end()
                                               : by_lift.find({morphisms[m1].source, lifted});
            if (it == by_lift.end())
                throw ConsistencyError("window too small: composite lift of " + morphisms[m1].label +
                                       " and " + morphisms[m2].label + " is missing");
            composition[{m1, m2}] = it->second;
        }
    }
    fd.category = AcyclicCategory(std::move(objects), std::move(morphisms), std::move(composition));
    fd.regular = fd.category.is_poset();
}

/// Every k-face has boundary faces of every dimension from the minimal one (dim - rank) up to k - 1.
inline void check_boundary_completeness(const FaceData& fd)
{
    const int lowest = static_cast<int>(fd.dim - fd.rank);
    for (ObjectId f = 0; f < fd.faces.size(); ++f) {
        std::vector<char> seen(static_cast<std::size_t>(fd.faces[f].dim), 0);
        for (MorphismId m : fd.category.in_morphisms(f))
            seen[static_cast<std::size_t>(fd.faces[fd.category.morphism(m).source].dim)] = 1;
        for (int k = lowest; k < fd.faces[f].dim; ++k)
            if (!seen[static_cast<std::size_t>(k)])
                throw ConsistencyError("face " + fd.faces[f].label + " has no boundary face of dimension " +
                                       std::to_string(k));
    }
}

inline std::vector<std::size_t> zero_set(const SignVector& s)
{
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == 0)
            z.push_back(i);
    return z;
}

/// Shared tail for hyperplane and sphere models: upstairs = model, trivial deck group.
inline FaceData finish_untwisted(ModelKind kind, std::size_t manifold_dim, std::size_t rank,
                                 HyperplaneArrangement arrangement, std::vector<UpstairsFace> faces)
{
    FaceData fd;
    fd.kind = kind;
    fd.dim = manifold_dim;
    fd.rank = rank;
    fd.submanifolds = arrangement.hyperplanes.size();
    fd.separating = true;

    std::vector<std::size_t> all(faces.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<UpstairsFace> sorted;
    for (std::size_t i : canonical_order(faces, all))
        sorted.push_back(std::move(faces[i]));
    order_faces(sorted);

    Upstairs& up = fd.upstairs;
    up.arrangement = std::move(arrangement);
    up.submanifold_of.resize(up.arrangement.hyperplanes.size());
    std::iota(up.submanifold_of.begin(), up.submanifold_of.end(), 0L);
    up.faces = std::move(sorted);
    up.build_index();
    up.orbit.resize(up.faces.size());
    std::iota(up.orbit.begin(), up.orbit.end(), std::size_t{0});
    up.translation.assign(up.faces.size(), {});

    std::vector<std::size_t> model_faces;
    for (std::size_t i = 0; i < up.faces.size(); ++i) {
        const auto& f = up.faces[i];
        FaceRecord rec;
        rec.dim = f.dim;
        rec.sample = f.sample;
        rec.lift = i;
        if (f.pole != 0) {
            rec.label = f.pole > 0 ? "[pole+]" : "[pole-]";
            rec.containing.resize(fd.submanifolds);
            std::iota(rec.containing.begin(), rec.containing.end(), std::size_t{0});
        } else {
            rec.label = "[" + sign_string(f.signs) + "]";
            rec.containing = zero_set(f.signs);
        }
        fd.faces.push_back(std::move(rec));
        model_faces.push_back(i);
    }
    build_face_category(fd, model_faces);
    check_boundary_completeness(fd);
    return fd;
}

}  // namespace detail

/**
 * Faces of a hyperplane arrangement: all realizable sign vectors, ordered by
 * σ ≤ τ iff σ_i ∈ {0, τ_i} for all i.  Samples are feasibility witnesses.
 */
inline FaceData enumerate_faces(const HyperplaneArrangement& a, const EnumerationOptions& options = {})
{
    validate_arrangement(a);
    if (a.hyperplanes.size() > options.max_hyperplanes)
        throw ModelError("arrangement has " + std::to_string(a.hyperplanes.size()) +
                         " hyperplanes, above the enumeration bound " +
                         std::to_string(options.max_hyperplanes));
    std::vector<UpstairsFace> faces;
    for (auto& e : enumerate_sign_vectors(a, [](std::size_t, signed char) { return true; })) {
        UpstairsFace f;
        f.dim = detail::zero_set_dimension(a, e.signs);
        f.signs = std::move(e.signs);
        f.sample = std::move(e.witness);
        faces.push_back(std::move(f));
    }
    return detail::finish_untwisted(ModelKind::hyperplane, a.dim, normal_rank(a), a, std::move(faces));
}

/**
 * Faces cut on S^l by a central arrangement in R^{l+1}.  Each nonzero
 * realizable sign vector is an open cone meeting the sphere in one cell of
 * dimension (cone dimension - 1).  When the normals leave a line of
 * lineality, its two unit directions are extra vertices below every other
 * face.
 */
inline FaceData sphere_faces(const SphereModel& s, const EnumerationOptions& options = {})
{
    const auto& a = s.central;
    validate_arrangement(a);
    if (a.dim < 2)
        throw ModelError("sphere model needs an ambient space of dimension at least 2");
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i)
        if (a.hyperplanes[i].offset != 0)
            throw ModelError("sphere model hyperplane " + std::to_string(i) + " does not pass through the origin");
    if (a.hyperplanes.size() > options.max_hyperplanes)
        throw ModelError("arrangement has " + std::to_string(a.hyperplanes.size()) +
                         " hyperplanes, above the enumeration bound " +
                         std::to_string(options.max_hyperplanes));
    const std::size_t rank = normal_rank(a);
    const std::size_t lineality = a.dim - rank;
    if (lineality >= 2)
        throw ModelError("induced stratification not cellular: the great spheres share a subsphere of dimension " +
                         std::to_string(lineality - 1));

    std::vector<UpstairsFace> faces;
    for (auto& e : enumerate_sign_vectors(a, [](std::size_t, signed char) { return true; })) {
        if (std::all_of(e.signs.begin(), e.signs.end(), [](signed char v) { return v == 0; }))
            continue;
        UpstairsFace f;
        f.dim = detail::zero_set_dimension(a, e.signs) - 1;
        f.signs = std::move(e.signs);
        f.sample = std::move(e.witness);
        faces.push_back(std::move(f));
    }
    if (lineality == 1) {
        // Direction of the common line: any nonzero solution of all equalities.
        std::vector<LinearConstraint> system;
        for (const auto& h : a.hyperplanes)
            system.push_back({h.normal, 0, Relation::equal});
        RationalVector direction;
        for (std::size_t j = 0; j < a.dim && direction.empty(); ++j) {
            auto probe = system;
            RationalVector unit(a.dim, Rational(0));
            unit[j] = 1;
            probe.push_back({unit, 1, Relation::equal});
            if (auto w = solve_linear_system(a.dim, probe))
                direction = *w;
        }
        if (direction.empty())
            throw ConsistencyError("sphere_faces: lineality direction not found");
        for (int pole : {1, -1}) {
            UpstairsFace f;
            f.signs.assign(a.hyperplanes.size(), 0);
            f.pole = pole;
            f.dim = 0;
            f.sample = direction;
            for (auto& v : f.sample)
                v *= pole;
            faces.push_back(std::move(f));
        }
    }
    return detail::finish_untwisted(ModelKind::sphere, a.dim - 1, a.dim - 1, a, std::move(faces));
}

namespace detail {

inline Rational frac_part(const Rational& v) { return v - Rational(floor_of(v)); }

inline Integer gcd_of(const std::vector<Integer>& v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, x < 0 ? Integer(-x) : x);
    return g;
}

/// First nonzero entry positive, offset reduced into [0, 1).
inline PeriodicFamily normalize_family(PeriodicFamily f)
{
    auto lead = std::find_if(f.normal.begin(), f.normal.end(), [](const Integer& v) { return v != 0; });
    if (lead != f.normal.end() && *lead < 0) {
        for (auto& v : f.normal)
            v = -v;
        f.offset = -f.offset;
    }
    f.offset = frac_part(f.offset);
    return f;
}

}  // namespace detail

inline PeriodicModel validate_periodic(const PeriodicModel& p)
{
    if (p.dim < 1)
        throw ModelError("periodic model dimension must be at least 1");
    PeriodicModel out{p.dim, {}};
    std::map<std::pair<std::vector<Integer>, Rational>, std::size_t> seen;
    for (std::size_t i = 0; i < p.families.size(); ++i) {
        const auto& f = p.families[i];
        if (f.normal.size() != p.dim)
            throw ModelError("family " + std::to_string(i) + " has a normal of the wrong length");
        Integer g = detail::gcd_of(f.normal);
        if (g == 0)
            throw ModelError("family " + std::to_string(i) + " has a zero normal");
        if (g != 1)
            throw ModelError("family " + std::to_string(i) + " has a normal with non-coprime entries");
        auto n = detail::normalize_family(f);
        auto [it, inserted] = seen.emplace(std::make_pair(n.normal, n.offset), i);
        if (!inserted)
            throw ModelError("families " + std::to_string(it->second) + " and " + std::to_string(i) + " coincide");
        out.families.push_back(std::move(n));
    }
    std::vector<RationalVector> rows;
    for (const auto& f : out.families) {
        RationalVector r;
        for (const auto& v : f.normal)
            r.push_back(Rational(v));
        rows.push_back(std::move(r));
    }
    if (rank_of(rows) < p.dim)
        throw ModelError("stratification not cellular: the deck action is not free on faces "
                         "(the family normals do not span R^" + std::to_string(p.dim) + ")");
    return out;
}

/**
 * Quotient of a periodic model by its deck group.  The finite window
 * arrangement (family members meeting [low, high]^n plus the window's
 * boundary planes) is enumerated; a window face is genuine when neither it
 * nor any face in its closure lies on an artificial boundary plane.  Orbits
 * are represented by the genuine lift whose vertex centroid lies in [0,1)^n.
 */
inline FaceData periodic_quotient(const PeriodicModel& model, const WindowOptions& window = {})
{
    const PeriodicModel p = validate_periodic(model);
    const std::size_t n = p.dim;
    if (!(window.low <= 0 && window.high >= 1))
        throw ModelError("window must contain the unit cube [0,1]^n");

    FaceData fd;
    fd.kind = ModelKind::periodic;
    fd.dim = n;
    fd.rank = n;
    fd.submanifolds = p.families.size();
    fd.separating = false;
    Upstairs& up = fd.upstairs;
    up.arrangement.dim = n;

    // Box planes first: x_j = low, x_j = high.  A box plane that is itself a
    // family member keeps its family id.
    for (std::size_t j = 0; j < n; ++j)
        for (const Rational& bound : {window.low, window.high}) {
            RationalVector normal(n, Rational(0));
            normal[j] = 1;
            long family = -1;
            for (std::size_t f = 0; f < p.families.size(); ++f) {
                const auto& fam = p.families[f];
                bool axis = true;
                for (std::size_t k = 0; k < n; ++k)
                    if (fam.normal[k] != (k == j ? 1 : 0))
                        axis = false;
                if (axis && detail::frac_part(bound - fam.offset) == 0)
                    family = static_cast<long>(f);
            }
            up.arrangement.hyperplanes.push_back({normal, bound});
            up.submanifold_of.push_back(family);
        }
    for (std::size_t f = 0; f < p.families.size(); ++f) {
        const auto& fam = p.families[f];
        Rational lo = 0, hi = 0;
        RationalVector normal;
        for (const auto& v : fam.normal) {
            Rational r(v);
            normal.push_back(r);
            lo += r > 0 ? r * window.low : r * window.high;
            hi += r > 0 ? r * window.high : r * window.low;
        }
        for (Integer k = ceil_of(lo - fam.offset); k <= floor_of(hi - fam.offset); ++k) {
            Rational offset = fam.offset + Rational(k);
            bool on_box = false;
            for (std::size_t b = 0; b < 2 * n; ++b)
                if (up.submanifold_of[b] == static_cast<long>(f) &&
                    up.arrangement.hyperplanes[b].normal == normal &&
                    up.arrangement.hyperplanes[b].offset == offset)
                    on_box = true;
            if (on_box)
                continue;
            up.arrangement.hyperplanes.push_back({normal, offset});
            up.submanifold_of.push_back(static_cast<long>(f));
        }
    }

    auto allowed = [n](std::size_t i, signed char s) {
        if (i >= 2 * n)
            return true;
        return i % 2 == 0 ? s >= 0 : s <= 0;
    };
    std::vector<UpstairsFace> faces;
    for (auto& e : enumerate_sign_vectors(up.arrangement, allowed)) {
        UpstairsFace f;
        f.dim = detail::zero_set_dimension(up.arrangement, e.signs);
        f.signs = std::move(e.signs);
        f.sample = std::move(e.witness);
        faces.push_back(std::move(f));
    }
    {
        std::vector<std::size_t> all(faces.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::vector<UpstairsFace> sorted;
        for (std::size_t i : detail::canonical_order(faces, all))
            sorted.push_back(std::move(faces[i]));
        faces = std::move(sorted);
    }
    detail::order_faces(faces);

    auto touches_box = [&](const UpstairsFace& f) {
        for (std::size_t i = 0; i < 2 * n; ++i)
            if (up.submanifold_of[i] < 0 && f.signs[i] == 0)
                return true;
        return false;
    };
    for (auto& f : faces) {
        f.genuine = !touches_box(f);
        for (std::size_t b : f.below)
            if (touches_box(faces[b]))
                f.genuine = false;
    }
    // Vertex centroids are translation-equivariant sample points.
    for (auto& f : faces) {
        if (!f.genuine || f.dim == 0)
            continue;
        RationalVector centroid(n, Rational(0));
        std::size_t count = 0;
        for (std::size_t b : f.below)
            if (faces[b].dim == 0) {
                for (std::size_t j = 0; j < n; ++j)
                    centroid[j] += faces[b].sample[j];
                ++count;
            }
        if (count == 0)
            throw ConsistencyError("periodic_quotient: bounded face without vertices");
        for (auto& v : centroid)
            v /= count;
        f.sample = std::move(centroid);
    }
    up.faces = std::move(faces);
    up.build_index();
    for (std::size_t i = 0; i < up.faces.size(); ++i)
        if (up.faces[i].genuine)
            up.by_sample[up.faces[i].sample] = i;

    up.orbit.assign(up.faces.size(), Upstairs::npos);
    up.translation.assign(up.faces.size(), {});
    std::vector<std::size_t> canonical;
    for (std::size_t i = 0; i < up.faces.size(); ++i) {
        if (!up.faces[i].genuine)
            continue;
        std::vector<Integer> shift;
        for (const auto& v : up.faces[i].sample)
            shift.push_back(floor_of(v));
        up.translation[i] = shift;
        if (std::all_of(shift.begin(), shift.end(), [](const Integer& v) { return v == 0; }))
            canonical.push_back(i);
    }
    canonical = detail::canonical_order(up.faces, canonical);
    std::map<std::size_t, std::size_t> orbit_of_canonical;
    for (std::size_t k = 0; k < canonical.size(); ++k)
        orbit_of_canonical[canonical[k]] = k;
    for (std::size_t i = 0; i < up.faces.size(); ++i) {
        if (!up.faces[i].genuine)
            continue;
        std::vector<Integer> back = up.translation[i];
        for (auto& v : back)
            v = -v;
        std::size_t base = up.translate(i, back);
        if (base == Upstairs::npos)
            continue;  // lies near the window edge; never reached from a canonical star
        up.orbit[i] = orbit_of_canonical.at(base);
    }

    std::vector<int> dim_count(n + 1, 0);
    for (std::size_t k = 0; k < canonical.size(); ++k) {
        const auto& f = up.faces[canonical[k]];
        FaceRecord rec;
        rec.dim = f.dim;
        rec.sample = f.sample;
        rec.lift = canonical[k];
        const char* prefix = f.dim == 0 ? "v" : (f.dim == static_cast<int>(n) ? "C" : "e");
        rec.label = prefix + std::to_string(dim_count[static_cast<std::size_t>(f.dim)]++);
        if (f.dim != 0 && f.dim != static_cast<int>(n) && n > 2)
            rec.label = "f" + std::to_string(f.dim) + "_" + rec.label.substr(1);
        std::vector<std::size_t> containing;
        for (std::size_t i = 0; i < f.signs.size(); ++i)
            if (f.signs[i] == 0 && up.submanifold_of[i] >= 0)
                containing.push_back(static_cast<std::size_t>(up.submanifold_of[i]));
        std::sort(containing.begin(), containing.end());
        containing.erase(std::unique(containing.begin(), containing.end()), containing.end());
        rec.containing = std::move(containing);
        fd.faces.push_back(std::move(rec));
    }
    for (std::size_t c : canonical)
        for (std::size_t g : up.faces[c].above)
            if (!up.faces[g].genuine || up.orbit[g] == Upstairs::npos)
                throw ConsistencyError("window too small: the star of a canonical lift leaves the window");

    detail::build_face_category(fd, canonical);
    detail::check_boundary_completeness(fd);
    long long chi = 0;
    for (const auto& f : fd.faces)
        chi += f.dim % 2 == 0 ? 1 : -1;
    if (chi != 0)
        throw ConsistencyError("periodic_quotient: face counts give Euler characteristic " +
                               std::to_string(chi) + " instead of 0 (window too small)");
    return fd;
}

inline FaceData build_faces(const ArrangementModel& model, const EnumerationOptions& options = {},
                            const WindowOptions& window = {})
{
    return std::visit(
        [&](const auto& m) -> FaceData {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, HyperplaneArrangement>)
                return enumerate_faces(m, options);
            else if constexpr (std::is_same_v<T, SphereModel>)
                return sphere_faces(m, options);
            else
                return periodic_quotient(m, window);
        },
        model);
}

}  // namespace arrtop
