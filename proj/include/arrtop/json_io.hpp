#pragma once

// JSON reading and writing for models, permutations and stage results.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrtop/category.hpp"
#include "arrtop/cell_complex.hpp"
#include "arrtop/homology.hpp"
#include "arrtop/lattice.hpp"
#include "arrtop/mh_check.hpp"
#include "arrtop/models.hpp"
#include "arrtop/pi1.hpp"
#include "arrtop/salvetti.hpp"

namespace arrtop {

using Json = nlohmann::json;

namespace detail {

inline Rational json_rational(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    throw SchemaError(where + ": expected an integer or a \"p/q\" string");
}

inline const Json& require_field(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline std::size_t json_size(const Json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw SchemaError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

inline Json json_rationals(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

inline Json json_integers(const std::vector<Integer>& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

}  // namespace detail

/**
 * Model file: {"model": "hyperplane"|"sphere"|"periodic", "dim": n, ...}.
 * Hyperplane and periodic models list "hyperplanes" / "families" with
 * normals of length n; a sphere model of dimension n lists central
 * hyperplanes in R^{n+1}.  Periodic normals must be integers.
 */
inline ArrangementModel model_from_json(const Json& j)
{
    if (!j.is_object())
        throw SchemaError("model: top level must be an object");
    const auto& kind_field = detail::require_field(j, "model", "model");
    if (!kind_field.is_string())
        throw SchemaError("model: \"model\" must be a string");
    const auto kind = kind_field.get<std::string>();
    const std::size_t dim = detail::json_size(detail::require_field(j, "dim", "model"), "model.dim");

    auto read_planes = [&](const std::string& key, std::size_t width) {
        const auto& list = detail::require_field(j, key, "model");
        if (!list.is_array())
            throw SchemaError("model." + key + ": expected an array");
        std::vector<Hyperplane> planes;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "model." + key + "[" + std::to_string(i) + "]";
            const auto& normal = detail::require_field(list[i], "normal", where);
            if (!normal.is_array() || normal.size() != width)
                throw SchemaError(where + ".normal: expected " + std::to_string(width) + " entries");
            Hyperplane h;
            for (std::size_t k = 0; k < normal.size(); ++k)
                h.normal.push_back(detail::json_rational(normal[k], where + ".normal"));
            h.offset = list[i].contains("offset") ? detail::json_rational(list[i]["offset"], where + ".offset")
                                                  : Rational(0);
            planes.push_back(std::move(h));
        }
        return planes;
    };

    if (kind == "hyperplane")
        return HyperplaneArrangement{dim, read_planes("hyperplanes", dim)};
    if (kind == "sphere") {
        auto planes = read_planes("hyperplanes", dim + 1);
        for (std::size_t i = 0; i < planes.size(); ++i)
            if (planes[i].offset != 0)
                throw SchemaError("model.hyperplanes[" + std::to_string(i) + "]: sphere hyperplanes are central");
        return SphereModel{HyperplaneArrangement{dim + 1, std::move(planes)}};
    }
    if (kind == "periodic") {
        PeriodicModel p;
        p.dim = dim;
        for (auto& h : read_planes("families", dim)) {
            PeriodicFamily f;
            for (const auto& x : h.normal) {
                if (denominator(x) != 1)
                    throw SchemaError("model.families: periodic normals must be integers");
                f.normal.push_back(numerator(x));
            }
            f.offset = h.offset;
            p.families.push_back(std::move(f));
        }
        return p;
    }
    throw SchemaError("model: unknown kind \"" + kind + "\"");
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

inline ArrangementModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

/// {"sheets": n, "permutations": [[one-line, 1-based], ...]}
inline PermutationCover permutations_from_json(const Json& j)
{
    PermutationCover rho;
    rho.sheets = detail::json_size(detail::require_field(j, "sheets", "perms"), "perms.sheets");
    const auto& list = detail::require_field(j, "permutations", "perms");
    if (!list.is_array())
        throw SchemaError("perms.permutations: expected an array");
    for (std::size_t g = 0; g < list.size(); ++g) {
        const std::string where = "perms.permutations[" + std::to_string(g) + "]";
        if (!list[g].is_array())
            throw SchemaError(where + ": expected an array");
        std::vector<std::size_t> perm;
        for (const auto& x : list[g]) {
            std::size_t image = detail::json_size(x, where);
            if (image == 0)
                throw SchemaError(where + ": sheets are numbered from 1");
            perm.push_back(image - 1);
        }
        rho.permutations.push_back(std::move(perm));
    }
    return rho;
}

inline Json to_json(const HomologyResult& h)
{
    Json torsion = Json::array();
    for (const auto& t : h.torsion)
        torsion.push_back(detail::json_integers(t));
    return {{"betti", h.betti}, {"torsion", torsion}, {"euler_characteristic", h.euler_characteristic()}};
}

inline Json to_json(const AcyclicCategory& c)
{
    Json objects = Json::array();
    for (const auto& o : c.objects())
        objects.push_back({{"label", o.label}, {"dim", o.dim}});
    Json morphisms = Json::array();
    for (const auto& m : c.morphisms())
        morphisms.push_back({{"source", m.source}, {"target", m.target}, {"label", m.label}});
    return {{"objects", objects}, {"morphisms", morphisms}};
}

inline Json to_json(const Poset& p)
{
    Json elements = Json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        elements.push_back({{"label", p.label(i)}, {"rank", p.rank(i)}});
    Json covers = Json::array();
    for (auto [a, b] : p.covers())
        covers.push_back({a, b});
    return {{"elements", elements}, {"covers", covers}};
}

inline Json to_json(const FaceData& fd)
{
    Json faces = Json::array();
    std::vector<std::size_t> counts(fd.dim + 1, 0);
    for (const auto& f : fd.faces) {
        ++counts[static_cast<std::size_t>(f.dim)];
        faces.push_back({{"label", f.label},
                         {"dim", f.dim},
                         {"sample", detail::json_rationals(f.sample)},
                         {"containing", f.containing}});
    }
    Json morphisms = Json::array();
    for (MorphismId m = 0; m < fd.category.morphism_count(); ++m) {
        const auto& mor = fd.category.morphism(m);
        Json entry{{"source", mor.source}, {"target", mor.target}, {"label", mor.label}};
        if (m < fd.morphism_translation.size() && !fd.morphism_translation[m].empty())
            entry["translation"] = detail::json_integers(fd.morphism_translation[m]);
        morphisms.push_back(std::move(entry));
    }
    return {{"kind", to_string(fd.kind)},
            {"dim", fd.dim},
            {"rank", fd.rank},
            {"submanifolds", fd.submanifolds},
            {"regular", fd.regular},
            {"separating", fd.separating},
            {"face_counts", counts},
            {"faces", faces},
            {"morphisms", morphisms}};
}

inline Json to_json(const SalvettiCategory& sal)
{
    Json objects = Json::array();
    for (ObjectId i = 0; i < sal.objects.size(); ++i) {
        const auto& o = sal.objects[i];
        Json entry{{"label", sal.category.object(i).label}, {"face", o.face}, {"chamber", o.chamber}, {"grade", o.grade}};
        if (o.to_chamber)
            entry["morphism"] = *o.to_chamber;
        objects.push_back(std::move(entry));
    }
    Json morphisms = Json::array();
    for (const auto& m : sal.category.morphisms())
        morphisms.push_back({{"source", m.source}, {"target", m.target}});
    long long chi = 0;
    const auto grades = sal.grade_counts();
    for (std::size_t k = 0; k < grades.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(grades[k]);
    return {{"objects", objects}, {"morphisms", morphisms}, {"grade_counts", grades}, {"euler_from_counts", chi}};
}

inline Json to_json(const MhReport& r)
{
    Json nearest = Json::array();
    for (const auto& [key, value] : r.global.nearest)
        nearest.push_back({{"vertex", key.first}, {"cell", key.second}, {"candidates", value}});
    Json farthest = Json::array();
    for (const auto& [key, value] : r.global.farthest)
        farthest.push_back({{"vertex", key.first}, {"cell", key.second}, {"farthest", value}});
    Json violations = Json::array();
    for (const auto& c : r.violations)
        violations.push_back({{"condition", c.condition},
                              {"vertex", c.vertex},
                              {"cell", c.cell},
                              {"witness", c.witness},
                              {"contexts", c.contexts}});
    return {{"qmh", r.qmh},           {"lmh", r.lmh},         {"mh", r.mh},
            {"bipartite", r.bipartite}, {"connected", r.connected}, {"nearest", nearest},
            {"farthest", farthest},   {"violations", violations}};
}

/// Relators as signed generator numbers: k means generator k-1, -k its inverse.
inline Json to_json(const GroupPresentation& p)
{
    Json relators = Json::array();
    for (const auto& r : p.relators) {
        Json word = Json::array();
        for (const auto& l : r)
            word.push_back(static_cast<long long>(l.index + 1) * l.power);
        relators.push_back(std::move(word));
    }
    return {{"base_vertex", p.base_vertex},
            {"tree_edges", p.tree_edges},
            {"generators", p.generators},
            {"relators", relators},
            {"abelianization", {{"free_rank", abelianization(p).free_rank},
                                {"torsion", detail::json_integers(abelianization(p).torsion)}}}};
}

inline Json to_json(const CoverReport& r)
{
    return {{"vertices", r.cover.vertices.size()},
            {"edges", r.cover.edges.size()},
            {"faces", r.cover.faces.size()},
            {"star_bijection", r.star_bijection},
            {"transitive", r.transitive},
            {"connected", r.connected},
            {"base_euler", r.base_euler},
            {"cover_euler", r.cover_euler},
            {"euler_multiplicative", r.euler_multiplicative},
            {"homology", to_json(r.homology)}};
}

inline Json to_json(const WhitneyData& w)
{
    return {{"chambers", w.chambers}, {"bounded", w.bounded}, {"betti", w.betti}};
}

/// Oriented 1-skeleton as a DOT digraph.
inline std::string to_dot(const TwoComplex& t, const std::string& name = "arrangement_graph")
{
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (std::size_t v = 0; v < t.vertices.size(); ++v)
        out << "  v" << v << " [label=\"" << t.vertices[v] << "\"];\n";
    for (const auto& e : t.edges)
        out << "  v" << e.tail << " -> v" << e.head << " [label=\"" << e.label << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace arrtop
