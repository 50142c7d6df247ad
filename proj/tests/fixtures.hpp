#pragma once

// Arrangement fixtures shared by the test binaries.

#include <string>
#include <utility>
#include <vector>

#include "arrtop/cell_complex.hpp"
#include "arrtop/models.hpp"

namespace fixtures {

using arrtop::HyperplaneArrangement;
using arrtop::PeriodicModel;
using arrtop::Rational;
using arrtop::SphereModel;

struct Plane {
    std::vector<long> normal;
    Rational offset = 0;
};

inline HyperplaneArrangement affine(std::size_t dim, const std::vector<Plane>& planes)
{
    HyperplaneArrangement a;
    a.dim = dim;
    for (const auto& p : planes) {
        arrtop::RationalVector normal;
        for (long v : p.normal)
            normal.push_back(Rational(v));
        a.hyperplanes.push_back({normal, p.offset});
    }
    return a;
}

inline SphereModel sphere(std::size_t ambient_dim, const std::vector<std::vector<long>>& normals)
{
    std::vector<Plane> planes;
    for (const auto& n : normals)
        planes.push_back({n, 0});
    return SphereModel{affine(ambient_dim, planes)};
}

inline PeriodicModel periodic(std::size_t dim, const std::vector<Plane>& families)
{
    PeriodicModel p;
    p.dim = dim;
    for (const auto& f : families) {
        std::vector<arrtop::Integer> normal;
        for (long v : f.normal)
            normal.push_back(arrtop::Integer(v));
        p.families.push_back({normal, f.offset});
    }
    return p;
}

// Lines in R^2.
inline HyperplaneArrangement cross() { return affine(2, {{{1, 0}, 0}, {{0, 1}, 0}}); }
inline HyperplaneArrangement generic3() { return affine(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}}); }
inline HyperplaneArrangement concurrent3() { return affine(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}}); }
inline HyperplaneArrangement empty_plane() { return affine(2, {}); }
inline HyperplaneArrangement parallel_pair() { return affine(2, {{{1, 0}, 0}, {{1, 0}, 1}}); }
inline HyperplaneArrangement generic4()
{
    return affine(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}, {{1, -1}, 2}});
}
inline HyperplaneArrangement grid5()
{
    return affine(2, {{{1, 0}, 0}, {{1, 0}, 1}, {{0, 1}, 0}, {{0, 1}, 1}, {{1, 1}, 1}});
}
inline HyperplaneArrangement braid_like6()
{
    return affine(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}, {{1, -1}, 1}, {{1, 2}, 3}, {{2, -1}, -2}});
}
inline HyperplaneArrangement pencil_plus6()
{
    return affine(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}, {{1, -1}, 0}, {{1, 0}, 2}, {{0, 1}, -1}});
}

// Planes in R^3.
inline HyperplaneArrangement boolean3() { return affine(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}}); }
inline HyperplaneArrangement generic4_space()
{
    return affine(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{1, 1, 1}, 1}});
}
inline HyperplaneArrangement braid3_space()
{
    return affine(3, {{{1, -1, 0}, 0}, {{0, 1, -1}, 0}, {{1, 0, -1}, 0}, {{1, 1, 1}, 1}});
}
inline HyperplaneArrangement five_planes()
{
    return affine(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{1, 1, 1}, 1}, {{1, -1, 0}, 1}});
}

// Non-essential examples.
inline HyperplaneArrangement single_plane_space() { return affine(3, {{{1, 0, 0}, 0}}); }
inline HyperplaneArrangement stripes() { return affine(2, {{{1, 0}, 0}, {{1, 0}, 1}}); }

// Sphere models.
inline SphereModel two_great_circles() { return sphere(3, {{1, 0, 0}, {0, 1, 0}}); }
inline SphereModel three_great_circles() { return sphere(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
inline SphereModel four_great_circles() { return sphere(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}); }
inline SphereModel pencil_great_circles() { return sphere(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}); }
/// A diameter of S^1: the circle cut in two antipodal points by one line.
inline SphereModel circle_two_points() { return sphere(2, {{1, 0}}); }
inline SphereModel circle_four_points() { return sphere(2, {{1, 0}, {0, 1}}); }

// Periodic models.
inline PeriodicModel circle_one_point() { return periodic(1, {{{1}, 0}}); }
inline PeriodicModel circle_two_points_periodic() { return periodic(1, {{{1}, 0}, {{1}, Rational(1, 2)}}); }
inline PeriodicModel torus_three_circles() { return periodic(2, {{{1, 2}, 0}, {{2, 1}, 0}, {{1, -1}, 0}}); }
inline PeriodicModel torus_grid() { return periodic(2, {{{1, 0}, 0}, {{0, 1}, 0}}); }
inline PeriodicModel torus_grid_fine()
{
    return periodic(2, {{{1, 0}, 0}, {{1, 0}, Rational(1, 2)}, {{0, 1}, 0}, {{0, 1}, Rational(1, 2)}});
}

struct Named {
    std::string name;
    arrtop::ArrangementModel model;
};

/// Hyperplane fixtures with at most 6 lines in R^2 or 5 planes in R^3, all essential.
inline std::vector<Named> hyperplane_fixtures()
{
    return {
        {"cross", cross()},
        {"generic3", generic3()},
        {"concurrent3", concurrent3()},
        {"generic4", generic4()},
        {"grid5", grid5()},
        {"braid_like6", braid_like6()},
        {"pencil_plus6", pencil_plus6()},
        {"boolean3", boolean3()},
        {"generic4_space", generic4_space()},
        {"braid3_space", braid3_space()},
        {"five_planes", five_planes()},
    };
}

inline std::vector<Named> sphere_fixtures()
{
    return {
        {"two_great_circles", two_great_circles()},
        {"three_great_circles", three_great_circles()},
        {"four_great_circles", four_great_circles()},
        {"pencil_great_circles", pencil_great_circles()},
        {"circle_two_points", circle_two_points()},
        {"circle_four_points", circle_four_points()},
    };
}

inline std::vector<Named> periodic_fixtures()
{
    return {
        {"circle_one_point", circle_one_point()},
        {"circle_two_points_periodic", circle_two_points_periodic()},
        {"torus_three_circles", torus_three_circles()},
        {"torus_grid", torus_grid()},
        {"torus_grid_fine", torus_grid_fine()},
    };
}

/// Hyperplane and sphere fixtures: every submanifold separates.
inline std::vector<Named> separated_fixtures()
{
    auto all = hyperplane_fixtures();
    all.push_back({"empty_plane", empty_plane()});
    all.push_back({"parallel_pair", parallel_pair()});
    for (auto& s : sphere_fixtures())
        all.push_back(std::move(s));
    return all;
}

inline std::vector<Named> all_fixtures()
{
    auto all = separated_fixtures();
    for (auto& p : periodic_fixtures())
        all.push_back(std::move(p));
    return all;
}

/// Octagon 0..7 on a Hamiltonian circuit of the 3-cube, plus the four remaining cube edges.
inline arrtop::CellGraphComplex octagon_with_chords(bool with_trapezoid)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < 8; ++i)
        edges.push_back({i, (i + 1) % 8});
    edges.push_back({0, 3});
    edges.push_back({2, 5});
    edges.push_back({4, 7});
    edges.push_back({1, 6});
    std::vector<std::vector<std::size_t>> faces{{0, 1, 2, 3, 4, 5, 6, 7}};
    if (with_trapezoid)
        faces.push_back({0, 1, 2, 8});
    return arrtop::polygon_complex(8, edges, faces);
}

/// QMH but not LMH.
inline arrtop::CellGraphComplex not_lmh() { return octagon_with_chords(true); }
/// QMH and LMH but not MH.
inline arrtop::CellGraphComplex not_mh() { return octagon_with_chords(false); }

}  // namespace fixtures
