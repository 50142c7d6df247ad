#include <catch_amalgamated.hpp>

#include <array>
#include <random>
#include <set>

#include "arrtop/lattice.hpp"
#include "arrtop/models.hpp"
#include "arrtop/nerve.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace arrtop;

namespace {

std::vector<std::size_t> counts_by_dim(const FaceData& fd)
{
    std::vector<std::size_t> out(fd.dim + 1, 0);
    for (const auto& f : fd.faces)
        ++out[static_cast<std::size_t>(f.dim)];
    return out;
}

std::vector<std::size_t> counts_by_rank(const Poset& p)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto r = static_cast<std::size_t>(p.rank(i));
        if (out.size() <= r)
            out.resize(r + 1, 0);
        ++out[r];
    }
    return out;
}

}  // namespace

TEST_CASE("faces of the coordinate cross")
{
    auto fd = enumerate_faces(fixtures::cross());
    CHECK(fd.faces.size() == 9);
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{1, 4, 4});
    CHECK(fd.regular);
    CHECK(fd.category.is_poset());
}

TEST_CASE("faces of three generic lines match a planar line-arrangement count")
{
    auto fd = enumerate_faces(fixtures::generic3());
    auto expected = oracle::line_arrangement_counts({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
    CHECK(counts_by_dim(fd) == expected);
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{3, 9, 7});
    CHECK(fd.chambers().size() == whitney_oracle(fixtures::generic3()).chambers);
}

TEST_CASE("empty arrangement has a single chamber")
{
    auto fd = enumerate_faces(fixtures::empty_plane());
    REQUIRE(fd.faces.size() == 1);
    CHECK(fd.is_chamber(0));
    CHECK(fd.category.morphism_count() == 0);
}

TEST_CASE("enumeration bound is enforced")
{
    HyperplaneArrangement many;
    many.dim = 1;
    for (int i = 0; i < 13; ++i)
        many.hyperplanes.push_back({{Rational(1)}, Rational(i)});
    CHECK_THROWS_AS(enumerate_faces(many), ModelError);
    CHECK_NOTHROW(enumerate_faces(many, EnumerationOptions{13}));
}

TEST_CASE("duplicate hyperplanes are rejected up to scaling")
{
    auto dup = fixtures::affine(2, {{{1, 0}, 0}, {{2, 0}, 0}});
    CHECK_THROWS_AS(enumerate_faces(dup), ModelError);
}

TEST_CASE("feasibility of sign vectors")
{
    auto origin = feasible({0, 0}, fixtures::cross());
    REQUIRE(origin);
    CHECK((*origin)[0] == 0);
    CHECK((*origin)[1] == 0);

    auto slab = fixtures::affine(1, {{{1}, 0}, {{1}, 1}});
    auto inside = feasible({1, -1}, slab);
    REQUIRE(inside);
    CHECK((*inside)[0] > 0);
    CHECK((*inside)[0] < 1);
    CHECK(sign_vector_of(slab, *inside) == SignVector{1, -1});
    CHECK_FALSE(feasible({-1, 1}, slab));
}

TEST_CASE("every sample point realizes its sign vector")
{
    for (const auto& fx : fixtures::hyperplane_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        const auto& a = fd.upstairs.arrangement;
        for (const auto& f : fd.upstairs.faces)
            CHECK(sign_vector_of(a, f.sample) == f.signs);
    }
}

TEST_CASE("two great circles on the 2-sphere")
{
    auto fd = sphere_faces(fixtures::two_great_circles());
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{2, 4, 4});
    CHECK(fd.kind == ModelKind::sphere);
    CHECK(fd.regular);
}

TEST_CASE("three coordinate great circles give the octahedral sphere")
{
    auto fd = sphere_faces(fixtures::three_great_circles());
    // Nonzero sign vectors of three coordinates, grouped by the number of zeros.
    std::vector<std::size_t> expected(3, 0);
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c) {
                int zeros = (a == 0) + (b == 0) + (c == 0);
                if (zeros < 3)
                    ++expected[static_cast<std::size_t>(2 - zeros)];
            }
    CHECK(counts_by_dim(fd) == expected);
    CHECK(expected == std::vector<std::size_t>{6, 12, 8});
}

TEST_CASE("a lone great circle is not a cellular stratification")
{
    CHECK_THROWS_AS(sphere_faces(fixtures::sphere(3, {{1, 0, 0}})), ModelError);
}

TEST_CASE("a line through the origin cuts the circle in two poles")
{
    auto fd = sphere_faces(fixtures::circle_two_points());
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{2, 2});
    CHECK(fd.regular);
    for (ObjectId v = 0; v < fd.faces.size(); ++v)
        if (fd.faces[v].dim == 0)
            for (ObjectId c : fd.chambers())
                CHECK(fd.less_equal(v, c));
}

TEST_CASE("one point on the circle")
{
    auto fd = build_faces(fixtures::circle_one_point());
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{1, 1});
    CHECK(fd.category.morphism_count() == 2);
    CHECK_FALSE(fd.regular);
    CHECK(validate(fd.category).ok());
}

TEST_CASE("two points on the circle as a periodic model")
{
    auto fd = build_faces(fixtures::circle_two_points_periodic());
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{2, 2});
    CHECK(fd.category.morphism_count() == 4);
    CHECK(fd.regular);
}

TEST_CASE("three circles on the torus")
{
    auto fd = build_faces(fixtures::torus_three_circles());
    CHECK(counts_by_dim(fd) == std::vector<std::size_t>{3, 9, 6});
    CHECK(validate(fd.category).ok());
    auto poset = intersection_poset(fd);
    CHECK(counts_by_rank(poset) == std::vector<std::size_t>{1, 3, 3});
}

TEST_CASE("a translation-invariant family is rejected")
{
    PeriodicModel p = fixtures::periodic(2, {{{1, 0}, 0}});
    CHECK_THROWS_AS(build_faces(p), ModelError);
}

TEST_CASE("periodic families are normalized and checked")
{
    CHECK_THROWS_AS(build_faces(fixtures::periodic(1, {{{2}, 0}})), ModelError);
    CHECK_THROWS_AS(build_faces(fixtures::periodic(1, {{{1}, 0}, {{-1}, 0}})), ModelError);
    // Offsets are read modulo 1.
    auto shifted = build_faces(fixtures::periodic(1, {{{1}, Rational(3, 2)}}));
    CHECK(counts_by_dim(shifted) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("a small window is reported as an internal consistency failure")
{
    CHECK_THROWS_AS(periodic_quotient(fixtures::torus_three_circles(), WindowOptions{0, 1}), ConsistencyError);
}

TEST_CASE("intersection posets")
{
    auto cross = intersection_poset(enumerate_faces(fixtures::cross()));
    CHECK(cross.size() == 4);
    CHECK(counts_by_rank(cross) == std::vector<std::size_t>{1, 2, 1});
    auto concurrent = intersection_poset(enumerate_faces(fixtures::concurrent3()));
    CHECK(counts_by_rank(concurrent) == std::vector<std::size_t>{1, 3, 1});
    // The ambient element is the unique minimum.
    CHECK(cross.label(0) == "ambient");
    for (std::size_t i = 1; i < cross.size(); ++i)
        CHECK(cross.less(0, i));
}

TEST_CASE("sphere with poles: the pole pair is two rank-l elements")
{
    auto poset = intersection_poset(sphere_faces(fixtures::pencil_great_circles()));
    CHECK(counts_by_rank(poset) == std::vector<std::size_t>{1, 3, 2});
}

TEST_CASE("Whitney oracle on small arrangements")
{
    auto cross = whitney_oracle(fixtures::cross());
    CHECK(cross.chambers == 4);
    CHECK(cross.bounded == 0);
    CHECK(cross.betti == std::vector<long long>{1, 2, 1});
    auto generic = whitney_oracle(fixtures::generic3());
    CHECK(generic.chambers == 7);
    CHECK(generic.bounded == 1);
    CHECK(generic.betti == std::vector<long long>{1, 3, 3});
    auto concurrent = whitney_oracle(fixtures::concurrent3());
    CHECK(concurrent.chambers == 6);
    CHECK(concurrent.bounded == 0);
    CHECK(concurrent.betti == std::vector<long long>{1, 3, 2});
}

TEST_CASE("essentialization")
{
    auto line = essentialize(fixtures::single_plane_space());
    CHECK(line.dim == 1);
    REQUIRE(line.hyperplanes.size() == 1);
    auto pair = essentialize(fixtures::stripes());
    CHECK(pair.dim == 1);
    CHECK(enumerate_faces(pair).faces.size() == 5);
    CHECK_THROWS_AS(essentialize(fixtures::empty_plane()), ModelError);

    for (const auto& a : {fixtures::generic3(), fixtures::stripes(), fixtures::single_plane_space()}) {
        auto before = enumerate_faces(a);
        auto after = enumerate_faces(essentialize(a));
        CHECK(isomorphic(underlying_poset(before.category), underlying_poset(after.category)));
        CHECK(isomorphic(intersection_poset(before), intersection_poset(after)));
    }
}

TEST_CASE("property: Zaslavsky chamber counts agree with the enumeration")
{
    for (const auto& fx : fixtures::hyperplane_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        CHECK(fd.chambers().size() == whitney_oracle(std::get<HyperplaneArrangement>(fx.model)).chambers);
    }
}

TEST_CASE("property: face categories validate and regular ones are posets")
{
    for (const auto& fx : fixtures::all_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        CHECK(validate(fd.category).ok());
        if (fd.regular)
            CHECK(fd.category.is_poset());
        // Every non-chamber face sits below some chamber.
        for (ObjectId f = 0; f < fd.faces.size(); ++f) {
            if (fd.is_chamber(f))
                continue;
            bool reaches = false;
            for (MorphismId m : fd.category.out_morphisms(f))
                reaches = reaches || fd.is_chamber(fd.category.morphism(m).target);
            CHECK(reaches);
        }
    }
}

TEST_CASE("property: random planar line arrangements match the line-count oracle")
{
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> coef(-3, 3);
    int tested = 0;
    while (tested < 25) {
        std::vector<fixtures::Plane> planes;
        std::vector<std::array<long, 3>> lines;
        std::size_t k = 2 + static_cast<std::size_t>(tested % 4);
        for (std::size_t i = 0; i < k; ++i) {
            long a = coef(rng), b = coef(rng), c = coef(rng);
            if (a == 0 && b == 0)
                a = 1;
            planes.push_back({{a, b}, Rational(c)});
            lines.push_back({a, b, c});
        }
        auto arrangement = fixtures::affine(2, planes);
        try {
            validate_arrangement(arrangement);
        } catch (const ModelError&) {
            continue;  // duplicate lines drawn
        }
        auto fd = enumerate_faces(arrangement);
        CHECK(counts_by_dim(fd) == oracle::line_arrangement_counts(lines));
        CHECK(fd.chambers().size() == whitney_oracle(arrangement).chambers);
        ++tested;
    }
}

TEST_CASE("periodic circles reproduce the point-on-circle counts")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<fixtures::Plane> families;
        for (std::size_t i = 0; i < n; ++i)
            families.push_back({{1}, Rational(static_cast<long>(i), static_cast<long>(n))});
        auto fd = build_faces(fixtures::periodic(1, families));
        CHECK(counts_by_dim(fd) == std::vector<std::size_t>{n, n});
        CHECK(fd.category.morphism_count() == 2 * n);
        CHECK(fd.regular == (n >= 2));
    }
}
