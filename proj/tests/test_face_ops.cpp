#include <catch_amalgamated.hpp>

#include <set>

#include "arrtop/face_ops.hpp"
#include "arrtop/models.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace arrtop;

namespace {

ObjectId face_with_signs(const FaceData& fd, const SignVector& s)
{
    for (ObjectId f = 0; f < fd.faces.size(); ++f)
        if (fd.lift_of(f).pole == 0 && fd.lift_of(f).signs == s)
            return f;
    FAIL("no face with signs " << sign_string(s));
    return 0;
}

/// Sign-vector composition, written out independently of the library.
SignVector compose_signs(const SignVector& f, const SignVector& c)
{
    SignVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = f[i] != 0 ? f[i] : c[i];
    return out;
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("separation sets on the cross")
{
    auto fd = enumerate_faces(fixtures::cross());
    auto pp = face_with_signs(fd, {1, 1});
    auto mm = face_with_signs(fd, {-1, -1});
    CHECK(separation(fd, pp, mm) == std::vector<std::size_t>{0, 1});
    CHECK(chamber_distance(fd, pp, mm) == 2);
    CHECK(separation(fd, pp, pp).empty());
    CHECK_THROWS_AS(separation(fd, face_with_signs(fd, {0, 0}), pp), ModelError);
}

TEST_CASE("separation across adjacent quadrants of the sphere")
{
    auto fd = sphere_faces(fixtures::two_great_circles());
    auto c = face_with_signs(fd, {1, 1});
    auto d = face_with_signs(fd, {1, -1});
    CHECK(separation(fd, c, d) == std::vector<std::size_t>{1});
}

TEST_CASE("separation is rejected on periodic models")
{
    auto fd = build_faces(fixtures::circle_two_points_periodic());
    auto ch = fd.chambers();
    CHECK_THROWS_AS(separation(fd, ch[0], ch[1]), ModelError);
}

TEST_CASE("local classes on the cross")
{
    auto fd = enumerate_faces(fixtures::cross());
    CHECK(local_class(fd, face_with_signs(fd, {0, 0})).blocks.size() == 4);
    CHECK(local_class(fd, face_with_signs(fd, {1, 1})).blocks.size() == 1);
    auto edge = local_class(fd, face_with_signs(fd, {1, 0}));
    REQUIRE(edge.blocks.size() == 2);
    CHECK(edge.block_of.at(face_with_signs(fd, {1, 1})) == edge.block_of.at(face_with_signs(fd, {-1, 1})));
    CHECK(edge.block_of.at(face_with_signs(fd, {1, -1})) == edge.block_of.at(face_with_signs(fd, {-1, -1})));
    CHECK(edge.block_of.at(face_with_signs(fd, {1, 1})) != edge.block_of.at(face_with_signs(fd, {1, -1})));
}

TEST_CASE("face action on the cross")
{
    auto fd = enumerate_faces(fixtures::cross());
    auto origin = face_with_signs(fd, {0, 0});
    for (ObjectId c : fd.chambers()) {
        CHECK(face_action(fd, origin, c) == c);
        CHECK(face_action(fd, c, face_with_signs(fd, {1, 1})) == c);
    }
    auto edge = face_with_signs(fd, {1, 0});
    CHECK(face_action(fd, edge, face_with_signs(fd, {-1, -1})) == face_with_signs(fd, {1, -1}));
}

TEST_CASE("far action on the cross")
{
    auto fd = enumerate_faces(fixtures::cross());
    auto origin = face_with_signs(fd, {0, 0});
    CHECK(far_action(fd, origin, face_with_signs(fd, {1, 1})) == face_with_signs(fd, {-1, -1}));
    auto edge = face_with_signs(fd, {1, 0});
    CHECK(far_action(fd, edge, face_with_signs(fd, {-1, -1})) == face_with_signs(fd, {1, 1}));
    for (ObjectId c : fd.chambers())
        CHECK(far_action(fd, c, face_with_signs(fd, {-1, 1})) == c);
}

TEST_CASE("local categories")
{
    auto fd = enumerate_faces(fixtures::cross());
    auto chamber = local_category(fd, face_with_signs(fd, {1, 1}));
    CHECK(chamber.object_count() == 1);
    CHECK(chamber.morphism_count() == 0);
    auto origin = local_category(fd, face_with_signs(fd, {0, 0}));
    CHECK(origin.object_count() == 9);
    CHECK(isomorphic(underlying_poset(origin), underlying_poset(fd.category)));
}

TEST_CASE("local category at a triple point of the torus is three concurrent lines")
{
    auto torus = build_faces(fixtures::torus_three_circles());
    auto concurrent = enumerate_faces(fixtures::concurrent3());
    for (ObjectId f = 0; f < torus.faces.size(); ++f) {
        if (torus.faces[f].dim != 0)
            continue;
        auto local = local_category(torus, f);
        CHECK(validate(local).ok());
        CHECK(local.object_count() == 13);
        CHECK(local.is_poset());
        CHECK(isomorphic(underlying_poset(local), underlying_poset(concurrent.category)));
    }
}

TEST_CASE("local category of a non-regular face keeps both morphisms")
{
    auto fd = build_faces(fixtures::circle_one_point());
    ObjectId v = fd.faces[0].dim == 0 ? 0 : 1;
    auto local = local_category(fd, v);
    CHECK(local.object_count() == 3);
    CHECK(validate(local).ok());
}

TEST_CASE("property: separation sets obey the symmetric-difference law")
{
    for (const auto& fx : fixtures::separated_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        auto ch = fd.chambers();
        for (ObjectId a : ch)
            for (ObjectId b : ch) {
                CHECK(separation(fd, a, b) == separation(fd, b, a));
                for (ObjectId c : ch) {
                    auto ab = as_set(separation(fd, a, b));
                    auto bc = as_set(separation(fd, b, c));
                    std::set<std::size_t> expected;
                    std::set_symmetric_difference(ab.begin(), ab.end(), bc.begin(), bc.end(),
                                                  std::inserter(expected, expected.end()));
                    CHECK(as_set(separation(fd, a, c)) == expected);
                }
            }
    }
}

TEST_CASE("property: chamber distance equals adjacency-graph distance on hyperplane models")
{
    for (const auto& fx : fixtures::hyperplane_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        auto ch = fd.chambers();
        std::map<ObjectId, std::size_t> index;
        for (std::size_t i = 0; i < ch.size(); ++i)
            index[ch[i]] = i;
        std::vector<std::pair<std::size_t, std::size_t>> adjacency;
        for (ObjectId g = 0; g < fd.faces.size(); ++g) {
            if (fd.faces[g].dim != static_cast<int>(fd.dim) - 1)
                continue;
            auto up = chambers_above(fd, g);
            REQUIRE(up.size() == 2);
            adjacency.push_back({index.at(up[0]), index.at(up[1])});
        }
        for (std::size_t i = 0; i < ch.size(); ++i) {
            auto dist = oracle::bfs(ch.size(), adjacency, i);
            for (std::size_t j = 0; j < ch.size(); ++j)
                CHECK(static_cast<int>(chamber_distance(fd, ch[i], ch[j])) == dist[j]);
        }
    }
}

TEST_CASE("property: face action agrees with sign composition on hyperplane models")
{
    for (const auto& fx : fixtures::hyperplane_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        auto table = face_action_table(fd);
        for (ObjectId f = 0; f < fd.faces.size(); ++f)
            for (ObjectId c : fd.chambers()) {
                auto expected = compose_signs(fd.lift_of(f).signs, fd.lift_of(c).signs);
                CHECK(fd.lift_of(table[f][c]).signs == expected);
            }
    }
}

TEST_CASE("property: face action identities and the far-action separation law")
{
    for (const auto& fx : fixtures::separated_fixtures()) {
        CAPTURE(fx.name);
        auto fd = build_faces(fx.model);
        auto table = face_action_table(fd);
        for (ObjectId f = 0; f < fd.faces.size(); ++f)
            for (ObjectId c : fd.chambers()) {
                ObjectId fc = table[f][c];
                CHECK(fd.less_equal(f, fc));
                CHECK(table[f][fc] == fc);
                for (ObjectId g = 0; g < fd.faces.size(); ++g)
                    if (fd.less_equal(f, g))
                        CHECK(table[g][fc] == table[g][c]);
                ObjectId far = far_action(fd, f, c);
                CHECK(separation(fd, fc, far) == fd.faces[f].containing);
            }
    }
}

TEST_CASE("property: on the sphere with poles the face action is the identity at a pole")
{
    auto fd = sphere_faces(fixtures::pencil_great_circles());
    for (ObjectId f = 0; f < fd.faces.size(); ++f)
        if (fd.lift_of(f).pole != 0)
            for (ObjectId c : fd.chambers())
                CHECK(face_action(fd, f, c) == c);
}
