#include "doctest.h"

#include "curvtess/patch.hpp"
#include "curvtess/io.hpp"

using namespace curvtess;

namespace {
std::vector<std::vector<std::string>> cube_faces() {
    return {{"a", "b", "c", "d"}, {"e", "f", "g", "h"}, {"a", "b", "f", "e"},
            {"b", "c", "g", "f"}, {"c", "d", "h", "g"}, {"d", "a", "e", "h"}};
}
} // namespace

TEST_CASE("single triangle") {
    Patch p = Patch::build({{"A", "B", "C"}});
    CHECK(p.vertex_count() == 3);
    CHECK(p.edge_count() == 3);
    CHECK(p.face_count() == 1);
    for (int v = 0; v < 3; ++v) CHECK(p.status(v) == VertexStatus::Rim);
    CHECK(p.topology() == PatchTopology::Disk);
    CHECK(validate_tessellation(p).clean());
}

TEST_CASE("cube is a closed sphere patch") {
    Patch p = Patch::build(cube_faces());
    CHECK(p.vertex_count() == 8);
    CHECK(p.edge_count() == 12);
    CHECK(p.face_count() == 6);
    CHECK(p.euler_characteristic() == 2);
    CHECK(p.topology() == PatchTopology::Sphere);
    for (int v = 0; v < 8; ++v) {
        CHECK(p.status(v) == VertexStatus::Interior);
        auto pat = pattern_at(p, v);
        CHECK(pat.kind == Pattern::Kind::Interior);
        CHECK(pat.degrees == std::vector<int>{4, 4, 4});
    }
    CHECK(validate_tessellation(p).clean());
    CHECK_THROWS_AS(rim_walk(p), std::invalid_argument);
}

TEST_CASE("build errors") {
    CHECK_THROWS_AS(Patch::build({{"a", "b"}}), PatchBuildError);
    CHECK_THROWS_AS(Patch::build({{"a", "b", "c"}, {"a", "b", "c"}}), PatchBuildError);
    CHECK_THROWS_AS(Patch::build({{"a", "b", "c", "a", "d"}}), PatchBuildError);
    // edge in three faces
    CHECK_THROWS_AS(Patch::build({{"a", "b", "c"}, {"a", "b", "d"}, {"a", "b", "e"}}),
                    PatchBuildError);
    // two quadrilaterals sharing two edges
    Patch bad = Patch::build({{"a", "b", "c", "d"}, {"a", "b", "c", "e"}},
                             {}, Patch::BuildMode::Permissive);
    CHECK(!validate_tessellation(bad).clean());
}

TEST_CASE("two faces meeting in two disjoint vertices violate condition iii") {
    // two quadrilaterals sharing vertices a and c but no edge
    Patch p = Patch::build({{"a", "x", "c", "y"}, {"a", "u", "c", "v"}}, {},
                           Patch::BuildMode::Permissive);
    auto rep = validate_tessellation(p);
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.code == "condition-iii") found = true;
    CHECK(found);
}

TEST_CASE("pattern_at rejects rim vertices") {
    Patch p = Patch::build({{"A", "B", "C"}});
    CHECK_THROWS_AS(pattern_at(p, 0), std::invalid_argument);
}

TEST_CASE("ball radii") {
    Patch p = Patch::build(cube_faces());
    CHECK(ball(p, 0, 0) == std::vector<int>{0});
    CHECK(ball(p, 0, 1).size() == 4);  // cube vertex: itself + 3 neighbours
    CHECK(ball(p, 0, 2).size() == 7);
    CHECK(ball(p, 0, 3).size() == 8);
    // monotone
    for (int r = 0; r < 3; ++r) {
        auto small = ball(p, 0, r);
        auto big = ball(p, 0, r + 1);
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
}

TEST_CASE("hexagon rim walk") {
    Patch p = Patch::build({{"a", "b", "c", "d", "e", "f"}});
    auto comps = rim_walk(p);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].cyclic);
    CHECK(comps[0].vertices.size() == 6);
}

TEST_CASE("surface boundary declaration with corners") {
    // two squares in a row; declare the bottom edge vertices as surface
    // boundary: b0..b2 with b0,b2 also rim corners
    // t0 - t1 - t2
    // |     |    |
    // b0 - b1 - b2
    Patch p = Patch::build({{"b0", "b1", "t1", "t0"}, {"b1", "b2", "t2", "t1"}},
                           {"b0", "b1", "b2"});
    CHECK(p.status(*p.vertex_id("b1")) == VertexStatus::SurfaceBoundary);
    CHECK(p.status(*p.vertex_id("b0")) == VertexStatus::Rim); // corner
    CHECK(p.status(*p.vertex_id("b2")) == VertexStatus::Rim); // corner
    CHECK(p.status(*p.vertex_id("t1")) == VertexStatus::Rim);
    auto pat = pattern_at(p, *p.vertex_id("b1"));
    CHECK(pat.kind == Pattern::Kind::SurfaceBoundary);
    CHECK(pat.degrees == std::vector<int>{4, 4});
    // rim walk: one linear component from b0 around the top to b2
    auto comps = rim_walk(p);
    REQUIRE(comps.size() == 1);
    CHECK(!comps[0].cyclic);
    CHECK(comps[0].vertices.size() == 5); // b2 t2 t1 t0 b0
}

TEST_CASE("tess round trip") {
    TessDocument doc;
    doc.faces = cube_faces();
    std::string text = serialize_tess(doc);
    TessDocument back = parse_tess(text);
    CHECK(back.faces == doc.faces);
    CHECK(serialize_tess(back) == text);
}

TEST_CASE("tess parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_tess("face a b\n"), ParseError);
    try {
        parse_tess("face a b c\nnonsense x\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}
