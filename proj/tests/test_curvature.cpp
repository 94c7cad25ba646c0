#include "doctest.h"

#include "curvtess/curvature.hpp"
#include "curvtess/patch.hpp"

#include <random>

using namespace curvtess;

TEST_CASE("interior curvature values") {
    CHECK(curvature_interior(make_interior_pattern({3, 3, 3})) == Rational(1, 2));
    CHECK(curvature_interior(make_interior_pattern({6, 6, 6})) == Rational(0));
    CHECK(curvature_interior(make_interior_pattern({3, 4, 12})) == Rational(1, 6));
    CHECK(curvature_interior(make_interior_pattern({3, 3, 3, 3, 3, 3})) == Rational(0));
    CHECK(curvature_interior(make_interior_pattern({4, 4, 4})) == Rational(1, 4));
    // order of the raw fan must not matter
    CHECK(curvature_interior(make_interior_pattern({12, 3, 4})) == Rational(1, 6));
    CHECK_THROWS_AS(curvature_interior(make_boundary_pattern({3, 4})), std::invalid_argument);
}

TEST_CASE("boundary curvature values") {
    CHECK(curvature_boundary(make_boundary_pattern({3, 4})) == Rational(1, 12));
    CHECK(curvature_boundary(make_boundary_pattern({3, 3, 3})) == Rational(0));
    CHECK(curvature_boundary(make_boundary_pattern({6})) == Rational(1, 6));
    CHECK(curvature_boundary(make_boundary_pattern({3, 3})) == Rational(1, 6));
    CHECK(curvature_boundary(make_boundary_pattern({3, 5})) == Rational(1, 30));
    CHECK(curvature_boundary(make_boundary_pattern({3, 6})) == Rational(0));
    CHECK(curvature_boundary(make_boundary_pattern({4, 4})) == Rational(0));
    CHECK_THROWS_AS(curvature_boundary(make_interior_pattern({3, 4, 5})), std::invalid_argument);
}

TEST_CASE("inner angles") {
    CHECK(inner_angle(make_interior_pattern({6, 6, 6})).pi_coeff == Rational(2));
    CHECK(inner_angle(make_boundary_pattern({4, 4})).pi_coeff == Rational(1));
    CHECK(inner_angle(make_interior_pattern({5, 5, 10})).pi_coeff == Rational(2));
}

TEST_CASE("angle identity on fixed patterns") {
    CHECK(angle_identity_check(make_boundary_pattern({3, 3})));
    CHECK(angle_identity_check(make_interior_pattern({4, 4, 4})));
    CHECK(angle_identity_check(make_interior_pattern({3, 7, 42})));
    CHECK(angle_identity_check(make_boundary_pattern({5})));
}

TEST_CASE("angle identity over random patterns") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> len_i(3, 8), len_b(1, 5), deg(3, 60);
    for (int it = 0; it < 2000; ++it) {
        std::vector<int> ds(static_cast<std::size_t>(it % 2 ? len_i(rng) : len_b(rng)));
        for (auto& d : ds) d = deg(rng);
        Pattern p = it % 2 ? make_interior_pattern(ds) : make_boundary_pattern(ds);
        CHECK(angle_identity_check(p));
    }
}

namespace {

Patch cube() {
    return Patch::build({{"a", "b", "c", "d"},
                         {"e", "f", "g", "h"},
                         {"a", "b", "f", "e"},
                         {"b", "c", "g", "f"},
                         {"c", "d", "h", "g"},
                         {"d", "a", "e", "h"}});
}

Patch tetrahedron() {
    return Patch::build({{"a", "b", "c"}, {"a", "b", "d"}, {"b", "c", "d"}, {"a", "c", "d"}});
}

} // namespace

TEST_CASE("curvature report on closed polyhedra") {
    auto rc = curvature_report(cube());
    CHECK(rc.total == Rational(2));
    CHECK(rc.closed);
    CHECK(rc.closed_total_ok);
    CHECK(rc.euler_char_used == 2);
    CHECK(rc.per_vertex.size() == 8);
    for (const auto& [v, phi] : rc.per_vertex) CHECK(phi == Rational(1, 4));

    auto rt = curvature_report(tetrahedron());
    CHECK(rt.total == Rational(2));
    for (const auto& [v, phi] : rt.per_vertex) CHECK(phi == Rational(1, 2));
}

TEST_CASE("serial and parallel evaluation agree") {
    auto a = curvature_report(cube(), ExecMode::Serial);
    auto b = curvature_report(cube(), ExecMode::Parallel);
    CHECK(a.per_vertex == b.per_vertex);
    CHECK(a.total == b.total);
}

TEST_CASE("gauss bonnet on a single hexagon") {
    Patch p = Patch::build({{"a", "b", "c", "d", "e", "f"}});
    auto g = gauss_bonnet_patch(p);
    CHECK(g.holds);
    CHECK(g.interior_sum == Rational(0));
    CHECK(g.rim_turning_pi == Rational(2)); // 6 * (pi - 2pi/3)
}

TEST_CASE("gauss bonnet rejects non disks") {
    CHECK_THROWS_AS(gauss_bonnet_patch(cube()), std::invalid_argument);
}

TEST_CASE("cohn vossen bounds") {
    CHECK(cohn_vossen_check(Rational(1), CurvatureSetting::Planar));
    CHECK(cohn_vossen_check(Rational(0), CurvatureSetting::Planar));
    CHECK(!cohn_vossen_check(Rational(7, 12), CurvatureSetting::Boundary));
    CHECK(cohn_vossen_check(Rational(1, 2), CurvatureSetting::Boundary));
    CHECK(!cohn_vossen_check(Rational(13, 12), CurvatureSetting::Planar));
    CHECK(!cohn_vossen_check(Rational(-1, 12), CurvatureSetting::Planar));
}

TEST_CASE("quantization check") {
    auto r = quantization_check(Rational(1, 12), Rational(1, 12));
    CHECK(r.integral);
    CHECK(*r.multiple == 1);
    r = quantization_check(Rational(1, 6), Rational(1, 12));
    CHECK(r.integral);
    CHECK(*r.multiple == 2);
    r = quantization_check(Rational(1, 30), Rational(1, 12));
    CHECK(!r.integral);
    CHECK(!r.multiple);
    CHECK_THROWS_AS(quantization_check(Rational(1), Rational(0)), std::invalid_argument);
}

TEST_CASE("lcm of denominators") {
    CHECK(lcm_denominator({Rational(1, 6), Rational(1, 12), Rational(1, 30)}) == 60);
    CHECK(lcm_denominator({Rational(1)}) == 1);
    CHECK_THROWS_AS(lcm_denominator({}), std::invalid_argument);
}

TEST_CASE("big face bound") {
    CHECK(big_face_bound_check(43));
    CHECK(big_face_bound_check(100));
    CHECK_THROWS_AS(big_face_bound_check(42), std::invalid_argument);
}
