#include "doctest.h"

#include "curvtess/patterns.hpp"

#include <map>
#include <set>

using namespace curvtess;

namespace {

// The published positive-curvature catalogue (20 rows), used as the
// frozen cross-check for the independent scanner.
struct Row {
    std::vector<int> prefix;
    int k_min;
    int k_max; // -1 for unbounded
    Rational a; // Phi = a + 1/k
};

std::vector<Row> table1() {
    return {
        {{3, 3}, 3, -1, Rational(1, 6)},
        {{3, 4}, 4, -1, Rational(1, 12)},
        {{3, 5}, 5, -1, Rational(1, 30)},
        {{3, 6}, 6, -1, Rational(0)},
        {{3, 7}, 7, 41, Rational(-1, 42)},
        {{3, 8}, 8, 23, Rational(-1, 24)},
        {{3, 9}, 9, 17, Rational(-1, 18)},
        {{3, 10}, 10, 14, Rational(-1, 15)},
        {{3, 11}, 11, 13, Rational(-5, 66)},
        {{4, 4}, 4, -1, Rational(0)},
        {{4, 5}, 5, 19, Rational(-1, 20)},
        {{4, 6}, 6, 11, Rational(-1, 12)},
        {{4, 7}, 7, 9, Rational(-3, 28)},
        {{5, 5}, 5, 9, Rational(-1, 10)},
        {{5, 6}, 6, 7, Rational(-2, 15)},
        {{3, 3, 3}, 3, -1, Rational(0)},
        {{3, 3, 4}, 4, 11, Rational(-1, 12)},
        {{3, 3, 5}, 5, 7, Rational(-2, 15)},
        {{3, 4, 4}, 4, 5, Rational(-1, 6)},
        {{3, 3, 3, 3}, 3, 5, Rational(-1, 6)},
    };
}

std::vector<Pattern> table2() {
    std::vector<std::vector<int>> rows = {
        {3, 7, 42},  {3, 8, 24},  {3, 9, 18},     {3, 10, 15},    {3, 12, 12},       {4, 5, 20},
        {4, 6, 12},  {4, 8, 8},   {5, 5, 10},     {6, 6, 6},      {3, 3, 4, 12},     {3, 3, 6, 6},
        {3, 4, 4, 6}, {4, 4, 4, 4}, {3, 3, 3, 3, 6}, {3, 3, 3, 4, 4}, {3, 3, 3, 3, 3, 3}};
    std::vector<Pattern> out;
    for (auto& r : rows) out.push_back(make_interior_pattern(r));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("positive families match the published catalogue") {
    auto fams = enumerate_positive_interior();
    CHECK(fams.size() == 20);
    std::map<std::vector<int>, PatternFamily> by_prefix;
    for (const auto& f : fams) by_prefix[f.prefix] = f;
    for (const auto& row : table1()) {
        REQUIRE(by_prefix.count(row.prefix));
        const auto& f = by_prefix[row.prefix];
        CHECK(f.k_min == row.k_min);
        if (row.k_max < 0)
            CHECK(!f.k_max);
        else {
            REQUIRE(f.k_max.has_value());
            CHECK(*f.k_max == row.k_max);
        }
        CHECK(f.a == row.a);
        CHECK(f.b == Rational(1));
    }
}

TEST_CASE("specific family rows") {
    auto fams = enumerate_positive_interior();
    for (const auto& f : fams) {
        if (f.prefix == std::vector<int>{3, 10}) {
            CHECK(f.k_min == 10);
            CHECK(*f.k_max == 14);
            CHECK(f.value(10) == Rational(1, 10) - Rational(1, 15));
        }
        if (f.prefix == std::vector<int>{3, 3, 3, 3}) {
            CHECK(f.k_min == 3);
            CHECK(*f.k_max == 5);
            CHECK(f.value(3) == Rational(1, 3) - Rational(1, 6));
        }
    }
}

TEST_CASE("family formulas agree with direct evaluation") {
    for (const auto& f : enumerate_positive_interior()) {
        int hi = f.k_max ? *f.k_max : f.k_min + 50;
        for (int k = f.k_min; k <= hi; ++k) {
            CHECK(f.value(k) == curvature_interior(f.instantiate(k)));
            CHECK(f.value(k) > Rational(0));
        }
        if (f.k_max) // one past the end is no longer positive
            CHECK(!(f.value(*f.k_max + 1) > Rational(0)));
    }
}

TEST_CASE("instantiated families are exactly the positive patterns up to a cap") {
    // independent oracle: every extra face changes the curvature by
    // 1/d - 1/2 < 0, so a branch dies as soon as it cannot stay positive
    for (int cap : {42, 60, 200}) {
        auto inst = instantiate_families(enumerate_positive_interior(), cap);
        std::set<Pattern> inst_set(inst.begin(), inst.end());
        std::set<Pattern> brute;
        std::vector<int> cur;
        std::function<void(int, const Rational&)> rec = [&](int min_deg, const Rational& phi) {
            if (cur.size() >= 3 && phi > Rational(0)) brute.insert(make_interior_pattern(cur));
            if (cur.size() == 8) return; // phi has long gone negative by here
            for (int d = min_deg; d <= cap; ++d) {
                Rational next = phi + Rational(1, d) - Rational(1, 2);
                if (!(next > Rational(0))) break; // larger d is worse
                cur.push_back(d);
                rec(d, next);
                cur.pop_back();
            }
        };
        rec(3, Rational(1));
        CHECK(inst_set == brute);
    }
}

TEST_CASE("vanishing patterns match the published list") {
    auto zeros = enumerate_zero_interior();
    CHECK(zeros.size() == 17);
    CHECK(zeros == table2());
    std::set<Pattern> zs(zeros.begin(), zeros.end());
    CHECK(zs.count(make_interior_pattern({4, 6, 12})));
    CHECK(zs.count(make_interior_pattern({3, 3, 3, 3, 3, 3})));
    for (const auto& p : zeros) CHECK(curvature_interior(p).is_zero());
}

TEST_CASE("boundary nonnegative patterns") {
    auto with2 = enumerate_boundary_nonneg(true);
    auto without = enumerate_boundary_nonneg(false);
    CHECK(without.size() == 6);
    std::map<Pattern, Rational> m(without.begin(), without.end());
    CHECK(m.at(make_boundary_pattern({3, 3})) == Rational(1, 6));
    CHECK(m.at(make_boundary_pattern({3, 4})) == Rational(1, 12));
    CHECK(m.at(make_boundary_pattern({3, 5})) == Rational(1, 30));
    CHECK(m.at(make_boundary_pattern({3, 6})) == Rational(0));
    CHECK(m.at(make_boundary_pattern({4, 4})) == Rational(0));
    CHECK(m.at(make_boundary_pattern({3, 3, 3})) == Rational(0));
    CHECK(with2.size() == 10);
    std::map<Pattern, Rational> m2(with2.begin(), with2.end());
    for (int k = 3; k <= 6; ++k) CHECK(m2.at(make_boundary_pattern({k})) == Rational(1, k));
}

TEST_CASE("oracle rejects non-vanishing input") {
    CHECK_THROWS_AS(b2_exclusion_oracle(make_interior_pattern({3, 3, 3})), std::invalid_argument);
}

TEST_CASE("oracle excludes the square-pentagon and double-pentagon cases") {
    CHECK(!b2_exclusion_oracle(make_interior_pattern({5, 5, 10})).feasible);
    CHECK(!b2_exclusion_oracle(make_interior_pattern({4, 5, 20})).feasible);
    auto r = b2_exclusion_oracle(make_interior_pattern({3, 7, 42}));
    CHECK(!r.feasible);
    CHECK(!r.trace.empty());
}

TEST_CASE("oracle keeps the flat lattices") {
    CHECK(b2_exclusion_oracle(make_interior_pattern({6, 6, 6})).feasible);
    CHECK(b2_exclusion_oracle(make_interior_pattern({4, 8, 8})).feasible);
    auto r = b2_exclusion_oracle(make_interior_pattern({3, 3, 3, 3, 3, 3}));
    CHECK(r.feasible);
    CHECK(!r.witness.empty());
}

TEST_CASE("full admissible list") {
    auto adm = b2_admissible_patterns();
    CHECK(adm.size() == 11);
    std::set<Pattern> s(adm.begin(), adm.end());
    CHECK(s.count(make_interior_pattern({3, 12, 12})));
    CHECK(s.count(make_interior_pattern({3, 3, 4, 12})));
    CHECK(!s.count(make_interior_pattern({4, 5, 20})));
    CHECK(!s.count(make_interior_pattern({3, 7, 42})));
    CHECK(!s.count(make_interior_pattern({3, 8, 24})));
    CHECK(!s.count(make_interior_pattern({3, 9, 18})));
    CHECK(!s.count(make_interior_pattern({3, 10, 15})));
    CHECK(!s.count(make_interior_pattern({5, 5, 10})));
}

TEST_CASE("positive pattern curvature floors") {
    // interior: at most degree 42 everywhere, minimum positive curvature
    auto inst = instantiate_families(enumerate_positive_interior(), 42);
    Rational min_pos(1);
    for (const auto& p : inst) {
        Rational phi = curvature_interior(p);
        if (phi > Rational(0) && phi < min_pos) min_pos = phi;
    }
    CHECK(min_pos == Rational(1, 1722));
    // boundary: minimum positive value
    Rational min_b(1);
    for (const auto& [p, phi] : enumerate_boundary_nonneg(false))
        if (phi > Rational(0) && phi < min_b) min_b = phi;
    CHECK(min_b == Rational(1, 30));
}

TEST_CASE("proposition lcm over the positive catalogue") {
    std::vector<Rational> values;
    for (const auto& p : instantiate_families(enumerate_positive_interior(), 42))
        values.push_back(curvature_interior(p));
    CHECK(lcm_denominator(values) == BigInt("219060189739591200"));
}
