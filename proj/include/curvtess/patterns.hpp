#pragma once

#include "curvtess/curvature.hpp"
#include "curvtess/patch.hpp"
#include "curvtess/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvtess {

/// One row of the positive-curvature catalogue: a fixed nondecreasing
/// prefix plus a trailing degree k ranging over [k_min, k_max] (k_max
/// empty when unbounded), with curvature a + b/k.
struct PatternFamily {
    std::vector<int> prefix;
    int k_min = 3;
    std::optional<int> k_max; // nullopt: unbounded
    Rational a;
    Rational b;

    Pattern instantiate(int k) const;
    Rational value(int k) const { return a + b * Rational(1, k); }
    bool contains_k(int k) const {
        return k >= k_min && (!k_max || k <= *k_max);
    }
    std::string str() const;

    friend bool operator==(const PatternFamily& x, const PatternFamily& y) {
        return x.prefix == y.prefix && x.k_min == y.k_min && x.k_max == y.k_max && x.a == y.a &&
               x.b == y.b;
    }
    friend bool operator<(const PatternFamily& x, const PatternFamily& y) {
        if (x.prefix != y.prefix) return x.prefix < y.prefix;
        return x.k_min < y.k_min;
    }
};

/// All families of interior patterns with positive curvature, derived by
/// scanning nondecreasing degree sequences (lengths 3..6 are exhaustive:
/// longer sequences force a negative face-term budget, which the scan
/// verifies rather than assumes).
std::vector<PatternFamily> enumerate_positive_interior();

/// All interior patterns with vanishing curvature, as a sorted list.
std::vector<Pattern> enumerate_zero_interior();

/// Nonnegative surface-boundary patterns with their curvatures. Degree
/// >= 3 always; with allow_degree_two the single-face patterns (k) for
/// 3 <= k <= 6 are added (larger faces cannot carry a degree-two
/// boundary vertex of an infinite graph).
std::vector<std::pair<Pattern, Rational>> enumerate_boundary_nonneg(bool allow_degree_two);

/// Instantiate every family member with trailing degree <= cap, together
/// with the explicitly listed zero patterns if wanted.
std::vector<Pattern> instantiate_families(const std::vector<PatternFamily>& fams, int cap);

struct B2Assignment {
    std::string vertex;            // configuration vertex label
    std::vector<int> fan_degrees;  // cyclic fan word assigned to it
};

struct B2Result {
    bool feasible = false;
    std::vector<B2Assignment> witness; // a consistent configuration when feasible
    std::vector<std::string> trace;    // per-arrangement exhaustion notes otherwise
    long long nodes = 0;
};

/// Exhaustive local feasibility of "curvature vanishes on the whole
/// 2-ball around a vertex with this pattern": every vertex at distance
/// <= 2 inside the closed star must carry a vanishing-curvature pattern
/// whose fan agrees with its star faces, and the face seen across every
/// shared edge must have a consistent degree from both sides.
/// Throws std::invalid_argument unless pat has vanishing curvature.
B2Result b2_exclusion_oracle(const Pattern& pat);

/// The vanishing-curvature patterns that survive the oracle.
std::vector<Pattern> b2_admissible_patterns();

/// If any complete vertex adjacent to the rim has the square-octagon
/// pattern (4,8,8), they all must. Throws std::invalid_argument when the
/// preconditions cannot be verified on the supplied patch (some such
/// vertex has a non-flat complete 2-ball).
bool rim_488_propagation_check(const Patch& p);

} // namespace curvtess
