#pragma once

#include "curvtess/patch.hpp"
#include "curvtess/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace curvtess {

/// Phi(x) = 1 - deg(x)/2 + sum over incident faces of 1/deg(sigma),
/// for a vertex with a closed fan (deg(x) == number of faces).
Rational curvature_interior(const Pattern& pat);

/// Same formula for a vertex on the surface boundary, where the vertex
/// degree exceeds the face count by one.
Rational curvature_boundary(const Pattern& pat);

/// Dispatch on pattern kind.
Rational curvature_of(const Pattern& pat);

/// Total inner angle at a vertex with the given pattern, each face
/// contributing the corner angle (d-2)/d * pi of a regular d-gon.
Angle inner_angle(const Pattern& pat);

/// Interior: Phi == 1 - theta/2pi.  Boundary: Phi == (pi - theta)/2pi.
bool angle_identity_check(const Pattern& pat);

enum class ExecMode { Serial, Parallel, Auto };

struct CurvatureReport {
    std::vector<std::pair<int, Rational>> per_vertex; // complete vertices, id order
    std::vector<int> rim_vertices;                    // excluded from all sums
    std::vector<int> nonflat;                         // T(G): complete vertices with Phi != 0
    Rational total;
    int euler_char_used = 0;   // 2 for spheres, 1 for disks, 0 otherwise
    bool closed = false;
    bool closed_total_ok = true; // spheres must total exactly 2
};

CurvatureReport curvature_report(const Patch& p, ExecMode mode = ExecMode::Auto);

struct GaussBonnetResult {
    Rational interior_sum;   // sum of Phi over complete vertices
    Rational rim_turning_pi; // sum over rim vertices of (pi - theta)/pi
    Rational lhs_pi;         // 2*interior_sum + rim_turning_pi
    Rational rhs_pi;         // 2*chi
    bool holds = false;
};

/// Gauss-Bonnet for a disk patch treating the rim as the compact-set
/// boundary: 2pi * sum Phi + sum over rim of (pi - theta) == 2pi * chi,
/// chi == 1. Every rim vertex contributes its inner angle w.r.t. the
/// patch. Throws std::invalid_argument unless the patch is a disk.
GaussBonnetResult gauss_bonnet_patch(const Patch& p);

enum class CurvatureSetting { Planar, Boundary };

/// Cohn-Vossen bounds for certified totals of infinite graphs:
/// planar 0 <= total <= 1, with boundary 0 <= total <= 1/2.
bool cohn_vossen_check(const Rational& total, CurvatureSetting setting);

struct QuantizationResult {
    bool integral = false;
    std::optional<BigInt> multiple;
};

/// Is total an integral multiple of granularity (granularity > 0)?
QuantizationResult quantization_check(const Rational& total, const Rational& granularity);

/// Least common multiple of the denominators of a set of reduced rationals.
BigInt lcm_denominator(const std::vector<Rational>& values);

/// For every face degree k in [43, max_k], the minimum curvature over
/// nonnegative interior patterns containing k is at least 1/k, so the
/// vertices of any such k-gon carry total curvature at least 1.
/// Requires max_k >= 43.
bool big_face_bound_check(int max_k);

} // namespace curvtess
