#include "curvtess/curvature.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curvtess {

namespace {

Rational face_term(const std::vector<int>& degrees) {
    Rational s;
    for (int d : degrees) s += Rational(1, d);
    return s;
}

} // namespace

Rational curvature_interior(const Pattern& pat) {
    if (pat.kind != Pattern::Kind::Interior)
        throw std::invalid_argument("curvature_interior: pattern is not interior");
    const long long deg = static_cast<long long>(pat.degrees.size());
    return Rational(1) - Rational(deg, 2) + face_term(pat.degrees);
}

Rational curvature_boundary(const Pattern& pat) {
    if (pat.kind != Pattern::Kind::SurfaceBoundary)
        throw std::invalid_argument("curvature_boundary: pattern is not surface-boundary");
    const long long deg = static_cast<long long>(pat.degrees.size()) + 1;
    return Rational(1) - Rational(deg, 2) + face_term(pat.degrees);
}

Rational curvature_of(const Pattern& pat) {
    return pat.kind == Pattern::Kind::Interior ? curvature_interior(pat) : curvature_boundary(pat);
}

Angle inner_angle(const Pattern& pat) {
    Rational c;
    for (int d : pat.degrees) c += Rational(d - 2, d);
    return Angle(c);
}

bool angle_identity_check(const Pattern& pat) {
    const Rational theta = inner_angle(pat).pi_coeff; // in units of pi
    if (pat.kind == Pattern::Kind::Interior)
        return curvature_interior(pat) == Rational(1) - theta / Rational(2);
    return curvature_boundary(pat) == (Rational(1) - theta) / Rational(2);
}

CurvatureReport curvature_report(const Patch& p, ExecMode mode) {
    const int V = p.vertex_count();
    bool parallel = mode == ExecMode::Parallel || (mode == ExecMode::Auto && V > 4096);

    std::vector<Rational> phi(V);
    std::vector<char> complete(V, 0);

    auto eval = [&](int v) {
        if (p.status(v) == VertexStatus::Rim) return;
        phi[v] = curvature_of(pattern_at(p, v));
        complete[v] = 1;
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256)
#endif
        for (int v = 0; v < V; ++v) eval(v);
    } else {
        for (int v = 0; v < V; ++v) eval(v);
    }

    CurvatureReport r;
    for (int v = 0; v < V; ++v) {
        if (!complete[v]) {
            r.rim_vertices.push_back(v);
            continue;
        }
        r.per_vertex.emplace_back(v, phi[v]);
        r.total += phi[v];
        if (!phi[v].is_zero()) r.nonflat.push_back(v);
    }
    r.closed = p.boundary_cycles().empty();
    if (r.closed) {
        r.euler_char_used = 2;
        r.closed_total_ok = (r.total == Rational(2));
    } else {
        r.euler_char_used = p.topology() == PatchTopology::Disk ? 1 : 0;
    }
    return r;
}

GaussBonnetResult gauss_bonnet_patch(const Patch& p) {
    if (p.topology() != PatchTopology::Disk)
        throw std::invalid_argument("gauss_bonnet_patch: patch is not a disk");
    GaussBonnetResult g;
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (p.status(v) == VertexStatus::Rim) {
            if (p.fan(v).empty())
                throw std::invalid_argument("gauss_bonnet_patch: rim vertex with empty fan");
            Rational theta; // in units of pi
            for (int d : p.fan_degrees(v)) theta += Rational(d - 2, d);
            g.rim_turning_pi += Rational(1) - theta;
        } else {
            g.interior_sum += curvature_of(pattern_at(p, v));
        }
    }
    g.lhs_pi = Rational(2) * g.interior_sum + g.rim_turning_pi;
    g.rhs_pi = Rational(2);
    g.holds = g.lhs_pi == g.rhs_pi;
    return g;
}

bool cohn_vossen_check(const Rational& total, CurvatureSetting setting) {
    if (total < Rational(0)) return false;
    return setting == CurvatureSetting::Planar ? total <= Rational(1) : total <= Rational(1, 2);
}

QuantizationResult quantization_check(const Rational& total, const Rational& granularity) {
    if (!(granularity > Rational(0)))
        throw std::invalid_argument("quantization_check: granularity must be positive");
    Rational q = total / granularity;
    QuantizationResult res;
    res.integral = q.is_integer();
    if (res.integral) res.multiple = q.num();
    return res;
}

BigInt lcm_denominator(const std::vector<Rational>& values) {
    if (values.empty()) throw std::invalid_argument("lcm_denominator: empty input");
    BigInt l = 1;
    for (const auto& v : values) l = boost::multiprecision::lcm(l, v.den());
    return l;
}

namespace {

// Enumerate nondecreasing interior degree sequences of length `len` that
// contain the degree `forced` and have nonnegative curvature, tracking
// the minimum curvature seen. `acc` carries the face-term sum so far.
// Since the face term is monotone decreasing in every degree, a branch
// dies as soon as even the best-case completion stays negative.
void scan_nonneg_with(int forced, int len, int pos, int min_deg, bool used,
                      const Rational& acc, std::vector<int>& cur, Rational& best, bool& any) {
    const Rational base = Rational(1) - Rational(len, 2);
    const int slots = len - pos;
    if (slots == 0) {
        if (!used) return;
        Rational phi = base + acc;
        if (phi < Rational(0)) return;
        if (!any || phi < best) best = phi;
        any = true;
        return;
    }
    for (int d = min_deg; d <= forced; ++d) {
        if (!used && slots == 1) d = forced; // last slot must place the forced degree
        const bool now_used = used || d == forced;
        Rational bound = acc + Rational(1, d);
        if (now_used) {
            bound += Rational(slots - 1, d);
        } else {
            if (slots < 2) break;
            bound += Rational(slots - 2, d) + Rational(1, forced);
        }
        if (base + bound < Rational(0)) break; // larger d only shrinks the bound
        cur[pos] = d;
        scan_nonneg_with(forced, len, pos + 1, d, now_used, acc + Rational(1, d), cur, best, any);
        if (!used && slots == 1) break;
    }
}

} // namespace

bool big_face_bound_check(int max_k) {
    if (max_k < 43)
        throw std::invalid_argument("big_face_bound_check: max_k must be at least 43");
    for (int k = 43; k <= max_k; ++k) {
        Rational best;
        bool any = false;
        for (int len = 3; len <= 6; ++len) {
            std::vector<int> cur(len);
            scan_nonneg_with(k, len, 0, 3, false, Rational(0), cur, best, any);
        }
        if (!any) return false;
        if (best < Rational(1, k)) return false;
    }
    return true;
}

} // namespace curvtess
