#include "curvtess/constructions.hpp"
#include "curvtess/patterns.hpp"
#include "curvtess/ring_builder.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace curvtess {

namespace {

// ---------------------------------------------------------------------
// generic flat-end growing
// ---------------------------------------------------------------------

std::string state_key(const std::vector<int>& partial, bool declared) {
    std::string k = declared ? "b|" : "i|";
    for (int d : partial) {
        k += std::to_string(d);
        k += ',';
    }
    return k;
}

// completion degrees making `partial ++ completion` the target cyclic
// word; deterministic (lexicographically smallest) when several
// rotations embed the partial.
std::set<std::vector<int>> cyclic_completions(const std::vector<int>& partial,
                                              const std::vector<int>& target) {
    const int n = static_cast<int>(target.size());
    const int m = static_cast<int>(partial.size());
    std::set<std::vector<int>> candidates;
    if (m >= n) return candidates;
    for (int r = 0; r < n; ++r) {
        bool ok = true;
        for (int t = 0; t < m && ok; ++t)
            ok = target[static_cast<std::size_t>((r + t) % n)] == partial[static_cast<std::size_t>(t)];
        if (!ok) continue;
        std::vector<int> comp;
        for (int t = m; t < n; ++t) comp.push_back(target[static_cast<std::size_t>((r + t) % n)]);
        candidates.insert(std::move(comp));
    }
    return candidates;
}

std::optional<std::vector<int>> cyclic_completion(const std::vector<int>& partial,
                                                  const std::vector<int>& target) {
    auto candidates = cyclic_completions(partial, target);
    if (candidates.empty()) return std::nullopt;
    return *candidates.begin();
}

// completion for a planted defect: keep the ambient material at both
// exposed ends so the neighbours' flat completions still match
std::optional<std::vector<int>> defect_completion(const std::vector<int>& partial,
                                                  const std::vector<int>& target, int ambient) {
    auto candidates = cyclic_completions(partial, target);
    for (const auto& c : candidates)
        if (!c.empty() && c.front() == ambient && c.back() == ambient) return c;
    if (candidates.empty()) return std::nullopt;
    return *candidates.begin();
}

struct RimView {
    std::vector<std::string> names;
    std::vector<std::vector<int>> partials;
    std::vector<bool> declared;
    bool cyclic = true;

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < names.size(); ++i)
            out.push_back(state_key(partials[i], declared[i]));
        return out;
    }
};

RimView rim_view(const Patch& p) {
    auto comps = rim_walk(p);
    if (comps.size() != 1)
        throw std::invalid_argument("grower: patch must have exactly one rim component");
    RimView rv;
    rv.cyclic = comps[0].cyclic;
    for (int v : comps[0].vertices) {
        rv.names.push_back(p.vertex_name(v));
        rv.partials.push_back(p.fan_degrees(v));
        rv.declared.push_back(p.declared_on_surface_boundary(v));
    }
    return rv;
}

/// Target fan word for a rim vertex: full cyclic word for interior
/// completions, linear uniform word for surface-boundary corners.
using TargetFn = std::function<std::vector<int>(const std::vector<int>& partial, bool declared,
                                                int ring_index)>;

struct RingPlan {
    // vertex target overrides placed this ring: fan words, one position each
    std::vector<std::vector<int>> vertex_words;
    int pentagon_edges = 0;
};

struct Snapshot {
    std::size_t face_count;
    std::set<std::string> declared;
    std::vector<std::string> rim_names;
    std::vector<std::string> rim_keys;
    bool cyclic;
};

class Grower {
public:
    Grower(std::vector<std::vector<std::string>> seed_faces, std::set<std::string> seed_declared)
        : faces_(std::move(seed_faces)), declared_(std::move(seed_declared)) {
        for (const auto& f : faces_)
            for (const auto& nm : f) used_.insert(nm);
        patch_ = Patch::build(faces_, declared_);
        snapshot();
    }

    const Patch& patch() const { return patch_; }
    int rings() const { return static_cast<int>(snaps_.size()) - 1; }
    const std::vector<Snapshot>& snaps() const { return snaps_; }
    const std::vector<std::vector<std::string>>& faces() const { return faces_; }
    const std::set<std::string>& declared() const { return declared_; }

    /// Grow one ring; throws std::invalid_argument on inconsistent plans.
    void grow(const TargetFn& target, const RingPlan& plan = {}) {
        RimView rv = rim_view(patch_);
        const int n = static_cast<int>(rv.names.size());
        if (std::getenv("CURVTESS_GROW_DEBUG")) {
            std::cerr << "ring " << rings() << ":";
            for (int i = 0; i < n; ++i) {
                std::cerr << " " << rv.names[static_cast<std::size_t>(i)] << "[";
                for (int d : rv.partials[static_cast<std::size_t>(i)]) std::cerr << d << ",";
                std::cerr << "]";
            }
            std::cerr << "\n";
        }
        std::vector<std::vector<int>> completions(static_cast<std::size_t>(n));

        std::vector<bool> overridden(static_cast<std::size_t>(n), false);
        // place vertex overrides greedily, starting from the middle of
        // the walk and keeping them apart
        int last_placed = -1000000;
        std::vector<int> order_pos(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            order_pos[static_cast<std::size_t>(i)] = (i + n / 2) % n;
        for (const auto& word : plan.vertex_words) {
            bool placed = false;
            for (int pi = 0; pi < n && !placed; ++pi) {
                const int i = order_pos[static_cast<std::size_t>(pi)];
                if (rv.declared[static_cast<std::size_t>(i)]) continue;
                auto comp = defect_completion(rv.partials[static_cast<std::size_t>(i)], word, 3);
                if (!comp || comp->size() < 3) continue;
                if (comp->front() != 3 || comp->back() != 3) continue;
                if (std::abs(i - last_placed) < 6) continue;
                completions[static_cast<std::size_t>(i)] = *comp;
                overridden[static_cast<std::size_t>(i)] = true;
                last_placed = i;
                placed = true;
            }
            if (!placed)
                throw std::invalid_argument("grower: no rim position admits the defect word");
        }

        for (int i = 0; i < n; ++i) {
            if (overridden[static_cast<std::size_t>(i)]) continue;
            const auto& partial = rv.partials[static_cast<std::size_t>(i)];
            const bool decl = rv.declared[static_cast<std::size_t>(i)];
            std::vector<int> word = target(partial, decl, rings());
            if (word.empty())
                throw std::invalid_argument("grower: no target for rim vertex " +
                                            rv.names[static_cast<std::size_t>(i)]);
            if (decl) {
                // surface-boundary corners complete along a uniform word
                for (std::size_t t = 1; t < word.size(); ++t)
                    if (word[t] != word[0])
                        throw std::invalid_argument("grower: boundary targets must be uniform");
                if (partial.size() >= word.size())
                    throw std::invalid_argument("grower: corner already complete");
                completions[static_cast<std::size_t>(i)]
                    .assign(word.size() - partial.size(), word[0]);
            } else {
                auto comp = cyclic_completion(partial, word);
                if (!comp) {
                    std::string msg = "grower: partial fan does not embed in its target at " +
                                      rv.names[static_cast<std::size_t>(i)] + " ring " +
                                      std::to_string(rings()) + " partial=[";
                    for (int d : partial) msg += std::to_string(d) + ",";
                    msg += "] target=[";
                    for (int d : word) msg += std::to_string(d) + ",";
                    msg += "]";
                    throw std::invalid_argument(msg);
                }
                completions[static_cast<std::size_t>(i)] = *comp;
            }
        }

        if (plan.pentagon_edges > 0) {
            const int k = plan.pentagon_edges;
            int placed = 0, last = -1000000;
            for (int j = 0; j < n && placed < k; ++j) {
                // spread the designated edges evenly
                int want = static_cast<int>((static_cast<long long>(placed) * n) / k);
                if (j < want) continue;
                int i = j, i2 = (j + 1) % n;
                if (!rv.cyclic && i2 == 0) break;
                if (j - last < 5) continue;
                auto& ca = completions[static_cast<std::size_t>(i)];
                auto& cb = completions[static_cast<std::size_t>(i2)];
                if (ca.size() < 2 || cb.size() < 2) continue;
                if (ca.back() != 6 || cb.front() != 6) continue;
                ca.back() = 5;
                cb.front() = 5;
                ++placed;
                last = j;
            }
            if (placed != k)
                throw std::invalid_argument("grower: could not place the requested pentagons");
        }

        auto res = detail::build_ring(rv.names, rv.cyclic, completions,
                                      [&](const char* hint) { return fresh(hint); });
        if (!res.ok) {
            std::string msg = "grower: ring " + std::to_string(rings()) + ": " + res.error;
            if (res.error.find("mismatch between rim positions") != std::string::npos) {
                msg += "; states:";
                for (int i = 0; i < n; ++i) {
                    msg += " " + rv.names[static_cast<std::size_t>(i)] + "[";
                    for (int d : rv.partials[static_cast<std::size_t>(i)]) msg += std::to_string(d) + ",";
                    msg += "]->(";
                    for (int d : completions[static_cast<std::size_t>(i)]) msg += std::to_string(d) + ",";
                    msg += ")";
                }
            }
            throw std::invalid_argument(msg);
        }
        for (const auto& nm : res.new_declared) declared_.insert(nm);
        for (auto& f : res.new_faces) faces_.push_back(std::move(f));
        patch_ = Patch::build(faces_, declared_);
        snapshot();
    }

private:
    void snapshot() {
        RimView rv = rim_view(patch_);
        Snapshot s;
        s.face_count = faces_.size();
        s.declared = declared_;
        s.rim_names = rv.names;
        s.rim_keys = rv.keys();
        s.cyclic = rv.cyclic;
        snaps_.push_back(std::move(s));
    }

    std::string fresh(const char* hint) {
        std::string nm;
        do {
            nm = "w" + std::to_string(counter_++) + hint;
        } while (used_.count(nm));
        used_.insert(nm);
        return nm;
    }

    std::vector<std::vector<std::string>> faces_;
    std::set<std::string> declared_;
    Patch patch_;
    std::vector<Snapshot> snaps_;
    long long counter_ = 0;
    std::set<std::string> used_;

};

// ---------------------------------------------------------------------
// pump alignment: map the newer rim onto the older one monotonically,
// preserving state keys; fibers of size > 1 mark the pumped insertions.
// ---------------------------------------------------------------------

std::optional<std::vector<int>> pump_align_rot(const std::vector<std::string>& A,
                                               const std::vector<std::string>& B, int rot) {
    const int n = static_cast<int>(A.size());
    const int m = static_cast<int>(B.size());
    auto a = [&](int j) -> const std::string& { return A[static_cast<std::size_t>((j + rot) % n)]; };
    // reach[i][j]: B[0..i] mapped with alpha(i) = j
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(m),
                                         std::vector<char>(static_cast<std::size_t>(n), 0));
    if (B[0] == a(0)) reach[0][0] = 1;
    for (int i = 1; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            if (B[static_cast<std::size_t>(i)] != a(j)) continue;
            if (reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] ||
                (j > 0 && reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]))
                reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        }
    if (!reach[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n - 1)]) return std::nullopt;
    std::vector<int> alpha(static_cast<std::size_t>(m));
    int j = n - 1;
    for (int i = m - 1; i >= 1; --i) {
        alpha[static_cast<std::size_t>(i)] = (j + rot) % n;
        if (j > 0 && reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)])
            --j;
        // else stay (fiber)
    }
    alpha[0] = rot % n;
    return alpha;
}

std::optional<std::vector<int>> pump_align(const std::vector<std::string>& A,
                                           const std::vector<std::string>& B, bool cyclic) {
    if (A.empty() || B.size() < A.size()) return std::nullopt;
    if (!cyclic) return pump_align_rot(A, B, 0);
    const int n = static_cast<int>(A.size());
    for (int rot = 0; rot < n; ++rot) {
        if (A[static_cast<std::size_t>(rot)] != B[0]) continue;
        if (auto r = pump_align_rot(A, B, rot)) return r;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// packaging a grown end into a witness
// ---------------------------------------------------------------------

EndWitness assemble(const Grower& g, int base_ring, int top_ring, const std::vector<int>& alpha,
                    EndWitness::Kind kind) {
    const Snapshot& A = g.snaps()[static_cast<std::size_t>(base_ring)];
    const Snapshot& B = g.snaps()[static_cast<std::size_t>(top_ring)];
    EndWitness w;
    w.kind = kind;
    std::vector<std::vector<std::string>> core_faces(g.faces().begin(),
                                                     g.faces().begin() + static_cast<long>(A.face_count));
    std::vector<std::vector<std::string>> layer_faces(
        g.faces().begin() + static_cast<long>(A.face_count),
        g.faces().begin() + static_cast<long>(B.face_count));
    std::set<std::string> layer_names;
    for (const auto& f : layer_faces)
        for (const auto& nm : f) layer_names.insert(nm);
    std::set<std::string> layer_declared;
    for (const auto& nm : B.declared)
        if (layer_names.count(nm)) layer_declared.insert(nm);
    w.core = Patch::build(core_faces, A.declared);
    w.layer = Patch::build(layer_faces, layer_declared);
    for (const auto& nm : A.rim_names) w.attach.emplace_back(nm, nm);
    for (std::size_t i = 0; i < B.rim_names.size(); ++i)
        w.shift.emplace_back(B.rim_names[i], A.rim_names[static_cast<std::size_t>(
                                                 alpha[i])]);
    return w;
}

/// Grow rings until two rims one period apart align; package and
/// validate. min_base keeps defect rings plus a two-ball margin inside
/// the core.
EndWitness grow_and_package(Grower& g, const TargetFn& target, EndWitness::Kind kind, int min_base,
                            int max_period = 6, int max_rings = 24) {
    std::string last_error = "no period found";
    while (g.rings() < max_rings) {
        g.grow(target);
        const int t = g.rings();
        for (int p = 1; p <= max_period && p <= t - min_base; ++p) {
            const int base = t - p;
            if (base < min_base) break;
            const Snapshot& A = g.snaps()[static_cast<std::size_t>(base)];
            const Snapshot& B = g.snaps()[static_cast<std::size_t>(t)];
            if (A.cyclic != B.cyclic) continue;
            auto alpha = pump_align(A.rim_keys, B.rim_keys, A.cyclic);
            if (!alpha) continue;
            // translate key-level alignment to names
            EndWitness w = assemble(g, base, t, *alpha, kind);
            auto val = validate_witness(w);
            if (val.valid()) return w;
            last_error = val.issues.front().code + ": " + val.issues.front().detail;
        }
    }
    throw std::runtime_error("grow_and_package: " + last_error);
}

// target functions ------------------------------------------------------

std::vector<int> classify_ts(const std::vector<int>& partial, bool declared, int) {
    bool has3 = false, has4 = false;
    for (int d : partial) {
        if (d == 3) has3 = true;
        if (d == 4) has4 = true;
    }
    if (declared) {
        if (has4 && !has3) return {4, 4};
        return {3, 3, 3};
    }
    if (has3 && has4) return {3, 3, 3, 4, 4};
    if (has4) return {4, 4, 4, 4};
    return {3, 3, 3, 3, 3, 3};
}

std::vector<int> classify_hex(const std::vector<int>& partial, bool, int) {
    for (int d : partial)
        if (d == 5) return {5, 6, 6};
    return {6, 6, 6};
}

} // namespace

// ---------------------------------------------------------------------
// closed-form families
// ---------------------------------------------------------------------

EndWitness flat_lattice_witness(LatticeKind lattice) {
    if (lattice == LatticeKind::Triangular) {
        std::vector<std::vector<std::string>> seed;
        for (int j = 0; j < 6; ++j)
            seed.push_back({"o", "c" + std::to_string(j), "c" + std::to_string((j + 1) % 6)});
        Grower g(seed, {});
        return grow_and_package(g, classify_ts, EndWitness::Kind::Planar, 2);
    }
    std::vector<std::vector<std::string>> seed;
    for (int j = 0; j < 4; ++j)
        seed.push_back({"o", "c" + std::to_string(j), "f" + std::to_string(j),
                        "c" + std::to_string((j + 1) % 4)});
    Grower g(seed, {});
    return grow_and_package(g, classify_ts, EndWitness::Kind::Planar, 2);
}

EndWitness defect_cone(const std::vector<std::vector<int>>& defect_words) {
    if (defect_words.empty() || defect_words.size() > 2)
        throw std::invalid_argument("defect_cone: one or two defect words");
    for (const auto& w : defect_words) {
        if (w.size() < 3) throw std::invalid_argument("defect_cone: defect degree below 3");
        Rational phi = curvature_interior(make_interior_pattern(w));
        if (!(phi > Rational(0)))
            throw std::invalid_argument("defect_cone: defect word is not positively curved");
        for (int d : w)
            if (d != 3 && d != 4)
                throw std::invalid_argument("defect_cone: only triangle/square defects supported");
    }
    // seed: the star of the first defect word
    std::vector<std::vector<std::string>> seed;
    const auto& w0 = defect_words[0];
    const int N = static_cast<int>(w0.size());
    int extra = 0;
    for (int j = 0; j < N; ++j) {
        std::string a = "c" + std::to_string(j);
        std::string b = "c" + std::to_string((j + 1) % N);
        if (w0[static_cast<std::size_t>(j)] == 3) {
            seed.push_back({"o", a, b});
        } else {
            seed.push_back({"o", a, "q" + std::to_string(extra++), b});
        }
    }
    Grower g(seed, {});
    int min_base = 3;
    if (defect_words.size() == 2) {
        // settle the first cone for a couple of rings, then plant the
        // second defect and keep a flat margin around it
        g.grow(classify_ts);
        g.grow(classify_ts);
        RingPlan plan;
        plan.vertex_words.push_back(defect_words[1]);
        g.grow(classify_ts, plan);
        min_base = g.rings() + 3;
    }
    return grow_and_package(g, classify_ts, EndWitness::Kind::Planar, min_base);
}

EndWitness cone(LatticeKind lattice, int sectors) {
    if (lattice == LatticeKind::Triangular) {
        if (sectors < 3 || sectors > 5)
            throw std::invalid_argument(
                "cone: triangular apex needs 3..5 sectors (fewer is degenerate, six is flat)");
        return defect_cone({std::vector<int>(static_cast<std::size_t>(sectors), 3)});
    }
    if (sectors != 3)
        throw std::invalid_argument(
            "cone: square apex needs exactly 3 sectors (fewer is degenerate, four is flat)");
    return defect_cone({{4, 4, 4}});
}

EndWitness capped_tube(int n) {
    if (n < 3 || n > 42)
        throw std::invalid_argument("capped_tube: cap degree must lie in [3, 42]");
    std::vector<std::vector<std::string>> seed;
    std::vector<std::string> cap;
    for (int i = 0; i < n; ++i) cap.push_back("c" + std::to_string(i));
    seed.push_back(cap);
    Grower g(seed, {});
    auto target = [n](const std::vector<int>&, bool, int ring) -> std::vector<int> {
        if (ring == 0) return {4, 4, n};
        return {4, 4, 4, 4};
    };
    return grow_and_package(g, target, EndWitness::Kind::Planar, 3);
}

EndWitness pentagon_hexagon(int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("pentagon_hexagon: k must lie in 1..6");
    std::vector<std::vector<std::string>> seed;
    std::vector<std::string> hexagon;
    for (int i = 0; i < 6; ++i) hexagon.push_back("h" + std::to_string(i));
    seed.push_back(hexagon);
    Grower g(seed, {});
    g.grow(classify_hex);
    g.grow(classify_hex);
    RingPlan plan;
    plan.pentagon_edges = k;
    g.grow(classify_hex, plan);
    const int min_base = g.rings() + 3;
    return grow_and_package(g, classify_hex, EndWitness::Kind::Planar, min_base);
}

namespace {

// a row of triangle cells along the surface boundary; a defect position
// skips its down-triangle so the vertex keeps only two faces
std::pair<std::vector<std::vector<std::string>>, std::set<std::string>>
triangle_row_seed(int cells, std::optional<int> wedge_at) {
    std::vector<std::vector<std::string>> seed;
    std::set<std::string> declared;
    auto S = [](int i) { return "s" + std::to_string(i); };
    int top_idx = 0;
    std::string cur_top = "t0";
    for (int i = 0; i <= cells; ++i) declared.insert(S(i));
    for (int i = 0; i < cells; ++i) {
        seed.push_back({S(i), S(i + 1), cur_top});
        const int v = i + 1;
        if (v >= cells) break;
        if (wedge_at && *wedge_at == v) continue; // (3,3): share the top
        std::string next_top = "t" + std::to_string(++top_idx);
        seed.push_back({S(v), next_top, cur_top});
        cur_top = next_top;
    }
    return {seed, declared};
}

} // namespace

EndWitness half_plane_witness(const std::vector<std::vector<int>>& boundary_defects) {
    if (boundary_defects.size() > 1)
        throw std::invalid_argument(
            "half_plane_witness: several boundary defects shear against each other; "
            "use one defect per witness");
    if (!boundary_defects.empty() && boundary_defects[0] != std::vector<int>{3, 3})
        throw std::invalid_argument("half_plane_witness: the supported boundary defect is (3,3)");
    const int cells = 12;
    auto [seed, declared] =
        triangle_row_seed(cells, boundary_defects.empty() ? std::nullopt
                                                          : std::optional<int>(cells / 2));
    Grower g(seed, declared);
    return grow_and_package(g, classify_ts, EndWitness::Kind::Boundary, 3);
}

EndWitness half_plane_defect(const std::vector<int>& interior_word) {
    Rational phi = curvature_interior(make_interior_pattern(interior_word));
    if (!(phi > Rational(0)))
        throw std::invalid_argument("half_plane_defect: defect word is not positively curved");
    for (int d : interior_word)
        if (d != 3 && d != 4)
            throw std::invalid_argument("half_plane_defect: only triangle/square defects supported");
    auto [seed, declared] = triangle_row_seed(14, std::nullopt);
    Grower g(seed, declared);
    g.grow(classify_ts);
    g.grow(classify_ts);
    RingPlan plan;
    plan.vertex_words.push_back(interior_word);
    g.grow(classify_ts, plan);
    const int min_base = g.rings() + 3;
    return grow_and_package(g, classify_ts, EndWitness::Kind::Boundary, min_base);
}

} // namespace curvtess
