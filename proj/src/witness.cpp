#include "curvtess/witness.hpp"

#include "curvtess/io.hpp"
#include "curvtess/ring_builder.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace curvtess {

std::string WitnessValidation::str() const {
    std::ostringstream os;
    for (const auto& i : issues) os << i.code << ": " << i.detail << "\n";
    return os.str();
}

namespace {

struct Walk {
    std::vector<std::string> vertices;
    bool cyclic = true;
};

// The patch rim as one ordered walk of vertex names: the full boundary
// cycle for planar patches, the open rim arc (corner to corner) for
// half-disk patches meeting the surface boundary.
Walk rim_walk_names(const Patch& p) {
    auto comps = rim_walk(p);
    if (comps.size() != 1)
        throw std::invalid_argument("patch must have exactly one rim component, found " +
                                    std::to_string(comps.size()));
    Walk w;
    w.cyclic = comps[0].cyclic;
    for (int v : comps[0].vertices) w.vertices.push_back(p.vertex_name(v));
    return w;
}

std::vector<std::vector<std::string>> faces_as_names(const Patch& p) {
    std::vector<std::vector<std::string>> out;
    out.reserve(p.face_count());
    for (int f = 0; f < p.face_count(); ++f) {
        std::vector<std::string> cyc;
        for (int v : p.face(f)) cyc.push_back(p.vertex_name(v));
        out.push_back(std::move(cyc));
    }
    return out;
}

std::set<std::string> declared_names(const Patch& p) {
    std::set<std::string> out;
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.declared_on_surface_boundary(v)) out.insert(p.vertex_name(v));
    return out;
}

std::vector<std::string> face_names(const Patch& p, int f) {
    std::vector<std::string> out;
    for (int v : p.face(f)) out.push_back(p.vertex_name(v));
    return out;
}

std::vector<std::string> face_key(const Patch& p, int f) {
    auto k = face_names(p, f);
    std::sort(k.begin(), k.end());
    return k;
}

bool face_has_edge(const Patch& p, int f, const std::string& a, const std::string& b) {
    const auto& c = p.face(f);
    const int k = static_cast<int>(c.size());
    for (int t = 0; t < k; ++t) {
        const std::string& x = p.vertex_name(c[t]);
        const std::string& y = p.vertex_name(c[(t + 1) % k]);
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

// Observe the completions one materialized ring performed on top of
// `prev`: for each vertex of prev's rim the ordered degrees of its new
// faces and the names of the vertices they introduced, in the exact
// order the replay recreates them.
std::vector<CompletionSeq> extract_recipes(const Patch& prev, const Patch& now, const Walk& rim) {
    std::set<std::string> old_names;
    for (int v = 0; v < prev.vertex_count(); ++v) old_names.insert(prev.vertex_name(v));
    std::set<std::vector<std::string>> prev_faces;
    for (int f = 0; f < prev.face_count(); ++f) prev_faces.insert(face_key(prev, f));
    std::set<int> new_faces;
    for (int f = 0; f < now.face_count(); ++f)
        if (!prev_faces.count(face_key(now, f))) new_faces.insert(f);

    const int n = static_cast<int>(rim.vertices.size());
    std::map<std::string, int> rim_pos;
    for (int i = 0; i < n; ++i) rim_pos[rim.vertices[i]] = i;

    auto is_old = [&](const std::string& nm) { return old_names.count(nm) > 0; };

    // New vertices adjacent to `vn` within face f.
    auto new_neighbors = [&](int f, const std::string& vn) {
        std::vector<std::string> out;
        const auto cyc = face_names(now, f);
        const int k = static_cast<int>(cyc.size());
        for (int t = 0; t < k; ++t) {
            if (cyc[t] != vn) continue;
            const std::string& a = cyc[(t + k - 1) % k];
            const std::string& b = cyc[(t + 1) % k];
            if (!is_old(a)) out.push_back(a);
            if (!is_old(b)) out.push_back(b);
        }
        return out;
    };

    auto spoke_between = [&](int f1, int f2, const std::string& vn) -> std::string {
        for (const auto& nm : new_neighbors(f1, vn))
            for (const auto& nm2 : new_neighbors(f2, vn))
                if (nm == nm2) return nm;
        throw std::invalid_argument("missing spoke between ring faces at " + vn);
    };

    // Path of new vertices along face f from `from` (exclusive) to `to`
    // (exclusive), walking the direction that stays off the old patch.
    auto interior_path = [&](int f, const std::string& from, const std::string& to) {
        const auto cyc = face_names(now, f);
        const int k = static_cast<int>(cyc.size());
        int s = -1;
        for (int t = 0; t < k; ++t)
            if (cyc[t] == from) s = t;
        if (s < 0) throw std::invalid_argument("interior path anchor missing");
        for (int dir : {1, -1}) {
            std::vector<std::string> path;
            bool ok = true;
            for (int step = 1; step < k; ++step) {
                const std::string& nm = cyc[((s + dir * step) % k + k) % k];
                if (nm == to) return path;
                if (is_old(nm)) { ok = false; break; }
                path.push_back(nm);
            }
            (void)ok;
        }
        throw std::invalid_argument("ring face has no clean interior path");
    };

    // Old vertices of a ring face, in rim-walk order.
    auto face_rim_path = [&](int f) {
        auto cyc = face_names(now, f);
        std::vector<std::string> olds;
        for (const auto& nm : cyc)
            if (is_old(nm)) olds.push_back(nm);
        if (olds.size() == 1) return olds;
        std::sort(olds.begin(), olds.end(), [&](const std::string& a, const std::string& b) {
            return rim_pos.at(a) < rim_pos.at(b);
        });
        // cyclic rims: the path may wrap around position 0
        if (rim.cyclic && olds.size() >= 2 &&
            rim_pos.at(olds.back()) - rim_pos.at(olds.front()) + 1 !=
                static_cast<int>(olds.size())) {
            // rotate the sorted list so consecutive positions follow
            for (std::size_t t = 1; t < olds.size(); ++t) {
                if (rim_pos.at(olds[t]) != rim_pos.at(olds[t - 1]) + 1) {
                    std::rotate(olds.begin(), olds.begin() + static_cast<long>(t), olds.end());
                    break;
                }
            }
        }
        return olds;
    };

    std::vector<CompletionSeq> out(n);
    for (int i = 0; i < n; ++i) {
        const std::string& vn = rim.vertices[i];
        int v = *now.vertex_id(vn);
        if (now.status(v) == VertexStatus::Rim)
            throw std::invalid_argument("ring does not complete rim vertex " + vn);
        const auto& fan = now.fan(v);
        const int fl = static_cast<int>(fan.size());

        std::vector<int> run;
        {
            int first = -1;
            int count = 0;
            for (int t = 0; t < fl; ++t) {
                if (!new_faces.count(fan[t])) continue;
                ++count;
                bool before = new_faces.count(fan[(t + fl - 1) % fl]) > 0;
                if (!before || (!now.fan_closed(v) && t == 0)) {
                    if (first >= 0)
                        throw std::invalid_argument("new faces around " + vn + " are not contiguous");
                    first = t;
                }
            }
            if (first < 0 || count == 0)
                throw std::invalid_argument("rim vertex " + vn + " gained no faces");
            for (int t = first; t < first + count; ++t) run.push_back(fan[t % fl]);
            for (int f : run)
                if (!new_faces.count(f))
                    throw std::invalid_argument("new faces around " + vn + " are not contiguous");
        }

        const bool has_pred = rim.cyclic || i > 0;
        const bool has_succ = rim.cyclic || i + 1 < n;
        const std::string pred = has_pred ? rim.vertices[(i + n - 1) % n] : std::string();
        const std::string succ = has_succ ? rim.vertices[(i + 1) % n] : std::string();
        if (has_pred) {
            if (!face_has_edge(now, run.front(), pred, vn)) std::reverse(run.begin(), run.end());
            if (!face_has_edge(now, run.front(), pred, vn))
                throw std::invalid_argument("cannot anchor completion of " + vn);
        } else if (has_succ) {
            if (!face_has_edge(now, run.back(), succ, vn)) std::reverse(run.begin(), run.end());
            if (!face_has_edge(now, run.back(), succ, vn))
                throw std::invalid_argument("cannot anchor completion of " + vn);
        }

        CompletionSeq seq;
        seq.to_boundary = now.status(v) == VertexStatus::SurfaceBoundary;
        for (int f : run) seq.new_degrees.push_back(now.face_degree(f));
        const int m = static_cast<int>(run.size());

        auto declared_new_neighbor = [&](int f) -> std::string {
            for (const auto& nm : new_neighbors(f, vn))
                if (now.declared_on_surface_boundary(*now.vertex_id(nm))) return nm;
            return {};
        };

        std::string start_corner;
        if (!has_pred) {
            start_corner = declared_new_neighbor(run.front());
            if (start_corner.empty())
                throw std::invalid_argument("rim start " + vn + " does not extend the surface boundary");
            seq.new_vertices.push_back(start_corner);
        }
        auto face_new_count = [&](int f) {
            int cnt = 0;
            for (int x : now.face(f))
                if (!is_old(now.vertex_name(x))) ++cnt;
            return cnt;
        };
        std::string prev_spoke;
        for (int t = 0; t + 1 < m; ++t) {
            std::string right = spoke_between(run[t], run[t + 1], vn);
            // a face with a single fresh vertex closed onto its own
            // opening spoke; nothing was created here
            const bool tight = face_new_count(run[t]) == 1;
            if (!tight) {
                seq.new_vertices.push_back(right);
                std::string left;
                if (t > 0) {
                    left = prev_spoke;
                } else if (!has_pred) {
                    left = start_corner;
                } else {
                    // the spoke created when run[0] was opened, adjacent
                    // to the first rim vertex of its path
                    auto path = face_rim_path(run[0]);
                    auto nb = new_neighbors(run[0], path.front());
                    for (const auto& nm : nb)
                        if (nm != right || path.front() == vn) { left = nm; if (nm != right) break; }
                    if (left.empty())
                        throw std::invalid_argument("cannot locate opening spoke of a ring face at " +
                                                    vn);
                }
                for (const auto& nm : interior_path(run[t], right, left))
                    seq.new_vertices.push_back(nm);
            }
            prev_spoke = right;
        }
        if (!has_succ) {
            std::string corner = declared_new_neighbor(run.back());
            if (corner.empty())
                throw std::invalid_argument("rim end " + vn + " does not extend the surface boundary");
            seq.new_vertices.push_back(corner);
            std::string left;
            if (m >= 2) {
                left = prev_spoke;
            } else if (!has_pred) {
                left = start_corner;
            } else {
                auto path = face_rim_path(run.back());
                auto nb = new_neighbors(run.back(), path.front());
                for (const auto& nm : nb)
                    if (nm != corner) { left = nm; break; }
                if (left.empty())
                    throw std::invalid_argument("cannot locate opening spoke of the closing face");
            }
            for (const auto& nm : interior_path(run.back(), corner, left)) seq.new_vertices.push_back(nm);
        }
        out[static_cast<std::size_t>(i)] = std::move(seq);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------
// RingEngine
// ---------------------------------------------------------------------

std::string RingEngine::fresh_name(const std::string& hint) {
    std::string name = "g" + std::to_string(rings_built_ + 1) + "_" + hint +
                       std::to_string(fresh_counter_++);
    while (used_names_.count(name))
        name = "g" + std::to_string(rings_built_ + 1) + "_" + hint + std::to_string(fresh_counter_++);
    used_names_.insert(name);
    return name;
}

void RingEngine::rebuild_glued() {
    glued_ = Patch::build(faces_, declared_, Patch::BuildMode::Strict);
}

RingEngine::RingEngine(const EndWitness& w) {
    std::map<std::string, std::string> attach_map(w.attach.begin(), w.attach.end());
    std::map<std::string, std::string> rename;
    std::set<std::string> core_name_set;
    for (int v = 0; v < w.core.vertex_count(); ++v) core_name_set.insert(w.core.vertex_name(v));
    core_names_.assign(core_name_set.begin(), core_name_set.end());

    for (int v = 0; v < w.layer.vertex_count(); ++v) {
        const std::string& n = w.layer.vertex_name(v);
        auto it = attach_map.find(n);
        if (it != attach_map.end())
            rename[n] = it->second;
        else if (core_name_set.count(n))
            rename[n] = "ly_" + n;
        else
            rename[n] = n;
    }

    faces_ = faces_as_names(w.core);
    declared_ = declared_names(w.core);
    const int core_face_count = static_cast<int>(faces_.size());
    for (auto& cyc : faces_as_names(w.layer)) {
        std::vector<std::string> mapped;
        for (auto& n : cyc) mapped.push_back(rename.at(n));
        faces_.push_back(std::move(mapped));
    }
    for (const auto& n : declared_names(w.layer)) declared_.insert(rename.at(n));
    for (const auto& cyc : faces_)
        for (const auto& n : cyc) used_names_.insert(n);

    rebuild_glued();

    // Stratify the layer into rim-incident rings, recording completion
    // recipes along the way.
    Walk rim_prev = rim_walk_names(w.core);
    rim_cyclic_ = rim_prev.cyclic;

    std::vector<std::vector<std::string>> acc(faces_.begin(), faces_.begin() + core_face_count);
    Patch prev = w.core;
    strata_rims_.clear();
    strata_rims_.push_back(rim_prev.vertices);
    recipes_.clear();

    std::vector<char> taken(faces_.size(), 0);
    for (int f = 0; f < core_face_count; ++f) taken[f] = 1;
    int remaining = static_cast<int>(faces_.size()) - core_face_count;
    while (remaining > 0) {
        std::set<std::string> rim_names(rim_prev.vertices.begin(), rim_prev.vertices.end());
        std::vector<std::size_t> stratum;
        for (std::size_t f = static_cast<std::size_t>(core_face_count); f < faces_.size(); ++f) {
            if (taken[f]) continue;
            for (const auto& n : faces_[f])
                if (rim_names.count(n)) {
                    stratum.push_back(f);
                    taken[f] = 1;
                    break;
                }
        }
        if (stratum.empty())
            throw std::invalid_argument("layer does not stratify into rim-incident rings");
        for (auto f : stratum) acc.push_back(faces_[f]);
        Patch now = Patch::build(acc, declared_, Patch::BuildMode::Strict);
        remaining -= static_cast<int>(stratum.size());
        recipes_.push_back(extract_recipes(prev, now, rim_prev));
        rim_prev = rim_walk_names(now);
        strata_rims_.push_back(rim_prev.vertices);
        prev = now;
    }
    period_ = static_cast<int>(recipes_.size());
    if (period_ < 1) throw std::invalid_argument("layer is empty");

    // Archetype lookup: names on strata rims 1..p resolve to (stratum,
    // index); the outer rim resolves through the shift back to phase 0.
    std::map<std::string, std::string> shift_map;
    for (const auto& [from, to] : w.shift) {
        auto rf = rename.find(from);
        std::string from2 = rf == rename.end() ? from : rf->second;
        std::string to2;
        if (auto rt = rename.find(to); rt != rename.end())
            to2 = rt->second;
        else
            to2 = to;
        shift_map[from2] = to2;
    }
    std::map<std::string, int> rim0_pos;
    for (std::size_t i = 0; i < strata_rims_[0].size(); ++i)
        rim0_pos[strata_rims_[0][i]] = static_cast<int>(i);

    arch_of_new_.clear();
    for (int j = 1; j <= period_; ++j) {
        for (std::size_t i = 0; i < strata_rims_[static_cast<std::size_t>(j)].size(); ++i) {
            const std::string& n = strata_rims_[static_cast<std::size_t>(j)][i];
            if (j < period_) {
                arch_of_new_[n] = {j, static_cast<int>(i)};
            } else {
                auto it = shift_map.find(n);
                if (it == shift_map.end())
                    throw std::invalid_argument("shift does not cover outer rim vertex " + n);
                auto pit = rim0_pos.find(it->second);
                if (pit == rim0_pos.end())
                    throw std::invalid_argument("shift target " + it->second +
                                                " is not on the core rim");
                arch_of_new_[n] = {0, pit->second};
            }
        }
    }
    if (shift_map.size() != strata_rims_[static_cast<std::size_t>(period_)].size())
        throw std::invalid_argument("shift domain does not match the layer outer rim");

    rim_.clear();
    for (const auto& n : strata_rims_[static_cast<std::size_t>(period_)]) {
        auto [s, i] = arch_of_new_.at(n);
        rim_.push_back(RimVertex{n, s, i});
    }
    rim_sizes_.clear();
    for (const auto& r : strata_rims_) rim_sizes_.push_back(r.size());
    rings_built_ = period_;
}

bool RingEngine::replay_ring() {
    const int n = static_cast<int>(rim_.size());
    auto fail = [&](const std::string& msg) {
        issues_.push_back({"replay", msg});
        return false;
    };
    if (n < 2) return fail("rim too short to replay");

    auto rec = [&](int i) -> const CompletionSeq& {
        const RimVertex& rv = rim_[static_cast<std::size_t>(i)];
        return recipes_[static_cast<std::size_t>(rv.stratum)][static_cast<std::size_t>(rv.index)];
    };

    std::vector<std::vector<int>> completions;
    completions.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) completions.push_back(rec(i).new_degrees);

    std::vector<std::string> rim_names_v;
    rim_names_v.reserve(static_cast<std::size_t>(n));
    for (const auto& rv : rim_) rim_names_v.push_back(rv.name);

    auto res = detail::build_ring(rim_names_v, rim_cyclic_, completions,
                                  [&](const char* hint) { return fresh_name(hint); });
    if (!res.ok) return fail(res.error);

    // archetype bookkeeping: the fresh vertices created at each rim
    // position correspond one-to-one to the recorded completion's new
    // vertices
    std::map<std::string, std::string> arch_name;
    for (int i = 0; i < n; ++i) {
        const auto& mine = res.created_at[static_cast<std::size_t>(i)];
        const auto& theirs = rec(i).new_vertices;
        if (mine.size() != theirs.size())
            return fail("created-vertex count mismatch at rim position " + std::to_string(i) +
                        " (" + std::to_string(mine.size()) + " vs " +
                        std::to_string(theirs.size()) + ")");
        for (std::size_t q = 0; q < mine.size(); ++q) arch_name[mine[q]] = theirs[q];
    }

    std::vector<RimVertex> next_rim;
    for (const auto& nm : res.new_rim) {
        auto it = arch_name.find(nm);
        if (it == arch_name.end()) return fail("new rim vertex " + nm + " has no archetype");
        auto at = arch_of_new_.find(it->second);
        if (at == arch_of_new_.end())
            return fail("archetype " + it->second + " is not on a recorded rim");
        next_rim.push_back(RimVertex{nm, at->second.first, at->second.second});
    }

    for (const auto& nm : res.new_declared) declared_.insert(nm);
    for (auto& cyc : res.new_faces) faces_.push_back(std::move(cyc));
    rim_ = std::move(next_rim);
    rim_sizes_.push_back(rim_.size());
    ++rings_built_;
    try {
        rebuild_glued();
        Walk check = rim_walk_names(glued_);
        if (check.vertices.size() != rim_.size())
            return fail("replayed rim length disagrees with the patch boundary (" +
                        std::to_string(check.vertices.size()) + " vs " +
                        std::to_string(rim_.size()) + ")");
    } catch (const std::exception& e) {
        issues_.push_back({"replay", std::string("replayed ring does not build: ") + e.what()});
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------
// Validation and certification
// ---------------------------------------------------------------------

namespace {

bool is_flat_complete(const Patch& p, int v, std::string* why) {
    if (p.status(v) == VertexStatus::Rim) {
        if (why) *why = "still incomplete";
        return false;
    }
    Rational phi = curvature_of(pattern_at(p, v));
    if (!phi.is_zero()) {
        if (why) *why = "curvature " + phi.str();
        return false;
    }
    return true;
}

} // namespace

WitnessValidation validate_witness(const EndWitness& w, int extra_periods) {
    WitnessValidation val;
    auto issue = [&](const std::string& code, const std::string& detail) {
        val.issues.push_back({code, detail});
    };

    // component topology
    {
        auto core_rep = validate_tessellation(w.core);
        for (const auto& i : core_rep.issues) issue("core-" + i.code, i.detail);
        auto layer_rep = validate_tessellation(w.layer);
        for (const auto& i : layer_rep.issues) issue("layer-" + i.code, i.detail);
        if (w.kind == EndWitness::Kind::Planar) {
            if (w.core.topology() != PatchTopology::Disk)
                issue("kind", "planar witness core must be a disk");
            if (w.layer.topology() != PatchTopology::Annulus)
                issue("kind", "planar witness layer must be an annulus");
            if (!declared_names(w.core).empty() || !declared_names(w.layer).empty())
                issue("kind", "planar witness must not declare surface-boundary vertices");
        } else {
            if (w.core.topology() != PatchTopology::Disk)
                issue("kind", "boundary witness core must be a half-disk");
            if (declared_names(w.core).empty())
                issue("kind", "boundary witness core has no surface-boundary vertices");
            if (w.layer.topology() != PatchTopology::Disk)
                issue("kind", "boundary witness layer must be a transversal strip");
            if (declared_names(w.layer).empty())
                issue("kind", "boundary witness layer does not meet the surface boundary");
        }
    }
    if (!val.issues.empty()) return val;

    std::unique_ptr<RingEngine> eng;
    try {
        eng = std::make_unique<RingEngine>(w);
    } catch (const std::exception& e) {
        issue("structure", e.what());
        return val;
    }

    std::set<std::string> core_set(eng->core_vertex_names().begin(),
                                   eng->core_vertex_names().end());
    const Rational zero(0);

    auto check_stage = [&](const Patch& p, const std::string& stage) {
        auto rep = validate_tessellation(p);
        for (const auto& i : rep.issues) issue(stage + "-" + i.code, i.detail);
        if (p.topology() != PatchTopology::Disk)
            issue(stage + "-topology", "materialized patch is not a disk");
        // layer and ring vertices must be flat once complete
        for (int v = 0; v < p.vertex_count(); ++v) {
            if (core_set.count(p.vertex_name(v))) continue;
            if (p.status(v) == VertexStatus::Rim) continue;
            std::string why;
            if (!is_flat_complete(p, v, &why))
                issue(stage + "-flat", "vertex " + p.vertex_name(v) + ": " + why);
        }
    };

    check_stage(eng->materialized(), "glued");
    if (!val.issues.empty()) return val;

    // the compact set core+layer, before further rings
    const Patch k1 = eng->materialized();
    std::vector<std::string> k1_rim;
    try {
        for (const auto& c : rim_walk(k1))
            for (int v : c.vertices) k1_rim.push_back(k1.vertex_name(v));
    } catch (const std::exception& e) {
        issue("structure", e.what());
        return val;
    }

    Rational total_first;
    bool have_total = false;

    const int rings = extra_periods * eng->period();
    for (int r = 0; r < rings; ++r) {
        std::vector<std::string> completed = eng->rim_names();
        if (!eng->replay_ring()) {
            for (const auto& i : eng->issues()) val.issues.push_back(i);
            return val;
        }
        const Patch& p = eng->materialized();
        check_stage(p, "ring" + std::to_string(r + 1));
        for (const auto& nm : completed) {
            auto id = p.vertex_id(nm);
            std::string why;
            if (!id || !is_flat_complete(p, *id, &why))
                issue("ring-flat", "replayed ring leaves " + nm + " non-flat: " + why);
        }
        if (!val.issues.empty()) return val;

        Rational total;
        for (int v = 0; v < p.vertex_count(); ++v) {
            if (p.status(v) == VertexStatus::Rim) continue;
            if (!core_set.count(p.vertex_name(v))) continue;
            total += curvature_of(pattern_at(p, v));
        }
        if (!have_total) {
            total_first = total;
            have_total = true;
        } else if (total != total_first) {
            issue("total-drift", "certified total changed between rings: " + total_first.str() +
                                     " vs " + total.str());
        }
    }

    // affine ring growth at period lag
    {
        const auto& sizes = eng->rim_sizes();
        const int p = eng->period();
        std::optional<long long> delta;
        for (std::size_t t = 0; t + static_cast<std::size_t>(p) < sizes.size(); ++t) {
            long long d = static_cast<long long>(sizes[t + static_cast<std::size_t>(p)]) -
                          static_cast<long long>(sizes[t]);
            if (!delta) delta = d;
            else if (*delta != d)
                issue("growth", "ring sizes do not grow affinely at the period lag");
        }
    }

    // Gauss-Bonnet balance on the final materialization, and the flat
    // two-ball margin around the core+layer rim
    const Patch& fin = eng->materialized();
    try {
        auto gb = gauss_bonnet_patch(fin);
        if (!gb.holds)
            issue("gauss-bonnet", "2pi*sum(Phi) + sum(pi - theta) != 2pi on the materialization");
        if (have_total && gb.interior_sum != total_first)
            issue("cross-check", "vertex sum " + total_first.str() +
                                     " disagrees with the balance sum " + gb.interior_sum.str());
    } catch (const std::exception& e) {
        issue("gauss-bonnet", e.what());
    }
    for (const auto& nm : k1_rim) {
        auto id = fin.vertex_id(nm);
        if (!id) continue;
        for (int y : ball(fin, *id, 2)) {
            if (fin.status(y) == VertexStatus::Rim) continue;
            if (core_set.count(fin.vertex_name(y)) &&
                !curvature_of(pattern_at(fin, y)).is_zero())
                issue("margin", "non-flat vertex " + fin.vertex_name(y) +
                                    " within distance 2 of the core+layer rim");
        }
    }

    // non-flat vertices confined to the core
    for (int v = 0; v < fin.vertex_count(); ++v) {
        if (fin.status(v) == VertexStatus::Rim) continue;
        if (!curvature_of(pattern_at(fin, v)).is_zero() && !core_set.count(fin.vertex_name(v)))
            issue("support", "non-flat vertex " + fin.vertex_name(v) + " outside the core");
    }

    // surface-boundary statuses on the materialization must be flat with
    // the admissible boundary patterns
    for (int v = 0; v < fin.vertex_count(); ++v) {
        if (fin.status(v) != VertexStatus::SurfaceBoundary) continue;
        if (core_set.count(fin.vertex_name(v))) continue;
        auto pat = pattern_at(fin, v);
        bool admissible = pat == make_boundary_pattern({3, 6}) ||
                          pat == make_boundary_pattern({4, 4}) ||
                          pat == make_boundary_pattern({3, 3, 3});
        if (!admissible)
            issue("boundary-pattern", "surface-boundary vertex " + fin.vertex_name(v) +
                                          " has non-flat pattern " + pat.str());
    }
    return val;
}

CertifiedTotal certified_total(const EndWitness& w) {
    auto val = validate_witness(w);
    if (!val.valid())
        throw std::invalid_argument("certified_total: invalid witness:\n" + val.str());
    RingEngine eng(w);
    const Patch& k1 = eng.materialized();
    std::set<std::string> core_set(eng.core_vertex_names().begin(), eng.core_vertex_names().end());

    CertifiedTotal out;
    for (int v = 0; v < k1.vertex_count(); ++v) {
        if (k1.status(v) == VertexStatus::Rim) continue;
        if (!core_set.count(k1.vertex_name(v))) continue;
        out.total += curvature_of(pattern_at(k1, v));
    }
    out.report = curvature_report(k1);
    auto gb = gauss_bonnet_patch(k1);
    out.rim_turning_pi = gb.rim_turning_pi;
    out.cross_check_ok = gb.holds && gb.interior_sum == out.total;
    if (!out.cross_check_ok)
        throw std::logic_error("certified_total: vertex sum and boundary balance disagree");
    return out;
}

TheoremVerdict theorem_check(const EndWitness& w) {
    CertifiedTotal ct = certified_total(w);
    TheoremVerdict v;
    v.total = ct.total;
    auto q12 = quantization_check(ct.total, Rational(1, 12));
    v.quantized_twelfth = q12.integral;
    v.twelfth_multiple = q12.multiple;
    auto qfine = quantization_check(ct.total, Rational(BigInt(1), BigInt("219060189739591200")));
    v.quantized_fine = qfine.integral;
    v.cohn_vossen_ok = cohn_vossen_check(ct.total, w.kind == EndWitness::Kind::Planar
                                                       ? CurvatureSetting::Planar
                                                       : CurvatureSetting::Boundary);
    v.nonflat_count = ct.report.nonflat.size();
    if (w.kind == EndWitness::Kind::Boundary) v.nonflat_bound_ok = v.nonflat_count <= 861;
    return v;
}

Patch materialize(const EndWitness& w, int extra_periods) {
    RingEngine eng(w);
    const int rings = extra_periods * eng.period();
    for (int r = 0; r < rings; ++r) {
        if (!eng.replay_ring())
            throw std::invalid_argument("materialize: replay failed: " +
                                        (eng.issues().empty() ? std::string("unknown")
                                                              : eng.issues().back().detail));
    }
    return eng.materialized();
}

// ---------------------------------------------------------------------
// ".wit" file format
// ---------------------------------------------------------------------

EndWitness parse_wit(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::string section;
    std::set<std::string> seen_sections;
    TessDocument core_doc, layer_doc;
    EndWitness w;
    bool kind_set = false;

    auto tokens_of = [](const std::string& l) {
        std::vector<std::string> out;
        std::istringstream ls(l);
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            out.push_back(tok);
        }
        return out;
    };

    while (std::getline(is, line)) {
        ++lineno;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (head == "KIND") {
            if (toks.size() != 2) throw ParseError("KIND needs one argument", lineno);
            if (kind_set) throw ParseError("duplicate KIND", lineno);
            if (toks[1] == "planar") w.kind = EndWitness::Kind::Planar;
            else if (toks[1] == "boundary") w.kind = EndWitness::Kind::Boundary;
            else throw ParseError("KIND must be planar or boundary", lineno);
            kind_set = true;
            continue;
        }
        if (head == "CORE" || head == "LAYER" || head == "ATTACH" || head == "SHIFT") {
            if (toks.size() != 1) throw ParseError("section header takes no arguments", lineno);
            if (!seen_sections.insert(head).second)
                throw ParseError("duplicate section " + head, lineno);
            section = head;
            continue;
        }
        if (section == "CORE" || section == "LAYER") {
            TessDocument& doc = section == "CORE" ? core_doc : layer_doc;
            if (head == "face") {
                if (toks.size() < 4) throw ParseError("face needs at least 3 vertex ids", lineno);
                doc.faces.emplace_back(toks.begin() + 1, toks.end());
            } else if (head == "boundary") {
                if (toks.size() < 2) throw ParseError("boundary needs at least 1 vertex id", lineno);
                doc.boundary.insert(toks.begin() + 1, toks.end());
            } else {
                throw ParseError("unknown directive '" + head + "' in " + section, lineno);
            }
        } else if (section == "ATTACH" || section == "SHIFT") {
            if (toks.size() != 2) throw ParseError(section + " lines need exactly 2 ids", lineno);
            auto& vec = section == "ATTACH" ? w.attach : w.shift;
            vec.emplace_back(toks[0], toks[1]);
        } else {
            throw ParseError("content before any section", lineno);
        }
    }
    for (const char* s : {"CORE", "LAYER", "ATTACH", "SHIFT"})
        if (!seen_sections.count(s)) throw ParseError(std::string("missing section ") + s, lineno);
    if (!kind_set) throw ParseError("missing KIND", lineno);
    w.core = core_doc.build();
    w.layer = layer_doc.build();
    return w;
}

std::string serialize_wit(const EndWitness& w) {
    std::ostringstream os;
    os << "KIND " << (w.kind == EndWitness::Kind::Planar ? "planar" : "boundary") << "\n";
    os << "CORE\n" << serialize_tess(tess_from_patch(w.core));
    os << "LAYER\n" << serialize_tess(tess_from_patch(w.layer));
    os << "ATTACH\n";
    for (const auto& [a, b] : w.attach) os << a << ' ' << b << '\n';
    os << "SHIFT\n";
    for (const auto& [a, b] : w.shift) os << a << ' ' << b << '\n';
    return os.str();
}

EndWitness load_wit_file(const std::string& path) { return parse_wit(read_text_file(path)); }

void save_wit_file(const std::string& path, const EndWitness& w) {
    write_text_file(path, serialize_wit(w));
}

} // namespace curvtess
