#include "curvtess/patch.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace curvtess {

std::string Pattern::str() const {
    std::ostringstream os;
    os << (kind == Kind::Interior ? "(" : "[");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i) os << ",";
        os << degrees[i];
    }
    os << (kind == Kind::Interior ? ")" : "]");
    return os.str();
}

Pattern make_interior_pattern(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end());
    return Pattern{std::move(degrees), Pattern::Kind::Interior};
}

Pattern make_boundary_pattern(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end());
    return Pattern{std::move(degrees), Pattern::Kind::SurfaceBoundary};
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& i : issues) os << i.code << ": " << i.detail << "\n";
    return os.str();
}

namespace {

// Canonical key of a vertex cycle under rotation and reflection; used for
// duplicate-face detection.
std::vector<int> canonical_cycle(const std::vector<int>& cycle) {
    auto best_rotation = [](const std::vector<int>& c) {
        std::vector<int> best = c;
        std::vector<int> cur = c;
        for (std::size_t i = 1; i < c.size(); ++i) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (cur < best) best = cur;
        }
        return best;
    };
    std::vector<int> fwd = best_rotation(cycle);
    std::vector<int> rev(cycle.rbegin(), cycle.rend());
    rev = best_rotation(rev);
    return std::min(fwd, rev);
}

} // namespace

std::optional<int> Patch::vertex_id(const std::string& name) const {
    auto it = name_to_id_.find(name);
    if (it == name_to_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Patch::edge_between(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = edge_ids_.find({a, b});
    if (it == edge_ids_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> Patch::fan_degrees(int v) const {
    std::vector<int> out;
    out.reserve(fans_[v].size());
    for (int f : fans_[v]) out.push_back(face_degree(f));
    return out;
}

bool Patch::has_rim() const {
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edges_[e].face_count == 1 && !edge_on_dS_[e]) return true;
    return false;
}

const std::vector<std::string>& Patch::input_face_cycles_names(int f) const {
    return input_faces_[f];
}

std::vector<int> Patch::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(vertex_edges_[v].size());
    for (int e : vertex_edges_[v])
        out.push_back(edges_[e].a == v ? edges_[e].b : edges_[e].a);
    return out;
}

Patch Patch::build(const std::vector<std::vector<std::string>>& face_cycles,
                   const std::set<std::string>& boundary_decl, BuildMode mode) {
    Patch p;
    auto fail = [&](const std::string& code, const std::string& msg) {
        if (mode == BuildMode::Strict) throw PatchBuildError(code + ": " + msg);
        p.build_issues_.push_back({code, msg});
    };

    if (face_cycles.empty()) throw PatchBuildError("empty: no faces given");

    auto intern = [&](const std::string& name) {
        auto it = p.name_to_id_.find(name);
        if (it != p.name_to_id_.end()) return it->second;
        int id = static_cast<int>(p.names_.size());
        p.names_.push_back(name);
        p.name_to_id_.emplace(name, id);
        return id;
    };

    std::set<std::vector<int>> seen_faces;
    for (const auto& cyc : face_cycles) {
        std::vector<int> ids;
        ids.reserve(cyc.size());
        for (const auto& n : cyc) ids.push_back(intern(n));
        if (ids.size() < 3) {
            fail("face-too-short", "face cycle of length " + std::to_string(ids.size()));
            if (mode == BuildMode::Permissive && ids.size() < 2) continue;
        }
        std::vector<int> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            fail("face-not-simple", "repeated vertex within one face cycle");
            continue;
        }
        auto key = canonical_cycle(ids);
        if (!seen_faces.insert(key).second) {
            fail("duplicate-face", "face repeated in input");
            continue;
        }
        p.faces_.push_back(std::move(ids));
        p.input_faces_.push_back(cyc);
    }

    const int V = p.vertex_count();
    const int F = p.face_count();
    p.vertex_edges_.assign(V, {});
    p.vertex_faces_.assign(V, {});
    p.declared_.assign(V, 0);
    for (const auto& n : boundary_decl) {
        auto it = p.name_to_id_.find(n);
        if (it != p.name_to_id_.end()) p.declared_[it->second] = 1;
    }

    // Edge set and edge->face incidence.
    for (int f = 0; f < F; ++f) {
        const auto& c = p.faces_[f];
        const int k = static_cast<int>(c.size());
        for (int i = 0; i < k; ++i) {
            int a = c[i], b = c[(i + 1) % k];
            int lo = std::min(a, b), hi = std::max(a, b);
            auto it = p.edge_ids_.find({lo, hi});
            int e;
            if (it == p.edge_ids_.end()) {
                e = static_cast<int>(p.edges_.size());
                p.edge_ids_.emplace(std::make_pair(lo, hi), e);
                p.edges_.push_back(PatchEdge{lo, hi, {-1, -1}, 0});
                p.vertex_edges_[lo].push_back(e);
                p.vertex_edges_[hi].push_back(e);
            } else {
                e = it->second;
            }
            PatchEdge& pe = p.edges_[e];
            if (pe.face_count < 2) pe.faces[pe.face_count] = f;
            pe.face_count++;
            if (pe.face_count == 3)
                fail("condition-ii", "edge " + p.names_[lo] + "-" + p.names_[hi] +
                                         " incident to 3 or more faces");
        }
        for (int v : c) p.vertex_faces_[v].push_back(f);
    }

    // Orient faces coherently across interior edges (breadth first,
    // flipping as needed). A forced inconsistency means the face cycles
    // cannot come from an orientable embedding.
    {
        std::vector<int> state(F, 0); // 0 unseen, 1 keep, -1 flip
        auto raw_dir = [&](int f, int a, int b) {
            const auto& c = p.faces_[f];
            const int k = static_cast<int>(c.size());
            for (int i = 0; i < k; ++i) {
                if (c[i] == a && c[(i + 1) % k] == b) return 1;
                if (c[i] == b && c[(i + 1) % k] == a) return -1;
            }
            return 0;
        };
        for (int seed = 0; seed < F; ++seed) {
            if (state[seed]) continue;
            state[seed] = 1;
            std::deque<int> q{seed};
            while (!q.empty()) {
                int f = q.front();
                q.pop_front();
                const auto& c = p.faces_[f];
                const int k = static_cast<int>(c.size());
                for (int i = 0; i < k; ++i) {
                    int a = c[i], b = c[(i + 1) % k];
                    auto eit = p.edge_ids_.find({std::min(a, b), std::max(a, b)});
                    const PatchEdge& pe = p.edges_[eit->second];
                    if (pe.face_count != 2) continue;
                    int g = pe.faces[0] == f ? pe.faces[1] : pe.faces[0];
                    if (g < 0 || g == f) continue;
                    int want = -(raw_dir(f, a, b) * state[f]); // g must traverse b->a
                    int need = raw_dir(g, a, b) == want ? 1 : -1;
                    if (state[g] == 0) {
                        state[g] = need;
                        q.push_back(g);
                    } else if (state[g] != need) {
                        p.orientable_ = false;
                    }
                }
            }
        }
        if (!p.orientable_)
            p.build_issues_.push_back({"orientability", "face cycles admit no coherent orientation"});
        for (int f = 0; f < F; ++f)
            if (state[f] == -1) std::reverse(p.faces_[f].begin(), p.faces_[f].end());
    }

    // Fans: at each vertex walk faces through shared edges following the
    // orientation. A single cycle or a single open run is a manifold fan.
    p.fans_.assign(V, {});
    p.fan_closed_.assign(V, 0);
    p.fan_manifold_.assign(V, 1);
    std::vector<std::pair<int, int>> fan_ends(V, {-1, -1}); // boundary edges of open fans
    for (int v = 0; v < V; ++v) {
        const auto& incident = p.vertex_faces_[v];
        if (incident.empty()) {
            p.fan_manifold_[v] = 0;
            continue;
        }
        std::map<int, int> out_face, in_face; // edge id -> face (corner at v)
        bool dup = false;
        for (int f : incident) {
            const auto& c = p.faces_[f];
            const int k = static_cast<int>(c.size());
            for (int i = 0; i < k; ++i) {
                if (c[i] != v) continue;
                int prev = c[(i + k - 1) % k], next = c[(i + 1) % k];
                int ein = *p.edge_between(prev, v);
                int eout = *p.edge_between(v, next);
                if (!in_face.emplace(ein, f).second) dup = true;
                if (!out_face.emplace(eout, f).second) dup = true;
            }
        }
        if (dup || !p.orientable_) {
            // fall back: arbitrary order, flagged
            if (dup) p.fan_manifold_[v] = 0;
            p.fans_[v] = incident;
            continue;
        }
        auto other_face = [&](int e, int f) -> int {
            const PatchEdge& pe = p.edges_[e];
            if (pe.face_count != 2) return -1;
            return pe.faces[0] == f ? pe.faces[1] : pe.faces[0];
        };
        auto out_edge = [&](int f) -> int {
            for (const auto& [e, ff] : out_face)
                if (ff == f) return e;
            return -1;
        };
        auto in_edge = [&](int f) -> int {
            for (const auto& [e, ff] : in_face)
                if (ff == f) return e;
            return -1;
        };
        // find a start: a face with no predecessor across its incoming edge
        int start = incident.front();
        bool closed = true;
        for (int f : incident) {
            int ein = in_edge(f);
            if (ein < 0 || other_face(ein, f) < 0) {
                start = f;
                closed = false;
                break;
            }
        }
        std::vector<int> walk;
        int cur = start;
        while (true) {
            walk.push_back(cur);
            int eout = out_edge(cur);
            if (eout < 0) break;
            int nxt = other_face(eout, cur);
            if (nxt < 0) break;
            if (nxt == start) { closed = true; break; }
            if (walk.size() > incident.size()) break;
            cur = nxt;
        }
        if (walk.size() != incident.size()) {
            p.fan_manifold_[v] = 0;
            p.fans_[v] = incident;
            continue;
        }
        p.fans_[v] = walk;
        p.fan_closed_[v] = closed ? 1 : 0;
        if (!closed) fan_ends[v] = {in_edge(walk.front()), out_edge(walk.back())};
    }

    // Surface-boundary edges: patch-boundary edges with both endpoints
    // declared on the surface boundary.
    p.edge_on_dS_.assign(p.edges_.size(), 0);
    for (std::size_t e = 0; e < p.edges_.size(); ++e) {
        const PatchEdge& pe = p.edges_[e];
        if (pe.face_count == 1 && p.declared_[pe.a] && p.declared_[pe.b])
            p.edge_on_dS_[e] = 1;
    }

    // Vertex statuses.
    p.status_.assign(V, VertexStatus::Rim);
    for (int v = 0; v < V; ++v) {
        if (!p.fan_manifold_[v]) continue;
        if (p.fan_closed_[v]) {
            if (p.declared_[v])
                fail("declared-interior", "declared boundary vertex " + p.names_[v] +
                                              " has a closed fan");
            p.status_[v] = VertexStatus::Interior;
        } else if (p.declared_[v]) {
            auto [e1, e2] = fan_ends[v];
            bool complete = e1 >= 0 && e2 >= 0 && p.edge_on_dS_[e1] && p.edge_on_dS_[e2];
            p.status_[v] = complete ? VertexStatus::SurfaceBoundary : VertexStatus::Rim;
        }
    }

    // Boundary walks. With coherent counterclockwise faces each boundary
    // edge is walked opposite to its face's traversal, keeping the patch
    // on the left; at manifold vertices this gives a unique continuation.
    {
        std::map<int, std::pair<int, int>> outgoing; // vertex -> (next vertex, edge)
        bool walkable = true;
        for (std::size_t e = 0; e < p.edges_.size(); ++e) {
            const PatchEdge& pe = p.edges_[e];
            if (pe.face_count != 1) continue;
            int f = pe.faces[0];
            const auto& c = p.faces_[f];
            const int k = static_cast<int>(c.size());
            int from = -1, to = -1;
            for (int i = 0; i < k; ++i) {
                int a = c[i], b = c[(i + 1) % k];
                if ((a == pe.a && b == pe.b) || (a == pe.b && b == pe.a)) {
                    from = b; to = a; // reverse of face direction
                    break;
                }
            }
            if (from < 0 || !outgoing.emplace(from, std::make_pair(to, (int)e)).second)
                walkable = false;
        }
        if (!walkable) {
            p.build_issues_.push_back({"boundary-walk", "patch boundary is not a disjoint union of simple walks"});
        } else {
            std::set<int> used;
            for (const auto& [start, first] : outgoing) {
                if (used.count(start)) continue;
                std::vector<int> cyc;
                int cur = start;
                while (!used.count(cur)) {
                    used.insert(cur);
                    cyc.push_back(cur);
                    auto it = outgoing.find(cur);
                    if (it == outgoing.end()) break;
                    cur = it->second.first;
                }
                if (cur == start && !cyc.empty())
                    p.boundary_cycles_.push_back(std::move(cyc));
                else
                    p.build_issues_.push_back({"boundary-walk", "open boundary walk"});
            }
        }
    }

    // Connectivity over vertices.
    {
        std::vector<char> seen(V, 0);
        std::deque<int> q{0};
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int e : p.vertex_edges_[v]) {
                int w = p.edges_[e].a == v ? p.edges_[e].b : p.edges_[e].a;
                if (!seen[w]) { seen[w] = 1; ++cnt; q.push_back(w); }
            }
        }
        p.connected_ = cnt == V;
    }

    const int chi = p.euler_characteristic();
    const int rims = static_cast<int>(p.boundary_cycles_.size());
    if (!p.connected_)
        p.topology_ = PatchTopology::Other;
    else if (rims == 0)
        p.topology_ = chi == 2 ? PatchTopology::Sphere : PatchTopology::Other;
    else if (rims == 1 && chi == 1)
        p.topology_ = PatchTopology::Disk;
    else if (rims == 2 && chi == 0)
        p.topology_ = PatchTopology::Annulus;
    else
        p.topology_ = PatchTopology::Other;

    return p;
}

ValidationReport validate_tessellation(const Patch& p) {
    ValidationReport r;
    r.issues = p.build_issues_;

    // condition (ii): every edge in exactly two faces, or one on the
    // patch boundary / surface boundary.
    for (std::size_t e = 0; e < p.edges_.size(); ++e) {
        const PatchEdge& pe = p.edges_[e];
        if (pe.face_count > 2)
            r.issues.push_back({"condition-ii",
                                "edge " + p.vertex_name(pe.a) + "-" + p.vertex_name(pe.b) + " lies in " +
                                    std::to_string(pe.face_count) + " faces"});
    }

    // condition (iii): face closures meet in nothing, one vertex, or one edge.
    {
        std::map<std::pair<int, int>, int> shared_vertices;
        for (int v = 0; v < p.vertex_count(); ++v) {
            const auto& fs = p.vertex_faces_[v];
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (std::size_t j = i + 1; j < fs.size(); ++j) {
                    auto key = std::minmax(fs[i], fs[j]);
                    shared_vertices[{key.first, key.second}]++;
                }
        }
        std::map<std::pair<int, int>, int> shared_edges;
        for (const auto& pe : p.edges_) {
            if (pe.face_count == 2) {
                auto key = std::minmax(pe.faces[0], pe.faces[1]);
                shared_edges[{key.first, key.second}]++;
            }
        }
        for (const auto& [pair, sv] : shared_vertices) {
            int se = 0;
            if (auto it = shared_edges.find(pair); it != shared_edges.end()) se = it->second;
            bool ok = (se == 0 && sv == 1) || (se == 1 && sv == 2);
            if (!ok)
                r.issues.push_back({"condition-iii",
                                    "faces #" + std::to_string(pair.first) + " and #" +
                                        std::to_string(pair.second) + " share " + std::to_string(sv) +
                                        " vertices and " + std::to_string(se) + " edges"});
        }
    }

    // vertex links: single cycle or single run of faces.
    for (int v = 0; v < p.vertex_count(); ++v)
        if (!p.fan_manifold_[v])
            r.issues.push_back({"vertex-link", "vertex " + p.vertex_name(v) + " has a non-manifold fan"});

    // degree bounds
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (p.status_[v] == VertexStatus::Interior && p.degree(v) < 3)
            r.issues.push_back({"degree", "interior vertex " + p.vertex_name(v) + " has degree " +
                                              std::to_string(p.degree(v))});
        if (p.status_[v] == VertexStatus::SurfaceBoundary && p.degree(v) < 2)
            r.issues.push_back({"degree", "surface-boundary vertex " + p.vertex_name(v) +
                                              " has degree " + std::to_string(p.degree(v))});
    }

    if (!p.connected())
        r.issues.push_back({"connectivity", "patch is not connected"});
    else if (p.topology() == PatchTopology::Other) {
        r.issues.push_back({"euler", "patch is neither a sphere (V-E+F=2), a disk (V-E+F=1, one boundary walk), nor an annulus; V-E+F=" +
                                         std::to_string(p.euler_characteristic()) + ", boundary walks=" +
                                         std::to_string(p.boundary_cycles().size())});
    }
    return r;
}

Pattern pattern_at(const Patch& p, int v) {
    if (v < 0 || v >= p.vertex_count()) throw std::invalid_argument("pattern_at: bad vertex id");
    switch (p.status(v)) {
    case VertexStatus::Interior:
        return make_interior_pattern(p.fan_degrees(v));
    case VertexStatus::SurfaceBoundary:
        return make_boundary_pattern(p.fan_degrees(v));
    case VertexStatus::Rim:
    default:
        throw std::invalid_argument("pattern_at: vertex " + p.vertex_name(v) +
                                    " is a rim vertex; its pattern is incomplete");
    }
}

std::vector<int> ball(const Patch& p, int v, int r) {
    if (v < 0 || v >= p.vertex_count()) throw std::invalid_argument("ball: bad vertex id");
    std::vector<int> dist(p.vertex_count(), -1);
    std::deque<int> q{v};
    dist[v] = 0;
    std::vector<int> out{v};
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (dist[x] == r) continue;
        for (int e : p.vertex_edge_ids(x)) {
            const PatchEdge& pe = p.edges()[e];
            int y = pe.a == x ? pe.b : pe.a;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                out.push_back(y);
                q.push_back(y);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RimComponent> rim_walk(const Patch& p) {
    if (p.boundary_cycles().empty())
        throw std::invalid_argument("rim_walk: closed patch has no rim");
    if (!p.has_rim())
        throw std::invalid_argument("rim_walk: patch boundary lies entirely on the surface boundary");
    std::vector<RimComponent> out;
    for (const auto& cyc : p.boundary_cycles()) {
        const int n = static_cast<int>(cyc.size());
        std::vector<char> rim_edge(n, 0);
        bool any_dS = false;
        for (int i = 0; i < n; ++i) {
            int e = *p.edge_between(cyc[i], cyc[(i + 1) % n]);
            rim_edge[i] = p.edge_on_surface_boundary(e) ? 0 : 1;
            if (!rim_edge[i]) any_dS = true;
        }
        if (!any_dS) {
            RimComponent c;
            c.vertices = cyc;
            c.cyclic = true;
            out.push_back(std::move(c));
            continue;
        }
        // split into maximal rim arcs
        for (int i = 0; i < n; ++i) {
            if (!rim_edge[i] || rim_edge[(i + n - 1) % n]) continue; // start of an arc
            RimComponent c;
            int j = i;
            c.vertices.push_back(cyc[j]);
            while (rim_edge[j]) {
                j = (j + 1) % n;
                c.vertices.push_back(cyc[j]);
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace curvtess
