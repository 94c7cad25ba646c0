#include "curvtess/constructions.hpp"
#include "curvtess/patterns.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace curvtess {

namespace {

std::string vtx(int x, int y) {
    std::ostringstream os;
    os << "v" << x << "_" << (y < 0 ? "m" : "") << std::abs(y);
    return os.str();
}

// Cell materials for a strip column. The triangle diagonals are fixed so
// that every junction vertex on the left edge of an M-strip touches one
// triangle and one square.
void emit_cell(std::vector<std::vector<std::string>>& faces, StripKind kind, int x, int y) {
    auto a = vtx(x, y), b = vtx(x + 1, y), c = vtx(x + 1, y + 1), d = vtx(x, y + 1);
    bool tri;
    bool upper_style = true; // diagonal from (x+1,y) to (x,y+1)
    switch (kind) {
    case StripKind::L1: tri = true; break;
    case StripKind::L2: tri = false; break;
    case StripKind::M1:
        tri = y >= 0;
        break;
    case StripKind::M2:
    default:
        tri = y < 0;
        upper_style = false; // diagonal from (x,y) to (x+1,y+1)
        break;
    }
    if (!tri) {
        faces.push_back({a, b, c, d});
    } else if (upper_style) {
        faces.push_back({a, b, d});
        faces.push_back({b, c, d});
    } else {
        faces.push_back({a, b, c});
        faces.push_back({a, c, d});
    }
}

struct Window {
    std::vector<std::vector<std::string>> faces;
    std::set<std::string> declared;
};

StripKind strip_type(const StripSequence& seq, int x) {
    const int T = static_cast<int>(seq.prefix.size());
    if (x < T) return seq.prefix[static_cast<std::size_t>(x)];
    return seq.period[static_cast<std::size_t>((x - T) % seq.period.size())];
}

Window build_window(const StripSequence& seq, int width, int height) {
    Window w;
    for (int x = 0; x < width; ++x)
        for (int y = -height; y < height; ++y) emit_cell(w.faces, strip_type(seq, x), x, y);
    for (int y = -height; y <= height; ++y) w.declared.insert(vtx(0, y));
    return w;
}

std::vector<std::string> rim_keys_of(const Patch& p, std::vector<std::string>* names) {
    auto comps = rim_walk(p);
    if (comps.size() != 1) throw std::invalid_argument("strip window rim is not a single walk");
    std::vector<std::string> keys;
    for (int v : comps[0].vertices) {
        std::string k = p.declared_on_surface_boundary(v) ? "b|" : "i|";
        for (int d : p.fan_degrees(v)) k += std::to_string(d) + ",";
        keys.push_back(k);
        if (names) names->push_back(p.vertex_name(v));
    }
    return keys;
}

// monotone state-preserving alignment of the outer walk onto the inner
std::optional<std::vector<int>> align_linear(const std::vector<std::string>& A,
                                             const std::vector<std::string>& B) {
    const int n = static_cast<int>(A.size());
    const int m = static_cast<int>(B.size());
    if (m < n) return std::nullopt;
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(m),
                                         std::vector<char>(static_cast<std::size_t>(n), 0));
    if (B[0] == A[0]) reach[0][0] = 1;
    for (int i = 1; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            if (B[static_cast<std::size_t>(i)] != A[static_cast<std::size_t>(j)]) continue;
            if (reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] ||
                (j > 0 && reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]))
                reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        }
    if (!reach[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n - 1)])
        return std::nullopt;
    std::vector<int> alpha(static_cast<std::size_t>(m));
    int j = n - 1;
    for (int i = m - 1; i >= 1; --i) {
        alpha[static_cast<std::size_t>(i)] = j;
        if (j > 0 && reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]) --j;
    }
    alpha[0] = 0;
    return alpha;
}

} // namespace

EndWitness build_strip_graph(const StripSequence& seq, int copies_materialized) {
    std::string why;
    if (!seq.legal(&why)) throw std::invalid_argument("build_strip_graph: " + why);
    if (copies_materialized < 2)
        throw std::invalid_argument("build_strip_graph: need at least two materialized periods");

    const int T = static_cast<int>(seq.prefix.size());
    const int p = static_cast<int>(seq.period.size());
    // enough material that the face-growth rings never feel the window edge
    const int core_steps = T + p * copies_materialized + 4;
    const int wbig = core_steps + p + 4;
    const int hbig = wbig + 4;

    Window win = build_window(seq, wbig, hbig);
    Patch big = Patch::build(win.faces, win.declared);

    // face-adjacency growth from the junction end of the surface boundary:
    // each step adds every face meeting the current patch rim, so the next
    // ring always completes the whole rim
    std::set<std::vector<std::string>> have; // canonical face keys
    std::vector<std::vector<std::string>> faces;
    auto face_key = [&](const std::vector<std::string>& f) {
        auto k = f;
        std::sort(k.begin(), k.end());
        return k;
    };
    auto add_face = [&](const std::vector<std::string>& f) {
        if (have.insert(face_key(f)).second) faces.push_back(f);
    };
    std::map<std::vector<std::string>, std::vector<std::string>> by_vertex_key; // unused
    (void)by_vertex_key;

    // seed: faces around the first boundary vertices near the junction
    std::set<std::string> seed_feet{vtx(0, 0), vtx(0, 1), vtx(0, -1)};
    for (int f = 0; f < big.face_count(); ++f) {
        for (int v : big.face(f)) {
            if (seed_feet.count(big.vertex_name(v))) {
                std::vector<std::string> cyc;
                for (int x : big.face(f)) cyc.push_back(big.vertex_name(x));
                add_face(cyc);
                break;
            }
        }
    }

    auto declared_in = [&](const std::vector<std::vector<std::string>>& fs) {
        std::set<std::string> names;
        for (const auto& f : fs)
            for (const auto& nm : f) names.insert(nm);
        std::set<std::string> decl;
        for (const auto& nm : names)
            if (win.declared.count(nm)) decl.insert(nm);
        return decl;
    };

    std::vector<std::vector<std::string>> core_faces;
    std::vector<std::vector<std::string>> k1_faces;
    Patch core, k1;
    for (int step = 0; step < core_steps + p; ++step) {
        Patch cur = Patch::build(faces, declared_in(faces));
        auto comps = rim_walk(cur);
        std::set<std::string> rim_names;
        for (const auto& c : comps)
            for (int v : c.vertices) rim_names.insert(cur.vertex_name(v));
        // grow: all faces of the big window touching the rim
        std::vector<std::vector<std::string>> grown;
        for (int f = 0; f < big.face_count(); ++f) {
            bool touch = false;
            for (int v : big.face(f))
                if (rim_names.count(big.vertex_name(v))) { touch = true; break; }
            if (!touch) continue;
            std::vector<std::string> cyc;
            for (int v : big.face(f)) cyc.push_back(big.vertex_name(v));
            if (!have.count(face_key(cyc))) grown.push_back(cyc);
        }
        for (const auto& f : grown) add_face(f);
        if (step + 1 == core_steps) core_faces = faces;
    }
    k1_faces = faces;

    EndWitness w;
    w.kind = EndWitness::Kind::Boundary;
    w.core = Patch::build(core_faces, declared_in(core_faces));
    std::set<std::vector<std::string>> core_keys;
    for (const auto& f : core_faces) core_keys.insert(face_key(f));
    std::vector<std::vector<std::string>> layer_faces;
    for (const auto& f : k1_faces)
        if (!core_keys.count(face_key(f))) layer_faces.push_back(f);
    std::set<std::string> layer_names;
    for (const auto& f : layer_faces)
        for (const auto& nm : f) layer_names.insert(nm);
    std::set<std::string> layer_declared;
    for (const auto& nm : win.declared)
        if (layer_names.count(nm)) layer_declared.insert(nm);
    w.layer = Patch::build(layer_faces, layer_declared);

    Patch k1p = Patch::build(k1_faces, declared_in(k1_faces));
    std::vector<std::string> inner_names, outer_names;
    auto inner_keys = rim_keys_of(w.core, &inner_names);
    auto outer_keys = rim_keys_of(k1p, &outer_names);
    auto alpha = align_linear(inner_keys, outer_keys);
    if (!alpha)
        throw std::logic_error("build_strip_graph: growth rims do not align at the period lag");
    for (const auto& nm : inner_names) w.attach.emplace_back(nm, nm);
    for (std::size_t i = 0; i < outer_names.size(); ++i)
        w.shift.emplace_back(outer_names[i], inner_names[static_cast<std::size_t>((*alpha)[i])]);
    return w;
}

// ---------------------------------------------------------------------
// decomposition: peel boundary layers off a large materialization
// ---------------------------------------------------------------------

namespace {

struct PeelState {
    std::vector<std::vector<std::string>> faces;
    std::set<std::string> declared;
};

// remove the surface boundary line: faces touching it disappear, kept
// vertices that lost a face become the new surface boundary
PeelState peel(const PeelState& s) {
    PeelState out;
    std::set<std::string> removed = s.declared;
    std::set<std::string> exposed;
    for (const auto& f : s.faces) {
        bool touches = false;
        for (const auto& nm : f)
            if (removed.count(nm)) touches = true;
        if (!touches) {
            out.faces.push_back(f);
        } else {
            for (const auto& nm : f)
                if (!removed.count(nm)) exposed.insert(nm);
        }
    }
    std::set<std::string> kept;
    for (const auto& f : out.faces)
        for (const auto& nm : f) kept.insert(nm);
    for (const auto& nm : exposed)
        if (kept.count(nm)) out.declared.insert(nm);
    return out;
}

} // namespace

StripDecomposition strip_decompose(const EndWitness& w_in) {
    StripDecomposition out;
    auto fail = [&](const std::string& msg) {
        out.ok = false;
        out.failure.push_back(msg);
        return out;
    };
    if (w_in.kind != EndWitness::Kind::Boundary)
        return fail("strip decomposition applies to boundary witnesses");

    EndWitness w = subdivide_hexagons(w_in);
    CertifiedTotal ct;
    try {
        ct = certified_total(w);
    } catch (const std::exception& e) {
        return fail(std::string("witness does not certify: ") + e.what());
    }
    if (ct.total != Rational(1, 12))
        return fail("total curvature is " + ct.total.str() + ", not 1/12");

    const int p_wit = RingEngine(w).period();
    const int want_m = 2 * p_wit + 2;

    for (int extra = 4; extra <= 40; extra += 6) {
        Patch big = materialize(w, extra);
        PeelState st;
        for (int f = 0; f < big.face_count(); ++f) {
            std::vector<std::string> cyc;
            for (int v : big.face(f)) cyc.push_back(big.vertex_name(v));
            st.faces.push_back(std::move(cyc));
        }
        for (int v = 0; v < big.vertex_count(); ++v)
            if (big.declared_on_surface_boundary(v)) st.declared.insert(big.vertex_name(v));

        std::vector<StripKind> prefix;
        std::vector<bool> same_flags; // relative M types
        std::optional<std::string> junction; // current junction vertex name
        bool exhausted = false;
        out.failure.clear();

        Patch prev_patch = big;
        bool first_m_done = false;
        while (static_cast<int>(same_flags.size()) < want_m) {
            Patch cur;
            try {
                cur = Patch::build(st.faces, st.declared);
            } catch (const std::exception& e) {
                exhausted = true;
                break;
            }
            // classify the surface boundary
            std::vector<int> ds_vertices;
            for (int v = 0; v < cur.vertex_count(); ++v)
                if (cur.status(v) == VertexStatus::SurfaceBoundary) ds_vertices.push_back(v);
            if (ds_vertices.size() < 6) {
                exhausted = true;
                break;
            }
            std::vector<int> nonflat;
            std::set<int> ds_face_degrees;
            for (int v : ds_vertices) {
                auto pat = pattern_at(cur, v);
                if (static_cast<int>(pat.degrees.size()) + 1 < 3)
                    return fail("boundary vertex of degree below 3 encountered");
                if (!curvature_boundary(pat).is_zero()) nonflat.push_back(v);
                for (int d : pat.degrees) ds_face_degrees.insert(d);
            }
            if (nonflat.empty()) {
                if (first_m_done)
                    return fail("flat boundary reappeared after the M-phase began");
                if (ds_face_degrees == std::set<int>{3})
                    prefix.push_back(StripKind::L1);
                else if (ds_face_degrees == std::set<int>{4})
                    prefix.push_back(StripKind::L2);
                else
                    return fail("flat boundary of mixed face degrees is not a strip");
                if (static_cast<int>(prefix.size()) > 40) return fail("prefix did not terminate");
            } else {
                if (nonflat.size() > 1)
                    return fail("several curved boundary vertices; not of strip form");
                auto pat = pattern_at(cur, nonflat[0]);
                if (!(pat == make_boundary_pattern({3, 4}))) {
                    Rational phi = curvature_boundary(pat);
                    return fail("boundary vertex of pattern " + pat.str() + " carries curvature " +
                                phi.str() + (phi > Rational(1, 12) ? " > 1/12" : "") +
                                "; not of strip form");
                }
                const std::string jname = cur.vertex_name(nonflat[0]);
                if (!first_m_done) {
                    first_m_done = true;
                    same_flags.push_back(true); // canonical first strip
                } else {
                    // relative type from the junction's fan one peel ago
                    auto id = prev_patch.vertex_id(jname);
                    if (!id) return fail("junction vertex lost between peels");
                    auto word = prev_patch.fan_degrees(*id);
                    const int fl = static_cast<int>(word.size());
                    bool squares_adjacent = false;
                    for (int t = 0; t < fl; ++t)
                        if (word[static_cast<std::size_t>(t)] == 4 &&
                            word[static_cast<std::size_t>((t + 1) % fl)] == 4)
                            squares_adjacent = true;
                    same_flags.push_back(squares_adjacent);
                }
                junction = jname;
            }
            prev_patch = cur;
            st = peel(st);
        }
        (void)junction;
        if (exhausted) continue; // materialize more and retry

        // resolve relative flags into kinds, first M canonical
        std::vector<StripKind> ms;
        StripKind cur_kind = StripKind::M1;
        for (std::size_t i = 0; i < same_flags.size(); ++i) {
            if (i == 0)
                cur_kind = StripKind::M1;
            else if (!same_flags[i])
                cur_kind = cur_kind == StripKind::M1 ? StripKind::M2 : StripKind::M1;
            ms.push_back(cur_kind);
        }
        // find the smallest period consistent with the observed word
        int period = -1;
        for (int q = 1; q <= p_wit; ++q) {
            bool okq = true;
            for (std::size_t i = 0; i + static_cast<std::size_t>(q) < ms.size() && okq; ++i)
                okq = ms[i] == ms[i + static_cast<std::size_t>(q)];
            if (okq) {
                period = q;
                break;
            }
        }
        if (period < 0) return fail("no period up to the witness period fits the peeled strips");
        out.ok = true;
        out.sequence.prefix = prefix;
        out.sequence.period.assign(ms.begin(), ms.begin() + period);
        out.sequence = out.sequence.canonical();
        return out;
    }
    return fail("materialization exhausted before the decomposition stabilized");
}

} // namespace curvtess
