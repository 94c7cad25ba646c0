#include "curvtess/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace curvtess {

namespace {

std::string coord_name(const char* prefix, int a, int b) {
    std::ostringstream os;
    os << prefix << (a < 0 ? "m" : "") << std::abs(a) << "_" << (b < 0 ? "m" : "") << std::abs(b);
    return os.str();
}

int hexdist(int a, int b) { return (std::abs(a) + std::abs(b) + std::abs(a + b)) / 2; }

} // namespace

Patch tetrahedron() {
    return Patch::build({{"a", "b", "c"}, {"a", "d", "b"}, {"b", "d", "c"}, {"c", "d", "a"}});
}

Patch cube() {
    return Patch::build({{"a", "b", "c", "d"},
                         {"e", "h", "g", "f"},
                         {"a", "e", "f", "b"},
                         {"b", "f", "g", "c"},
                         {"c", "g", "h", "d"},
                         {"d", "h", "e", "a"}});
}

Patch dodecahedron() {
    auto nm = [](const char* p, int i) { return std::string(p) + std::to_string(((i % 5) + 5) % 5); };
    std::vector<std::vector<std::string>> faces;
    faces.push_back({nm("a", 0), nm("a", 1), nm("a", 2), nm("a", 3), nm("a", 4)});
    for (int i = 0; i < 5; ++i)
        faces.push_back({nm("a", i), nm("a", i + 1), nm("b", i + 1), nm("c", i), nm("b", i)});
    for (int i = 0; i < 5; ++i)
        faces.push_back({nm("c", i), nm("b", i + 1), nm("c", i + 1), nm("d", i + 1), nm("d", i)});
    faces.push_back({nm("d", 4), nm("d", 3), nm("d", 2), nm("d", 1), nm("d", 0)});
    return Patch::build(faces);
}

Patch prism(int n) {
    if (n < 3) throw std::invalid_argument("prism: n >= 3");
    auto nm = [n](const char* p, int i) { return std::string(p) + std::to_string(((i % n) + n) % n); };
    std::vector<std::vector<std::string>> faces;
    std::vector<std::string> top, bottom;
    for (int i = 0; i < n; ++i) top.push_back(nm("t", i));
    for (int i = n - 1; i >= 0; --i) bottom.push_back(nm("b", i));
    faces.push_back(top);
    faces.push_back(bottom);
    for (int i = 0; i < n; ++i)
        faces.push_back({nm("t", i + 1), nm("t", i), nm("b", i), nm("b", i + 1)});
    return Patch::build(faces);
}

Patch antiprism(int n) {
    if (n < 3) throw std::invalid_argument("antiprism: n >= 3");
    auto nm = [n](const char* p, int i) { return std::string(p) + std::to_string(((i % n) + n) % n); };
    std::vector<std::vector<std::string>> faces;
    std::vector<std::string> top, bottom;
    for (int i = 0; i < n; ++i) top.push_back(nm("t", i));
    for (int i = n - 1; i >= 0; --i) bottom.push_back(nm("b", i));
    faces.push_back(top);
    faces.push_back(bottom);
    for (int i = 0; i < n; ++i) {
        faces.push_back({nm("t", i + 1), nm("t", i), nm("b", i)});
        faces.push_back({nm("t", i + 1), nm("b", i), nm("b", i + 1)});
    }
    return Patch::build(faces);
}

Patch triangular_disk(int radius) {
    if (radius < 1) throw std::invalid_argument("triangular_disk: radius >= 1");
    auto inside = [&](int a, int b) { return hexdist(a, b) <= radius; };
    std::vector<std::vector<std::string>> faces;
    for (int a = -radius - 1; a <= radius + 1; ++a) {
        for (int b = -radius - 1; b <= radius + 1; ++b) {
            if (inside(a, b) && inside(a + 1, b) && inside(a, b + 1))
                faces.push_back({coord_name("t", a, b), coord_name("t", a + 1, b),
                                 coord_name("t", a, b + 1)});
            if (inside(a + 1, b) && inside(a + 1, b + 1) && inside(a, b + 1))
                faces.push_back({coord_name("t", a + 1, b), coord_name("t", a + 1, b + 1),
                                 coord_name("t", a, b + 1)});
        }
    }
    return Patch::build(faces);
}

Patch square_disk(int radius) {
    if (radius < 1) throw std::invalid_argument("square_disk: radius >= 1");
    std::vector<std::vector<std::string>> faces;
    for (int x = -radius; x < radius; ++x)
        for (int y = -radius; y < radius; ++y)
            faces.push_back({coord_name("s", x, y), coord_name("s", x + 1, y),
                             coord_name("s", x + 1, y + 1), coord_name("s", x, y + 1)});
    return Patch::build(faces);
}

Patch hexagonal_disk(int radius) {
    if (radius < 0) throw std::invalid_argument("hexagonal_disk: radius >= 0");
    std::vector<std::vector<std::string>> faces;
    auto U = [](int a, int b) { return coord_name("u", a, b); };
    auto D = [](int a, int b) { return coord_name("d", a, b); };
    for (int a = -radius - 1; a <= radius + 1; ++a) {
        for (int b = -radius - 1; b <= radius + 1; ++b) {
            if (hexdist(a, b) > radius) continue;
            faces.push_back({U(a, b), D(a - 1, b), U(a - 1, b), D(a - 1, b - 1), U(a, b - 1),
                             D(a, b - 1)});
        }
    }
    return Patch::build(faces);
}

// ---------------------------------------------------------------------
// doubling
// ---------------------------------------------------------------------

namespace {

std::vector<std::vector<std::string>> own_faces(const Patch& p) {
    std::vector<std::vector<std::string>> out;
    for (int f = 0; f < p.face_count(); ++f) {
        std::vector<std::string> cyc;
        for (int v : p.face(f)) cyc.push_back(p.vertex_name(v));
        out.push_back(std::move(cyc));
    }
    return out;
}

std::set<std::string> declared_set(const Patch& p) {
    std::set<std::string> out;
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.declared_on_surface_boundary(v)) out.insert(p.vertex_name(v));
    return out;
}

} // namespace

Patch double_patch(const Patch& p) {
    if (declared_set(p).empty())
        throw std::invalid_argument("double_patch: patch has no surface boundary to glue along");
    std::vector<std::vector<std::string>> faces = own_faces(p);
    for (int f = 0; f < p.face_count(); ++f) {
        std::vector<std::string> cyc;
        for (int v : p.face(f)) {
            const std::string& n = p.vertex_name(v);
            cyc.push_back(p.declared_on_surface_boundary(v) ? n : "mr_" + n);
        }
        std::reverse(cyc.begin(), cyc.end());
        faces.push_back(std::move(cyc));
    }
    return Patch::build(faces);
}

EndWitness double_witness(const EndWitness& w) {
    if (w.kind != EndWitness::Kind::Boundary)
        throw std::invalid_argument("double_witness: witness is already planar");
    EndWitness d;
    d.kind = EndWitness::Kind::Planar;
    d.core = double_patch(w.core);
    d.layer = double_patch(w.layer);
    auto decl = [](const Patch& p, const std::string& n) {
        auto id = p.vertex_id(n);
        return id && p.declared_on_surface_boundary(*id);
    };
    auto mirror_pairs = [&](const std::vector<std::pair<std::string, std::string>>& pairs,
                            const Patch& from, const Patch& to) {
        std::vector<std::pair<std::string, std::string>> out;
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& [a, b] : pairs) {
            std::string a2 = decl(from, a) ? a : "mr_" + a;
            std::string b2 = decl(to, b) ? b : "mr_" + b;
            if (seen.insert({a, b}).second) out.emplace_back(a, b);
            if (seen.insert({a2, b2}).second) out.emplace_back(a2, b2);
        }
        return out;
    };
    d.attach = mirror_pairs(w.attach, w.layer, w.core);
    d.shift = mirror_pairs(w.shift, w.layer, w.layer);
    return d;
}

// ---------------------------------------------------------------------
// curvature-preserving dissections
// ---------------------------------------------------------------------

namespace {

std::vector<std::vector<std::string>> rewrite_faces(const Patch& p, const std::string& tag,
                                                    int target_degree) {
    std::vector<std::vector<std::string>> out;
    int counter = 0;
    for (int f = 0; f < p.face_count(); ++f) {
        std::vector<std::string> cyc;
        for (int v : p.face(f)) cyc.push_back(p.vertex_name(v));
        if (static_cast<int>(cyc.size()) != target_degree) {
            out.push_back(std::move(cyc));
            continue;
        }
        std::string id = tag + std::to_string(counter++) + "_";
        if (target_degree == 6) {
            std::string c = id + "c";
            for (int i = 0; i < 6; ++i)
                out.push_back({cyc[static_cast<std::size_t>(i)],
                               cyc[static_cast<std::size_t>((i + 1) % 6)], c});
        } else {
            // twelve-gon: inner hexagon around a fresh barycentre, squares
            // on alternating edges, triangles in the gaps
            std::string c = id + "c";
            auto h = [&](int i) { return id + "h" + std::to_string(((i % 6) + 6) % 6); };
            for (int i = 0; i < 6; ++i) {
                out.push_back({c, h(i), h(i + 1)});
                out.push_back({cyc[static_cast<std::size_t>(2 * i)],
                               cyc[static_cast<std::size_t>(2 * i + 1)], h(i + 1), h(i)});
                out.push_back({cyc[static_cast<std::size_t>(2 * i + 1)],
                               cyc[static_cast<std::size_t>((2 * i + 2) % 12)], h(i + 1)});
            }
        }
    }
    return out;
}

} // namespace

Patch subdivide_hexagons(const Patch& p) {
    return Patch::build(rewrite_faces(p, "hx", 6), declared_set(p));
}

Patch dissect_dodecagons(const Patch& p) {
    return Patch::build(rewrite_faces(p, "dd", 12), declared_set(p));
}

EndWitness subdivide_hexagons(const EndWitness& w) {
    EndWitness out = w;
    out.core = Patch::build(rewrite_faces(w.core, "chx", 6), declared_set(w.core));
    out.layer = Patch::build(rewrite_faces(w.layer, "lhx", 6), declared_set(w.layer));
    return out;
}

EndWitness dissect_dodecagons(const EndWitness& w) {
    EndWitness out = w;
    out.core = Patch::build(rewrite_faces(w.core, "cdd", 12), declared_set(w.core));
    out.layer = Patch::build(rewrite_faces(w.layer, "ldd", 12), declared_set(w.layer));
    return out;
}

// ---------------------------------------------------------------------
// strip sequences
// ---------------------------------------------------------------------

std::string strip_kind_name(StripKind k) {
    switch (k) {
    case StripKind::L1: return "L1";
    case StripKind::L2: return "L2";
    case StripKind::M1: return "M1";
    default: return "M2";
    }
}

std::optional<StripKind> strip_kind_parse(const std::string& name) {
    if (name == "L1") return StripKind::L1;
    if (name == "L2") return StripKind::L2;
    if (name == "M1") return StripKind::M1;
    if (name == "M2") return StripKind::M2;
    return std::nullopt;
}

bool StripSequence::legal(std::string* why) const {
    auto complain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (period.empty()) return complain("empty periodic word");
    for (auto k : prefix)
        if (k != StripKind::L1 && k != StripKind::L2)
            return complain("prefix may contain only L-strips; an M-strip never precedes an L-strip");
    for (auto k : period)
        if (k != StripKind::M1 && k != StripKind::M2)
            return complain("periodic word may contain only M-strips");
    return true;
}

StripSequence StripSequence::canonical() const {
    StripSequence out = *this;
    if (!out.period.empty() && out.period[0] == StripKind::M2)
        for (auto& k : out.period) k = k == StripKind::M1 ? StripKind::M2 : StripKind::M1;
    const int p = static_cast<int>(out.period.size());
    for (int q = 1; q < p; ++q) {
        if (p % q) continue;
        bool rep = true;
        for (int i = q; i < p && rep; ++i)
            rep = out.period[static_cast<std::size_t>(i)] == out.period[static_cast<std::size_t>(i - q)];
        if (rep) {
            out.period.resize(static_cast<std::size_t>(q));
            break;
        }
    }
    return out;
}

bool StripSequence::same_graph(const StripSequence& other) const {
    StripSequence a = canonical(), b = other.canonical();
    return a.prefix == b.prefix && a.period == b.period;
}

std::string StripSequence::str() const {
    std::ostringstream os;
    for (auto k : prefix) os << strip_kind_name(k) << " ";
    os << "| (";
    for (std::size_t i = 0; i < period.size(); ++i)
        os << (i ? " " : "") << strip_kind_name(period[i]);
    os << ")*";
    return os.str();
}

} // namespace curvtess
