#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvtess {

enum class VertexStatus : std::uint8_t { Interior, SurfaceBoundary, Rim };

/// Sorted face-degree vector of a vertex whose fan is complete.
/// For Interior vertices deg(x) == degrees.size(); for SurfaceBoundary
/// vertices deg(x) == degrees.size() + 1.
struct Pattern {
    enum class Kind : std::uint8_t { Interior, SurfaceBoundary };
    std::vector<int> degrees;
    Kind kind = Kind::Interior;

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.kind == b.kind && a.degrees == b.degrees;
    }
    friend bool operator<(const Pattern& a, const Pattern& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.degrees < b.degrees;
    }
    std::string str() const;
};

Pattern make_interior_pattern(std::vector<int> degrees);
Pattern make_boundary_pattern(std::vector<int> degrees);

struct ValidationIssue {
    std::string code;   // e.g. "condition-ii", "condition-iii", "euler"
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool clean() const { return issues.empty(); }
    std::string str() const;
};

class PatchBuildError : public std::runtime_error {
public:
    explicit PatchBuildError(const std::string& what) : std::runtime_error(what) {}
};

/// Topological class of a patch, from Euler characteristic and the number
/// of boundary cycles. Sphere and Disk are the classes the curvature
/// identities are stated for; Annulus appears as witness layers.
enum class PatchTopology : std::uint8_t { Sphere, Disk, Annulus, Other };

struct PatchEdge {
    int a = -1, b = -1;          // endpoint vertex ids, a < b
    int faces[2] = {-1, -1};     // incident faces, second == -1 on the patch boundary
    int face_count = 0;
};

/// Immutable combinatorial map of a tessellation piece. Faces are stored
/// as vertex cycles; all incidence (edges, fans, statuses, boundary
/// walks) is derived at build time. Vertices carry one of three statuses:
/// Interior (closed fan), SurfaceBoundary (open fan that is complete
/// because the surface itself has a boundary there), Rim (open fan whose
/// continuation is simply unknown — such vertices never enter curvature
/// sums).
class Patch {
public:
    enum class BuildMode { Strict, Permissive };

    /// boundary_decl lists the vertices lying on the surface boundary
    /// (the closure: segment endpoints adjacent to the rim included).
    /// A declared vertex whose two patch-boundary edges both connect to
    /// declared vertices gets SurfaceBoundary status; a declared vertex
    /// where the patch boundary leaves the surface boundary stays Rim.
    static Patch build(const std::vector<std::vector<std::string>>& face_cycles,
                       const std::set<std::string>& boundary_decl = {},
                       BuildMode mode = BuildMode::Strict);

    // --- vertex/face access ---
    int vertex_count() const { return static_cast<int>(names_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_name(int v) const { return names_[v]; }
    std::optional<int> vertex_id(const std::string& name) const;
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const std::vector<int>& face(int f) const { return faces_[f]; }
    int face_degree(int f) const { return static_cast<int>(faces_[f].size()); }
    const std::vector<PatchEdge>& edges() const { return edges_; }
    const std::vector<int>& vertex_edge_ids(int v) const { return vertex_edges_[v]; }
    std::optional<int> edge_between(int a, int b) const;

    VertexStatus status(int v) const { return status_[v]; }
    bool declared_on_surface_boundary(int v) const { return declared_[v] != 0; }
    int degree(int v) const { return static_cast<int>(vertex_edges_[v].size()); }

    /// Faces around v in rotation order. Closed fans are cyclic starting
    /// at an arbitrary face; open fans run from one patch-boundary edge
    /// to the other.
    const std::vector<int>& fan(int v) const { return fans_[v]; }
    bool fan_closed(int v) const { return fan_closed_[v] != 0; }
    bool fan_manifold(int v) const { return fan_manifold_[v] != 0; }
    std::vector<int> fan_degrees(int v) const;

    // --- boundary structure ---
    /// Patch-boundary walks (every edge with exactly one incident face),
    /// as cyclic vertex sequences.
    const std::vector<std::vector<int>>& boundary_cycles() const { return boundary_cycles_; }
    bool edge_on_surface_boundary(int e) const { return edge_on_dS_[e] != 0; }
    bool has_rim() const;

    PatchTopology topology() const { return topology_; }
    int euler_characteristic() const {
        return vertex_count() - edge_count() + face_count();
    }
    bool connected() const { return connected_; }
    bool orientable() const { return orientable_; }

    const std::vector<std::string>& input_face_cycles_names(int f) const;

    std::vector<int> neighbors(int v) const;

private:
    friend Patch glue_faces(const Patch&, const std::vector<std::vector<std::string>>&,
                            const std::set<std::string>&, Patch::BuildMode);

    std::vector<std::string> names_;
    std::map<std::string, int> name_to_id_;
    std::vector<std::vector<int>> faces_;
    std::vector<std::vector<std::string>> input_faces_;
    std::vector<PatchEdge> edges_;
    std::map<std::pair<int, int>, int> edge_ids_;
    std::vector<std::vector<int>> vertex_edges_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> fans_;
    std::vector<char> fan_closed_;
    std::vector<char> fan_manifold_;
    std::vector<VertexStatus> status_;
    std::vector<char> declared_;
    std::vector<std::vector<int>> boundary_cycles_;
    std::vector<char> edge_on_dS_;
    PatchTopology topology_ = PatchTopology::Other;
    bool connected_ = false;
    bool orientable_ = true;
    std::vector<ValidationIssue> build_issues_;

    friend ValidationReport validate_tessellation(const Patch&);
};

/// Checks the tessellation axioms and structural soundness; violations
/// come back as report entries, never exceptions.
ValidationReport validate_tessellation(const Patch& p);

/// Sorted face-degree pattern of a non-Rim vertex.
/// Throws std::invalid_argument for Rim vertices: their pattern is
/// incomplete and must not feed curvature.
Pattern pattern_at(const Patch& p, int v);

/// All vertices within combinatorial distance r of v.
std::vector<int> ball(const Patch& p, int v, int r);

/// One rim component: a cyclic or linear run of rim edges.
struct RimComponent {
    std::vector<int> vertices;  // in walk order
    bool cyclic = false;
};

/// The patch-boundary walks restricted to rim edges (surface-boundary
/// edges removed). A disk patch with no declared boundary yields one
/// cyclic component; a half-disk core yields one linear component
/// between its two surface-boundary attachment points.
/// Throws std::invalid_argument when the patch has no rim.
std::vector<RimComponent> rim_walk(const Patch& p);

} // namespace curvtess
