#pragma once

#include "curvtess/curvature.hpp"
#include "curvtess/patch.hpp"
#include "curvtess/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvtess {

/// A finite certificate for an infinite graph: a core patch carrying all
/// the curvature, one period of flat rings (the layer), an attachment of
/// the layer onto the core rim, and a shift that maps the layer's outer
/// rim back onto its inner rim so rings can be reproduced indefinitely.
///
/// The represented graph is core + ring_1 + ring_2 + ... where the rings
/// beyond the layer are generated deterministically: each rim vertex
/// copies the completion of its archetype one period earlier. For ends
/// with constant ring size the shift is a bijection and the generated
/// rings are literal copies of the layer; for growing (cone-like) ends
/// the shift has repeated targets and the ring word is pumped
/// accordingly.
struct EndWitness {
    enum class Kind { Planar, Boundary };

    Patch core;
    Patch layer;
    std::vector<std::pair<std::string, std::string>> attach; // layer inner rim -> core rim
    std::vector<std::pair<std::string, std::string>> shift;  // layer outer rim -> layer inner rim
    Kind kind = Kind::Planar;
};

struct WitnessValidation {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
    std::string str() const;
};

struct CertifiedTotal {
    Rational total;
    CurvatureReport report;        // over the two-period materialization
    Rational rim_turning_pi;       // boundary turning of the materialized patch
    bool cross_check_ok = false;   // vertex sum vs Gauss-Bonnet balance
};

struct TheoremVerdict {
    Rational total;
    bool quantized_twelfth = false;
    std::optional<BigInt> twelfth_multiple;
    bool quantized_fine = false; // vs 1/219060189739591200
    bool cohn_vossen_ok = false;
    bool nonflat_bound_ok = true; // |T(G)| <= 861 for boundary witnesses
    std::size_t nonflat_count = 0;
    bool all_ok() const {
        return quantized_twelfth && quantized_fine && cohn_vossen_ok && nonflat_bound_ok;
    }
};

/// Checks every witness invariant by explicitly gluing and replaying
/// rings (two extra periods beyond the layer): validity of every glued
/// patch, flatness of every vertex the rings complete, admissibility of
/// the flat patterns, affine ring growth, surface-boundary consistency,
/// and the Gauss-Bonnet cross-check.
WitnessValidation validate_witness(const EndWitness& w, int extra_periods = 2);

/// Total curvature of the represented graph: the curvature sum over the
/// complete vertices of the core, cross-checked against the Eq.-style
/// boundary balance of the materialized compact set. Throws if the
/// witness does not validate.
CertifiedTotal certified_total(const EndWitness& w);

/// Quantization (1/12 and the a-priori granularity), the Cohn-Vossen
/// bound for the witness kind, and the bound on the number of non-flat
/// vertices. Any failure flags a certifier bug or a counterexample.
TheoremVerdict theorem_check(const EndWitness& w);

/// Core + layer + `extra_periods` worth of replayed rings, as one patch.
Patch materialize(const EndWitness& w, int extra_periods);

/// Witness file format (".wit").
EndWitness parse_wit(const std::string& text);
std::string serialize_wit(const EndWitness& w);
EndWitness load_wit_file(const std::string& path);
void save_wit_file(const std::string& path, const EndWitness& w);

// ---------------------------------------------------------------------
// Ring engine. Exposed for the constructions and search modules, which
// build witnesses by growing rings and detecting periodicity.
// ---------------------------------------------------------------------

/// One rim vertex's completion as recorded from a materialized ring:
/// the ordered degrees of the faces the ring added around the vertex
/// (first face lies over the walk-preceding rim edge, last over the
/// following one; a single entry may span several rim edges) and the
/// names of the new vertices those faces introduced, in creation order.
struct CompletionSeq {
    std::vector<int> new_degrees;
    std::vector<std::string> new_vertices;
    bool to_boundary = false; // completes to a surface-boundary vertex
};

/// A growing materialization: all faces created so far plus the current
/// rim walk with archetype labels into the recorded strata.
class RingEngine {
public:
    /// Build from witness parts. Throws PatchBuildError / invalid_argument
    /// on structurally unusable data (those conditions also surface as
    /// issues from validate_witness).
    explicit RingEngine(const EndWitness& w);

    int period() const { return period_; }
    const Patch& materialized() const { return glued_; }
    /// Vertex names of the original core.
    const std::vector<std::string>& core_vertex_names() const { return core_names_; }

    /// Replay one more ring. Returns false (with an issue recorded) if
    /// the replay hits inconsistent data.
    bool replay_ring();

    const std::vector<ValidationIssue>& issues() const { return issues_; }
    const std::vector<std::size_t>& rim_sizes() const { return rim_sizes_; }
    int rings_built() const { return rings_built_; }

    /// Current rim walk (cyclic for planar ends, corner-to-corner for
    /// boundary ends).
    std::vector<std::string> rim_names() const {
        std::vector<std::string> out;
        for (const auto& rv : rim_) out.push_back(rv.name);
        return out;
    }
    bool rim_cyclic() const { return rim_cyclic_; }

private:
    struct RimVertex {
        std::string name;
        int stratum = 0; // which stratum's completion this vertex copies
        int index = 0;   // position in that stratum's recipe table
    };

    void rebuild_glued();
    std::string fresh_name(const std::string& hint);

    std::vector<std::vector<std::string>> faces_;
    std::set<std::string> declared_;
    std::set<std::string> used_names_;
    std::vector<RimVertex> rim_;
    bool rim_cyclic_ = true;
    int period_ = 1;
    int rings_built_ = 0;
    long long fresh_counter_ = 0;
    // recipes[stratum]: completion per rim position of that stratum
    std::vector<std::vector<CompletionSeq>> recipes_;
    // names of each stratum's rim, for diagnostics
    std::vector<std::vector<std::string>> strata_rims_;
    std::map<std::string, std::pair<int, int>> arch_of_new_; // new vertex -> (stratum, idx)
    std::vector<std::size_t> rim_sizes_;
    Patch glued_;
    std::vector<std::string> core_names_;
    std::vector<ValidationIssue> issues_;
};

} // namespace curvtess
