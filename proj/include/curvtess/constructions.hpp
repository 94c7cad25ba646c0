#pragma once

#include "curvtess/patch.hpp"
#include "curvtess/witness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvtess {

// --- closed test polyhedra and lattice pieces ---
Patch tetrahedron();
Patch cube();
Patch dodecahedron();
Patch prism(int n);
Patch antiprism(int n);
Patch triangular_disk(int radius);
Patch square_disk(int radius);
Patch hexagonal_disk(int radius);

// --- strips and their gluings ---
enum class StripKind : std::uint8_t { L1, L2, M1, M2 };

std::string strip_kind_name(StripKind k);
std::optional<StripKind> strip_kind_parse(const std::string& name);

/// A boundary graph presented as finitely many L-strips followed by an
/// infinite periodic run of M-strips.
struct StripSequence {
    std::vector<StripKind> prefix; // L1/L2 only
    std::vector<StripKind> period; // M1/M2 only, nonempty

    bool legal(std::string* why = nullptr) const;
    /// Mirror-normal form: the first period entry becomes M1 and every
    /// other M flips with it.
    StripSequence canonical() const;
    /// Same infinite gluing word (prefixes equal, periodic tails equal).
    bool same_graph(const StripSequence& other) const;
    std::string str() const;
};

/// The boundary witness of a strip gluing: all vertices flat except the
/// single junction vertex (surface-boundary pattern (3,4) when the
/// prefix is empty; the interior junction pattern otherwise), total 1/12.
EndWitness build_strip_graph(const StripSequence& seq, int copies_materialized = 2);

struct StripDecomposition {
    bool ok = false;
    StripSequence sequence;
    std::vector<std::string> failure;
};

/// Inverse of build_strip_graph on certified 1/12 boundary witnesses:
/// peels boundary layers off a large materialization, returning the
/// mirror-normalized sequence with a primitive period.
StripDecomposition strip_decompose(const EndWitness& w);

// --- doubling and curvature-preserving dissections ---
Patch double_patch(const Patch& p);
EndWitness double_witness(const EndWitness& w);

Patch subdivide_hexagons(const Patch& p);
EndWitness subdivide_hexagons(const EndWitness& w);
Patch dissect_dodecagons(const Patch& p);
EndWitness dissect_dodecagons(const EndWitness& w);

// --- closed-form witness families ---
enum class LatticeKind : std::uint8_t { Triangular, Square };

/// Cone with a single apex: triangular with 3..5 sectors or square with
/// 3; total curvature 1 - sectors/6 resp. 1/4. Throws on unsupported
/// parameters (flat, negatively curved, or degree < 3 apices).
EndWitness cone(LatticeKind lattice, int sectors);

/// k pairwise-distant pentagons in the hexagonal lattice; total k/6.
EndWitness pentagon_hexagon(int k);

/// One n-gon cap on an infinite square-sided tube; total 1.
EndWitness capped_tube(int n);

/// Defect-free planar lattice witness, total 0.
EndWitness flat_lattice_witness(LatticeKind lattice);

/// Planar witness whose non-flat vertices are the given interior fan
/// words (over triangle/square wedges), grown flat around them; the
/// total is the sum of the words' curvatures. One or two defects.
EndWitness defect_cone(const std::vector<std::vector<int>>& defect_words);

/// Boundary witness: a triangle-material half-plane with one interior
/// defect fan word grown flat around it; total = the word curvature.
EndWitness half_plane_defect(const std::vector<int>& interior_word);

/// Boundary witness: a triangle-material half-plane with the given
/// surface-boundary defect patterns spread along the boundary; {} gives
/// the flat half-plane. Each entry is a boundary fan word over {3,4}
/// such as (3,3) or (3,4).
EndWitness half_plane_witness(const std::vector<std::vector<int>>& boundary_defects);

} // namespace curvtess
