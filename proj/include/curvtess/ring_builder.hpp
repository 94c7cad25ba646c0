#pragma once

#include <functional>
#include <string>
#include <vector>

namespace curvtess {
namespace detail {

/// One ring-building pass along a rim walk. Each rim vertex supplies the
/// ordered degrees of the faces to be added around it, first face over
/// the edge towards the walk predecessor, last over the successor edge;
/// neighbouring vertices describe the face they share redundantly and
/// must agree. On linear (surface-boundary-ended) rims the free end slots
/// hold the faces that extend the surface boundary, and the fresh corner
/// vertices are reported in `new_declared`.
struct RingBuildResult {
    bool ok = false;
    std::string error;
    std::vector<std::vector<std::string>> new_faces;
    std::vector<std::string> new_rim;
    std::vector<std::string> new_declared;
    // per rim position, the fresh vertices in creation order
    std::vector<std::vector<std::string>> created_at;
};

RingBuildResult build_ring(const std::vector<std::string>& rim, bool cyclic,
                           const std::vector<std::vector<int>>& completions,
                           const std::function<std::string(const char*)>& fresh);

} // namespace detail
} // namespace curvtess
