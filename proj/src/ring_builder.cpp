#include "curvtess/ring_builder.hpp"

namespace curvtess {
namespace detail {

RingBuildResult build_ring(const std::vector<std::string>& rim, bool cyclic,
                           const std::vector<std::vector<int>>& completions,
                           const std::function<std::string(const char*)>& fresh) {
    RingBuildResult res;
    const int n = static_cast<int>(rim.size());
    res.created_at.assign(static_cast<std::size_t>(n), {});
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.error = msg;
        return res;
    };
    if (n < 2 || completions.size() != static_cast<std::size_t>(n))
        return fail("ring build needs a rim of length >= 2 with one completion per vertex");
    for (int i = 0; i < n; ++i) {
        if (completions[static_cast<std::size_t>(i)].empty())
            return fail("empty completion at rim position " + std::to_string(i));
        if (!cyclic && i + 1 >= n) break;
        const auto& a = completions[static_cast<std::size_t>(i)];
        const auto& b = completions[static_cast<std::size_t>((i + 1) % n)];
        if (a.back() != b.front())
            return fail("shared-face degree mismatch between rim positions " + std::to_string(i) +
                        " and " + std::to_string((i + 1) % n));
    }

    struct OpenFace {
        int degree = 0;
        std::vector<std::string> path;
        std::string left;
        bool deferred = false;
    };

    std::vector<std::string> deferred_cycle;
    int deferred_slot = -1;
    OpenFace open;
    bool failed = false;
    std::string fail_msg;

    // positions of placeholder spokes to patch once the bootstrap spoke
    // finally exists
    std::vector<std::pair<std::size_t, std::size_t>> pending_slots;

    auto close_face = [&](OpenFace& f, const std::string& right, int at,
                          std::vector<std::string>* ints_out) {
        const int interiors = f.degree - static_cast<int>(f.path.size()) - 2;
        if (interiors < 0) {
            failed = true;
            fail_msg = "face of degree " + std::to_string(f.degree) + " cannot span " +
                       std::to_string(f.path.size()) + " rim vertices";
            return;
        }
        std::vector<std::string> cyc = f.path;
        cyc.push_back(right);
        std::vector<std::string> ints;
        for (int q = 0; q < interiors; ++q) {
            std::string nm = fresh("i");
            ints.push_back(nm);
            cyc.push_back(nm);
        }
        for (const auto& nm : ints) res.created_at[static_cast<std::size_t>(at)].push_back(nm);
        if (ints_out) *ints_out = ints;
        if (f.deferred) {
            cyc.push_back("?");
            deferred_cycle = cyc;
            deferred_slot = static_cast<int>(cyc.size()) - 1;
        } else {
            if (f.left == "?")
                pending_slots.emplace_back(res.new_faces.size(), cyc.size());
            cyc.push_back(f.left);
            res.new_faces.push_back(cyc);
        }
    };

    // closes completions[i][0 .. m-2] at vertex i; when close_last is set
    // (linear rim end) the final face closes onto a fresh surface corner
    auto process = [&](int i, bool close_last) {
        const auto& degs = completions[static_cast<std::size_t>(i)];
        const int m = static_cast<int>(degs.size());
        const std::string& vn = rim[static_cast<std::size_t>(i)];
        for (int t = 0; t + 1 < m && !failed; ++t) {
            // a face whose rim path misses exactly one vertex closes onto
            // its own opening spoke: no fresh vertex, nothing new on the rim
            const bool tight = open.degree == static_cast<int>(open.path.size()) + 1;
            std::string spoke;
            if (tight) {
                spoke = open.left; // may be the pending bootstrap marker
                std::vector<std::string> cyc = open.path;
                cyc.push_back(spoke);
                if (open.deferred) {
                    deferred_cycle = cyc;
                    deferred_slot = static_cast<int>(cyc.size()) - 1;
                } else {
                    if (spoke == "?")
                        pending_slots.emplace_back(res.new_faces.size(), cyc.size() - 1);
                    res.new_faces.push_back(cyc);
                }
            } else {
                spoke = fresh("s");
                res.created_at[static_cast<std::size_t>(i)].push_back(spoke);
                std::vector<std::string> ints;
                close_face(open, spoke, i, &ints);
                if (failed) return;
                for (auto it = ints.rbegin(); it != ints.rend(); ++it) res.new_rim.push_back(*it);
                res.new_rim.push_back(spoke);
            }
            open = OpenFace{degs[static_cast<std::size_t>(t) + 1], {vn}, spoke, false};
        }
        if (close_last && !failed) {
            std::string corner = fresh("sb");
            res.created_at[static_cast<std::size_t>(i)].push_back(corner);
            res.new_declared.push_back(corner);
            std::vector<std::string> ints;
            close_face(open, corner, i, &ints);
            if (failed) return;
            for (auto it = ints.rbegin(); it != ints.rend(); ++it) res.new_rim.push_back(*it);
            res.new_rim.push_back(corner);
        }
    };

    int start = 0;
    if (cyclic) {
        start = -1;
        for (int i = 0; i < n; ++i)
            if (completions[static_cast<std::size_t>(i)].size() >= 2) { start = i; break; }
        if (start < 0) return fail("every completion spans the whole ring; degenerate layer");
    }

    for (int step = 0; step < n && !failed; ++step) {
        const int i = cyclic ? (start + step) % n : step;
        const auto& degs = completions[static_cast<std::size_t>(i)];
        const int m = static_cast<int>(degs.size());
        const std::string& vn = rim[static_cast<std::size_t>(i)];
        const bool has_succ = cyclic || i + 1 < n;

        if (step == 0) {
            if (cyclic) {
                open = OpenFace{degs[static_cast<std::size_t>(m) - 1], {vn}, "?", true};
                continue;
            }
            std::string corner = fresh("sb");
            res.created_at[static_cast<std::size_t>(i)].push_back(corner);
            res.new_declared.push_back(corner);
            res.new_rim.push_back(corner);
            open = OpenFace{degs[0], {vn}, corner, false};
            if (m >= 2)
                process(i, !has_succ);
            else if (!has_succ)
                return fail("degenerate one-vertex rim");
            continue;
        }

        open.path.push_back(vn);
        if (open.degree != degs[0])
            return fail("face degree mismatch arriving at " + vn);
        if (m == 1 && has_succ) continue;
        process(i, !has_succ);
    }
    if (failed) return fail(fail_msg);

    if (cyclic) {
        const int i = start;
        const auto& degs = completions[static_cast<std::size_t>(i)];
        const int m = static_cast<int>(degs.size());
        open.path.push_back(rim[static_cast<std::size_t>(i)]);
        if (open.degree != degs[0]) return fail("face degree mismatch closing the ring");
        // close all but the deferred bootstrap face
        const std::string& vn = rim[static_cast<std::size_t>(i)];
        std::string last_spoke;
        for (int t = 0; t + 1 < m && !failed; ++t) {
            const bool tight = open.degree == static_cast<int>(open.path.size()) + 1;
            std::string spoke;
            if (tight) {
                spoke = open.left;
                std::vector<std::string> cyc = open.path;
                cyc.push_back(spoke);
                if (open.deferred) {
                    deferred_cycle = cyc;
                    deferred_slot = static_cast<int>(cyc.size()) - 1;
                } else {
                    if (spoke == "?")
                        pending_slots.emplace_back(res.new_faces.size(), cyc.size() - 1);
                    res.new_faces.push_back(cyc);
                }
            } else {
                spoke = fresh("s");
                res.created_at[static_cast<std::size_t>(i)].push_back(spoke);
                std::vector<std::string> ints;
                close_face(open, spoke, i, &ints);
                if (failed) break;
                for (auto it = ints.rbegin(); it != ints.rend(); ++it) res.new_rim.push_back(*it);
                res.new_rim.push_back(spoke);
            }
            last_spoke = spoke;
            if (t + 2 < m) open = OpenFace{degs[static_cast<std::size_t>(t) + 1], {vn}, spoke, false};
        }
        if (failed) return fail(fail_msg);
        if (deferred_slot < 0 || last_spoke.empty() || last_spoke == "?")
            return fail("ring closure never produced the bootstrap spoke");
        deferred_cycle[static_cast<std::size_t>(deferred_slot)] = last_spoke;
        res.new_faces.push_back(deferred_cycle);
        for (auto [fi, slot] : pending_slots)
            res.new_faces[fi][slot] = last_spoke;
    }

    res.ok = true;
    return res;
}

} // namespace detail
} // namespace curvtess
