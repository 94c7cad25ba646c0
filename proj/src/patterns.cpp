#include "curvtess/patterns.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace curvtess {

Pattern PatternFamily::instantiate(int k) const {
    std::vector<int> degrees = prefix;
    degrees.push_back(k);
    return make_interior_pattern(std::move(degrees));
}

std::string PatternFamily::str() const {
    std::ostringstream os;
    os << "(";
    for (int d : prefix) os << d << ",";
    os << "k)  " << k_min << " <= k";
    if (k_max) os << " <= " << *k_max;
    os << "  Phi = " << a.str() << " + " << b.str() << "/k";
    return os.str();
}

namespace {

Rational face_budget(int len) { return Rational(len, 2) - Rational(1); }

} // namespace

std::vector<PatternFamily> enumerate_positive_interior() {
    std::vector<PatternFamily> out;
    // Lengths beyond 6 cannot be nonnegative: the face term is at most
    // len/3 and 1 - len/2 + len/3 = 1 - len/6 < 0 for len >= 7. Length 6
    // is scanned and found empty rather than assumed away.
    for (int len = 3; len <= 6; ++len) {
        const Rational budget = face_budget(len);
        std::vector<int> cur;
        // A prefix survives only if the family it opens is nonempty at
        // k = prefix.back(); while scanning, the best continuation puts
        // every remaining slot (and k itself) at the current degree.
        std::function<void(int, const Rational&)> rec = [&](int min_deg, const Rational& sum) {
            const int slots = (len - 1) - static_cast<int>(cur.size());
            if (slots == 0) {
                const Rational a = sum - budget; // Phi(k) = a + 1/k
                const int k_lo = cur.back();
                if (!(a + Rational(1, k_lo) > Rational(0))) return;
                PatternFamily fam;
                fam.prefix = cur;
                fam.k_min = k_lo;
                fam.a = a;
                fam.b = Rational(1);
                if (a >= Rational(0)) {
                    fam.k_max = std::nullopt;
                } else {
                    const Rational inv = Rational(1) / (-a); // positive iff k < inv
                    BigInt kmax = inv.num() / inv.den();
                    if (inv.is_integer()) kmax -= 1;
                    fam.k_max = static_cast<int>(kmax.convert_to<long long>());
                }
                out.push_back(std::move(fam));
                return;
            }
            for (int d = min_deg;; ++d) {
                // best case: remaining prefix slots and k all equal d
                if (!(sum + Rational(slots + 1, d) > budget)) break;
                cur.push_back(d);
                rec(d, sum + Rational(1, d));
                cur.pop_back();
            }
        };
        rec(3, Rational(0));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Pattern> enumerate_zero_interior() {
    std::vector<Pattern> out;
    for (int len = 3; len <= 6; ++len) {
        std::vector<int> cur;
        std::function<void(int, const Rational&)> rec = [&](int min_deg, const Rational& need) {
            const int slots = len - static_cast<int>(cur.size());
            if (slots == 0) {
                if (need.is_zero()) out.push_back(make_interior_pattern(cur));
                return;
            }
            if (!(need > Rational(0))) return; // every face adds a positive term
            for (int d = min_deg;; ++d) {
                if (Rational(slots, d) < need) break; // even all-d undershoots
                if (Rational(1, d) <= need) {
                    cur.push_back(d);
                    rec(d, need - Rational(1, d));
                    cur.pop_back();
                }
            }
        };
        rec(3, face_budget(len));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<Pattern, Rational>> enumerate_boundary_nonneg(bool allow_degree_two) {
    std::vector<std::pair<Pattern, Rational>> out;
    if (allow_degree_two) {
        // a single face; degrees beyond 6 would force an infinite graph
        // onto one face's boundary
        for (int k = 3; k <= 6; ++k)
            out.emplace_back(make_boundary_pattern({k}), Rational(1, k));
    }
    // L faces, vertex degree L+1. L >= 4 dies (1 - 5/2 + 4/3 < 0); the
    // scan covers it and finds nothing.
    for (int len = 2; len <= 4; ++len) {
        const Rational need = Rational(len + 1, 2) - Rational(1);
        std::vector<int> cur;
        std::function<void(int, const Rational&)> rec = [&](int min_deg, const Rational& have) {
            const int slots = len - static_cast<int>(cur.size());
            if (slots == 0) {
                if (have >= need) {
                    Pattern p = make_boundary_pattern(cur);
                    out.emplace_back(p, curvature_boundary(p));
                }
                return;
            }
            for (int d = min_deg;; ++d) {
                if (have + Rational(slots, d) < need) break;
                cur.push_back(d);
                rec(d, have + Rational(1, d));
                cur.pop_back();
            }
        };
        rec(3, Rational(0));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Pattern> instantiate_families(const std::vector<PatternFamily>& fams, int cap) {
    std::vector<Pattern> out;
    for (const auto& f : fams) {
        int hi = f.k_max ? std::min(*f.k_max, cap) : cap;
        for (int k = f.k_min; k <= hi; ++k) out.push_back(f.instantiate(k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------
// 2-ball exclusion oracle
// ---------------------------------------------------------------------

namespace {

// Distinct cyclic arrangements of a degree multiset, up to rotation
// only: the ambient orientation is fixed, so reflections are distinct
// configurations.
std::vector<std::vector<int>> cyclic_arrangements(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end());
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> best = degrees, cur = degrees;
        for (std::size_t r = 1; r < degrees.size(); ++r) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (cur < best) best = cur;
        }
        if (seen.insert(best).second) out.push_back(best);
    } while (std::next_permutation(degrees.begin(), degrees.end()));
    return out;
}

// A candidate fan word for a configuration vertex: the cyclic degree
// word plus the slot carrying its first known star face (known faces
// occupy consecutive slots upward from there).
struct Candidate {
    std::vector<int> word;
    int first_slot = 0;
    int at(int offset) const {
        const int n = static_cast<int>(word.size());
        return word[((first_slot + offset) % n + n) % n];
    }
};

} // namespace

B2Result b2_exclusion_oracle(const Pattern& pat) {
    if (pat.kind != Pattern::Kind::Interior || !curvature_interior(pat).is_zero())
        throw std::invalid_argument("b2_exclusion_oracle: pattern must have vanishing curvature");

    const auto zeros = enumerate_zero_interior();
    B2Result result;

    for (const auto& center : cyclic_arrangements(pat.degrees)) {
        const int N = static_cast<int>(center.size());
        // Star layout: face i spans the neighbours y_i and y_{i+1}, with
        // boundary x, y_i, u_{i,1}, ..., u_{i,c-3}, y_{i+1}. Constrained
        // vertices are the y's and the u's adjacent to a y (distance 2);
        // deeper face vertices lie outside the 2-ball.
        struct Var {
            std::string label;
            std::vector<int> known_degrees; // CCW-consecutive known faces
            std::vector<Candidate> domain;
            int chosen = -1;
        };
        std::vector<Var> vars;
        std::map<std::string, int> var_index;
        auto add_var = [&](const std::string& label, std::vector<int> degrees) {
            Var v;
            v.label = label;
            v.known_degrees = std::move(degrees);
            var_index[label] = static_cast<int>(vars.size());
            vars.push_back(std::move(v));
        };
        for (int i = 0; i < N; ++i) {
            // CCW around y_i the shared-edge flip puts sigma_i before
            // sigma_{i-1}
            int prev = (i + N - 1) % N;
            add_var("y" + std::to_string(i), {center[i], center[prev]});
        }
        for (int i = 0; i < N; ++i) {
            const int c = center[i];
            if (c == 3) continue;
            add_var("u" + std::to_string(i) + "a", {c}); // next to y_i
            if (c >= 5) add_var("u" + std::to_string(i) + "b", {c}); // next to y_{i+1}
        }

        for (auto& v : vars) {
            for (const auto& z : zeros) {
                for (const auto& word : cyclic_arrangements(z.degrees)) {
                    const int n = static_cast<int>(word.size());
                    for (int s = 0; s < n; ++s) {
                        bool ok = true;
                        for (std::size_t t = 0; t < v.known_degrees.size(); ++t)
                            if (word[(s + static_cast<int>(t)) % n] != v.known_degrees[t]) {
                                ok = false;
                                break;
                            }
                        if (ok) v.domain.push_back({word, s});
                    }
                }
            }
        }

        // Flank constraints: across each shared star edge both endpoints
        // must see the same outside-face degree. With known faces at
        // slots s.. the outside face across the successor-side edge of
        // the slot-s face reads at offset -1; across the predecessor-side
        // edge of the last known face at offset +(number of known faces).
        struct Cons {
            int a, off_a, b, off_b;
        };
        std::vector<Cons> cons;
        auto add_cons = [&](const std::string& la, int oa, const std::string& lb, int ob) {
            cons.push_back({var_index.at(la), oa, var_index.at(lb), ob});
        };
        for (int i = 0; i < N; ++i) {
            const int c = center[i];
            const std::string yi = "y" + std::to_string(i);
            const std::string yj = "y" + std::to_string((i + 1) % N);
            if (c == 3) {
                add_cons(yi, -1, yj, 2);
            } else if (c == 4) {
                const std::string u = "u" + std::to_string(i) + "a";
                add_cons(yi, -1, u, 1);
                add_cons(u, -1, yj, 2);
            } else {
                const std::string ua = "u" + std::to_string(i) + "a";
                const std::string ub = "u" + std::to_string(i) + "b";
                add_cons(yi, -1, ua, 1);
                add_cons(ub, -1, yj, 2);
                // on a pentagon the two near vertices are adjacent, both
                // inside the 2-ball; larger faces leave a gap outside it
                if (c == 5) add_cons(ua, -1, ub, 1);
            }
        }

        bool dead = false;
        for (auto& v : vars)
            if (v.domain.empty()) dead = true;
        if (dead) {
            result.trace.push_back("arrangement exhausted immediately: a vertex admits no flat fan");
            continue;
        }

        // uniform tilings solve most feasible cases instantly; try the
        // candidates matching the centre pattern first
        for (auto& v : vars) {
            std::stable_sort(v.domain.begin(), v.domain.end(),
                             [&](const Candidate& a, const Candidate& b) {
                                 auto sa = a.word, sb = b.word;
                                 std::sort(sa.begin(), sa.end());
                                 std::sort(sb.begin(), sb.end());
                                 std::vector<int> c = center;
                                 std::sort(c.begin(), c.end());
                                 return (sa == c) > (sb == c);
                             });
        }

        const std::size_t nv = vars.size();
        std::vector<std::vector<char>> avail(nv);
        for (std::size_t i = 0; i < nv; ++i) avail[i].assign(vars[i].domain.size(), 1);
        std::vector<std::vector<int>> cons_at(nv);
        for (std::size_t c = 0; c < cons.size(); ++c) {
            cons_at[static_cast<std::size_t>(cons[c].a)].push_back(static_cast<int>(c));
            cons_at[static_cast<std::size_t>(cons[c].b)].push_back(static_cast<int>(c));
        }

        long long nodes = 0;
        // forward-checking DFS with dynamic fewest-candidates ordering
        std::function<bool()> dfs = [&]() -> bool {
            int pick = -1;
            std::size_t best = SIZE_MAX;
            for (std::size_t i = 0; i < nv; ++i) {
                if (vars[i].chosen >= 0) continue;
                std::size_t cnt = 0;
                for (char ok : avail[i]) cnt += ok ? 1u : 0u;
                if (cnt < best) { best = cnt; pick = static_cast<int>(i); }
            }
            if (pick < 0) return true; // all assigned
            if (best == 0) return false;
            Var& v = vars[static_cast<std::size_t>(pick)];
            for (std::size_t c = 0; c < v.domain.size(); ++c) {
                if (!avail[static_cast<std::size_t>(pick)][c]) continue;
                v.chosen = static_cast<int>(c);
                ++nodes;
                // prune neighbours' domains
                std::vector<std::pair<std::size_t, std::size_t>> removed;
                bool wiped = false;
                for (int ci : cons_at[static_cast<std::size_t>(pick)]) {
                    const Cons& cc = cons[static_cast<std::size_t>(ci)];
                    const int other = cc.a == pick ? cc.b : cc.a;
                    Var& o = vars[static_cast<std::size_t>(other)];
                    if (o.chosen >= 0) {
                        const Candidate& ca = v.domain[c];
                        const Candidate& cb = o.domain[static_cast<std::size_t>(o.chosen)];
                        const int mine = cc.a == pick ? cc.off_a : cc.off_b;
                        const int theirs = cc.a == pick ? cc.off_b : cc.off_a;
                        if (ca.at(mine) != cb.at(theirs)) { wiped = true; break; }
                        continue;
                    }
                    std::size_t left = 0;
                    for (std::size_t d = 0; d < o.domain.size(); ++d) {
                        if (!avail[static_cast<std::size_t>(other)][d]) continue;
                        const Candidate& ca = v.domain[c];
                        const Candidate& cb = o.domain[d];
                        const int mine = cc.a == pick ? cc.off_a : cc.off_b;
                        const int theirs = cc.a == pick ? cc.off_b : cc.off_a;
                        if (ca.at(mine) != cb.at(theirs)) {
                            avail[static_cast<std::size_t>(other)][d] = 0;
                            removed.emplace_back(static_cast<std::size_t>(other), d);
                        } else {
                            ++left;
                        }
                    }
                    if (left == 0) { wiped = true; break; }
                }
                if (!wiped && dfs()) return true;
                for (auto [vi, di] : removed) avail[vi][di] = 1;
                v.chosen = -1;
            }
            return false;
        };
        const bool found = dfs();
        result.nodes += nodes;
        if (found) {
            result.feasible = true;
            result.witness.clear();
            result.witness.push_back({"x", center});
            for (const auto& v : vars) {
                const Candidate& c = v.domain[static_cast<std::size_t>(v.chosen)];
                std::vector<int> w = c.word;
                std::rotate(w.begin(), w.begin() + c.first_slot, w.end());
                result.witness.push_back({v.label, std::move(w)});
            }
            return result;
        }
        std::ostringstream os;
        os << "arrangement (";
        for (std::size_t i = 0; i < center.size(); ++i) os << (i ? "," : "") << center[i];
        os << ") exhausted after " << nodes << " nodes";
        result.trace.push_back(os.str());
    }
    result.feasible = false;
    return result;
}

std::vector<Pattern> b2_admissible_patterns() {
    std::vector<Pattern> out;
    for (const auto& p : enumerate_zero_interior())
        if (b2_exclusion_oracle(p).feasible) out.push_back(p);
    return out;
}

bool rim_488_propagation_check(const Patch& p) {
    const Pattern target = make_interior_pattern({4, 8, 8});
    std::vector<int> circle; // complete vertices adjacent to the rim
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (p.status(v) == VertexStatus::Rim) continue;
        for (int w : p.neighbors(v)) {
            if (p.status(w) == VertexStatus::Rim) {
                circle.push_back(v);
                break;
            }
        }
    }
    if (circle.empty())
        throw std::invalid_argument("rim_488_propagation_check: no complete vertex meets the rim");
    for (int v : circle) {
        for (int y : ball(p, v, 2)) {
            if (p.status(y) == VertexStatus::Rim) continue;
            if (!curvature_of(pattern_at(p, y)).is_zero())
                throw std::invalid_argument("rim_488_propagation_check: non-flat vertex " +
                                            p.vertex_name(y) +
                                            " within distance 2 of the boundary circle");
        }
    }
    bool any = false, all = true;
    for (int v : circle) {
        const bool is488 = pattern_at(p, v) == target;
        any = any || is488;
        all = all && is488;
    }
    return !any || all;
}

} // namespace curvtess
