#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cir/graph.hpp"

namespace cir {

// Default rule: cops and the adversarial robber may stand still; `forced`
// restores the strict move-along-an-edge reading. The drunk robber always
// moves to a uniform neighbor regardless of this rule.
enum class MoveRule { stay_ok, forced };

struct CapExceeded : std::runtime_error {
    long long estimate;
    explicit CapExceeded(const std::string& what, long long est)
        : std::runtime_error(what), estimate(est) {}
};

// K cops are interchangeable, so a cop configuration is a sorted multiset of
// vertices. The move relation between multisets is symmetric.
struct CopSpace {
    const Graph* g = nullptr;
    int K = 0;
    MoveRule rule = MoveRule::stay_ok;
    std::vector<std::vector<int>> tuples;          // sorted multisets
    std::map<std::vector<int>, int> index;         // multiset -> id
    std::vector<std::vector<int>> moves;           // id -> reachable ids (sorted)

    int id_of(const std::vector<int>& t) const {
        std::vector<int> s(t);
        std::sort(s.begin(), s.end());
        auto it = index.find(s);
        if (it == index.end()) throw std::logic_error("cop tuple not in space");
        return it->second;
    }
};

namespace detail {
inline void enum_multisets(int n, int K, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out, int lo) {
    if (static_cast<int>(cur.size()) == K) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v < n; ++v) {
        cur.push_back(v);
        enum_multisets(n, K, cur, out, v);
        cur.pop_back();
    }
}

inline std::vector<int> neighborhood(const Graph& g, int v, MoveRule rule) {
    std::vector<int> nb = g.adj[v];
    if (rule == MoveRule::stay_ok) {
        nb.push_back(v);
        std::sort(nb.begin(), nb.end());
    }
    return nb;
}
}  // namespace detail

inline CopSpace build_cop_space(const Graph& g, int K, MoveRule rule = MoveRule::stay_ok,
                                long long cap_tuples = 2'000'000) {
    if (K < 1 || K > g.n) throw std::invalid_argument("cop count must be in [1, n]");
    CopSpace s;
    s.g = &g;
    s.K = K;
    s.rule = rule;
    // C(n+K-1, K) multisets; reject early when past the cap.
    long long cnt = 1;
    for (int i = 1; i <= K; ++i) cnt = cnt * (g.n + i - 1) / i;
    if (cnt > cap_tuples) throw CapExceeded("cop configuration space exceeds cap", cnt);
    std::vector<int> cur;
    detail::enum_multisets(g.n, K, cur, s.tuples, 0);
    for (int i = 0; i < static_cast<int>(s.tuples.size()); ++i) s.index[s.tuples[i]] = i;

    std::vector<std::vector<int>> nbhd(g.n);
    for (int v = 0; v < g.n; ++v) nbhd[v] = detail::neighborhood(g, v, rule);

    s.moves.resize(s.tuples.size());
    for (size_t id = 0; id < s.tuples.size(); ++id) {
        const auto& t = s.tuples[id];
        // Cartesian product of per-cop neighborhoods, collected as multisets.
        std::vector<int> stack(K, 0);
        std::vector<int> tup(K);
        int depth = 0;
        std::set<std::vector<int>> uniq;
        while (depth >= 0) {
            if (depth == K) {
                std::vector<int> ms(tup);
                std::sort(ms.begin(), ms.end());
                uniq.insert(ms);
                --depth;
                continue;
            }
            if (stack[depth] < static_cast<int>(nbhd[t[depth]].size())) {
                tup[depth] = nbhd[t[depth]][stack[depth]++];
                ++depth;
                if (depth < K) stack[depth] = 0;
            } else {
                --depth;
            }
        }
        for (auto& ms : uniq) s.moves[id].push_back(s.index.at(ms));
        std::sort(s.moves[id].begin(), s.moves[id].end());
    }
    return s;
}

// Backward induction on the game where the robber is visible: cops minimize
// and the robber maximizes the number of turns until capture (cop half-move
// and robber half-move both end a turn on contact). Values: turns from a
// fresh turn with cops at tuple m and robber at r; -1 means the robber
// evades forever.
struct VisibleSolution {
    bool guaranteed = false;
    long long t_hat = -1;                 // min over starts of max over placements
    std::vector<int> best_start;          // achieving multiset
    CopSpace space;
    std::vector<std::vector<long long>> val_cop;  // [tuple][r], cops to move
    std::vector<std::vector<long long>> val_rob;  // [tuple][r], robber to move

    // Optimal cop reply with the robber pinned at r; used by round
    // strategies that chase a guessed trajectory.
    int best_move(int tuple_id, int r) const {
        for (int nxt : space.moves[tuple_id]) {
            const auto& t = space.tuples[nxt];
            if (std::binary_search(t.begin(), t.end(), r)) return nxt;  // capture now
        }
        int best = space.moves[tuple_id].front();
        long long bv = -1;
        for (int nxt : space.moves[tuple_id]) {
            long long v = val_rob[nxt][r];
            if (v >= 0 && (bv < 0 || v < bv)) { bv = v; best = nxt; }
        }
        return best;
    }
};

inline VisibleSolution visible_solve(const Graph& g, int K, MoveRule rule = MoveRule::stay_ok,
                                     long long cap_states = 2'000'000) {
    VisibleSolution sol;
    sol.space = build_cop_space(g, K, rule);
    CopSpace& sp = sol.space;
    const long long M = static_cast<long long>(sp.tuples.size());
    if (2 * M * g.n > cap_states)
        throw CapExceeded("visible game state space exceeds cap", 2 * M * g.n);

    std::vector<std::vector<int>> nbhd(g.n);
    for (int v = 0; v < g.n; ++v) nbhd[v] = detail::neighborhood(g, v, rule);

    auto in_tuple = [&](int tid, int v) {
        const auto& t = sp.tuples[tid];
        return std::binary_search(t.begin(), t.end(), v);
    };

    sol.val_cop.assign(M, std::vector<long long>(g.n, -1));
    sol.val_rob.assign(M, std::vector<long long>(g.n, -1));
    std::vector<std::vector<int>> cnt(M, std::vector<int>(g.n, 0));
    std::vector<std::vector<long long>> runmax(M, std::vector<long long>(g.n, 0));

    // Bucket queue keyed by value; pushed values only grow by 0 or 1.
    std::vector<std::vector<std::tuple<int, int, int>>> bucket(2);  // (phase, tuple, r)
    auto push = [&](long long v, int phase, int t, int r) {
        if (static_cast<size_t>(v) >= bucket.size()) bucket.resize(v + 1);
        bucket[v].emplace_back(phase, t, r);
    };

    for (int t = 0; t < static_cast<int>(M); ++t) {
        for (int r = 0; r < g.n; ++r) {
            if (in_tuple(t, r)) continue;
            // Robber phase: count escape moves.
            int c = 0;
            for (int r2 : nbhd[r])
                if (!in_tuple(t, r2)) ++c;
            cnt[t][r] = c;
            if (c == 0) { sol.val_rob[t][r] = 1; push(1, 1, t, r); }
            // Cop phase: capture in one move iff some cop is adjacent.
            bool now = false;
            for (int cpos : sp.tuples[t])
                if (g.has_edge(cpos, r)) { now = true; break; }
            if (now) { sol.val_cop[t][r] = 1; push(1, 0, t, r); }
        }
    }

    for (long long v = 1; v < static_cast<long long>(bucket.size()); ++v) {
        for (size_t qi = 0; qi < bucket[v].size(); ++qi) {
            auto [phase, t, r] = bucket[v][qi];
            if (phase == 1) {
                // val_rob[t][r] = v finalized: any tuple that can move to t
                // may choose it; min semantics means first finalization wins.
                for (int tp : sp.moves[t]) {
                    if (in_tuple(tp, r)) continue;
                    if (sol.val_cop[tp][r] < 0) {
                        sol.val_cop[tp][r] = v;
                        push(v, 0, tp, r);
                    }
                }
            } else {
                // val_cop[t][r] = v finalized: robber predecessors at (t, r0)
                // with r in their escape set lose one unresolved successor.
                for (int r0 : nbhd[r]) {
                    if (in_tuple(t, r0)) continue;
                    if (sol.val_rob[t][r0] >= 0) continue;
                    runmax[t][r0] = std::max(runmax[t][r0], v);
                    if (--cnt[t][r0] == 0) {
                        sol.val_rob[t][r0] = 1 + runmax[t][r0];
                        push(1 + runmax[t][r0], 1, t, r0);
                    }
                }
            }
        }
    }

    sol.t_hat = -1;
    for (int t = 0; t < static_cast<int>(M); ++t) {
        long long worst = 0;
        bool ok = true;
        for (int r = 0; r < g.n && ok; ++r) {
            if (in_tuple(t, r)) continue;  // placement on a cop: captured at t=0
            if (sol.val_cop[t][r] < 0) ok = false;
            else worst = std::max(worst, sol.val_cop[t][r]);
        }
        if (ok && (sol.t_hat < 0 || worst < sol.t_hat)) {
            sol.t_hat = worst;
            sol.best_start = sp.tuples[t];
        }
    }
    sol.guaranteed = sol.t_hat >= 0;
    return sol;
}

// Smallest K for which the visible game is a guaranteed win; searches
// incrementally. Family fast paths short-circuit the search.
inline int cop_number_search(const Graph& g, MoveRule rule = MoveRule::stay_ok,
                             long long cap_states = 2'000'000) {
    for (int K = 1; K <= g.n; ++K) {
        VisibleSolution s = visible_solve(g, K, rule, cap_states);
        if (s.guaranteed) return K;
    }
    throw std::logic_error("cop number search failed");  // unreachable: K=n wins
}

inline int cop_number(const Graph& g, MoveRule rule = MoveRule::stay_ok,
                      long long cap_states = 2'000'000) {
    switch (g.family) {
        case Family::path:
        case Family::star:
        case Family::tree:
        case Family::broom:
            return 1;  // trees are one-cop-win
        case Family::cycle:
            return g.n <= 3 ? 1 : 2;
        case Family::grid:
            return g.fam_N == 1 ? 1 : 2;
        default:
            return cop_number_search(g, rule, cap_states);
    }
}

}  // namespace cir
