#pragma once

#include <algorithm>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cir/graph.hpp"
#include "cir/rational.hpp"
#include "cir/rng.hpp"

namespace cir {

// A "run" owns one playthrough's worth of strategy state. next()/place()/move()
// sample; the branch methods expose the same randomness for exact enumeration.
// key() must determine all future behavior, so runs with equal keys can be
// merged into one state of a finite chain; strategies whose behavior depends
// on unbounded history must not claim exact capability.

class CopRun {
  public:
    virtual ~CopRun() = default;

    // Sample the next cop tuple; the first call yields the initial placement.
    virtual std::vector<int> next(Rng& rng) = 0;

    virtual bool exact_capable() const { return false; }
    // All possible next tuples with probabilities summing to 1.
    virtual std::vector<std::pair<std::vector<int>, Rational>> branches() const {
        throw std::logic_error("cop strategy has no exact enumeration");
    }
    // Commit to one enumerated tuple.
    virtual void apply(const std::vector<int>&) {
        throw std::logic_error("cop strategy has no exact enumeration");
    }
    virtual std::string key() const {
        throw std::logic_error("cop strategy has no exact enumeration");
    }
    virtual std::unique_ptr<CopRun> clone() const {
        throw std::logic_error("cop strategy has no exact enumeration");
    }
};

class CopStrategy {
  public:
    virtual ~CopStrategy() = default;
    virtual std::string name() const = 0;
    virtual int cops() const = 0;
    virtual std::unique_ptr<CopRun> start() const = 0;
};

// The robber sees the full cop history when sampling. The exact-enumeration
// methods receive only the current cop tuple: every exact-capable robber here
// is memoryless given its position (placement may look at Z_0 = the whole
// history so far).
class RobberRun {
  public:
    virtual ~RobberRun() = default;

    virtual int place(const std::vector<std::vector<int>>& cop_hist, Rng& rng) = 0;
    virtual int move(int cur, const std::vector<std::vector<int>>& cop_hist, Rng& rng) = 0;

    virtual bool exact_capable() const { return false; }
    virtual std::vector<std::pair<int, Rational>> place_branches(const std::vector<int>&) const {
        throw std::logic_error("robber strategy has no exact enumeration");
    }
    virtual std::vector<std::pair<int, Rational>> move_branches(int, const std::vector<int>&) const {
        throw std::logic_error("robber strategy has no exact enumeration");
    }
};

class RobberStrategy {
  public:
    virtual ~RobberStrategy() = default;
    virtual std::string name() const = 0;
    // Smallest robber speed at which every emitted move is feasible.
    virtual int min_speed() const { return 1; }
    virtual std::unique_ptr<RobberRun> start() const = 0;
};

// Vertices a speed-s robber at `cur` can end his turn on (ascending): every
// vertex reachable within s edges whose interior path vertices avoid the cop
// set. Cop-occupied destinations are included (moving onto a cop is a
// capture, not an illegal move); so is standing still.
inline std::vector<int> robber_reachable(const Graph& g, const std::vector<int>& Z, int cur,
                                         int s) {
    std::vector<char> on(g.n, 0);
    for (int v : Z) on[v] = 1;
    std::vector<char> ok(g.n, 0);
    if (on[cur]) {
        ok[cur] = 1;  // already co-located; degenerate
    } else {
        std::vector<int> dist(g.n, -1);
        std::queue<int> q;
        dist[cur] = 0;
        ok[cur] = 1;
        q.push(cur);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (dist[u] == s) continue;
            for (int v : g.adj[u]) {
                if (on[v]) {
                    ok[v] = 1;  // terminal step into a cop
                    continue;
                }
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    ok[v] = 1;
                    q.push(v);
                }
            }
        }
    }
    std::vector<int> dests;
    for (int v = 0; v < g.n; ++v)
        if (ok[v]) dests.push_back(v);
    return dests;
}

inline bool robber_move_feasible(const Graph& g, const std::vector<int>& Z, int cur, int dest,
                                 int s) {
    if (dest < 0 || dest >= g.n) return false;
    auto dests = robber_reachable(g, Z, cur, s);
    return std::binary_search(dests.begin(), dests.end(), dest);
}

}  // namespace cir
