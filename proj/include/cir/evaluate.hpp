#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cir/belief.hpp"
#include "cir/graph.hpp"
#include "cir/policy.hpp"
#include "cir/rational.hpp"
#include "cir/rng.hpp"

namespace cir {

// Uniform random walker of speed s: one edge step at a time, stopping early on
// a cop vertex. Placement is uniform over all n vertices (collisions included).
// Memoryless, so it supports exact chain evaluation: captured mass is reported
// on the cop vertex where the walk was absorbed.
class DrunkRobberRun final : public RobberRun {
  public:
    DrunkRobberRun(const Graph* g, int s) : g_(g), s_(s) {}
    int place(const std::vector<std::vector<int>>&, Rng& rng) override {
        return static_cast<int>(uniform_index(rng, g_->n));
    }
    int move(int cur, const std::vector<std::vector<int>>& hist, Rng& rng) override {
        const auto& Zt = hist.back();
        int pos = cur;
        for (int step = 0; step < s_; ++step) {
            pos = g_->adj[pos][uniform_index(rng, g_->deg(pos))];
            if (std::find(Zt.begin(), Zt.end(), pos) != Zt.end()) break;
        }
        return pos;
    }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<int, Rational>> place_branches(const std::vector<int>&) const override {
        std::vector<std::pair<int, Rational>> out;
        for (int v = 0; v < g_->n; ++v) out.emplace_back(v, rat(1, g_->n));
        return out;
    }
    std::vector<std::pair<int, Rational>> move_branches(int cur, const std::vector<int>& Zt) const override {
        std::vector<Rational> mass(g_->n, Rational(0)), frozen(g_->n, Rational(0));
        mass[cur] = Rational(1);
        std::vector<char> blocked(g_->n, 0);
        for (int z : Zt) blocked[z] = 1;
        for (int step = 0; step < s_; ++step) {
            std::vector<Rational> nxt(g_->n, Rational(0));
            for (int u = 0; u < g_->n; ++u) {
                if (mass[u] == 0) continue;
                Rational share = mass[u] / g_->deg(u);
                for (int w : g_->adj[u]) {
                    if (blocked[w])
                        frozen[w] += share;  // absorbed: stays put for the rest of the turn
                    else
                        nxt[w] += share;
                }
            }
            mass.swap(nxt);
        }
        std::vector<std::pair<int, Rational>> out;
        for (int v = 0; v < g_->n; ++v) {
            Rational m = mass[v] + frozen[v];
            if (m != 0) out.emplace_back(v, m);
        }
        return out;
    }

  private:
    const Graph* g_;
    int s_;
};

class DrunkRobber final : public RobberStrategy {
  public:
    explicit DrunkRobber(const Graph& g, int s = 1) : g_(&g), s_(s) {
        if (s < 1) throw std::invalid_argument("robber speed must be >= 1");
    }
    std::string name() const override { return "drunk:s=" + std::to_string(s_); }
    int min_speed() const override { return s_; }
    std::unique_ptr<RobberRun> start() const override {
        return std::make_unique<DrunkRobberRun>(g_, s_);
    }

  private:
    const Graph* g_;
    int s_;
};

namespace detail {

// Dense exact solve of A x = b by Gaussian elimination with partial (first
// nonzero) pivoting. Throws if A is singular.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> A,
                                          std::vector<Rational> b) {
    size_t n = A.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) throw std::runtime_error("singular linear system");
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rational f = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (size_t c = 0; c < n; ++c) x[c] = b[c] / A[c][c];
    return x;
}

struct PairChain {
    // Survival transitions between states (cop-run key, robber vertex); the
    // missing row mass is the per-turn capture probability.
    std::vector<std::vector<std::pair<int, Rational>>> rows;
    std::vector<Rational> entry;  // distribution over states after placement
    Rational placed_capture = Rational(0);  // robber placed onto a cop
};

inline PairChain build_pair_chain([[maybe_unused]] const Graph& g, const CopStrategy& cop,
                                  const RobberStrategy& rob, size_t max_states) {
    auto rob_run = rob.start();
    if (!rob_run->exact_capable())
        throw std::invalid_argument("robber strategy does not support exact evaluation");
    {
        auto probe = cop.start();
        if (!probe->exact_capable())
            throw std::invalid_argument("cop strategy does not support exact evaluation");
    }

    PairChain ch;
    std::map<std::pair<std::string, int>, int> index;
    std::vector<std::unique_ptr<CopRun>> reps;
    std::vector<int> rpos;

    auto state_id = [&](std::unique_ptr<CopRun> run, int r) {
        auto key = std::make_pair(run->key(), r);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(reps.size());
        index.emplace(key, id);
        reps.push_back(std::move(run));
        rpos.push_back(r);
        ch.rows.emplace_back();
        ch.entry.push_back(Rational(0));
        return id;
    };

    // Placement: the cop run's first emission, then the robber's reply.
    {
        auto fresh = cop.start();
        for (const auto& [Z0, pc] : fresh->branches()) {
            for (const auto& [r, pr] : rob_run->place_branches(Z0)) {
                Rational w = pc * pr;
                if (std::find(Z0.begin(), Z0.end(), r) != Z0.end()) {
                    ch.placed_capture += w;
                    continue;
                }
                auto run = fresh->clone();
                run->apply(Z0);
                ch.entry[state_id(std::move(run), r)] += w;
            }
        }
    }

    // BFS over reachable states.
    for (size_t i = 0; i < reps.size(); ++i) {
        if (reps.size() > max_states)
            throw std::runtime_error("exact evaluation state space exceeds cap");
        int r = rpos[i];
        std::map<int, Rational> agg;
        for (const auto& [Zt, pc] : reps[i]->branches()) {
            if (std::find(Zt.begin(), Zt.end(), r) != Zt.end()) continue;  // caught by the move
            for (const auto& [dest, pr] : rob_run->move_branches(r, Zt)) {
                if (std::find(Zt.begin(), Zt.end(), dest) != Zt.end()) continue;  // walked into a cop
                auto run = reps[i]->clone();
                run->apply(Zt);
                agg[state_id(std::move(run), dest)] += pc * pr;
            }
        }
        for (auto& [j, w] : agg) ch.rows[i].emplace_back(j, w);
    }
    return ch;
}

}  // namespace detail

struct PairValue {
    Rational expected;  // exact expected capture time (turn index convention)
    size_t states = 0;  // chain size, for diagnostics
};

// Exact expected capture time for a (cop strategy, robber strategy) pair, by
// solving the induced finite Markov chain with rational arithmetic. Both
// strategies must support exact enumeration; throws if capture is not almost
// sure (the linear system is then singular or produces nonsense, which we
// detect via the residual mass check below).
inline PairValue evaluate_pair(const Graph& g, const CopStrategy& cop, const RobberStrategy& rob,
                               size_t max_states = 20000) {
    auto ch = detail::build_pair_chain(g, cop, rob, max_states);
    size_t n = ch.rows.size();
    // E = 1 + Q E  =>  (I - Q) E = 1
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(n, Rational(1));
    for (size_t i = 0; i < n; ++i) {
        A[i][i] = Rational(1);
        for (auto& [j, w] : ch.rows[i]) A[i][j] -= w;
    }
    std::vector<Rational> E;
    try {
        E = detail::solve_linear(std::move(A), std::move(b));
    } catch (const std::runtime_error&) {
        throw std::runtime_error("capture is not almost-sure under this strategy pair");
    }
    PairValue out;
    out.states = n;
    out.expected = Rational(0);
    for (size_t i = 0; i < n; ++i) {
        if (E[i] < 0)
            throw std::runtime_error("capture is not almost-sure under this strategy pair");
        out.expected += ch.entry[i] * E[i];
    }
    return out;
}

// Exact expected value of min(T, m) for the same pair, by backward iteration
// over the chain (V_k = per-turn capture + survivors paying 1 + V_{k-1}).
inline PairValue evaluate_pair_capped(const Graph& g, const CopStrategy& cop,
                                      const RobberStrategy& rob, long long m,
                                      size_t max_states = 20000) {
    if (m < 0) throw std::invalid_argument("horizon must be >= 0");
    auto ch = detail::build_pair_chain(g, cop, rob, max_states);
    size_t n = ch.rows.size();
    std::vector<Rational> V(n, Rational(0)), W(n);
    for (long long k = 1; k <= m; ++k) {
        for (size_t i = 0; i < n; ++i) {
            W[i] = Rational(1);
            for (auto& [j, w] : ch.rows[i]) W[i] += w * V[j];
        }
        V.swap(W);
    }
    PairValue out;
    out.states = n;
    out.expected = Rational(0);
    for (size_t i = 0; i < n; ++i) out.expected += ch.entry[i] * V[i];
    return out;
}

// Monte Carlo playout of a strategy pair. Capture is checked after the cop
// move and after the robber's reply; strategy robbers report the endpoint of
// their turn (a run that would pass through a cop must stop there itself, as
// the drunk run does).
inline SimResult simulate_pair([[maybe_unused]] const Graph& g, const CopStrategy& cop, const RobberStrategy& rob,
                               long long trials, std::uint64_t seed,
                               long long max_turns = 2'000'000) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    SimResult res;
    res.seed = seed;
    std::vector<double> xs;
    xs.reserve(static_cast<size_t>(trials));
    for (long long i = 0; i < trials; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        auto crun = cop.start();
        auto rrun = rob.start();
        std::vector<std::vector<int>> hist;
        hist.push_back(crun->next(rng));
        long long T = -1;
        int r = rrun->place(hist, rng);
        if (std::find(hist[0].begin(), hist[0].end(), r) != hist[0].end()) T = 0;
        for (long long t = 1; T < 0 && t <= max_turns; ++t) {
            hist.push_back(crun->next(rng));
            const auto& Zt = hist.back();
            if (std::find(Zt.begin(), Zt.end(), r) != Zt.end()) {
                T = t;
                break;
            }
            r = rrun->move(r, hist, rng);
            if (std::find(Zt.begin(), Zt.end(), r) != Zt.end()) {
                T = t;
                break;
            }
        }
        if (T < 0) {
            T = max_turns;
            ++res.capped;
        }
        res.max_T = std::max(res.max_T, T);
        ++res.hist[T];
        xs.push_back(static_cast<double>(T));
    }
    detail::finish_stats(res, xs);
    return res;
}

}  // namespace cir
