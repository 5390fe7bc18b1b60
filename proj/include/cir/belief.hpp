#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cir/graph.hpp"
#include "cir/policy.hpp"
#include "cir/rational.hpp"
#include "cir/rng.hpp"

namespace cir {

// Belief recursion for the drunk robber, conditioned on no capture so far.
// Three phases per turn:
//   pbar: after the cop move, zero on cop vertices, renormalized;
//   phat: after the robber's walk step, may be positive on cop vertices;
//   p:    end of turn, zero on cop vertices, renormalized.
// All capture probabilities returned by the step functions are conditional
// on reaching that phase.

namespace detail {
inline void check_copset(const Graph& g, const std::vector<int>& Z) {
    if (Z.empty()) throw std::invalid_argument("cop set must be nonempty");
    for (int v : Z)
        if (v < 0 || v >= g.n) throw std::invalid_argument("cop vertex out of range");
}
}  // namespace detail

template <class S>
struct InitBeliefs {
    std::vector<S> pbar;   // identically zero at t=0
    std::vector<S> phat;   // uniform 1/n
    std::vector<S> p;      // uniform off Z_0
    S capture_prob;        // |set(Z_0)| / n
};

template <class S>
InitBeliefs<S> init_beliefs(const Graph& g, const std::vector<int>& Z0) {
    detail::check_copset(g, Z0);
    using st = scalar_traits<S>;
    InitBeliefs<S> b;
    b.pbar.assign(g.n, st::zero());
    b.phat.assign(g.n, st::from_ratio(1, g.n));
    std::vector<char> on(g.n, 0);
    int distinct = 0;
    for (int v : Z0)
        if (!on[v]) { on[v] = 1; ++distinct; }
    b.capture_prob = st::from_ratio(distinct, g.n);
    b.p.assign(g.n, st::zero());
    if (distinct < g.n) {
        S w = st::from_ratio(1, g.n - distinct);
        for (int v = 0; v < g.n; ++v)
            if (!on[v]) b.p[v] = w;
    }
    return b;
}

template <class S>
struct CopStep {
    std::vector<S> pbar;
    S capture_prob;  // mass of p_prev sitting on Z_t
};

template <class S>
CopStep<S> step_cop(const Graph& g, const std::vector<S>& p_prev, const std::vector<int>& Zt) {
    detail::check_copset(g, Zt);
    using st = scalar_traits<S>;
    CopStep<S> out;
    out.pbar.assign(g.n, st::zero());
    S cap = st::zero();
    std::vector<char> on(g.n, 0);
    for (int v : Zt) on[v] = 1;
    for (int v = 0; v < g.n; ++v)
        if (on[v]) cap += p_prev[v];
    out.capture_prob = cap;
    S surv = st::one() - cap;
    if (surv != st::zero()) {
        for (int v = 0; v < g.n; ++v)
            if (!on[v]) out.pbar[v] = p_prev[v] / surv;
    }
    return out;
}

template <class S>
struct RobberStep {
    std::vector<S> phat;
    S capture_prob;  // total mass absorbed on Z_t during the s substeps
    std::vector<S> p;
};

// Walk image: q(v) = sum over neighbors u of prev(u) / deg(u). The drunk
// robber never stands still.
template <class S>
std::vector<S> walk_image(const Graph& g, const std::vector<S>& prev) {
    using st = scalar_traits<S>;
    std::vector<S> q(g.n, st::zero());
    for (int u = 0; u < g.n; ++u) {
        if (prev[u] == st::zero()) continue;
        S share = prev[u] / S(g.deg(u));
        for (int v : g.adj[u]) q[v] += share;
    }
    return q;
}

// s = 1 is the plain recursion: phat is the walk image of pbar and sums to
// one. For s > 1 the robber takes s substeps with absorption on Z_t inside
// the turn; phat is then the final substep's image with earlier absorbed
// mass removed, so only the s = 1 phase satisfies the sum-to-one invariant.
template <class S>
RobberStep<S> step_robber(const Graph& g, const std::vector<S>& pbar,
                          const std::vector<int>& Zt, int s = 1) {
    if (s < 1) throw std::invalid_argument("robber speed must be >= 1");
    detail::check_copset(g, Zt);
    using st = scalar_traits<S>;
    std::vector<char> on(g.n, 0);
    for (int v : Zt) on[v] = 1;

    RobberStep<S> out;
    S absorbed = st::zero();
    std::vector<S> cur = pbar;
    for (int step = 0; step < s; ++step) {
        cur = walk_image(g, cur);
        if (step + 1 == s) out.phat = cur;
        for (int v = 0; v < g.n; ++v)
            if (on[v] && cur[v] != st::zero()) {
                absorbed += cur[v];
                cur[v] = st::zero();
            }
    }
    out.capture_prob = absorbed;
    out.p.assign(g.n, st::zero());
    S surv = st::one() - absorbed;
    if (surv != st::zero()) {
        for (int v = 0; v < g.n; ++v) out.p[v] = cur[v] / surv;
    }
    return out;
}

// --- schedules ---------------------------------------------------------------

// Ordered cop trajectory Z_0..Z_M; cop k's track must respect the move rule.
inline void validate_schedule(const Graph& g, const std::vector<std::vector<int>>& Z,
                              bool forced_move = false) {
    if (Z.empty()) throw std::invalid_argument("schedule must contain Z_0");
    size_t K = Z[0].size();
    if (K == 0) throw std::invalid_argument("schedule needs at least one cop");
    for (size_t t = 0; t < Z.size(); ++t) {
        if (Z[t].size() != K)
            throw std::invalid_argument("schedule changes cop count at turn " + std::to_string(t));
        detail::check_copset(g, Z[t]);
        if (t == 0) continue;
        for (size_t k = 0; k < K; ++k) {
            int a = Z[t - 1][k], b = Z[t][k];
            bool ok = forced_move ? g.has_edge(a, b) : (a == b || g.has_edge(a, b));
            if (!ok)
                throw std::invalid_argument("schedule infeasible for cop " + std::to_string(k) +
                                            " at turn " + std::to_string(t) + ": " +
                                            std::to_string(a) + " -> " + std::to_string(b));
        }
    }
}

// Unconditional capture-mass decomposition of a schedule against the drunk
// robber. mass[t] is the probability of capture at turn t; masses plus the
// residual sum to one.
template <class S>
struct CaptureDistribution {
    std::vector<S> mass;   // index = turn
    S residual;
    S expected;            // exact when residual == 0, else a certified lower bound
    bool exact;

    std::string json() const {
        using st = scalar_traits<S>;
        std::string out = "{\"masses\":[";
        char buf[64];
        for (size_t t = 0; t < mass.size(); ++t) {
            std::snprintf(buf, sizeof buf, "[%zu,%.12g]", t, st::to_d(mass[t]));
            if (t) out += ',';
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "],\"residual\":%.12g,\"expected\":%.12g,\"exact\":%s}",
                      st::to_d(residual), st::to_d(expected), exact ? "true" : "false");
        out += buf;
        return out;
    }
};

template <class S>
CaptureDistribution<S> schedule_ect(const Graph& g, const std::vector<std::vector<int>>& Z,
                                    int s = 1, bool forced_move = false) {
    validate_schedule(g, Z, forced_move);
    using st = scalar_traits<S>;
    CaptureDistribution<S> out;
    out.mass.assign(Z.size(), st::zero());

    InitBeliefs<S> b = init_beliefs<S>(g, Z[0]);
    S survival = st::one() - b.capture_prob;
    out.mass[0] = b.capture_prob;
    std::vector<S> p = b.p;

    for (size_t t = 1; t < Z.size() && survival != st::zero(); ++t) {
        CopStep<S> cs = step_cop(g, p, Z[t]);
        RobberStep<S> rs = step_robber(g, cs.pbar, Z[t], s);
        S cap_cop = survival * cs.capture_prob;
        S cap_rob = survival * (st::one() - cs.capture_prob) * rs.capture_prob;
        out.mass[t] = cap_cop + cap_rob;
        survival = survival * (st::one() - cs.capture_prob) * (st::one() - rs.capture_prob);
        p = rs.p;
    }

    out.residual = survival;
    S e = st::zero();
    for (size_t t = 0; t < out.mass.size(); ++t) e += S(static_cast<long long>(t)) * out.mass[t];
    // Surviving mass needs at least one more turn than the schedule covers.
    e += survival * S(static_cast<long long>(Z.size()));
    out.expected = e;
    out.exact = (survival == st::zero()) && st::exact;
    return out;
}

// --- stationary cops ---------------------------------------------------------

// Expected capture turn h(v) for the drunk robber started at v against cops
// parked on A: h = 0 on A, h(v) = 1 + (Q_s h)(v) elsewhere, where Q_s is the
// s-substep walk with absorption on A. Solved exactly by Gaussian
// elimination when S is Rational.
template <class S>
struct StationaryEct {
    std::vector<S> h;      // per-start expected capture turns
    S mean_uniform;        // expectation from the uniform placement
};

namespace detail {
template <class S>
std::vector<std::vector<S>> absorbed_step_matrix(const Graph& g, const std::vector<char>& on,
                                                 const std::vector<int>& free) {
    using st = scalar_traits<S>;
    int F = static_cast<int>(free.size());
    std::vector<int> pos(g.n, -1);
    for (int i = 0; i < F; ++i) pos[free[i]] = i;
    std::vector<std::vector<S>> Q(F, std::vector<S>(F, st::zero()));
    for (int i = 0; i < F; ++i) {
        int u = free[i];
        S share = st::from_ratio(1, g.deg(u));
        for (int w : g.adj[u])
            if (!on[w]) Q[i][pos[w]] += share;
    }
    return Q;
}

template <class S>
std::vector<S> solve_linear(std::vector<std::vector<S>> A, std::vector<S> rhs) {
    using st = scalar_traits<S>;
    int m = static_cast<int>(A.size());
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        if constexpr (st::exact) {
            for (int r = col; r < m; ++r)
                if (A[r][col] != st::zero()) { piv = r; break; }
        } else {
            double best = 0;
            for (int r = col; r < m; ++r)
                if (std::abs(st::to_d(A[r][col])) > best) { best = std::abs(st::to_d(A[r][col])); piv = r; }
        }
        if (piv < 0) throw std::runtime_error("singular system in stationary solve");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < m; ++r) {
            if (r == col || A[r][col] == st::zero()) continue;
            S f = A[r][col] / A[col][col];
            for (int c = col; c < m; ++c) A[r][c] -= f * A[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<S> x(m);
    for (int i = 0; i < m; ++i) x[i] = rhs[i] / A[i][i];
    return x;
}
}  // namespace detail

template <class S>
StationaryEct<S> stationary_ect(const Graph& g, const std::vector<int>& A, int s = 1) {
    detail::check_copset(g, A);
    if (s < 1) throw std::invalid_argument("robber speed must be >= 1");
    using st = scalar_traits<S>;
    std::vector<char> on(g.n, 0);
    for (int v : A) on[v] = 1;
    std::vector<int> free;
    for (int v = 0; v < g.n; ++v)
        if (!on[v]) free.push_back(v);

    StationaryEct<S> out;
    out.h.assign(g.n, st::zero());
    int F = static_cast<int>(free.size());
    if (F > 0) {
        auto Q1 = detail::absorbed_step_matrix<S>(g, on, free);
        // Q_s = Q1^s; s is small in exact use, so plain repeated product.
        auto Qs = Q1;
        for (int step = 1; step < s; ++step) {
            std::vector<std::vector<S>> R(F, std::vector<S>(F, st::zero()));
            for (int i = 0; i < F; ++i)
                for (int k = 0; k < F; ++k) {
                    if (Qs[i][k] == st::zero()) continue;
                    for (int j = 0; j < F; ++j)
                        if (Q1[k][j] != st::zero()) R[i][j] += Qs[i][k] * Q1[k][j];
                }
            Qs = R;
        }
        // (I - Qs) h = 1
        std::vector<std::vector<S>> Amat(F, std::vector<S>(F, st::zero()));
        for (int i = 0; i < F; ++i) {
            for (int j = 0; j < F; ++j) Amat[i][j] = -Qs[i][j];
            Amat[i][i] += st::one();
        }
        std::vector<S> rhs(F, st::one());
        auto h = detail::solve_linear<S>(std::move(Amat), std::move(rhs));
        for (int i = 0; i < F; ++i) out.h[free[i]] = h[i];
    }
    S total = st::zero();
    for (int v = 0; v < g.n; ++v) total += out.h[v];
    out.mean_uniform = total / S(g.n);
    return out;
}

// --- Monte Carlo -------------------------------------------------------------

struct SimResult {
    long long trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double half_ci95 = 0.0;
    long long max_T = 0;
    long long capped = 0;  // trials cut off at max_turns (excluded from none; clamped)
    std::map<long long, long long> hist;
    std::uint64_t seed = 0;
};

namespace detail {
inline void finish_stats(SimResult& r, const std::vector<double>& xs) {
    r.trials = static_cast<long long>(xs.size());
    double sum = 0;
    for (double x : xs) sum += x;
    r.mean = sum / xs.size();
    double ss = 0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.stddev = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
    r.half_ci95 = 1.959963984540054 * r.stddev / std::sqrt(static_cast<double>(xs.size()));
}
}  // namespace detail

// Drunk-robber rollouts against a cop strategy. Each trial draws from its
// own substream, so results depend only on (seed, trials).
inline SimResult simulate_drunk(const Graph& g, const CopStrategy& cop, int s, long long trials,
                                std::uint64_t seed, long long max_turns = 2'000'000) {
    if (s < 1) throw std::invalid_argument("robber speed must be >= 1");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    SimResult res;
    res.seed = seed;
    std::vector<double> xs;
    xs.reserve(trials);
    for (long long i = 0; i < trials; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        auto run = cop.start();
        std::vector<int> Z = run->next(rng);
        detail::check_copset(g, Z);
        int y = uniform_index(rng, g.n);
        long long T = -1;
        auto caught = [&](const std::vector<int>& z) {
            return std::find(z.begin(), z.end(), y) != z.end();
        };
        if (caught(Z)) T = 0;
        long long t = 0;
        while (T < 0 && t < max_turns) {
            ++t;
            Z = run->next(rng);
            detail::check_copset(g, Z);
            if (caught(Z)) { T = t; break; }
            for (int sub = 0; sub < s; ++sub) {
                y = g.adj[y][uniform_index(rng, g.deg(y))];
                if (caught(Z)) { T = t; break; }
            }
        }
        if (T < 0) { T = max_turns; ++res.capped; }
        res.max_T = std::max(res.max_T, T);
        ++res.hist[T];
        xs.push_back(static_cast<double>(T));
    }
    detail::finish_stats(res, xs);
    return res;
}

}  // namespace cir
