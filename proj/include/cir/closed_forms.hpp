#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cir/graph.hpp"
#include "cir/rational.hpp"

namespace cir {

// --- complete d-ary tree, cop parked at the root -----------------------------

// Expected capture turns e_1..e_L for the drunk robber started at level j
// against a cop standing at the root (e_0 = 0), via the telescoped recursion
// e_j = 2*sum_{k=0}^{L-j} d^k - 1 + e_{j-1}.
inline std::vector<Rational> tree_root_ect_levels(int d, int L) {
    if (d < 2 || L < 1) throw std::invalid_argument("need d >= 2, L >= 1");
    std::vector<Rational> e(L + 1);
    e[0] = 0;
    for (int j = 1; j <= L; ++j) {
        BigInt s = 0, pw = 1;
        for (int k = 0; k <= L - j; ++k) {
            s += pw;
            pw *= d;
        }
        e[j] = Rational(2 * s - 1) + e[j - 1];
    }
    return std::vector<Rational>(e.begin() + 1, e.end());
}

// Closed form for e_L: (2d^{L+1}-2)/(d-1)^2 - (2d+2L)/(d-1) - L + 2.
inline Rational tree_root_ect_deepest(int d, int L) {
    if (d < 2 || L < 1) throw std::invalid_argument("need d >= 2, L >= 1");
    BigInt pw = 1;
    for (int k = 0; k < L + 1; ++k) pw *= d;
    Rational r = rat(2 * pw - 2, BigInt(d - 1) * (d - 1));
    r -= rat(2 * d + 2 * L, d - 1);
    r -= L;
    r += 2;
    return r;
}

// --- complete d-ary tree, adversarial robber ---------------------------------

struct TreeAdvBounds {
    BigInt upper;  // preleaf-round cop strategy: d^{L-1}(2L+2(d-1)) - L - (d-1)
    BigInt lower;  // distance-2 evasion argument: 2L(d-1)d^{L-2} - L
};

inline TreeAdvBounds tree_adversarial_bounds(int d, int L) {
    if (d < 2 || L < 2) throw std::invalid_argument("need d >= 2, L >= 2");
    BigInt dl1 = 1;  // d^{L-1}
    for (int k = 0; k < L - 1; ++k) dl1 *= d;
    BigInt dl2 = dl1 / d;  // d^{L-2}
    TreeAdvBounds b;
    b.upper = dl1 * (2 * L + 2 * (d - 1)) - L - (d - 1);
    b.lower = BigInt(2 * L) * (d - 1) * dl2 - L;
    return b;
}

// --- broom capture-time polynomial -------------------------------------------

// Asymptotic expected capture time divided by n for the parametrized
// cop/robber pair on B(c, n): f(x) = a2 x^2 + a1 x + a0.
template <class S>
struct BroomPoly {
    S a2, a1, a0;
    S at(const S& x) const { return (a2 * x + a1) * x + a0; }
};

template <class S>
BroomPoly<S> broom_poly(const S& c, const S& b, const S& p) {
    BroomPoly<S> f;
    S one = S(1);
    f.a2 = -(one - p) * (one - b) * (one - c);
    f.a1 = (one - p) * (one - S(3) * c + b * c + b);
    f.a0 = S(2) * (one - p) * (c - b) + one;
    return f;
}

// --- star with an infinitely fast robber -------------------------------------

// One cop alternating center / uniform random leaf against the relocating
// robber: capture at turn 2k-1 with probability (1/N)((N-1)/N)^{k-1}.
inline Rational star_infspeed_ect(int N) {
    if (N < 1) throw std::invalid_argument("need N >= 1");
    return 2 * N - 1;
}

// E[min(T, H)] under the same pair (partial geometric sum).
inline Rational star_infspeed_ect_truncated(int N, long long H) {
    if (N < 1 || H < 0) throw std::invalid_argument("need N >= 1, H >= 0");
    long long K = (H + 1) / 2;  // odd turns 1,3,..,2K-1 <= H
    Rational p = rat(1, N), q = rat(N - 1, N);
    Rational e = 0, qk = 1;
    for (long long k = 1; k <= K; ++k) {
        e += qk * p * Rational(2 * k - 1);
        qk *= q;
    }
    e += qk * Rational(H);
    return e;
}

// --- infinite-speed limits ----------------------------------------------------

inline Rational infspeed_drunk_limit(int n, int K) {
    if (K < 1 || K > n) throw std::invalid_argument("need 1 <= K <= n");
    return rat(n - K, n);
}

// Cost-of-drunkenness limit n/(n-K) * ct_i(G, n); the adversarial
// infinite-speed value is known in closed form for stars and paths only.
inline std::optional<Rational> infspeed_cod_limit(const Graph& g, int K) {
    if (g.family == Family::star && K == 1) {
        int N = g.fam_N;
        return rat(2 * N - 1, 1) * rat(N + 1, N);
    }
    if (g.family == Family::path && K == 1) return Rational(g.n);
    return std::nullopt;
}

// --- drunk lower bound from degree conditions --------------------------------

struct DegreeLowerBound {
    bool applicable = false;
    Rational condition_lhs;  // Delta*K / (delta*(n-K)), must be <= 1/24
    Rational tau;            // delta*(n-K) / (7*Delta*K)
    double value = 0.0;      // tau / e
};

inline DegreeLowerBound drunk_degree_lower(const Metrics& m, int K) {
    if (K < 1 || m.n <= K) throw std::invalid_argument("need n > K >= 1");
    DegreeLowerBound b;
    b.condition_lhs = rat(BigInt(m.max_deg) * K, BigInt(m.min_deg) * (m.n - K));
    b.applicable = b.condition_lhs <= rat(1, 24);
    b.tau = rat(BigInt(m.min_deg) * (m.n - K), BigInt(7) * m.max_deg * K);
    b.value = b.applicable ? to_double(b.tau) / std::exp(1.0) : 0.0;
    return b;
}

// Ceiling sequence for the belief masses: M_0 = (Delta/delta)/(n-K),
// M_t = M_{t-1}/(1 - 2K M_{t-1}); equivalently 1/M_t falls by 2K each step.
struct BeliefCeilingTrace {
    std::vector<Rational> M;
    bool condition_ok = false;
    Rational tau;
};

inline BeliefCeilingTrace belief_ceiling_trace(const Metrics& m, int K, int t_max) {
    if (K < 1 || m.n <= K) throw std::invalid_argument("need n > K >= 1");
    if (t_max < 0) throw std::invalid_argument("need t_max >= 0");
    BeliefCeilingTrace tr;
    DegreeLowerBound b = drunk_degree_lower(m, K);
    tr.condition_ok = b.applicable;
    tr.tau = b.tau;
    Rational M = rat(m.max_deg, BigInt(m.min_deg) * (m.n - K));
    tr.M.push_back(M);
    for (int t = 1; t <= t_max; ++t) {
        Rational den = Rational(1) - Rational(2 * K) * M;
        if (den <= 0) break;  // ceiling blew up; sequence no longer defined
        M = M / den;
        tr.M.push_back(M);
    }
    return tr;
}

// --- universal adversarial upper bound ---------------------------------------

// (T_hat + D) * (Delta + 1)^T_hat * n; D is a caller choice so family records
// can substitute the looser 2N walk-back distance for grids.
inline BigInt guess_round_upper(long long T_hat, long long D, long long Delta, long long n) {
    if (T_hat < 0 || D < 0 || Delta < 0 || n < 1) throw std::invalid_argument("bad parameters");
    BigInt pw = 1;
    for (long long k = 0; k < T_hat; ++k) pw *= (Delta + 1);
    return BigInt(T_hat + D) * pw * n;
}

// --- grid round analysis ------------------------------------------------------

// Probability that a simple random walk from k >= 1 hits 0 within r steps:
// at least 1 - 12k/sqrt(r), floored at 0.
struct FlooredProb {
    double value = 0.0;
    bool vacuous = false;
};

inline FlooredProb walk_hit_prob_lower(double k, double r) {
    if (k < 0 || r <= 0) throw std::invalid_argument("need k >= 0, r > 0");
    FlooredProb p;
    double v = 1.0 - 12.0 * k / std::sqrt(r);
    p.vacuous = v <= 0.0;
    p.value = p.vacuous ? 0.0 : v;
    return p;
}

// Per-round capture probability for stationary corner cops over rounds of
// c_mult * n steps: (1/2)(1 - 24/sqrt(c_mult)), without the (1+o(1)) factor.
inline FlooredProb grid_round_success_lower(double c_mult) {
    if (c_mult <= 0) throw std::invalid_argument("need c_mult > 0");
    FlooredProb p;
    double v = 0.5 * (1.0 - 24.0 / std::sqrt(c_mult));
    p.vacuous = v <= 0.0;
    p.value = p.vacuous ? 0.0 : v;
    return p;
}

}  // namespace cir
