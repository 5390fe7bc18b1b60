#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cir/belief.hpp"
#include "cir/graph.hpp"
#include "cir/rational.hpp"
#include "cir/strategies.hpp"
#include "cir/visible.hpp"

namespace cir {

namespace detail {

// Canonical serialization of (cop counts, belief) under the automorphism
// group of the tagged families; identity for custom graphs. Equal keys imply
// equal value-to-go, which is what makes the belief DP tractable on the
// symmetric families.
class StateCanon {
  public:
    explicit StateCanon(const Graph& g) : g_(&g) {
        switch (g.family) {
            case Family::path:
                perms_.push_back(identity());
                perms_.push_back(reverse_perm());
                break;
            case Family::cycle:
                for (int k = 0; k < g.n; ++k) {
                    std::vector<int> rot(g.n), ref(g.n);
                    for (int v = 0; v < g.n; ++v) {
                        rot[v] = (v + k) % g.n;
                        ref[v] = ((k - v) % g.n + g.n) % g.n;
                    }
                    perms_.push_back(std::move(rot));
                    perms_.push_back(std::move(ref));
                }
                break;
            case Family::grid:
                for (int sym = 0; sym < 8; ++sym) {
                    int N = g.fam_N;
                    std::vector<int> p(g.n);
                    for (int r = 0; r < N; ++r)
                        for (int c = 0; c < N; ++c) {
                            int rr = r, cc = c;
                            if (sym & 1) rr = N - 1 - rr;
                            if (sym & 2) cc = N - 1 - cc;
                            if (sym & 4) std::swap(rr, cc);
                            p[r * N + c] = rr * N + cc;
                        }
                    perms_.push_back(std::move(p));
                }
                break;
            default:
                // star / tree handled structurally; custom and broom use identity
                if (g.family != Family::star && g.family != Family::tree)
                    perms_.push_back(identity());
                break;
        }
        if (g.family == Family::tree) shape_.emplace(g);
    }

    std::string key(const std::vector<int>& counts, const std::vector<Rational>& p) const {
        if (g_->family == Family::star) return star_key(counts, p);
        if (g_->family == Family::tree) return tree_key(0, counts, p);
        std::string best;
        for (const auto& perm : perms_) {
            std::string s;
            // serialize the state as seen through the automorphism: slot v of
            // the image holds the record of the preimage of v
            std::vector<int> inv(g_->n);
            for (int v = 0; v < g_->n; ++v) inv[perm[v]] = v;
            for (int v = 0; v < g_->n; ++v) {
                int u = inv[v];
                s += std::to_string(counts[u]);
                s += ':';
                s += rat_str(p[u]);
                s += '|';
            }
            if (best.empty() || s < best) best = std::move(s);
        }
        return best;
    }

  private:
    std::vector<int> identity() const {
        std::vector<int> p(g_->n);
        for (int v = 0; v < g_->n; ++v) p[v] = v;
        return p;
    }
    std::vector<int> reverse_perm() const {
        std::vector<int> p(g_->n);
        for (int v = 0; v < g_->n; ++v) p[v] = g_->n - 1 - v;
        return p;
    }
    std::string star_key(const std::vector<int>& counts, const std::vector<Rational>& p) const {
        std::string s = std::to_string(counts[0]) + ":" + rat_str(p[0]) + "|";
        std::vector<std::string> leaves;
        for (int v = 1; v < g_->n; ++v)
            leaves.push_back(std::to_string(counts[v]) + ":" + rat_str(p[v]));
        std::sort(leaves.begin(), leaves.end());
        for (auto& l : leaves) s += l + "|";
        return s;
    }
    std::string tree_key(int v, const std::vector<int>& counts,
                         const std::vector<Rational>& p) const {
        std::string s = "(" + std::to_string(counts[v]) + ":" + rat_str(p[v]);
        if (shape_->layer[v] < shape_->L) {
            std::vector<std::string> kids;
            for (int k = 0; k < shape_->d; ++k)
                kids.push_back(tree_key(shape_->child(v, k), counts, p));
            std::sort(kids.begin(), kids.end());
            for (auto& c : kids) s += c;
        }
        return s + ")";
    }

    const Graph* g_;
    std::vector<std::vector<int>> perms_;
    std::optional<TreeShape> shape_;
};

}  // namespace detail

struct DrunkSolveResult {
    Rational value;              // value of the m-truncated pursuit, payoff min(T, m)
    bool certified = true;       // false if the belief-state cap was hit
    size_t states = 0;           // distinct (cop tuple, belief) entries expanded
    long long horizon = 0;
    std::vector<int> best_placement;
    std::vector<std::pair<std::vector<int>, Rational>> placements;  // value per start
};

// Exact value of the m-turn truncated pursuit of a drunk robber by K
// unobservant cops: a minimum over deterministic cop walks, computed as a DP
// over (cop tuple, conditional belief, turns left) with beliefs deduplicated
// by exact canonical form. When the state cap is exceeded, unexpanded
// continuations are scored 0, so the returned value stays a valid lower bound
// and `certified` turns false.
class DrunkSolver {
  public:
    DrunkSolver(const Graph& g, int K, int s = 1, MoveRule rule = MoveRule::stay_ok,
                size_t cap = 500'000)
        : g_(&g), s_(s), cap_(cap), canon_(g), space_(build_cop_space(g, K, rule)) {
        if (s < 1) throw std::invalid_argument("robber speed must be >= 1");
    }

    DrunkSolveResult solve(long long m) {
        if (m < 0) throw std::invalid_argument("horizon must be >= 0");
        DrunkSolveResult res;
        res.horizon = m;
        certified_ = true;
        memo_.clear();
        for (size_t id = 0; id < space_.tuples.size(); ++id) {
            const auto& Z0 = space_.tuples[id];
            auto init = init_beliefs<Rational>(*g_, Z0);
            Rational v = (Rational(1) - init.capture_prob) * value(static_cast<int>(id), init.p, m);
            res.placements.emplace_back(Z0, v);
            if (res.best_placement.empty() || v < res.value) {
                res.value = v;
                res.best_placement = Z0;
            }
        }
        res.states = memo_.size();
        res.certified = certified_;
        return res;
    }

  private:
    Rational value(int tuple_id, const std::vector<Rational>& p, long long R) {
        if (R == 0) return Rational(0);
        std::vector<int> counts(g_->n, 0);
        for (int v : space_.tuples[tuple_id]) ++counts[v];
        std::string key = canon_.key(counts, p);
        key += "#";
        key += std::to_string(R);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (memo_.size() >= cap_) {
            certified_ = false;
            return Rational(0);  // admissible: keeps the result a lower bound
        }
        Rational best;
        bool first = true;
        for (int nxt : space_.moves[tuple_id]) {
            const auto& Z = space_.tuples[nxt];
            auto cs = step_cop<Rational>(*g_, p, Z);
            Rational cand;
            if (cs.capture_prob == 1) {
                cand = Rational(1);
            } else {
                auto rs = step_robber<Rational>(*g_, cs.pbar, Z, s_);
                Rational q = cs.capture_prob + (Rational(1) - cs.capture_prob) * rs.capture_prob;
                if (q == 1)
                    cand = Rational(1);
                else
                    cand = Rational(1) + (Rational(1) - q) * value(nxt, rs.p, R - 1);
            }
            if (first || cand < best) {
                best = cand;
                first = false;
            }
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

    const Graph* g_;
    int s_;
    size_t cap_;
    bool certified_ = true;
    detail::StateCanon canon_;
    CopSpace space_;
    std::map<std::string, Rational> memo_;
};

inline DrunkSolveResult val_drunk_truncated(const Graph& g, int K, long long m, int s = 1,
                                            MoveRule rule = MoveRule::stay_ok,
                                            size_t cap = 500'000) {
    DrunkSolver solver(g, K, s, rule, cap);
    return solver.solve(m);
}

// Exact expected capture time of a "play the schedule, then park on its last
// tuple" cop against the drunk robber: belief recursion over the schedule,
// then the absorbing-walk tail from the final belief. Throws if the parked
// tail does not capture almost surely.
template <class S = Rational>
S parked_schedule_ect(const Graph& g, const std::vector<std::vector<int>>& sched, int s = 1) {
    if (sched.empty()) throw std::invalid_argument("schedule must be nonempty");
    auto init = init_beliefs<S>(g, sched[0]);
    S expected = scalar_traits<S>::zero();  // T=0 term contributes 0
    S surv = scalar_traits<S>::one() - init.capture_prob;
    std::vector<S> p = init.p;
    long long L = static_cast<long long>(sched.size());
    for (long long t = 1; t < L; ++t) {
        if (surv == scalar_traits<S>::zero()) return expected;
        auto cs = step_cop<S>(g, p, sched[t]);
        S cap_here = cs.capture_prob;
        S alive = scalar_traits<S>::one() - cap_here;
        if (alive == scalar_traits<S>::zero()) {
            expected += surv * scalar_traits<S>::from_ratio(t, 1);
            return expected;
        }
        auto rs = step_robber<S>(g, cs.pbar, sched[t], s);
        S q = cap_here + alive * rs.capture_prob;
        expected += surv * q * scalar_traits<S>::from_ratio(t, 1);
        surv *= scalar_traits<S>::one() - q;
        p = rs.p;
    }
    if (surv == scalar_traits<S>::zero()) return expected;
    // Parked tail: cops sit on the last tuple; capture times from the
    // absorbing random walk, offset by the turns the schedule already burned.
    auto st = stationary_ect<S>(g, sched.back(), s);
    S tail = scalar_traits<S>::zero();
    for (int v = 0; v < g.n; ++v) tail += p[v] * st.h[v];
    expected += surv * (scalar_traits<S>::from_ratio(L - 1, 1) + tail);
    return expected;
}

struct BoundSide {
    Rational value;
    std::string method;
};

struct ValueBracket {
    BoundSide lower, upper;
    bool certified_lower = true;
};

// Bracket for the untruncated drunk-pursuit value: the truncated DP from
// below (its value increases to the true one), an explicit schedule strategy
// from above.
inline ValueBracket dct_bracket(const Graph& g, int K, long long m,
                                const ScheduleCopStrategy& upper_strategy, int s = 1) {
    if (upper_strategy.cops() != K)
        throw std::invalid_argument("upper strategy uses a different cop count");
    ValueBracket br;
    auto lo = val_drunk_truncated(g, K, m, s);
    br.lower = {lo.value, "dp:m=" + std::to_string(m)};
    br.certified_lower = lo.certified;
    br.upper = {parked_schedule_ect<Rational>(g, upper_strategy.schedule(), s),
                upper_strategy.name()};
    if (br.lower.value > br.upper.value)
        throw std::logic_error("drunk bracket inverted: lower exceeds upper");
    return br;
}

}  // namespace cir
