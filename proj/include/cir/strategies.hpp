#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cir/belief.hpp"
#include "cir/graph.hpp"
#include "cir/policy.hpp"
#include "cir/rng.hpp"
#include "cir/visible.hpp"

namespace cir {

namespace detail {
inline bool contains(const std::vector<int>& t, int v) {
    return std::find(t.begin(), t.end(), v) != t.end();
}

template <class T>
std::vector<std::pair<T, Rational>> uniform_over(const std::vector<T>& cand) {
    std::vector<std::pair<T, Rational>> out;
    Rational w = rat(1, cand.size());
    for (const T& c : cand) out.emplace_back(c, w);
    return out;
}
}  // namespace detail

// --- deterministic schedules --------------------------------------------------

class ScheduleRun final : public CopRun {
  public:
    explicit ScheduleRun(const std::vector<std::vector<int>>* sched) : sched_(sched) {}
    std::vector<int> next(Rng&) override {
        const auto& t = (*sched_)[cur()];
        ++idx_;
        return t;
    }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<std::vector<int>, Rational>> branches() const override {
        return {{(*sched_)[cur()], Rational(1)}};
    }
    void apply(const std::vector<int>&) override { ++idx_; }
    std::string key() const override { return "t" + std::to_string(cur()); }
    std::unique_ptr<CopRun> clone() const override { return std::make_unique<ScheduleRun>(*this); }

  private:
    size_t cur() const { return std::min(idx_, sched_->size() - 1); }
    const std::vector<std::vector<int>>* sched_;
    size_t idx_ = 0;
};

// Plays a fixed trajectory, then parks on its last tuple forever.
class ScheduleCopStrategy final : public CopStrategy {
  public:
    ScheduleCopStrategy(const Graph& g, std::vector<std::vector<int>> sched,
                        std::string name = "schedule", bool forced_move = false)
        : sched_(std::move(sched)), name_(std::move(name)) {
        validate_schedule(g, sched_, forced_move);
    }
    std::string name() const override { return name_; }
    int cops() const override { return static_cast<int>(sched_[0].size()); }
    std::unique_ptr<CopRun> start() const override {
        return std::make_unique<ScheduleRun>(&sched_);
    }
    const std::vector<std::vector<int>>& schedule() const { return sched_; }

  private:
    std::vector<std::vector<int>> sched_;
    std::string name_;
};

inline std::unique_ptr<CopStrategy> make_stationary_cop(const Graph& g, std::vector<int> set) {
    return std::make_unique<ScheduleCopStrategy>(g, std::vector<std::vector<int>>{std::move(set)},
                                                 "stationary");
}

// One cop walking 0, 1, ..., n-1 along a path, then parking at the far end.
inline std::unique_ptr<CopStrategy> make_path_sweep_cop(const Graph& g) {
    if (g.family != Family::path) throw std::invalid_argument("path-sweep needs a path graph");
    std::vector<std::vector<int>> sched;
    for (int v = 0; v < g.n; ++v) sched.push_back({v});
    return std::make_unique<ScheduleCopStrategy>(g, std::move(sched), "path-sweep");
}

// Two cops starting together at vertex 0 and sweeping a cycle in opposite
// directions until adjacent or merged. Reconstructed pincer; the catalog's
// cycle values are checked against the solver, not against this strategy.
inline std::unique_ptr<CopStrategy> make_cycle_double_sweep_cop(const Graph& g) {
    if (g.family != Family::cycle) throw std::invalid_argument("cycle sweep needs a cycle graph");
    std::vector<std::vector<int>> sched{{0, 0}};
    for (int t = 1; t <= g.n - t; ++t) sched.push_back({t, g.n - t});
    return std::make_unique<ScheduleCopStrategy>(g, std::move(sched), "cycle-double-sweep");
}

// Two cops parked on antipodal corners of an N x N grid.
inline std::unique_ptr<CopStrategy> make_grid_stationary_cops(const Graph& g) {
    if (g.family != Family::grid || g.fam_N < 2)
        throw std::invalid_argument("grid-stationary needs a grid with N >= 2");
    int N = g.fam_N;
    std::vector<std::vector<int>> sched{{N - 1, N * (N - 1)}};
    return std::make_unique<ScheduleCopStrategy>(g, std::move(sched), "grid-stationary");
}

// Broom cop versus the drunk robber: hold the center for one extra turn (the
// leaf mass walks into it), then sweep the path down to the end.
inline std::unique_ptr<CopStrategy> make_broom_drunk_cop(const Graph& g) {
    if (g.family != Family::broom) throw std::invalid_argument("broom-drunk needs a broom graph");
    int center = g.broom_path - 1;
    std::vector<std::vector<int>> sched{{center}, {center}};
    for (int v = center - 1; v >= 0; --v) sched.push_back({v});
    return std::make_unique<ScheduleCopStrategy>(g, std::move(sched), "broom-drunk");
}

// --- star sweep ----------------------------------------------------------------

// Start at a random leaf, then alternate center / next unvisited leaf in a
// random order. After all leaves are visited, keeps bouncing center/random
// leaf (the tail never matters against the strategies it is paired with).
class StarSweepRun final : public CopRun {
  public:
    explicit StarSweepRun(int N) : N_(N), visited_(N + 1, 0) {}
    std::vector<int> next(Rng& rng) override {
        auto br = branches();  // all branches equiprobable by construction
        const auto& pick = br.size() == 1 ? br[0].first : br[uniform_index(rng, br.size())].first;
        apply(pick);
        return pick;
    }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<std::vector<int>, Rational>> branches() const override {
        std::vector<std::vector<int>> cand;
        if (placed_ && pos_ != 0) {
            cand.push_back({0});
        } else {
            // placement, or at the center: next unvisited leaf (all, once done)
            for (int u = 1; u <= N_; ++u)
                if (!visited_[u]) cand.push_back({u});
            if (cand.empty())
                for (int u = 1; u <= N_; ++u) cand.push_back({u});
        }
        return detail::uniform_over(cand);
    }
    void apply(const std::vector<int>& t) override {
        pos_ = t[0];
        placed_ = true;
        if (pos_ != 0) visited_[pos_] = 1;
    }
    std::string key() const override {
        std::string k = placed_ ? std::to_string(pos_) : "-";
        k += ':';
        for (int u = 1; u <= N_; ++u) k += visited_[u] ? '1' : '0';
        return k;
    }
    std::unique_ptr<CopRun> clone() const override { return std::make_unique<StarSweepRun>(*this); }

  private:
    int N_;
    int pos_ = -1;
    bool placed_ = false;
    std::vector<char> visited_;
};

class StarSweepCop final : public CopStrategy {
  public:
    explicit StarSweepCop(const Graph& g) : N_(g.fam_N) {
        if (g.family != Family::star) throw std::invalid_argument("star-sweep needs a star graph");
    }
    std::string name() const override { return "star-sweep"; }
    int cops() const override { return 1; }
    std::unique_ptr<CopRun> start() const override { return std::make_unique<StarSweepRun>(N_); }

  private:
    int N_;
};

// Places uniformly on a leaf the cops do not occupy, then never moves.
class UniformLeafRobberRun final : public RobberRun {
  public:
    explicit UniformLeafRobberRun(const Graph* g) : g_(g) {}
    int place(const std::vector<std::vector<int>>& hist, Rng& rng) override {
        auto br = place_branches(hist.at(0));
        return br[uniform_index(rng, br.size())].first;
    }
    int move(int cur, const std::vector<std::vector<int>>&, Rng&) override { return cur; }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<int, Rational>> place_branches(const std::vector<int>& Z0) const override {
        std::vector<int> cand;
        for (int v = 1; v < g_->n; ++v)
            if (!detail::contains(Z0, v)) cand.push_back(v);
        if (cand.empty())
            for (int v = 0; v < g_->n; ++v)
                if (!detail::contains(Z0, v)) cand.push_back(v);
        if (cand.empty()) cand.push_back(0);  // cops cover everything: collide
        return detail::uniform_over(cand);
    }
    std::vector<std::pair<int, Rational>> move_branches(int cur, const std::vector<int>&) const override {
        return {{cur, Rational(1)}};
    }

  private:
    const Graph* g_;
};

class UniformLeafRobber final : public RobberStrategy {
  public:
    explicit UniformLeafRobber(const Graph& g) : g_(&g) {
        if (g.family != Family::star)
            throw std::invalid_argument("uniform-leaf needs a star graph");
    }
    std::string name() const override { return "uniform-leaf"; }
    std::unique_ptr<RobberRun> start() const override {
        return std::make_unique<UniformLeafRobberRun>(g_);
    }

  private:
    const Graph* g_;
};

// --- star with a fast robber ----------------------------------------------------

// Cop: place at the center, then alternate uniform random leaf / center.
class StarInfspeedRun final : public CopRun {
  public:
    explicit StarInfspeedRun(int N) : N_(N) {}
    std::vector<int> next(Rng& rng) override {
        auto br = branches();
        const auto& pick = br.size() == 1 ? br[0].first : br[uniform_index(rng, br.size())].first;
        apply(pick);
        return pick;
    }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<std::vector<int>, Rational>> branches() const override {
        if (pos_ != 0) return {{{0}, Rational(1)}};
        std::vector<std::vector<int>> cand;
        for (int u = 1; u <= N_; ++u) cand.push_back({u});
        return detail::uniform_over(cand);
    }
    void apply(const std::vector<int>& t) override { pos_ = t[0]; }
    std::string key() const override { return std::to_string(pos_); }
    std::unique_ptr<CopRun> clone() const override {
        return std::make_unique<StarInfspeedRun>(*this);
    }

  private:
    int N_;
    int pos_ = -1;  // -1: not placed; first emission is the center
};

class StarInfspeedCop final : public CopStrategy {
  public:
    explicit StarInfspeedCop(const Graph& g) : N_(g.fam_N) {
        if (g.family != Family::star)
            throw std::invalid_argument("star-infspeed needs a star graph");
    }
    std::string name() const override { return "star-infspeed"; }
    int cops() const override { return 1; }
    std::unique_ptr<CopRun> start() const override {
        return std::make_unique<StarInfspeedRun>(N_);
    }

  private:
    int N_;
};

// Fast robber on a star: relocate to a uniform random leaf whenever the
// center is free (needs speed >= 2); pinned in place while the cop holds
// the center.
class StarRelocatingRobberRun final : public RobberRun {
  public:
    explicit StarRelocatingRobberRun(const Graph* g) : g_(g) {}
    int place(const std::vector<std::vector<int>>& hist, Rng& rng) override {
        auto br = place_branches(hist.at(0));
        return br[uniform_index(rng, br.size())].first;
    }
    int move(int cur, const std::vector<std::vector<int>>& hist, Rng& rng) override {
        auto br = move_branches(cur, hist.back());
        return br.size() == 1 ? br[0].first : br[uniform_index(rng, br.size())].first;
    }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<int, Rational>> place_branches(const std::vector<int>& Z0) const override {
        return UniformLeafRobberRun(g_).place_branches(Z0);
    }
    std::vector<std::pair<int, Rational>> move_branches(int cur, const std::vector<int>& Zt) const override {
        if (detail::contains(Zt, 0)) return {{cur, Rational(1)}};  // center blocked
        std::vector<int> cand;
        for (int v = 1; v < g_->n; ++v)
            if (!detail::contains(Zt, v)) cand.push_back(v);
        if (cand.empty()) return {{cur, Rational(1)}};
        return detail::uniform_over(cand);
    }

  private:
    const Graph* g_;
};

class StarRelocatingRobber final : public RobberStrategy {
  public:
    explicit StarRelocatingRobber(const Graph& g) : g_(&g) {
        if (g.family != Family::star)
            throw std::invalid_argument("relocating leaf robber needs a star graph");
    }
    std::string name() const override { return "relocating-leaf"; }
    int min_speed() const override { return 2; }
    std::unique_ptr<RobberRun> start() const override {
        return std::make_unique<StarRelocatingRobberRun>(g_);
    }

  private:
    const Graph* g_;
};

// --- complete d-ary trees --------------------------------------------------------

namespace detail {
struct TreeShape {
    int d = 0, L = 0;
    std::vector<int> layer;        // per vertex
    std::vector<int> level_start;  // index of first vertex on each level

    explicit TreeShape(const Graph& g) {
        if (g.family != Family::tree) throw std::invalid_argument("need a complete d-ary tree");
        d = g.fam_d;
        L = g.fam_L;
        level_start.resize(L + 2);
        long long s = 0, sz = 1;
        for (int j = 0; j <= L + 1; ++j) {
            level_start[j] = static_cast<int>(s);
            s += sz;
            sz *= d;
        }
        layer.resize(g.n);
        for (int j = 0; j <= L; ++j)
            for (int v = level_start[j]; v < level_start[j + 1] && v < g.n; ++v) layer[v] = j;
    }
    int parent(int v) const { return (v - 1) / d; }
    int child(int v, int k) const { return v * d + 1 + k; }
};
}  // namespace detail

// Rounds from the root: walk down to a uniformly chosen preleaf, visit its d
// leaves in random order (returning to the preleaf between visits), walk back
// up. Capture probability per round against any robber is 1/d^(L-1).
class TreeRoundRun final : public CopRun {
  public:
    TreeRoundRun(const Graph* g, detail::TreeShape shape) : g_(g), sh_(std::move(shape)) {}

    std::vector<int> next(Rng& rng) override {
        if (!placed_) {
            placed_ = true;
            begin_round();
            return {pos_};
        }
        switch (phase_) {
            case Phase::descend: {
                pos_ = sh_.child(pos_, uniform_index(rng, sh_.d));
                if (sh_.layer[pos_] == sh_.L - 1) enter_leaves();
                return {pos_};
            }
            case Phase::leaves: {
                if (pos_ != preleaf_) {
                    pos_ = preleaf_;  // climb back from the leaf just checked
                    if (visited_cnt_ == sh_.d) {
                        phase_ = Phase::ascend;
                        if (pos_ == 0) begin_round();  // L == 1: preleaf is the root
                    }
                    return {pos_};
                }
                int pick = uniform_index(rng, sh_.d - visited_cnt_);
                for (int k = 0; k < sh_.d; ++k) {
                    if (visited_[k]) continue;
                    if (pick-- == 0) {
                        visited_[k] = 1;
                        ++visited_cnt_;
                        pos_ = sh_.child(preleaf_, k);
                        return {pos_};
                    }
                }
                throw std::logic_error("leaf pick out of range");
            }
            case Phase::ascend: {
                pos_ = sh_.parent(pos_);
                if (pos_ == 0) begin_round();
                return {pos_};
            }
        }
        throw std::logic_error("unreachable");
    }

    long long rounds_started() const { return rounds_; }

    std::unique_ptr<CopRun> clone() const override { return std::make_unique<TreeRoundRun>(*this); }

  private:
    enum class Phase { descend, leaves, ascend };
    void begin_round() {
        ++rounds_;
        pos_ = 0;
        if (sh_.L == 1) {
            preleaf_ = 0;
            enter_leaves();
        } else {
            phase_ = Phase::descend;
        }
    }
    void enter_leaves() {
        phase_ = Phase::leaves;
        preleaf_ = pos_;
        visited_.assign(sh_.d, 0);
        visited_cnt_ = 0;
    }

    const Graph* g_;
    detail::TreeShape sh_;
    bool placed_ = false;
    Phase phase_ = Phase::descend;
    int pos_ = 0;
    int preleaf_ = 0;
    std::vector<char> visited_;
    int visited_cnt_ = 0;
    long long rounds_ = 0;
};

class TreeRoundCop final : public CopStrategy {
  public:
    explicit TreeRoundCop(const Graph& g) : g_(&g), sh_(g) {}
    std::string name() const override { return "tree-round"; }
    int cops() const override { return 1; }
    std::unique_ptr<CopRun> start() const override {
        return std::make_unique<TreeRoundRun>(g_, sh_);
    }

  private:
    const Graph* g_;
    detail::TreeShape sh_;
};

// Evasion on a complete d-ary tree against one cop: hold distance 2,
// preferring the shallower side. The placement and move rules are a closed
// case analysis; a state outside it is an implementation bug, not an input
// error.
class TreeDistance2RobberRun final : public RobberRun {
  public:
    TreeDistance2RobberRun(const Graph* g, const detail::TreeShape* sh,
                           const std::vector<std::vector<int>>* dist)
        : g_(g), sh_(sh), dist_(dist) {}

    int place(const std::vector<std::vector<int>>& hist, Rng& rng) override {
        int x0 = single_cop(hist.at(0));
        int layer = sh_->layer[x0];
        if (layer >= 2) return sh_->parent(sh_->parent(x0));
        std::vector<int> cand;
        if (layer == 1) {
            for (int v = sh_->level_start[1]; v < sh_->level_start[2]; ++v)
                if (v != x0) cand.push_back(v);
        } else {
            for (int v = sh_->level_start[2]; v < sh_->level_start[3]; ++v) cand.push_back(v);
        }
        return cand[uniform_index(rng, cand.size())];
    }

    int move(int cur, const std::vector<std::vector<int>>& hist, Rng& rng) override {
        int x = single_cop(hist.back());
        int dd = (*dist_)[x][cur];
        switch (dd) {
            case 0:
                throw std::logic_error("evasion queried from a capture state");
            case 1: {
                auto cand = neighbors_at_two(cur, x);
                if (cand.empty()) return cur;  // cornered at a leaf
                int best = sh_->layer[cand[0]];
                for (int v : cand) best = std::min(best, sh_->layer[v]);
                std::vector<int> top;
                for (int v : cand)
                    if (sh_->layer[v] == best) top.push_back(v);
                return top[uniform_index(rng, top.size())];
            }
            case 2:
                return cur;
            case 3: {
                auto cand = neighbors_at_two(cur, x);
                if (cand.size() != 1)
                    throw std::logic_error("distance-3 state lost its unique recovery move");
                return cand[0];
            }
            default:
                throw std::logic_error("evasion drifted beyond distance 3");
        }
    }

  private:
    static int single_cop(const std::vector<int>& Z) {
        if (Z.size() != 1) throw std::invalid_argument("tree evasion is defined for one cop");
        return Z[0];
    }
    std::vector<int> neighbors_at_two(int cur, int x) const {
        std::vector<int> cand;
        for (int w : g_->adj[cur])
            if ((*dist_)[x][w] == 2) cand.push_back(w);
        return cand;
    }

    const Graph* g_;
    const detail::TreeShape* sh_;
    const std::vector<std::vector<int>>* dist_;
};

class TreeDistance2Robber final : public RobberStrategy {
  public:
    explicit TreeDistance2Robber(const Graph& g) : g_(&g), sh_(g), dist_(all_pairs_dist(g)) {
        if (sh_.L < 2)
            throw std::invalid_argument("tree evasion needs depth >= 2");
    }
    std::string name() const override { return "tree-distance2"; }
    std::unique_ptr<RobberRun> start() const override {
        return std::make_unique<TreeDistance2RobberRun>(g_, &sh_, &dist_);
    }

  private:
    const Graph* g_;
    detail::TreeShape sh_;
    std::vector<std::vector<int>> dist_;
};

// --- brooms -----------------------------------------------------------------------

// Parametrized cop family on a broom: start at path coordinate b*n; with
// probability p sweep to the end first, then return to the center and check
// every leaf; otherwise go to the center, check an x-fraction of the leaves,
// sweep to the end, and come back to check all leaves. The materialized walk
// then loops full leaf sweeps forever as a safety tail.
class BroomCopRun final : public CopRun {
  public:
    BroomCopRun(const Graph* g, double b, double p, double x) : g_(g), b_(b), p_(p), x_(x) {}

    std::vector<int> next(Rng& rng) override {
        if (!built_) build(rng);
        if (idx_ >= plan_.size()) extend_sweep(rng);
        return {plan_[idx_++]};
    }
    std::unique_ptr<CopRun> clone() const override { return std::make_unique<BroomCopRun>(*this); }

  private:
    void walk_path(int from, int to) {  // exclusive of `from`
        int step = to > from ? 1 : -1;
        for (int v = from + step; step > 0 ? v <= to : v >= to; v += step) plan_.push_back(v);
    }
    std::vector<int> shuffled_leaves(Rng& rng) const {
        std::vector<int> ls;
        for (int v = g_->broom_path; v < g_->n; ++v) ls.push_back(v);
        for (size_t i = ls.size(); i > 1; --i)
            std::swap(ls[i - 1], ls[uniform_index(rng, i)]);
        return ls;
    }
    void sweep(const std::vector<int>& leaves, size_t count) {
        int center = g_->broom_path - 1;
        for (size_t i = 0; i < count && i < leaves.size(); ++i) {
            plan_.push_back(leaves[i]);
            plan_.push_back(center);
        }
    }
    void extend_sweep(Rng& rng) { sweep(shuffled_leaves(rng), g_->n - g_->broom_path); }
    void build(Rng& rng) {
        built_ = true;
        int center = g_->broom_path - 1;
        int s0 = std::clamp(static_cast<int>(std::llround(b_ * g_->n)), 0, center);
        plan_.push_back(s0);
        size_t leaves = static_cast<size_t>(g_->n - g_->broom_path);
        if (uniform_unit(rng) < p_) {
            walk_path(s0, 0);
            walk_path(0, center);
            sweep(shuffled_leaves(rng), leaves);
        } else {
            walk_path(s0, center);
            sweep(shuffled_leaves(rng), static_cast<size_t>(std::floor(x_ * leaves + 1e-9)));
            walk_path(center, 0);
            walk_path(0, center);
            sweep(shuffled_leaves(rng), leaves);
        }
    }

    const Graph* g_;
    double b_, p_, x_;
    bool built_ = false;
    std::vector<int> plan_;
    size_t idx_ = 0;
};

class BroomCop final : public CopStrategy {
  public:
    BroomCop(const Graph& g, double b, double p, double x) : g_(&g), b_(b), p_(p), x_(x) {
        if (g.family != Family::broom) throw std::invalid_argument("broom-cop needs a broom graph");
        for (double v : {b, p, x})
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("broom-cop parameters must lie in [0,1]");
        if (b > g.fam_c + 1e-12)
            throw std::invalid_argument("broom-cop start coordinate b must not exceed c");
    }
    std::string name() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "broom-cop:b=%g,p=%g,x=%g", b_, p_, x_);
        return buf;
    }
    int cops() const override { return 1; }
    std::unique_ptr<CopRun> start() const override {
        return std::make_unique<BroomCopRun>(g_, b_, p_, x_);
    }

  private:
    const Graph* g_;
    double b_, p_, x_;
};

// Broom robber: hide at the end of the broom with probability q, otherwise at
// a uniform random leaf; never move.
class BroomRobberRun final : public RobberRun {
  public:
    BroomRobberRun(const Graph* g, double q) : g_(g), q_(q) {}
    int place(const std::vector<std::vector<int>>& hist, Rng& rng) override {
        const auto& Z0 = hist.at(0);
        if (uniform_unit(rng) < q_ && !detail::contains(Z0, 0)) return 0;
        std::vector<int> cand;
        for (int v = g_->broom_path; v < g_->n; ++v)
            if (!detail::contains(Z0, v)) cand.push_back(v);
        if (cand.empty())
            for (int v = 0; v < g_->n; ++v)
                if (!detail::contains(Z0, v)) cand.push_back(v);
        if (cand.empty()) return 0;
        return cand[uniform_index(rng, cand.size())];
    }
    int move(int cur, const std::vector<std::vector<int>>&, Rng&) override { return cur; }

  private:
    const Graph* g_;
    double q_;
};

class BroomRobber final : public RobberStrategy {
  public:
    BroomRobber(const Graph& g, double q) : g_(&g), q_(q) {
        if (g.family != Family::broom)
            throw std::invalid_argument("broom-robber needs a broom graph");
        if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0,1]");
    }
    std::string name() const override {
        char buf[48];
        std::snprintf(buf, sizeof buf, "broom-robber:q=%g", q_);
        return buf;
    }
    std::unique_ptr<RobberRun> start() const override {
        return std::make_unique<BroomRobberRun>(g_, q_);
    }

  private:
    const Graph* g_;
    double q_;
};

// --- generic strategies -------------------------------------------------------------

// K independent uniform random walkers, placed uniformly at random.
class RandomWalkRun final : public CopRun {
  public:
    RandomWalkRun(const Graph* g, int K) : g_(g), K_(K) {}
    std::vector<int> next(Rng& rng) override {
        if (pos_.empty()) {
            for (int k = 0; k < K_; ++k) pos_.push_back(uniform_index(rng, g_->n));
        } else {
            for (int& p : pos_) p = g_->adj[p][uniform_index(rng, g_->deg(p))];
        }
        return pos_;
    }
    std::unique_ptr<CopRun> clone() const override { return std::make_unique<RandomWalkRun>(*this); }

  private:
    const Graph* g_;
    int K_;
    std::vector<int> pos_;
};

class RandomWalkCop final : public CopStrategy {
  public:
    RandomWalkCop(const Graph& g, int K = 1) : g_(&g), K_(K) {
        if (K < 1) throw std::invalid_argument("need at least one cop");
    }
    std::string name() const override { return "randomwalk"; }
    int cops() const override { return K_; }
    std::unique_ptr<CopRun> start() const override {
        return std::make_unique<RandomWalkRun>(g_, K_);
    }

  private:
    const Graph* g_;
    int K_;
};

// Deterministic fleeing robber: maximize the distance to the nearest cop,
// lowest vertex id on ties. Memoryless, so it supports exact enumeration.
class GreedyEvaderRun final : public RobberRun {
  public:
    GreedyEvaderRun(const Graph* g, const std::vector<std::vector<int>>* dist)
        : g_(g), dist_(dist) {}
    int place(const std::vector<std::vector<int>>& hist, Rng&) override {
        return place_branches(hist.at(0))[0].first;
    }
    int move(int cur, const std::vector<std::vector<int>>& hist, Rng&) override {
        return move_branches(cur, hist.back())[0].first;
    }
    bool exact_capable() const override { return true; }
    std::vector<std::pair<int, Rational>> place_branches(const std::vector<int>& Z0) const override {
        int best = -1, bd = -1;
        for (int v = 0; v < g_->n; ++v) {
            if (detail::contains(Z0, v)) continue;
            int d = near_dist(v, Z0);
            if (d > bd) { bd = d; best = v; }
        }
        if (best < 0) best = 0;  // cops everywhere: forced collision
        return {{best, Rational(1)}};
    }
    std::vector<std::pair<int, Rational>> move_branches(int cur, const std::vector<int>& Zt) const override {
        int best = cur, bd = near_dist(cur, Zt);
        for (int w : g_->adj[cur]) {
            if (detail::contains(Zt, w)) continue;
            int d = near_dist(w, Zt);
            if (d > bd || (d == bd && w < best)) { bd = d; best = w; }
        }
        return {{best, Rational(1)}};
    }

  private:
    int near_dist(int v, const std::vector<int>& Z) const {
        int d = g_->n + 1;
        for (int z : Z) d = std::min(d, (*dist_)[z][v]);
        return d;
    }
    const Graph* g_;
    const std::vector<std::vector<int>>* dist_;
};

class GreedyEvader final : public RobberStrategy {
  public:
    explicit GreedyEvader(const Graph& g) : g_(&g), dist_(all_pairs_dist(g)) {}
    std::string name() const override { return "greedy-evader"; }
    std::unique_ptr<RobberRun> start() const override {
        return std::make_unique<GreedyEvaderRun>(g_, &dist_);
    }

  private:
    const Graph* g_;
    std::vector<std::vector<int>> dist_;
};

// --- guessing rounds (universal upper bound) ------------------------------------------

// Cops return to the optimal visible-game start, guess the robber's vertex
// uniformly, then for T_hat steps guess each robber move uniformly among his
// closed neighborhood and play the visible-game reply to the guess. Capture
// is certain with per-round probability at least 1/(n*(max_deg+1)^T_hat).
class GuessRoundRun final : public CopRun {
  public:
    GuessRoundRun(const Graph* g, const VisibleSolution* sol,
                  const std::vector<std::vector<int>>* dist)
        : g_(g), sol_(sol), dist_(dist), home_id_(sol->space.id_of(sol->best_start)) {}

    std::vector<int> next(Rng& rng) override {
        const auto& tuples = sol_->space.tuples;
        if (!placed_) {
            placed_ = true;
            cur_id_ = home_id_;
            begin_round(rng);
            return tuples[cur_id_];
        }
        if (sol_->t_hat == 0) return tuples[cur_id_];  // already covering: park
        for (;;) {
            if (chase_left_ > 0) {
                if (!fresh_guess_) {
                    guess_ = walk_guess(rng);
                    if (on_tuple(cur_id_, guess_)) {  // guessed robber ran into us
                        chase_left_ = 0;
                        continue;
                    }
                }
                fresh_guess_ = false;
                cur_id_ = sol_->best_move(cur_id_, guess_);
                --chase_left_;
                if (on_tuple(cur_id_, guess_)) chase_left_ = 0;  // guessed capture
                return tuples[cur_id_];
            }
            if (cur_id_ == home_id_) {
                begin_round(rng);
                continue;
            }
            cur_id_ = homing_step();
            return tuples[cur_id_];
        }
    }

    long long rounds_started() const { return rounds_; }

    std::unique_ptr<CopRun> clone() const override { return std::make_unique<GuessRoundRun>(*this); }

  private:
    bool on_tuple(int id, int v) const {
        const auto& t = sol_->space.tuples[id];
        return std::binary_search(t.begin(), t.end(), v);
    }
    void begin_round(Rng& rng) {
        ++rounds_;
        guess_ = uniform_index(rng, g_->n);
        fresh_guess_ = true;
        chase_left_ = sol_->t_hat;
    }
    int walk_guess(Rng& rng) const {
        size_t k = uniform_index(rng, g_->deg(guess_) + 1);
        return k == static_cast<size_t>(g_->deg(guess_)) ? guess_ : g_->adj[guess_][k];
    }
    // Minimum matching cost from tuple `id` to the home tuple (K is tiny, so
    // brute-force over pairings).
    long long match_cost(int id) const {
        const auto& cur = sol_->space.tuples[id];
        std::vector<int> home = sol_->best_start;
        std::sort(home.begin(), home.end());
        long long best = -1;
        do {
            long long c = 0;
            for (size_t k = 0; k < cur.size(); ++k) c += (*dist_)[cur[k]][home[k]];
            if (best < 0 || c < best) best = c;
        } while (std::next_permutation(home.begin(), home.end()));
        return best;
    }
    int homing_step() const {
        long long best = -1;
        int pick = cur_id_;
        for (int nxt : sol_->space.moves[cur_id_]) {
            long long c = match_cost(nxt);
            if (best < 0 || c < best || (c == best && nxt < pick)) { best = c; pick = nxt; }
        }
        return pick;
    }

    const Graph* g_;
    const VisibleSolution* sol_;
    const std::vector<std::vector<int>>* dist_;
    int home_id_;
    bool placed_ = false;
    int cur_id_ = 0;
    int guess_ = 0;
    bool fresh_guess_ = true;
    long long chase_left_ = 0;
    long long rounds_ = 0;
};

class GuessRoundCop final : public CopStrategy {
  public:
    GuessRoundCop(const Graph& g, int K) : g_(&g), dist_(all_pairs_dist(g)) {
        sol_ = std::make_shared<VisibleSolution>(visible_solve(g, K));
        if (!sol_->guaranteed)
            throw std::invalid_argument("guess-round needs a visible-game win for K cops");
        K_ = K;
    }
    std::string name() const override { return "guess-round"; }
    int cops() const override { return K_; }
    std::unique_ptr<CopRun> start() const override {
        return std::make_unique<GuessRoundRun>(g_, sol_.get(), &dist_);
    }
    const VisibleSolution& solution() const { return *sol_; }

  private:
    const Graph* g_;
    int K_ = 1;
    std::shared_ptr<const VisibleSolution> sol_;
    std::vector<std::vector<int>> dist_;
};

// --- spec-string factories -------------------------------------------------------------

namespace detail {
inline double kv_num(const std::vector<std::pair<std::string, std::string>>& kv,
                     const std::string& key, double dflt) {
    for (const auto& [k, v] : kv)
        if (k == key) return std::stod(v);
    return dflt;
}
}  // namespace detail

// Accepts: stationary:v1;v2 | path-sweep | cycle-double-sweep | star-sweep |
// star-infspeed | tree-round | grid-stationary | broom-cop:b=..,p=..,x=.. |
// broom-drunk | randomwalk[:K] | guess-round[:K]
inline std::unique_ptr<CopStrategy> cop_strategy_from_spec(const Graph& g,
                                                           const std::string& spec) {
    std::string head = spec, body;
    if (auto c = spec.find(':'); c != std::string::npos) {
        head = spec.substr(0, c);
        body = spec.substr(c + 1);
    }
    if (head == "stationary") {
        std::vector<int> set;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ';')) set.push_back(std::stoi(tok));
        if (set.empty()) throw std::invalid_argument("stationary needs vertices, e.g. stationary:0;3");
        return make_stationary_cop(g, set);
    }
    if (head == "path-sweep") return make_path_sweep_cop(g);
    if (head == "cycle-double-sweep") return make_cycle_double_sweep_cop(g);
    if (head == "star-sweep") return std::make_unique<StarSweepCop>(g);
    if (head == "star-infspeed") return std::make_unique<StarInfspeedCop>(g);
    if (head == "tree-round") return std::make_unique<TreeRoundCop>(g);
    if (head == "grid-stationary") return make_grid_stationary_cops(g);
    if (head == "broom-drunk") return make_broom_drunk_cop(g);
    if (head == "broom-cop") {
        auto kv = detail::parse_kv(body);
        return std::make_unique<BroomCop>(g, detail::kv_num(kv, "b", 0.0),
                                          detail::kv_num(kv, "p", 0.0),
                                          detail::kv_num(kv, "x", 1.0));
    }
    if (head == "randomwalk") return std::make_unique<RandomWalkCop>(g, body.empty() ? 1 : std::stoi(body));
    if (head == "guess-round") return std::make_unique<GuessRoundCop>(g, body.empty() ? 1 : std::stoi(body));
    throw std::invalid_argument("unknown cop strategy: " + spec);
}

// Accepts: uniform-leaf | relocating-leaf | tree-distance2 | greedy-evader |
// broom-robber:q=..
inline std::unique_ptr<RobberStrategy> robber_strategy_from_spec(const Graph& g,
                                                                 const std::string& spec) {
    std::string head = spec, body;
    if (auto c = spec.find(':'); c != std::string::npos) {
        head = spec.substr(0, c);
        body = spec.substr(c + 1);
    }
    if (head == "uniform-leaf") return std::make_unique<UniformLeafRobber>(g);
    if (head == "relocating-leaf") return std::make_unique<StarRelocatingRobber>(g);
    if (head == "tree-distance2") return std::make_unique<TreeDistance2Robber>(g);
    if (head == "greedy-evader") return std::make_unique<GreedyEvader>(g);
    if (head == "broom-robber") {
        auto kv = detail::parse_kv(body);
        return std::make_unique<BroomRobber>(g, detail::kv_num(kv, "q", 0.0));
    }
    throw std::invalid_argument("unknown robber strategy: " + spec);
}

}  // namespace cir
