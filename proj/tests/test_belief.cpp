#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cir/belief.hpp"
#include "cir/closed_forms.hpp"
#include "cir/strategies.hpp"

using namespace cir;
using R = Rational;

TEST_CASE("initial beliefs are uniform off the cop set", "[belief]") {
    Graph g = make_path(3);
    InitBeliefs<R> b = init_beliefs<R>(g, {1});
    REQUIRE(b.capture_prob == rat(1, 3));
    for (int v = 0; v < 3; ++v) {
        REQUIRE(b.pbar[v] == rat(0, 1));
        REQUIRE(b.phat[v] == rat(1, 3));
    }
    REQUIRE(b.p[0] == rat(1, 2));
    REQUIRE(b.p[1] == rat(0, 1));
    REQUIRE(b.p[2] == rat(1, 2));

    // Stacked cops count once.
    InitBeliefs<R> b2 = init_beliefs<R>(g, {1, 1});
    REQUIRE(b2.capture_prob == rat(1, 3));

    REQUIRE_THROWS_AS(init_beliefs<R>(g, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(init_beliefs<R>(g, {3}), std::invalid_argument);
}

TEST_CASE("one full turn of the belief recursion", "[belief]") {
    Graph g = make_path(3);
    InitBeliefs<R> b = init_beliefs<R>(g, {0});
    REQUIRE(b.p[1] == rat(1, 2));
    REQUIRE(b.p[2] == rat(1, 2));

    CopStep<R> cs = step_cop<R>(g, b.p, {1});
    REQUIRE(cs.capture_prob == rat(1, 2));
    REQUIRE(cs.pbar[2] == rat(1, 1));

    RobberStep<R> rs = step_robber<R>(g, cs.pbar, {1});
    REQUIRE(rs.capture_prob == rat(1, 1));  // the robber walks into the cop
    for (int v = 0; v < 3; ++v) REQUIRE(rs.p[v] == rat(0, 1));
}

TEST_CASE("walk image splits mass by degree", "[belief]") {
    Graph g = make_star(3);
    std::vector<R> at_center(4, rat(0, 1));
    at_center[0] = rat(1, 1);
    std::vector<R> img = walk_image(g, at_center);
    REQUIRE(img[0] == rat(0, 1));
    for (int v = 1; v <= 3; ++v) REQUIRE(img[v] == rat(1, 3));

    std::vector<R> at_leaf(4, rat(0, 1));
    at_leaf[2] = rat(1, 1);
    img = walk_image(g, at_leaf);
    REQUIRE(img[0] == rat(1, 1));
}

TEST_CASE("fast robber absorbs inside the turn", "[belief]") {
    Graph g = make_path(3);
    std::vector<R> pbar(3, rat(0, 1));
    pbar[2] = rat(1, 1);
    // Two substeps: 2 -> 1 hits the cop on the first substep.
    RobberStep<R> rs = step_robber<R>(g, pbar, {1}, 2);
    REQUIRE(rs.capture_prob == rat(1, 1));

    // On a 5-path with the cop far away the two substeps just spread mass.
    Graph p5 = make_path(5);
    std::vector<R> mid(5, rat(0, 1));
    mid[2] = rat(1, 1);
    RobberStep<R> rs2 = step_robber<R>(p5, mid, {0}, 2);
    REQUIRE(rs2.capture_prob == rat(1, 4));            // 2 -> 1 -> 0
    // Conditioned on survival: (1/2) / (3/4) and (1/4) / (3/4).
    REQUIRE(rs2.p[2] == rat(2, 3));
    REQUIRE(rs2.p[4] == rat(1, 3));

    REQUIRE_THROWS_AS(step_robber<R>(g, pbar, {1}, 0), std::invalid_argument);
}

TEST_CASE("sweep of the 3-path captures the drunk by turn one", "[belief][schedule]") {
    Graph g = make_path(3);
    CaptureDistribution<R> d = schedule_ect<R>(g, {{0}, {1}, {2}});
    REQUIRE(d.mass.size() == 3);
    REQUIRE(d.mass[0] == rat(1, 3));
    REQUIRE(d.mass[1] == rat(2, 3));
    REQUIRE(d.mass[2] == rat(0, 1));
    REQUIRE(d.residual == rat(0, 1));
    REQUIRE(d.exact);
    REQUIRE(d.expected == rat(2, 3));
}

TEST_CASE("sweep of the 4-path has mean nine-eighths", "[belief][schedule]") {
    Graph g = make_path(4);
    CaptureDistribution<R> d = schedule_ect<R>(g, {{0}, {1}, {2}, {3}});
    REQUIRE(d.mass[0] == rat(1, 4));
    REQUIRE(d.mass[1] == rat(3, 8));
    REQUIRE(d.mass[2] == rat(3, 8));
    REQUIRE(d.mass[3] == rat(0, 1));
    REQUIRE(d.exact);
    REQUIRE(d.expected == rat(9, 8));

    CaptureDistribution<double> dd = schedule_ect<double>(g, {{0}, {1}, {2}, {3}});
    for (size_t t = 0; t < d.mass.size(); ++t)
        REQUIRE(dd.mass[t] == Catch::Approx(to_double(d.mass[t])).margin(1e-12));
    REQUIRE(dd.expected == Catch::Approx(9.0 / 8.0).margin(1e-12));
}

TEST_CASE("truncated schedules certify a lower bound", "[belief][schedule]") {
    Graph g = make_path(4);
    CaptureDistribution<R> d = schedule_ect<R>(g, {{0}, {1}});
    REQUIRE(d.mass[0] == rat(1, 4));
    REQUIRE(d.mass[1] == rat(3, 8));
    REQUIRE(d.residual == rat(3, 8));
    REQUIRE_FALSE(d.exact);
    // Survivors are booked at the schedule length (2 turns).
    REQUIRE(d.expected == rat(9, 8));
}

TEST_CASE("schedule validation", "[belief][schedule]") {
    Graph g = make_path(3);
    REQUIRE_NOTHROW(validate_schedule(g, {{0}, {0}, {1}}));
    REQUIRE_THROWS_AS(validate_schedule(g, {{0}, {0}}, true), std::invalid_argument);
    REQUIRE_NOTHROW(validate_schedule(g, {{0}, {1}}, true));
    REQUIRE_THROWS_AS(validate_schedule(g, {{0}, {2}}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate_schedule(g, {{0}, {0, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate_schedule(g, {}), std::invalid_argument);
}

namespace {
std::vector<std::vector<int>> random_schedule(const Graph& g, Rng& rng, int K, int len) {
    std::vector<int> cur(K);
    for (int k = 0; k < K; ++k) cur[k] = uniform_index(rng, g.n);
    std::vector<std::vector<int>> Z{cur};
    for (int t = 1; t < len; ++t) {
        for (int k = 0; k < K; ++k) {
            int v = cur[k];
            int pick = uniform_index(rng, g.deg(v) + 1);
            if (pick < g.deg(v)) cur[k] = g.adj[v][pick];
        }
        Z.push_back(cur);
    }
    return Z;
}
}  // namespace

TEST_CASE("random schedules conserve probability mass", "[belief][schedule][prop]") {
    std::vector<Graph> gs;
    gs.push_back(make_path(5));
    gs.push_back(make_cycle(6));
    gs.push_back(make_star(3));
    gs.push_back(make_tree(2, 2));
    Rng rng = substream(7, 0);
    for (const Graph& g : gs) {
        for (int rep = 0; rep < 25; ++rep) {
            int K = 1 + uniform_index(rng, 2);
            int s = 1 + uniform_index(rng, 2);
            int len = 1 + uniform_index(rng, 6);
            auto Z = random_schedule(g, rng, K, len);
            INFO(g.spec() << " K=" << K << " s=" << s << " len=" << len);
            CaptureDistribution<R> d = schedule_ect<R>(g, Z, s);
            R total = d.residual;
            for (const R& m : d.mass) total += m;
            REQUIRE(total == rat(1, 1));
            REQUIRE(d.mass.size() == Z.size());

            CaptureDistribution<double> dd = schedule_ect<double>(g, Z, s);
            for (size_t t = 0; t < d.mass.size(); ++t)
                REQUIRE(dd.mass[t] == Catch::Approx(to_double(d.mass[t])).margin(1e-12));
            REQUIRE(dd.expected == Catch::Approx(to_double(d.expected)).margin(1e-12));
        }
    }
}

TEST_CASE("stationary cop at a tree root: exact hitting times", "[belief][stationary]") {
    Graph g = make_tree(2, 2);
    StationaryEct<R> st = stationary_ect<R>(g, {0});
    REQUIRE(st.h[0] == rat(0, 1));
    REQUIRE(st.h[1] == rat(5, 1));
    REQUIRE(st.h[2] == rat(5, 1));
    for (int leaf = 3; leaf < 7; ++leaf) REQUIRE(st.h[leaf] == rat(6, 1));
    REQUIRE(st.mean_uniform == rat(34, 7));

    // Same numbers from the per-level recursion.
    std::vector<R> e = tree_root_ect_levels(2, 2);
    REQUIRE(e.size() == 2);
    REQUIRE(e[0] == st.h[1]);
    REQUIRE(e[1] == st.h[3]);
}

TEST_CASE("stationary solve requires an absorbing set", "[belief][stationary]") {
    Graph g = make_path(3);
    REQUIRE_THROWS(stationary_ect<R>(g, {}));
}

TEST_CASE("simulation is deterministic in the seed", "[belief][mc]") {
    Graph g = make_tree(2, 2);
    auto cop = make_stationary_cop(g, {0});
    SimResult a = simulate_drunk(g, *cop, 1, 2000, 123);
    SimResult b = simulate_drunk(g, *cop, 1, 2000, 123);
    REQUIRE(a.mean == b.mean);
    REQUIRE(a.hist == b.hist);
    SimResult c = simulate_drunk(g, *cop, 1, 2000, 124);
    REQUIRE(a.mean != c.mean);
}

TEST_CASE("simulation agrees with the stationary solve", "[belief][mc]") {
    Graph g = make_tree(2, 2);
    auto cop = make_stationary_cop(g, {0});
    SimResult r = simulate_drunk(g, *cop, 1, 100000, 42);
    REQUIRE(r.capped == 0);
    double target = 34.0 / 7.0;
    REQUIRE(std::abs(r.mean - target) <= r.half_ci95);

    long long total = 0;
    double sum = 0.0;
    for (auto [t, cnt] : r.hist) {
        total += cnt;
        sum += static_cast<double>(t) * static_cast<double>(cnt);
    }
    REQUIRE(total == r.trials);
    REQUIRE(sum / static_cast<double>(r.trials) == Catch::Approx(r.mean).margin(1e-9));
}

TEST_CASE("simulation agrees with a schedule's distribution", "[belief][mc]") {
    Graph g = make_path(3);
    ScheduleCopStrategy sweep(g, {{0}, {1}, {2}}, "sweep");
    SimResult r = simulate_drunk(g, sweep, 1, 100000, 9);
    REQUIRE(r.max_T <= 1);  // placement or first turn, never later
    REQUIRE(std::abs(r.mean - 2.0 / 3.0) <= r.half_ci95);
}
