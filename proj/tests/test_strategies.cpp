#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "cir/closed_forms.hpp"
#include "cir/evaluate.hpp"
#include "cir/strategies.hpp"

using namespace cir;
using R = Rational;

// One-sided 99% normal quantile, used for statistical guardrails.
static constexpr double Z99 = 2.326;

TEST_CASE("tree hitting times: recursion matches the closed form", "[forms]") {
    for (int d = 2; d <= 4; ++d)
        for (int L = 1; L <= 5; ++L) {
            INFO("d=" << d << " L=" << L);
            std::vector<R> e = tree_root_ect_levels(d, L);
            REQUIRE(e.size() == static_cast<size_t>(L));
            REQUIRE(e.back() == tree_root_ect_deepest(d, L));
            // Deeper starts take longer.
            for (size_t j = 1; j < e.size(); ++j) REQUIRE(e[j] > e[j - 1]);
        }
    REQUIRE(tree_root_ect_levels(2, 2) == std::vector<R>{R(5), R(6)});
    REQUIRE_THROWS_AS(tree_root_ect_levels(1, 3), std::invalid_argument);
}

TEST_CASE("tree pursuit bounds", "[forms]") {
    TreeAdvBounds b23 = tree_adversarial_bounds(2, 3);
    REQUIRE(b23.upper == 28);
    REQUIRE(b23.lower == 9);
    TreeAdvBounds b22 = tree_adversarial_bounds(2, 2);
    REQUIRE(b22.upper == 9);
    REQUIRE(b22.lower == 2);
    for (int d = 2; d <= 4; ++d)
        for (int L = 2; L <= 5; ++L) {
            TreeAdvBounds b = tree_adversarial_bounds(d, L);
            REQUIRE(b.lower <= b.upper);
            REQUIRE(b.lower > 0);
        }
    REQUIRE_THROWS_AS(tree_adversarial_bounds(2, 1), std::invalid_argument);
}

TEST_CASE("broom capture-time polynomial", "[forms]") {
    BroomPoly<double> f = broom_poly<double>(0.5, 0.25, 0.0);
    REQUIRE(f.a2 == Catch::Approx(-0.375));
    REQUIRE(f.a1 == Catch::Approx(-0.125));
    REQUIRE(f.a0 == Catch::Approx(1.5));
    REQUIRE(f.at(1.0) == Catch::Approx(1.0));
    REQUIRE(f.at(0.0) == Catch::Approx(1.5));
}

TEST_CASE("broom polynomial properties hold on random parameters", "[forms][prop]") {
    Rng rng = substream(11, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        // Rational draws keep every check exact.
        R c = rat(1 + uniform_index(rng, 64), 64);
        R b = c * rat(uniform_index(rng, 65), 64);
        R p = rat(uniform_index(rng, 65), 64);
        BroomPoly<R> f = broom_poly<R>(c, b, p);
        INFO("c=" << rat_str(c) << " b=" << rat_str(b) << " p=" << rat_str(p));
        REQUIRE(f.a2 + f.a1 + f.a0 == R(1));  // endpoint sweep always costs n
        REQUIRE(f.a2 <= R(0));                // concave in the leaf fraction
        REQUIRE(f.at(R(0)) >= R(1));
        // Concavity + endpoint values pin the minimum to an endpoint.
        REQUIRE(f.at(rat(1, 2)) >= std::min(f.at(R(0)), f.at(R(1))));
    }
}

TEST_CASE("fast-robber limits on stars and paths", "[forms]") {
    REQUIRE(star_infspeed_ect(3) == R(5));
    REQUIRE(star_infspeed_ect(1) == R(1));
    REQUIRE(star_infspeed_ect_truncated(3, 0) == R(0));
    REQUIRE(star_infspeed_ect_truncated(3, 1) == rat(1, 3) + rat(2, 3));  // 1/3*1 + 2/3*1
    // Truncations increase to the untruncated value.
    R prev(0);
    for (long long H = 1; H <= 200; H += 7) {
        R cur = star_infspeed_ect_truncated(3, H);
        REQUIRE(cur >= prev);
        REQUIRE(cur <= R(5));
        prev = cur;
    }
    REQUIRE(R(5) - star_infspeed_ect_truncated(3, 400) < rat(1, 1000000));

    REQUIRE(infspeed_drunk_limit(4, 1) == rat(3, 4));
    REQUIRE(infspeed_drunk_limit(25, 2) == rat(23, 25));

    Graph s3 = make_star(3);
    auto cod = infspeed_cod_limit(s3, 1);
    REQUIRE(cod.has_value());
    REQUIRE(*cod == rat(20, 3));
    Graph p7 = make_path(7);
    REQUIRE(*infspeed_cod_limit(p7, 1) == R(7));
    REQUIRE_FALSE(infspeed_cod_limit(make_cycle(5), 1).has_value());
}

TEST_CASE("degree-condition lower bound and ceiling trace", "[forms]") {
    DegreeLowerBound p50 = drunk_degree_lower(metrics(make_path(50)), 1);
    REQUIRE(p50.applicable);
    REQUIRE(p50.condition_lhs == rat(2, 49));
    REQUIRE(p50.tau == rat(49, 14));
    REQUIRE(p50.value == Catch::Approx(to_double(rat(49, 14)) / std::exp(1.0)));

    DegreeLowerBound p10 = drunk_degree_lower(metrics(make_path(10)), 1);
    REQUIRE_FALSE(p10.applicable);  // 2/9 > 1/24
    REQUIRE(p10.value == 0.0);

    // 1/M_t decreases by exactly 2K per step while defined.
    Metrics m = metrics(make_grid(20));
    BeliefCeilingTrace tr = belief_ceiling_trace(m, 2, 12);
    REQUIRE(tr.condition_ok);
    REQUIRE(tr.M.size() == 13);
    for (size_t t = 1; t < tr.M.size(); ++t) {
        REQUIRE(R(1) / tr.M[t - 1] - R(1) / tr.M[t] == R(4));
        REQUIRE(tr.M[t] > tr.M[t - 1]);
    }
}

TEST_CASE("universal guessing bound and grid round constants", "[forms]") {
    REQUIRE(guess_round_upper(1, 2, 2, 3) == 27);
    REQUIRE(guess_round_upper(0, 0, 5, 9) == 0);
    REQUIRE_THROWS_AS(guess_round_upper(-1, 2, 2, 3), std::invalid_argument);

    FlooredProb w = walk_hit_prob_lower(2, 2304);
    REQUIRE_FALSE(w.vacuous);
    REQUIRE(w.value == Catch::Approx(0.5));
    REQUIRE(walk_hit_prob_lower(5, 100).vacuous);

    FlooredProb gr = grid_round_success_lower(2304);
    REQUIRE(gr.value == Catch::Approx(0.25));
    REQUIRE(grid_round_success_lower(100).vacuous);
}

TEST_CASE("star sweep against the uniform-leaf robber costs exactly N", "[strat]") {
    for (int N = 1; N <= 4; ++N) {
        Graph g = make_star(N);
        StarSweepCop cop(g);
        UniformLeafRobber rob(g);
        PairValue v = evaluate_pair(g, cop, rob);
        INFO("N=" << N);
        REQUIRE(v.expected == R(N));
    }
}

TEST_CASE("relocating fast robber on a star: exact mean and simulation", "[strat]") {
    Graph g = make_star(3);
    StarInfspeedCop cop(g);
    StarRelocatingRobber rob(g);
    PairValue v = evaluate_pair(g, cop, rob);
    REQUIRE(v.expected == R(5));

    SimResult r = simulate_pair(g, cop, rob, 40000, 17);
    REQUIRE(r.capped == 0);
    REQUIRE(std::abs(r.mean - 5.0) <= r.half_ci95);
}

TEST_CASE("tree rounds vs distance-2 evasion", "[strat][mc]") {
    Graph g = make_tree(2, 3);
    TreeRoundCop cop(g);
    TreeDistance2Robber rob(g);
    SimResult r = simulate_pair(g, cop, rob, 4000, 23);
    REQUIRE(r.capped == 0);
    REQUIRE(r.max_T >= 1);  // the evader never collides at placement

    // One round = descend (L-1) + leaf tour (2d-1) + climb (1) + ascend (L-1)
    // = 2L + 2(d-1) turns; success probability within a round is >= 1/d^(L-1).
    const long long round_len = 8;
    const double p0 = 0.25;
    long long hits = 0;
    for (auto [t, cnt] : r.hist)
        if (t <= round_len) hits += cnt;
    double phat = static_cast<double>(hits) / static_cast<double>(r.trials);
    double se = std::sqrt(p0 * (1 - p0) / static_cast<double>(r.trials));
    REQUIRE(phat >= p0 - Z99 * se);
}

TEST_CASE("guessing rounds capture on small graphs", "[strat][mc]") {
    Graph g = make_path(3);
    GuessRoundCop cop(g, 1);
    REQUIRE(cop.solution().t_hat == 1);

    GreedyEvader evader(g);
    SimResult r = simulate_pair(g, cop, evader, 10000, 31);
    REQUIRE(r.capped == 0);
    REQUIRE(r.mean <= 27.0);  // the certified bound is far above the truth

    // Round = 1 chase turn + at most diameter homing turns; success >= 1/9.
    const double p0 = 1.0 / 9.0;
    long long hits = 0;
    for (auto [t, cnt] : r.hist)
        if (t <= 3) hits += cnt;
    double phat = static_cast<double>(hits) / static_cast<double>(r.trials);
    double se = std::sqrt(p0 * (1 - p0) / static_cast<double>(r.trials));
    REQUIRE(phat >= p0 - Z99 * se);

    // A graph one cop cannot clear with full information is rejected.
    Graph grid = make_grid(3);
    REQUIRE_THROWS_AS(GuessRoundCop(grid, 1), std::invalid_argument);
}

TEST_CASE("parked grid cops match the stationary solve", "[strat]") {
    Graph g = make_grid(3);
    auto cop = make_grid_stationary_cops(g);
    DrunkRobber rob(g, 1);
    PairValue v = evaluate_pair(g, *cop, rob);
    StationaryEct<R> st = stationary_ect<R>(g, {2, 6});
    REQUIRE(v.expected == st.mean_uniform);
}

TEST_CASE("broom cop sweeps out the drunk robber", "[strat]") {
    Graph g = make_broom(0.5, 8);
    auto cop = make_broom_drunk_cop(g);
    DrunkRobber rob(g, 1);
    PairValue v = evaluate_pair(g, *cop, rob);
    REQUIRE(v.expected > R(0));

    SimResult r = simulate_pair(g, *cop, rob, 40000, 41);
    REQUIRE(r.capped == 0);
    // 3-sigma guard band: the check must not flake on a fixed seed.
    REQUIRE(std::abs(r.mean - to_double(v.expected)) <= 1.5 * r.half_ci95);
}

TEST_CASE("parametrized broom pair plays out finite games", "[strat][mc]") {
    Graph g = make_broom(0.5, 40);
    BroomCop cop(g, 0.25, 0.0, 1.0);
    BroomRobber rob(g, 0.5);
    SimResult r = simulate_pair(g, cop, rob, 2000, 47);
    REQUIRE(r.capped == 0);
    REQUIRE(r.mean > 0.0);
    SimResult r2 = simulate_pair(g, cop, rob, 2000, 47);
    REQUIRE(r.mean == r2.mean);  // same seed, same playouts
}

TEST_CASE("random walkers eventually capture", "[strat]") {
    Graph g = make_star(3);
    RandomWalkCop cop(g, 1);
    DrunkRobber rob(g, 1);
    // Random placement and moves are playout-only.
    REQUIRE_THROWS_AS(evaluate_pair(g, cop, rob), std::invalid_argument);
    SimResult r = simulate_pair(g, cop, rob, 40000, 53);
    REQUIRE(r.capped == 0);
    REQUIRE(r.mean > 0.0);
    SimResult r2 = simulate_pair(g, cop, rob, 40000, 53);
    REQUIRE(r.mean == r2.mean);
}

TEST_CASE("deterministic pairs evaluate exactly", "[strat]") {
    Graph g = make_path(5);
    auto cop = make_path_sweep_cop(g);
    GreedyEvader rob(g);
    PairValue v = evaluate_pair(g, *cop, rob);
    REQUIRE(v.expected == R(4));  // flee to the far end, get cornered there

    // Capped evaluation approaches the exact value from below.
    PairValue c2 = evaluate_pair_capped(g, *cop, rob, 2);
    PairValue c4 = evaluate_pair_capped(g, *cop, rob, 4);
    PairValue c9 = evaluate_pair_capped(g, *cop, rob, 9);
    REQUIRE(c2.expected == R(2));
    REQUIRE(c4.expected == R(4));
    REQUIRE(c9.expected == R(4));
    REQUIRE(c2.expected <= c4.expected);
}

TEST_CASE("cycle pincer sweep is feasible and finite", "[strat]") {
    Graph g = make_cycle(6);
    auto cop = make_cycle_double_sweep_cop(g);
    REQUIRE(cop->cops() == 2);
    DrunkRobber rob(g, 1);
    PairValue v = evaluate_pair(g, *cop, rob);
    REQUIRE(v.expected > R(0));
    SimResult r = simulate_pair(g, *cop, rob, 40000, 59);
    REQUIRE(r.capped == 0);
    REQUIRE(std::abs(r.mean - to_double(v.expected)) <= r.half_ci95);
}

TEST_CASE("strategy factories accept the documented spellings", "[strat]") {
    Graph p = make_path(4);
    Graph s = make_star(3);
    Graph c = make_cycle(6);
    Graph t = make_tree(2, 2);
    Graph gr = make_grid(3);
    Graph b = make_broom(0.5, 8);

    REQUIRE(cop_strategy_from_spec(p, "path-sweep")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(p, "stationary:1")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(p, "stationary:0;2")->cops() == 2);
    REQUIRE(cop_strategy_from_spec(c, "cycle-double-sweep")->cops() == 2);
    REQUIRE(cop_strategy_from_spec(s, "star-sweep")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(s, "star-infspeed")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(t, "tree-round")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(gr, "grid-stationary")->cops() == 2);
    REQUIRE(cop_strategy_from_spec(b, "broom-cop:b=0.25,p=0,x=1")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(b, "broom-drunk")->cops() == 1);
    REQUIRE(cop_strategy_from_spec(gr, "randomwalk:2")->cops() == 2);
    REQUIRE(cop_strategy_from_spec(p, "guess-round")->cops() == 1);

    REQUIRE(robber_strategy_from_spec(s, "uniform-leaf") != nullptr);
    REQUIRE(robber_strategy_from_spec(s, "relocating-leaf") != nullptr);
    REQUIRE(robber_strategy_from_spec(t, "tree-distance2") != nullptr);
    REQUIRE(robber_strategy_from_spec(p, "greedy-evader") != nullptr);
    REQUIRE(robber_strategy_from_spec(b, "broom-robber:q=0.5") != nullptr);

    REQUIRE_THROWS_AS(cop_strategy_from_spec(p, "teleport"), std::invalid_argument);
    REQUIRE_THROWS_AS(cop_strategy_from_spec(s, "path-sweep"), std::invalid_argument);
    REQUIRE_THROWS_AS(robber_strategy_from_spec(p, "uniform-leaf"), std::invalid_argument);
}
