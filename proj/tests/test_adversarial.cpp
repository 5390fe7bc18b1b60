#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cir/adversarial.hpp"
#include "cir/evaluate.hpp"
#include "cir/game_tree.hpp"
#include "cir/lp.hpp"
#include "cir/strategies.hpp"

using namespace cir;
using R = Rational;

namespace {
// y maximizes: its guarantee is min over columns; x minimizes: max over rows.
void check_equilibrium(const std::vector<std::vector<R>>& A, const MatrixGameSolution& sol) {
    size_t W = A.size(), P = A[0].size();
    R sy(0), sx(0);
    for (const R& v : sol.row) {
        REQUIRE(v >= R(0));
        sy += v;
    }
    for (const R& v : sol.col) {
        REQUIRE(v >= R(0));
        sx += v;
    }
    REQUIRE(sy == R(1));
    REQUIRE(sx == R(1));
    for (size_t j = 0; j < P; ++j) {
        R pay(0);
        for (size_t i = 0; i < W; ++i) pay += sol.row[i] * A[i][j];
        REQUIRE(pay >= sol.value);
    }
    for (size_t i = 0; i < W; ++i) {
        R pay(0);
        for (size_t j = 0; j < P; ++j) pay += sol.col[j] * A[i][j];
        REQUIRE(pay <= sol.value);
    }
}
}  // namespace

TEST_CASE("matrix games solve exactly", "[lp]") {
    std::vector<std::vector<R>> A = {{R(3), R(1), R(1)}, {R(1), R(1), R(2)}, {R(1), R(2), R(1)}};
    MatrixGameSolution sol = solve_matrix_game(A);
    REQUIRE(sol.value == rat(7, 5));
    check_equilibrium(A, sol);
    REQUIRE(sol.row == std::vector<R>{rat(1, 5), rat(2, 5), rat(2, 5)});
    REQUIRE(sol.col == std::vector<R>{rat(1, 5), rat(2, 5), rat(2, 5)});

    std::vector<std::vector<R>> pennies = {{R(1), R(-1)}, {R(-1), R(1)}};
    MatrixGameSolution ps = solve_matrix_game(pennies);
    REQUIRE(ps.value == R(0));
    check_equilibrium(pennies, ps);

    std::vector<std::vector<R>> saddle = {{R(2), R(3)}, {R(0), R(4)}};
    MatrixGameSolution ss = solve_matrix_game(saddle);
    REQUIRE(ss.value == R(2));
    check_equilibrium(saddle, ss);

    REQUIRE_THROWS_AS(solve_matrix_game({}), std::invalid_argument);
    REQUIRE_THROWS_AS(solve_matrix_game({{R(1), R(2)}, {R(1)}}), std::invalid_argument);
}

TEST_CASE("two-leaf star: truncated value sequence", "[adversarial]") {
    Graph g = make_star(2);
    std::vector<R> want = {R(0), R(1), rat(3, 2), R(2), R(2)};
    for (long long m = 0; m <= 4; ++m) {
        SolveReport rep = solve_exact(g, 1, m);
        INFO("m=" << m);
        REQUIRE(rep.value_exact == want[static_cast<size_t>(m)]);
        REQUIRE(rep.method == "exact");
        REQUIRE(rep.exploitability == 0.0);
        REQUIRE(rep.horizon == m);
    }
}

TEST_CASE("paths are swept end to end", "[adversarial]") {
    SolveReport p3 = solve_exact(make_path(3), 1, 4);
    REQUIRE(p3.value_exact == R(2));
    SolveReport p2 = solve_exact(make_path(2), 1, 2);
    REQUIRE(p2.value_exact == R(1));
}

TEST_CASE("star values at twice the leaf count", "[adversarial]") {
    for (int N = 1; N <= 3; ++N) {
        Graph g = make_star(N);
        SolveReport rep = solve_exact(g, 1, 2 * N);
        INFO("N=" << N);
        REQUIRE(rep.value_exact == R(N));
    }
}

TEST_CASE("two cops pin small cycles", "[adversarial]") {
    // One placement covers half of C4; splitting onto the other two vertices
    // finishes at turn one no matter where the robber stands.
    SolveReport c4 = solve_exact(make_cycle(4), 2, 3);
    REQUIRE(c4.value_exact == R(1));

    // On C5 the value sits strictly below (n-1)/2 = 2: mixing the three
    // rotations of a two-turn pincer catches every reply by turn two.
    SolveReport c5 = solve_exact(make_cycle(5), 2, 4);
    REQUIRE(c5.value_exact == rat(7, 5));
    REQUIRE(solve_exact(make_cycle(5), 2, 2).value_exact <= rat(7, 5));
    REQUIRE(solve_exact(make_cycle(5), 2, 3).value_exact == rat(7, 5));
}

TEST_CASE("horizon monotonicity of exact values", "[adversarial]") {
    Graph g = make_path(3);
    R prev(0);
    for (long long m = 0; m <= 4; ++m) {
        R v = solve_exact(g, 1, m).value_exact;
        REQUIRE(v >= prev);
        prev = v;
    }
}

TEST_CASE("best response against fixed cop strategies", "[adversarial][br]") {
    for (int n = 3; n <= 5; ++n) {
        Graph g = make_path(n);
        auto cop = make_path_sweep_cop(g);
        INFO("n=" << n);
        REQUIRE(best_response_value(g, *cop, n).value == R(n - 1));
    }
    Graph s3 = make_star(3);
    StarSweepCop sweep3(s3);
    REQUIRE(best_response_value(s3, sweep3, 6).value == R(3));
    Graph s2 = make_star(2);
    StarSweepCop sweep2(s2);
    REQUIRE(best_response_value(s2, sweep2, 6).value == R(2));
    REQUIRE(best_response_value(s2, sweep2, 0).value == R(0));

    // Parking one cop concedes the horizon.
    auto parked = make_stationary_cop(s3, {0});
    REQUIRE(best_response_value(s3, *parked, 7).value == R(7));
}

TEST_CASE("replay agrees with the best-response tree", "[adversarial][br]") {
    Graph g = make_path(3);
    CopSpace space = build_cop_space(g, 1, MoveRule::stay_ok);
    auto id = [&](int v) { return space.id_of({v}); };
    std::vector<std::vector<int>> walks = {{id(0), id(1), id(2)}, {id(2), id(1), id(0)}};
    std::vector<R> w = {rat(1, 2), rat(1, 2)};
    CopTree<R> tree = cop_tree_from_walks(space, walks, w);
    RobberBr<R> br = robber_best_response<R>(g, tree, 3, 1);
    REQUIRE(br.value == R(2));

    R replayed(0);
    for (size_t i = 0; i < walks.size(); ++i)
        replayed += w[i] * replay_payoff(g, space, walks[i], br.plan, 3);
    REQUIRE(replayed == br.value);
}

TEST_CASE("cop best response exploits a committed robber", "[adversarial][br]") {
    Graph g = make_path(3);
    CopSpace space = build_cop_space(g, 1, MoveRule::stay_ok);
    // A single deterministic plan (default: place low, stand still) is met
    // by walking straight at it.
    std::vector<RobberPlan> plans(1);
    std::vector<R> y = {R(1)};
    CopBr br = cop_best_response(g, space, plans, y, 4);
    REQUIRE(br.value <= R(1));
    REQUIRE(br.walk.size() == 4);
}

TEST_CASE("iterative solver approaches the star value", "[adversarial][cfr]") {
    Graph g = make_star(3);
    SolveReport rep = solve_iterative(g, 1, 6, 400000, 0.05);
    REQUIRE(rep.method == "iterative");
    REQUIRE(rep.exploitability <= 0.05);
    REQUIRE(std::abs(rep.value - 3.0) <= 0.05 + 1e-9);
    REQUIRE(rep.iterations >= 1);
}

TEST_CASE("iterative solver matches the exact one", "[adversarial][cfr]") {
    Graph g = make_star(2);
    SolveReport ex = solve_exact(g, 1, 3);
    SolveReport it = solve_iterative(g, 1, 3, 400000, 0.02);
    REQUIRE(it.exploitability <= 0.02);
    REQUIRE(std::abs(it.value - to_double(ex.value_exact)) <= 0.02 + 1e-9);
    REQUIRE_THROWS_AS(solve_iterative(g, 1, 3, 0), std::invalid_argument);
}

TEST_CASE("solver policies are proper distributions on the support", "[adversarial]") {
    Graph g = make_star(2);
    SolveReport rep = solve_exact(g, 1, 2);
    REQUIRE(rep.cop_policy.count("") == 1);  // placement row
    for (const auto& [hist, acts] : rep.cop_policy) {
        double total = 0.0;
        for (const auto& [label, p] : acts) {
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0 + 1e-12);
            total += p;
        }
        INFO("cop infoset '" << hist << "'");
        REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
    }
    bool saw_place = false;
    for (const auto& [key, acts] : rep.rob_policy) {
        if (key.rfind("place|", 0) == 0) saw_place = true;
        double total = 0.0;
        for (const auto& [label, p] : acts) total += p;
        INFO("robber infoset '" << key << "'");
        REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
    }
    REQUIRE(saw_place);
}

TEST_CASE("explicit game trees", "[adversarial][tree]") {
    Graph g = make_star(2);
    ExtensiveGame game = build_game(g, 1, 2);
    REQUIRE(game.nodes[0].kind == GameNode::Kind::cop);
    REQUIRE(game.nodes[0].children.size() == 3);  // one placement per vertex
    // Each placement leads to a robber node with one child per vertex.
    for (const auto& [label, child] : game.nodes[0].children) {
        REQUIRE(game.nodes[child].kind == GameNode::Kind::robber);
        REQUIRE(game.nodes[child].children.size() == 3);
    }

    ExtensiveGame trivial = build_game(make_path(1), 1, 0);
    REQUIRE(trivial.nodes.size() == 3);  // cop root, robber reply, terminal 0
    REQUIRE(trivial.nodes[2].kind == GameNode::Kind::terminal);
    REQUIRE(trivial.nodes[2].payoff == R(0));

    REQUIRE_THROWS_AS(build_game(make_path(4), 1, 3, 1, MoveRule::stay_ok, 10),
                      std::runtime_error);
    REQUIRE_THROWS_AS(build_game(g, 1, -1), std::invalid_argument);

    std::ostringstream os;
    dump_game(trivial, os);
    std::string out = os.str();
    REQUIRE(out.find("cop") != std::string::npos);
    REQUIRE(out.find("terminal") != std::string::npos);
    // One line per node, tab-separated: id, player, infoset, children, payoff.
    REQUIRE(std::count(out.begin(), out.end(), '\n') == 3);
}

TEST_CASE("truncated values agree with evaluated pairs on the star", "[adversarial]") {
    // At horizon 2N the sweep/uniform-leaf pair realizes the exact value N.
    Graph g = make_star(3);
    StarSweepCop cop(g);
    UniformLeafRobber rob(g);
    PairValue pv = evaluate_pair(g, cop, rob);
    SolveReport rep = solve_exact(g, 1, 6);
    REQUIRE(pv.expected == rep.value_exact);
}
