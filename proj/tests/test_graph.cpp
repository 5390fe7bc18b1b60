#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cir/graph.hpp"
#include "cir/visible.hpp"

using namespace cir;

TEST_CASE("path, cycle, and star shapes", "[graph]") {
    Graph p = make_path(4);
    REQUIRE(p.n == 4);
    REQUIRE(p.deg(0) == 1);
    REQUIRE(p.deg(1) == 2);
    REQUIRE(p.has_edge(2, 3));
    REQUIRE_FALSE(p.has_edge(0, 2));

    Graph c = make_cycle(5);
    REQUIRE(c.n == 5);
    for (int v = 0; v < 5; ++v) REQUIRE(c.deg(v) == 2);
    REQUIRE(c.has_edge(4, 0));

    Graph s = make_star(3);
    REQUIRE(s.n == 4);
    REQUIRE(s.deg(0) == 3);
    for (int v = 1; v <= 3; ++v) {
        REQUIRE(s.deg(v) == 1);
        REQUIRE(s.has_edge(0, v));
    }
}

TEST_CASE("complete d-ary tree uses breadth-first numbering", "[graph]") {
    Graph t = make_tree(2, 2);
    REQUIRE(t.n == 7);
    REQUIRE(t.deg(0) == 2);       // root
    REQUIRE(t.deg(1) == 3);       // internal
    REQUIRE(t.deg(3) == 1);       // leaf
    REQUIRE(t.has_edge(0, 1));
    REQUIRE(t.has_edge(0, 2));
    REQUIRE(t.has_edge(1, 3));
    REQUIRE(t.has_edge(1, 4));
    REQUIRE(t.has_edge(2, 5));
    REQUIRE(t.has_edge(2, 6));
    long long edges = 0;
    for (int v = 0; v < t.n; ++v) edges += t.deg(v);
    REQUIRE(edges == 2 * (t.n - 1));

    Graph t3 = make_tree(3, 2);
    REQUIRE(t3.n == 13);
    REQUIRE(t3.deg(0) == 3);
    REQUIRE(t3.deg(1) == 4);
}

TEST_CASE("square grid shape", "[graph]") {
    Graph g = make_grid(3);
    REQUIRE(g.n == 9);
    REQUIRE(g.deg(0) == 2);   // corner
    REQUIRE(g.deg(1) == 3);   // edge midpoint
    REQUIRE(g.deg(4) == 4);   // center
    REQUIRE(g.has_edge(0, 1));
    REQUIRE(g.has_edge(0, 3));
    REQUIRE_FALSE(g.has_edge(0, 4));
    REQUIRE(metrics(g).edges == 12);
}

TEST_CASE("broom = path end plus leaf cluster at the center", "[graph]") {
    Graph b = make_broom(0.5, 8);
    REQUIRE(b.n == 8);
    REQUIRE(b.broom_path == 4);
    REQUIRE(b.deg(0) == 1);      // tip of the handle
    REQUIRE(b.deg(1) == 2);
    REQUIRE(b.deg(3) == 5);      // center: one path edge + 4 leaves
    for (int v = 4; v < 8; ++v) {
        REQUIRE(b.deg(v) == 1);
        REQUIRE(b.has_edge(3, v));
    }
    REQUIRE(metrics(b).edges == b.n - 1);

    REQUIRE_THROWS_AS(make_broom(0.0, 8), std::invalid_argument);
    REQUIRE_THROWS_AS(make_broom(1.5, 8), std::invalid_argument);
}

TEST_CASE("metrics: degree range and diameter", "[graph]") {
    Metrics mp = metrics(make_path(5));
    REQUIRE(mp.n == 5);
    REQUIRE(mp.edges == 4);
    REQUIRE(mp.min_deg == 1);
    REQUIRE(mp.max_deg == 2);
    REQUIRE(mp.diameter == 4);

    Metrics mc = metrics(make_cycle(6));
    REQUIRE(mc.diameter == 3);
    REQUIRE(mc.min_deg == 2);
    REQUIRE(mc.max_deg == 2);

    Metrics ms = metrics(make_star(4));
    REQUIRE(ms.diameter == 2);
    REQUIRE(ms.max_deg == 4);

    Metrics m1 = metrics(make_path(1));
    REQUIRE(m1.diameter == 0);
    REQUIRE(m1.edges == 0);
}

TEST_CASE("breadth-first distances are symmetric and match known values", "[graph]") {
    Graph g = make_tree(2, 3);
    auto d = all_pairs_dist(g);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v) REQUIRE(d[u][v] == d[v][u]);
    REQUIRE(d[0][0] == 0);
    REQUIRE(d[7][8] == 2);    // siblings
    REQUIRE(d[7][14] == 6);   // deepest leaves in opposite subtrees
    auto row = bfs_dist(g, 7);
    for (int v = 0; v < g.n; ++v) REQUIRE(row[v] == d[7][v]);
}

TEST_CASE("from_edges validates endpoints", "[graph]") {
    Graph tri = from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
    REQUIRE(metrics(tri).edges == 3);
    REQUIRE(metrics(tri).diameter == 1);
    REQUIRE_THROWS_AS(from_edges(3, {{0, 3}}), std::invalid_argument);
    REQUIRE_THROWS_AS(from_edges(0, {}), std::invalid_argument);
}

TEST_CASE("edge lists round-trip through streams and files", "[graph]") {
    std::istringstream in("4\n0 1\n1 2\n2 3\n");
    Graph g = read_edge_list(in);
    REQUIRE(g.n == 4);
    REQUIRE(g.has_edge(1, 2));
    REQUIRE(metrics(g).edges == 3);

    std::string path = "cir_test_edges.txt";
    {
        std::ofstream out(path);
        out << "3\n0 1\n1 2\n";
    }
    Graph h = parse_graph_spec("file:" + path);
    REQUIRE(h.n == 3);
    REQUIRE(metrics(h).diameter == 2);
    std::remove(path.c_str());
}

TEST_CASE("graph specs parse and round-trip", "[graph]") {
    const char* specs[] = {"path:7",          "cycle:6", "star:3", "tree:d=2,L=3",
                           "grid:5",          "broom:c=0.5,n=40"};
    for (const char* s : specs) {
        Graph g = parse_graph_spec(s);
        Graph h = parse_graph_spec(g.spec());
        REQUIRE(h.n == g.n);
        REQUIRE(h.family == g.family);
        REQUIRE(metrics(h).edges == metrics(g).edges);
    }
    REQUIRE(parse_graph_spec("star:3").n == 4);
    REQUIRE(parse_graph_spec("tree:d=2,L=3").n == 15);
    REQUIRE(parse_graph_spec("grid:5").n == 25);

    REQUIRE_THROWS_AS(parse_graph_spec("pentagon:5"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_graph_spec("path:"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_graph_spec("tree:d=2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_graph_spec("cycle:2"), std::invalid_argument);
}

TEST_CASE("full-information pursuit values on small graphs", "[visible]") {
    VisibleSolution s1 = visible_solve(make_path(1), 1);
    REQUIRE(s1.guaranteed);
    REQUIRE(s1.t_hat == 0);

    VisibleSolution p3 = visible_solve(make_path(3), 1);
    REQUIRE(p3.guaranteed);
    REQUIRE(p3.t_hat == 1);   // start at the middle, corner the robber

    VisibleSolution p4 = visible_solve(make_path(4), 1);
    REQUIRE(p4.guaranteed);
    REQUIRE(p4.t_hat == 2);

    VisibleSolution s3 = visible_solve(make_star(3), 1);
    REQUIRE(s3.guaranteed);
    REQUIRE(s3.t_hat == 1);

    // The 3x3 grid has no dominated vertex, so one cop cannot guarantee
    // capture; two can.
    REQUIRE_FALSE(visible_solve(make_grid(3), 1).guaranteed);
    REQUIRE(visible_solve(make_grid(3), 2).guaranteed);

    REQUIRE_FALSE(visible_solve(make_cycle(5), 1).guaranteed);
    REQUIRE(visible_solve(make_cycle(5), 2).guaranteed);
}

TEST_CASE("family shortcuts for the pursuit number match the search", "[visible]") {
    std::vector<Graph> gs;
    gs.push_back(make_path(4));
    gs.push_back(make_path(1));
    gs.push_back(make_cycle(3));
    gs.push_back(make_cycle(4));
    gs.push_back(make_cycle(5));
    gs.push_back(make_star(3));
    gs.push_back(make_tree(2, 2));
    gs.push_back(make_grid(2));
    gs.push_back(make_grid(3));
    gs.push_back(make_broom(0.5, 6));
    for (const Graph& g : gs) {
        INFO(g.spec());
        REQUIRE(cop_number(g) == cop_number_search(g));
    }
}
