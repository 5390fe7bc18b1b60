#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cir {

enum class Family { custom, path, cycle, star, tree, grid, broom };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::star: return "star";
        case Family::tree: return "tree";
        case Family::grid: return "grid";
        case Family::broom: return "broom";
        default: return "custom";
    }
}

// Simple connected undirected graph. Vertex numbering is canonical per
// family: star center = 0; complete d-ary tree in BFS order from the root;
// grid row-major; broom path from the free end (0) to the center
// (path_len-1), then the leaves.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists
    Family family = Family::custom;
    // Family parameters (meaning depends on tag).
    int fam_N = 0;       // star/grid size parameter
    int fam_d = 0;       // tree arity
    int fam_L = 0;       // tree depth
    double fam_c = 0.0;  // broom path fraction
    int broom_path = 0;  // broom: number of path vertices (center included)

    int deg(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const {
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }
    std::string spec() const;
};

namespace detail {
inline void add_edge(std::vector<std::set<int>>& s, int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop rejected");
    s[u].insert(v);
    s[v].insert(u);
}

inline Graph finish(int n, const std::vector<std::set<int>>& s, Family fam) {
    Graph g;
    g.n = n;
    g.family = fam;
    g.adj.resize(n);
    for (int v = 0; v < n; ++v) g.adj[v].assign(s[v].begin(), s[v].end());
    // Connectivity check; every solver below assumes it.
    if (n > 0) {
        std::vector<char> seen(n, 0);
        std::deque<int> q{0};
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int w : g.adj[u])
                if (!seen[w]) { seen[w] = 1; ++cnt; q.push_back(w); }
        }
        if (cnt != n) throw std::invalid_argument("graph is not connected");
    }
    return g;
}
}  // namespace detail

inline Graph make_path(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<std::set<int>> s(n);
    for (int i = 0; i + 1 < n; ++i) detail::add_edge(s, i, i + 1);
    Graph g = detail::finish(n, s, Family::path);
    g.fam_N = n;
    return g;
}

inline Graph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<std::set<int>> s(n);
    for (int i = 0; i < n; ++i) detail::add_edge(s, i, (i + 1) % n);
    Graph g = detail::finish(n, s, Family::cycle);
    g.fam_N = n;
    return g;
}

// Star with N leaves: center 0, leaves 1..N. n = N+1.
inline Graph make_star(int N) {
    if (N < 1) throw std::invalid_argument("star needs N >= 1");
    std::vector<std::set<int>> s(N + 1);
    for (int i = 1; i <= N; ++i) detail::add_edge(s, 0, i);
    Graph g = detail::finish(N + 1, s, Family::star);
    g.fam_N = N;
    return g;
}

// Complete d-ary tree of depth L, BFS numbering: root 0, level j starts at
// (d^j - 1)/(d - 1). n = (d^(L+1) - 1)/(d - 1).
inline Graph make_tree(int d, int L) {
    if (d < 2 || L < 1) throw std::invalid_argument("tree needs d >= 2, L >= 1");
    long long n = 0, pow = 1;
    for (int j = 0; j <= L; ++j) { n += pow; pow *= d; }
    if (n > 2'000'000) throw std::invalid_argument("tree too large");
    std::vector<std::set<int>> s(static_cast<size_t>(n));
    long long level_start = 0, level_size = 1;
    for (int j = 0; j < L; ++j) {
        long long next_start = level_start + level_size;
        for (long long i = 0; i < level_size; ++i)
            for (int k = 0; k < d; ++k)
                detail::add_edge(s, static_cast<int>(level_start + i),
                                 static_cast<int>(next_start + i * d + k));
        level_start = next_start;
        level_size *= d;
    }
    Graph g = detail::finish(static_cast<int>(n), s, Family::tree);
    g.fam_d = d;
    g.fam_L = L;
    return g;
}

// N x N grid, row-major: (r, c) -> r*N + c.
inline Graph make_grid(int N) {
    if (N < 1) throw std::invalid_argument("grid needs N >= 1");
    int n = N * N;
    std::vector<std::set<int>> s(n);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            if (c + 1 < N) detail::add_edge(s, r * N + c, r * N + c + 1);
            if (r + 1 < N) detail::add_edge(s, r * N + c, (r + 1) * N + c);
        }
    Graph g = detail::finish(n, s, Family::grid);
    g.fam_N = N;
    return g;
}

// Broom B(c, n): floor(c*n) path vertices (center counted in the path part)
// plus n - floor(c*n) leaves hanging off the center. Path end is vertex 0,
// center is vertex floor(c*n) - 1.
inline Graph make_broom(double c, int n) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("broom needs 0 < c <= 1");
    if (n < 2) throw std::invalid_argument("broom needs n >= 2");
    int P = static_cast<int>(std::floor(c * n + 1e-9));
    if (P < 1) throw std::invalid_argument("broom needs floor(c*n) >= 1");
    if (P > n) P = n;
    std::vector<std::set<int>> s(n);
    for (int i = 0; i + 1 < P; ++i) detail::add_edge(s, i, i + 1);
    int center = P - 1;
    for (int v = P; v < n; ++v) detail::add_edge(s, center, v);
    Graph g = detail::finish(n, s, Family::broom);
    g.fam_c = c;
    g.broom_path = P;
    g.fam_N = n;
    return g;
}

inline Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw std::invalid_argument("graph needs n >= 1");
    std::vector<std::set<int>> s(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        detail::add_edge(s, u, v);
    }
    return detail::finish(n, s, Family::custom);
}

// Edge-list file: first line n, then one "u v" pair per line, 0-based.
inline Graph read_edge_list(std::istream& in) {
    int n;
    if (!(in >> n)) throw std::invalid_argument("edge list: missing vertex count");
    std::vector<std::pair<int, int>> edges;
    int u, v;
    while (in >> u >> v) edges.emplace_back(u, v);
    return from_edges(n, edges);
}

inline Graph read_edge_list_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open graph file: " + path);
    return read_edge_list(f);
}

// --- metrics ---------------------------------------------------------------

struct Metrics {
    int n = 0;
    long long edges = 0;
    int min_deg = 0;
    int max_deg = 0;
    int diameter = 0;
};

inline std::vector<int> bfs_dist(const Graph& g, int src) {
    std::vector<int> d(g.n, -1);
    std::deque<int> q{src};
    d[src] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : g.adj[u])
            if (d[w] < 0) { d[w] = d[u] + 1; q.push_back(w); }
    }
    return d;
}

inline std::vector<std::vector<int>> all_pairs_dist(const Graph& g) {
    std::vector<std::vector<int>> d(g.n);
    for (int v = 0; v < g.n; ++v) d[v] = bfs_dist(g, v);
    return d;
}

inline Metrics metrics(const Graph& g) {
    Metrics m;
    m.n = g.n;
    m.min_deg = g.n > 1 ? g.n : 0;
    for (int v = 0; v < g.n; ++v) {
        m.edges += g.deg(v);
        m.min_deg = std::min(m.min_deg, g.deg(v));
        m.max_deg = std::max(m.max_deg, g.deg(v));
    }
    m.edges /= 2;
    for (int v = 0; v < g.n; ++v)
        for (int dist : bfs_dist(g, v)) m.diameter = std::max(m.diameter, dist);
    return m;
}

// --- descriptor strings ----------------------------------------------------

inline std::string Graph::spec() const {
    char buf[64];
    switch (family) {
        case Family::path: std::snprintf(buf, sizeof buf, "path:%d", n); return buf;
        case Family::cycle: std::snprintf(buf, sizeof buf, "cycle:%d", n); return buf;
        case Family::star: std::snprintf(buf, sizeof buf, "star:%d", fam_N); return buf;
        case Family::tree: std::snprintf(buf, sizeof buf, "tree:d=%d,L=%d", fam_d, fam_L); return buf;
        case Family::grid: std::snprintf(buf, sizeof buf, "grid:%d", fam_N); return buf;
        case Family::broom:
            std::snprintf(buf, sizeof buf, "broom:c=%g,n=%d", fam_c, n);
            return buf;
        default: std::snprintf(buf, sizeof buf, "custom:%d", n); return buf;
    }
}

namespace detail {
inline std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& body) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            out.emplace_back("", item);
        else
            out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}
}  // namespace detail

// Accepts "star:3", "path:7", "cycle:6", "tree:d=2,L=3", "grid:5",
// "broom:c=0.5,n=40", "file:PATH".
inline Graph parse_graph_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("graph spec needs 'family:params': " + spec);
    std::string fam = spec.substr(0, colon), body = spec.substr(colon + 1);
    if (body.empty()) throw std::invalid_argument("graph spec missing parameters: " + spec);
    try {
        if (fam == "path") return make_path(std::stoi(body));
        if (fam == "cycle") return make_cycle(std::stoi(body));
        if (fam == "star") return make_star(std::stoi(body));
        if (fam == "grid") return make_grid(std::stoi(body));
        if (fam == "file") return read_edge_list_file(body);
        if (fam == "tree") {
            int d = -1, L = -1;
            for (auto& [k, v] : detail::parse_kv(body)) {
                if (k == "d") d = std::stoi(v);
                else if (k == "L") L = std::stoi(v);
                else throw std::invalid_argument("tree spec key must be d or L");
            }
            if (d < 0 || L < 0) throw std::invalid_argument("tree spec needs d= and L=");
            return make_tree(d, L);
        }
        if (fam == "broom") {
            double c = -1;
            int n = -1;
            for (auto& [k, v] : detail::parse_kv(body)) {
                if (k == "c") c = std::stod(v);
                else if (k == "n") n = std::stoi(v);
                else throw std::invalid_argument("broom spec key must be c or n");
            }
            if (c < 0 || n < 0) throw std::invalid_argument("broom spec needs c= and n=");
            return make_broom(c, n);
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed graph spec: " + spec);
    }
    throw std::invalid_argument("unknown graph family: " + fam);
}

}  // namespace cir
