#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cir/graph.hpp"
#include "cir/policy.hpp"
#include "cir/rational.hpp"
#include "cir/visible.hpp"

namespace cir {

namespace detail {
inline std::string tuple_label(const std::vector<int>& t) {
    std::string s;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(t[i]);
    }
    return s;
}
}  // namespace detail

struct GameNode {
    enum class Kind { cop, robber, terminal };
    Kind kind = Kind::terminal;
    std::string infoset;  // cop nodes: cop history; robber nodes: history plus own vertex
    std::vector<std::pair<std::string, int>> children;  // action label -> node id
    Rational payoff;                                    // terminals: min(T, m)
};

// Explicit game tree of the m-truncated pursuit: cop placement, robber
// placement, then cop-move/robber-move turns, capture checked after every
// half-move. Cop information sets contain only the cop's own history, which
// is what makes the robber invisible.
struct ExtensiveGame {
    const Graph* g = nullptr;
    int K = 1;
    long long m = 0;
    int s = 1;
    std::vector<GameNode> nodes;  // nodes[0] is the root (cop placement)

    size_t size() const { return nodes.size(); }
};

namespace detail {

class GameBuilder {
  public:
    GameBuilder(const Graph& g, int K, long long m, int s, MoveRule rule, size_t cap)
        : g_(&g), m_(m), s_(s), cap_(cap), space_(build_cop_space(g, K, rule)) {
        game_.g = &g;
        game_.K = K;
        game_.m = m;
        game_.s = s;
    }

    ExtensiveGame build() {
        int root = new_node(GameNode::Kind::cop, "");
        for (size_t id = 0; id < space_.tuples.size(); ++id) {
            const auto& Z0 = space_.tuples[id];
            int rp = new_node(GameNode::Kind::robber, tuple_label(Z0));
            game_.nodes[root].children.emplace_back(tuple_label(Z0), rp);
            for (int r = 0; r < g_->n; ++r) {
                int child;
                if (std::find(Z0.begin(), Z0.end(), r) != Z0.end() || m_ == 0)
                    child = terminal(Rational(0));
                else
                    child = cop_node(static_cast<int>(id), history_key(Z0), r, 1);
                game_.nodes[rp].children.emplace_back(std::to_string(r), child);
            }
        }
        return std::move(game_);
    }

  private:
    int new_node(GameNode::Kind kind, std::string infoset) {
        if (game_.nodes.size() >= cap_)
            throw std::runtime_error("game tree exceeds cap of " + std::to_string(cap_) +
                                     " nodes");
        GameNode n;
        n.kind = kind;
        n.infoset = std::move(infoset);
        game_.nodes.push_back(std::move(n));
        return static_cast<int>(game_.nodes.size() - 1);
    }
    int terminal(Rational payoff) {
        int id = new_node(GameNode::Kind::terminal, "");
        game_.nodes[id].payoff = std::move(payoff);
        return id;
    }
    static std::string history_key(const std::vector<int>& Z) { return tuple_label(Z); }

    // Cop about to make the move of turn t (1-based), from tuple `cur`.
    int cop_node(int cur, const std::string& hist, int r, long long t) {
        int id = new_node(GameNode::Kind::cop, hist);
        for (int nxt : space_.moves[cur]) {
            const auto& Z = space_.tuples[nxt];
            std::string h2 = hist + ";" + tuple_label(Z);
            int child;
            if (std::find(Z.begin(), Z.end(), r) != Z.end())
                child = terminal(Rational(t));
            else
                child = robber_node(nxt, h2, r, t);
            game_.nodes[id].children.emplace_back(tuple_label(Z), child);
        }
        return id;
    }

    // Robber replying to the cop move of turn t.
    int robber_node(int cur, const std::string& hist, int r, long long t) {
        int id = new_node(GameNode::Kind::robber, hist + "|" + std::to_string(r));
        const auto& Z = space_.tuples[cur];
        for (int dest : robber_reachable(*g_, Z, r, s_)) {
            int child;
            if (std::find(Z.begin(), Z.end(), dest) != Z.end())
                child = terminal(Rational(t));
            else if (t == m_)
                child = terminal(Rational(m_));
            else
                child = cop_node(cur, hist, dest, t + 1);
            game_.nodes[id].children.emplace_back(std::to_string(dest), child);
        }
        return id;
    }

    const Graph* g_;
    long long m_;
    int s_;
    size_t cap_;
    CopSpace space_;
    ExtensiveGame game_;
};

}  // namespace detail

inline ExtensiveGame build_game(const Graph& g, int K, long long m, int s = 1,
                                MoveRule rule = MoveRule::stay_ok, size_t cap = 1'000'000) {
    if (m < 0) throw std::invalid_argument("horizon must be >= 0");
    if (s < 1) throw std::invalid_argument("robber speed must be >= 1");
    detail::GameBuilder b(g, K, m, s, rule, cap);
    return b.build();
}

// One line per node: id, player, infoset, children, payoff.
inline void dump_game(const ExtensiveGame& game, std::ostream& os) {
    for (size_t i = 0; i < game.nodes.size(); ++i) {
        const auto& n = game.nodes[i];
        os << i << '\t';
        switch (n.kind) {
            case GameNode::Kind::cop: os << "cop"; break;
            case GameNode::Kind::robber: os << "robber"; break;
            case GameNode::Kind::terminal: os << "terminal"; break;
        }
        os << '\t' << (n.infoset.empty() ? "-" : n.infoset) << '\t';
        if (n.children.empty()) {
            os << '-';
        } else {
            for (size_t c = 0; c < n.children.size(); ++c) {
                if (c) os << ' ';
                os << n.children[c].first << "->" << n.children[c].second;
            }
        }
        os << '\t';
        if (n.kind == GameNode::Kind::terminal)
            os << rat_str(n.payoff);
        else
            os << '-';
        os << '\n';
    }
}

}  // namespace cir
