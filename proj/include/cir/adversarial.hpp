#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cir/game_tree.hpp"
#include "cir/graph.hpp"
#include "cir/lp.hpp"
#include "cir/policy.hpp"
#include "cir/rational.hpp"
#include "cir/visible.hpp"

namespace cir {

// Payoff convention throughout: robber maximizes E[min(T, m)], cop minimizes.
// Turn m itself is never branched on: a game still alive entering turn m pays
// m no matter what either side does, so all recursions stop after the
// robber's move of turn m-1.

// --- deterministic robber plans -------------------------------------------------

// A pure robber strategy: placement keyed by the cop's start, moves keyed by
// (cop emission history, own position). Histories it never planned for fall
// back to a fixed default (lowest free vertex / stand still), which keeps it
// a complete, legal strategy.
struct RobberPlan {
    std::map<std::string, int> place;           // X0 label -> vertex
    std::map<std::string, int> move;            // "hist|r" -> destination

    int at_place(const Graph& g, const std::vector<int>& Z0, const std::string& label) const {
        if (auto it = place.find(label); it != place.end()) return it->second;
        for (int v = 0; v < g.n; ++v)
            if (std::find(Z0.begin(), Z0.end(), v) == Z0.end()) return v;
        return 0;
    }
    int at_move(const std::string& hist, int r) const {
        auto it = move.find(hist + "|" + std::to_string(r));
        return it == move.end() ? r : it->second;
    }
    std::string key() const {
        std::string s;
        for (auto& [k, v] : place) s += "P" + k + ">" + std::to_string(v) + ";";
        for (auto& [k, v] : move) s += "M" + k + ">" + std::to_string(v) + ";";
        return s;
    }
};

// --- cop emission trees ----------------------------------------------------------

// A cop mixed strategy seen from outside: a tree of emissions with branch
// probabilities. Root children are placements; deeper children are moves.
template <class S>
struct CopTree {
    struct Node {
        std::vector<int> Z;                       // emission (empty at the root)
        std::vector<std::pair<S, int>> kids;      // (probability, child index)
    };
    std::vector<Node> nodes;  // nodes[0] = root
    long long depth = 0;      // number of emission levels (placement = level 1)

    int add(std::vector<int> Z) {
        nodes.push_back({std::move(Z), {}});
        return static_cast<int>(nodes.size() - 1);
    }
};

// Cop tree of an explicit walk mixture (exact probabilities).
inline CopTree<Rational> cop_tree_from_walks(const CopSpace& space,
                                             const std::vector<std::vector<int>>& walks,
                                             const std::vector<Rational>& weights) {
    CopTree<Rational> tree;
    tree.add({});
    if (walks.empty()) return tree;
    tree.depth = static_cast<long long>(walks[0].size());
    struct Build {
        std::map<std::vector<int>, int> trie;  // (prefix of tuple ids) -> node
    } b;
    std::vector<Rational> node_mass{Rational(0)};
    for (size_t w = 0; w < walks.size(); ++w) {
        if (weights[w] == 0) continue;
        int cur = 0;
        node_mass[0] += weights[w];
        std::vector<int> prefix;
        for (int id : walks[w]) {
            prefix.push_back(id);
            auto it = b.trie.find(prefix);
            int child;
            if (it == b.trie.end()) {
                child = tree.add(space.tuples[id]);
                node_mass.push_back(Rational(0));
                b.trie.emplace(prefix, child);
                tree.nodes[cur].kids.emplace_back(Rational(0), child);
            } else {
                child = it->second;
            }
            node_mass[child] += weights[w];
            cur = child;
        }
    }
    // convert accumulated masses to conditional probabilities
    for (auto& node : tree.nodes)
        for (auto& [p, child] : node.kids) {
            int parent_idx = &node - tree.nodes.data();
            p = node_mass[child] / node_mass[parent_idx];
        }
    return tree;
}

// Cop tree of a strategy object, by exhaustive branch enumeration of its runs.
inline CopTree<Rational> cop_tree_from_strategy(const CopStrategy& strat, long long levels,
                                                size_t cap = 1'000'000) {
    auto probe = strat.start();
    if (!probe->exact_capable())
        throw std::invalid_argument("cop strategy does not support exact enumeration");
    CopTree<Rational> tree;
    tree.add({});
    tree.depth = levels;
    struct Item {
        int node;
        std::unique_ptr<CopRun> run;
        long long level;
    };
    std::vector<Item> stack;
    stack.push_back({0, strat.start(), 0});
    while (!stack.empty()) {
        auto [node, run, level] = std::move(stack.back());
        stack.pop_back();
        if (level >= levels) continue;
        for (const auto& [Z, p] : run->branches()) {
            if (tree.nodes.size() >= cap)
                throw std::runtime_error("cop strategy tree exceeds cap");
            int child = tree.add(Z);
            tree.nodes[node].kids.emplace_back(p, child);
            auto next = run->clone();
            next->apply(Z);
            stack.push_back({child, std::move(next), level + 1});
        }
    }
    return tree;
}

// --- robber best response (exact, against any cop tree) ---------------------------

template <class S>
struct RobberBr {
    S value{};
    RobberPlan plan;
};

namespace detail {

template <class S>
class RobberBrSolver {
  public:
    RobberBrSolver(const Graph& g, const CopTree<S>& tree, long long m, int s)
        : g_(&g), tree_(&tree), m_(m), s_(s) {}

    RobberBr<S> solve() {
        RobberBr<S> out;
        out.value = scalar_traits<S>::zero();
        for (const auto& [p, child] : tree_->nodes[0].kids) {
            const auto& Z0 = tree_->nodes[child].Z;
            std::string label = tuple_label(Z0);
            S best = scalar_traits<S>::zero();
            int best_r = -1;
            for (int r = 0; r < g_->n; ++r) {
                if (std::find(Z0.begin(), Z0.end(), r) != Z0.end()) continue;
                S v = value_at(child, r, 1, label);
                if (best_r < 0 || v > best) {
                    best = v;
                    best_r = r;
                }
            }
            if (best_r < 0) {  // cops cover every vertex: forced collision
                out.plan.place[label] = 0;
                continue;
            }
            out.plan.place[label] = best_r;
            out.value += p * best;
        }
        return finish(std::move(out));
    }

  private:
    RobberBr<S> finish(RobberBr<S> out) {
        out.plan.move = std::move(moves_);
        return out;
    }

    // Expected payoff with the robber alive at r after the cop emission of
    // turn t at `node` (t = 1 is the placement level).
    S value_at(int node, int r, long long t, const std::string& hist) {
        long long turn = t;  // turns elapsed = emissions seen
        if (turn > m_ - 1) return scalar_traits<S>::from_ratio(m_, 1);
        auto key = std::make_pair(node, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        S total = scalar_traits<S>::zero();
        for (const auto& [p, child] : tree_->nodes[node].kids) {
            const auto& Z = tree_->nodes[child].Z;
            std::string h2 = hist + ";" + tuple_label(Z);
            if (std::find(Z.begin(), Z.end(), r) != Z.end()) {
                total += p * scalar_traits<S>::from_ratio(turn, 1);
                continue;
            }
            S best{};
            int best_dest = -1;
            for (int dest : robber_reachable(*g_, Z, r, s_)) {
                S v;
                if (std::find(Z.begin(), Z.end(), dest) != Z.end())
                    v = scalar_traits<S>::from_ratio(turn, 1);
                else
                    v = value_at(child, dest, turn + 1, h2);
                if (best_dest < 0 || v > best) {
                    best = v;
                    best_dest = dest;
                }
            }
            moves_.emplace(h2 + "|" + std::to_string(r), best_dest);
            total += p * best;
        }
        memo_.emplace(key, total);
        return total;
    }

    const Graph* g_;
    const CopTree<S>* tree_;
    long long m_;
    int s_;
    std::map<std::pair<int, int>, S> memo_;
    std::map<std::string, int> moves_;
};

}  // namespace detail

// Exact best response of the robber against a cop emission tree: backward
// induction over (tree node, robber vertex), robber informed of the full
// history. Ties break toward the first-enumerated (lowest) vertex.
template <class S>
RobberBr<S> robber_best_response(const Graph& g, const CopTree<S>& tree, long long m, int s) {
    detail::RobberBrSolver<S> solver(g, tree, m, s);
    return solver.solve();
}

// Best response value against a strategy object (spec'd entry point).
inline RobberBr<Rational> best_response_value(const Graph& g, const CopStrategy& strat,
                                              long long m, int s = 1) {
    if (m == 0) {
        RobberBr<Rational> out;
        out.value = Rational(0);
        return out;
    }
    auto tree = cop_tree_from_strategy(strat, m, 1'000'000);
    return robber_best_response<Rational>(g, tree, m, s);
}

// --- cop best response against a mixture of robber plans --------------------------

struct CopBr {
    Rational value;
    std::vector<int> walk;  // tuple ids: placement + one entry per turn 1..m-1
};

namespace detail {

class CopBrSolver {
  public:
    CopBrSolver(const Graph& g, const CopSpace& space, const std::vector<RobberPlan>& plans,
                const std::vector<Rational>& y, long long m)
        : g_(&g), space_(&space), plans_(&plans), y_(&y), m_(m) {}

    CopBr solve() {
        CopBr out;
        bool first = true;
        for (size_t id = 0; id < space_->tuples.size(); ++id) {
            const auto& Z0 = space_->tuples[id];
            std::string label = tuple_label(Z0);
            std::vector<int> pos(plans_->size());
            Rational captured(0);
            for (size_t i = 0; i < plans_->size(); ++i) {
                int r = (*plans_)[i].at_place(*g_, Z0, label);
                if (std::find(Z0.begin(), Z0.end(), r) != Z0.end()) {
                    pos[i] = -1;  // captured at placement, payoff 0
                } else {
                    pos[i] = r;
                }
            }
            auto [v, suffix] = best(static_cast<int>(id), label, pos, captured, 1);
            if (first || v < out.value) {
                first = false;
                out.value = v;
                out.walk.clear();
                out.walk.push_back(static_cast<int>(id));
                out.walk.insert(out.walk.end(), suffix.begin(), suffix.end());
            }
        }
        return out;
    }

  private:
    // cops at tuple `cur` having played turns < t; per-plan positions (-1 =
    // already captured); `captured` = accumulated weighted payoff of the
    // captured plans. Returns min expected payoff and the argmin suffix.
    std::pair<Rational, std::vector<int>> best(int cur, const std::string& hist,
                                               const std::vector<int>& pos, Rational captured,
                                               long long t) {
        if (t > m_ - 1) {
            Rational v = captured;
            for (size_t i = 0; i < pos.size(); ++i)
                if (pos[i] >= 0) v += (*y_)[i] * Rational(m_);
            return {v, {}};
        }
        Rational bestv;
        std::vector<int> bestw;
        bool first = true;
        for (int nxt : space_->moves[cur]) {
            const auto& Z = space_->tuples[nxt];
            std::string h2 = hist + ";" + tuple_label(Z);
            std::vector<int> npos(pos.size());
            Rational ncap = captured;
            for (size_t i = 0; i < pos.size(); ++i) {
                int r = pos[i];
                if (r < 0) {
                    npos[i] = -1;
                    continue;
                }
                if (std::binary_search(Z.begin(), Z.end(), r)) {
                    ncap += (*y_)[i] * Rational(t);
                    npos[i] = -1;
                    continue;
                }
                int dest = (*plans_)[i].at_move(h2, r);
                if (std::binary_search(Z.begin(), Z.end(), dest)) {
                    ncap += (*y_)[i] * Rational(t);
                    npos[i] = -1;
                } else {
                    npos[i] = dest;
                }
            }
            auto [v, w] = best(nxt, h2, npos, ncap, t + 1);
            if (first || v < bestv) {
                first = false;
                bestv = v;
                bestw.clear();
                bestw.push_back(nxt);
                bestw.insert(bestw.end(), w.begin(), w.end());
            }
        }
        return {bestv, bestw};
    }

    const Graph* g_;
    const CopSpace* space_;
    const std::vector<RobberPlan>* plans_;
    const std::vector<Rational>* y_;
    long long m_;
};

}  // namespace detail

inline CopBr cop_best_response(const Graph& g, const CopSpace& space,
                               const std::vector<RobberPlan>& plans,
                               const std::vector<Rational>& y, long long m) {
    detail::CopBrSolver solver(g, space, plans, y, m);
    return solver.solve();
}

// Exact payoff of one deterministic walk against one robber plan.
inline Rational replay_payoff(const Graph& g, const CopSpace& space, const std::vector<int>& walk,
                              const RobberPlan& plan, long long m) {
    const auto& Z0 = space.tuples[walk[0]];
    std::string hist = detail::tuple_label(Z0);
    int r = plan.at_place(g, Z0, hist);
    if (std::find(Z0.begin(), Z0.end(), r) != Z0.end()) return Rational(0);
    for (long long t = 1; t < static_cast<long long>(walk.size()); ++t) {
        const auto& Z = space.tuples[walk[t]];
        hist += ";" + detail::tuple_label(Z);
        if (std::binary_search(Z.begin(), Z.end(), r)) return Rational(t);
        int dest = plan.at_move(hist, r);
        if (std::binary_search(Z.begin(), Z.end(), dest)) return Rational(t);
        r = dest;
    }
    return Rational(m);
}

// --- solve reports -----------------------------------------------------------------

struct SolveReport {
    Rational value_exact;       // meaningful for method == "exact"
    double value = 0.0;
    double exploitability = 0.0;
    std::string method;
    long long horizon = 0;
    long long iterations = 0;
    // behavioral strategies on the reachable support:
    //   cop_policy:  "" (placement) or cop history -> [(tuple label, prob)]
    //   rob_policy:  "place|X0" or "hist|r" -> [(vertex, prob)]
    std::map<std::string, std::vector<std::pair<std::string, double>>> cop_policy;
    std::map<std::string, std::vector<std::pair<std::string, double>>> rob_policy;
};

namespace detail {

// Cop behavioral tables from a walk mixture.
inline void fill_cop_policy(SolveReport& rep, const CopSpace& space,
                            const std::vector<std::vector<int>>& walks,
                            const std::vector<Rational>& x) {
    auto tree = cop_tree_from_walks(space, walks, x);
    struct Walk {
        const CopTree<Rational>* tree;
        SolveReport* rep;
        void go(int node, const std::string& hist) {
            if (tree->nodes[node].kids.empty()) return;
            auto& row = rep->cop_policy[hist];
            for (const auto& [p, child] : tree->nodes[node].kids) {
                std::string label = tuple_label(tree->nodes[child].Z);
                row.emplace_back(label, to_double(p));
                go(child, hist.empty() ? label : hist + ";" + label);
            }
        }
    } w{&tree, &rep};
    w.go(0, "");
}

// Robber behavioral tables from a plan mixture, on the support of the cop
// walk mixture.
inline void fill_rob_policy(SolveReport& rep, const Graph& g, const CopSpace& space,
                            const std::vector<std::vector<int>>& walks,
                            const std::vector<Rational>& x, const std::vector<RobberPlan>& plans,
                            const std::vector<Rational>& y, long long m) {
    auto tree = cop_tree_from_walks(space, walks, x);
    struct Walk {
        const Graph* g;
        const CopTree<Rational>* tree;
        const std::vector<RobberPlan>* plans;
        const std::vector<Rational>* y;
        SolveReport* rep;
        long long m;

        void place(int root) {
            for (const auto& [p, child] : tree->nodes[root].kids) {
                const auto& Z0 = tree->nodes[child].Z;
                std::string label = tuple_label(Z0);
                std::map<int, double> dist;
                std::vector<int> pos(plans->size(), -1);
                for (size_t i = 0; i < plans->size(); ++i) {
                    if ((*y)[i] == 0) continue;
                    int r = (*plans)[i].at_place(*g, Z0, label);
                    dist[r] += to_double((*y)[i]);
                    if (std::find(Z0.begin(), Z0.end(), r) == Z0.end()) pos[i] = r;
                }
                auto& row = rep->rob_policy["place|" + label];
                for (auto& [r, pr] : dist) row.emplace_back(std::to_string(r), pr);
                go(child, label, pos, 1);
            }
        }

        void go(int node, const std::string& hist, const std::vector<int>& pos, long long t) {
            if (t > m - 1) return;
            for (const auto& [p, child] : tree->nodes[node].kids) {
                const auto& Z = tree->nodes[child].Z;
                std::string h2 = hist + ";" + tuple_label(Z);
                // group surviving plans by their current position
                std::map<int, std::map<int, double>> by_pos;  // r -> dest -> weight
                std::vector<int> npos(pos.size(), -1);
                for (size_t i = 0; i < pos.size(); ++i) {
                    int r = pos[i];
                    if (r < 0 || (*y)[i] == 0) continue;
                    if (std::binary_search(Z.begin(), Z.end(), r)) continue;  // captured
                    int dest = (*plans)[i].at_move(h2, r);
                    by_pos[r][dest] += to_double((*y)[i]);
                    if (!std::binary_search(Z.begin(), Z.end(), dest)) npos[i] = dest;
                }
                for (auto& [r, dists] : by_pos) {
                    double tot = 0;
                    for (auto& [dest, w] : dists) tot += w;
                    auto& row = rep->rob_policy[h2 + "|" + std::to_string(r)];
                    if (!row.empty()) continue;  // already recorded via another branch? keep first
                    for (auto& [dest, w] : dists) row.emplace_back(std::to_string(dest), w / tot);
                }
                go(child, h2, npos, t + 1);
            }
        }
    } w{&g, &tree, &plans, &y, &rep, m};
    w.place(0);
}

}  // namespace detail

// --- exact solver (double oracle over walks and plans) ----------------------------

// Exact value of the m-truncated game: column generation over deterministic
// cop walks and deterministic robber plans, with an exact matrix-game LP on
// the restricted sets and exact best responses as the oracles. Terminates
// when neither side can improve, i.e. at an equilibrium of the full game.
inline SolveReport solve_exact(const Graph& g, int K, long long m, int s = 1,
                               MoveRule rule = MoveRule::stay_ok, size_t max_iter = 500) {
    SolveReport rep;
    rep.method = "exact";
    rep.horizon = m;
    if (m == 0) {
        rep.value_exact = Rational(0);
        return rep;
    }
    CopSpace space = build_cop_space(g, K, rule);

    std::vector<std::vector<int>> walks;
    std::vector<RobberPlan> plans;
    std::map<std::string, bool> plan_seen, walk_seen;

    auto walk_key = [](const std::vector<int>& w) {
        std::string k;
        for (int id : w) k += std::to_string(id) + ",";
        return k;
    };

    {  // seed: an arbitrary legal walk from tuple 0, and the best response to it
        std::vector<int> w0{0};
        long long t = 1;
        int cur = 0;
        while (t <= m - 1) {
            int nxt = space.moves[cur].empty() ? cur : space.moves[cur][0];
            w0.push_back(nxt);
            cur = nxt;
            ++t;
        }
        walks.push_back(w0);
        walk_seen[walk_key(w0)] = true;
        auto tree = cop_tree_from_walks(space, walks, {Rational(1)});
        auto br = robber_best_response<Rational>(g, tree, m, s);
        plans.push_back(br.plan);
        plan_seen[br.plan.key()] = true;
    }

    Rational v;
    std::vector<Rational> x, y;
    for (size_t iter = 0;; ++iter) {
        if (iter >= max_iter) throw std::runtime_error("double oracle failed to converge");
        // restricted game: rows = plans (maximizer), cols = walks (minimizer)
        std::vector<std::vector<Rational>> A(plans.size(),
                                             std::vector<Rational>(walks.size()));
        for (size_t i = 0; i < plans.size(); ++i)
            for (size_t j = 0; j < walks.size(); ++j)
                A[i][j] = replay_payoff(g, space, walks[j], plans[i], m);
        auto sol = solve_matrix_game(A);
        v = sol.value;
        y = sol.row;
        x = sol.col;

        auto tree = cop_tree_from_walks(space, walks, x);
        auto rbr = robber_best_response<Rational>(g, tree, m, s);
        auto cbr = cop_best_response(g, space, plans, y, m);
        rep.iterations = static_cast<long long>(iter + 1);

        bool grew = false;
        if (rbr.value > v && !plan_seen[rbr.plan.key()]) {
            plans.push_back(rbr.plan);
            plan_seen[rbr.plan.key()] = true;
            grew = true;
        }
        if (cbr.value < v && !walk_seen[walk_key(cbr.walk)]) {
            walks.push_back(cbr.walk);
            walk_seen[walk_key(cbr.walk)] = true;
            grew = true;
        }
        if (!grew) {
            if (rbr.value != v || cbr.value != v)
                throw std::logic_error("double oracle stalled off-equilibrium");
            break;
        }
    }

    rep.value_exact = v;
    rep.value = to_double(v);
    rep.exploitability = 0.0;
    detail::fill_cop_policy(rep, space, walks, x);
    detail::fill_rob_policy(rep, g, space, walks, x, plans, y, m);
    return rep;
}

// --- iterative solver (regret matching with exact exploitability) ------------------

namespace detail {

class CfrSolver {
  public:
    CfrSolver(const Graph& g, int K, long long m, int s, MoveRule rule)
        : g_(&g), m_(m), s_(s), space_(build_cop_space(g, K, rule)) {
        trie_.push_back(TrieNode{});           // root (pre-placement)
        trie_[0].cur = -1;
        cop_is_.push_back(CopIs{});            // placement infoset
        for (size_t id = 0; id < space_.tuples.size(); ++id)
            cop_is_[0].actions.push_back(static_cast<int>(id));
        cop_is_[0].init();
        trie_[0].is = 0;
    }

    void iterate(long long iters) {
        for (long long it = 0; it < iters; ++it) {
            ++iter_count_;
            double w = static_cast<double>(iter_count_);  // linear averaging
            cfr_root(w);
        }
    }

    double avg_value() {
        return eval_root();
    }

    // exploitability = robber BR vs avg cop - cop BR vs avg robber
    std::pair<double, double> br_values() {
        auto tree = avg_cop_tree();
        auto rbr = robber_best_response<double>(*g_, tree, m_, s_);
        double vc = cop_br_vs_avg();
        return {rbr.value, vc};
    }

    void fill_policies(SolveReport& rep) {
        fill_cop(rep, 0, "");
        fill_rob(rep, 0, "");
    }

    long long iterations() const { return iter_count_; }

  private:
    struct CopIs {
        std::vector<int> actions;  // tuple ids
        std::vector<double> regret, ssum;
        void init() {
            regret.assign(actions.size(), 0.0);
            ssum.assign(actions.size(), 0.0);
        }
        std::vector<double> sigma() const {
            std::vector<double> s(actions.size());
            double tot = 0;
            for (size_t i = 0; i < s.size(); ++i) tot += std::max(0.0, regret[i]);
            if (tot <= 0) {
                std::fill(s.begin(), s.end(), 1.0 / s.size());
            } else {
                for (size_t i = 0; i < s.size(); ++i) s[i] = std::max(0.0, regret[i]) / tot;
            }
            return s;
        }
        std::vector<double> avg() const {
            std::vector<double> s(actions.size());
            double tot = 0;
            for (double x : ssum) tot += x;
            if (tot <= 0) {
                std::fill(s.begin(), s.end(), 1.0 / s.size());
            } else {
                for (size_t i = 0; i < s.size(); ++i) s[i] = ssum[i] / tot;
            }
            return s;
        }
    };
    struct RobIs : CopIs {};       // actions here are destination vertices
    struct TrieNode {
        int cur = -1;              // tuple id emitted at this node (-1 root)
        int is = -1;               // cop infoset for the NEXT cop decision
        std::map<int, int> kids;   // next tuple id -> trie node
    };

    int trie_child(int node, int tuple_id) {
        auto it = trie_[node].kids.find(tuple_id);
        if (it != trie_[node].kids.end()) return it->second;
        int child = static_cast<int>(trie_.size());
        TrieNode tn;
        tn.cur = tuple_id;
        trie_.push_back(tn);
        trie_[node].kids.emplace(tuple_id, child);
        return child;
    }

    CopIs& cop_infoset(int node) {
        if (trie_[node].is < 0) {
            CopIs is;
            for (int nxt : space_.moves[trie_[node].cur]) is.actions.push_back(nxt);
            is.init();
            trie_[node].is = static_cast<int>(cop_is_.size());
            cop_is_.push_back(std::move(is));
        }
        return cop_is_[trie_[node].is];
    }

    RobIs& rob_infoset(long long key, const std::vector<int>& Z, int r, bool placement) {
        auto it = rob_is_.find(key);
        if (it != rob_is_.end()) return it->second;
        RobIs is;
        if (placement) {
            for (int v = 0; v < g_->n; ++v) is.actions.push_back(v);
        } else {
            is.actions = robber_reachable(*g_, Z, r, s_);
        }
        is.init();
        return rob_is_.emplace(key, std::move(is)).first->second;
    }

    long long rob_key(int trie_node, int r) const {
        return static_cast<long long>(trie_node) * (g_->n + 1) + (r < 0 ? g_->n : r);
    }

    // --- one CFR sweep (simultaneous regret updates, regret-matching+) ---
    void cfr_root(double w) {
        CopIs& cis = cop_is_[0];
        auto sig = cis.sigma();
        std::vector<double> util(cis.actions.size(), 0.0);
        double node_u = 0;
        for (size_t a = 0; a < cis.actions.size(); ++a) {
            int id = cis.actions[a];
            int child = trie_child(0, id);
            util[a] = cfr_place(child, id, sig[a], w);
            node_u += sig[a] * util[a];
        }
        for (size_t a = 0; a < cis.actions.size(); ++a) {
            cis.regret[a] = std::max(0.0, cis.regret[a] + (node_u - util[a]));
            cis.ssum[a] += w * sig[a];
        }
    }

    double cfr_place(int node, int tuple_id, double pi_c, double w) {
        const auto& Z0 = space_.tuples[tuple_id];
        long long key = rob_key(node, -1);
        RobIs& ris = rob_infoset(key, Z0, -1, true);
        auto sig = ris.sigma();
        std::vector<double> util(ris.actions.size(), 0.0);
        double node_u = 0;
        for (size_t a = 0; a < ris.actions.size(); ++a) {
            int r = ris.actions[a];
            if (std::find(Z0.begin(), Z0.end(), r) != Z0.end())
                util[a] = 0.0;
            else
                util[a] = cfr_turn(node, r, 1, pi_c, sig[a], w);
            node_u += sig[a] * util[a];
        }
        for (size_t a = 0; a < ris.actions.size(); ++a) {
            ris.regret[a] = std::max(0.0, ris.regret[a] + pi_c * (util[a] - node_u));
            ris.ssum[a] += w * sig[a];
        }
        return node_u;
    }

    double cfr_turn(int node, int r, long long t, double pi_c, double pi_r, double w) {
        if (t > m_ - 1) return static_cast<double>(m_);
        CopIs& cis = cop_infoset(node);
        auto sig = cis.sigma();
        std::vector<double> util(cis.actions.size(), 0.0);
        double node_u = 0;
        for (size_t a = 0; a < cis.actions.size(); ++a) {
            int id = cis.actions[a];
            const auto& Z = space_.tuples[id];
            int child = trie_child(node, id);
            if (std::binary_search(Z.begin(), Z.end(), r))
                util[a] = static_cast<double>(t);
            else
                util[a] = cfr_rob(child, id, r, t, pi_c * sig[a], pi_r, w);
            node_u += sig[a] * util[a];
        }
        for (size_t a = 0; a < cis.actions.size(); ++a) {
            cis.regret[a] = std::max(0.0, cis.regret[a] + pi_r * (node_u - util[a]));
            cis.ssum[a] += w * pi_c * sig[a];
        }
        return node_u;
    }

    double cfr_rob(int node, int tuple_id, int r, long long t, double pi_c, double pi_r,
                   double w) {
        const auto& Z = space_.tuples[tuple_id];
        long long key = rob_key(node, r);
        RobIs& ris = rob_infoset(key, Z, r, false);
        auto sig = ris.sigma();
        std::vector<double> util(ris.actions.size(), 0.0);
        double node_u = 0;
        for (size_t a = 0; a < ris.actions.size(); ++a) {
            int dest = ris.actions[a];
            if (std::binary_search(Z.begin(), Z.end(), dest))
                util[a] = static_cast<double>(t);
            else
                util[a] = cfr_turn(node, dest, t + 1, pi_c, pi_r * sig[a], w);
            node_u += sig[a] * util[a];
        }
        for (size_t a = 0; a < ris.actions.size(); ++a) {
            ris.regret[a] = std::max(0.0, ris.regret[a] + pi_c * (util[a] - node_u));
            ris.ssum[a] += w * pi_r * sig[a];
        }
        return node_u;
    }

    // --- average-strategy machinery ---

    CopTree<double> avg_cop_tree() {
        CopTree<double> tree;
        tree.add({});
        tree.depth = m_;
        build_avg(tree, 0, 0, 1);
        return tree;
    }
    void build_avg(CopTree<double>& tree, int trie_node, int tree_node, long long level) {
        if (level > m_) return;
        std::vector<double> sigma;
        std::vector<int> actions;
        if (trie_node == 0) {
            sigma = cop_is_[0].avg();
            actions = cop_is_[0].actions;
        } else if (trie_[trie_node].is >= 0) {
            sigma = cop_is_[trie_[trie_node].is].avg();
            actions = cop_is_[trie_[trie_node].is].actions;
        } else {  // never visited: uniform over legal moves
            for (int nxt : space_.moves[trie_[trie_node].cur]) actions.push_back(nxt);
            sigma.assign(actions.size(), 1.0 / actions.size());
        }
        for (size_t a = 0; a < actions.size(); ++a) {
            if (sigma[a] <= 0) continue;
            int child = tree.add(space_.tuples[actions[a]]);
            tree.nodes[tree_node].kids.emplace_back(sigma[a], child);
            int tchild = trie_child(trie_node, actions[a]);
            build_avg(tree, tchild, child, level + 1);
        }
    }

    std::vector<double> rob_avg_at(int trie_node, int r, const std::vector<int>& Z, bool placement,
                                   std::vector<int>& actions_out) {
        long long key = rob_key(trie_node, placement ? -1 : r);
        auto it = rob_is_.find(key);
        if (it != rob_is_.end()) {
            actions_out = it->second.actions;
            return it->second.avg();
        }
        if (placement) {
            for (int v = 0; v < g_->n; ++v) actions_out.push_back(v);
        } else {
            actions_out = robber_reachable(*g_, Z, r, s_);
        }
        return std::vector<double>(actions_out.size(), 1.0 / actions_out.size());
    }

    // forward expected value of the average strategy pair
    double eval_root() {
        auto csig = cop_is_[0].avg();
        double v = 0;
        for (size_t a = 0; a < cop_is_[0].actions.size(); ++a) {
            if (csig[a] <= 0) continue;
            int id = cop_is_[0].actions[a];
            int node = trie_child(0, id);
            const auto& Z0 = space_.tuples[id];
            std::vector<int> racts;
            auto rsig = rob_avg_at(node, -1, Z0, true, racts);
            double pv = 0;
            for (size_t b = 0; b < racts.size(); ++b) {
                if (rsig[b] <= 0) continue;
                int r = racts[b];
                if (std::find(Z0.begin(), Z0.end(), r) != Z0.end()) continue;  // payoff 0
                pv += rsig[b] * eval_turn(node, r, 1);
            }
            v += csig[a] * pv;
        }
        return v;
    }
    double eval_turn(int node, int r, long long t) {
        if (t > m_ - 1) return static_cast<double>(m_);
        std::vector<double> sigma;
        std::vector<int> actions;
        if (trie_[node].is >= 0) {
            sigma = cop_is_[trie_[node].is].avg();
            actions = cop_is_[trie_[node].is].actions;
        } else {
            for (int nxt : space_.moves[trie_[node].cur]) actions.push_back(nxt);
            sigma.assign(actions.size(), 1.0 / actions.size());
        }
        double v = 0;
        for (size_t a = 0; a < actions.size(); ++a) {
            if (sigma[a] <= 0) continue;
            int id = actions[a];
            const auto& Z = space_.tuples[id];
            int child = trie_child(node, id);
            if (std::binary_search(Z.begin(), Z.end(), r)) {
                v += sigma[a] * static_cast<double>(t);
                continue;
            }
            std::vector<int> racts;
            auto rsig = rob_avg_at(child, r, Z, false, racts);
            double rv = 0;
            for (size_t b = 0; b < racts.size(); ++b) {
                if (rsig[b] <= 0) continue;
                int dest = racts[b];
                if (std::binary_search(Z.begin(), Z.end(), dest))
                    rv += rsig[b] * static_cast<double>(t);
                else
                    rv += rsig[b] * eval_turn(child, dest, t + 1);
            }
            v += sigma[a] * rv;
        }
        return v;
    }

    // cop best response against the average robber strategy (carries the
    // alive-mass distribution over robber positions)
    double cop_br_vs_avg() {
        double best = 0;
        bool first = true;
        for (size_t id = 0; id < space_.tuples.size(); ++id) {
            const auto& Z0 = space_.tuples[id];
            int node = trie_child(0, static_cast<int>(id));
            std::vector<int> racts;
            auto rsig = rob_avg_at(node, -1, Z0, true, racts);
            std::vector<double> pi(g_->n, 0.0);
            for (size_t b = 0; b < racts.size(); ++b) {
                int r = racts[b];
                if (std::find(Z0.begin(), Z0.end(), r) == Z0.end()) pi[r] += rsig[b];
                // mass placed onto cops pays 0 and vanishes
            }
            double v = br_turn(node, pi, 0.0, 1);
            if (first || v < best) {
                first = false;
                best = v;
            }
        }
        return best;
    }
    double br_turn(int node, const std::vector<double>& pi, double captured, long long t) {
        double alive = 0;
        for (double x : pi) alive += x;
        if (t > m_ - 1) return captured + alive * static_cast<double>(m_);
        double best = 0;
        bool first = true;
        for (int id : space_.moves[trie_[node].cur]) {
            const auto& Z = space_.tuples[id];
            int child = trie_child(node, id);
            double cap2 = captured;
            std::vector<double> pi2(g_->n, 0.0);
            for (int r = 0; r < g_->n; ++r) {
                if (pi[r] <= 0) continue;
                if (std::binary_search(Z.begin(), Z.end(), r)) {
                    cap2 += pi[r] * static_cast<double>(t);
                    continue;
                }
                std::vector<int> racts;
                auto rsig = rob_avg_at(child, r, Z, false, racts);
                for (size_t b = 0; b < racts.size(); ++b) {
                    int dest = racts[b];
                    double mass = pi[r] * rsig[b];
                    if (mass <= 0) continue;
                    if (std::binary_search(Z.begin(), Z.end(), dest))
                        cap2 += mass * static_cast<double>(t);
                    else
                        pi2[dest] += mass;
                }
            }
            double v = br_turn(child, pi2, cap2, t + 1);
            if (first || v < best) {
                first = false;
                best = v;
            }
        }
        return first ? captured + alive * static_cast<double>(m_) : best;
    }

    void fill_cop(SolveReport& rep, int trie_node, const std::string& hist) {
        std::vector<double> sigma;
        std::vector<int> actions;
        if (trie_node == 0) {
            sigma = cop_is_[0].avg();
            actions = cop_is_[0].actions;
        } else if (trie_[trie_node].is >= 0) {
            sigma = cop_is_[trie_[trie_node].is].avg();
            actions = cop_is_[trie_[trie_node].is].actions;
        } else {
            return;
        }
        auto& row = rep.cop_policy[hist];
        for (size_t a = 0; a < actions.size(); ++a) {
            if (sigma[a] <= 1e-9) continue;
            std::string label = tuple_label(space_.tuples[actions[a]]);
            row.emplace_back(label, sigma[a]);
            auto it = trie_[trie_node].kids.find(actions[a]);
            if (it != trie_[trie_node].kids.end())
                fill_cop(rep, it->second, hist.empty() ? label : hist + ";" + label);
        }
    }

    void fill_rob(SolveReport& rep, int trie_node, const std::string& hist) {
        if (trie_node != 0) {
            auto emit = [&](const RobIs& ris, const std::string& row_key) {
                auto& row = rep.rob_policy[row_key];
                auto sigma = ris.avg();
                for (size_t a = 0; a < ris.actions.size(); ++a)
                    if (sigma[a] > 1e-9)
                        row.emplace_back(std::to_string(ris.actions[a]), sigma[a]);
            };
            if (auto it = rob_is_.find(rob_key(trie_node, -1)); it != rob_is_.end())
                emit(it->second, "place|" + tuple_label(space_.tuples[trie_[trie_node].cur]));
            for (int r = 0; r < g_->n; ++r)
                if (auto it = rob_is_.find(rob_key(trie_node, r)); it != rob_is_.end())
                    emit(it->second, hist + "|" + std::to_string(r));
        }
        auto kids = trie_[trie_node].kids;  // detach from trie_ before recursing
        for (const auto& [id, child] : kids) {
            std::string label = tuple_label(space_.tuples[id]);
            fill_rob(rep, child, hist.empty() ? label : hist + ";" + label);
        }
    }

    const Graph* g_;
    long long m_;
    int s_;
    CopSpace space_;
    std::vector<TrieNode> trie_;
    // Deque, not vector: cfr_root/cfr_turn hold a reference to the current
    // infoset across recursive calls that append new infosets, so growth must
    // never invalidate references to existing elements.
    std::deque<CopIs> cop_is_;
    std::unordered_map<long long, RobIs> rob_is_;
    long long iter_count_ = 0;
};

}  // namespace detail

// Regret-matching self-play on the truncated game, reporting the average
// strategy pair, its expected value, and an exactly computed exploitability
// gap (robber best response minus cop best response). Missing the target is
// reported, not thrown.
inline SolveReport solve_iterative(const Graph& g, int K, long long m, long long iters,
                                   double target_exploitability = 0.0, int s = 1,
                                   MoveRule rule = MoveRule::stay_ok) {
    if (iters < 1) throw std::invalid_argument("need at least one iteration");
    SolveReport rep;
    rep.method = "iterative";
    rep.horizon = m;
    if (m == 0) {
        rep.value_exact = Rational(0);
        rep.iterations = iters;
        return rep;
    }
    detail::CfrSolver solver(g, K, m, s, rule);
    long long done = 0;
    long long batch = std::max<long long>(1, std::min<long long>(iters, 10));
    double gap = 0;
    while (done < iters) {
        long long todo = std::min(batch, iters - done);
        solver.iterate(todo);
        done += todo;
        auto [vr, vc] = solver.br_values();
        gap = vr - vc;
        if (gap <= target_exploitability) break;
        batch = std::min<long long>(batch * 2, 200);
    }
    rep.iterations = solver.iterations();
    rep.value = solver.avg_value();
    rep.exploitability = gap;
    solver.fill_policies(rep);
    return rep;
}

}  // namespace cir
