#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cir/closed_forms.hpp"
#include "cir/graph.hpp"
#include "cir/rational.hpp"
#include "cir/visible.hpp"

namespace cir {

// Quantities tracked by the catalog: adversarial expected capture time,
// drunk expected capture time, and their ratio.
enum class Quantity { ct_i, dct_i, F_i };
enum class BoundKind { lower, upper, exact };

inline const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::ct_i: return "ct_i";
        case Quantity::dct_i: return "dct_i";
        default: return "F_i";
    }
}
inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::lower: return "lower";
        case BoundKind::upper: return "upper";
        default: return "exact";
    }
}

// One catalog entry. `asymptotic` marks leading-order-only constants (the
// hidden 1+o(1) factors make them unusable in certified bracket checks);
// `exact` carries the rational when the constant is exact.
struct BoundRecord {
    std::string family;  // instance spec, e.g. "star:3"
    std::string params;  // extra qualifiers, e.g. "K=2" or "s=inf"
    Quantity quantity = Quantity::ct_i;
    BoundKind kind = BoundKind::exact;
    bool asymptotic = false;
    double value = 0.0;
    std::optional<Rational> exact;
    std::string source;
};

namespace detail {

inline BoundRecord rec(std::string family, std::string params, Quantity q, BoundKind k,
                       Rational v, std::string source, bool asym = false) {
    BoundRecord r;
    r.family = std::move(family);
    r.params = std::move(params);
    r.quantity = q;
    r.kind = k;
    r.asymptotic = asym;
    r.value = to_double(v);
    r.exact = std::move(v);
    r.source = std::move(source);
    return r;
}

inline BoundRecord rec_d(std::string family, std::string params, Quantity q, BoundKind k,
                         double v, std::string source, bool asym = false) {
    BoundRecord r;
    r.family = std::move(family);
    r.params = std::move(params);
    r.quantity = q;
    r.kind = k;
    r.asymptotic = asym;
    r.value = v;
    r.source = std::move(source);
    return r;
}

}  // namespace detail

// Every catalog value applicable to the given family instance. Exact
// constants are emitted as exact rationals; leading-order constants carry
// the asymptotic flag. Unknown families yield an empty list.
inline std::vector<BoundRecord> family_values(const Graph& g) {
    using detail::rec;
    using detail::rec_d;
    std::vector<BoundRecord> out;
    std::string fam = g.spec();
    switch (g.family) {
        case Family::star: {
            int N = g.fam_N;
            out.push_back(rec(fam, "K=1", Quantity::ct_i, BoundKind::exact, Rational(N),
                              "star-exact"));
            out.push_back(rec(fam, "K=1", Quantity::dct_i, BoundKind::exact, rat(N, N + 1),
                              "star-exact"));
            out.push_back(rec(fam, "K=1", Quantity::F_i, BoundKind::exact, Rational(N + 1),
                              "star-exact"));
            break;
        }
        case Family::path: {
            int n = g.n;
            out.push_back(rec(fam, "K=1", Quantity::ct_i, BoundKind::exact, Rational(n - 1),
                              "path-sweep-exact"));
            out.push_back(rec(fam, "K=1", Quantity::dct_i, BoundKind::upper, rat(n - 1, 2),
                              "path-half-speed-sweep"));
            out.push_back(rec(fam, "K=1", Quantity::dct_i, BoundKind::lower, rat(n, 2),
                              "path-drunk-leading", true));
            out.push_back(rec(fam, "K=1", Quantity::F_i, BoundKind::exact, Rational(2),
                              "path-cod-leading", true));
            break;
        }
        case Family::cycle: {
            int n = g.n;
            // catalog value as stated; even n is cross-checked by the solver,
            // which records any discrepancy instead of resolving it
            out.push_back(rec(fam, "K=2", Quantity::ct_i, BoundKind::exact, rat(n - 1, 2),
                              "cycle-two-cop-catalog"));
            out.push_back(rec(fam, "K=2", Quantity::dct_i, BoundKind::upper, rat(n - 1, 4),
                              "cycle-quarter-sweep"));
            out.push_back(rec(fam, "K=2", Quantity::dct_i, BoundKind::lower, rat(n, 4),
                              "cycle-drunk-leading", true));
            out.push_back(rec(fam, "K=2", Quantity::F_i, BoundKind::exact, Rational(2),
                              "cycle-cod-leading", true));
            break;
        }
        case Family::tree: {
            int d = g.fam_d, L = g.fam_L;
            if (L >= 2) {
                auto tb = tree_adversarial_bounds(d, L);
                out.push_back(rec(fam, "K=1", Quantity::ct_i, BoundKind::upper,
                                  Rational(tb.upper), "tree-preleaf-rounds"));
                out.push_back(rec(fam, "K=1", Quantity::ct_i, BoundKind::lower,
                                  Rational(tb.lower), "tree-distance2-evasion"));
            }
            BigInt dl1 = 1;
            for (int k = 0; k < L - 1; ++k) dl1 *= d;
            out.push_back(rec(fam, "K=1", Quantity::ct_i, BoundKind::lower,
                              rat(BigInt(2 * L) * dl1 * (d - 1), d), "tree-lower-leading",
                              true));
            out.push_back(rec(fam, "K=1", Quantity::ct_i, BoundKind::upper,
                              Rational(BigInt(2 * L) * dl1), "tree-upper-leading", true));
            out.push_back(rec(fam, "K=1", Quantity::dct_i, BoundKind::upper,
                              tree_root_ect_deepest(d, L), "tree-root-stationary"));
            auto dl = drunk_degree_lower(metrics(g), 1);
            if (dl.applicable)
                out.push_back(rec_d(fam, "K=1", Quantity::dct_i, BoundKind::lower, dl.value,
                                    "drunk-degree-lower"));
            break;
        }
        case Family::grid: {
            int N = g.fam_N;
            long long n = g.n;
            BigInt pw = 1;
            for (int k = 0; k < N - 1; ++k) pw *= 5;
            out.push_back(rec(fam, "K=2", Quantity::ct_i, BoundKind::upper,
                              Rational(BigInt(3 * N - 1) * n * pw), "grid-guess-rounds"));
            if (g.n > 2) {
                auto dl = drunk_degree_lower(metrics(g), 2);
                if (dl.applicable)
                    out.push_back(rec_d(fam, "K=2", Quantity::dct_i, BoundKind::lower, dl.value,
                                        "drunk-degree-lower"));
            }
            break;
        }
        case Family::broom: {
            double c = g.fam_c;
            double n = static_cast<double>(g.n);
            out.push_back(rec_d(fam, "K=1", Quantity::ct_i, BoundKind::exact, n,
                                "broom-endpoint-sweep", true));
            out.push_back(rec_d(fam, "K=1", Quantity::dct_i, BoundKind::exact, c * c * n / 2,
                                "broom-drunk-leading", true));
            out.push_back(rec_d(fam, "K=1", Quantity::F_i, BoundKind::exact, 2 / (c * c),
                                "broom-cod-leading", true));
            break;
        }
        default:
            break;
    }
    return out;
}

// Universal adversarial upper bound from guess-and-chase rounds:
// (T_hat + D) * (Delta + 1)^T_hat * n, with T_hat from the visible game.
inline BigInt guess_round_graph_upper(const Graph& g, int K, MoveRule rule = MoveRule::stay_ok) {
    auto vis = visible_solve(g, K, rule);
    if (!vis.guaranteed)
        throw std::invalid_argument("cops cannot guarantee capture in the visible game");
    Metrics m = metrics(g);
    return guess_round_upper(vis.t_hat, m.diameter, m.max_deg, g.n);
}

// Limits for the infinitely fast robber: drunk value (n-K)/n, and the cost
// of drunkenness for the families whose adversarial value is known.
inline std::vector<BoundRecord> infspeed_report(const Graph& g, int K) {
    using detail::rec;
    std::vector<BoundRecord> out;
    std::string fam = g.spec();
    out.push_back(rec(fam, "s=inf", Quantity::dct_i, BoundKind::exact,
                      infspeed_drunk_limit(g.n, K), "speed-limit-drunk"));
    if (auto f = infspeed_cod_limit(g, K))
        out.push_back(rec(fam, "s=inf", Quantity::F_i, BoundKind::exact, *f,
                          "speed-limit-cod"));
    return out;
}

// --- consistency checks -------------------------------------------------------

// Violations of the certified-record invariants: for each quantity,
// max(lower) <= min(upper) with exact records inside the bracket, and every
// F_i record >= 1. Asymptotic records are exempt. Empty result = consistent.
inline std::vector<std::string> bounds_violations(const std::vector<BoundRecord>& records) {
    std::vector<std::string> bad;
    for (int qi = 0; qi < 3; ++qi) {
        auto q = static_cast<Quantity>(qi);
        std::optional<Rational> lo, hi;
        std::vector<Rational> exacts;
        for (const auto& r : records) {
            if (r.quantity != q || r.asymptotic || !r.exact) continue;
            if (r.kind == BoundKind::lower && (!lo || *r.exact > *lo)) lo = r.exact;
            if (r.kind == BoundKind::upper && (!hi || *r.exact < *hi)) hi = r.exact;
            if (r.kind == BoundKind::exact) exacts.push_back(*r.exact);
        }
        auto name = std::string(to_string(q));
        if (lo && hi && *lo > *hi) bad.push_back(name + ": lower exceeds upper");
        for (const auto& v : exacts) {
            if (lo && v < *lo) bad.push_back(name + ": exact value below lower bound");
            if (hi && v > *hi) bad.push_back(name + ": exact value above upper bound");
        }
    }
    for (const auto& r : records)
        if (r.quantity == Quantity::F_i && !r.asymptotic && r.value < 1.0)
            bad.push_back("F_i record below 1");
    return bad;
}

// --- serialization --------------------------------------------------------------

inline std::string bounds_csv_header() {
    return "family,params,quantity,kind,value,source,asymptotic";
}

inline std::string csv_row(const BoundRecord& r) {
    std::string value;
    if (r.exact) {
        value = rat_str(*r.exact);
    } else {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.12g", r.value);
        value = buf;
    }
    return r.family + "," + r.params + "," + to_string(r.quantity) + "," +
           to_string(r.kind) + "," + value + "," + r.source + "," +
           (r.asymptotic ? "true" : "false");
}

}  // namespace cir
