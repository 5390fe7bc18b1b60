#pragma once

#include <stdexcept>
#include <vector>

#include "cir/rational.hpp"

namespace cir {

struct MatrixGameSolution {
    Rational value;             // row player maximizes, column player minimizes
    std::vector<Rational> row;  // optimal row mixture
    std::vector<Rational> col;  // optimal column mixture
};

namespace detail {

// Primal simplex (Bland's rule, exact rationals) for
//   max sum(t)  s.t.  B t <= 1, t >= 0,   all entries of B positive.
// Returns the optimal t and the dual vector u (one entry per constraint).
inline void simplex_game(const std::vector<std::vector<Rational>>& B, std::vector<Rational>& t,
                         std::vector<Rational>& u) {
    size_t W = B.size(), P = B[0].size();
    size_t cols = P + W;
    std::vector<std::vector<Rational>> tab(W, std::vector<Rational>(cols + 1, Rational(0)));
    for (size_t i = 0; i < W; ++i) {
        for (size_t j = 0; j < P; ++j) tab[i][j] = B[i][j];
        tab[i][P + i] = Rational(1);
        tab[i][cols] = Rational(1);
    }
    std::vector<Rational> z(cols + 1, Rational(0));
    for (size_t j = 0; j < P; ++j) z[j] = Rational(1);  // reduced costs of maximize sum(t)
    std::vector<size_t> basis(W);
    for (size_t i = 0; i < W; ++i) basis[i] = P + i;

    for (size_t guard = 0; guard < 100000; ++guard) {
        size_t enter = cols;
        for (size_t j = 0; j < cols; ++j)
            if (z[j] > 0) {
                enter = j;
                break;
            }
        if (enter == cols) {  // optimal
            t.assign(P, Rational(0));
            for (size_t i = 0; i < W; ++i)
                if (basis[i] < P) t[basis[i]] = tab[i][cols];
            u.assign(W, Rational(0));
            for (size_t w = 0; w < W; ++w) u[w] = -z[P + w];
            return;
        }
        size_t leave = W;
        Rational best;
        for (size_t i = 0; i < W; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][enter];
            if (leave == W || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == W) throw std::runtime_error("unbounded game LP (matrix not positive?)");
        Rational piv = tab[leave][enter];
        for (auto& x : tab[leave]) x /= piv;
        for (size_t i = 0; i < W; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational f = tab[i][enter];
            for (size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rational fz = z[enter];
        if (fz != 0)
            for (size_t j = 0; j <= cols; ++j) z[j] -= fz * tab[leave][j];
        basis[leave] = enter;
    }
    throw std::runtime_error("simplex failed to terminate");
}

}  // namespace detail

// Exact value and optimal mixtures of the zero-sum matrix game A (row player
// maximizing A[i][j], column player minimizing). Entries are shifted
// internally so the standard reciprocal-value LP applies.
inline MatrixGameSolution solve_matrix_game(std::vector<std::vector<Rational>> A) {
    if (A.empty() || A[0].empty()) throw std::invalid_argument("empty game matrix");
    size_t W = A.size(), P = A[0].size();
    Rational mn = A[0][0];
    for (auto& row : A) {
        if (row.size() != P) throw std::invalid_argument("ragged game matrix");
        for (auto& x : row) mn = std::min(mn, x);
    }
    Rational shift = mn <= 0 ? Rational(1) - mn : Rational(0);
    for (auto& row : A)
        for (auto& x : row) x += shift;

    // Column player's LP is max sum(t) s.t. A^T ... — with the row player
    // maximizing, the canonical-form LP below is over the COLUMN player's
    // weights t (A t <= 1 row-wise), and the duals recover the row mixture.
    std::vector<Rational> t, u;
    detail::simplex_game(A, t, u);
    Rational st(0), su(0);
    for (auto& x : t) st += x;
    for (auto& x : u) su += x;
    if (st == 0 || su == 0) throw std::runtime_error("degenerate game LP solution");
    MatrixGameSolution sol;
    Rational v = Rational(1) / st;
    sol.value = v - shift;
    sol.col.resize(P);
    for (size_t j = 0; j < P; ++j) sol.col[j] = t[j] * v;
    sol.row.resize(W);
    Rational vu = Rational(1) / su;
    for (size_t i = 0; i < W; ++i) sol.row[i] = u[i] * vu;
    return sol;
}

}  // namespace cir
