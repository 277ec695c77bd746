#include "heightlab/linprog.hpp"

#include <algorithm>

namespace heightlab {

namespace {

// Dense tableau: rows = constraints, columns = variables, rhs kept separately.
struct Tableau {
    QMat a;
    QVec rhs;
    std::vector<size_t> basis;  // basis[i] = variable basic in row i

    void pivot(size_t row, size_t col) {
        QQ inv = QQ(1) / a[row][col];
        for (QQ& v : a[row]) v *= inv;
        rhs[row] *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0) continue;
            QQ f = a[i][col];
            for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
            rhs[i] -= f * rhs[row];
        }
        basis[row] = col;
    }
};

// Runs simplex on the tableau for costs `c` restricted to `ncols` columns.
// Returns false on unboundedness.
bool run_simplex(Tableau& t, const QVec& c, size_t ncols) {
    while (true) {
        // Reduced costs r_j = c_j - c_B . B^{-1} A_j, computed on the fly.
        size_t enter = ncols;
        for (size_t j = 0; j < ncols; ++j) {
            bool basic = false;
            for (size_t bi : t.basis)
                if (bi == j) {
                    basic = true;
                    break;
                }
            if (basic) continue;
            QQ r = c[j];
            for (size_t i = 0; i < t.a.size(); ++i)
                if (t.a[i][j] != 0 && t.basis[i] < c.size()) r -= c[t.basis[i]] * t.a[i][j];
            if (r < 0) {
                enter = j;  // Bland: first improving index
                break;
            }
        }
        if (enter == ncols) return true;
        size_t leave = t.a.size();
        QQ best_ratio;
        for (size_t i = 0; i < t.a.size(); ++i) {
            if (t.a[i][enter] <= 0) continue;
            QQ ratio = t.rhs[i] / t.a[i][enter];
            if (leave == t.a.size() || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == t.a.size()) return false;
        t.pivot(leave, enter);
    }
}

}  // namespace

LpResult lp_solve(const QMat& a_in, const QVec& b_in, const QVec& c_in) {
    const size_t m = a_in.size();
    const size_t n = m ? a_in[0].size() : c_in.size();

    Tableau t;
    t.a.assign(m, QVec(n + m, QQ(0)));
    t.rhs = b_in;
    t.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) t.a[i][j] = a_in[i][j];
        if (t.rhs[i] < 0) {
            for (size_t j = 0; j < n; ++j) t.a[i][j] = -t.a[i][j];
            t.rhs[i] = -t.rhs[i];
        }
        t.a[i][n + i] = 1;
        t.basis[i] = n + i;
    }

    // Phase 1: minimize the sum of artificials.
    QVec phase1(n + m, QQ(0));
    for (size_t i = 0; i < m; ++i) phase1[n + i] = 1;
    if (!run_simplex(t, phase1, n + m)) fail(ErrorKind::Internal, "phase-1 unbounded");
    QQ art_sum(0);
    for (size_t i = 0; i < m; ++i)
        if (t.basis[i] >= n) art_sum += t.rhs[i];
    if (art_sum != 0) return {LpStatus::Infeasible, QQ(0), {}};

    // Drive remaining artificials out of the basis.
    for (size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        size_t col = n;
        for (size_t j = 0; j < n; ++j)
            if (t.a[i][j] != 0) {
                col = j;
                break;
            }
        if (col < n) t.pivot(i, col);
        // A row with no pivot candidate is a redundant constraint; its basic
        // artificial stays at value zero and never re-enters (cost below).
    }

    // Phase 2 over the original columns only.
    QVec c = c_in;
    c.resize(n + m, QQ(0));
    // Forbid artificials from re-entering by restricting the column range,
    // except that rows still basic in an artificial keep it pinned at 0.
    Tableau t2 = t;
    // Remove artificial columns from consideration by setting range to n.
    if (!run_simplex(t2, c, n)) return {LpStatus::Unbounded, QQ(0), {}};

    QVec x(n, QQ(0));
    QQ obj(0);
    for (size_t i = 0; i < m; ++i)
        if (t2.basis[i] < n) x[t2.basis[i]] = t2.rhs[i];
    for (size_t j = 0; j < n; ++j) obj += c_in[j] * x[j];
    return {LpStatus::Optimal, obj, x};
}

bool lp_feasible(const QMat& a, const QVec& b) {
    const size_t n = a.empty() ? 0 : a[0].size();
    LpResult r = lp_solve(a, b, QVec(n, QQ(0)));
    return r.status == LpStatus::Optimal;
}

}  // namespace heightlab
