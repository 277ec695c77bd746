#include "heightlab/intmat.hpp"

#include <algorithm>

namespace heightlab {

ZMat hnf_rows(ZMat m) {
    if (m.empty()) return m;
    const size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        // Clear the column below `row` by gcd steps.
        while (true) {
            size_t pivot = m.size();
            for (size_t i = row; i < m.size(); ++i)
                if (m[i][col] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot == m.size()) break;
            std::swap(m[row], m[pivot]);
            bool cleared = true;
            for (size_t i = row + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                ZZ q = m[i][col] / m[row][col];  // truncating division is fine for gcd steps
                for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[row][j];
                if (m[i][col] != 0) cleared = false;
            }
            if (cleared) break;
            // Move a smaller remainder up and repeat.
            size_t best = row;
            for (size_t i = row + 1; i < m.size(); ++i)
                if (m[i][col] != 0 && (m[best][col] == 0 || abs(m[i][col]) < abs(m[best][col]))) best = i;
            std::swap(m[row], m[best]);
        }
        if (m[row][col] == 0) continue;
        if (m[row][col] < 0)
            for (size_t j = 0; j < cols; ++j) m[row][j] = -m[row][j];
        // Reduce the rows above.
        for (size_t i = 0; i < row; ++i) {
            ZZ q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[row][j];
        }
        ++row;
    }
    m.resize(row);
    return m;
}

ZVec smith_normal_form(ZMat m, ZMat* v) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    ZMat vt = identity_mat(cols);
    auto col_addmul = [&](size_t dst, size_t src, const ZZ& q) {
        for (size_t i = 0; i < rows; ++i) m[i][dst] -= q * m[i][src];
        for (size_t i = 0; i < cols; ++i) vt[i][dst] -= q * vt[i][src];
    };
    auto col_swap = [&](size_t a, size_t b) {
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
        for (size_t i = 0; i < cols; ++i) std::swap(vt[i][a], vt[i][b]);
    };
    auto col_neg = [&](size_t a) {
        for (size_t i = 0; i < rows; ++i) m[i][a] = -m[i][a];
        for (size_t i = 0; i < cols; ++i) vt[i][a] = -vt[i][a];
    };

    const size_t t = std::min(rows, cols);
    size_t k = 0;
    for (; k < t; ++k) {
        // Find a nonzero entry in the remaining block.
        size_t pi = rows, pj = cols;
        for (size_t i = k; i < rows && pi == rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (m[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        std::swap(m[k], m[pi]);
        col_swap(k, pj);
        while (true) {
            // Clear row k (column ops) and column k (row ops) alternately.
            bool dirty = false;
            for (size_t j = k + 1; j < cols; ++j) {
                if (m[k][j] == 0) continue;
                ZZ q = m[k][j] / m[k][k];
                col_addmul(j, k, q);
                if (m[k][j] != 0) {
                    col_swap(k, j);
                    dirty = true;
                }
            }
            for (size_t i = k + 1; i < rows; ++i) {
                if (m[i][k] == 0) continue;
                ZZ q = m[i][k] / m[k][k];
                for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[k][j];
                if (m[i][k] != 0) {
                    std::swap(m[k], m[i]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Divisibility: m[k][k] must divide the rest of the block.
            bool fixed = true;
            for (size_t i = k + 1; i < rows && fixed; ++i)
                for (size_t j = k + 1; j < cols && fixed; ++j)
                    if (m[i][j] % m[k][k] != 0) {
                        for (size_t c = 0; c < cols; ++c) m[k][c] += m[i][c];
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (m[k][k] < 0) col_neg(k);
    }
    ZVec diag(t, ZZ(0));
    for (size_t i = 0; i < k; ++i) diag[i] = m[i][i];
    if (v) *v = vt;
    return diag;
}

ZMat integer_kernel(const ZMat& m) {
    if (m.empty()) return {};
    const size_t cols = m[0].size();
    ZMat v;
    ZVec diag = smith_normal_form(m, &v);
    size_t r = 0;
    for (const ZZ& d : diag)
        if (d != 0) ++r;
    ZMat kernel(cols, ZVec());
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = r; j < cols; ++j) kernel[i].push_back(v[i][j]);
    if (cols == 0 || kernel[0].empty()) return ZMat(cols, ZVec());
    return kernel;
}

long rank_of(const ZMat& m) { return static_cast<long>(hnf_rows(m).size()); }

QQ det_rational(QMat m) {
    const size_t n = m.size();
    QQ det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t i = c; i < n; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p == n) return QQ(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            QQ f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

ZZ det_integer(const ZMat& m) {
    QMat q(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const ZZ& z : m[i]) q[i].emplace_back(z);
    QQ d = det_rational(std::move(q));
    if (d.get_den() != 1) fail(ErrorKind::Internal, "integer determinant not integral");
    return d.get_num();
}

std::optional<QVec> solve_rational(QMat m, QVec b) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t p = rows;
        for (size_t i = row; i < rows; ++i)
            if (m[i][col] != 0) {
                p = i;
                break;
            }
        if (p == rows) continue;
        std::swap(m[p], m[row]);
        std::swap(b[p], b[row]);
        QQ inv = QQ(1) / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        b[row] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            QQ f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
            b[i] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t i = row; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    QVec x(cols, QQ(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

ZMat mat_mul(const ZMat& a, const ZMat& b) {
    const size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    ZMat r(n, ZVec(m, ZZ(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

ZVec mat_apply(const ZMat& m, const ZVec& x) {
    ZVec r(m.size(), ZZ(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
    return r;
}

ZMat identity_mat(size_t n) {
    ZMat m(n, ZVec(n, ZZ(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

bool is_identity(const ZMat& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

}  // namespace heightlab
