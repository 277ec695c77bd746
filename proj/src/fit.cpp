#include "heightlab/fit.hpp"

#include <cmath>

namespace heightlab::fit {

namespace {

// Solves the normal equations for a small least-squares system; returns the
// coefficient vector and the covariance scale (X^T X)^{-1}.
struct Lsq {
    std::vector<double> coef;
    std::vector<std::vector<double>> cov;
    std::vector<double> residuals;
};

Lsq least_squares(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
    const size_t n = rows.size();
    const size_t k = rows[0].size();
    std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
    std::vector<double> aty(k, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t a = 0; a < k; ++a) {
            for (size_t b = 0; b < k; ++b) ata[a][b] += rows[i][a] * rows[i][b];
            aty[a] += rows[i][a] * y[i];
        }
    // Invert ata by Gauss-Jordan.
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
    auto m = ata;
    for (size_t c = 0; c < k; ++c) {
        size_t p = c;
        for (size_t i = c + 1; i < k; ++i)
            if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
        if (std::abs(m[p][c]) < 1e-12)
            fail(ErrorKind::DegenerateWindow, "collinear regressors in the fit window");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        double f = m[c][c];
        for (size_t j = 0; j < k; ++j) {
            m[c][j] /= f;
            inv[c][j] /= f;
        }
        for (size_t i = 0; i < k; ++i) {
            if (i == c) continue;
            double g = m[i][c];
            for (size_t j = 0; j < k; ++j) {
                m[i][j] -= g * m[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    Lsq out;
    out.coef.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) out.coef[a] += inv[a][b] * aty[b];
    out.cov = inv;
    out.residuals.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double fitv = 0;
        for (size_t a = 0; a < k; ++a) fitv += rows[i][a] * out.coef[a];
        out.residuals[i] = y[i] - fitv;
    }
    return out;
}

}  // namespace

FitReport fit_asymptotic(const enumerate::CountSeries& series, std::optional<double> fix_a) {
    const size_t n = series.ladder.size();
    if (n < 6) fail(ErrorKind::InsufficientRungs, "need at least 6 rungs");
    std::vector<double> log_b, log_n;
    for (size_t i = 0; i < n; ++i) {
        if (i >= n / 2) {
            if (series.ladder[i] < 3)
                fail(ErrorKind::InsufficientRungs, "window rungs must have B >= 3");
            if (series.counts[i] <= 0)
                fail(ErrorKind::InsufficientRungs, "counts must be positive on the fit window");
        }
        log_b.push_back(std::log(series.ladder[i].get_d()));
        log_n.push_back(series.counts[i] > 0 ? std::log(static_cast<double>(series.counts[i]))
                                             : 0.0);
    }
    return fit_asymptotic_logs(log_b, log_n, fix_a);
}

FitReport fit_asymptotic_logs(const std::vector<double>& log_b_all,
                              const std::vector<double>& log_n_all,
                              std::optional<double> fix_a) {
    const size_t n = log_b_all.size();
    if (n < 6) fail(ErrorKind::InsufficientRungs, "need at least 6 rungs");
    size_t begin = n / 2;

    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (size_t i = begin; i < n; ++i) {
        double logb = log_b_all[i];
        double loglogb = std::log(logb);
        double logn = log_n_all[i];
        if (fix_a) {
            rows.push_back({loglogb, 1.0});
            y.push_back(logn - *fix_a * logb);
        } else {
            rows.push_back({logb, loglogb, 1.0});
            y.push_back(logn);
        }
    }
    Lsq ls = least_squares(rows, y);

    double dof = std::max<double>(1.0, static_cast<double>(rows.size()) - ls.coef.size());
    double ssr = 0;
    for (double r : ls.residuals) ssr += r * r;
    double sigma2 = ssr / dof;

    FitReport rep;
    rep.window_begin = begin;
    rep.window_end = n;
    rep.residuals = ls.residuals;
    rep.a_fixed = fix_a.has_value();
    if (fix_a) {
        rep.a = *fix_a;
        rep.a_err = 0;
        rep.b = ls.coef[0] + 1.0;
        rep.b_err = std::sqrt(sigma2 * ls.cov[0][0]);
        rep.c = std::exp(ls.coef[1]);
        rep.c_err = rep.c * std::sqrt(sigma2 * ls.cov[1][1]);
    } else {
        rep.a = ls.coef[0];
        rep.a_err = std::sqrt(sigma2 * ls.cov[0][0]);
        rep.b = ls.coef[1] + 1.0;
        rep.b_err = std::sqrt(sigma2 * ls.cov[1][1]);
        rep.c = std::exp(ls.coef[2]);
        rep.c_err = rep.c * std::sqrt(sigma2 * ls.cov[2][2]);
    }
    return rep;
}

}  // namespace heightlab::fit
