#ifndef HEIGHTLAB_FIT_HPP
#define HEIGHTLAB_FIT_HPP

#include <optional>

#include "heightlab/enumerate.hpp"

namespace heightlab::fit {

struct FitReport {
    double a = 0, b = 0, c = 0;
    double a_err = 0, b_err = 0, c_err = 0;
    size_t window_begin = 0;  // fit window inside the ladder (top half)
    size_t window_end = 0;
    std::vector<double> residuals;
    bool a_fixed = false;
};

// Least squares for log N = a log B + (b-1) log log B + log c over the top
// half of the ladder; fix_a pins the exponent and fits (b, c) only.
FitReport fit_asymptotic(const enumerate::CountSeries& series, std::optional<double> fix_a = {});

// The same regression on log-space samples directly (window = top half).
FitReport fit_asymptotic_logs(const std::vector<double>& log_b, const std::vector<double>& log_n,
                              std::optional<double> fix_a = {});

}  // namespace heightlab::fit

#endif
