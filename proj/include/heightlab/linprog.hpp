#ifndef HEIGHTLAB_LINPROG_HPP
#define HEIGHTLAB_LINPROG_HPP

#include "heightlab/rat.hpp"

namespace heightlab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    QQ objective;
    QVec x;
};

// Exact-rational two-phase primal simplex with Bland's rule for the standard
// form  min c.x  s.t.  A x = b, x >= 0.
LpResult lp_solve(const QMat& a, const QVec& b, const QVec& c);

// Feasibility of  A x = b, x >= 0.
bool lp_feasible(const QMat& a, const QVec& b);

}  // namespace heightlab

#endif
