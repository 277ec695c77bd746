#ifndef HEIGHTLAB_INTMAT_HPP
#define HEIGHTLAB_INTMAT_HPP

#include <optional>

#include "heightlab/rat.hpp"

namespace heightlab {

// Row-style Hermite normal form of the row span of m.  Zero rows are dropped;
// pivots are positive, entries above a pivot reduced to [0, pivot).
ZMat hnf_rows(ZMat m);

// Smith normal form.  Returns diagonal entries d_1 | d_2 | ... (nonnegative),
// padded with zeros up to min(rows, cols).  If v != nullptr, *v receives a
// unimodular matrix with columns spanning the transform on the right, so the
// right kernel of m is spanned by the columns of v at zero diagonal entries.
ZVec smith_normal_form(ZMat m, ZMat* v = nullptr);

// Basis (as columns) of the right integer kernel {x : m x = 0}.
ZMat integer_kernel(const ZMat& m);

long rank_of(const ZMat& m);

QQ det_rational(QMat m);
ZZ det_integer(const ZMat& m);

// Solves m x = b over the rationals; nullopt if inconsistent.  m need not be
// square; when the solution is not unique the free variables are set to zero.
std::optional<QVec> solve_rational(QMat m, QVec b);

ZMat mat_mul(const ZMat& a, const ZMat& b);
ZVec mat_apply(const ZMat& m, const ZVec& x);
ZMat identity_mat(size_t n);
bool is_identity(const ZMat& m);

}  // namespace heightlab

#endif
