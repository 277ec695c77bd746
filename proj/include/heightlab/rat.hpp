#ifndef HEIGHTLAB_RAT_HPP
#define HEIGHTLAB_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "heightlab/errors.hpp"

namespace heightlab {

using ZZ = mpz_class;
using QQ = mpq_class;

using ZVec = std::vector<ZZ>;
using QVec = std::vector<QQ>;
using ZMat = std::vector<ZVec>;
using QMat = std::vector<QVec>;

inline QQ qq(long num, long den = 1) {
    QQ q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p" or "p/q".  Used for the exact-rational config syntax.
QQ parse_rational(const std::string& s);
std::string format_rational(const QQ& q);

ZZ zz_pow(const ZZ& base, unsigned long e);
QQ qq_pow(const QQ& base, long e);

// Floor of sqrt(n); n must be nonnegative.
ZZ isqrt(const ZZ& n);
// Exact cube root if n is a perfect cube (handles signs), nullopt semantics via bool.
bool icbrt_exact(const ZZ& n, ZZ& root);

inline int64_t to_i64(const ZZ& z) {
    if (!z.fits_slong_p()) fail(ErrorKind::DomainError, "integer out of 64-bit range");
    return static_cast<int64_t>(z.get_si());
}

}  // namespace heightlab

#endif
