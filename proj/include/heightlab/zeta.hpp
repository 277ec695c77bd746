#ifndef HEIGHTLAB_ZETA_HPP
#define HEIGHTLAB_ZETA_HPP

#include "heightlab/numberfield.hpp"

namespace heightlab::nf {

struct ZetaValue {
    double value;
    double tail_bound;  // |zeta_F(s) - value| <= tail_bound
};

// Truncated Euler product over rational primes p <= prime_cutoff; s > 1.
ZetaValue dedekind_zeta(const NumberField& F, double s, long prime_cutoff);

// Residue of zeta_F at s = 1 by the class number formula; supported for Q and
// imaginary quadratic fields (regulator 1).
double residue_at_one(const NumberField& F);

}  // namespace heightlab::nf

#endif
