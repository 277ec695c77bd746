#ifndef HEIGHTLAB_POLYZP_HPP
#define HEIGHTLAB_POLYZP_HPP

#include <cstdint>
#include <vector>

namespace heightlab {

// Dense univariate polynomials over F_p (p an odd-or-2 prime below 2^31),
// with just enough machinery for Kummer-Dedekind factorisation of minimal
// polynomials: squarefree decomposition, distinct-degree splitting and
// Cantor-Zassenhaus equal-degree splitting with a deterministic seed.
struct PolyZp {
    uint64_t p;
    std::vector<uint64_t> c;  // c[i] mod p, trimmed so c.back() != 0 unless zero poly

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim();
};

PolyZp zp_from_coeffs(uint64_t p, const std::vector<int64_t>& coeffs);
PolyZp zp_add(const PolyZp& a, const PolyZp& b);
PolyZp zp_sub(const PolyZp& a, const PolyZp& b);
PolyZp zp_mul(const PolyZp& a, const PolyZp& b);
PolyZp zp_mod(const PolyZp& a, const PolyZp& m);
PolyZp zp_gcd(PolyZp a, PolyZp b);  // monic gcd
PolyZp zp_monic(PolyZp a);
PolyZp zp_derivative(const PolyZp& a);
PolyZp zp_powmod(const PolyZp& base, uint64_t e, const PolyZp& m);
// x^(p^k) mod m.
PolyZp zp_frobenius_power(const PolyZp& m, unsigned k);

struct ZpFactor {
    PolyZp poly;
    unsigned multiplicity;
};

// Full factorisation into monic irreducibles with multiplicities.
std::vector<ZpFactor> zp_factor(const PolyZp& f, uint64_t seed = 0x5eedULL);

}  // namespace heightlab

#endif
