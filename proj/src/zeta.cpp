#include "heightlab/zeta.hpp"

#include <cmath>
#include <numbers>

namespace heightlab::nf {

ZetaValue dedekind_zeta(const NumberField& F, double s, long prime_cutoff) {
    if (!(s > 1.0)) fail(ErrorKind::DomainError, "Euler product needs s > 1");
    if (prime_cutoff < 2) fail(ErrorKind::DomainError, "prime cutoff below 2");
    double log_value = 0.0;
    std::vector<char> sieve(static_cast<size_t>(prime_cutoff) + 1, 1);
    for (long p = 2; p <= prime_cutoff; ++p) {
        if (!sieve[p]) continue;
        for (long q = 2 * p; q <= prime_cutoff; q += p) sieve[q] = 0;
        for (const Place& v : factor_rational_prime(p, F)) {
            double nq = std::pow(static_cast<double>(p), v.residue_degree);
            log_value -= std::log1p(-std::pow(nq, -s));
        }
    }
    // 0 <= log(zeta/truncation) <= d * sum_{n > P} n^-s / (1 - P^-s)
    //                           <= d * P^(1-s) / ((s-1)(1 - P^-s)).
    double d = F.degree();
    double tail_log = d * std::pow(static_cast<double>(prime_cutoff), 1.0 - s) /
                      ((s - 1.0) * (1.0 - std::pow(static_cast<double>(prime_cutoff), -s)));
    double value = std::exp(log_value);
    return {value, value * std::expm1(tail_log)};
}

double residue_at_one(const NumberField& F) {
    if (F.is_rationals()) return 1.0;
    if (F.is_imaginary_quadratic()) {
        double disc = std::abs(F.discriminant().get_d());
        return 2.0 * std::numbers::pi * static_cast<double>(F.class_number()) /
               (static_cast<double>(F.roots_of_unity()) * std::sqrt(disc));
    }
    fail(ErrorKind::DomainError, "residue formula implemented for Q and imaginary quadratic only");
}

}  // namespace heightlab::nf
