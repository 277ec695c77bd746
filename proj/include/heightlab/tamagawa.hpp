#ifndef HEIGHTLAB_TAMAGAWA_HPP
#define HEIGHTLAB_TAMAGAWA_HPP

#include <string>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/numberfield.hpp"
#include "heightlab/piclattice.hpp"
#include "heightlab/weilres.hpp"

namespace heightlab::tamagawa {

using nf::NumberField;
using nf::Place;

struct TamagawaConfig {
    long prime_cutoff = 1000;
    long mc_samples = 1000000;
    uint64_t seed = 1;
    int max_lift_depth = 7;
    bool weak_approximation = true;  // caller asserts X(F) dense in X(A_F)
};

struct LocalDensityReport {
    long p = 0;
    ZZ residue_cardinality;
    ZZ raw_count;
    QQ density;
    int lift_depth = 1;
    QQ lambda = QQ(1);
    QQ running_product = QQ(1);
};

// Point count of a homogeneous system over the residue field of a place; for
// systems without equations the chart counts are exact powers of q.  Residue
// fields of degree > 1 are supported only for equation-free systems.
ZZ count_points_residue_field(const weilres::PolynomialSystem& sys, const Place& v);

// #X(Z/p^k) / q^{kn} with Hensel-depth stabilization at bad primes (base Q).
QQ local_density(const weilres::PolynomialSystem& sys, const Place& v, int dim, int max_depth,
                 LocalDensityReport* report = nullptr);

// 1 / det(1 - q^{-s} Frob).
QQ l_factor(const ZMat& frobenius, const ZZ& q, long s = 1);

struct FrobeniusData {
    ZMat matrix;
    ZZ q;
    bool ramified = false;
    int rank = 0;
};

// Frobenius action on the lattice induced from a quadratic field F at p:
// split acts trivially, inert by the swap, ramified on the inertia invariants.
FrobeniusData frobenius_for_prime(const pic::GaloisLattice& induced, long p,
                                  const NumberField& F);

struct InductionCheckReport {
    long p = 0;
    long s = 1;
    QQ induced_factor;
    QQ product_of_upstairs;
    bool ok = false;
};

// Lemma-style local identity: the E-side Artin factor of the induced lattice
// equals the product of the F-side factors over the places above p.
InductionCheckReport l_factor_induction_check(int upstairs_rank, const NumberField& F, long p,
                                              long s);

// Normalized archimedean ball volume Vol{ N(x) <= 1 } / c_v, where c_v = 2 at
// real places and 2*pi at the complex place (twice-Lebesgue convention).  The
// local anticanonical measure of P^n is (n+1) times this value.
double archimedean_density_pn(int n, const heights::ArchNorm& norm, bool complex_place);

struct McValue {
    double value = 0;
    double std_error = 0;
};

// Leray cone integral of a hypersurface {f = 0} over the max-norm ball in
// R^(N+1), by stratified Monte Carlo with the 1/|df/dx_k| co-area weight on
// the gradient-argmax chart.  f must have degree <= 2 in every variable.
McValue leray_density_hypersurface(const weilres::Poly& cone_poly, uint64_t seed, long samples);

struct TamagawaResult {
    double tau = 0;
    double mu_factor = 1;        // mu_F^{-n}
    double residue_factor = 1;   // lim (s-1)^rho L(s, Pic)
    double finite_product = 1;   // prod lambda_p^{-1} density_p up to the cutoff
    // exact per-place factors are recorded in `locals`
    double archimedean = 1;      // product of the archimedean local factors
    double tail_error = 0;       // bound on the relative truncation error
    double mc_error = 0;         // archimedean Monte Carlo standard error (relative)
    std::vector<LocalDensityReport> locals;
};

// X = P^n over F with the given archimedean norm on O(1).
TamagawaResult tamagawa_pn(const NumberField& F, int n, const heights::ArchNorm& norm,
                           const TamagawaConfig& config);

// The Res P^1 quadric over Q attached to a quadratic field F, with the
// induced Picard data (rho_E = 1, residue through zeta_F).
TamagawaResult tamagawa_res_p1_quadric(const NumberField& F, const TamagawaConfig& config);

struct PeyreConstant {
    QQ alpha;
    ZZ beta;
    double tau = 0;
    double c = 0;  // alpha * beta * tau
    double error_estimate = 0;
    TamagawaResult tau_detail;
};

PeyreConstant peyre_constant_pn(const NumberField& F, int n, const TamagawaConfig& config);

struct RestrictionComparison {
    TamagawaResult upstairs;    // tau(P^1 / F)
    TamagawaResult downstairs;  // tau(Res P^1 / Q)
    double rel_diff = 0;
    double combined_error = 0;
    bool within_tolerance = false;
};

// Theorem-level check tau(X) = tau(Res X) for X = P^1 over F.
RestrictionComparison tamagawa_restriction_check(const NumberField& F, double rel_tolerance,
                                                 const TamagawaConfig& config);

// Factor-by-factor text ledger for diffing two assemblies.
std::string peyre_ledger(const std::string& title, const TamagawaResult& r);

struct CiEligibility {
    bool skinner_ok = false;   // n + 1 - dim X* > m(m+1)(r-1) 2^{r-1}
    long skinner_slack = 0;
    bool simple_ok = false;    // n >= (m+1)(r-1) 2^{r-1} + m
    long simple_slack = 0;
};

CiEligibility ci_eligibility(long m, long r, long n, long dim_xstar_bound);

}  // namespace heightlab::tamagawa

#endif
