#ifndef HEIGHTLAB_PICLATTICE_HPP
#define HEIGHTLAB_PICLATTICE_HPP

#include <string>
#include <vector>

#include "heightlab/intmat.hpp"
#include "heightlab/rat.hpp"

namespace heightlab::pic {

// Neron-Severi data: lattice rank, effective-cone generators, canonical class.
struct PicardLattice {
    int rank = 0;
    std::vector<ZVec> eff_generators;
    ZVec canonical;
    std::vector<std::string> labels;
    bool allow_lines = false;

    void validate() const;
};

// A Picard lattice with a finite cyclic action (generator matrix of order m).
// The swap pattern of quadratic extensions is the primary use case.
struct GaloisLattice {
    PicardLattice base;
    ZMat action;
    int order = 1;

    void validate() const;
};

GaloisLattice trivial_action(PicardLattice lat);

// a(L) = inf { r : r[L] + [omega] effective }, by exact LP.
QQ a_invariant(const PicardLattice& lat, const ZVec& L);

// Codimension of the minimal face of Eff containing a(L) L + omega.
int b_invariant(const PicardLattice& lat, const ZVec& L);

struct ABInvariants {
    QQ a;
    int b;
};
ABInvariants ab_invariants(const PicardLattice& lat, const ZVec& L);

// Induced lattice for an extension of degree d: d blocks of the original with
// the coset permutation wiring (a d-cycle) twisted by the base action.
GaloisLattice induce(const GaloisLattice& gal, int d, const std::vector<int>& coset_action);

// Rank of the fixed sublattice.
int invariants_rank(const GaloisLattice& gal);

// #H^1(<g>, lattice) = #(ker N / im(g - 1)) via Smith normal form.
ZZ h1_cyclic(const GaloisLattice& gal);

// Peyre's alpha: 1/(rank-1)! * integral of e^{-<omega^{-1}, x>} over the dual
// effective cone; exact rational via simplicial decomposition.
QQ alpha_invariant(const PicardLattice& lat);

struct AlphaMC {
    double value;
    double std_error;
};
// Seeded rejection-sampling estimate of the same integral (independent route:
// alpha = rank * vol of the height-one slice polytope).
AlphaMC alpha_monte_carlo(const PicardLattice& lat, uint64_t seed, long samples);

// The rational lattice of a Galois lattice: fixed sublattice with the
// orbit-sum cone and the (fixed) canonical class, in a kernel basis.
PicardLattice rational_lattice(const GaloisLattice& gal);

// Maps a fixed vector of the base into rational_lattice coordinates.
ZVec to_rational_coords(const GaloisLattice& gal, const ZVec& fixed_vector);

struct PreservationReport {
    QQ a_base;
    int b_base;
    QQ a_induced;
    int b_induced;
    bool ok = false;
};

// a(L) = a(Res L), b(L) = b(Res L) computed through the induction machinery.
PreservationReport res_preservation_check(const GaloisLattice& gal, int d,
                                          const std::vector<int>& coset_action, const ZVec& L);

// ---- presets (effective cones are inputs, not computed from geometry) ----

PicardLattice preset_pn(int n);
PicardLattice preset_multiproj(const std::vector<int>& dims);
PicardLattice preset_quadric_surface();        // = P^1 x P^1 lattice
PicardLattice preset_dp6();                    // split degree-six del Pezzo
PicardLattice preset_ci(int n, int m, int r);  // complete intersection in P^n
PicardLattice preset_bt_hypersurface();        // the (1,3) hypersurface in P^3 x P^3
PicardLattice preset_by_name(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace heightlab::pic

#endif
