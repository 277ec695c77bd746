#ifndef HEIGHTLAB_NUMBERFIELD_HPP
#define HEIGHTLAB_NUMBERFIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "heightlab/interval.hpp"
#include "heightlab/intmat.hpp"
#include "heightlab/rat.hpp"

namespace heightlab::nf {

class NumberField;

// Element of a number field, as exact rational coordinates in the integral
// basis.  Immutable in spirit; all arithmetic returns fresh values.
struct FieldElement {
    const NumberField* field = nullptr;
    QVec coords;

    bool is_zero() const;
    bool is_rational() const;
    QQ rational_part() const;  // requires is_rational()
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const QQ& a, const FieldElement& b);
FieldElement inverse(const FieldElement& a);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
bool operator==(const FieldElement& a, const FieldElement& b);

QQ norm(const FieldElement& a);
QQ trace(const FieldElement& a);

struct Place {
    enum class Kind { Real, Complex, Finite };
    Kind kind = Kind::Finite;

    // Archimedean data: index into the field's embedding list.
    int embedding_index = -1;

    // Finite data.
    long p = 0;
    int residue_degree = 1;   // f
    int ramification = 1;     // e
    ZVec gpoly;               // irreducible factor of the minimal polynomial mod p
    ZMat prime_hnf;           // HNF row basis of the prime ideal

    ZZ residue_cardinality() const;  // p^f
};

// Integral ideal as an HNF row basis in integral-basis coordinates.
struct IdealZ {
    const NumberField* field = nullptr;
    ZMat hnf;

    bool is_zero() const { return hnf.empty(); }
    ZZ norm() const;
};

IdealZ ideal_from_elements(const NumberField& F, const std::vector<FieldElement>& gens);
IdealZ ideal_mul(const IdealZ& a, const IdealZ& b);
bool ideal_contains(const IdealZ& a, const FieldElement& x);  // x integral
bool operator==(const IdealZ& a, const IdealZ& b);

class NumberField {
  public:
    // field_from_minpoly: verifies every structural invariant at construction
    // (irreducibility certificate, basis closure, mult-table associativity,
    // trace-form discriminant, signature).
    static std::shared_ptr<const NumberField> create(const ZVec& minpoly_coeffs,
                                                     const QMat& integral_basis, long class_number,
                                                     long roots_of_unity);

    static const NumberField& rationals();
    static const NumberField& gaussian();    // Q(i), x^2 + 1, basis {1, theta}
    static const NumberField& eisenstein();  // Q(sqrt(-3)), x^2 + x + 1, basis {1, theta}

    int degree() const { return d_; }
    int real_embeddings() const { return r1_; }
    int complex_pairs() const { return r2_; }
    const ZZ& discriminant() const { return disc_; }
    long class_number() const { return h_; }
    long roots_of_unity() const { return w_; }
    const ZVec& minpoly() const { return minpoly_; }
    const QMat& basis_matrix() const { return basis_; }

    bool is_rationals() const { return d_ == 1; }
    bool is_imaginary_quadratic() const { return d_ == 2 && r1_ == 0; }

    FieldElement element(QVec coords) const;
    FieldElement from_rational(const QQ& q) const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement generator() const;   // theta in the integral basis
    FieldElement basis_element(int i) const;

    // basis_i * basis_j in integral-basis coordinates (exact integers).
    const ZVec& mult_row(int i, int j) const { return table_[i][j]; }

    // Matrix of multiplication by x on the integral basis (columns = x*b_j).
    QMat mult_matrix(const FieldElement& x) const;

    // Coordinates of sum_j powers[j] * theta^j in the integral basis.
    QVec powers_to_basis(const QVec& powers) const;
    QVec basis_to_powers(const QVec& coords) const;

    // Torsion units (all w of them).
    const std::vector<FieldElement>& units() const { return units_; }

    // Embedding balls at >= prec bits: r1 real roots first, then one
    // representative (positive imaginary part) per complex pair.  Root balls
    // are certified pairwise disjoint, retrying at doubled precision.
    std::vector<CI> embeddings(long prec = 128) const;

    // sigma_v(x) as a complex ball.
    CI embed(const FieldElement& x, int embedding_index, long prec = 128) const;

  private:
    NumberField() = default;

    int d_ = 0, r1_ = 0, r2_ = 0;
    ZZ disc_;
    long h_ = 1, w_ = 2;
    ZVec minpoly_;
    QMat basis_, basis_inv_;
    std::vector<std::vector<ZVec>> table_;
    std::vector<FieldElement> units_;
    mutable std::mutex embed_mutex_;
    mutable std::map<long, std::vector<CI>> embed_cache_;

    void build(const ZVec& minpoly_coeffs, const QMat& integral_basis, long h, long w);
    QVec powers_to_basis_internal(const QVec& powers) const;
    std::vector<CI> isolate_roots(long prec) const;
    friend std::shared_ptr<const NumberField> make_field_internal(const ZVec&, const QMat&, long, long);
};

// ---- module operations ----

// |x|_v normalized so the product formula holds: finite p^(-f ord), real
// places |sigma x|, complex places |sigma x|^2.  Archimedean values are ball
// midpoints at `prec` bits; finite values are exact.
double absolute_value(const FieldElement& x, const Place& v, long prec = 128);

// Exact |x|_v at a finite place.
QQ finite_abs_exact(const FieldElement& x, const Place& v);

// Valuation ord_v(x) at a finite place (x != 0).
long ord_at(const FieldElement& x, const Place& v);

// Kummer-Dedekind factorisation of (p); requires p coprime to the basis index.
std::vector<Place> factor_rational_prime(long p, const NumberField& F);

std::vector<Place> archimedean_places(const NumberField& F);

// N(content ideal) of a nonzero tuple of integral coordinates.
ZZ content_ideal_norm(const std::vector<FieldElement>& coords);

// Moebius function on nonzero integral ideals.
int moebius_ideal(const IdealZ& a);

// Euclidean gcd for Q and the norm-Euclidean imaginary quadratics; the result
// is well-defined up to units.
FieldElement gcd_euclidean(FieldElement a, FieldElement b);

// The torsion unit u such that u*x has argument in [0, 2*pi/w); over Q this is
// the sign correction.  x must be nonzero.
FieldElement sector_canonical_unit(const FieldElement& x);

// True when coords are integers (denominator one in the integral basis).
bool is_integral(const FieldElement& x);

}  // namespace heightlab::nf

#endif
