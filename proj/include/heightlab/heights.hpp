#ifndef HEIGHTLAB_HEIGHTS_HPP
#define HEIGHTLAB_HEIGHTS_HPP

#include <cmath>

#include "heightlab/numberfield.hpp"
#include "heightlab/weilres.hpp"

namespace heightlab::heights {

using nf::FieldElement;
using nf::NumberField;

// Norm at the archimedean places.  Finite places always carry the maximum
// norm.  Matrix means max-norm after an invertible rational change of
// coordinates (one twist per ambient block).
struct ArchNorm {
    enum class Kind { Max, Euclidean, Matrix };
    Kind kind = Kind::Max;
    std::vector<QMat> block_twists;

    static ArchNorm max() { return {}; }
    static ArchNorm euclidean() { return {Kind::Euclidean, {}}; }
    static ArchNorm matrix(std::vector<QMat> twists) { return {Kind::Matrix, std::move(twists)}; }
};

// Tensor powers and multidegrees of the ambient O(1) bundles.
struct MetrizedBundle {
    std::vector<int> block_sizes;  // homogeneous coordinates per factor (n_i + 1)
    std::vector<long> degrees;     // degree per factor; negative for duals
    ArchNorm norm;

    static MetrizedBundle o1(int n, ArchNorm norm = ArchNorm::max());
    static MetrizedBundle multi(std::vector<int> dims, std::vector<long> degrees,
                                ArchNorm norm = ArchNorm::max());
    MetrizedBundle tensor(const MetrizedBundle& o) const;
    MetrizedBundle dual() const;
    int total_coords() const;
};

struct ProjectivePoint {
    const NumberField* field = nullptr;
    std::vector<FieldElement> coords;
};

// Content trivialized per block, leading unit fixed (sign over Q, canonical
// argument sector over imaginary quadratic).  Idempotent; two scalings of a
// point canonicalize identically.
ProjectivePoint canonicalize(const ProjectivePoint& x, const std::vector<int>& block_sizes);

// Exact height value, stored as the square (euclidean real-place factors are
// square roots of rationals; everything in scope squares to a rational).
class HeightValue {
  public:
    HeightValue() : sq_(1) {}
    explicit HeightValue(QQ square) : sq_(std::move(square)) {}

    const QQ& sq() const { return sq_; }
    double value() const { return std::sqrt(sq_.get_d()); }
    bool leq(const QQ& bound) const { return sq_ <= bound * bound; }
    bool eq(const QQ& v) const { return sq_ == v * v; }
    HeightValue times(const HeightValue& o) const { return HeightValue(sq_ * o.sq_); }
    HeightValue pow(long e) const { return HeightValue(qq_pow(sq_, e)); }

  private:
    QQ sq_;
};

// Eq-style product over places: archimedean factors (complex places squared)
// divided by the content norm.  Exact for Q and imaginary quadratic fields.
HeightValue height(const ProjectivePoint& x, const MetrizedBundle& m);

// A polynomial self-map between projective spaces (single or multi block).
struct PolyMap {
    std::vector<weilres::Poly> components;
};

// H_{f*L}(y) = H_L(f(y)).
HeightValue pullback_height(const PolyMap& f, const ProjectivePoint& y, const MetrizedBundle& m);

struct AlgebraReport {
    HeightValue h1, h2, tensor_value, dual_value;
    bool tensor_multiplicative = false;
    bool dual_inverts = false;
    bool ok() const { return tensor_multiplicative && dual_inverts; }
};

// Tensor multiplicativity and dual inversion, exactly.
AlgebraReport height_algebra_check(const ProjectivePoint& x, const MetrizedBundle& m1,
                                   const MetrizedBundle& m2);

// Definitional height of a point of Res X through the universal map p.
HeightValue restriction_height(const weilres::CompiledRestriction& c, size_t chart,
                               const std::vector<FieldElement>& y, const MetrizedBundle& m);

// log( H_{P^3,E}(embedded y) / H_{P^1,F}(y) ) for the Res P^1 quadric.
double ambient_height_ratio(const weilres::ResP1Quadric& q, const std::vector<FieldElement>& x01,
                            const MetrizedBundle& m);

}  // namespace heightlab::heights

#endif
