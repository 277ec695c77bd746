#ifndef HEIGHTLAB_WEILRES_HPP
#define HEIGHTLAB_WEILRES_HPP

#include <map>
#include <string>
#include <vector>

#include "heightlab/numberfield.hpp"

namespace heightlab::weilres {

using nf::FieldElement;
using nf::NumberField;

// Sparse multivariate polynomial over a number field.
class Poly {
  public:
    Poly() = default;
    Poly(const NumberField* field, int nvars) : field_(field), nvars_(nvars) {}

    static Poly zero(const NumberField& field, int nvars) { return Poly(&field, nvars); }
    static Poly constant(const NumberField& field, int nvars, const FieldElement& c);
    static Poly variable(const NumberField& field, int nvars, int index);

    const NumberField* field() const { return field_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<unsigned>, FieldElement>& terms() const { return terms_; }

    void add_term(const std::vector<unsigned>& exps, const FieldElement& coeff);

    Poly plus(const Poly& o) const;
    Poly minus(const Poly& o) const;
    Poly times(const Poly& o) const;
    Poly scaled(const FieldElement& c) const;
    Poly pow(unsigned e) const;

    FieldElement evaluate(const std::vector<FieldElement>& point) const;
    // Substitute variable i by subs[i] (polynomials over the same field in a
    // possibly different variable set; all subs share a variable count).
    Poly substitute(const std::vector<Poly>& subs) const;

    int total_degree() const;
    bool homogeneous_on(int begin, int end, int* degree_out = nullptr) const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    const NumberField* field_ = nullptr;
    int nvars_ = 0;
    std::map<std::vector<unsigned>, FieldElement> terms_;
};

struct Ambient {
    enum class Kind { Affine, Projective };
    Kind kind = Kind::Affine;
    // Projective: [begin, end) variable index ranges, one per factor.
    std::vector<std::pair<int, int>> blocks;

    static Ambient affine() { return {Kind::Affine, {}}; }
    static Ambient projective(int nvars) { return {Kind::Projective, {{0, nvars}}}; }
    static Ambient biprojective(int n1, int n2) {
        return {Kind::Projective, {{0, n1}, {n1, n1 + n2}}};
    }
};

struct PolynomialSystem {
    const NumberField* field = nullptr;
    std::vector<std::string> variables;
    std::vector<Poly> polynomials;
    Ambient ambient;
    // Open-subset conditions: polynomials required to be nonzero.
    std::vector<Poly> nonvanishing;

    void validate() const;
};

// Extension data for F/E.  The alpha-basis multiplication table has
// E-coefficients; alpha_0 must be the identity.  When E = Q the absolute
// field F is carried along, with alpha_i expressed in its integral basis.
struct ExtensionData {
    const NumberField* base = nullptr;  // E
    int d = 0;
    // table[i][j] = vector of E-elements: alpha_i * alpha_j in the alpha basis
    std::vector<std::vector<std::vector<FieldElement>>> table;

    const NumberField* absolute = nullptr;  // F as a field over Q, when base == Q
    QMat alpha_in_absolute;                 // rows: alpha_i in F's integral basis

    static ExtensionData from_absolute(const NumberField& F);
    void validate() const;

    // E-coordinates (alpha basis) of an element of the absolute field.
    QVec decompose(const FieldElement& x) const;
    FieldElement compose(const QVec& alpha_coords) const;  // absolute element
    bool alpha_is_integral_basis() const;

  private:
    mutable bool identity_checked_ = false;
    mutable bool identity_is_ = false;
};

struct CompiledChart {
    // Per projective block, the source variable fixed to 1.
    std::vector<int> fixed_source_vars;
    std::vector<Poly> equations;      // over E, in the full compiled variable set
    std::vector<Poly> nonvanishing;   // compiled open conditions (d coords each)
};

struct CompiledRestriction {
    ExtensionData ext;
    PolynomialSystem source;
    std::vector<std::string> compiled_vars;  // source order x basis index
    // Affine sources: a single chart with no fixed variables.
    std::vector<CompiledChart> charts;

    int compiled_var_count() const { return static_cast<int>(compiled_vars.size()); }
};

// Example (1): substitute x_j = sum_i alpha_i y_{j,i} and split coordinates.
CompiledRestriction restrict_affine(const PolynomialSystem& sys, const ExtensionData& ext);

// Chart atlas for homogeneous sources: one affine chart per choice of a
// variable set to 1 in each block.
CompiledRestriction restrict_projective(const PolynomialSystem& sys, const ExtensionData& ext);

// p: given E-coordinates of a point of the compiled system, produce the
// F-point (absolute field) and verify both systems vanish exactly.
std::vector<FieldElement> point_up(const CompiledRestriction& c, size_t chart,
                                   const std::vector<FieldElement>& y);

// The inverse bijection: coordinates of an F-point of the source system.
std::vector<FieldElement> point_down(const CompiledRestriction& c, size_t chart,
                                     const std::vector<FieldElement>& x);

// Locates a chart containing the projective point x (first block-wise chart
// whose fixed coordinates are nonzero) and returns the chart-normalized x.
std::pair<size_t, std::vector<FieldElement>> chart_for_point(const CompiledRestriction& c,
                                                             const std::vector<FieldElement>& x);

// Example (2): Res P^1 for a quadratic extension as a quadric in P^3.
struct ResP1Quadric {
    ExtensionData ext;
    Poly relation;               // u0 u3 - q(u1, u2) over E
    QQ norm_b, norm_c;           // q(u1,u2) = u1^2 + norm_b u1 u2 + norm_c u2^2
    std::vector<std::string> vars;

    std::vector<FieldElement> embed(const std::vector<FieldElement>& x01) const;  // P^1(F) -> P^3(E)
    std::vector<FieldElement> lift(const std::vector<FieldElement>& u) const;     // P^3(E) -> P^1(F)
};

ResP1Quadric res_p1_quadric(const ExtensionData& ext);

// Deterministic text dump of a compiled restriction (golden-file format).
std::string dump(const CompiledRestriction& c);

}  // namespace heightlab::weilres

#endif
