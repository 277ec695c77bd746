#include "heightlab/weilres.hpp"

#include <algorithm>
#include <sstream>

namespace heightlab::weilres {

namespace {

std::vector<unsigned> add_exps(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

}  // namespace

Poly Poly::constant(const NumberField& field, int nvars, const FieldElement& c) {
    Poly p(&field, nvars);
    p.add_term(std::vector<unsigned>(nvars, 0), c);
    return p;
}

Poly Poly::variable(const NumberField& field, int nvars, int index) {
    Poly p(&field, nvars);
    std::vector<unsigned> e(nvars, 0);
    e.at(index) = 1;
    p.add_term(e, field.one());
    return p;
}

void Poly::add_term(const std::vector<unsigned>& exps, const FieldElement& coeff) {
    if (static_cast<int>(exps.size()) != nvars_) fail(ErrorKind::DomainError, "exponent size");
    if (coeff.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::plus(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::minus(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::times(const Poly& o) const {
    Poly r(field_, nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) r.add_term(add_exps(ea, eb), ca * cb);
    return r;
}

Poly Poly::scaled(const FieldElement& c) const {
    Poly r(field_, nvars_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(*field_, nvars_, field_->one());
    for (unsigned i = 0; i < e; ++i) r = r.times(*this);
    return r;
}

FieldElement Poly::evaluate(const std::vector<FieldElement>& point) const {
    if (static_cast<int>(point.size()) != nvars_) fail(ErrorKind::DomainError, "point size");
    FieldElement acc = field_->zero();
    for (const auto& [e, c] : terms_) {
        FieldElement term = c;
        for (int i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
        acc = acc + term;
    }
    return acc;
}

Poly Poly::substitute(const std::vector<Poly>& subs) const {
    if (static_cast<int>(subs.size()) != nvars_) fail(ErrorKind::DomainError, "subs size");
    const NumberField& field = *subs[0].field();
    const int nv = subs[0].nvars();
    Poly acc(&field, nv);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(field, nv, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) term = term.times(subs[i].pow(e[i]));
        acc = acc.plus(term);
    }
    return acc;
}

int Poly::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (unsigned v : e) t += static_cast<int>(v);
        deg = std::max(deg, t);
    }
    return deg;
}

bool Poly::homogeneous_on(int begin, int end, int* degree_out) const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int i = begin; i < end; ++i) t += static_cast<int>(e[i]);
        if (deg < 0) deg = t;
        if (t != deg) return false;
    }
    if (degree_out) *degree_out = std::max(deg, 0);
    return true;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(";
        for (size_t k = 0; k < c.coords.size(); ++k) {
            if (k) out << ",";
            out << format_rational(c.coords[k]);
        }
        out << ")";
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            out << "*" << names[i];
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

void PolynomialSystem::validate() const {
    for (const Poly& p : polynomials) {
        if (p.field() != field) fail(ErrorKind::DomainError, "system coefficients field mismatch");
        if (p.nvars() != static_cast<int>(variables.size()))
            fail(ErrorKind::DomainError, "system variable count mismatch");
    }
    if (ambient.kind == Ambient::Kind::Projective) {
        for (const Poly& p : polynomials)
            for (const auto& [b, e] : ambient.blocks)
                if (!p.homogeneous_on(b, e))
                    fail(ErrorKind::DomainError, "projective system must be homogeneous per block");
        int covered = 0;
        for (const auto& [b, e] : ambient.blocks) covered += e - b;
        if (covered != static_cast<int>(variables.size()))
            fail(ErrorKind::DomainError, "projective blocks must cover all variables");
    }
}

ExtensionData ExtensionData::from_absolute(const NumberField& F) {
    ExtensionData ext;
    ext.base = &NumberField::rationals();
    ext.d = F.degree();
    ext.absolute = &F;
    ext.alpha_in_absolute = QMat(ext.d, QVec(ext.d, QQ(0)));
    for (int i = 0; i < ext.d; ++i) ext.alpha_in_absolute[i][i] = 1;
    ext.table.assign(ext.d, std::vector<std::vector<FieldElement>>(ext.d));
    for (int i = 0; i < ext.d; ++i)
        for (int j = 0; j < ext.d; ++j) {
            std::vector<FieldElement> row;
            for (int k = 0; k < ext.d; ++k)
                row.push_back(ext.base->from_rational(QQ(F.mult_row(i, j)[k])));
            ext.table[i][j] = std::move(row);
        }
    ext.validate();
    return ext;
}

namespace {

// Element of F in alpha-basis coordinates over E.
using ExtElem = std::vector<FieldElement>;

ExtElem ext_zero(const ExtensionData& ext) {
    return ExtElem(ext.d, ext.base->zero());
}

ExtElem ext_unit(const ExtensionData& ext, int i) {
    ExtElem e = ext_zero(ext);
    e[i] = ext.base->one();
    return e;
}

bool ext_is_zero(const ExtElem& a) {
    for (const auto& c : a)
        if (!c.is_zero()) return false;
    return true;
}

ExtElem ext_add(const ExtElem& a, const ExtElem& b) {
    ExtElem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

ExtElem ext_mul(const ExtensionData& ext, const ExtElem& a, const ExtElem& b) {
    ExtElem r = ext_zero(ext);
    for (int i = 0; i < ext.d; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < ext.d; ++j) {
            if (b[j].is_zero()) continue;
            FieldElement f = a[i] * b[j];
            for (int k = 0; k < ext.d; ++k)
                if (!ext.table[i][j][k].is_zero()) r[k] = r[k] + f * ext.table[i][j][k];
        }
    }
    return r;
}

}  // namespace

void ExtensionData::validate() const {
    if (d < 1 || static_cast<int>(table.size()) != d)
        fail(ErrorKind::InconsistentExtensionTable, "table size");
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            QQ expect = (j == k) ? QQ(1) : QQ(0);
            if (!(table[0][j][k] == base->from_rational(expect)))
                fail(ErrorKind::InconsistentExtensionTable, "alpha_0 must be the identity");
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (table[i][j] != table[j][i])
                fail(ErrorKind::InconsistentExtensionTable, "table not commutative");
    ExtensionData self = *this;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                ExtElem lhs = ext_mul(self, ext_mul(self, ext_unit(self, i), ext_unit(self, j)),
                                      ext_unit(self, k));
                ExtElem rhs = ext_mul(self, ext_unit(self, i),
                                      ext_mul(self, ext_unit(self, j), ext_unit(self, k)));
                if (lhs != rhs) fail(ErrorKind::InconsistentExtensionTable, "table not associative");
            }
    if (absolute) {
        if (absolute->degree() != d) fail(ErrorKind::InconsistentExtensionTable, "degree mismatch");
        if (!base->is_rationals())
            fail(ErrorKind::InconsistentExtensionTable, "absolute field requires base Q");
    }
}

QVec ExtensionData::decompose(const FieldElement& x) const {
    if (!absolute) fail(ErrorKind::UnsupportedField, "no absolute field attached");
    if (alpha_is_integral_basis()) return x.coords;
    QMat m(d, QVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = alpha_in_absolute[j][i];
    auto sol = solve_rational(std::move(m), x.coords);
    if (!sol) fail(ErrorKind::Internal, "alpha basis does not span");
    return *sol;
}

FieldElement ExtensionData::compose(const QVec& alpha_coords) const {
    if (!absolute) fail(ErrorKind::UnsupportedField, "no absolute field attached");
    if (alpha_is_integral_basis()) return absolute->element(alpha_coords);
    QVec coords(d, QQ(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) coords[j] += alpha_coords[i] * alpha_in_absolute[i][j];
    return absolute->element(std::move(coords));
}

bool ExtensionData::alpha_is_integral_basis() const {
    if (!identity_checked_) {
        identity_is_ = true;
        for (int i = 0; i < d && identity_is_; ++i)
            for (int j = 0; j < d; ++j)
                if (alpha_in_absolute[i][j] != (i == j ? 1 : 0)) {
                    identity_is_ = false;
                    break;
                }
        identity_checked_ = true;
    }
    return identity_is_;
}

namespace {

// Polynomial with ExtElem coefficients, over the compiled variable set.
using ExtPoly = std::map<std::vector<unsigned>, ExtElem>;

void ext_poly_add_term(const ExtensionData&, ExtPoly& p, const std::vector<unsigned>& e,
                       const ExtElem& c) {
    if (ext_is_zero(c)) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second = ext_add(it->second, c);
        if (ext_is_zero(it->second)) p.erase(it);
    }
}

ExtPoly ext_poly_mul(const ExtensionData& ext, const ExtPoly& a, const ExtPoly& b) {
    ExtPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            ext_poly_add_term(ext, r, add_exps(ea, eb), ext_mul(ext, ca, cb));
    return r;
}

ExtElem coeff_to_ext(const ExtensionData& ext, const FieldElement& c) {
    QVec alpha = ext.decompose(c);
    ExtElem e;
    e.reserve(ext.d);
    for (const QQ& q : alpha) e.push_back(ext.base->from_rational(q));
    return e;
}

// Expands source polynomials under per-variable substitutions and splits each
// into its d alpha-coordinates over E.
std::vector<Poly> compile_polys(const ExtensionData& ext, const std::vector<Poly>& source_polys,
                                const std::vector<ExtPoly>& subs, int compiled_nvars) {
    std::vector<std::map<unsigned, ExtPoly>> power_cache(subs.size());
    std::function<const ExtPoly&(int, unsigned)> power_of = [&](int var,
                                                                unsigned e) -> const ExtPoly& {
        auto& cache = power_cache[var];
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        if (e == 0) {
            ExtPoly one;
            ext_poly_add_term(ext, one, std::vector<unsigned>(compiled_nvars, 0), ext_unit(ext, 0));
            return cache.emplace(0u, std::move(one)).first->second;
        }
        ExtPoly r = ext_poly_mul(ext, power_of(var, e - 1), subs[var]);
        return cache.emplace(e, std::move(r)).first->second;
    };

    std::vector<Poly> out;
    for (const Poly& src : source_polys) {
        ExtPoly acc;
        for (const auto& [exps, c] : src.terms()) {
            ExtPoly term;
            ext_poly_add_term(ext, term, std::vector<unsigned>(compiled_nvars, 0),
                              coeff_to_ext(ext, c));
            for (size_t var = 0; var < exps.size(); ++var)
                if (exps[var] > 0) term = ext_poly_mul(ext, term, power_of(static_cast<int>(var), exps[var]));
            for (const auto& [e, coeff] : term) ext_poly_add_term(ext, acc, e, coeff);
        }
        for (int k = 0; k < ext.d; ++k) {
            Poly pk(ext.base, compiled_nvars);
            for (const auto& [e, coeff] : acc) pk.add_term(e, coeff[k]);
            out.push_back(std::move(pk));
        }
    }
    return out;
}

std::vector<std::string> compiled_names(const PolynomialSystem& sys, int d) {
    std::vector<std::string> names;
    for (const std::string& v : sys.variables)
        for (int i = 1; i <= d; ++i) names.push_back(v + "_" + std::to_string(i));
    return names;
}

// The linear substitution x_j = sum_i alpha_i y_{j,i}; fixed variables become
// the constant 1.
std::vector<ExtPoly> build_substitutions(const ExtensionData& ext, int nsource,
                                         const std::vector<int>& fixed) {
    const int nvars = nsource * ext.d;
    std::vector<ExtPoly> subs(nsource);
    for (int j = 0; j < nsource; ++j) {
        if (std::find(fixed.begin(), fixed.end(), j) != fixed.end()) {
            ext_poly_add_term(ext, subs[j], std::vector<unsigned>(nvars, 0), ext_unit(ext, 0));
            continue;
        }
        for (int i = 0; i < ext.d; ++i) {
            std::vector<unsigned> e(nvars, 0);
            e[j * ext.d + i] = 1;
            ext_poly_add_term(ext, subs[j], e, ext_unit(ext, i));
        }
    }
    return subs;
}

}  // namespace

CompiledRestriction restrict_affine(const PolynomialSystem& sys, const ExtensionData& ext) {
    sys.validate();
    ext.validate();
    if (sys.ambient.kind != Ambient::Kind::Affine)
        fail(ErrorKind::DomainError, "restrict_affine needs an affine system");
    if (sys.field != ext.absolute)
        fail(ErrorKind::InconsistentExtensionTable, "system field must be the extension's absolute field");
    const int n = static_cast<int>(sys.variables.size());
    CompiledRestriction out;
    out.ext = ext;
    out.source = sys;
    out.compiled_vars = compiled_names(sys, ext.d);
    CompiledChart chart;
    auto subs = build_substitutions(ext, n, {});
    chart.equations = compile_polys(ext, sys.polynomials, subs, n * ext.d);
    chart.nonvanishing = compile_polys(ext, sys.nonvanishing, subs, n * ext.d);
    out.charts.push_back(std::move(chart));
    return out;
}

CompiledRestriction restrict_projective(const PolynomialSystem& sys, const ExtensionData& ext) {
    sys.validate();
    ext.validate();
    if (sys.ambient.kind != Ambient::Kind::Projective)
        fail(ErrorKind::DomainError, "restrict_projective needs a projective system");
    if (sys.field != ext.absolute)
        fail(ErrorKind::InconsistentExtensionTable, "system field must be the extension's absolute field");
    const int n = static_cast<int>(sys.variables.size());
    CompiledRestriction out;
    out.ext = ext;
    out.source = sys;
    out.compiled_vars = compiled_names(sys, ext.d);

    // Cartesian product of one fixed variable per block, in variable order.
    std::vector<std::vector<int>> choices{{}};
    for (const auto& [b, e] : sys.ambient.blocks) {
        std::vector<std::vector<int>> next;
        for (const auto& partial : choices)
            for (int k = b; k < e; ++k) {
                auto c = partial;
                c.push_back(k);
                next.push_back(std::move(c));
            }
        choices = std::move(next);
    }
    for (const auto& fixed : choices) {
        CompiledChart chart;
        chart.fixed_source_vars = fixed;
        auto subs = build_substitutions(ext, n, fixed);
        chart.equations = compile_polys(ext, sys.polynomials, subs, n * ext.d);
        chart.nonvanishing = compile_polys(ext, sys.nonvanishing, subs, n * ext.d);
        out.charts.push_back(std::move(chart));
    }
    return out;
}

std::vector<FieldElement> point_up(const CompiledRestriction& c, size_t chart,
                                   const std::vector<FieldElement>& y) {
    const ExtensionData& ext = c.ext;
    if (!ext.absolute) fail(ErrorKind::UnsupportedField, "point maps need an absolute field");
    if (chart >= c.charts.size()) fail(ErrorKind::DomainError, "chart index");
    const CompiledChart& ch = c.charts[chart];
    if (static_cast<int>(y.size()) != c.compiled_var_count())
        fail(ErrorKind::DomainError, "compiled point size");
    for (const Poly& eq : ch.equations)
        if (!eq.evaluate(y).is_zero())
            fail(ErrorKind::NotOnVariety, "point does not satisfy the compiled system");

    const int n = static_cast<int>(c.source.variables.size());
    std::vector<FieldElement> x;
    x.reserve(n);
    for (int j = 0; j < n; ++j) {
        if (std::find(ch.fixed_source_vars.begin(), ch.fixed_source_vars.end(), j) !=
            ch.fixed_source_vars.end()) {
            x.push_back(ext.absolute->one());
            continue;
        }
        QVec alpha(ext.d);
        for (int i = 0; i < ext.d; ++i) {
            const FieldElement& yi = y[j * ext.d + i];
            alpha[i] = yi.rational_part();
        }
        x.push_back(ext.compose(alpha));
    }
    for (const Poly& eq : c.source.polynomials)
        if (!eq.evaluate(x).is_zero())
            fail(ErrorKind::NotOnVariety, "image does not satisfy the source system");
    return x;
}

std::vector<FieldElement> point_down(const CompiledRestriction& c, size_t chart,
                                     const std::vector<FieldElement>& x) {
    const ExtensionData& ext = c.ext;
    if (!ext.absolute) fail(ErrorKind::UnsupportedField, "point maps need an absolute field");
    if (chart >= c.charts.size()) fail(ErrorKind::DomainError, "chart index");
    const CompiledChart& ch = c.charts[chart];
    const int n = static_cast<int>(c.source.variables.size());
    if (static_cast<int>(x.size()) != n) fail(ErrorKind::DomainError, "source point size");
    for (int fixed : ch.fixed_source_vars)
        if (!(x[fixed] == ext.absolute->one()))
            fail(ErrorKind::NotOnVariety, "point not normalized for this chart");
    for (const Poly& eq : c.source.polynomials)
        if (!eq.evaluate(x).is_zero())
            fail(ErrorKind::NotOnVariety, "point does not satisfy the source system");

    std::vector<FieldElement> y(c.compiled_var_count(), ext.base->zero());
    for (int j = 0; j < n; ++j) {
        QVec alpha = ext.decompose(x[j]);
        for (int i = 0; i < ext.d; ++i) y[j * ext.d + i] = ext.base->from_rational(alpha[i]);
    }
    for (const Poly& eq : ch.equations)
        if (!eq.evaluate(y).is_zero())
            fail(ErrorKind::Internal, "compiled system does not vanish on an F-point image");
    return y;
}

std::pair<size_t, std::vector<FieldElement>> chart_for_point(const CompiledRestriction& c,
                                                             const std::vector<FieldElement>& x) {
    if (c.source.ambient.kind != Ambient::Kind::Projective)
        return {0, x};
    for (size_t idx = 0; idx < c.charts.size(); ++idx) {
        const auto& fixed = c.charts[idx].fixed_source_vars;
        bool usable = true;
        for (int k : fixed) usable = usable && !x[k].is_zero();
        if (!usable) continue;
        std::vector<FieldElement> scaled = x;
        for (size_t b = 0; b < c.source.ambient.blocks.size(); ++b) {
            auto [lo, hi] = c.source.ambient.blocks[b];
            FieldElement inv = inverse(x[fixed[b]]);
            for (int j = lo; j < hi; ++j) scaled[j] = scaled[j] * inv;
        }
        return {idx, scaled};
    }
    fail(ErrorKind::AllZero, "point has a zero block");
}

ResP1Quadric res_p1_quadric(const ExtensionData& ext) {
    ext.validate();
    if (ext.d != 2) fail(ErrorKind::NotQuadratic, "Res P^1 quadric needs a quadratic extension");
    if (!ext.absolute) fail(ErrorKind::UnsupportedField, "point maps need an absolute field");
    // alpha_1^2 = t0 + t1 alpha_1 with t0, t1 in E (rational here).
    QQ t0 = ext.table[1][1][0].rational_part();
    QQ t1 = ext.table[1][1][1].rational_part();
    ResP1Quadric q;
    q.ext = ext;
    q.vars = {"u0", "u1", "u2", "u3"};
    q.norm_b = t1;   // N(a + b alpha) = a^2 + t1 ab - t0 b^2
    q.norm_c = -t0;
    const NumberField& E = *ext.base;
    Poly rel(&E, 4);
    rel.add_term({1, 0, 0, 1}, E.one());
    rel.add_term({0, 2, 0, 0}, E.from_rational(QQ(-1)));
    rel.add_term({0, 1, 1, 0}, E.from_rational(-q.norm_b));
    rel.add_term({0, 0, 2, 0}, E.from_rational(-q.norm_c));
    q.relation = rel;
    return q;
}

std::vector<FieldElement> ResP1Quadric::embed(const std::vector<FieldElement>& x01) const {
    if (x01.size() != 2) fail(ErrorKind::DomainError, "expected P^1 coordinates");
    const FieldElement& x0 = x01[0];
    const FieldElement& x1 = x01[1];
    if (x0.is_zero() && x1.is_zero()) fail(ErrorKind::AllZero, "zero coordinate vector");
    const NumberField& E = *ext.base;
    QQ t1 = ext.table[1][1][1].rational_part();
    auto conj = [&](const FieldElement& z) {
        QVec a = ext.decompose(z);
        return ext.compose({a[0] + t1 * a[1], -a[1]});
    };
    FieldElement n0 = x0 * conj(x0);
    FieldElement n1 = x1 * conj(x1);
    FieldElement cross = x0 * conj(x1);
    QVec nc0 = ext.decompose(n0), nc1 = ext.decompose(n1), ncx = ext.decompose(cross);
    if (nc0[1] != 0 || nc1[1] != 0) fail(ErrorKind::Internal, "norms must land in the base field");
    std::vector<FieldElement> u = {E.from_rational(nc0[0]), E.from_rational(ncx[0]),
                                   E.from_rational(ncx[1]), E.from_rational(nc1[0])};
    if (!relation.evaluate(u).is_zero()) fail(ErrorKind::Internal, "embedding misses the quadric");
    return u;
}

std::vector<FieldElement> ResP1Quadric::lift(const std::vector<FieldElement>& u) const {
    if (u.size() != 4) fail(ErrorKind::DomainError, "expected P^3 coordinates");
    if (!relation.evaluate(u).is_zero())
        fail(ErrorKind::NotOnVariety, "point is not on the quadric");
    bool all_zero = true;
    for (const auto& c : u) all_zero = all_zero && c.is_zero();
    if (all_zero) fail(ErrorKind::AllZero, "zero coordinate vector");
    const NumberField& F = *ext.absolute;
    QQ t1 = ext.table[1][1][1].rational_part();
    QQ u0 = u[0].rational_part(), u1 = u[1].rational_part(), u2 = u[2].rational_part(),
       u3 = u[3].rational_part();
    std::vector<FieldElement> x;
    if (u0 != 0) {
        // (x0 : x1) ~ (u0 : conj(u1 + u2 alpha)).
        x = {ext.compose({u0, QQ(0)}), ext.compose({u1 + t1 * u2, -u2})};
    } else {
        // On the quadric u0 = 0 forces q(u1,u2) = 0; the norm form is
        // anisotropic for a field extension, so u = (0:0:0:u3) -> (0:1).
        if (u3 == 0) fail(ErrorKind::NotOnVariety, "degenerate quadric point");
        x = {F.zero(), F.one()};
    }
    // Round-trip check up to projective scaling over E.
    std::vector<FieldElement> back = embed(x);
    QQ scale;
    bool have_scale = false;
    for (int i = 0; i < 4; ++i) {
        QQ ui = u[i].rational_part(), bi = back[i].rational_part();
        if (ui == 0 && bi == 0) continue;
        if (ui == 0 || bi == 0) fail(ErrorKind::NotOnVariety, "lift does not project back");
        QQ s = bi / ui;
        if (have_scale && s != scale) fail(ErrorKind::NotOnVariety, "lift does not project back");
        scale = s;
        have_scale = true;
    }
    return x;
}

std::string dump(const CompiledRestriction& c) {
    std::ostringstream out;
    out << "extension degree " << c.ext.d << " over "
        << (c.ext.base->is_rationals() ? "Q" : "E") << "\n";
    out << "source_vars";
    for (const auto& v : c.source.variables) out << " " << v;
    out << "\ncompiled_vars";
    for (const auto& v : c.compiled_vars) out << " " << v;
    out << "\n";
    for (size_t i = 0; i < c.charts.size(); ++i) {
        out << "chart " << i << " fixed";
        if (c.charts[i].fixed_source_vars.empty()) out << " -";
        for (int k : c.charts[i].fixed_source_vars) out << " " << c.source.variables[k];
        out << "\n";
        for (const Poly& eq : c.charts[i].equations)
            out << "  eq " << eq.str(c.compiled_vars) << "\n";
        for (const Poly& nz : c.charts[i].nonvanishing)
            out << "  nonzero " << nz.str(c.compiled_vars) << "\n";
    }
    return out.str();
}

}  // namespace heightlab::weilres
