#include "heightlab/numberfield.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>

#include "heightlab/polyzp.hpp"

namespace heightlab::nf {

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field != b.field) fail(ErrorKind::DomainError, "elements of different fields");
}

// Polynomial remainder over Q, for the Sturm chain.
QVec poly_rem(QVec a, const QVec& b) {
    while (a.size() >= b.size() && !a.empty()) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        QQ f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

int sign_at_infinity(const QVec& p, bool plus) {
    if (p.empty()) return 0;
    int lead = sgn(p.back());
    if (plus) return lead;
    return (p.size() - 1) % 2 == 0 ? lead : -lead;
}

// Number of real roots of a squarefree polynomial, by Sturm's theorem.
int sturm_real_roots(const ZVec& f) {
    std::vector<QVec> chain;
    QVec p0(f.begin(), f.end());
    chain.push_back(p0);
    QVec p1;
    for (size_t i = 1; i < p0.size(); ++i) p1.push_back(QQ(static_cast<long>(i)) * p0[i]);
    chain.push_back(p1);
    while (chain.back().size() > 1) {
        QVec r = poly_rem(chain[chain.size() - 2], chain.back());
        for (QQ& q : r) q = -q;
        if (r.empty()) break;
        chain.push_back(r);
    }
    auto variations = [&](bool plus) {
        int count = 0, prev = 0;
        for (const QVec& p : chain) {
            int s = sign_at_infinity(p, plus);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    };
    return variations(false) - variations(true);
}

// Irreducibility certificate over Q via factorisation degree patterns modulo
// several primes: the degrees of any rational factor must be a subset sum of
// the mod-p factor degrees for every prime of squarefree reduction.
bool certify_irreducible(const ZVec& f) {
    const int d = static_cast<int>(f.size()) - 1;
    if (d == 1) return true;
    // Rational root test (monic: integer roots divide the constant term);
    // skipped for huge constant terms, where the pattern certificate decides.
    if (f[0] == 0) return false;
    std::vector<ZZ> divisors;
    if (abs(f[0]) <= 1000000000000L)
        for (ZZ t(1); t * t <= abs(f[0]); ++t)
            if (abs(f[0]) % t == 0) {
                divisors.push_back(t);
                divisors.push_back(abs(f[0]) / t);
            }
    for (const ZZ& t : divisors)
        for (int s : {1, -1}) {
            ZZ val(0), x = s * t;
            for (int i = d; i >= 0; --i) val = val * x + f[i];
            if (val == 0) return false;
        }
    if (d == 2) {
        ZZ disc = f[1] * f[1] - 4 * f[2] * f[0];
        if (disc >= 0 && isqrt(disc) * isqrt(disc) == disc) return false;
        return true;
    }
    std::vector<bool> possible(d + 1, true);
    int tried = 0;
    for (long p = 2; tried < 50; ++p) {
        bool prime = p >= 2;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        std::vector<int64_t> coeffs(f.size());
        for (size_t i = 0; i < f.size(); ++i)
            coeffs[i] = static_cast<int64_t>(mpz_fdiv_ui(f[i].get_mpz_t(), p));
        PolyZp fp = zp_from_coeffs(static_cast<uint64_t>(p), coeffs);
        if (fp.deg() != d) continue;  // p divides the leading coefficient
        if (zp_gcd(fp, zp_derivative(fp)).deg() != 0) continue;
        ++tried;
        auto factors = zp_factor(fp);
        std::vector<bool> sums(d + 1, false);
        sums[0] = true;
        for (const auto& fac : factors)
            for (int s = d; s >= fac.poly.deg(); --s)
                if (sums[s - fac.poly.deg()]) sums[s] = true;
        for (int s = 0; s <= d; ++s)
            if (!sums[s]) possible[s] = false;
        bool proper = false;
        for (int s = 1; s < d; ++s) proper |= possible[s];
        if (!proper) return true;
    }
    return false;
}

QMat invert_qmat(QMat m) {
    const size_t n = m.size();
    QMat inv(n, QVec(n, QQ(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t i = c; i < n; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p == n) fail(ErrorKind::InconsistentBasis, "integral basis does not span");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        QQ f = QQ(1) / m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] *= f;
            inv[c][j] *= f;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            QQ g = m[i][c];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= g * m[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace

bool FieldElement::is_zero() const {
    for (const QQ& c : coords)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coords.size(); ++i)
        if (coords[i] != 0) return false;
    // Valid because basis element 0 is required to be 1 (checked at build).
    return true;
}

QQ FieldElement::rational_part() const {
    if (!is_rational()) fail(ErrorKind::DomainError, "element is not rational");
    return coords.empty() ? QQ(0) : coords[0];
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    FieldElement r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    FieldElement r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return r;
}

FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (QQ& c : r.coords) c = -c;
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const NumberField& F = *a.field;
    const int d = F.degree();
    FieldElement r{a.field, QVec(d, QQ(0))};
    for (int i = 0; i < d; ++i) {
        if (a.coords[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b.coords[j] == 0) continue;
            QQ f = a.coords[i] * b.coords[j];
            const ZVec& row = F.mult_row(i, j);
            for (int k = 0; k < d; ++k)
                if (row[k] != 0) r.coords[k] += f * row[k];
        }
    }
    return r;
}

FieldElement operator*(const QQ& a, const FieldElement& b) {
    FieldElement r = b;
    for (QQ& c : r.coords) c *= a;
    return r;
}

FieldElement inverse(const FieldElement& a) {
    if (a.is_zero()) fail(ErrorKind::DomainError, "inverse of zero");
    const NumberField& F = *a.field;
    if (F.degree() == 1) return F.from_rational(QQ(1) / a.coords[0]);
    if (F.degree() == 2) {
        // x^{-1} = (Tr(x) - x) / N(x), with the table entries of beta^2 giving
        // Tr(beta) and -N(beta) directly (basis {1, beta} with basis[0] = 1).
        const QQ& x0 = a.coords[0];
        const QQ& x1 = a.coords[1];
        QQ t(F.mult_row(1, 1)[1]);
        QQ nbeta(-F.mult_row(1, 1)[0]);
        QQ n = x0 * x0 + t * x0 * x1 + nbeta * x1 * x1;
        return F.element({(x0 + t * x1) / n, -x1 / n});
    }
    QMat m = F.mult_matrix(a);
    auto sol = solve_rational(std::move(m), F.one().coords);
    if (!sol) fail(ErrorKind::Internal, "singular multiplication matrix for nonzero element");
    return F.element(std::move(*sol));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * inverse(b); }

bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field == b.field && a.coords == b.coords;
}

QQ norm(const FieldElement& a) { return det_rational(a.field->mult_matrix(a)); }

QQ trace(const FieldElement& a) {
    QMat m = a.field->mult_matrix(a);
    QQ t(0);
    for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

ZZ Place::residue_cardinality() const {
    return zz_pow(ZZ(p), static_cast<unsigned long>(residue_degree));
}

ZZ IdealZ::norm() const {
    if (is_zero()) return ZZ(0);
    ZZ n(1);
    for (size_t i = 0; i < hnf.size(); ++i) n *= hnf[i][i];
    return abs(n);
}

IdealZ ideal_from_elements(const NumberField& F, const std::vector<FieldElement>& gens) {
    const int d = F.degree();
    ZMat rows;
    for (const FieldElement& g : gens) {
        if (g.is_zero()) continue;
        if (!is_integral(g)) fail(ErrorKind::DomainError, "ideal generators must be integral");
        for (int j = 0; j < d; ++j) {
            FieldElement prod = g * F.element([&] {
                QVec e(d, QQ(0));
                e[j] = 1;
                return e;
            }());
            ZVec row(d);
            for (int k = 0; k < d; ++k) row[k] = prod.coords[k].get_num();
            rows.push_back(std::move(row));
        }
    }
    IdealZ ideal{&F, hnf_rows(std::move(rows))};
    if (!ideal.hnf.empty() && static_cast<int>(ideal.hnf.size()) != d)
        fail(ErrorKind::Internal, "ideal lattice not full rank");
    return ideal;
}

IdealZ ideal_mul(const IdealZ& a, const IdealZ& b) {
    const NumberField& F = *a.field;
    const int d = F.degree();
    if (a.is_zero() || b.is_zero()) return IdealZ{&F, {}};
    ZMat rows;
    for (const ZVec& ra : a.hnf)
        for (const ZVec& rb : b.hnf) {
            QVec ca(ra.begin(), ra.end()), cb(rb.begin(), rb.end());
            FieldElement prod = F.element(ca) * F.element(cb);
            ZVec row(d);
            for (int k = 0; k < d; ++k) row[k] = prod.coords[k].get_num();
            rows.push_back(std::move(row));
        }
    return IdealZ{&F, hnf_rows(std::move(rows))};
}

bool ideal_contains(const IdealZ& a, const FieldElement& x) {
    if (a.is_zero()) return x.is_zero();
    const int d = a.field->degree();
    ZVec target(d);
    for (int k = 0; k < d; ++k) {
        if (x.coords[k].get_den() != 1) fail(ErrorKind::DomainError, "membership needs integral element");
        target[k] = x.coords[k].get_num();
    }
    // HNF rows are in echelon form with the pivot of row i in column i (full
    // rank), zeros below each pivot: solve the coefficients front to back.
    for (int i = 0; i < d; ++i) {
        if (target[i] % a.hnf[i][i] != 0) return false;
        ZZ q = target[i] / a.hnf[i][i];
        for (int k = 0; k < d; ++k) target[k] -= q * a.hnf[i][k];
    }
    for (const ZZ& t : target)
        if (t != 0) return false;
    return true;
}

bool operator==(const IdealZ& a, const IdealZ& b) {
    return a.field == b.field && a.hnf == b.hnf;
}

std::shared_ptr<const NumberField> make_field_internal(const ZVec& minpoly, const QMat& basis,
                                                       long h, long w) {
    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->build(minpoly, basis, h, w);
    return field;
}

std::shared_ptr<const NumberField> NumberField::create(const ZVec& minpoly_coeffs,
                                                       const QMat& integral_basis,
                                                       long class_number, long roots_of_unity) {
    return make_field_internal(minpoly_coeffs, integral_basis, class_number, roots_of_unity);
}

const NumberField& NumberField::rationals() {
    static auto field = make_field_internal({ZZ(0), ZZ(1)}, {{QQ(1)}}, 1, 2);
    return *field;
}

const NumberField& NumberField::gaussian() {
    static auto field =
        make_field_internal({ZZ(1), ZZ(0), ZZ(1)}, {{QQ(1), QQ(0)}, {QQ(0), QQ(1)}}, 1, 4);
    return *field;
}

const NumberField& NumberField::eisenstein() {
    static auto field =
        make_field_internal({ZZ(1), ZZ(1), ZZ(1)}, {{QQ(1), QQ(0)}, {QQ(0), QQ(1)}}, 1, 6);
    return *field;
}

void NumberField::build(const ZVec& minpoly_coeffs, const QMat& integral_basis, long h, long w) {
    minpoly_ = minpoly_coeffs;
    while (!minpoly_.empty() && minpoly_.back() == 0) minpoly_.pop_back();
    if (minpoly_.size() < 2) fail(ErrorKind::DomainError, "minimal polynomial must be nonconstant");
    if (minpoly_.back() != 1) fail(ErrorKind::DomainError, "minimal polynomial must be monic");
    d_ = static_cast<int>(minpoly_.size()) - 1;
    if (!certify_irreducible(minpoly_))
        fail(ErrorKind::ReduciblePolynomial, "minimal polynomial is not certified irreducible");

    if (static_cast<int>(integral_basis.size()) != d_)
        fail(ErrorKind::InconsistentBasis, "basis size != degree");
    for (const QVec& row : integral_basis)
        if (static_cast<int>(row.size()) != d_)
            fail(ErrorKind::InconsistentBasis, "basis row size != degree");
    basis_ = integral_basis;
    basis_inv_ = invert_qmat(basis_);
    // The canonical-form and rational-part logic relies on basis[0] == 1.
    if (!(basis_[0][0] == 1)) fail(ErrorKind::InconsistentBasis, "first basis element must be 1");
    for (int j = 1; j < d_; ++j)
        if (basis_[0][j] != 0) fail(ErrorKind::InconsistentBasis, "first basis element must be 1");

    // Multiplication table via polynomial products mod the minimal polynomial.
    auto reduce_powers = [&](QVec poly) {
        while (poly.size() > static_cast<size_t>(d_)) {
            QQ lead = poly.back();
            poly.pop_back();
            if (lead == 0) continue;
            size_t shift = poly.size() - static_cast<size_t>(d_);
            for (int i = 0; i < d_; ++i) poly[shift + i] -= lead * minpoly_[i];
        }
        poly.resize(d_, QQ(0));
        return poly;
    };
    table_.assign(d_, std::vector<ZVec>(d_));
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            QVec prod(2 * d_ - 1, QQ(0));
            for (int a = 0; a < d_; ++a)
                for (int b = 0; b < d_; ++b) prod[a + b] += basis_[i][a] * basis_[j][b];
            QVec coords = powers_to_basis_internal(reduce_powers(std::move(prod)));
            ZVec row(d_);
            for (int k = 0; k < d_; ++k) {
                if (coords[k].get_den() != 1)
                    fail(ErrorKind::InconsistentBasis, "basis not closed under multiplication");
                row[k] = coords[k].get_num();
            }
            table_[i][j] = std::move(row);
        }
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < i; ++j)
            if (table_[i][j] != table_[j][i])
                fail(ErrorKind::InconsistentBasis, "multiplication table not commutative");

    // Associativity on all basis triples.
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            for (int k = 0; k < d_; ++k) {
                FieldElement bi = basis_element(i), bj = basis_element(j), bk = basis_element(k);
                if (!((bi * bj) * bk == bi * (bj * bk)))
                    fail(ErrorKind::InconsistentBasis, "multiplication table not associative");
            }

    // Discriminant = det of the trace form.
    QMat tf(d_, QVec(d_, QQ(0)));
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) tf[i][j] = trace(basis_element(i) * basis_element(j));
    QQ disc = det_rational(tf);
    if (disc == 0) fail(ErrorKind::InconsistentBasis, "degenerate trace form");
    if (disc.get_den() != 1) fail(ErrorKind::InconsistentBasis, "non-integral discriminant");
    disc_ = disc.get_num();

    r1_ = sturm_real_roots(minpoly_);
    if ((d_ - r1_) % 2 != 0) fail(ErrorKind::Internal, "signature parity");
    r2_ = (d_ - r1_) / 2;

    h_ = h;
    w_ = w;
    if (h_ < 1 || w_ < 1) fail(ErrorKind::DomainError, "class number and unit count are positive");

    // Torsion units; for degree <= 2 we can enumerate them and check w.
    units_.clear();
    if (d_ == 1) {
        units_ = {from_rational(QQ(1)), from_rational(QQ(-1))};
    } else if (is_imaginary_quadratic()) {
        FieldElement b1 = basis_element(0), b2 = basis_element(1);
        QQ alpha = norm(b1), gamma = norm(b2);
        QQ beta = norm(b1 + b2) - alpha - gamma;
        QQ dprime = 4 * alpha * gamma - beta * beta;  // positive for definite forms
        if (dprime <= 0) fail(ErrorKind::InconsistentBasis, "norm form not definite");
        auto coord_bound = [&](const QQ& diag) {
            QQ q = 4 * diag / dprime;  // |coord|^2 <= 4*diag/dprime at norm 1
            ZZ fl = q.get_num() / q.get_den();
            return to_i64(isqrt(fl)) + 1;
        };
        long amax = coord_bound(gamma), bmax = coord_bound(alpha);
        for (long a = -amax; a <= amax; ++a)
            for (long b = -bmax; b <= bmax; ++b) {
                if (a == 0 && b == 0) continue;
                FieldElement u = element({QQ(a), QQ(b)});
                if (norm(u) == 1) units_.push_back(u);
            }
        if (static_cast<long>(units_.size()) != w_)
            fail(ErrorKind::InconsistentBasis, "asserted root-of-unity count does not match");
    } else if (r1_ > 0) {
        units_ = {from_rational(QQ(1)), from_rational(QQ(-1))};
        if (w_ != 2) fail(ErrorKind::InconsistentBasis, "real embeddings force w = 2");
    }
    // Higher-degree totally imaginary fields: w accepted as asserted.
}

QVec NumberField::powers_to_basis_internal(const QVec& powers) const {
    QVec coords(d_, QQ(0));
    for (int k = 0; k < d_; ++k)
        for (int j = 0; j < d_; ++j) coords[k] += powers[j] * basis_inv_[j][k];
    return coords;
}

FieldElement NumberField::basis_element(int i) const {
    QVec c(d_, QQ(0));
    c[i] = 1;
    return FieldElement{this, std::move(c)};
}

FieldElement NumberField::element(QVec coords) const {
    if (static_cast<int>(coords.size()) != d_) fail(ErrorKind::DomainError, "coordinate size");
    return FieldElement{this, std::move(coords)};
}

FieldElement NumberField::from_rational(const QQ& q) const {
    QVec c(d_, QQ(0));
    c[0] = q;
    return FieldElement{this, std::move(c)};
}

FieldElement NumberField::zero() const { return from_rational(QQ(0)); }
FieldElement NumberField::one() const { return from_rational(QQ(1)); }

FieldElement NumberField::generator() const {
    QVec powers(d_, QQ(0));
    if (d_ == 1) return zero();  // theta = 0 for the rational field (minpoly x)
    powers[1] = 1;
    return FieldElement{this, powers_to_basis_internal(powers)};
}

QMat NumberField::mult_matrix(const FieldElement& x) const {
    QMat m(d_, QVec(d_, QQ(0)));
    for (int j = 0; j < d_; ++j) {
        FieldElement col = x * basis_element(j);
        for (int i = 0; i < d_; ++i) m[i][j] = col.coords[i];
    }
    return m;
}

QVec NumberField::powers_to_basis(const QVec& powers) const {
    QVec padded = powers;
    padded.resize(d_, QQ(0));
    return powers_to_basis_internal(padded);
}

QVec NumberField::basis_to_powers(const QVec& coords) const {
    QVec powers(d_, QQ(0));
    for (int j = 0; j < d_; ++j)
        for (int k = 0; k < d_; ++k) powers[j] += coords[k] * basis_[k][j];
    return powers;
}

namespace {

std::vector<std::complex<double>> durand_kerner(const ZVec& f) {
    const int d = static_cast<int>(f.size()) - 1;
    std::vector<std::complex<double>> coeffs;
    for (const ZZ& c : f) coeffs.push_back({mpz_get_d(c.get_mpz_t()), 0.0});
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 0;
        for (int i = d; i >= 0; --i) v = v * z + coeffs[i];
        return v;
    };
    std::vector<std::complex<double>> roots(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc = seed;
    for (int i = 0; i < d; ++i) {
        roots[i] = acc;
        acc *= seed;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double worst = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= roots[i] - roots[j];
            std::complex<double> delta = eval(roots[i]) / den;
            roots[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    return roots;
}

// One mpfr complex Newton refinement pass at precision `prec`.
void newton_refine(const ZVec& f, long prec, CI& z) {
    const int d = static_cast<int>(f.size()) - 1;
    for (int step = 0; step < 80; ++step) {
        CI v(prec), dv(prec);
        v = CI::from_q(QQ(0), QQ(0), prec);
        dv = CI::from_q(QQ(0), QQ(0), prec);
        CI mid(RI::from_d(z.re.mid(), prec), RI::from_d(z.im.mid(), prec));
        for (int i = d; i >= 0; --i) {
            dv = dv.mul(mid).add(v);
            v = v.mul(mid).add(CI::from_q(QQ(f[i]), QQ(0), prec));
        }
        if (dv.abs2().contains_zero()) break;
        CI delta = v.div(dv);
        CI next(mid.re.sub(delta.re), mid.im.sub(delta.im));
        double dw = std::abs(delta.re.mid()) + std::abs(delta.im.mid());
        z = next;
        double scale = std::abs(z.re.mid()) + std::abs(z.im.mid()) + 1.0;
        if (dw < scale * std::pow(2.0, -static_cast<double>(prec))) break;
    }
}

// Inclusion radius 2d*|f(z)|/|f'(z)| around the Newton limit.
double root_radius(const ZVec& f, long prec, const CI& z) {
    const int d = static_cast<int>(f.size()) - 1;
    CI v = CI::from_q(QQ(0), QQ(0), prec);
    CI dv = CI::from_q(QQ(0), QQ(0), prec);
    for (int i = d; i >= 0; --i) {
        dv = dv.mul(z).add(v);
        v = v.mul(z).add(CI::from_q(QQ(f[i]), QQ(0), prec));
    }
    RI num = v.abs();
    RI den = dv.abs();
    if (den.contains_zero()) fail(ErrorKind::PrecisionExhausted, "derivative vanishes near root");
    double q = 2.0 * d * num.hi_d() / den.lo_d();
    return q * (1.0 + 1e-12) + 1e-300;
}

}  // namespace

std::vector<CI> NumberField::isolate_roots(long prec) const {
    ZVec f = minpoly_;
    const int d = d_;
    if (d == 1) {
        // Root of x + a0 is -a0 exactly.
        QQ root = QQ(-f[0]);
        return {CI::from_q(root, QQ(0), prec)};
    }
    auto seeds = durand_kerner(f);
    for (long attempt_prec = prec; attempt_prec <= (1L << 14); attempt_prec *= 2) {
        std::vector<CI> balls;
        bool ok = true;
        for (const auto& s : seeds) {
            CI z(RI::from_d(s.real(), attempt_prec), RI::from_d(s.imag(), attempt_prec));
            newton_refine(f, attempt_prec, z);
            double r = root_radius(f, attempt_prec, z);
            if (!(r < 1e-6)) {
                ok = false;
                break;
            }
            balls.push_back(CI(z.re.widened(r), z.im.widened(r)));
        }
        if (!ok) continue;
        // Certified pairwise disjoint?
        bool disjoint = true;
        for (size_t i = 0; i < balls.size() && disjoint; ++i)
            for (size_t j = i + 1; j < balls.size() && disjoint; ++j)
                if (!balls[i].certainly_distinct(balls[j])) disjoint = false;
        if (!disjoint) continue;

        // Identify real roots by Sturm count; take the r1 smallest |Im|.
        std::vector<size_t> order(balls.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return std::abs(balls[a].im.mid()) < std::abs(balls[b].im.mid());
        });
        std::vector<CI> reals, complexes;
        for (size_t i = 0; i < order.size(); ++i) {
            CI& ball = balls[order[i]];
            if (static_cast<int>(i) < r1_) {
                ball.im = RI::exact_zero(attempt_prec);
                reals.push_back(ball);
            } else if (ball.im.mid() > 0) {
                complexes.push_back(ball);
            }
        }
        if (static_cast<int>(complexes.size()) != r2_) continue;
        std::sort(reals.begin(), reals.end(),
                  [](const CI& a, const CI& b) { return a.re.mid() < b.re.mid(); });
        std::sort(complexes.begin(), complexes.end(), [](const CI& a, const CI& b) {
            if (a.re.mid() != b.re.mid()) return a.re.mid() < b.re.mid();
            return a.im.mid() < b.im.mid();
        });
        std::vector<CI> out = reals;
        out.insert(out.end(), complexes.begin(), complexes.end());
        return out;
    }
    fail(ErrorKind::PrecisionExhausted, "could not certify root isolation");
}

std::vector<CI> NumberField::embeddings(long prec) const {
    std::lock_guard<std::mutex> lock(embed_mutex_);
    auto it = embed_cache_.find(prec);
    if (it != embed_cache_.end()) return it->second;
    auto roots = isolate_roots(prec);
    embed_cache_[prec] = roots;
    return roots;
}

CI NumberField::embed(const FieldElement& x, int embedding_index, long prec) const {
    auto roots = embeddings(prec);
    const CI& theta = roots.at(embedding_index);
    QVec powers = basis_to_powers(x.coords);
    CI v = CI::from_q(QQ(0), QQ(0), prec);
    for (int i = d_ - 1; i >= 0; --i) v = v.mul(theta).add(CI::from_q(powers[i], QQ(0), prec));
    return v;
}

double absolute_value(const FieldElement& x, const Place& v, long prec) {
    if (v.kind == Place::Kind::Finite) {
        if (x.is_zero()) fail(ErrorKind::ZeroAtFinitePlace, "|0|_v undefined at finite places");
        QQ a = finite_abs_exact(x, v);
        return a.get_d();
    }
    if (x.is_zero()) return 0.0;
    CI s = x.field->embed(x, v.embedding_index, prec);
    if (v.kind == Place::Kind::Real) return s.re.abs().mid();
    return s.abs2().mid();
}

QQ finite_abs_exact(const FieldElement& x, const Place& v) {
    if (x.is_zero()) fail(ErrorKind::ZeroAtFinitePlace, "|0|_v undefined at finite places");
    long o = ord_at(x, v);
    return qq_pow(QQ(v.p), -static_cast<long>(v.residue_degree) * o);
}

long ord_at(const FieldElement& x, const Place& v) {
    if (v.kind != Place::Kind::Finite) fail(ErrorKind::DomainError, "ord_at needs a finite place");
    if (x.is_zero()) fail(ErrorKind::ZeroAtFinitePlace, "valuation of zero");
    const NumberField& F = *x.field;
    // Split off denominators: ord(x) = ord(num) - ord(den), den rational.
    ZZ den(1);
    for (const QQ& c : x.coords) {
        ZZ d;
        mpz_lcm(d.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        den = d;
    }
    FieldElement y = QQ(den) * x;
    long den_ord = 0;
    ZZ dd = den;
    while (dd % v.p == 0) {
        dd /= v.p;
        ++den_ord;
    }
    long num_ord = 0;
    IdealZ prime{&F, v.prime_hnf};
    IdealZ power = prime;
    while (ideal_contains(power, y)) {
        ++num_ord;
        power = ideal_mul(power, prime);
        if (num_ord > 4096) fail(ErrorKind::Internal, "runaway valuation");
    }
    return num_ord - static_cast<long>(v.ramification) * den_ord;
}

std::vector<Place> factor_rational_prime(long p, const NumberField& F) {
    if (p < 2) fail(ErrorKind::DomainError, "not a prime");
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) fail(ErrorKind::DomainError, "not a prime");

    // Index of Z[theta] in O_F: index^2 = disc(minpoly)/disc(F).
    const ZVec& f = F.minpoly();
    const int d = F.degree();
    if (d > 1) {
        QVec dpow(d, QQ(0));
        for (int i = 1; i <= d; ++i)
            if (i < static_cast<int>(f.size())) dpow[i - 1] = QQ(i) * QQ(f[i]);
        FieldElement fprime = F.element(F.powers_to_basis(dpow));
        QQ nf = norm(fprime);
        QQ ratio = abs(nf) / abs(QQ(F.discriminant()));
        if (ratio.get_den() != 1) fail(ErrorKind::Internal, "bad discriminant ratio");
        ZZ index2 = ratio.get_num();
        ZZ index = isqrt(index2);
        if (index * index != index2) fail(ErrorKind::Internal, "index not integral");
        if (index % p == 0)
            fail(ErrorKind::IndexDivisor, "prime divides the basis index; supply factorization");
    }

    std::vector<int64_t> coeffs(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        coeffs[i] = static_cast<int64_t>(mpz_fdiv_ui(f[i].get_mpz_t(), static_cast<unsigned long>(p)));
    PolyZp fp = zp_from_coeffs(static_cast<uint64_t>(p), coeffs);
    auto factors = zp_factor(fp);
    std::sort(factors.begin(), factors.end(), [](const ZpFactor& a, const ZpFactor& b) {
        if (a.poly.deg() != b.poly.deg()) return a.poly.deg() < b.poly.deg();
        return a.poly.c < b.poly.c;
    });

    std::vector<Place> places;
    int efsum = 0;
    for (const auto& fac : factors) {
        Place v;
        v.kind = Place::Kind::Finite;
        v.p = p;
        v.residue_degree = fac.poly.deg();
        v.ramification = static_cast<int>(fac.multiplicity);
        v.gpoly.resize(fac.poly.c.size());
        for (size_t i = 0; i < fac.poly.c.size(); ++i) v.gpoly[i] = ZZ(static_cast<long>(fac.poly.c[i]));
        // Prime ideal (p, g(theta)).
        QVec gpow(d, QQ(0));
        for (size_t i = 0; i < v.gpoly.size() && static_cast<int>(i) < d; ++i) gpow[i] = QQ(v.gpoly[i]);
        FieldElement gtheta = F.element(F.powers_to_basis(gpow));
        if (v.residue_degree == d) {
            // (p) itself is prime; g == minpoly reduces to zero.
            gtheta = F.zero();
        }
        IdealZ prime = ideal_from_elements(
            F, {F.from_rational(QQ(p)), gtheta.is_zero() ? F.from_rational(QQ(p)) : gtheta});
        v.prime_hnf = prime.hnf;
        efsum += v.residue_degree * v.ramification;
        places.push_back(std::move(v));
    }
    if (efsum != d) fail(ErrorKind::Internal, "sum e*f != degree");

    // The product of the prime ideals with multiplicity must reconstruct (p).
    IdealZ prod{&F, identity_mat(d)};
    for (const auto& v : places)
        for (int e = 0; e < v.ramification; ++e) prod = ideal_mul(prod, IdealZ{&F, v.prime_hnf});
    IdealZ pideal = ideal_from_elements(F, {F.from_rational(QQ(p))});
    if (!(prod == pideal)) fail(ErrorKind::Internal, "prime factorization does not multiply back");
    return places;
}

std::vector<Place> archimedean_places(const NumberField& F) {
    std::vector<Place> places;
    for (int i = 0; i < F.real_embeddings(); ++i) {
        Place v;
        v.kind = Place::Kind::Real;
        v.embedding_index = i;
        places.push_back(v);
    }
    for (int j = 0; j < F.complex_pairs(); ++j) {
        Place v;
        v.kind = Place::Kind::Complex;
        v.embedding_index = F.real_embeddings() + j;
        places.push_back(v);
    }
    return places;
}

ZZ content_ideal_norm(const std::vector<FieldElement>& coords) {
    if (coords.empty()) fail(ErrorKind::AllZero, "no coordinates");
    const NumberField& F = *coords[0].field;
    bool any = false;
    for (const auto& x : coords) {
        if (!is_integral(x)) fail(ErrorKind::DomainError, "content needs integral coordinates");
        any = any || !x.is_zero();
    }
    if (!any) fail(ErrorKind::AllZero, "all coordinates zero");
    IdealZ content = ideal_from_elements(F, coords);
    return content.norm();
}

int moebius_ideal(const IdealZ& a) {
    if (a.is_zero()) fail(ErrorKind::ZeroIdeal, "Moebius of the zero ideal");
    const NumberField& F = *a.field;
    ZZ n = a.norm();
    if (n == 1) return 1;
    if (!n.fits_slong_p()) fail(ErrorKind::DomainError, "ideal norm too large to factor");
    long nn = n.get_si();
    std::vector<long> primes;
    for (long p = 2; p * p <= nn; ++p)
        if (nn % p == 0) {
            primes.push_back(p);
            while (nn % p == 0) nn /= p;
        }
    if (nn > 1) primes.push_back(nn);

    int prime_count = 0;
    ZZ check(1);
    for (long p : primes) {
        for (const Place& v : factor_rational_prime(p, F)) {
            // Valuation of the ideal = min valuation over its Z-basis.
            long val = -1;
            for (const ZVec& row : a.hnf) {
                QVec c(row.begin(), row.end());
                FieldElement x = F.element(std::move(c));
                if (x.is_zero()) continue;
                long o = ord_at(x, v);
                val = (val < 0) ? o : std::min(val, o);
            }
            if (val < 0) val = 0;
            if (val >= 2) return 0;
            if (val == 1) {
                ++prime_count;
                check *= v.residue_cardinality();
            }
        }
    }
    if (check != a.norm()) fail(ErrorKind::Internal, "ideal valuation bookkeeping");
    return prime_count % 2 == 0 ? 1 : -1;
}

FieldElement gcd_euclidean(FieldElement a, FieldElement b) {
    const NumberField& F = *a.field;
    if (!is_integral(a) || !is_integral(b))
        fail(ErrorKind::DomainError, "euclidean gcd needs integral elements");
    if (F.is_rationals()) {
        ZZ g;
        mpz_gcd(g.get_mpz_t(), a.coords[0].get_num().get_mpz_t(), b.coords[0].get_num().get_mpz_t());
        return F.from_rational(QQ(g));
    }
    if (!F.is_imaginary_quadratic() || abs(F.discriminant()) > 11)
        fail(ErrorKind::UnsupportedField, "euclidean gcd only for norm-euclidean fields");
    int guard = 0;
    while (!b.is_zero()) {
        FieldElement q = a / b;
        QVec rounded(q.coords.size());
        for (size_t i = 0; i < q.coords.size(); ++i) {
            QQ half = q.coords[i] + QQ(1, 2);
            ZZ fl;
            mpz_fdiv_q(fl.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
            rounded[i] = QQ(fl);
        }
        FieldElement r = a - F.element(rounded) * b;
        a = b;
        b = r;
        if (++guard > 20000) fail(ErrorKind::Internal, "euclidean gcd did not terminate");
    }
    return a;
}

FieldElement sector_canonical_unit(const FieldElement& x) {
    const NumberField& F = *x.field;
    if (x.is_zero()) fail(ErrorKind::DomainError, "no canonical unit for zero");
    if (F.is_rationals())
        return F.from_rational(x.coords[0] > 0 ? QQ(1) : QQ(-1));
    if (!F.is_imaginary_quadratic())
        fail(ErrorKind::UnsupportedField, "sector canonicalization needs an imaginary quadratic field");

    const ZVec& f = F.minpoly();
    const ZZ a1 = f[1];
    auto in_sector = [&](const FieldElement& z) {
        QVec pw = F.basis_to_powers(z.coords);  // z = pw[0] + pw[1]*theta, Im(theta) > 0
        const QQ& c0 = pw[0];
        const QQ& c1 = pw[1];
        QQ re = c0 - c1 * QQ(a1) / 2;
        switch (F.roots_of_unity()) {
            case 2:
                return c1 > 0 || (c1 == 0 && c0 > 0);
            case 4:
                return re > 0 && c1 >= 0;
            case 6: {
                // arg < pi/3  <=>  sqrt(3)*Re > Im, with Im = c1*sqrt(|D|)/2,
                // |D| = 3k^2 for fields containing zeta_3.
                ZZ D = a1 * a1 - 4 * f[0];
                ZZ k = isqrt(abs(D) / 3);
                if (3 * k * k != abs(D)) fail(ErrorKind::Internal, "w=6 field without sqrt(-3)");
                return c1 >= 0 && re > c1 * QQ(k) / 2;
            }
            default:
                fail(ErrorKind::UnsupportedField, "unsupported torsion order");
        }
    };
    const FieldElement* found = nullptr;
    for (const FieldElement& u : F.units()) {
        if (in_sector(u * x)) {
            if (found) fail(ErrorKind::Internal, "sector representative not unique");
            found = &u;
        }
    }
    if (!found) fail(ErrorKind::Internal, "no sector representative");
    return *found;
}

bool is_integral(const FieldElement& x) {
    for (const QQ& c : x.coords)
        if (c.get_den() != 1) return false;
    return true;
}

}  // namespace heightlab::nf
