#include "heightlab/tamagawa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "heightlab/prng.hpp"
#include "heightlab/zeta.hpp"

namespace heightlab::tamagawa {

namespace {

int64_t pow_mod(int64_t base, int64_t e, int64_t p) {
    int64_t r = 1 % p;
    base %= p;
    if (base < 0) base += p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

// Reduction of a field element to F_p through a degree-one place.
int64_t reduce_mod_place(const nf::FieldElement& x, const Place& v) {
    const NumberField& F = *x.field;
    const int64_t p = v.p;
    // theta maps to the root of the linear factor: g(x) = x + g0.
    int64_t theta = 0;
    if (F.degree() > 1) {
        if (v.residue_degree != 1)
            fail(ErrorKind::DomainError, "coefficient reduction needs a degree-one place");
        theta = (-to_i64(v.gpoly[0] % p) % p + p) % p;
    }
    QVec powers = F.basis_to_powers(x.coords);
    int64_t acc = 0;
    int64_t tp = 1;
    for (const QQ& c : powers) {
        int64_t num = to_i64(c.get_num() % p);
        int64_t den = to_i64(c.get_den() % p);
        if (den == 0) fail(ErrorKind::DomainError, "denominator not invertible at the place");
        int64_t val = ((num % p + p) % p) * pow_mod(den, p - 2, p) % p;
        acc = (acc + val * tp) % p;
        tp = tp * theta % p;
    }
    return acc;
}

struct ReducedSystem {
    int64_t p;
    int nvars;
    // terms per polynomial: coefficient and exponent vector
    std::vector<std::vector<std::pair<int64_t, std::vector<unsigned>>>> polys;

    int64_t eval(size_t poly, const int64_t* x) const {
        int64_t acc = 0;
        for (const auto& [c, e] : polys[poly]) {
            int64_t t = c;
            for (int i = 0; i < nvars; ++i)
                for (unsigned k = 0; k < e[i]; ++k) t = t * x[i] % p;
            acc = (acc + t) % p;
        }
        return acc;
    }
};

ReducedSystem reduce_system(const weilres::PolynomialSystem& sys, const Place& v) {
    ReducedSystem r;
    r.p = v.p;
    r.nvars = static_cast<int>(sys.variables.size());
    for (const auto& poly : sys.polynomials) {
        std::vector<std::pair<int64_t, std::vector<unsigned>>> terms;
        for (const auto& [e, c] : poly.terms()) {
            int64_t red = reduce_mod_place(c, v);
            if (red != 0) terms.emplace_back(red, e);
        }
        r.polys.push_back(std::move(terms));
    }
    return r;
}

// Counts projective points over F_p by chart strata (first nonzero coordinate
// scaled to one); multiprojective blocks stratify independently.
ZZ count_points_prime_field(const weilres::PolynomialSystem& sys, const Place& v) {
    ReducedSystem rs = reduce_system(sys, v);
    const int64_t p = rs.p;
    const auto& blocks = sys.ambient.blocks;
    const int nvars = rs.nvars;
    std::vector<int64_t> x(nvars, 0);
    ZZ total(0);

    // Chart choices: one leading index per block.
    std::vector<int> lead(blocks.size(), 0);
    std::function<void(size_t)> charts = [&](size_t bi) {
        if (bi == blocks.size()) {
            // free variables: those after the leading index inside each block
            std::vector<int> free_vars;
            for (size_t b = 0; b < blocks.size(); ++b) {
                auto [lo, hi] = blocks[b];
                for (int i = lo; i < hi; ++i) {
                    if (i < lead[b]) x[i] = 0;
                    else if (i == lead[b]) x[i] = 1;
                }
                for (int i = lead[b] + 1; i < hi; ++i) free_vars.push_back(i);
            }
            // iterate F_p^{free}
            ZZ found(0);
            std::function<void(size_t)> loop = [&](size_t fi) {
                if (fi == free_vars.size()) {
                    for (size_t k = 0; k < rs.polys.size(); ++k)
                        if (rs.eval(k, x.data()) != 0) return;
                    ++found;
                    return;
                }
                for (int64_t val = 0; val < p; ++val) {
                    x[free_vars[fi]] = val;
                    loop(fi + 1);
                }
            };
            loop(0);
            total += found;
            return;
        }
        auto [lo, hi] = blocks[bi];
        for (int l = lo; l < hi; ++l) {
            lead[bi] = l;
            charts(bi + 1);
        }
    };
    charts(0);
    return total;
}

// Primitive-solution count over Z/p^k for a system over Q, divided by the
// unit group, as exact rationals.
ZZ count_points_mod_pk(const weilres::PolynomialSystem& sys, int64_t p, int k) {
    if (!sys.field->is_rationals())
        fail(ErrorKind::DomainError, "lift counting implemented over Q");
    int64_t pk = 1;
    for (int i = 0; i < k; ++i) {
        if (pk > (int64_t(1) << 40)) fail(ErrorKind::NonStabilized, "lift modulus too large");
        pk *= p;
    }
    const int nvars = static_cast<int>(sys.variables.size());
    double tuples = std::pow(static_cast<double>(pk), nvars);
    if (tuples > 4.5e8) fail(ErrorKind::NonStabilized, "lift depth beyond desk scale");

    std::vector<std::vector<std::pair<int64_t, std::vector<unsigned>>>> polys;
    for (const auto& poly : sys.polynomials) {
        std::vector<std::pair<int64_t, std::vector<unsigned>>> terms;
        for (const auto& [e, c] : poly.terms()) {
            QQ q = c.coords[0];
            int64_t den = to_i64(q.get_den() % pk);
            if (std::gcd(den, pk) != 1) fail(ErrorKind::DomainError, "bad denominator");
            // modular inverse via extended euclid
            int64_t inv = 1, t0 = 0, t1 = 1, r0 = pk, r1 = den;
            while (r1) {
                int64_t q2 = r0 / r1;
                std::swap(t0 -= q2 * t1, t1);
                std::swap(r0 -= q2 * r1, r1);
            }
            inv = ((t0 % pk) + pk) % pk;
            int64_t num = to_i64(q.get_num() % pk);
            int64_t red = ((num % pk + pk) % pk) * inv % pk;
            if (red != 0) terms.emplace_back(red, e);
        }
        polys.push_back(std::move(terms));
    }
    auto eval = [&](size_t idx, const int64_t* x) {
        __int128 acc = 0;
        for (const auto& [c, e] : polys[idx]) {
            __int128 t = c;
            for (int i = 0; i < nvars; ++i)
                for (unsigned kk = 0; kk < e[i]; ++kk) t = t * x[i] % pk;
            acc = (acc + t) % pk;
        }
        return static_cast<int64_t>(acc);
    };

    std::vector<int64_t> x(nvars, 0);
    int64_t primitive = 0;
    std::function<void(int, bool)> loop = [&](int i, bool unit_seen) {
        if (i == nvars) {
            if (!unit_seen) return;
            for (size_t kdx = 0; kdx < polys.size(); ++kdx)
                if (eval(kdx, x.data()) != 0) return;
            ++primitive;
            return;
        }
        for (int64_t v = 0; v < pk; ++v) {
            x[i] = v;
            loop(i + 1, unit_seen || (v % p != 0));
        }
    };
    loop(0, false);
    int64_t units = pk / p * (p - 1);
    if (primitive % units != 0) fail(ErrorKind::Internal, "unit orbits do not divide");
    return ZZ(primitive / units);
}

}  // namespace

ZZ count_points_residue_field(const weilres::PolynomialSystem& sys, const Place& v) {
    sys.validate();
    if (sys.ambient.kind != weilres::Ambient::Kind::Projective)
        fail(ErrorKind::DomainError, "residue counting needs a projective system");
    ZZ q = v.residue_cardinality();
    if (sys.polynomials.empty()) {
        // Chart counts are exact powers of q.
        ZZ total(1);
        for (const auto& [lo, hi] : sys.ambient.blocks) {
            ZZ block(0), qe(1);
            for (int i = lo; i < hi; ++i) {
                block += qe;
                qe *= q;
            }
            total *= block;
        }
        return total;
    }
    if (v.residue_degree != 1)
        fail(ErrorKind::DomainError, "equation systems need a prime residue field");
    if (q > 1024) fail(ErrorKind::DomainError, "residue cardinality beyond desk scale");
    return count_points_prime_field(sys, v);
}

QQ local_density(const weilres::PolynomialSystem& sys, const Place& v, int dim, int max_depth,
                 LocalDensityReport* report) {
    ZZ q = v.residue_cardinality();
    QQ qn = qq_pow(QQ(q), dim);
    ZZ count = count_points_residue_field(sys, v);
    QQ density = QQ(count) / qn;
    int depth = 1;
    if (max_depth > 1) {
        // Hensel stabilization: recount modulo p^k until two depths agree.
        QQ prev = density;
        bool stable = false;
        for (int k = 2; k <= max_depth; ++k) {
            ZZ ck = count_points_mod_pk(sys, v.p, k);
            QQ dk = QQ(ck) / qq_pow(QQ(q), static_cast<long>(k) * dim);
            depth = k;
            if (dk == prev) {
                density = dk;
                count = ck;
                stable = true;
                break;
            }
            prev = dk;
            density = dk;
            count = ck;
        }
        if (!stable) fail(ErrorKind::NonStabilized, "density did not stabilize by the depth cap");
    }
    if (density <= 0) fail(ErrorKind::DomainError, "variety has no local points at this place");
    if (report) {
        report->p = v.p;
        report->residue_cardinality = q;
        report->raw_count = count;
        report->density = density;
        report->lift_depth = depth;
    }
    return density;
}

QQ l_factor(const ZMat& frobenius, const ZZ& q, long s) {
    const size_t n = frobenius.size();
    QQ qs = qq_pow(QQ(q), s);
    QMat m(n, QVec(n, QQ(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            m[i][j] = QQ(frobenius[i][j]) / qs;
            if (i == j) m[i][j] = QQ(1) - m[i][j];
            else m[i][j] = -m[i][j];
        }
    QQ det = det_rational(std::move(m));
    if (det == 0) fail(ErrorKind::SingularFactor, "singular local factor");
    return QQ(1) / det;
}

FrobeniusData frobenius_for_prime(const pic::GaloisLattice& induced, long p,
                                  const NumberField& F) {
    if (F.degree() != 2) fail(ErrorKind::NotQuadratic, "Frobenius wiring needs a quadratic field");
    auto places = nf::factor_rational_prime(p, F);
    FrobeniusData out;
    out.q = ZZ(p);
    if (places.size() == 2) {
        out.matrix = identity_mat(induced.base.rank);
        out.rank = induced.base.rank;
    } else if (places[0].ramification == 1) {
        out.matrix = induced.action;
        out.rank = induced.base.rank;
    } else {
        // Inertia acts through the swap; Frobenius is trivial on the invariants.
        ZMat gm = induced.action;
        for (int i = 0; i < induced.base.rank; ++i) gm[i][i] -= 1;
        ZMat kernel = integer_kernel(gm);
        out.rank = kernel.empty() ? 0 : static_cast<int>(kernel[0].size());
        out.matrix = identity_mat(out.rank);
        out.ramified = true;
    }
    return out;
}

InductionCheckReport l_factor_induction_check(int upstairs_rank, const NumberField& F, long p,
                                              long s) {
    InductionCheckReport rep;
    rep.p = p;
    rep.s = s;
    pic::PicardLattice base;
    base.rank = upstairs_rank;
    for (int i = 0; i < upstairs_rank; ++i) {
        ZVec e(upstairs_rank, ZZ(0));
        e[i] = 1;
        base.eff_generators.push_back(e);
    }
    base.canonical.assign(upstairs_rank, ZZ(-1));
    auto induced = pic::induce(pic::trivial_action(base), 2, {1, 0});

    FrobeniusData frob = frobenius_for_prime(induced, p, F);
    rep.induced_factor = l_factor(frob.matrix, frob.q, s);

    rep.product_of_upstairs = QQ(1);
    for (const auto& w : nf::factor_rational_prime(p, F)) {
        ZZ qw = w.residue_cardinality();
        QQ lw = l_factor(identity_mat(upstairs_rank), qw, s);
        rep.product_of_upstairs *= lw;
    }
    rep.ok = rep.induced_factor == rep.product_of_upstairs;
    return rep;
}

double archimedean_density_pn(int n, const heights::ArchNorm& norm, bool complex_place) {
    using Kind = heights::ArchNorm::Kind;
    double det_scale = 1.0;
    if (norm.kind == Kind::Matrix) {
        QQ det = det_rational(norm.block_twists.at(0));
        if (det == 0) fail(ErrorKind::DomainError, "twist matrix must be invertible");
        double d = std::abs(det.get_d());
        det_scale = complex_place ? d * d : d;
    }
    if (!complex_place) {
        // Vol{ N(x) <= 1 in R^(n+1) } / 2.
        double vol;
        if (norm.kind == Kind::Euclidean)
            vol = std::pow(std::numbers::pi, (n + 1) / 2.0) / std::tgamma((n + 3) / 2.0);
        else
            vol = std::pow(2.0, n + 1) / det_scale;
        return vol / 2.0;
    }
    // Twice-Lebesgue volume of { N(x) <= 1 in C^(n+1) } / (2 pi).
    double vol;
    if (norm.kind == Kind::Euclidean) {
        // 2^(n+1) * pi^(n+1) / (n+1)!
        vol = std::pow(2.0 * std::numbers::pi, n + 1) / std::tgamma(n + 2.0);
    } else {
        vol = std::pow(2.0 * std::numbers::pi, n + 1) / det_scale;
    }
    return vol / (2.0 * std::numbers::pi);
}

McValue leray_density_hypersurface(const weilres::Poly& cone_poly, uint64_t seed, long samples) {
    const int nv = cone_poly.nvars();
    for (const auto& [e, c] : cone_poly.terms())
        for (int i = 0; i < nv; ++i)
            if (e[i] > 2) fail(ErrorKind::DomainError, "per-variable degree must be <= 2");

    // Numeric term table.
    struct Term {
        double c;
        std::vector<unsigned> e;
    };
    std::vector<Term> terms;
    for (const auto& [e, c] : cone_poly.terms()) terms.push_back({c.coords[0].get_d(), e});

    auto grad = [&](const std::vector<double>& x, int i) {
        double g = 0;
        for (const auto& t : terms) {
            if (t.e[i] == 0) continue;
            double v = t.c * t.e[i];
            for (int j = 0; j < nv; ++j) {
                unsigned e = t.e[j] - (j == i ? 1 : 0);
                for (unsigned k = 0; k < e; ++k) v *= x[j];
            }
            g += v;
        }
        return g;
    };

    double total = 0, var_total = 0;
    long per_stratum = samples / nv;
    for (int j = 0; j < nv; ++j) {
        Prng rng = Prng::substream(seed, static_cast<uint64_t>(j));
        double sum = 0, sumsq = 0;
        std::vector<double> x(nv, 0.0);
        for (long s = 0; s < per_stratum; ++s) {
            for (int i = 0; i < nv; ++i)
                if (i != j) x[i] = rng.uniform(-1.0, 1.0);
            // coefficients of f as a quadratic in x_j
            double a = 0, b = 0, c = 0;
            for (const auto& t : terms) {
                double v = t.c;
                for (int i = 0; i < nv; ++i) {
                    if (i == j) continue;
                    for (unsigned k = 0; k < t.e[i]; ++k) v *= x[i];
                }
                if (t.e[j] == 2) a += v;
                else if (t.e[j] == 1) b += v;
                else c += v;
            }
            double roots[2];
            int nroots = 0;
            if (std::abs(a) > 1e-300) {
                double disc = b * b - 4 * a * c;
                if (disc >= 0) {
                    double sq = std::sqrt(disc);
                    roots[nroots++] = (-b + sq) / (2 * a);
                    roots[nroots++] = (-b - sq) / (2 * a);
                }
            } else if (std::abs(b) > 1e-300) {
                roots[nroots++] = -c / b;
            }
            double w = 0;
            for (int r = 0; r < nroots; ++r) {
                if (std::abs(roots[r]) > 1.0) continue;
                x[j] = roots[r];
                int best = 0;
                double bestg = -1;
                for (int i = 0; i < nv; ++i) {
                    double g = std::abs(grad(x, i));
                    if (g > bestg) {
                        bestg = g;
                        best = i;
                    }
                }
                if (best != j) continue;
                if (bestg < 1e-12) continue;  // measure-zero singular stratum boundary
                w += 1.0 / bestg;
            }
            sum += w;
            sumsq += w * w;
        }
        double box = std::pow(2.0, nv - 1);
        double mean = sum / per_stratum;
        double var = (sumsq / per_stratum - mean * mean) / per_stratum;
        total += box * mean;
        var_total += box * box * std::max(var, 0.0);
    }
    return {total, std::sqrt(var_total)};
}

namespace {

std::vector<long> primes_up_to(long n) {
    std::vector<char> sieve(n + 1, 1);
    std::vector<long> out;
    for (long p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        out.push_back(p);
        for (long q = 2 * p; q <= n; q += p) sieve[q] = 0;
    }
    return out;
}

}  // namespace

TamagawaResult tamagawa_pn(const NumberField& F, int n, const heights::ArchNorm& norm,
                           const TamagawaConfig& config) {
    TamagawaResult r;
    const int dim = n;
    double disc = std::abs(F.discriminant().get_d());
    r.mu_factor = std::pow(std::sqrt(disc), -dim);
    r.residue_factor = nf::residue_at_one(F);

    weilres::PolynomialSystem pn;
    pn.field = &F;
    for (int i = 0; i <= n; ++i) pn.variables.push_back("x" + std::to_string(i));
    pn.ambient = weilres::Ambient::projective(n + 1);

    double finite = 1.0;
    for (long p : primes_up_to(config.prime_cutoff)) {
        for (const auto& w : nf::factor_rational_prime(p, F)) {
            LocalDensityReport rep;
            QQ density = local_density(pn, w, dim, 1, &rep);
            rep.lambda = l_factor(identity_mat(1), w.residue_cardinality(), 1);
            rep.running_product = density / rep.lambda;
            finite *= rep.running_product.get_d();
            r.locals.push_back(std::move(rep));
        }
    }
    r.finite_product = finite;
    double P = static_cast<double>(config.prime_cutoff);
    r.tail_error = F.degree() * std::pow(P, -static_cast<double>(n)) / n;

    r.archimedean = 1.0;
    for (int i = 0; i < F.real_embeddings(); ++i)
        r.archimedean *= (n + 1) * archimedean_density_pn(n, norm, false);
    for (int i = 0; i < F.complex_pairs(); ++i)
        r.archimedean *= (n + 1) * archimedean_density_pn(n, norm, true);

    r.tau = r.mu_factor * r.residue_factor * finite * r.archimedean;
    r.mc_error = 0;
    return r;
}

TamagawaResult tamagawa_res_p1_quadric(const NumberField& F, const TamagawaConfig& config) {
    if (F.degree() != 2) fail(ErrorKind::NotQuadratic, "need a quadratic field");
    auto ext = weilres::ExtensionData::from_absolute(F);
    auto quadric = weilres::res_p1_quadric(ext);
    const NumberField& Q = NumberField::rationals();

    weilres::PolynomialSystem sys;
    sys.field = &Q;
    sys.variables = quadric.vars;
    sys.ambient = weilres::Ambient::projective(4);
    sys.polynomials = {quadric.relation};

    TamagawaResult r;
    const int dim = 2;
    r.mu_factor = 1.0;  // mu_Q = 1
    // rho_E = 1 and L(s, Pic of the restriction) = zeta_F(s).
    r.residue_factor = nf::residue_at_one(F);

    auto induced = pic::induce(pic::trivial_action(pic::preset_pn(1)), 2, {1, 0});
    ZZ bad = 2 * abs(F.discriminant());

    double finite = 1.0;
    for (long p : primes_up_to(config.prime_cutoff)) {
        LocalDensityReport rep;
        auto places = nf::factor_rational_prime(p, Q);
        bool is_bad = bad % p == 0;
        QQ density = local_density(sys, places[0], dim, is_bad ? config.max_lift_depth : 1, &rep);
        FrobeniusData frob = frobenius_for_prime(induced, p, F);
        rep.lambda = l_factor(frob.matrix, frob.q, 1);
        rep.running_product = density / rep.lambda;
        finite *= rep.running_product.get_d();
        r.locals.push_back(std::move(rep));
    }
    r.finite_product = finite;
    double P = static_cast<double>(config.prime_cutoff);
    r.tail_error = 4.0 / P;

    // omega^{-1} = O(2)|_X: archimedean factor = (2 / c_R) * Leray integral.
    McValue leray = leray_density_hypersurface(quadric.relation, config.seed, config.mc_samples);
    r.archimedean = (2.0 / 2.0) * leray.value;
    r.mc_error = leray.value > 0 ? leray.std_error / leray.value : 1.0;

    r.tau = r.mu_factor * r.residue_factor * finite * r.archimedean;
    return r;
}

PeyreConstant peyre_constant_pn(const NumberField& F, int n, const TamagawaConfig& config) {
    PeyreConstant c;
    c.alpha = pic::alpha_invariant(pic::preset_pn(n));
    c.beta = pic::h1_cyclic(pic::trivial_action(pic::preset_pn(n)));
    c.tau_detail = tamagawa_pn(F, n, heights::ArchNorm::max(), config);
    c.tau = c.tau_detail.tau;
    c.c = c.alpha.get_d() * c.beta.get_d() * c.tau;
    c.error_estimate = c.tau_detail.tail_error + c.tau_detail.mc_error;
    return c;
}

RestrictionComparison tamagawa_restriction_check(const NumberField& F, double rel_tolerance,
                                                 const TamagawaConfig& config) {
    RestrictionComparison cmp;
    cmp.upstairs = tamagawa_pn(F, 1, heights::ArchNorm::max(), config);
    TamagawaConfig down = config;
    down.prime_cutoff = std::min<long>(config.prime_cutoff, 250);
    cmp.downstairs = tamagawa_res_p1_quadric(F, down);
    double a = cmp.upstairs.tau, b = cmp.downstairs.tau;
    cmp.rel_diff = std::abs(a - b) / (0.5 * (a + b));
    cmp.combined_error =
        cmp.upstairs.tail_error + cmp.downstairs.tail_error + 3.0 * cmp.downstairs.mc_error;
    cmp.within_tolerance = cmp.rel_diff <= std::max(rel_tolerance, cmp.combined_error);
    return cmp;
}

std::string peyre_ledger(const std::string& title, const TamagawaResult& r) {
    std::ostringstream out;
    char buf[128];
    out << "ledger " << title << "\n";
    snprintf(buf, sizeof buf, "mu_factor %.12g\n", r.mu_factor);
    out << buf;
    snprintf(buf, sizeof buf, "residue_factor %.12g\n", r.residue_factor);
    out << buf;
    snprintf(buf, sizeof buf, "archimedean %.12g\n", r.archimedean);
    out << buf;
    snprintf(buf, sizeof buf, "tau %.12g\n", r.tau);
    out << buf;
    snprintf(buf, sizeof buf, "tail_error %.3g mc_error %.3g\n", r.tail_error, r.mc_error);
    out << buf;
    out << "per-place lambda^{-1} * density:\n";
    for (const auto& l : r.locals) {
        out << "  p " << l.p << " q " << l.residue_cardinality.get_str() << " count "
            << l.raw_count.get_str() << " depth " << l.lift_depth << " density "
            << format_rational(l.density) << " lambda " << format_rational(l.lambda) << " factor "
            << format_rational(l.running_product) << "\n";
    }
    return out.str();
}

CiEligibility ci_eligibility(long m, long r, long n, long dim_xstar_bound) {
    CiEligibility e;
    long pow2 = 1;
    for (long i = 1; i < r; ++i) pow2 *= 2;
    long rhs = m * (m + 1) * (r - 1) * pow2;
    e.skinner_slack = (n + 1 - dim_xstar_bound) - rhs;
    e.skinner_ok = e.skinner_slack > 0;
    long rhs2 = (m + 1) * (r - 1) * pow2 + m;
    e.simple_slack = n - rhs2;
    e.simple_ok = e.simple_slack >= 0;
    return e;
}

}  // namespace heightlab::tamagawa
