#include "heightlab/piclattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "heightlab/linprog.hpp"
#include "heightlab/prng.hpp"

namespace heightlab::pic {

namespace {

QVec to_qvec(const ZVec& v) { return QVec(v.begin(), v.end()); }

QQ dot_zz(const ZVec& a, const ZVec& b) {
    QQ s(0);
    for (size_t i = 0; i < a.size(); ++i) s += QQ(a[i] * b[i]);
    return s;
}

// Membership of a rational vector in the cone spanned by the generators.
bool in_cone(const PicardLattice& lat, const QVec& q) {
    const size_t k = lat.eff_generators.size();
    QMat a(lat.rank, QVec(k, QQ(0)));
    for (size_t j = 0; j < k; ++j)
        for (int i = 0; i < lat.rank; ++i) a[i][j] = QQ(lat.eff_generators[j][i]);
    return lp_feasible(a, q);
}

// Largest t >= 0 with q - t*g in the cone; nullopt when even t = 0 fails.
std::optional<QQ> max_retreat(const PicardLattice& lat, const QVec& q, const ZVec& g) {
    const size_t k = lat.eff_generators.size();
    // Columns: lambda_1..lambda_k, t; rows: rank equations  sum lambda G + t g = q.
    QMat a(lat.rank, QVec(k + 1, QQ(0)));
    for (size_t j = 0; j < k; ++j)
        for (int i = 0; i < lat.rank; ++i) a[i][j] = QQ(lat.eff_generators[j][i]);
    for (int i = 0; i < lat.rank; ++i) a[i][k] = QQ(g[i]);
    QVec c(k + 1, QQ(0));
    c[k] = QQ(-1);  // maximize t
    LpResult r = lp_solve(a, q, c);
    if (r.status == LpStatus::Infeasible) return std::nullopt;
    if (r.status == LpStatus::Unbounded)
        fail(ErrorKind::DegenerateCone, "unbounded retreat; cone contains a line");
    return -r.objective;
}

ZVec primitive(ZVec v) {
    ZZ g(0);
    for (const ZZ& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (ZZ& c : v) c /= g;
    return v;
}

// Extremal rays of the dual cone {x : <g_i, x> >= 0}.
std::vector<ZVec> dual_rays(const PicardLattice& lat) {
    const int n = lat.rank;
    const auto& gens = lat.eff_generators;
    std::vector<ZVec> rays;
    auto try_ray = [&](ZVec v) {
        v = primitive(std::move(v));
        bool zero = true;
        for (const ZZ& c : v) zero = zero && c == 0;
        if (zero) return;
        for (int sign = 0; sign < 2; ++sign) {
            bool ok = true;
            for (const auto& g : gens)
                if (dot_zz(g, v) < 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
                return;
            }
            for (ZZ& c : v) c = -c;
        }
    };
    if (n == 1) {
        try_ray({ZZ(1)});
        try_ray({ZZ(-1)});
        return rays;
    }
    // Choose n-1 tight generators, solve for the orthogonal line.
    std::vector<int> idx(gens.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<int> pick(n - 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n - 1) {
            ZMat m;
            for (int v : pick) m.push_back(gens[v]);
            ZMat kernel = integer_kernel(m);
            if (kernel.empty() || kernel[0].size() != 1) return;  // need rank exactly n-1
            ZVec v(n);
            for (int i = 0; i < n; ++i) v[i] = kernel[i][0];
            try_ray(std::move(v));
            return;
        }
        for (int i = start; i < static_cast<int>(gens.size()); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    // An extremal ray must be tight on at least n-1 independent generators,
    // so the enumeration above is exhaustive for pointed full-dimensional duals.
    return rays;
}

// Simplicial decomposition of a pointed cone given rays and the inequality
// description; returns index subsets of `rays`.
std::vector<std::vector<int>> triangulate(const std::vector<ZVec>& rays,
                                          const std::vector<ZVec>& inequalities, int dim) {
    std::vector<std::vector<int>> out;
    std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> active, int d) {
        if (static_cast<int>(active.size()) == d) {
            out.push_back(active);
            return;
        }
        if (active.empty()) fail(ErrorKind::Internal, "empty cone in triangulation");
        int apex = active[0];
        std::vector<std::vector<int>> seen_facets;
        for (const ZVec& phi : inequalities) {
            if (dot_zz(phi, rays[apex]) <= 0) continue;  // apex on or below the facet
            std::vector<int> tight;
            for (int r : active)
                if (dot_zz(phi, rays[r]) == 0) tight.push_back(r);
            if (tight.empty()) continue;
            // Distinct inequalities may cut the same facet; count it once.
            if (std::find(seen_facets.begin(), seen_facets.end(), tight) != seen_facets.end())
                continue;
            seen_facets.push_back(tight);
            ZMat span;
            for (int r : tight) span.push_back(rays[r]);
            if (rank_of(span) != d - 1) continue;  // not a facet of this cone
            size_t before = out.size();
            rec(tight, d - 1);
            for (size_t i = before; i < out.size(); ++i) out[i].push_back(apex);
        }
    };
    rec([&] {
        std::vector<int> all(rays.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        return all;
    }(), dim);
    return out;
}

}  // namespace

void PicardLattice::validate() const {
    if (rank < 1) fail(ErrorKind::DomainError, "rank must be positive");
    if (static_cast<int>(canonical.size()) != rank)
        fail(ErrorKind::DomainError, "canonical class size");
    for (const auto& g : eff_generators) {
        if (static_cast<int>(g.size()) != rank) fail(ErrorKind::DomainError, "generator size");
        bool zero = true;
        for (const ZZ& c : g) zero = zero && c == 0;
        if (zero) fail(ErrorKind::DomainError, "zero effective generator");
    }
    if (!allow_lines && !eff_generators.empty()) {
        // The cone contains a line iff 0 is a nontrivial nonnegative combination.
        const size_t k = eff_generators.size();
        QMat a(rank + 1, QVec(k, QQ(0)));
        for (size_t j = 0; j < k; ++j) {
            for (int i = 0; i < rank; ++i) a[i][j] = QQ(eff_generators[j][i]);
            a[rank][j] = 1;
        }
        QVec b(rank + 1, QQ(0));
        b[rank] = 1;
        if (lp_feasible(a, b)) fail(ErrorKind::DegenerateCone, "effective cone contains a line");
    }
}

void GaloisLattice::validate() const {
    base.validate();
    if (static_cast<int>(action.size()) != base.rank)
        fail(ErrorKind::DomainError, "action matrix size");
    if (order < 1) fail(ErrorKind::DomainError, "action order");
    ZMat power = identity_mat(base.rank);
    for (int i = 0; i < order; ++i) power = mat_mul(action, power);
    if (!is_identity(power)) fail(ErrorKind::IncompatibleAction, "action order is wrong");
    // The action must permute the effective generators and fix the canonical class.
    for (const auto& g : base.eff_generators) {
        ZVec image = mat_apply(action, g);
        if (std::find(base.eff_generators.begin(), base.eff_generators.end(), image) ==
            base.eff_generators.end())
            fail(ErrorKind::IncompatibleAction, "action does not preserve the effective cone");
    }
    if (mat_apply(action, base.canonical) != base.canonical)
        fail(ErrorKind::IncompatibleAction, "action does not fix the canonical class");
}

GaloisLattice trivial_action(PicardLattice lat) {
    GaloisLattice g;
    g.action = identity_mat(lat.rank);
    g.base = std::move(lat);
    g.order = 1;
    return g;
}

QQ a_invariant(const PicardLattice& lat, const ZVec& L) {
    lat.validate();
    bool lzero = true;
    for (const ZZ& c : L) lzero = lzero && c == 0;
    if (lzero) fail(ErrorKind::NotBig, "a(0) is not defined");
    const size_t k = lat.eff_generators.size();
    // min r  s.t.  sum lambda_i g_i - r L = omega, lambda >= 0, r free.
    QMat a(lat.rank, QVec(k + 2, QQ(0)));
    for (size_t j = 0; j < k; ++j)
        for (int i = 0; i < lat.rank; ++i) a[i][j] = QQ(lat.eff_generators[j][i]);
    for (int i = 0; i < lat.rank; ++i) {
        a[i][k] = QQ(-L[i]);
        a[i][k + 1] = QQ(L[i]);
    }
    QVec b = to_qvec(lat.canonical);
    QVec c(k + 2, QQ(0));
    c[k] = QQ(1);
    c[k + 1] = QQ(-1);
    LpResult r = lp_solve(a, b, c);
    if (r.status == LpStatus::Infeasible)
        fail(ErrorKind::NotBig, "no multiple of L makes the adjoint class effective");
    if (r.status == LpStatus::Unbounded)
        fail(ErrorKind::DegenerateCone, "a(L) unbounded below");
    return r.objective;
}

int b_invariant(const PicardLattice& lat, const ZVec& L) {
    QQ a = a_invariant(lat, L);
    QVec q(lat.rank);
    for (int i = 0; i < lat.rank; ++i) q[i] = a * QQ(L[i]) + QQ(lat.canonical[i]);
    if (!in_cone(lat, q)) fail(ErrorKind::Internal, "adjoint point escaped the cone");
    // Minimal face containing q = cone of the generators g with q - t g still
    // in the cone for some t > 0.
    ZMat face;
    for (const auto& g : lat.eff_generators) {
        auto t = max_retreat(lat, q, g);
        if (t && *t > 0) face.push_back(g);
    }
    long dim = face.empty() ? 0 : rank_of(face);
    if (dim == lat.rank)
        fail(ErrorKind::NotOnBoundary, "adjoint point lies in the interior of the cone");
    return lat.rank - static_cast<int>(dim);
}

ABInvariants ab_invariants(const PicardLattice& lat, const ZVec& L) {
    return {a_invariant(lat, L), b_invariant(lat, L)};
}

GaloisLattice induce(const GaloisLattice& gal, int d, const std::vector<int>& coset_action) {
    gal.validate();
    if (d < 1) fail(ErrorKind::DomainError, "extension degree");
    if (static_cast<int>(coset_action.size()) != d)
        fail(ErrorKind::IncompatibleAction, "coset action must permute d cosets");
    // Must be a transitive permutation, i.e. a single d-cycle.
    {
        std::vector<bool> seen(d, false);
        for (int v : coset_action) {
            if (v < 0 || v >= d || seen[v]) fail(ErrorKind::IncompatibleAction, "not a permutation");
            seen[v] = true;
        }
        int pos = 0;
        for (int i = 0; i < d - 1; ++i) {
            pos = coset_action[pos];
            if (pos == 0) fail(ErrorKind::IncompatibleAction, "coset action is not transitive");
        }
    }
    const int rho = gal.base.rank;
    GaloisLattice out;
    out.base.rank = d * rho;
    out.base.allow_lines = gal.base.allow_lines;
    for (int block = 0; block < d; ++block)
        for (const auto& g : gal.base.eff_generators) {
            ZVec v(d * rho, ZZ(0));
            for (int i = 0; i < rho; ++i) v[block * rho + i] = g[i];
            out.base.eff_generators.push_back(std::move(v));
        }
    out.base.canonical.assign(d * rho, ZZ(0));
    for (int block = 0; block < d; ++block)
        for (int i = 0; i < rho; ++i) out.base.canonical[block * rho + i] = gal.base.canonical[i];

    // Cycle order starting at coset 0; the wrap step applies the base action.
    std::vector<int> cycle{0};
    while (static_cast<int>(cycle.size()) < d) cycle.push_back(coset_action[cycle.back()]);
    out.action.assign(d * rho, ZVec(d * rho, ZZ(0)));
    for (int step = 0; step < d; ++step) {
        int from = cycle[step];
        int to = cycle[(step + 1) % d];
        bool wrap = step == d - 1;
        for (int i = 0; i < rho; ++i)
            for (int j = 0; j < rho; ++j) {
                ZZ entry = wrap ? gal.action[i][j] : (i == j ? ZZ(1) : ZZ(0));
                out.action[to * rho + i][from * rho + j] = entry;
            }
    }
    out.order = d * gal.order;
    // Order may be a proper divisor when the base action interleaves; recompute.
    ZMat power = identity_mat(d * rho);
    for (int m = 1; m <= d * gal.order; ++m) {
        power = mat_mul(out.action, power);
        if (is_identity(power)) {
            out.order = m;
            break;
        }
    }
    out.validate();
    return out;
}

int invariants_rank(const GaloisLattice& gal) {
    const int n = gal.base.rank;
    ZMat gm = gal.action;
    for (int i = 0; i < n; ++i) gm[i][i] -= 1;
    return n - static_cast<int>(rank_of(gm));
}

ZZ h1_cyclic(const GaloisLattice& gal) {
    gal.validate();
    const int n = gal.base.rank;
    // Norm N = 1 + g + ... + g^{m-1}.
    ZMat norm(n, ZVec(n, ZZ(0)));
    ZMat power = identity_mat(n);
    for (int i = 0; i < gal.order; ++i) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) norm[r][c] += power[r][c];
        power = mat_mul(gal.action, power);
    }
    ZMat kernel = integer_kernel(norm);  // columns span ker N
    const size_t kdim = kernel.empty() ? 0 : kernel[0].size();
    if (kdim == 0) return ZZ(1);
    // Express the columns of (g - 1) in the kernel basis.
    ZMat gm = gal.action;
    for (int i = 0; i < n; ++i) gm[i][i] -= 1;
    QMat kq(n, QVec(kdim));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < kdim; ++j) kq[i][j] = QQ(kernel[i][j]);
    ZMat rel(kdim, ZVec(n, ZZ(0)));
    for (int col = 0; col < n; ++col) {
        QVec target(n);
        for (int i = 0; i < n; ++i) target[i] = QQ(gm[i][col]);
        auto sol = solve_rational(kq, target);
        if (!sol) fail(ErrorKind::Internal, "im(g-1) escaped ker N");
        for (size_t j = 0; j < kdim; ++j) {
            if ((*sol)[j].get_den() != 1) fail(ErrorKind::Internal, "non-integral kernel coords");
            rel[j][col] = (*sol)[j].get_num();
        }
    }
    ZVec diag = smith_normal_form(rel);
    ZZ order(1);
    size_t nonzero = 0;
    for (const ZZ& dV : diag)
        if (dV != 0) {
            order *= dV;
            ++nonzero;
        }
    if (nonzero < kdim) fail(ErrorKind::Internal, "H^1 is infinite");
    return order;
}

QQ alpha_invariant(const PicardLattice& lat) {
    lat.validate();
    const int n = lat.rank;
    ZMat genmat = lat.eff_generators;
    if (lat.eff_generators.empty() || rank_of(genmat) != n)
        fail(ErrorKind::DivergentIntegral, "effective cone is not full-dimensional");
    ZVec anti(n);
    for (int i = 0; i < n; ++i) anti[i] = -lat.canonical[i];
    std::vector<ZVec> rays = dual_rays(lat);
    if (rays.empty()) fail(ErrorKind::DivergentIntegral, "dual cone has no rays");
    for (const auto& r : rays)
        if (dot_zz(anti, r) <= 0)
            fail(ErrorKind::DivergentIntegral, "anticanonical class is not interior");
    auto simplices = triangulate(rays, lat.eff_generators, n);
    if (simplices.empty()) fail(ErrorKind::Internal, "no simplicial decomposition");
    QQ total(0);
    for (const auto& simplex : simplices) {
        ZMat m;
        for (int r : simplex) m.push_back(rays[r]);
        ZZ det = det_integer(m);
        if (det == 0) fail(ErrorKind::Internal, "degenerate simplicial cone");
        QQ denom(1);
        for (int r : simplex) denom *= dot_zz(anti, rays[r]);
        total += QQ(abs(det)) / denom;
    }
    // 1/(rank-1)! prefactor.
    ZZ fact(1);
    for (int i = 2; i <= n - 1; ++i) fact *= i;
    return total / QQ(fact);
}

AlphaMC alpha_monte_carlo(const PicardLattice& lat, uint64_t seed, long samples) {
    const int n = lat.rank;
    ZVec anti(n);
    for (int i = 0; i < n; ++i) anti[i] = -lat.canonical[i];
    std::vector<ZVec> rays = dual_rays(lat);
    for (const auto& r : rays)
        if (dot_zz(anti, r) <= 0)
            fail(ErrorKind::DivergentIntegral, "anticanonical class is not interior");
    // alpha = rank * vol{x in dual cone : <anti, x> <= 1}; the polytope is the
    // convex hull of 0 and the rays scaled to the slice.
    std::vector<std::vector<double>> vertices;
    for (const auto& r : rays) {
        double scale = dot_zz(anti, r).get_d();
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = r[i].get_d() / scale;
        vertices.push_back(std::move(v));
    }
    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    for (const auto& v : vertices)
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    double vol_box = 1.0;
    for (int i = 0; i < n; ++i) vol_box *= (hi[i] - lo[i]);
    Prng rng(seed);
    long hits = 0;
    std::vector<double> x(n);
    for (long s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        double slice = 0.0;
        for (int i = 0; i < n; ++i) slice += anti[i].get_d() * x[i];
        if (slice > 1.0) continue;
        bool inside = true;
        for (const auto& g : lat.eff_generators) {
            double dotv = 0.0;
            for (int i = 0; i < n; ++i) dotv += g[i].get_d() * x[i];
            if (dotv < 0.0) {
                inside = false;
                break;
            }
        }
        if (inside) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    double value = n * vol_box * p;
    double se = n * vol_box * std::sqrt(std::max(p * (1.0 - p), 1e-12) / samples);
    return {value, se};
}

PicardLattice rational_lattice(const GaloisLattice& gal) {
    gal.validate();
    const int n = gal.base.rank;
    ZMat gm = gal.action;
    for (int i = 0; i < n; ++i) gm[i][i] -= 1;
    ZMat kernel = integer_kernel(gm);  // columns = fixed basis
    const size_t kdim = kernel.empty() ? 0 : kernel[0].size();
    if (kdim == 0) fail(ErrorKind::DomainError, "no invariants; rational lattice is trivial");
    QMat kq(n, QVec(kdim));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < kdim; ++j) kq[i][j] = QQ(kernel[i][j]);
    auto express = [&](const ZVec& fixed) {
        QVec target(n);
        for (int i = 0; i < n; ++i) target[i] = QQ(fixed[i]);
        auto sol = solve_rational(kq, target);
        if (!sol) fail(ErrorKind::IncompatibleAction, "vector is not in the invariant lattice");
        ZVec out(kdim);
        for (size_t j = 0; j < kdim; ++j) {
            if ((*sol)[j].get_den() != 1)
                fail(ErrorKind::IncompatibleAction, "vector is not integral on the invariant basis");
            out[j] = (*sol)[j].get_num();
        }
        return out;
    };

    PicardLattice out;
    out.rank = static_cast<int>(kdim);
    out.canonical = express(gal.base.canonical);
    // Orbit sums of the generators span the invariant effective cone.
    for (const auto& g : gal.base.eff_generators) {
        ZVec sum(n, ZZ(0));
        ZVec cur = g;
        for (int i = 0; i < gal.order; ++i) {
            for (int j = 0; j < n; ++j) sum[j] += cur[j];
            cur = mat_apply(gal.action, cur);
        }
        ZVec coords = express(sum);
        coords = primitive(std::move(coords));
        if (std::find(out.eff_generators.begin(), out.eff_generators.end(), coords) ==
            out.eff_generators.end())
            out.eff_generators.push_back(std::move(coords));
    }
    out.validate();
    return out;
}

ZVec to_rational_coords(const GaloisLattice& gal, const ZVec& fixed_vector) {
    const int n = gal.base.rank;
    ZMat gm = gal.action;
    for (int i = 0; i < n; ++i) gm[i][i] -= 1;
    ZMat kernel = integer_kernel(gm);
    const size_t kdim = kernel.empty() ? 0 : kernel[0].size();
    QMat kq(n, QVec(kdim));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < kdim; ++j) kq[i][j] = QQ(kernel[i][j]);
    QVec target(n);
    for (int i = 0; i < n; ++i) target[i] = QQ(fixed_vector[i]);
    auto sol = solve_rational(kq, target);
    if (!sol) fail(ErrorKind::IncompatibleAction, "vector is not invariant");
    ZVec out(kdim);
    for (size_t j = 0; j < kdim; ++j) {
        if ((*sol)[j].get_den() != 1) fail(ErrorKind::IncompatibleAction, "vector not integral");
        out[j] = (*sol)[j].get_num();
    }
    return out;
}

PreservationReport res_preservation_check(const GaloisLattice& gal, int d,
                                          const std::vector<int>& coset_action, const ZVec& L) {
    PreservationReport rep;
    PicardLattice f_side = rational_lattice(gal);
    ZVec Lf = to_rational_coords(gal, L);
    rep.a_base = a_invariant(f_side, Lf);
    rep.b_base = b_invariant(f_side, Lf);

    GaloisLattice ind = induce(gal, d, coset_action);
    ZVec Lblocks(d * gal.base.rank);
    for (int block = 0; block < d; ++block)
        for (int i = 0; i < gal.base.rank; ++i) Lblocks[block * gal.base.rank + i] = L[i];
    PicardLattice e_side = rational_lattice(ind);
    ZVec Le = to_rational_coords(ind, Lblocks);
    rep.a_induced = a_invariant(e_side, Le);
    rep.b_induced = b_invariant(e_side, Le);
    rep.ok = rep.a_base == rep.a_induced && rep.b_base == rep.b_induced;
    return rep;
}

PicardLattice preset_pn(int n) {
    PicardLattice lat;
    lat.rank = 1;
    lat.eff_generators = {{ZZ(1)}};
    lat.canonical = {ZZ(-(n + 1))};
    lat.labels = {"H"};
    return lat;
}

PicardLattice preset_multiproj(const std::vector<int>& dims) {
    PicardLattice lat;
    lat.rank = static_cast<int>(dims.size());
    for (int i = 0; i < lat.rank; ++i) {
        ZVec e(lat.rank, ZZ(0));
        e[i] = 1;
        lat.eff_generators.push_back(e);
        lat.labels.push_back("H" + std::to_string(i + 1));
    }
    lat.canonical.assign(lat.rank, ZZ(0));
    for (int i = 0; i < lat.rank; ++i) lat.canonical[i] = -(dims[i] + 1);
    return lat;
}

PicardLattice preset_quadric_surface() { return preset_multiproj({1, 1}); }

PicardLattice preset_dp6() {
    // Blow-up of P^2 in three points: basis H, E1, E2, E3; the six (-1)-curves
    // generate the effective cone.
    PicardLattice lat;
    lat.rank = 4;
    lat.labels = {"H", "E1", "E2", "E3"};
    lat.eff_generators = {
        {ZZ(0), ZZ(1), ZZ(0), ZZ(0)},   {ZZ(0), ZZ(0), ZZ(1), ZZ(0)},
        {ZZ(0), ZZ(0), ZZ(0), ZZ(1)},   {ZZ(1), ZZ(-1), ZZ(-1), ZZ(0)},
        {ZZ(1), ZZ(-1), ZZ(0), ZZ(-1)}, {ZZ(1), ZZ(0), ZZ(-1), ZZ(-1)},
    };
    lat.canonical = {ZZ(-3), ZZ(1), ZZ(1), ZZ(1)};
    return lat;
}

PicardLattice preset_ci(int n, int m, int r) {
    PicardLattice lat;
    lat.rank = 1;
    lat.eff_generators = {{ZZ(1)}};
    lat.canonical = {ZZ(-(n + 1 - m * r))};
    lat.labels = {"H"};
    return lat;
}

PicardLattice preset_bt_hypersurface() {
    // (1,3) hypersurface in P^3 x P^3 with Picard lattice Z^2.
    PicardLattice lat;
    lat.rank = 2;
    lat.eff_generators = {{ZZ(1), ZZ(0)}, {ZZ(0), ZZ(1)}};
    lat.canonical = {ZZ(-3), ZZ(-1)};
    lat.labels = {"H1", "H2"};
    return lat;
}

PicardLattice preset_by_name(const std::string& name) {
    if (name == "P1") return preset_pn(1);
    if (name == "P2") return preset_pn(2);
    if (name == "P3") return preset_pn(3);
    if (name == "P1xP1" || name == "quadric") return preset_quadric_surface();
    if (name == "dP6") return preset_dp6();
    if (name == "BT") return preset_bt_hypersurface();
    fail(ErrorKind::ParseError, "unknown lattice preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"P1", "P2", "P3", "P1xP1", "quadric", "dP6", "BT"}; }

}  // namespace heightlab::pic
