// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
// Each section states its tolerance inline; tolerances are pinned here and
// nowhere else.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

#include "heightlab/enumerate.hpp"
#include "heightlab/experiments.hpp"
#include "heightlab/linprog.hpp"
#include "heightlab/piclattice.hpp"
#include "heightlab/prng.hpp"

using namespace heightlab;
using nf::NumberField;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, double seconds) {
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

struct Timer {
    Clock::time_point t0 = Clock::now();
    double secs() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

// ---- criterion 4 helpers: independent brute-force oracles ----

bool cone_member(const pic::PicardLattice& lat, const QVec& q) {
    const size_t k = lat.eff_generators.size();
    QMat a(lat.rank, QVec(k, QQ(0)));
    for (size_t j = 0; j < k; ++j)
        for (int i = 0; i < lat.rank; ++i) a[i][j] = QQ(lat.eff_generators[j][i]);
    return lp_feasible(a, q);
}

std::optional<QQ> grid_scan_a(const pic::PicardLattice& lat, const ZVec& L) {
    for (long num = 1; num <= 4 * 64; ++num) {
        QQ r(num, 64);
        r.canonicalize();
        QVec q(lat.rank);
        for (int i = 0; i < lat.rank; ++i) q[i] = r * QQ(L[i]) + QQ(lat.canonical[i]);
        if (cone_member(lat, q)) return r;
    }
    return std::nullopt;
}

int oracle_b(const pic::PicardLattice& lat, const QQ& a, const ZVec& L) {
    QVec q(lat.rank);
    for (int i = 0; i < lat.rank; ++i) q[i] = a * QQ(L[i]) + QQ(lat.canonical[i]);
    const auto& gens = lat.eff_generators;
    const size_t n = gens.size();
    int best_dim = lat.rank + 1;
    for (size_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> inside, outside;
        for (size_t i = 0; i < n; ++i)
            (mask & (1u << i)) ? inside.push_back(static_cast<int>(i))
                               : outside.push_back(static_cast<int>(i));
        const int d = lat.rank;
        size_t rows = n;
        QMat sys(rows, QVec(2 * d + outside.size(), QQ(0)));
        QVec rhs(rows, QQ(0));
        size_t r = 0;
        for (int gi : inside) {
            for (int c = 0; c < d; ++c) {
                sys[r][c] = QQ(gens[gi][c]);
                sys[r][d + c] = QQ(-gens[gi][c]);
            }
            rhs[r++] = 0;
        }
        size_t slack = 0;
        for (int gi : outside) {
            for (int c = 0; c < d; ++c) {
                sys[r][c] = QQ(gens[gi][c]);
                sys[r][d + c] = QQ(-gens[gi][c]);
            }
            sys[r][2 * d + slack++] = QQ(-1);
            rhs[r++] = 1;
        }
        if (!lp_feasible(sys, rhs)) continue;
        QMat fa(lat.rank, QVec(std::max<size_t>(inside.size(), 1), QQ(0)));
        for (size_t j = 0; j < inside.size(); ++j)
            for (int i = 0; i < lat.rank; ++i) fa[i][j] = QQ(gens[inside[j]][i]);
        if (!lp_feasible(fa, q)) continue;
        ZMat span;
        for (int gi : inside) span.push_back(gens[gi]);
        int dim = inside.empty() ? 0 : static_cast<int>(rank_of(span));
        best_dim = std::min(best_dim, dim);
    }
    return lat.rank - best_dim;
}

void criterion_1() {
    Timer t;
    bool pass = true;
    std::string what = "restriction counting equality, P^1/Q(i), 10 rungs to B=1000, exact";
    try {
        const NumberField& F = NumberField::gaussian();
        weilres::PolynomialSystem sys;
        sys.field = &F;
        sys.variables = {"x0", "x1"};
        sys.ambient = weilres::Ambient::projective(2);
        auto compiled =
            weilres::restrict_projective(sys, weilres::ExtensionData::from_absolute(F));
        QVec ladder;
        for (long b : {2, 4, 8, 16, 31, 62, 125, 250, 500, 1000}) ladder.emplace_back(b);
        auto rep = enumerate::restriction_count_check(F, compiled, ladder, 997);
        pass = rep.ok && rep.rungs.size() == 10;
        for (const auto& r : rep.rungs) pass = pass && r.count_direct == r.count_swept;
        std::ostringstream o;
        o << what << ", N(1000) = " << rep.rungs.back().count_direct;
        what = o.str();
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(1, pass, what, t.secs());
}

void criterion_2() {
    Timer t;
    bool pass = true;
    std::string what =
        "Moebius/Schanuel cross-route on P^1, P^2 over Q (every integer B <= 1000) and "
        "Q(i) (12-rung ladders to 1000), exact";
    try {
        const NumberField& Q = NumberField::rationals();
        const NumberField& Qi = NumberField::gaussian();
        for (long b = 1; b <= 1000 && pass; ++b) {
            pass = pass && enumerate::moebius_inverted_count(Q, 1, QQ(b)) ==
                               enumerate::count_projective_fast(Q, 1, QQ(b));
            pass = pass && enumerate::moebius_inverted_count(Q, 2, QQ(b)) ==
                               enumerate::count_projective_fast(Q, 2, QQ(b));
        }
        for (long b : {1, 2, 4, 7, 13, 25, 47, 89, 170, 320, 610, 1000}) {
            pass = pass && enumerate::moebius_inverted_count(Qi, 1, QQ(b)) ==
                               enumerate::count_projective_fast(Qi, 1, QQ(b));
            pass = pass && enumerate::moebius_inverted_count(Qi, 2, QQ(b)) ==
                               enumerate::count_projective_fast(Qi, 2, QQ(b));
        }
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(2, pass, what, t.secs());
}

void criterion_3() {
    Timer t;
    bool pass = true;
    std::string what;
    try {
        const NumberField& Q = NumberField::rationals();
        // P^1(Q) to 1e6, a pinned to 2; constant within 5% of alpha beta tau.
        enumerate::CountSeries s1;
        QQ b(4);
        while (b <= 1048576) {
            s1.ladder.push_back(b);
            s1.counts.push_back(enumerate::count_projective_fast(Q, 1, b));
            s1.elapsed_ms.push_back(0);
            b *= 2;
        }
        auto fit1 = fit::fit_asymptotic(s1, 2.0);
        tamagawa::TamagawaConfig tc1;
        tc1.prime_cutoff = 100000;
        auto peyre1 = tamagawa::peyre_constant_pn(Q, 1, tc1);
        double rel1 = std::abs(fit1.c - peyre1.c) / peyre1.c;
        bool ok1 = rel1 < 0.05;

        // P^2(Q) to 1e5, a pinned to 3, within 7%.
        enumerate::CountSeries s2;
        b = QQ(4);
        while (b <= 131072) {
            s2.ladder.push_back(b);
            s2.counts.push_back(enumerate::count_projective_fast(Q, 2, b));
            s2.elapsed_ms.push_back(0);
            b *= 2;
        }
        auto fit2 = fit::fit_asymptotic(s2, 3.0);
        tamagawa::TamagawaConfig tc2;
        tc2.prime_cutoff = 30000;
        auto peyre2 = tamagawa::peyre_constant_pn(Q, 2, tc2);
        double rel2 = std::abs(fit2.c - peyre2.c) / peyre2.c;
        bool ok2 = rel2 < 0.07;

        pass = ok1 && ok2;
        char buf[256];
        snprintf(buf, sizeof buf,
                 "Schanuel constants: P^1(Q) fit c=%.6g vs abt=%.6g (rel %.2g, tol 5%%); "
                 "P^2(Q) fit c=%.6g vs abt=%.6g (rel %.2g, tol 7%%)",
                 fit1.c, peyre1.c, rel1, fit2.c, peyre2.c, rel2);
        what = buf;
    } catch (const std::exception& e) {
        pass = false;
        what = std::string("Schanuel constants -- ") + e.what();
    }
    report(3, pass, what, t.secs());
}

void criterion_4() {
    Timer t;
    bool pass = true;
    std::string what = "a/b kernel vs brute-force oracles on 200 random lattices + presets, exact";
    try {
        // Preset values first.
        for (int n = 1; n <= 4; ++n) {
            auto lat = pic::preset_pn(n);
            pass = pass && pic::a_invariant(lat, {ZZ(1)}) == QQ(n + 1);
            pass = pass && pic::b_invariant(lat, {ZZ(1)}) == 1;
        }
        auto pp = pic::preset_multiproj({1, 1});
        pass = pass && pic::a_invariant(pp, {ZZ(1), ZZ(1)}) == QQ(2);
        pass = pass && pic::b_invariant(pp, {ZZ(1), ZZ(1)}) == 2;
        pass = pass && pic::a_invariant(pp, {ZZ(1), ZZ(2)}) == QQ(2);
        pass = pass && pic::b_invariant(pp, {ZZ(1), ZZ(2)}) == 1;
        pass = pass && pic::a_invariant(pic::preset_ci(5, 1, 2), {ZZ(1)}) == QQ(4);
        pass = pass && pic::a_invariant(pic::preset_ci(9, 2, 3), {ZZ(1)}) == QQ(4);

        Prng rng(20240717);
        int done = 0;
        while (done < 200 && pass) {
            pic::PicardLattice lat;
            lat.rank = 1 + static_cast<int>(rng.below(3));
            int ngens = lat.rank + static_cast<int>(rng.below(3));
            for (int g = 0; g < ngens; ++g) {
                ZVec v(lat.rank);
                bool zero = true;
                for (auto& c : v) {
                    c = static_cast<long>(rng.below(7)) - 3;
                    zero = zero && c == 0;
                }
                if (zero) v[0] = 1;
                lat.eff_generators.push_back(v);
            }
            lat.canonical.assign(lat.rank, ZZ(0));
            for (auto& c : lat.canonical) c = static_cast<long>(rng.below(7)) - 3;
            ZVec L(lat.rank);
            bool lzero = true;
            for (auto& c : L) {
                c = static_cast<long>(rng.below(7)) - 3;
                lzero = lzero && c == 0;
            }
            if (lzero) continue;
            try {
                lat.validate();
            } catch (const Error&) {
                continue;
            }
            QQ a;
            try {
                a = pic::a_invariant(lat, L);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::NotBig) {
                    pass = pass && !grid_scan_a(lat, L).has_value();
                    ++done;
                    continue;
                }
                if (e.kind() == ErrorKind::DegenerateCone) continue;
                throw;
            }
            // Exact minimality certificate and face-enumeration oracle.
            QVec q(lat.rank), qe(lat.rank);
            for (int i = 0; i < lat.rank; ++i) {
                q[i] = a * QQ(L[i]) + QQ(lat.canonical[i]);
                qe[i] = (a - QQ(1, 4096)) * QQ(L[i]) + QQ(lat.canonical[i]);
            }
            pass = pass && cone_member(lat, q) && !cone_member(lat, qe);
            pass = pass && pic::b_invariant(lat, L) == oracle_b(lat, a, L);
            ++done;
        }
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(4, pass, what, t.secs());
}

void criterion_5() {
    Timer t;
    bool pass = true;
    std::string what = "a/b preserved across induction for P^n, P^1xP^1, quadric, dP6, exact";
    try {
        std::vector<int> swap2 = {1, 0};
        for (int n = 1; n <= 3; ++n) {
            auto rep =
                pic::res_preservation_check(pic::trivial_action(pic::preset_pn(n)), 2, swap2, {ZZ(1)});
            pass = pass && rep.ok && rep.a_base == QQ(n + 1) && rep.b_base == 1;
        }
        auto pp = pic::trivial_action(pic::preset_multiproj({1, 1}));
        auto r1 = pic::res_preservation_check(pp, 2, swap2, {ZZ(1), ZZ(2)});
        pass = pass && r1.ok && r1.a_base == QQ(2) && r1.b_base == 1;
        auto r2 = pic::res_preservation_check(pp, 2, swap2, {ZZ(1), ZZ(1)});
        pass = pass && r2.ok && r2.b_base == 2;
        auto quadric = pic::trivial_action(pic::preset_quadric_surface());
        auto r3 = pic::res_preservation_check(quadric, 2, swap2, {ZZ(2), ZZ(2)});
        pass = pass && r3.ok && r3.a_base == QQ(1) && r3.b_base == 2;
        auto dp6 = pic::trivial_action(pic::preset_dp6());
        auto r4 = pic::res_preservation_check(dp6, 2, swap2, {ZZ(3), ZZ(-1), ZZ(-1), ZZ(-1)});
        pass = pass && r4.ok && r4.a_base == QQ(1) && r4.b_base == 4;
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(5, pass, what, t.secs());
}

void criterion_6() {
    Timer t;
    bool pass = true;
    std::string what =
        "L-factor induction (p <= 1000, s in {1,2}) and density factorization (good p <= 200), "
        "Q(i)/Q and Q(sqrt-3)/Q, exact";
    try {
        const NumberField& Q = NumberField::rationals();
        std::vector<long> primes;
        {
            std::vector<char> sieve(1001, 1);
            for (long p = 2; p <= 1000; ++p) {
                if (!sieve[p]) continue;
                primes.push_back(p);
                for (long q = 2 * p; q <= 1000; q += p) sieve[q] = 0;
            }
        }
        for (const NumberField* Fp : {&NumberField::gaussian(), &NumberField::eisenstein()}) {
            const NumberField& F = *Fp;
            for (long p : primes)
                for (long s : {1, 2})
                    pass = pass && tamagawa::l_factor_induction_check(1, F, p, s).ok;

            auto quadric = weilres::res_p1_quadric(weilres::ExtensionData::from_absolute(F));
            weilres::PolynomialSystem sys;
            sys.field = &Q;
            sys.variables = quadric.vars;
            sys.ambient = weilres::Ambient::projective(4);
            sys.polynomials = {quadric.relation};
            weilres::PolynomialSystem p1;
            p1.field = &F;
            p1.variables = {"x0", "x1"};
            p1.ambient = weilres::Ambient::projective(2);
            ZZ bad = 2 * abs(F.discriminant());
            for (long p : primes) {
                if (p > 200) break;
                if (bad % p == 0) continue;
                auto vq = nf::factor_rational_prime(p, Q)[0];
                QQ lhs = tamagawa::local_density(sys, vq, 2, 1);
                QQ rhs(1);
                for (const auto& w : nf::factor_rational_prime(p, F))
                    rhs *= tamagawa::local_density(p1, w, 1, 1);
                pass = pass && lhs == rhs;
            }
        }
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(6, pass, what, t.secs());
}

void criterion_7() {
    Timer t;
    bool pass = true;
    std::string what;
    try {
        tamagawa::TamagawaConfig tc;
        tc.prime_cutoff = 10000;  // quadric side is capped at 250 internally
        tc.mc_samples = 6000000;
        tc.seed = 20240718;
        auto cmp = tamagawa::tamagawa_restriction_check(NumberField::gaussian(), 0.03, tc);
        pass = cmp.within_tolerance;
        char buf[256];
        snprintf(buf, sizeof buf,
                 "tau(P^1/Q(i)) = %.6g vs tau(Res P^1/Q) = %.6g, rel diff %.3g "
                 "(tol 3%% or combined error %.3g)",
                 cmp.upstairs.tau, cmp.downstairs.tau, cmp.rel_diff, cmp.combined_error);
        what = buf;
    } catch (const std::exception& e) {
        pass = false;
        what = std::string("tau restriction equality -- ") + e.what();
    }
    report(7, pass, what, t.secs());
}

void criterion_8() {
    Timer t;
    bool pass = true;
    std::string what = "beta via Shapiro: 50 induced modules give H^1 = 1, sign module gives 2, "
                       "beta preserved on presets, exact";
    try {
        Prng rng(13);
        for (int i = 0; i < 50; ++i) {
            int rho = 1 + static_cast<int>(rng.below(4));
            int d = 2 + static_cast<int>(rng.below(3));
            pic::PicardLattice base;
            base.rank = rho;
            for (int k = 0; k < rho; ++k) {
                ZVec e(rho, ZZ(0));
                e[k] = 1;
                base.eff_generators.push_back(e);
            }
            base.canonical.assign(rho, ZZ(-1));
            std::vector<int> cycle(d);
            for (int k = 0; k < d; ++k) cycle[k] = (k + 1) % d;
            pass = pass && pic::h1_cyclic(pic::induce(pic::trivial_action(base), d, cycle)) == 1;
        }
        pic::GaloisLattice sign;
        sign.base.rank = 1;
        sign.base.eff_generators = {{ZZ(1)}, {ZZ(-1)}};
        sign.base.allow_lines = true;
        sign.base.canonical = {ZZ(0)};
        sign.action = {{ZZ(-1)}};
        sign.order = 2;
        pass = pass && pic::h1_cyclic(sign) == 2;
        // beta(X) = beta(Res X) on the presets: both are trivial.
        for (const char* name : {"P1", "P2", "P3", "P1xP1", "dP6", "BT"}) {
            auto lat = pic::preset_by_name(name);
            auto galois = pic::trivial_action(lat);
            ZZ upstairs = pic::h1_cyclic(galois);
            ZZ downstairs = pic::h1_cyclic(pic::induce(galois, 2, {1, 0}));
            pass = pass && upstairs == downstairs && upstairs == 1;
        }
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(8, pass, what, t.secs());
}

void criterion_9() {
    Timer t;
    bool pass = true;
    std::string what;
    try {
        auto cfg = lab::preset_config("bt-cubes");
        cfg.run.samples = 20;
        auto rep = lab::bt_experiment(cfg);
        pass = rep.samples == 20 && rep.split_fibers == 20 && rep.total_space_b == 2 &&
               rep.dp6_rank_split == 8 && rep.dp6_rank_nonsplit == 4 &&
               rep.fiber_series.counts.back() > 0;
        char buf[256];
        snprintf(buf, sizeof buf,
                 "cube-map mechanism: %d/%d fibers pass the 27-line splitness check; ledger b = "
                 "rho = %d vs fiber floor (log B)^3; induced dP6 ranks %d/%d",
                 rep.split_fibers, rep.samples, rep.total_space_b, rep.dp6_rank_split,
                 rep.dp6_rank_nonsplit);
        what = buf;
    } catch (const std::exception& e) {
        pass = false;
        what = std::string("cube-map mechanism -- ") + e.what();
    }
    report(9, pass, what, t.secs());
}

void criterion_10() {
    Timer t;
    bool pass = true;
    std::string what = "determinism: every preset run twice with the same seed is byte-identical";
    try {
        for (const std::string& name : lab::preset_names()) {
            auto cfg = lab::preset_config(name);
            // Reduced scale; determinism is scale-independent.
            cfg.ladder.rungs = std::min(cfg.ladder.rungs, 8);
            cfg.run.prime_cutoff = std::min<long>(cfg.run.prime_cutoff, 300);
            cfg.run.mc_samples = std::min<long>(cfg.run.mc_samples, 200000);
            cfg.run.samples = std::min<long>(cfg.run.samples, 5);
            auto a1 = lab::run_experiment(cfg);
            auto a2 = lab::run_experiment(cfg);
            bool same = a1.files == a2.files;
            pass = pass && same;
            if (!same) what += " [" + name + " differs]";
        }
    } catch (const std::exception& e) {
        pass = false;
        what += std::string(" -- ") + e.what();
    }
    report(10, pass, what, t.secs());
}

}  // namespace

int main() {
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed (%.1fs total)\n", 10 - failures, total.secs());
    return failures == 0 ? 0 : 1;
}
