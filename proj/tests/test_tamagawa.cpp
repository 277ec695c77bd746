#include <cmath>
#include <numbers>

#include "doctest.h"
#include "heightlab/enumerate.hpp"
#include "heightlab/tamagawa.hpp"
#include "heightlab/zeta.hpp"

using namespace heightlab;
using namespace heightlab::tamagawa;
using nf::NumberField;

namespace {

weilres::PolynomialSystem pn_system(const NumberField& F, int n) {
    weilres::PolynomialSystem sys;
    sys.field = &F;
    for (int i = 0; i <= n; ++i) sys.variables.push_back("x" + std::to_string(i));
    sys.ambient = weilres::Ambient::projective(n + 1);
    return sys;
}

weilres::PolynomialSystem conic_system() {
    const NumberField& Q = NumberField::rationals();
    weilres::PolynomialSystem sys;
    sys.field = &Q;
    sys.variables = {"x", "y", "z"};
    sys.ambient = weilres::Ambient::projective(3);
    weilres::Poly f(&Q, 3);
    f.add_term({2, 0, 0}, Q.one());
    f.add_term({0, 2, 0}, Q.one());
    f.add_term({0, 0, 2}, Q.from_rational(QQ(-1)));
    sys.polynomials = {f};
    return sys;
}

}  // namespace

TEST_CASE("local densities") {
    const NumberField& Q = NumberField::rationals();

    SUBCASE("P^1 mod p has density (p+1)/p") {
        auto sys = pn_system(Q, 1);
        for (long p : {2, 3, 5, 13, 97}) {
            auto v = nf::factor_rational_prime(p, Q)[0];
            CHECK(local_density(sys, v, 1, 1) == QQ(p + 1, p));
        }
    }

    SUBCASE("smooth conic mod 5 has p+1 points") {
        auto v = nf::factor_rational_prime(5, Q)[0];
        CHECK(count_points_residue_field(conic_system(), v) == 6);
        CHECK(local_density(conic_system(), v, 1, 1) == QQ(6, 5));
    }

    SUBCASE("quadric u0u3 = u1^2 + u2^2 mod 3, brute force vs split-type count") {
        const NumberField& F = NumberField::gaussian();
        auto quadric = weilres::res_p1_quadric(weilres::ExtensionData::from_absolute(F));
        weilres::PolynomialSystem sys;
        sys.field = &Q;
        sys.variables = quadric.vars;
        sys.ambient = weilres::Ambient::projective(4);
        sys.polynomials = {quadric.relation};
        auto v3 = nf::factor_rational_prime(3, Q)[0];
        // 3 is inert in Q(i): nonsplit quadric with p^2 + 1 points.
        CHECK(count_points_residue_field(sys, v3) == 10);
        auto v5 = nf::factor_rational_prime(5, Q)[0];
        // 5 splits: (p+1)^2 points.
        CHECK(count_points_residue_field(sys, v5) == 36);
    }

    SUBCASE("Hensel stabilization at the bad prime 2") {
        const NumberField& F = NumberField::gaussian();
        auto quadric = weilres::res_p1_quadric(weilres::ExtensionData::from_absolute(F));
        weilres::PolynomialSystem sys;
        sys.field = &Q;
        sys.variables = quadric.vars;
        sys.ambient = weilres::Ambient::projective(4);
        sys.polynomials = {quadric.relation};
        auto v2 = nf::factor_rational_prime(2, Q)[0];
        LocalDensityReport rep;
        QQ d = local_density(sys, v2, 2, 6, &rep);
        CHECK(d == QQ(3, 2));
        CHECK(rep.lift_depth >= 2);
    }
}

TEST_CASE("local density factorization at good primes") {
    // density(Res X at p) = prod over w|p of density(X at w), Lemma-style.
    for (const NumberField* Fp : {&NumberField::gaussian(), &NumberField::eisenstein()}) {
        const NumberField& F = *Fp;
        const NumberField& Q = NumberField::rationals();
        auto quadric = weilres::res_p1_quadric(weilres::ExtensionData::from_absolute(F));
        weilres::PolynomialSystem sys;
        sys.field = &Q;
        sys.variables = quadric.vars;
        sys.ambient = weilres::Ambient::projective(4);
        sys.polynomials = {quadric.relation};
        auto p1 = pn_system(F, 1);
        ZZ bad = 2 * abs(F.discriminant());
        for (long p : {3, 5, 7, 11, 13, 17, 19, 23}) {
            if (bad % p == 0) continue;
            auto vq = nf::factor_rational_prime(p, Q)[0];
            QQ lhs = local_density(sys, vq, 2, 1);
            QQ rhs(1);
            for (const auto& w : nf::factor_rational_prime(p, F))
                rhs *= local_density(p1, w, 1, 1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("L-factors") {
    const NumberField& F = NumberField::gaussian();
    auto induced = pic::induce(pic::trivial_action(pic::preset_pn(1)), 2, {1, 0});

    SUBCASE("trivial rank one") {
        CHECK(l_factor(identity_mat(1), ZZ(5), 1) == QQ(5, 4));  // (1 - 1/5)^{-1}
    }
    SUBCASE("split prime: identity Frobenius") {
        auto frob = frobenius_for_prime(induced, 5, F);
        CHECK(l_factor(frob.matrix, frob.q, 1) == QQ(25, 16));  // (1-1/5)^{-2}
    }
    SUBCASE("inert prime: swap Frobenius") {
        auto frob = frobenius_for_prime(induced, 3, F);
        CHECK(l_factor(frob.matrix, frob.q, 1) == QQ(9, 8));  // (1-1/9)^{-1}
    }
    SUBCASE("ramified prime: inertia invariants") {
        auto frob = frobenius_for_prime(induced, 2, F);
        CHECK(frob.ramified);
        CHECK(frob.rank == 1);
        CHECK(l_factor(frob.matrix, frob.q, 1) == QQ(2));  // (1-1/2)^{-1}
    }
}

TEST_CASE("L-factor induction identity for p <= 1000") {
    for (const NumberField* Fp : {&NumberField::gaussian(), &NumberField::eisenstein()}) {
        std::vector<char> sieve(1001, 1);
        for (long p = 2; p <= 1000; ++p) {
            if (!sieve[p]) continue;
            for (long q = 2 * p; q <= 1000; q += p) sieve[q] = 0;
            for (long s : {1, 2}) {
                auto rep = l_factor_induction_check(1, *Fp, p, s);
                CHECK(rep.ok);
            }
        }
    }
}

TEST_CASE("archimedean densities for P^n") {
    using heights::ArchNorm;
    // max norm over R: 2^n; over C: (2 pi)^n.
    CHECK(archimedean_density_pn(1, ArchNorm::max(), false) == doctest::Approx(2.0));
    CHECK(archimedean_density_pn(2, ArchNorm::max(), false) == doctest::Approx(4.0));
    CHECK(archimedean_density_pn(1, ArchNorm::max(), true) ==
          doctest::Approx(2.0 * std::numbers::pi));
    // symmetric-norm invariance: permutations and sign flips leave it unchanged
    auto perm = ArchNorm::matrix({{{QQ(0), QQ(1)}, {QQ(-1), QQ(0)}}});
    CHECK(archimedean_density_pn(1, perm, false) ==
          doctest::Approx(archimedean_density_pn(1, ArchNorm::max(), false)));
    // euclidean over R at n=1: area of the unit disc / 2 = pi/2.
    CHECK(archimedean_density_pn(1, ArchNorm::euclidean(), false) ==
          doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("Leray density of the circle cone against the parametrization oracle") {
    // f = x^2 + y^2 - z^2 in the max-ball of R^3: the cone over the conic.
    // Parametrize by angle and radius: x = r cos t, y = r sin t, z = r; the
    // Leray measure 1/|df/dz| dx dy on the solved chart gives
    // I = int over {x^2+y^2 <= 1} (1/(2 sqrt(x^2+y^2))) dx dy * 2 sheets
    //   = 2 * int_0^1 (2 pi r) / (2 r) dr = 2 pi.
    const NumberField& Q = NumberField::rationals();
    weilres::Poly f(&Q, 3);
    f.add_term({2, 0, 0}, Q.one());
    f.add_term({0, 2, 0}, Q.one());
    f.add_term({0, 0, 2}, Q.from_rational(QQ(-1)));
    auto mc = leray_density_hypersurface(f, 7, 2000000);
    CHECK(std::abs(mc.value - 2.0 * std::numbers::pi) <= 3.0 * mc.std_error + 0.01);
}

TEST_CASE("tau of P^1 over Q matches the Schanuel constant") {
    TamagawaConfig config;
    config.prime_cutoff = 20000;
    auto p = peyre_constant_pn(NumberField::rationals(), 1, config);
    CHECK(p.alpha == QQ(1, 2));
    CHECK(p.beta == 1);
    // alpha * beta * tau = 12 / pi^2
    double expect = 12.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(std::abs(p.c - expect) / expect < 0.01);
    // truncation monotonicity: doubling the cutoff moves tau by less than the
    // reported tail error.
    TamagawaConfig big = config;
    big.prime_cutoff = 40000;
    auto p2 = peyre_constant_pn(NumberField::rationals(), 1, big);
    CHECK(std::abs(p2.tau - p.tau) <= p.tau_detail.tail_error * p.tau + 1e-9);
}

TEST_CASE("tau of P^2 over Q matches 4/zeta(3) with alpha = 1/3") {
    TamagawaConfig config;
    config.prime_cutoff = 2000;
    auto p = peyre_constant_pn(NumberField::rationals(), 2, config);
    CHECK(p.alpha == QQ(1, 3));
    double zeta3 = 1.2020569031595943;
    double expect = 4.0 / zeta3;
    CHECK(std::abs(p.c - expect) / expect < 0.01);
}

TEST_CASE("tau restriction equality for P^1 over Q(i)") {
    TamagawaConfig config;
    config.prime_cutoff = 3000;
    config.mc_samples = 2000000;
    config.seed = 11;
    auto cmp = tamagawa_restriction_check(NumberField::gaussian(), 0.03, config);
    CHECK(cmp.within_tolerance);
    // Both sides near the known value pi^2 / (2 zeta_{Q(i)}(2)).
    double zf2 = nf::dedekind_zeta(NumberField::gaussian(), 2.0, 20000).value;
    double expect = std::numbers::pi * std::numbers::pi / (2.0 * zf2);
    CHECK(std::abs(cmp.upstairs.tau - expect) / expect < 0.01);
    CHECK(std::abs(cmp.downstairs.tau - expect) / expect < 0.03);
    // The ledger carries every factor.
    std::string led = peyre_ledger("down", cmp.downstairs);
    CHECK(led.find("residue_factor") != std::string::npos);
    CHECK(led.find("p 2 ") != std::string::npos);
}

TEST_CASE("ci eligibility") {
    auto a = ci_eligibility(1, 2, 5, 1);
    CHECK(a.skinner_ok);       // 5 > 4
    CHECK(a.skinner_slack == 1);
    CHECK(a.simple_ok);        // 5 >= 5
    auto b = ci_eligibility(1, 2, 3, 1);
    CHECK_FALSE(b.skinner_ok);  // 3 > 4 fails
    auto c = ci_eligibility(1, 3, 9, 1);
    CHECK_FALSE(c.skinner_ok);  // 9 > 16 fails
}
