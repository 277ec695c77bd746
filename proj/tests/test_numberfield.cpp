#include <cmath>
#include <numbers>

#include "doctest.h"
#include "heightlab/numberfield.hpp"
#include "heightlab/prng.hpp"
#include "heightlab/zeta.hpp"

using namespace heightlab;
using namespace heightlab::nf;

namespace {

FieldElement random_element(const NumberField& F, Prng& rng) {
    QVec c(F.degree());
    for (auto& q : c) {
        long num = static_cast<long>(rng.below(41)) - 20;
        long den = static_cast<long>(rng.below(4)) + 1;
        q = QQ(num, den);
        q.canonicalize();
    }
    return F.element(std::move(c));
}

}  // namespace

TEST_CASE("built-in field invariants") {
    const NumberField& Q = NumberField::rationals();
    CHECK(Q.degree() == 1);
    CHECK(Q.discriminant() == 1);
    CHECK(Q.roots_of_unity() == 2);

    const NumberField& Qi = NumberField::gaussian();
    CHECK(Qi.degree() == 2);
    CHECK(Qi.discriminant() == -4);
    CHECK(Qi.roots_of_unity() == 4);
    CHECK(Qi.real_embeddings() == 0);
    CHECK(Qi.complex_pairs() == 1);

    const NumberField& Qe = NumberField::eisenstein();
    CHECK(Qe.discriminant() == -3);
    CHECK(Qe.roots_of_unity() == 6);
    CHECK(Qe.units().size() == 6);
}

TEST_CASE("field arithmetic sanity in Q(i)") {
    const NumberField& F = NumberField::gaussian();
    FieldElement i = F.generator();
    CHECK(i * i == F.from_rational(QQ(-1)));
    FieldElement x = F.element({QQ(1), QQ(1)});  // 1 + i
    CHECK(norm(x) == QQ(2));
    CHECK(trace(x) == QQ(2));
    CHECK(x * inverse(x) == F.one());
    // Eisenstein norm form a^2 - ab + b^2
    const NumberField& E = NumberField::eisenstein();
    CHECK(norm(E.element({QQ(3), QQ(2)})) == QQ(9 - 6 + 4));
}

TEST_CASE("reducible or inconsistent constructions fail") {
    CHECK_THROWS_AS((void)NumberField::create({ZZ(-1), ZZ(0), ZZ(1)},  // x^2 - 1
                                              {{QQ(1), QQ(0)}, {QQ(0), QQ(1)}}, 1, 2),
                    Error);
    // Non-closed "basis" {1, theta/2} for x^2+1: products leave the lattice.
    CHECK_THROWS_AS((void)NumberField::create({ZZ(1), ZZ(0), ZZ(1)},
                                              {{QQ(1), QQ(0)}, {QQ(0), QQ(1, 2)}}, 1, 4),
                    Error);
}

TEST_CASE("real quadratic accepted structurally") {
    auto F = NumberField::create({ZZ(-2), ZZ(0), ZZ(1)}, {{QQ(1), QQ(0)}, {QQ(0), QQ(1)}}, 1, 2);
    CHECK(F->real_embeddings() == 2);
    CHECK(F->discriminant() == 8);
}

TEST_CASE("absolute values over Q") {
    const NumberField& Q = NumberField::rationals();
    FieldElement two = Q.from_rational(QQ(2));
    auto arch = archimedean_places(Q);
    REQUIRE(arch.size() == 1);
    CHECK(absolute_value(two, arch[0]) == doctest::Approx(2.0));
    auto places2 = factor_rational_prime(2, Q);
    REQUIRE(places2.size() == 1);
    CHECK(finite_abs_exact(two, places2[0]) == QQ(1, 2));
    auto places3 = factor_rational_prime(3, Q);
    CHECK(finite_abs_exact(two, places3[0]) == QQ(1));
    CHECK_THROWS_AS((void)finite_abs_exact(Q.zero(), places2[0]), Error);
}

TEST_CASE("splitting of rational primes in Q(i)") {
    const NumberField& F = NumberField::gaussian();
    auto p5 = factor_rational_prime(5, F);
    REQUIRE(p5.size() == 2);
    CHECK(p5[0].residue_degree == 1);
    CHECK(p5[0].ramification == 1);

    auto p3 = factor_rational_prime(3, F);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].residue_degree == 2);

    auto p2 = factor_rational_prime(2, F);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].ramification == 2);
    CHECK(p2[0].residue_degree == 1);

    // |1+i| at the ramified place is 1/2; at infinity it is |sigma|^2 = 2.
    FieldElement x = F.element({QQ(1), QQ(1)});
    CHECK(finite_abs_exact(x, p2[0]) == QQ(1, 2));
    auto arch = archimedean_places(F);
    REQUIRE(arch.size() == 1);
    CHECK(absolute_value(x, arch[0]) == doctest::Approx(2.0));
}

TEST_CASE("content ideal norms") {
    const NumberField& Q = NumberField::rationals();
    CHECK(content_ideal_norm({Q.from_rational(QQ(2)), Q.from_rational(QQ(3))}) == 1);
    CHECK(content_ideal_norm({Q.from_rational(QQ(2)), Q.from_rational(QQ(4))}) == 2);
    const NumberField& F = NumberField::gaussian();
    CHECK(content_ideal_norm({F.element({QQ(1), QQ(1)}), F.from_rational(QQ(2))}) == 2);
    CHECK_THROWS_AS((void)content_ideal_norm({Q.zero(), Q.zero()}), Error);
}

TEST_CASE("moebius function on ideals of Q(i)") {
    const NumberField& F = NumberField::gaussian();
    IdealZ unit = ideal_from_elements(F, {F.one()});
    CHECK(moebius_ideal(unit) == 1);
    FieldElement onepi = F.element({QQ(1), QQ(1)});
    IdealZ ram = ideal_from_elements(F, {onepi * onepi});
    CHECK(moebius_ideal(ram) == 0);
    IdealZ five = ideal_from_elements(F, {F.from_rational(QQ(5))});
    CHECK(moebius_ideal(five) == 1);  // product of two distinct split primes
    IdealZ three = ideal_from_elements(F, {F.from_rational(QQ(3))});
    CHECK(moebius_ideal(three) == -1);  // inert prime
}

TEST_CASE("moebius multiplicativity on random coprime ideal pairs") {
    const NumberField& F = NumberField::gaussian();
    Prng rng(2024);
    int done = 0;
    while (done < 100) {
        FieldElement a = F.element({QQ(static_cast<long>(rng.below(40)) + 1),
                                    QQ(static_cast<long>(rng.below(40)))});
        FieldElement b = F.element({QQ(static_cast<long>(rng.below(40)) + 1),
                                    QQ(static_cast<long>(rng.below(40)))});
        if (a.is_zero() || b.is_zero()) continue;
        if (abs(norm(a)) > 10000 || abs(norm(b)) > 10000) continue;
        FieldElement g = gcd_euclidean(a, b);
        if (abs(norm(g)) != 1) continue;  // want coprime pairs
        IdealZ ia = ideal_from_elements(F, {a});
        IdealZ ib = ideal_from_elements(F, {b});
        IdealZ iab = ideal_mul(ia, ib);
        CHECK(moebius_ideal(iab) == moebius_ideal(ia) * moebius_ideal(ib));
        ++done;
    }
}

TEST_CASE("product formula over the built-in fields") {
    Prng rng(99);
    for (const NumberField* Fp :
         {&NumberField::rationals(), &NumberField::gaussian(), &NumberField::eisenstein()}) {
        const NumberField& F = *Fp;
        int done = 0;
        while (done < 200) {
            FieldElement x = random_element(F, rng);
            if (x.is_zero()) continue;
            double logsum = 0.0;
            for (const Place& v : archimedean_places(F))
                logsum += std::log(absolute_value(x, v, 192));
            // finite part: primes dividing numerator or denominator norms
            QQ nx = norm(x);
            ZZ num = abs(nx.get_num()) * nx.get_den();  // primes of num and den together
            long nn = num.get_si();
            for (long p = 2; p * p <= nn || (nn > 1 && p <= nn); ++p) {
                if (nn % p != 0) continue;
                while (nn % p == 0) nn /= p;
                for (const Place& v : factor_rational_prime(p, F)) {
                    long o = ord_at(x, v);
                    if (o != 0) logsum += -static_cast<double>(v.residue_degree) * o *
                                          std::log(static_cast<double>(p));
                }
            }
            CHECK(std::abs(logsum) < 1e-9);
            ++done;
        }
    }
}

TEST_CASE("norm agrees with the product of archimedean values") {
    Prng rng(123);
    for (const NumberField* Fp :
         {&NumberField::rationals(), &NumberField::gaussian(), &NumberField::eisenstein()}) {
        const NumberField& F = *Fp;
        for (int t = 0; t < 25; ++t) {
            FieldElement x = random_element(F, rng);
            if (x.is_zero()) continue;
            double prod = 1.0;
            for (const Place& v : archimedean_places(F)) prod *= absolute_value(x, v, 192);
            CHECK(prod == doctest::Approx(std::abs(norm(x).get_d())).epsilon(1e-12));
        }
    }
}

TEST_CASE("dedekind zeta values") {
    const NumberField& Q = NumberField::rationals();
    auto z2 = dedekind_zeta(Q, 2.0, 100000);
    CHECK(std::abs(z2.value - std::numbers::pi * std::numbers::pi / 6.0) <= z2.tail_bound + 1e-12);

    CHECK(residue_at_one(NumberField::gaussian()) ==
          doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));

    for (double s : {1.1, 1.5, 2.0, 3.0})
        CHECK(dedekind_zeta(NumberField::gaussian(), s, 1000).value >= 1.0);
    CHECK_THROWS_AS((void)dedekind_zeta(Q, 1.0, 100), Error);
}

TEST_CASE("euclidean gcd and sector units") {
    const NumberField& F = NumberField::gaussian();
    FieldElement a = F.element({QQ(4), QQ(2)});
    FieldElement b = F.element({QQ(2), QQ(0)});
    FieldElement g = gcd_euclidean(a, b);
    CHECK(abs(norm(g)) == 4);  // gcd is 2 up to a unit

    // Sector representative of i is 1 (argument range [0, pi/2)).
    FieldElement i = F.generator();
    FieldElement u = sector_canonical_unit(i);
    CHECK(u * i == F.one());
    // 1+i is already in the sector.
    FieldElement x = F.element({QQ(1), QQ(1)});
    CHECK(sector_canonical_unit(x) == F.one());

    const NumberField& E = NumberField::eisenstein();
    // Orbit of any nonzero element contains exactly one sector representative.
    Prng rng(5);
    for (int t = 0; t < 30; ++t) {
        FieldElement z = random_element(E, rng);
        if (z.is_zero()) continue;
        FieldElement u6 = sector_canonical_unit(z);
        int count = 0;
        for (const FieldElement& unit : E.units())
            if (sector_canonical_unit(unit * z) * (unit * z) == u6 * z) ++count;
        CHECK(count == 6);
    }
}
