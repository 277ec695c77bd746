#include <fstream>

#include "doctest.h"
#include "heightlab/prng.hpp"
#include "heightlab/weilres.hpp"

using namespace heightlab;
using namespace heightlab::weilres;
using nf::NumberField;

namespace {

Poly poly_from_terms(const NumberField& F, int nvars,
                     std::vector<std::pair<std::vector<unsigned>, QQ>> terms) {
    Poly p(&F, nvars);
    for (auto& [e, c] : terms) p.add_term(e, F.from_rational(c));
    return p;
}

}  // namespace

TEST_CASE("restrict x^2 = 2 over Q(i)/Q") {
    const NumberField& F = NumberField::gaussian();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x"};
    sys.ambient = Ambient::affine();
    // x^2 - 2
    sys.polynomials = {poly_from_terms(F, 1, {{{2}, QQ(1)}, {{0}, QQ(-2)}})};
    auto c = restrict_affine(sys, ExtensionData::from_absolute(F));
    REQUIRE(c.charts.size() == 1);
    REQUIRE(c.charts[0].equations.size() == 2);
    const NumberField& Q = NumberField::rationals();
    // a^2 - b^2 - 2 and 2ab, in variables (a, b) = (x_1, x_2).
    Poly expect0 = poly_from_terms(Q, 2, {{{2, 0}, QQ(1)}, {{0, 2}, QQ(-1)}, {{0, 0}, QQ(-2)}});
    Poly expect1 = poly_from_terms(Q, 2, {{{1, 1}, QQ(2)}});
    CHECK(c.charts[0].equations[0].minus(expect0).is_zero());
    CHECK(c.charts[0].equations[1].minus(expect1).is_zero());
}

TEST_CASE("restrict the linear system x = 0") {
    const NumberField& F = NumberField::gaussian();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x"};
    sys.ambient = Ambient::affine();
    sys.polynomials = {poly_from_terms(F, 1, {{{1}, QQ(1)}})};
    auto c = restrict_affine(sys, ExtensionData::from_absolute(F));
    const NumberField& Q = NumberField::rationals();
    CHECK(c.charts[0].equations[0].minus(poly_from_terms(Q, 2, {{{1, 0}, QQ(1)}})).is_zero());
    CHECK(c.charts[0].equations[1].minus(poly_from_terms(Q, 2, {{{0, 1}, QQ(1)}})).is_zero());
}

TEST_CASE("restrict the circle x^2 + y^2 = 1 over Q(i)/Q") {
    const NumberField& F = NumberField::gaussian();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x", "y"};
    sys.ambient = Ambient::affine();
    sys.polynomials = {
        poly_from_terms(F, 2, {{{2, 0}, QQ(1)}, {{0, 2}, QQ(1)}, {{0, 0}, QQ(-1)}})};
    auto c = restrict_affine(sys, ExtensionData::from_absolute(F));
    const NumberField& Q = NumberField::rationals();
    // Variables (a,b,c,d); equations a^2-b^2+c^2-d^2-1 and 2ab+2cd.
    Poly e0 = poly_from_terms(Q, 4, {{{2, 0, 0, 0}, QQ(1)},
                                     {{0, 2, 0, 0}, QQ(-1)},
                                     {{0, 0, 2, 0}, QQ(1)},
                                     {{0, 0, 0, 2}, QQ(-1)},
                                     {{0, 0, 0, 0}, QQ(-1)}});
    Poly e1 = poly_from_terms(Q, 4, {{{1, 1, 0, 0}, QQ(2)}, {{0, 0, 1, 1}, QQ(2)}});
    CHECK(c.charts[0].equations[0].minus(e0).is_zero());
    CHECK(c.charts[0].equations[1].minus(e1).is_zero());

    SUBCASE("point maps on the circle") {
        // (a,b,c,d) = (1,0,0,0) -> (x,y) = (1,0): on the circle.
        auto x = point_up(c, 0, {Q.one(), Q.zero(), Q.zero(), Q.zero()});
        CHECK(x[0] == F.one());
        CHECK(x[1] == F.zero());
        // (1,0,0,1) -> (1, i): 1 + i^2 = 0 != 1, rejected.
        CHECK_THROWS_AS((void)point_up(c, 0, {Q.one(), Q.zero(), Q.zero(), Q.one()}), Error);
    }

    SUBCASE("random F-points of the circle round-trip") {
        Prng rng(31337);
        int done = 0;
        while (done < 50) {
            QVec tc = {QQ(static_cast<long>(rng.below(21)) - 10, 1 + static_cast<long>(rng.below(5))),
                       QQ(static_cast<long>(rng.below(21)) - 10, 1 + static_cast<long>(rng.below(5)))};
            nf::FieldElement t = F.element(tc);
            nf::FieldElement t2 = t * t;
            nf::FieldElement den = F.one() + t2;
            if (den.is_zero()) continue;
            nf::FieldElement x = (F.one() - t2) / den;
            nf::FieldElement y = (t + t) / den;
            auto e = point_down(c, 0, {x, y});
            auto back = point_up(c, 0, e);
            CHECK(back[0] == x);
            CHECK(back[1] == y);
            ++done;
        }
    }
}

TEST_CASE("identity map on the trivial extension") {
    const NumberField& Q = NumberField::rationals();
    PolynomialSystem sys;
    sys.field = &Q;
    sys.variables = {"x"};
    sys.ambient = Ambient::affine();
    auto c = restrict_affine(sys, ExtensionData::from_absolute(Q));
    auto x = point_up(c, 0, {Q.from_rational(QQ(7, 3))});
    CHECK(x[0] == Q.from_rational(QQ(7, 3)));
    auto y = point_down(c, 0, {Q.from_rational(QQ(7, 3))});
    CHECK(y[0] == Q.from_rational(QQ(7, 3)));
}

TEST_CASE("point_up reads basis expansions") {
    const NumberField& F = NumberField::gaussian();
    const NumberField& Q = NumberField::rationals();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x"};
    sys.ambient = Ambient::affine();
    auto c = restrict_affine(sys, ExtensionData::from_absolute(F));
    auto x = point_up(c, 0, {Q.one(), Q.from_rational(QQ(2))});
    CHECK(x[0] == F.element({QQ(1), QQ(2)}));  // 1 + 2i
    auto zero = point_up(c, 0, {Q.zero(), Q.zero()});
    CHECK(zero[0].is_zero());
}

TEST_CASE("projective restriction charts") {
    const NumberField& F = NumberField::gaussian();

    SUBCASE("P^0") {
        PolynomialSystem sys;
        sys.field = &F;
        sys.variables = {"x0"};
        sys.ambient = Ambient::projective(1);
        auto c = restrict_projective(sys, ExtensionData::from_absolute(F));
        CHECK(c.charts.size() == 1);
        CHECK(c.compiled_vars.size() == 2);
    }

    SUBCASE("P^1 over Q(i): two charts of affine 2-space") {
        PolynomialSystem sys;
        sys.field = &F;
        sys.variables = {"x0", "x1"};
        sys.ambient = Ambient::projective(2);
        auto c = restrict_projective(sys, ExtensionData::from_absolute(F));
        CHECK(c.charts.size() == 2);
        CHECK(c.compiled_vars.size() == 4);
        CHECK(c.charts[0].equations.empty());
        // chart_for_point picks the first chart with nonzero fixed coordinate.
        auto [idx, scaled] = chart_for_point(c, {F.zero(), F.element({QQ(2), QQ(0)})});
        CHECK(idx == 1);
        CHECK(scaled[1] == F.one());
    }
}

TEST_CASE("BT hypersurface dimension bookkeeping over Q(sqrt(-3))") {
    const NumberField& F = NumberField::eisenstein();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"};
    sys.ambient = Ambient::biprojective(4, 4);
    Poly bt(&F, 8);
    for (int i = 0; i < 4; ++i) {
        std::vector<unsigned> e(8, 0);
        e[i] = 1;
        e[4 + i] = 3;
        bt.add_term(e, F.one());
    }
    sys.polynomials = {bt};
    auto c = restrict_projective(sys, ExtensionData::from_absolute(F));
    CHECK(c.compiled_vars.size() == 16);  // #variables scales by d
    CHECK(c.charts.size() == 16);
    for (const auto& chart : c.charts) {
        CHECK(chart.equations.size() == 2);  // #equations scales by d
        CHECK(chart.fixed_source_vars.size() == 2);
    }
}

TEST_CASE("compiled system vanishing on random P^1 points") {
    const NumberField& F = NumberField::gaussian();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x0", "x1"};
    sys.ambient = Ambient::projective(2);
    auto c = restrict_projective(sys, ExtensionData::from_absolute(F));
    Prng rng(7);
    int done = 0;
    while (done < 100) {
        nf::FieldElement a = F.element({QQ(static_cast<long>(rng.below(9)) - 4),
                                        QQ(static_cast<long>(rng.below(9)) - 4)});
        nf::FieldElement b = F.element({QQ(static_cast<long>(rng.below(9)) - 4),
                                        QQ(static_cast<long>(rng.below(9)) - 4)});
        if (a.is_zero() && b.is_zero()) continue;
        auto [idx, scaled] = chart_for_point(c, {a, b});
        auto y = point_down(c, idx, scaled);  // throws if anything fails to vanish
        auto back = point_up(c, idx, y);
        CHECK(back == scaled);
        ++done;
    }
}

TEST_CASE("Res P^1 quadric for the two built-in quadratic fields") {
    const NumberField& Qi = NumberField::gaussian();
    auto q = res_p1_quadric(ExtensionData::from_absolute(Qi));
    // u0 u3 = u1^2 + u2^2
    CHECK(q.norm_b == 0);
    CHECK(q.norm_c == 1);

    const NumberField& Qe = NumberField::eisenstein();
    auto qe = res_p1_quadric(ExtensionData::from_absolute(Qe));
    // N(a + b theta) = a^2 - ab + b^2
    CHECK(qe.norm_b == -1);
    CHECK(qe.norm_c == 1);

    // (1:0) -> (1:0:0:0)
    auto u = q.embed({Qi.one(), Qi.zero()});
    CHECK(u[0].rational_part() == 1);
    CHECK(u[1].is_zero());
    CHECK(u[2].is_zero());
    CHECK(u[3].is_zero());

    // Round trips through lift.
    Prng rng(17);
    int done = 0;
    while (done < 50) {
        nf::FieldElement a = Qi.element({QQ(static_cast<long>(rng.below(9)) - 4),
                                         QQ(static_cast<long>(rng.below(9)) - 4)});
        nf::FieldElement b = Qi.element({QQ(static_cast<long>(rng.below(9)) - 4),
                                         QQ(static_cast<long>(rng.below(9)) - 4)});
        if (a.is_zero() && b.is_zero()) continue;
        auto uu = q.embed({a, b});
        auto x = q.lift(uu);
        // x and (a,b) agree projectively over F.
        CHECK((x[0] * b == x[1] * a));
        ++done;
    }

    CHECK_THROWS_AS((void)res_p1_quadric(ExtensionData::from_absolute(NumberField::rationals())),
                    Error);
}

TEST_CASE("compiled dump is stable") {
    const NumberField& F = NumberField::gaussian();
    PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x", "y"};
    sys.ambient = Ambient::affine();
    sys.polynomials = {
        poly_from_terms(F, 2, {{{2, 0}, QQ(1)}, {{0, 2}, QQ(1)}, {{0, 0}, QQ(-1)}})};
    auto c = restrict_affine(sys, ExtensionData::from_absolute(F));
    std::string text = dump(c);
    std::ifstream golden(std::string(TEST_DIR) + "/golden/res_circle_qi.txt");
    REQUIRE(golden.good());
    std::string expected((std::istreambuf_iterator<char>(golden)),
                         std::istreambuf_iterator<char>());
    CHECK(text == expected);
}
