#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "doctest.h"
#include "heightlab/enumerate.hpp"

using namespace heightlab;
using namespace heightlab::enumerate;
using nf::NumberField;

TEST_CASE("P^1(Q) at small bounds") {
    const NumberField& Q = NumberField::rationals();
    auto t1 = EnumerationTask::projective(Q, 1, QQ(1));
    std::set<std::pair<long, long>> pts;
    enum_stream(t1, [&](const ProjectivePoint& p, const HeightValue& h) {
        CHECK(h.sq() <= 1);
        pts.emplace(p.coords[0].coords[0].get_num().get_si(),
                    p.coords[1].coords[0].get_num().get_si());
    });
    std::set<std::pair<long, long>> expect = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    CHECK(pts == expect);
    CHECK(enum_projective_count(t1) == 4);
    CHECK(enum_projective_count(EnumerationTask::projective(Q, 1, QQ(2))) == 8);
}

TEST_CASE("P^1(Q(i)) at B = 1: six points") {
    const NumberField& F = NumberField::gaussian();
    auto t = EnumerationTask::projective(F, 1, QQ(1));
    int64_t n = 0;
    enum_stream(t, [&](const ProjectivePoint& p, const HeightValue& h) {
        CHECK(h.sq() == 1);
        // Canonical representatives: leading coordinate in the sector.
        bool first_found = false;
        for (const auto& c : p.coords) {
            if (c.is_zero()) continue;
            if (!first_found) {
                first_found = true;
                CHECK(nf::sector_canonical_unit(c) == F.one());
            }
        }
        ++n;
    });
    CHECK(n == 6);
}

TEST_CASE("no two emitted points are proportional") {
    const NumberField& F = NumberField::gaussian();
    auto t = EnumerationTask::projective(F, 1, QQ(5));
    std::vector<std::vector<nf::FieldElement>> pts;
    enum_stream(t, [&](const ProjectivePoint& p, const HeightValue&) { pts.push_back(p.coords); });
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            // (a:b) ~ (c:d) iff ad = bc.
            CHECK_FALSE(pts[i][0] * pts[j][1] == pts[i][1] * pts[j][0]);
        }
}

TEST_CASE("subvariety enumeration with predicates") {
    const NumberField& Q = NumberField::rationals();

    SUBCASE("quadric u0 u3 = u1^2 + u2^2 in P^3 at B = 1 vs brute force") {
        auto task = EnumerationTask::projective(Q, 3, QQ(1));
        weilres::Poly f(&Q, 4);
        f.add_term({1, 0, 0, 1}, Q.one());
        f.add_term({0, 2, 0, 0}, Q.from_rational(QQ(-1)));
        f.add_term({0, 0, 2, 0}, Q.from_rational(QQ(-1)));
        task.equations = {f};
        int64_t count = enum_projective_count(task);

        // Brute force over all 4-tuples with entries in {-1, 0, 1}.
        std::set<std::array<int, 4>> seen;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (int d = -1; d <= 1; ++d) {
                        if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                        if (a * d != b * b + c * c) continue;
                        int g = std::abs(a);
                        for (int v : {b, c, d}) g = std::gcd(g, std::abs(v));
                        if (g != 1) continue;
                        std::array<int, 4> t{a, b, c, d};
                        int lead = 0;
                        while (t[lead] == 0) ++lead;
                        if (t[lead] < 0)
                            for (auto& v : t) v = -v;
                        seen.insert(t);
                    }
        CHECK(count == static_cast<int64_t>(seen.size()));
        CHECK(count >= 4);  // includes (1:0:0:0), (0:0:0:1), (1:1:0:1), (1:0:1:1)
    }

    SUBCASE("empty predicate gives the ambient count") {
        auto plain = EnumerationTask::projective(Q, 2, QQ(3));
        auto with = plain;
        with.equations = {weilres::Poly::zero(Q, 3)};
        CHECK(enum_projective_count(plain) == enum_projective_count(with));
    }

    SUBCASE("inconsistent system counts nothing") {
        auto task = EnumerationTask::projective(Q, 2, QQ(3));
        task.equations = {weilres::Poly::constant(Q, 3, Q.one())};
        CHECK(enum_projective_count(task) == 0);
    }

    SUBCASE("nonvanishing conditions carve out the open subset") {
        auto task = EnumerationTask::projective(Q, 1, QQ(2));
        task.nonvanishing = {weilres::Poly::variable(Q, 2, 0)};
        CHECK(enum_projective_count(task) == 7);  // drops (0:1)
    }
}

TEST_CASE("count series") {
    const NumberField& Q = NumberField::rationals();
    auto t = EnumerationTask::projective(Q, 1, QQ(1));
    auto s = count_series(t, {QQ(1), QQ(2)});
    REQUIRE(s.counts.size() == 2);
    CHECK(s.counts[0] == 4);
    CHECK(s.counts[1] == 8);

    auto single = count_series(t, {QQ(7)});
    CHECK(single.counts[0] == enum_projective_count(EnumerationTask::projective(Q, 1, QQ(7))));

    // Per-rung self consistency and monotonicity on P^2.
    auto t2 = EnumerationTask::projective(Q, 2, QQ(10));
    QVec ladder = {QQ(1), QQ(2), QQ(3), QQ(5), QQ(10)};
    auto s2 = count_series(t2, ladder);
    for (size_t i = 0; i < ladder.size(); ++i) {
        CHECK(s2.counts[i] ==
              enum_projective_count(EnumerationTask::projective(Q, 2, ladder[i])));
        if (i) CHECK(s2.counts[i] >= s2.counts[i - 1]);
    }
}

TEST_CASE("fast counting agrees with the canonical stream") {
    const NumberField& Q = NumberField::rationals();
    for (long b : {1, 2, 3, 10, 37, 100})
        CHECK(count_projective_fast(Q, 1, QQ(b)) ==
              enum_projective_count(EnumerationTask::projective(Q, 1, QQ(b))));
    for (long b : {1, 2, 5, 20, 50})
        CHECK(count_projective_fast(Q, 2, QQ(b)) ==
              enum_projective_count(EnumerationTask::projective(Q, 2, QQ(b))));
    const NumberField& F = NumberField::gaussian();
    for (long b : {1, 2, 5, 17, 50})
        CHECK(count_projective_fast(F, 1, QQ(b)) ==
              enum_projective_count(EnumerationTask::projective(F, 1, QQ(b))));
    for (long b : {1, 2, 5, 20})
        CHECK(count_projective_fast(F, 2, QQ(b)) ==
              enum_projective_count(EnumerationTask::projective(F, 2, QQ(b))));
    const NumberField& E = NumberField::eisenstein();
    for (long b : {1, 3, 12, 40})
        CHECK(count_projective_fast(E, 1, QQ(b)) ==
              enum_projective_count(EnumerationTask::projective(E, 1, QQ(b))));
    // Rational bounds hit the same integer cutoffs exactly.
    CHECK(count_projective_fast(Q, 1, QQ(7, 2)) ==
          enum_projective_count(EnumerationTask::projective(Q, 1, QQ(7, 2))));
}

TEST_CASE("moebius-inverted counts equal direct counts") {
    const NumberField& Q = NumberField::rationals();
    CHECK(moebius_inverted_count(Q, 1, QQ(10)) == count_projective_fast(Q, 1, QQ(10)));
    CHECK(moebius_inverted_count(Q, 1, QQ(1, 2)) == 0);  // B < 1
    for (long b : {1, 2, 9, 50, 200})
        CHECK(moebius_inverted_count(Q, 1, QQ(b)) == count_projective_fast(Q, 1, QQ(b)));
    for (long b : {1, 5, 30, 120})
        CHECK(moebius_inverted_count(Q, 2, QQ(b)) == count_projective_fast(Q, 2, QQ(b)));

    const NumberField& F = NumberField::gaussian();
    CHECK(moebius_inverted_count(F, 1, QQ(20)) == count_projective_fast(F, 1, QQ(20)));
    for (long b : {1, 2, 13, 60})
        CHECK(moebius_inverted_count(F, 1, QQ(b)) == count_projective_fast(F, 1, QQ(b)));
    for (long b : {1, 8, 45})
        CHECK(moebius_inverted_count(F, 2, QQ(b)) == count_projective_fast(F, 2, QQ(b)));

    const NumberField& E = NumberField::eisenstein();
    for (long b : {1, 7, 33})
        CHECK(moebius_inverted_count(E, 1, QQ(b)) == count_projective_fast(E, 1, QQ(b)));
}

TEST_CASE("Schanuel growth sanity on P^1(Q)") {
    const NumberField& Q = NumberField::rationals();
    double c200 = count_projective_fast(Q, 1, QQ(200)) / (200.0 * 200.0);
    double c800 = count_projective_fast(Q, 1, QQ(800)) / (800.0 * 800.0);
    double schanuel = 12.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(std::abs(c800 - schanuel) < 0.02);
    CHECK(std::abs(c800 - c200) < 0.02);
}

TEST_CASE("restriction counting equality at desk scale") {
    const NumberField& F = NumberField::gaussian();
    weilres::PolynomialSystem sys;
    sys.field = &F;
    sys.variables = {"x0", "x1"};
    sys.ambient = weilres::Ambient::projective(2);
    auto compiled = weilres::restrict_projective(sys, weilres::ExtensionData::from_absolute(F));

    QVec ladder = {QQ(1), QQ(2), QQ(5), QQ(10), QQ(25)};
    auto report = restriction_count_check(F, compiled, ladder, 17);
    CHECK(report.ok);
    REQUIRE(report.rungs.size() == 5);
    CHECK(report.rungs[0].count_direct == 6);
    CHECK(report.rungs[0].count_swept == 6);
    for (const auto& rung : report.rungs) {
        CHECK(rung.count_direct == rung.count_swept);
        CHECK(rung.heights_checked >= rung.count_direct);
    }
    // Same series through the generic counter.
    for (size_t i = 0; i < ladder.size(); ++i)
        CHECK(report.rungs[i].count_direct ==
              enum_projective_count(EnumerationTask::projective(F, 1, ladder[i])));
}

TEST_CASE("csv output shape") {
    CountSeries s;
    s.ladder = {QQ(1), QQ(2)};
    s.counts = {4, 8};
    s.elapsed_ms = {12, 34};
    CHECK(series_csv(s, false) == "B,count,elapsed_ms\n1,4,0\n2,8,0\n");
    CHECK(series_csv(s, true) == "B,count,elapsed_ms\n1,4,12\n2,8,34\n");
}

TEST_CASE("unsupported fields are refused") {
    auto R = NumberField::create({ZZ(-2), ZZ(0), ZZ(1)}, {{QQ(1), QQ(0)}, {QQ(0), QQ(1)}}, 1, 2);
    CHECK_THROWS_AS((void)enum_projective_count(EnumerationTask::projective(*R, 1, QQ(5))), Error);
}

TEST_CASE("partitioned workers produce identical counts") {
    const NumberField& F = NumberField::gaussian();
    const NumberField& Q = NumberField::rationals();
    for (long b : {5, 20, 60}) {
        auto t1 = EnumerationTask::projective(F, 1, QQ(b));
        auto t2 = t1;
        t2.workers = 2;
        auto t3 = t1;
        t3.workers = 3;
        int64_t base = enum_projective_count(t1);
        CHECK(enum_projective_count(t2) == base);
        CHECK(enum_projective_count(t3) == base);
    }
    auto q1 = EnumerationTask::projective(Q, 2, QQ(25));
    auto q4 = q1;
    q4.workers = 4;
    CHECK(enum_projective_count(q4) == enum_projective_count(q1));
    // with predicates
    auto task = EnumerationTask::projective(Q, 3, QQ(6));
    weilres::Poly f(&Q, 4);
    f.add_term({1, 0, 0, 1}, Q.one());
    f.add_term({0, 2, 0, 0}, Q.from_rational(QQ(-1)));
    f.add_term({0, 0, 2, 0}, Q.from_rational(QQ(-1)));
    task.equations = {f};
    auto task2 = task;
    task2.workers = 2;
    CHECK(enum_projective_count(task2) == enum_projective_count(task));
}

TEST_CASE("euclidean-norm enumeration with exact cutoffs") {
    const NumberField& Q = NumberField::rationals();
    auto t = EnumerationTask::projective(Q, 1, QQ(3));
    t.bundle = MetrizedBundle::o1(1, heights::ArchNorm::euclidean());
    // Canonical pairs with a^2 + b^2 <= 9:
    // (0:1), (1:0), (1:+-1), (1:+-2), (2:+-1).
    CHECK(enum_projective_count(t) == 8);
    // Boundary ties are included and decided exactly: (3:4) and friends sit
    // on the sphere of radius 5.
    auto t5 = t;
    t5.bound = QQ(5);
    CHECK(enum_projective_count(t5) == 24);
    t5.bound = QQ(49, 10);
    CHECK(enum_projective_count(t5) == 20);  // the four tie points drop out
}
