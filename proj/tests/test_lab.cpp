#include <cmath>

#include "doctest.h"
#include "heightlab/experiments.hpp"
#include "heightlab/prng.hpp"

using namespace heightlab;

namespace {

enumerate::CountSeries synthetic_series(double a, double b, double c, int rungs) {
    enumerate::CountSeries s;
    QQ bv(3);
    for (int i = 0; i < rungs; ++i) {
        double bd = bv.get_d();
        double n = c * std::pow(bd, a) * std::pow(std::log(bd), b - 1.0);
        s.ladder.push_back(bv);
        s.counts.push_back(static_cast<int64_t>(std::llround(n)));
        s.elapsed_ms.push_back(0);
        bv *= 2;
    }
    return s;
}

}  // namespace

TEST_CASE("fit recovers synthetic exponents") {
    // N = 7 B^2 log B on a 12-rung ladder.
    auto s = synthetic_series(2.0, 2.0, 7.0, 12);
    auto rep = fit::fit_asymptotic(s);
    CHECK(std::abs(rep.a - 2.0) < 1e-3);
    CHECK(std::abs(rep.b - 2.0) < 2e-2);
    CHECK(std::abs(rep.c - 7.0) / 7.0 < 2e-2);

    // Pure power law: b = 1.
    auto s2 = synthetic_series(3.0, 1.0, 1.0, 12);
    auto rep2 = fit::fit_asymptotic(s2);
    CHECK(std::abs(rep2.b - 1.0) < 2e-2);

    CHECK_THROWS_AS((void)fit::fit_asymptotic(synthetic_series(2, 1, 1, 4)), Error);
}

TEST_CASE("fit recovers 50 random synthetic triples to 1e-6 on exact data") {
    Prng rng(8);
    for (int t = 0; t < 50; ++t) {
        double a = 1.0 + 3.0 * rng.next_double();
        double b = 1.0 + static_cast<double>(rng.below(4));
        double c = 0.1 + 9.9 * rng.next_double();
        std::vector<double> log_b, log_n;
        double bd = 10.0;
        for (int i = 0; i < 12; ++i) {
            log_b.push_back(std::log(bd));
            log_n.push_back(std::log(c) + a * std::log(bd) + (b - 1.0) * std::log(std::log(bd)));
            bd *= 2.5;
        }
        auto rep = fit::fit_asymptotic_logs(log_b, log_n);
        CHECK(std::abs(rep.a - a) / a < 1e-6);
        CHECK(std::abs(rep.b - b) / b < 1e-6);
        CHECK(std::abs(rep.c - c) / c < 1e-6);
        // fix_a at the true exponent never degrades the residuals beyond its
        // own error bars.
        auto pinned = fit::fit_asymptotic_logs(log_b, log_n, a);
        double ssr_free = 0, ssr_pin = 0;
        for (double r : rep.residuals) ssr_free += r * r;
        for (double r : pinned.residuals) ssr_pin += r * r;
        CHECK(ssr_pin <= ssr_free + 1e-12);
        CHECK(std::abs(pinned.b - b) < 1e-6);
    }
}

TEST_CASE("fit on rounded integer counts stays within honest error bars") {
    Prng rng(81);
    for (int t = 0; t < 20; ++t) {
        double a = 1.0 + 2.0 * rng.next_double();
        double b = 1.0 + static_cast<double>(rng.below(3));
        double c = 0.5 + 5.0 * rng.next_double();
        enumerate::CountSeries s;
        QQ bv(8);
        for (int i = 0; i < 9; ++i) {
            double bd = bv.get_d();
            double n = c * std::pow(bd, a) * std::pow(std::log(bd), b - 1.0);
            s.ladder.push_back(bv);
            s.counts.push_back(static_cast<int64_t>(std::llround(n)));
            s.elapsed_ms.push_back(0);
            bv *= 2;
        }
        auto rep = fit::fit_asymptotic(s);
        CHECK(std::abs(rep.a - a) < std::max(5 * rep.a_err, 2e-2));
        CHECK(std::abs(rep.c - c) / c < 0.2);
    }
}

TEST_CASE("P^2(Q) ladder fit finds a near 3") {
    enumerate::CountSeries s;
    QQ bv(8);
    for (int i = 0; i < 9; ++i) {
        s.ladder.push_back(bv);
        s.counts.push_back(enumerate::count_projective_fast(nf::NumberField::rationals(), 2, bv));
        s.elapsed_ms.push_back(0);
        bv *= 2;
    }
    auto rep = fit::fit_asymptotic(s);
    CHECK(std::abs(rep.a - 3.0) < 0.05);
}

TEST_CASE("config round trip and rejection of unknown keys") {
    std::string text = R"(experiment schanuel
field {
  preset Qi
}
variety {
  ambient P1
  lattice P1
}
metric {
  norm max
}
ladder {
  b0 2
  factor 3/2
  rungs 8
}
run {
  seed 7
  prime-cutoff 500
  mc-samples 1000
  out results
}
)";
    auto cfg = config::parse_config(text);
    CHECK(cfg.field.preset == "Qi");
    CHECK(cfg.ladder.factor == QQ(3, 2));
    CHECK(cfg.run.seed == 7);
    // Round-trip stability.
    auto txt1 = config::serialize_config(cfg);
    auto cfg2 = config::parse_config(txt1);
    CHECK(config::serialize_config(cfg2) == txt1);

    CHECK_THROWS_AS((void)config::parse_config("field {\n  flavor odd\n}\n"), Error);
    CHECK_THROWS_AS((void)config::parse_config("mystery {\n}\n"), Error);
    CHECK_THROWS_AS((void)config::parse_config(""), Error);
}

TEST_CASE("polynomial expression parsing") {
    const auto& Q = nf::NumberField::rationals();
    std::vector<std::string> vars = {"u0", "u1", "u2", "u3"};
    auto p = config::parse_polynomial("u0*u3 - u1^2 - u2^2", Q, vars);
    CHECK(p.terms().size() == 3);
    std::vector<nf::FieldElement> pt = {Q.from_rational(QQ(2)), Q.from_rational(QQ(1)),
                                        Q.from_rational(QQ(1)), Q.from_rational(QQ(1))};
    CHECK(p.evaluate(pt).rational_part() == 0);
    auto q = config::parse_polynomial("1/2*u0^2 - (u1 - u2)*u3", Q, vars);
    CHECK(q.evaluate(pt).rational_part() == QQ(2));
    const auto& F = nf::NumberField::gaussian();
    auto r = config::parse_polynomial("theta*u0 + 1", F, vars);
    std::vector<nf::FieldElement> pf(4, F.one());
    CHECK(r.evaluate(pf) == F.element({QQ(1), QQ(1)}));
    CHECK_THROWS_AS((void)config::parse_polynomial("u9 + 1", Q, vars), Error);
    CHECK_THROWS_AS((void)config::parse_polynomial("u0 +", Q, vars), Error);
}

TEST_CASE("experiment presets run and produce deterministic artifacts") {
    auto cfg = lab::preset_config("schanuel-p1-qi");
    cfg.ladder.rungs = 8;
    cfg.run.prime_cutoff = 500;
    auto art1 = lab::run_experiment(cfg);
    auto art2 = lab::run_experiment(cfg);
    REQUIRE(art1.files.count("series.csv") == 1);
    REQUIRE(art1.files.count("plot.svg") == 1);
    CHECK(art1.files == art2.files);  // byte-identical with the same seed
    CHECK_FALSE(art1.check_failed);
    // SVG declares its dimensions.
    CHECK(art1.files["plot.svg"].find("width=\"640\" height=\"480\"") != std::string::npos);
}

TEST_CASE("moebius cross experiment runs clean") {
    auto cfg = lab::preset_config("moebius-cross");
    cfg.ladder.rungs = 6;
    auto art = lab::run_experiment(cfg);
    CHECK_FALSE(art.check_failed);
}

TEST_CASE("cube roots in Q(sqrt(-3))") {
    const auto& F = nf::NumberField::eisenstein();
    Prng rng(4);
    for (int t = 0; t < 40; ++t) {
        nf::FieldElement z = F.element({QQ(static_cast<long>(rng.below(9)) - 4),
                                        QQ(static_cast<long>(rng.below(9)) - 4)});
        if (z.is_zero()) continue;
        auto root = lab::cube_root_in_field(z * z * z);
        REQUIRE(root.has_value());
        CHECK((*root) * (*root) * (*root) == z * z * z);
    }
    // 2 is not a cube in the field.
    CHECK_FALSE(lab::cube_root_in_field(F.from_rational(QQ(2))).has_value());
    // Non-integral cubes work through denominator clearing.
    nf::FieldElement half = F.element({QQ(1, 2), QQ(3, 2)});
    auto r = lab::cube_root_in_field(half * half * half);
    REQUIRE(r.has_value());
    CHECK((*r) * (*r) * (*r) == half * half * half);
}

TEST_CASE("bt experiment report") {
    auto cfg = lab::preset_config("bt-cubes");
    cfg.run.samples = 5;
    cfg.ladder.rungs = 4;
    auto rep = lab::bt_experiment(cfg);
    CHECK(rep.samples == 5);
    CHECK(rep.split_fibers == 5);
    CHECK(rep.total_space_b == 2);
    CHECK(rep.dp6_rank_split == 8);
    CHECK(rep.dp6_rank_nonsplit == 4);
    CHECK(rep.fiber_series.counts.back() > 0);
}
