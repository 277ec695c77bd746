// Command-line driver for the experiment pipelines: enumeration ladders,
// asymptotic fits, restriction compilation, Peyre constants and the packaged
// compatibility checks.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "heightlab/experiments.hpp"

using namespace heightlab;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string bmax;
    std::string ladder_spec;  // B0:factor:rungs
    int64_t seed = -1;
    long prime_cutoff = -1;
    long mc_samples = -1;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "config file path");
    cmd->add_option("--preset", o.preset, "built-in experiment preset");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--bmax", o.bmax, "override the top rung (exact rational)");
    cmd->add_option("--ladder", o.ladder_spec, "ladder as B0:factor:rungs");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--prime-cutoff", o.prime_cutoff, "Euler product truncation");
    cmd->add_option("--mc-samples", o.mc_samples, "Monte Carlo sample count");
    cmd->add_flag("--timings", o.timings, "record wall-clock timings in CSV output");
}

config::ExperimentConfig load_config(const CommonOpts& o, const std::string& default_preset) {
    config::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) fail(ErrorKind::IoError, "cannot read config '" + o.config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = config::parse_config(buf.str());
    } else if (!o.preset.empty()) {
        cfg = lab::preset_config(o.preset);
    } else if (!default_preset.empty()) {
        cfg = lab::preset_config(default_preset);
    } else {
        fail(ErrorKind::ParseError, "need --config or --preset");
    }
    if (!o.ladder_spec.empty()) {
        std::istringstream ls(o.ladder_spec);
        std::string b0, factor, rungs;
        if (!std::getline(ls, b0, ':') || !std::getline(ls, factor, ':') ||
            !std::getline(ls, rungs))
            fail(ErrorKind::ParseError, "ladder must be B0:factor:rungs");
        cfg.ladder.b0 = parse_rational(b0);
        cfg.ladder.factor = parse_rational(factor);
        cfg.ladder.rungs = static_cast<int>(std::stol(rungs));
    }
    if (!o.bmax.empty()) {
        // Keep the geometric shape, rescale the ladder to end at bmax.
        QQ target = parse_rational(o.bmax);
        QQ top = cfg.ladder.b0;
        for (int i = 1; i < cfg.ladder.rungs; ++i) top *= cfg.ladder.factor;
        if (top <= 0) fail(ErrorKind::ParseError, "bad ladder");
        cfg.ladder.b0 *= target / top;
    }
    if (o.seed >= 0) cfg.run.seed = static_cast<uint64_t>(o.seed);
    if (o.prime_cutoff > 0) cfg.run.prime_cutoff = o.prime_cutoff;
    if (o.mc_samples > 0) cfg.run.mc_samples = o.mc_samples;
    if (!o.out_dir.empty()) cfg.run.out = o.out_dir;
    cfg.run.timings = cfg.run.timings || o.timings;
    return cfg;
}

int run_and_emit(config::ExperimentConfig cfg) {
    lab::Artifacts art = lab::run_experiment(cfg);
    lab::emit_outputs(art, cfg.run.out);
    std::cout << art.summary << "\n";
    std::cout << "wrote " << art.files.size() << " file(s) to " << cfg.run.out << "\n";
    return art.check_failed ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-height point counts, Weil restrictions and Manin-conjecture checks"};
    app.require_subcommand(1);

    CommonOpts enumerate_opts, fit_opts, restrict_opts, peyre_opts, checkres_opts, checktam_opts,
        bt_opts;
    std::string fit_series;
    double fit_fix_a = -1;

    auto* cmd_enum = app.add_subcommand("enumerate", "count points of bounded height");
    add_common(cmd_enum, enumerate_opts);

    auto* cmd_fit = app.add_subcommand("fit", "fit c B^a (log B)^(b-1) to a series CSV");
    cmd_fit->add_option("--series", fit_series, "series.csv produced by enumerate")->required();
    cmd_fit->add_option("--fix-a", fit_fix_a, "pin the exponent a");

    auto* cmd_restrict = app.add_subcommand("restrict", "compile a Weil restriction");
    add_common(cmd_restrict, restrict_opts);

    auto* cmd_peyre = app.add_subcommand("peyre", "assemble alpha, beta and tau");
    add_common(cmd_peyre, peyre_opts);

    auto* cmd_checkres =
        app.add_subcommand("check-restriction", "counting-function equality for Res P^1");
    add_common(cmd_checkres, checkres_opts);

    auto* cmd_checktam = app.add_subcommand("check-tamagawa", "tau(X) vs tau(Res X)");
    add_common(cmd_checktam, checktam_opts);

    auto* cmd_bt = app.add_subcommand("bt-experiment", "cube-map split-fiber mechanism");
    add_common(cmd_bt, bt_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_enum->parsed()) {
            auto cfg = load_config(enumerate_opts, "schanuel-p1-qi");
            if (cfg.experiment != "schanuel") cfg.experiment = "enumerate";
            return run_and_emit(std::move(cfg));
        }
        if (cmd_fit->parsed()) {
            std::ifstream in(fit_series);
            if (!in) fail(ErrorKind::IoError, "cannot read '" + fit_series + "'");
            enumerate::CountSeries series;
            std::string line;
            std::getline(in, line);  // header
            while (std::getline(in, line)) {
                std::istringstream row(line);
                std::string b, n;
                if (!std::getline(row, b, ',') || !std::getline(row, n, ',')) continue;
                series.ladder.push_back(parse_rational(b));
                series.counts.push_back(std::stoll(n));
                series.elapsed_ms.push_back(0);
            }
            std::optional<double> fix;
            if (fit_fix_a > 0) fix = fit_fix_a;
            auto rep = fit::fit_asymptotic(series, fix);
            std::cout << lab::fit_report_text(rep, rep.a, rep.b, 0);
            return 0;
        }
        if (cmd_restrict->parsed()) {
            auto cfg = load_config(restrict_opts, "restriction-p1-qi");
            auto field_holder = config::resolve_field(cfg.field);
            auto amb = config::resolve_ambient(cfg.variety.ambient);
            weilres::PolynomialSystem sys;
            sys.field = field_holder.get();
            sys.variables = amb.variables;
            sys.ambient = amb.ambient;
            for (const auto& e : cfg.variety.equations)
                sys.polynomials.push_back(config::parse_polynomial(e, *field_holder, amb.variables));
            for (const auto& e : cfg.variety.nonzero)
                sys.nonvanishing.push_back(config::parse_polynomial(e, *field_holder, amb.variables));
            auto ext = weilres::ExtensionData::from_absolute(*field_holder);
            auto compiled = sys.ambient.kind == weilres::Ambient::Kind::Projective
                                ? weilres::restrict_projective(sys, ext)
                                : weilres::restrict_affine(sys, ext);
            std::cout << weilres::dump(compiled);
            return 0;
        }
        if (cmd_peyre->parsed()) {
            auto cfg = load_config(peyre_opts, "schanuel-p1");
            auto field_holder = config::resolve_field(cfg.field);
            auto amb = config::resolve_ambient(cfg.variety.ambient);
            if (amb.dims.size() != 1)
                fail(ErrorKind::DomainError, "peyre assembly implemented for P^n ambients");
            tamagawa::TamagawaConfig tc;
            tc.prime_cutoff = cfg.run.prime_cutoff;
            tc.mc_samples = cfg.run.mc_samples;
            tc.seed = cfg.run.seed;
            auto p = tamagawa::peyre_constant_pn(*field_holder, amb.dims[0], tc);
            std::cout << tamagawa::peyre_ledger("P" + std::to_string(amb.dims[0]), p.tau_detail);
            std::cout << "alpha " << format_rational(p.alpha) << "\nbeta " << p.beta.get_str()
                      << "\nc " << p.c << "\n";
            return 0;
        }
        if (cmd_checkres->parsed())
            return run_and_emit(load_config(checkres_opts, "restriction-p1-qi"));
        if (cmd_checktam->parsed())
            return run_and_emit(load_config(checktam_opts, "tamagawa-p1-qi"));
        if (cmd_bt->parsed()) return run_and_emit(load_config(bt_opts, "bt-cubes"));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
