#ifndef HEIGHTLAB_EXPERIMENTS_HPP
#define HEIGHTLAB_EXPERIMENTS_HPP

#include <map>

#include "heightlab/config.hpp"
#include "heightlab/enumerate.hpp"
#include "heightlab/fit.hpp"
#include "heightlab/tamagawa.hpp"

namespace heightlab::lab {

struct Artifacts {
    // Relative file name -> byte content; written by emit_outputs.
    std::map<std::string, std::string> files;
    std::string summary;
    bool check_failed = false;
};

// Dispatch on cfg.experiment: schanuel | enumerate | restriction-check |
// tamagawa-compare | moebius-cross | bt.
Artifacts run_experiment(const config::ExperimentConfig& cfg);

void emit_outputs(const Artifacts& artifacts, const std::string& out_dir);

config::ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Simple deterministic log-log SVG with an optional fitted overlay.
std::string loglog_svg(const enumerate::CountSeries& series, const fit::FitReport* fitted);

std::string fit_report_text(const fit::FitReport& rep, double predicted_a, double predicted_b,
                            double predicted_c);

// The cube-map counterexample mechanism over Q(sqrt(-3)).
struct BtReport {
    int samples = 0;
    int split_fibers = 0;
    int lines_per_fiber = 27;
    enumerate::CountSeries fiber_series;
    int total_space_b = 0;       // rho of the (1,3) hypersurface lattice
    int dp6_rank_split = 0;      // invariants of the induced dP6 lattice, split case
    int dp6_rank_nonsplit = 0;   // and with the swap action
    std::string text;
};

BtReport bt_experiment(const config::ExperimentConfig& cfg);

// Exact cube root in an imaginary quadratic field, if one exists.
std::optional<nf::FieldElement> cube_root_in_field(const nf::FieldElement& u);

}  // namespace heightlab::lab

#endif
