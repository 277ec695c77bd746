#ifndef HEIGHTLAB_CONFIG_HPP
#define HEIGHTLAB_CONFIG_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/numberfield.hpp"
#include "heightlab/weilres.hpp"

namespace heightlab::config {

struct FieldBlock {
    std::string preset;  // "Q", "Qi", "Qe"; empty when explicit data is given
    ZVec minpoly;
    QMat basis;
    long h = 1;
    long w = 2;
};

struct VarietyBlock {
    std::string ambient;                // "P1", "P2", "P3", "P1xP1", "P3xP3"
    std::string lattice;                // preset name, may be empty
    std::vector<std::string> equations;  // polynomial expressions
    std::vector<std::string> nonzero;    // open-subset conditions
};

struct MetricBlock {
    std::string norm = "max";  // max | euclidean | matrix
    QMat matrix;               // twist entries, exact rationals
};

struct LadderBlock {
    QQ b0 = QQ(2);
    QQ factor = QQ(2);
    int rungs = 10;
};

struct RunBlock {
    uint64_t seed = 1;
    long prime_cutoff = 1000;
    long mc_samples = 1000000;
    long samples = 20;        // bt base points
    std::string out = "out";
    bool timings = false;
};

struct ExperimentConfig {
    std::string experiment;  // preset name / experiment kind
    FieldBlock field;
    VarietyBlock variety;
    MetricBlock metric;
    LadderBlock ladder;
    RunBlock run;
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

// Resolved pieces.
std::shared_ptr<const nf::NumberField> resolve_field(const FieldBlock& f);
struct ResolvedAmbient {
    weilres::Ambient ambient;
    std::vector<std::string> variables;
    std::vector<int> dims;  // projective dimensions per block
};
ResolvedAmbient resolve_ambient(const std::string& name);
heights::ArchNorm resolve_norm(const MetricBlock& m, int blocks);
QVec resolve_ladder(const LadderBlock& l);

// Polynomial expression parser: +, -, *, ^, parentheses, integer and p/q
// literals, ambient variable names, and `theta` for the field generator.
weilres::Poly parse_polynomial(const std::string& text, const nf::NumberField& F,
                               const std::vector<std::string>& variables);

}  // namespace heightlab::config

#endif
