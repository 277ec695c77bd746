#ifndef HEIGHTLAB_ENUMERATE_HPP
#define HEIGHTLAB_ENUMERATE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "heightlab/heights.hpp"
#include "heightlab/numberfield.hpp"
#include "heightlab/weilres.hpp"

namespace heightlab::enumerate {

using heights::HeightValue;
using heights::MetrizedBundle;
using heights::ProjectivePoint;
using nf::NumberField;

struct EnumerationTask {
    const NumberField* field = nullptr;
    MetrizedBundle bundle;
    // Membership and open-subset predicates over the ambient coordinates.
    std::vector<weilres::Poly> equations;
    std::vector<weilres::Poly> nonvanishing;
    QQ bound = QQ(1);
    int workers = 1;

    static EnumerationTask projective(const NumberField& F, int n, QQ bound);
};

struct CountSeries {
    QVec ladder;
    std::vector<int64_t> counts;
    std::vector<int64_t> elapsed_ms;
};

// Streams each projective point exactly once, as its canonical representative,
// together with its exact height.  Supported fields: Q and the norm-euclidean
// imaginary quadratics with h = 1.
void enum_stream(const EnumerationTask& task,
                 const std::function<void(const ProjectivePoint&, const HeightValue&)>& emit);

// Exact N(B) for the task.  Uses closed coordinate loops; honors predicates.
int64_t enum_projective_count(const EnumerationTask& task);

// Ambient P^n fast counting without predicates (max norm): coprimality-sieve
// loops over Q, direct gcd pair loops over imaginary quadratic fields.
// Cross-checked against enum_stream in the tests.
int64_t count_projective_fast(const NumberField& F, int n, const QQ& bound);

// One enumeration pass with cutoff at the top rung, counts accumulated per rung.
CountSeries count_series(const EnumerationTask& task, const QVec& ladder);

// (1/w) sum over ideals of mu(a) * #{affine tuples in a^(n+1), norms <= B}.
int64_t moebius_inverted_count(const NumberField& F, int n, const QQ& bound);

struct RestrictionRung {
    QQ bound;
    int64_t count_direct;  // F-side projective enumeration
    int64_t count_swept;   // E-side compiled-system sweep
    int64_t heights_checked;
    int64_t machinery_samples;
};

struct RestrictionCheckReport {
    std::vector<RestrictionRung> rungs;
    bool ok = false;
};

// Counting-function equality for X = P^1 over an imaginary quadratic field:
// the F-side stream and an independent E-side sweep of the compiled system
// must agree exactly at every rung.  Throws MismatchFound with a witness.
RestrictionCheckReport restriction_count_check(const NumberField& F,
                                               const weilres::CompiledRestriction& compiled,
                                               const QVec& ladder, int machinery_stride = 997);

std::string series_csv(const CountSeries& series, bool with_timings);

}  // namespace heightlab::enumerate

#endif
