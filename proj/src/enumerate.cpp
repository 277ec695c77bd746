#include "heightlab/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

namespace heightlab::enumerate {

namespace {

int64_t gcd64(int64_t a, int64_t b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// int64 arithmetic in the ring of integers of an imaginary quadratic field
// with minimal polynomial x^2 + a1 x + a0 (integral basis {1, theta}).
struct IqCtx {
    int64_t a1 = 0, a0 = 1;
    int w = 4;
    int64_t sector_k = 0;  // for w = 6: |disc(minpoly)| = 3 k^2

    struct V {
        int64_t a = 0, b = 0;
        bool operator==(const V&) const = default;
    };

    static IqCtx from(const NumberField& F) {
        if (!F.is_imaginary_quadratic())
            fail(ErrorKind::UnsupportedField, "imaginary quadratic context");
        if (F.class_number() != 1 || abs(F.discriminant()) > 11)
            fail(ErrorKind::UnsupportedField,
                 "enumeration needs h = 1 and a norm-euclidean ring");
        IqCtx c;
        c.a1 = to_i64(F.minpoly()[1]);
        c.a0 = to_i64(F.minpoly()[0]);
        c.w = static_cast<int>(F.roots_of_unity());
        // Canonicalization below needs coordinates in {1, theta}; the built-in
        // fields satisfy this, and create() pins basis[0] = 1.
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!(F.basis_matrix()[i][j] == QQ(i == j ? 1 : 0)))
                    fail(ErrorKind::UnsupportedField, "power-basis field required");
        if (c.w == 6) {
            int64_t D = std::abs(c.a1 * c.a1 - 4 * c.a0);
            c.sector_k = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(D) / 3.0)));
            if (3 * c.sector_k * c.sector_k != D)
                fail(ErrorKind::UnsupportedField, "w = 6 needs sqrt(-3) in the field");
        }
        return c;
    }

    int64_t norm(V x) const { return x.a * x.a - a1 * x.a * x.b + a0 * x.b * x.b; }
    bool is_zero(V x) const { return x.a == 0 && x.b == 0; }

    V mul(V x, V y) const {
        return {x.a * y.a - a0 * x.b * y.b, x.a * y.b + x.b * y.a - a1 * x.b * y.b};
    }
    V sub(V x, V y) const { return {x.a - y.a, x.b - y.b}; }
    V conj(V x) const { return {x.a - a1 * x.b, -x.b}; }

    // Nearest-integer division for the euclidean algorithm.
    V div_round(V x, V y) const {
        V num = mul(x, conj(y));
        long double n = static_cast<long double>(norm(y));
        return {static_cast<int64_t>(llrintl(num.a / n)), static_cast<int64_t>(llrintl(num.b / n))};
    }

    V gcd(V x, V y) const {
        int guard = 0;
        while (!is_zero(y)) {
            V r = sub(x, mul(div_round(x, y), y));
            if (norm(r) >= norm(y)) {
                // Nearest rounding must shrink the norm in these fields; adjust
                // against any long-double edge case.
                V best = r;
                for (int da = -1; da <= 1; ++da)
                    for (int db = -1; db <= 1; ++db) {
                        V q = div_round(x, y);
                        q.a += da;
                        q.b += db;
                        V cand = sub(x, mul(q, y));
                        if (norm(cand) < norm(best)) best = cand;
                    }
                r = best;
                if (norm(r) >= norm(y)) fail(ErrorKind::Internal, "euclidean step failed");
            }
            x = y;
            y = r;
            if (++guard > 256) fail(ErrorKind::Internal, "euclidean gcd runaway");
        }
        return x;
    }

    bool is_unit(V x) const { return norm(x) == 1; }

    // Argument in [0, 2 pi / w), exactly.
    bool sector(V x) const {
        if (is_zero(x)) return false;
        switch (w) {
            case 2:
                return x.b > 0 || (x.b == 0 && x.a > 0);
            case 4:
                return 2 * x.a - a1 * x.b > 0 && x.b >= 0;
            case 6:
                return x.b >= 0 && 2 * x.a - a1 * x.b > x.b * sector_k;
            default:
                fail(ErrorKind::UnsupportedField, "unsupported torsion order");
        }
    }

    // All lattice points with norm <= bound (floor), ordered by (b, a); zero excluded.
    std::vector<V> values(const QQ& bound) const {
        std::vector<V> out;
        if (bound < 0) return out;
        ZZ nf = ZZ(bound.get_num() / bound.get_den());
        if (!nf.fits_slong_p()) fail(ErrorKind::DomainError, "bound too large");
        int64_t nb = nf.get_si();
        int64_t D = 4 * a0 - a1 * a1;  // positive
        int64_t bmax = static_cast<int64_t>(std::sqrt(4.0 * nb / D)) + 2;
        for (int64_t b = -bmax; b <= bmax; ++b) {
            ZZ rhs = ZZ(4) * nb - ZZ(D) * b * b;
            if (rhs < 0) continue;
            int64_t s = to_i64(isqrt(rhs));
            // (2a - a1 b)^2 <= rhs
            int64_t lo_num = a1 * b - s, hi_num = a1 * b + s;
            int64_t alo = static_cast<int64_t>(std::ceil(lo_num / 2.0));
            int64_t ahi = static_cast<int64_t>(std::floor(hi_num / 2.0));
            for (int64_t a = alo; a <= ahi; ++a) {
                V v{a, b};
                if (!is_zero(v) && norm(v) <= nb) out.push_back(v);
            }
        }
        return out;
    }
};

// ---- generic canonical enumeration ----
//
// RatVal / IqCtx::V coordinates with all filters exact.  One implementation
// drives both the streaming and counting entry points.

struct FieldKind {
    bool rational;
    IqCtx iq;  // valid when !rational
};

FieldKind classify(const NumberField& F) {
    if (F.is_rationals()) return {true, {}};
    if (F.is_imaginary_quadratic()) return {false, IqCtx::from(F)};
    fail(ErrorKind::UnsupportedField, "enumeration supports Q and imaginary quadratic h=1 fields");
}

// Per-coordinate norm bounds from the bundle (overscan box for non-max norms).
std::vector<QQ> coordinate_bounds(const MetrizedBundle& m, const QQ& bound, bool rational) {
    std::vector<QQ> out;
    for (size_t b = 0; b < m.block_sizes.size(); ++b) {
        int size = m.block_sizes[b];
        if (m.degrees[b] < 1) fail(ErrorKind::DomainError, "counting needs degree >= 1");
        if (m.norm.kind != heights::ArchNorm::Kind::Matrix) {
            for (int i = 0; i < size; ++i) out.push_back(bound);
            continue;
        }
        const QMat& twist = m.norm.block_twists.at(b);
        QMat inv(size, QVec(size, QQ(0)));
        {
            QMat a = twist;
            for (int i = 0; i < size; ++i) inv[i][i] = 1;
            for (int c = 0; c < size; ++c) {
                int p = -1;
                for (int i = c; i < size; ++i)
                    if (a[i][c] != 0) {
                        p = i;
                        break;
                    }
                if (p < 0) fail(ErrorKind::DomainError, "twist matrix must be invertible");
                std::swap(a[p], a[c]);
                std::swap(inv[p], inv[c]);
                QQ f = QQ(1) / a[c][c];
                for (int j = 0; j < size; ++j) {
                    a[c][j] *= f;
                    inv[c][j] *= f;
                }
                for (int i = 0; i < size; ++i) {
                    if (i == c || a[i][c] == 0) continue;
                    QQ g = a[i][c];
                    for (int j = 0; j < size; ++j) {
                        a[i][j] -= g * a[c][j];
                        inv[i][j] -= g * inv[c][j];
                    }
                }
            }
        }
        for (int i = 0; i < size; ++i) {
            QQ rowsum(0);
            for (int j = 0; j < size; ++j) rowsum += abs(inv[i][j]);
            out.push_back(rational ? QQ(bound * rowsum) : QQ(bound * rowsum * rowsum));
        }
    }
    return out;
}

struct EmitContext {
    std::vector<nf::FieldElement> elems;
    QQ height_sq;
};

// Predicates compiled to int64 coordinates when every coefficient is integral
// and a rigorous magnitude bound keeps the evaluation inside int64.
struct FastPredicates {
    bool usable = false;
    struct Term {
        IqCtx::V coeff;  // (value, 0) over Q
        std::vector<unsigned> exps;
    };
    std::vector<std::vector<Term>> equations;
    std::vector<std::vector<Term>> nonvanishing;

    static FastPredicates build(const EnumerationTask& task, bool rational, const IqCtx* iq,
                                int64_t max_coord_norm) {
        FastPredicates fp;
        if (task.equations.empty() && task.nonvanishing.empty()) return fp;
        // Coordinate magnitude bound: |v| <= M over Q; |a|, |b| <= sqrt(4N/3)+1
        // for lattice points of norm N over an imaginary quadratic field.
        double m = rational ? static_cast<double>(max_coord_norm)
                            : std::sqrt(std::max<double>(1.0, 4.0 * max_coord_norm)) + 1.0;
        double kappa = rational ? 1.0 : (1.0 + std::abs(static_cast<double>(iq->a1)) +
                                         std::abs(static_cast<double>(iq->a0)));
        auto compile = [&](const std::vector<weilres::Poly>& polys,
                           std::vector<std::vector<Term>>& out) -> bool {
            for (const auto& poly : polys) {
                std::vector<Term> terms;
                double bound = 0.0;
                for (const auto& [e, c] : poly.terms()) {
                    Term t;
                    t.exps = e;
                    double cmag = 0.0;
                    for (const QQ& q : c.coords) {
                        if (q.get_den() != 1) return false;
                        if (!q.get_num().fits_slong_p()) return false;
                        cmag = std::max(cmag, std::abs(q.get_d()));
                    }
                    t.coeff = {c.coords[0].get_num().get_si(),
                               c.coords.size() > 1 ? c.coords[1].get_num().get_si() : 0};
                    unsigned deg = 0;
                    for (unsigned v : e) deg += v;
                    bound += cmag * std::pow(kappa * m, std::max<unsigned>(deg, 1));
                    terms.push_back(std::move(t));
                }
                if (bound > 9.0e17) return false;
                out.push_back(std::move(terms));
            }
            return true;
        };
        FastPredicates tmp;
        if (!compile(task.equations, tmp.equations)) return fp;
        if (!compile(task.nonvanishing, tmp.nonvanishing)) return fp;
        tmp.usable = true;
        return tmp;
    }

    static IqCtx::V eval(const std::vector<Term>& terms, const IqCtx* iq,
                         const std::vector<IqCtx::V>& x) {
        IqCtx::V acc{0, 0};
        for (const auto& t : terms) {
            IqCtx::V v = t.coeff;
            for (size_t i = 0; i < x.size(); ++i)
                for (unsigned k = 0; k < t.exps[i]; ++k)
                    v = iq ? iq->mul(v, x[i]) : IqCtx::V{v.a * x[i].a, 0};
            acc.a += v.a;
            acc.b += v.b;
        }
        return acc;
    }
};

// Enumerates canonical representatives; calls sink(coords-as-elements, H^2).
// When `need_elements` is false and there are no predicates, field elements
// are not materialized and the sink receives an empty vector.
template <typename GetValue, typename MakeElem>
class CanonicalEnum {
  public:
    const EnumerationTask& task;
    bool rational;
    const IqCtx* iq;
    std::vector<std::vector<int>> value_ids;           // per coordinate: indices into pool
    std::vector<int64_t> pool_norm;                    // |x| over Q, N(x) over imq
    std::vector<char> pool_sector;                     // canonical leading flag
    GetValue pool_value;                               // int64/V by id
    MakeElem make_elem;
    bool need_elements;
    std::function<void(EmitContext&)> sink;
    std::vector<int> state_ids_;
    FastPredicates fast;
    std::vector<int64_t> block_max_;
    bool single_block_max_ = false;

    // Leading-coordinate slice for share-nothing workers: branch index 0 is
    // the zero branch of the first coordinate, k >= 1 the k-th leading value.
    int slice_lo = 0;
    int slice_hi = -1;  // -1: whole range

    void run() {
        const auto& sizes = task.bundle.block_sizes;
        int total = 0;
        for (int s : sizes) total += s;
        state_ids_.assign(total, -1);
        block_max_.assign(sizes.size(), 0);
        single_block_max_ = sizes.size() == 1 && task.bundle.degrees[0] == 1 &&
                            task.bundle.norm.kind == heights::ArchNorm::Kind::Max;
        rec_block(0, 0);
    }

    int top_branch_count() const { return static_cast<int>(value_ids[0].size()) + 1; }

    void rec_block(size_t block, int offset) {
        if (block == task.bundle.block_sizes.size()) {
            finish();
            return;
        }
        int size = task.bundle.block_sizes[block];
        rec_coord(block, offset, 0, size, false, 0);
    }

    void rec_coord(size_t block, int offset, int i, int size, bool found, int64_t max_norm) {
        if (i == size) {
            if (!found) return;
            block_max_[block] = max_norm;
            rec_block(block + 1, offset + size);
            return;
        }
        const auto& ids = value_ids[offset + i];
        const bool sliced = block == 0 && i == 0 && slice_hi >= 0;
        // Zero is always allowed (content comes from the other coordinates).
        if (!sliced || (slice_lo <= 0 && 0 < slice_hi)) {
            state_ids_[offset + i] = -1;
            rec_coord(block, offset, i + 1, size, found, max_norm);
        }
        for (int k = 0; k < static_cast<int>(ids.size()); ++k) {
            if (sliced && !(slice_lo <= k + 1 && k + 1 < slice_hi)) continue;
            int id = ids[k];
            if (!found && !pool_sector[id]) continue;  // leading coordinate: sector reps only
            state_ids_[offset + i] = id;
            rec_coord(block, offset, i + 1, size, true, std::max(max_norm, pool_norm[id]));
        }
        state_ids_[offset + i] = -1;
    }

    // Content of one coordinate block, as a unit test over the value pool.
    bool block_content_is_unit(int offset, int size) const {
        if (rational) {
            int64_t g = 0;
            for (int i = 0; i < size; ++i) {
                int id = state_ids_[offset + i];
                if (id >= 0) g = gcd64(g, pool_norm[id]);
            }
            return g == 1;
        }
        IqCtx::V g{0, 0};
        for (int i = 0; i < size; ++i) {
            int id = state_ids_[offset + i];
            if (id >= 0) g = iq->gcd(g, pool_value(id));
        }
        return iq->norm(g) == 1;
    }

    void finish() {
        // Order matters for speed: the (cheap, selective) compiled predicates
        // first, the euclidean content test only on survivors.
        if (fast.usable) {
            std::vector<IqCtx::V> x;
            x.reserve(state_ids_.size());
            for (int id : state_ids_)
                x.push_back(id < 0 ? IqCtx::V{0, 0} : pool_value(id));
            const IqCtx* ctx = rational ? nullptr : iq;
            for (const auto& terms : fast.equations) {
                IqCtx::V v = FastPredicates::eval(terms, ctx, x);
                if (v.a != 0 || v.b != 0) return;
            }
            for (const auto& terms : fast.nonvanishing) {
                IqCtx::V v = FastPredicates::eval(terms, ctx, x);
                if (v.a == 0 && v.b == 0) return;
            }
        }
        {
            int offset = 0;
            for (size_t b = 0; b < task.bundle.block_sizes.size(); ++b) {
                if (!block_content_is_unit(offset, task.bundle.block_sizes[b])) return;
                offset += task.bundle.block_sizes[b];
            }
        }
        QQ hsq_max_norm(1);
        if (!single_block_max_) {
            for (size_t b = 0; b < task.bundle.block_sizes.size(); ++b) {
                QQ f(block_max_[b]);
                hsq_max_norm *= qq_pow(f * f, task.bundle.degrees[b]);
            }
            if (task.bundle.norm.kind == heights::ArchNorm::Kind::Max &&
                hsq_max_norm > task.bound * task.bound)
                return;
        } else {
            // single block, degree one, max norm: cutoff is the pool bound
            hsq_max_norm = QQ(block_max_[0]) * QQ(block_max_[0]);
        }
        EmitContext ec;
        ec.height_sq = hsq_max_norm;
        bool build = need_elements || task.bundle.norm.kind != heights::ArchNorm::Kind::Max ||
                     (!fast.usable && (!task.equations.empty() || !task.nonvanishing.empty()));
        if (build) {
            for (int id : state_ids_) ec.elems.push_back(make_elem(id));
            if (task.bundle.norm.kind != heights::ArchNorm::Kind::Max) {
                auto h = heights::height(ProjectivePoint{task.field, ec.elems}, task.bundle);
                if (!(h.sq() <= task.bound * task.bound)) return;
                ec.height_sq = h.sq();
            }
            if (!fast.usable) {
                for (const auto& eq : task.equations)
                    if (!eq.evaluate(ec.elems).is_zero()) return;
                for (const auto& nz : task.nonvanishing)
                    if (nz.evaluate(ec.elems).is_zero()) return;
            }
        }
        sink(ec);
    }
};

void drive_enumeration(const EnumerationTask& task, bool need_elements,
                       const std::function<void(EmitContext&)>& sink, int slice_lo = 0,
                       int slice_hi = -1) {
    if (task.field == nullptr) fail(ErrorKind::DomainError, "task has no field");
    FieldKind kind = classify(*task.field);
    auto bounds = coordinate_bounds(task.bundle, task.bound, kind.rational);

    if (kind.rational) {
        // Pool: 1..M and negatives; per-coordinate id lists by bound.
        QQ maxb(0);
        for (const QQ& b : bounds) maxb = std::max(maxb, b);
        ZZ mz = maxb.get_num() / maxb.get_den();
        int64_t m = to_i64(mz);
        std::vector<int64_t> pool;
        for (int64_t v = 1; v <= m; ++v) {
            pool.push_back(v);
            pool.push_back(-v);
        }
        std::vector<int64_t> norms;
        std::vector<char> sector;
        for (int64_t v : pool) {
            norms.push_back(std::abs(v));
            sector.push_back(v > 0);
        }
        std::vector<std::vector<int>> ids(bounds.size());
        for (size_t c = 0; c < bounds.size(); ++c)
            for (size_t i = 0; i < pool.size(); ++i)
                if (QQ(norms[i]) <= bounds[c]) ids[c].push_back(static_cast<int>(i));
        const NumberField& F = *task.field;
        CanonicalEnum<std::function<IqCtx::V(int)>, std::function<nf::FieldElement(int)>> e{
            task,
            true,
            nullptr,
            std::move(ids),
            std::move(norms),
            std::move(sector),
            [&pool](int id) { return IqCtx::V{pool[id], 0}; },
            [&pool, &F](int id) {
                return id < 0 ? F.zero() : F.from_rational(QQ(pool[id]));
            },
            need_elements,
            sink,
            {},
            FastPredicates::build(task, true, nullptr, m),
            {},
            false,
            0,
            -1};
        e.slice_lo = slice_lo;
        e.slice_hi = slice_hi;
        e.run();
        return;
    }

    const IqCtx& iq = kind.iq;
    QQ maxb(0);
    for (const QQ& b : bounds) maxb = std::max(maxb, b);
    auto pool = iq.values(maxb);
    std::vector<int64_t> norms;
    std::vector<char> sector;
    for (const auto& v : pool) {
        norms.push_back(iq.norm(v));
        sector.push_back(iq.sector(v));
    }
    std::vector<std::vector<int>> ids(bounds.size());
    for (size_t c = 0; c < bounds.size(); ++c)
        for (size_t i = 0; i < pool.size(); ++i)
            if (QQ(norms[i]) <= bounds[c]) ids[c].push_back(static_cast<int>(i));
    const NumberField& F = *task.field;
    CanonicalEnum<std::function<IqCtx::V(int)>, std::function<nf::FieldElement(int)>> e{
        task,
        false,
        &iq,
        std::move(ids),
        std::move(norms),
        std::move(sector),
        [&pool](int id) { return pool[id]; },
        [&pool, &F](int id) {
            return id < 0 ? F.zero()
                          : F.element({QQ(pool[id].a), QQ(pool[id].b)});
        },
        need_elements,
        sink,
        {},
        FastPredicates::build(task, false, &iq, to_i64(ZZ(maxb.get_num() / maxb.get_den()))),
        {},
        false,
        0,
        -1};
    e.slice_lo = slice_lo;
    e.slice_hi = slice_hi;
    e.run();
}

}  // namespace

namespace {

int top_branch_total(const EnumerationTask& task) {
    FieldKind kind = classify(*task.field);
    auto bounds = coordinate_bounds(task.bundle, task.bound, kind.rational);
    if (kind.rational) {
        ZZ mz = bounds[0].get_num() / bounds[0].get_den();
        return 2 * static_cast<int>(to_i64(mz)) + 1;
    }
    return static_cast<int>(kind.iq.values(bounds[0]).size()) + 1;
}

}  // namespace

EnumerationTask EnumerationTask::projective(const NumberField& F, int n, QQ bound) {
    EnumerationTask t;
    t.field = &F;
    t.bundle = MetrizedBundle::o1(n);
    t.bound = std::move(bound);
    return t;
}

void enum_stream(const EnumerationTask& task,
                 const std::function<void(const ProjectivePoint&, const HeightValue&)>& emit) {
    drive_enumeration(task, true, [&](EmitContext& ec) {
        emit(ProjectivePoint{task.field, ec.elems}, HeightValue(ec.height_sq));
    });
}

int64_t enum_projective_count(const EnumerationTask& task) {
    const int workers = std::max(1, task.workers);
    if (workers == 1) {
        int64_t count = 0;
        drive_enumeration(task, false, [&](EmitContext&) { ++count; });
        return count;
    }
    // Share-nothing leading-coordinate slices; the merged total is
    // independent of the worker count.
    const int branches = top_branch_total(task);
    const int n = std::min(workers, std::max(1, branches));
    std::vector<int64_t> partial(n, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) {
        int lo = static_cast<int>(static_cast<int64_t>(branches) * w / n);
        int hi = static_cast<int>(static_cast<int64_t>(branches) * (w + 1) / n);
        pool.emplace_back([&task, &partial, w, lo, hi]() {
            int64_t local = 0;
            drive_enumeration(task, false, [&local](EmitContext&) { ++local; }, lo, hi);
            partial[w] = local;
        });
    }
    for (auto& th : pool) th.join();
    int64_t total = 0;
    for (int64_t v : partial) total += v;
    return total;
}

CountSeries count_series(const EnumerationTask& task, const QVec& ladder) {
    for (size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i - 1] < ladder[i])) fail(ErrorKind::DomainError, "ladder must increase");
    if (ladder.empty()) fail(ErrorKind::DomainError, "empty ladder");
    CountSeries s;
    s.ladder = ladder;
    s.counts.assign(ladder.size(), 0);
    s.elapsed_ms.assign(ladder.size(), 0);
    EnumerationTask top = task;
    top.bound = ladder.back();
    drive_enumeration(top, false, [&](EmitContext& ec) {
        // First rung whose bound admits this height.
        for (size_t i = 0; i < ladder.size(); ++i)
            if (ec.height_sq <= ladder[i] * ladder[i]) {
                for (size_t j = i; j < ladder.size(); ++j) ++s.counts[j];
                break;
            }
    });
    return s;
}

int64_t count_projective_fast(const NumberField& F, int n, const QQ& bound) {
    if (bound < 1) return 0;
    FieldKind kind = classify(F);
    if (kind.rational) {
        ZZ mz = bound.get_num() / bound.get_den();
        int64_t m = to_i64(mz);
        // Smallest-prime-factor sieve for radicals.
        std::vector<int32_t> spf(m + 1, 0);
        for (int64_t i = 2; i <= m; ++i) {
            if (spf[i]) continue;
            for (int64_t j = i; j <= m; j += i)
                if (!spf[j]) spf[j] = static_cast<int32_t>(i);
        }
        auto box = [&](int64_t d, int e) {
            // #{|b| <= B/d}^e as int128
            __int128 c = 2 * (m / d) + 1;
            __int128 r = 1;
            for (int i = 0; i < e; ++i) r *= c;
            return r;
        };
        __int128 total = 1;  // the point (0:...:0:1)
        for (int dim = 1; dim <= n; ++dim) {
            for (int64_t a = 1; a <= m; ++a) {
                // distinct primes of a
                int64_t x = a;
                int64_t primes[9];
                int np = 0;
                while (x > 1) {
                    int64_t p = spf[x];
                    primes[np++] = p;
                    while (x % p == 0) x /= p;
                }
                for (int mask = 0; mask < (1 << np); ++mask) {
                    int64_t d = 1;
                    int bits = 0;
                    for (int t = 0; t < np; ++t)
                        if (mask & (1 << t)) {
                            d *= primes[t];
                            ++bits;
                        }
                    __int128 term = box(d, dim);
                    total += (bits % 2 == 0) ? term : -term;
                }
            }
        }
        return static_cast<int64_t>(total);
    }

    const IqCtx& iq = kind.iq;
    auto pool = iq.values(bound);
    if (n == 1 || n == 2) {
        // Count primitive tuples and divide by the torsion order.
        std::map<std::pair<int64_t, int64_t>, int64_t> coprime_memo;
        std::vector<IqCtx::V> units;
        for (const auto& v : pool)
            if (iq.is_unit(v)) units.push_back(v);
        auto canonical_key = [&](IqCtx::V g) {
            // Normalize to the sector representative so associates share memo entries.
            for (const auto& u : units) {
                IqCtx::V c = iq.mul(u, g);
                if (iq.sector(c)) return std::make_pair(c.a, c.b);
            }
            fail(ErrorKind::Internal, "no canonical associate");
        };
        auto coprime_count = [&](IqCtx::V g) -> int64_t {
            if (iq.is_unit(g)) return static_cast<int64_t>(pool.size()) + 1;  // any x2, incl 0
            auto key = canonical_key(g);
            auto it = coprime_memo.find(key);
            if (it != coprime_memo.end()) return it->second;
            int64_t c = 0;
            for (const auto& x : pool)
                if (iq.is_unit(iq.gcd(g, x))) ++c;
            coprime_memo.emplace(key, c);
            return c;
        };
        __int128 tuples = 0;
        if (n == 1) {
            // pairs (x0, x1), not both zero, content a unit
            for (const auto& x0 : pool) {
                for (const auto& x1 : pool)
                    if (iq.is_unit(iq.gcd(x0, x1))) ++tuples;
                // x1 = 0: content = (x0)
                if (iq.is_unit(x0)) ++tuples;
            }
            tuples += iq.w;  // x0 = 0, x1 a unit
        } else {
            for (const auto& x0 : pool) {
                for (const auto& x1 : pool) tuples += coprime_count(iq.gcd(x0, x1));
                tuples += coprime_count(x0);  // x1 = 0
            }
            // x0 = 0: pairs (x1, x2) with unit content: the n=1 tuple count.
            __int128 sub = 0;
            for (const auto& x0 : pool) {
                for (const auto& x1 : pool)
                    if (iq.is_unit(iq.gcd(x0, x1))) ++sub;
                if (iq.is_unit(x0)) ++sub;
            }
            sub += iq.w;
            tuples += sub;
        }
        if (tuples % iq.w != 0) fail(ErrorKind::Internal, "unit orbit count mismatch");
        return static_cast<int64_t>(tuples / iq.w);
    }
    // Higher ambient dimensions fall back to the canonical stream.
    return enum_projective_count(EnumerationTask::projective(F, n, bound));
}

int64_t moebius_inverted_count(const NumberField& F, int n, const QQ& bound) {
    if (bound < 1) return 0;
    FieldKind kind = classify(F);
    if (kind.rational) {
        ZZ mz = bound.get_num() / bound.get_den();
        int64_t m = to_i64(mz);
        std::vector<int> mu(m + 1, 1);
        std::vector<char> comp(m + 1, 0);
        std::vector<int64_t> primes;
        for (int64_t i = 2; i <= m; ++i) {  // linear sieve for the Moebius function
            if (!comp[i]) {
                primes.push_back(i);
                mu[i] = -1;
            }
            for (int64_t p : primes) {
                if (i * p > m) break;
                comp[i * p] = 1;
                if (i % p == 0) {
                    mu[i * p] = 0;
                    break;
                }
                mu[i * p] = -mu[i];
            }
        }
        __int128 total = 0;
        for (int64_t d = 1; d <= m; ++d) {
            if (mu[d] == 0) continue;
            __int128 c = 2 * (m / d) + 1;
            __int128 tuples = 1;
            for (int i = 0; i <= n; ++i) tuples *= c;
            total += mu[d] * (tuples - 1);
        }
        if (total % 2 != 0) fail(ErrorKind::Internal, "tuple count parity");
        return static_cast<int64_t>(total / 2);
    }

    const IqCtx& iq = kind.iq;
    const NumberField& field = F;
    ZZ bf = bound.get_num() / bound.get_den();
    int64_t m = to_i64(bf);

    // Lattice point count of an HNF ideal inside the norm-<=bound disc (zero included).
    auto lattice_count = [&](const ZMat& hnf) -> int64_t {
        int64_t h00 = to_i64(hnf[0][0]), h01 = to_i64(hnf[0][1]), h11 = to_i64(hnf[1][1]);
        int64_t D = 4 * iq.a0 - iq.a1 * iq.a1;
        int64_t count = 0;
        // x = s*h00 ranges over multiples; 4*a0*N = (2 a0 y - a1 x)^2 + D x^2 ... use
        // the (x fixed, y from the quadratic) decomposition instead:
        // N(x, y) <= m  <=>  (2 a0 y - a1 x)^2 <= 4 a0 m - (4 a0 - a1^2) x^2.
        int64_t xcap = static_cast<int64_t>(std::sqrt(4.0 * iq.a0 * m / D)) + 2;
        for (int64_t s = -xcap / h00 - 1; s <= xcap / h00 + 1; ++s) {
            int64_t x = s * h00;
            ZZ rhs = ZZ(4) * iq.a0 * m - ZZ(D) * x * x;
            if (rhs < 0) continue;
            int64_t r = to_i64(isqrt(rhs));
            // 2 a0 y in [a1 x - r, a1 x + r]
            int64_t ylo, yhi;
            {
                int64_t num = iq.a1 * x - r;
                ylo = static_cast<int64_t>(std::ceil(num / (2.0 * iq.a0)));
                while (2 * iq.a0 * ylo - iq.a1 * x < -r) ++ylo;
                while (2 * iq.a0 * (ylo - 1) - iq.a1 * x >= -r) --ylo;
            }
            {
                int64_t num = iq.a1 * x + r;
                yhi = static_cast<int64_t>(std::floor(num / (2.0 * iq.a0)));
                while (2 * iq.a0 * yhi - iq.a1 * x > r) --yhi;
                while (2 * iq.a0 * (yhi + 1) - iq.a1 * x <= r) ++yhi;
            }
            // y = s*h01 + k*h11
            int64_t base = s * h01;
            int64_t klo = static_cast<int64_t>(std::ceil((ylo - base) / static_cast<double>(h11)));
            while (base + klo * h11 < ylo) ++klo;
            while (base + (klo - 1) * h11 >= ylo) --klo;
            int64_t khi = static_cast<int64_t>(std::floor((yhi - base) / static_cast<double>(h11)));
            while (base + khi * h11 > yhi) --khi;
            while (base + (khi + 1) * h11 <= yhi) ++khi;
            if (khi >= klo) count += khi - klo + 1;
        }
        return count;
    };

    // Squarefree ideals with norm <= m, assembled from prime ideals above p <= m.
    struct PrimeIdeal {
        ZMat hnf;
        int64_t norm;
    };
    std::vector<PrimeIdeal> primes;
    {
        std::vector<char> sieve(m + 1, 1);
        for (int64_t p = 2; p <= m; ++p) {
            if (!sieve[p]) continue;
            for (int64_t q = 2 * p; q <= m; q += p) sieve[q] = 0;
            for (const auto& place : nf::factor_rational_prime(p, field)) {
                ZZ nrm = place.residue_cardinality();
                if (nrm > m) continue;
                primes.push_back({place.prime_hnf, to_i64(nrm)});
            }
        }
    }
    std::sort(primes.begin(), primes.end(),
              [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.norm < b.norm; });

    __int128 total = 0;
    // Depth-first over squarefree products with norm cap.
    std::function<void(size_t, const ZMat&, int64_t, int)> rec = [&](size_t next, const ZMat& hnf,
                                                                     int64_t nrm, int sign) {
        int64_t d = lattice_count(hnf);
        __int128 tuples = 1;
        for (int i = 0; i <= n; ++i) tuples *= d;
        total += sign * (tuples - 1);
        for (size_t i = next; i < primes.size(); ++i) {
            if (nrm > m / primes[i].norm) break;
            nf::IdealZ a{&field, hnf};
            nf::IdealZ b{&field, primes[i].hnf};
            nf::IdealZ prod = nf::ideal_mul(a, b);
            rec(i + 1, prod.hnf, nrm * primes[i].norm, -sign);
        }
    };
    ZMat unit = identity_mat(2);
    rec(0, unit, 1, 1);
    if (total % iq.w != 0) fail(ErrorKind::Internal, "unit orbit count mismatch");
    return static_cast<int64_t>(total / iq.w);
}

RestrictionCheckReport restriction_count_check(const NumberField& F,
                                               const weilres::CompiledRestriction& compiled,
                                               const QVec& ladder, int machinery_stride) {
    if (compiled.ext.absolute != &F)
        fail(ErrorKind::DomainError, "compiled restriction does not match the field");
    if (compiled.source.ambient.kind != weilres::Ambient::Kind::Projective ||
        compiled.source.variables.size() != 2 || !compiled.source.polynomials.empty())
        fail(ErrorKind::DomainError, "restriction check implemented for X = P^1");
    IqCtx iq = IqCtx::from(F);
    const QQ& bmax = ladder.back();
    auto m = MetrizedBundle::o1(1);

    RestrictionCheckReport report;
    for (const QQ& b : ladder) report.rungs.push_back({b, 0, 0, 0, 0});

    // F-side: canonical stream with the full point-map verification per point.
    EnumerationTask task = EnumerationTask::projective(F, 1, bmax);
    enum_stream(task, [&](const ProjectivePoint& p, const HeightValue& h) {
        auto [chart, scaled] = weilres::chart_for_point(compiled, p.coords);
        auto y = weilres::point_down(compiled, chart, scaled);
        HeightValue through = heights::restriction_height(compiled, chart, y, m);
        if (through.sq() != h.sq())
            fail(ErrorKind::MismatchFound, "restriction height mismatch at a direct point");
        for (size_t i = 0; i < ladder.size(); ++i)
            if (h.sq() <= ladder[i] * ladder[i]) {
                for (size_t j = i; j < ladder.size(); ++j) {
                    ++report.rungs[j].count_direct;
                    ++report.rungs[j].heights_checked;
                }
                break;
            }
    });

    // E-side: sweep the compiled coordinates over the derived box.  Tuples are
    // grouped by unit orbits; a deterministic subsample goes through the full
    // machinery.
    auto pool = iq.values(bmax);
    std::vector<IqCtx::V> vals = pool;
    vals.push_back({0, 0});
    ZZ bf = bmax.get_num() / bmax.get_den();
    int64_t mcap = to_i64(bf);
    int64_t seen = 0;
    std::vector<__int128> orbit_tuples(ladder.size(), 0);
    for (const auto& v0 : vals) {
        for (const auto& v1 : vals) {
            if (iq.is_zero(v0) && iq.is_zero(v1)) continue;
            IqCtx::V g = iq.gcd(v0, v1);
            if (!iq.is_unit(g)) continue;
            int64_t hnorm = std::max(iq.norm(v0), iq.norm(v1));
            if (hnorm > mcap) continue;
            for (size_t i = 0; i < ladder.size(); ++i) {
                ZZ cap = ladder[i].get_num() / ladder[i].get_den();
                if (hnorm <= to_i64(cap)) {
                    for (size_t j = i; j < ladder.size(); ++j) ++orbit_tuples[j];
                    break;
                }
            }
            if (machinery_stride > 0 && (++seen % machinery_stride) == 0) {
                std::vector<nf::FieldElement> x = {F.element({QQ(v0.a), QQ(v0.b)}),
                                                   F.element({QQ(v1.a), QQ(v1.b)})};
                auto [chart, scaled] = weilres::chart_for_point(compiled, x);
                auto y = weilres::point_down(compiled, chart, scaled);
                HeightValue through = heights::restriction_height(compiled, chart, y, m);
                if (!(through.sq() == QQ(hnorm) * QQ(hnorm)))
                    fail(ErrorKind::MismatchFound, "machinery height mismatch on the swept side");
                for (size_t i = 0; i < ladder.size(); ++i)
                    if (QQ(hnorm) <= ladder[i]) ++report.rungs[i].machinery_samples;
            }
        }
    }
    for (size_t i = 0; i < ladder.size(); ++i) {
        if (orbit_tuples[i] % iq.w != 0)
            fail(ErrorKind::MismatchFound, "unit orbits do not divide the swept count");
        report.rungs[i].count_swept = static_cast<int64_t>(orbit_tuples[i] / iq.w);
    }
    report.ok = true;
    for (const auto& rung : report.rungs)
        if (rung.count_direct != rung.count_swept) {
            report.ok = false;
            std::ostringstream msg;
            msg << "counting functions differ at B = " << format_rational(rung.bound) << ": "
                << rung.count_direct << " direct vs " << rung.count_swept << " swept";
            fail(ErrorKind::MismatchFound, msg.str());
        }
    return report;
}

std::string series_csv(const CountSeries& series, bool with_timings) {
    std::ostringstream out;
    out << "B,count,elapsed_ms\n";
    for (size_t i = 0; i < series.ladder.size(); ++i)
        out << format_rational(series.ladder[i]) << "," << series.counts[i] << ","
            << (with_timings ? series.elapsed_ms[i] : 0) << "\n";
    return out.str();
}

}  // namespace heightlab::enumerate
