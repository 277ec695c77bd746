#include "heightlab/heights.hpp"

#include <algorithm>
#include <cmath>

namespace heightlab::heights {

namespace {

void check_field_supported(const NumberField& F) {
    if (F.is_rationals() || F.is_imaginary_quadratic()) return;
    fail(ErrorKind::UnsupportedField,
         "exact heights implemented for Q and imaginary quadratic fields");
}

// Square of the archimedean factor of one coordinate block, for integral
// coordinates.  Real place contributes |x|, the complex place |sigma x|^2;
// with a single archimedean place both cases stay rational after squaring.
QQ block_arch_sq(const NumberField& F, const std::vector<FieldElement>& block,
                 const ArchNorm& norm, size_t block_index) {
    std::vector<FieldElement> coords = block;
    if (norm.kind == ArchNorm::Kind::Matrix) {
        if (block_index >= norm.block_twists.size())
            fail(ErrorKind::DomainError, "missing twist matrix for block");
        const QMat& m = norm.block_twists[block_index];
        if (m.size() != block.size()) fail(ErrorKind::DomainError, "twist matrix size");
        if (det_rational(m) == 0) fail(ErrorKind::DomainError, "twist matrix must be invertible");
        std::vector<FieldElement> twisted;
        for (size_t i = 0; i < m.size(); ++i) {
            FieldElement acc = F.zero();
            for (size_t j = 0; j < block.size(); ++j) acc = acc + m[i][j] * block[j];
            twisted.push_back(acc);
        }
        coords = std::move(twisted);
    }

    if (F.is_rationals()) {
        if (norm.kind == ArchNorm::Kind::Euclidean) {
            QQ s(0);
            for (const auto& c : coords) s += c.coords[0] * c.coords[0];
            return s;
        }
        QQ best(0);
        for (const auto& c : coords) best = std::max(best, QQ(abs(c.coords[0])));
        return best * best;
    }
    // Imaginary quadratic: |sigma x|^2 = N(x) exactly.
    if (norm.kind == ArchNorm::Kind::Euclidean) {
        QQ s(0);
        for (const auto& c : coords) s += nf::norm(c);
        return s * s;
    }
    QQ best(0);
    for (const auto& c : coords) best = std::max(best, nf::norm(c));
    return best * best;
}

}  // namespace

MetrizedBundle MetrizedBundle::o1(int n, ArchNorm norm) {
    return MetrizedBundle{{n + 1}, {1}, std::move(norm)};
}

MetrizedBundle MetrizedBundle::multi(std::vector<int> dims, std::vector<long> degrees,
                                     ArchNorm norm) {
    MetrizedBundle m;
    for (int n : dims) m.block_sizes.push_back(n + 1);
    m.degrees = std::move(degrees);
    m.norm = std::move(norm);
    if (m.block_sizes.size() != m.degrees.size())
        fail(ErrorKind::DomainError, "one degree per factor");
    return m;
}

MetrizedBundle MetrizedBundle::tensor(const MetrizedBundle& o) const {
    if (block_sizes != o.block_sizes) fail(ErrorKind::DomainError, "tensor needs a shared ambient");
    MetrizedBundle m = *this;
    for (size_t i = 0; i < degrees.size(); ++i) m.degrees[i] += o.degrees[i];
    return m;
}

MetrizedBundle MetrizedBundle::dual() const {
    MetrizedBundle m = *this;
    for (long& d : m.degrees) d = -d;
    return m;
}

int MetrizedBundle::total_coords() const {
    int t = 0;
    for (int s : block_sizes) t += s;
    return t;
}

ProjectivePoint canonicalize(const ProjectivePoint& x, const std::vector<int>& block_sizes) {
    const NumberField& F = *x.field;
    check_field_supported(F);
    if (!F.is_rationals() && F.class_number() != 1)
        fail(ErrorKind::UnsupportedField, "canonical representatives need class number 1");
    ProjectivePoint out{x.field, {}};
    size_t pos = 0;
    for (int size : block_sizes) {
        if (pos + size > x.coords.size()) fail(ErrorKind::DomainError, "block sizes exceed coords");
        std::vector<FieldElement> block(x.coords.begin() + pos, x.coords.begin() + pos + size);
        pos += size;
        // Clear denominators.
        ZZ den(1);
        for (const auto& c : block)
            for (const QQ& q : c.coords) {
                ZZ l;
                mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
                den = l;
            }
        for (auto& c : block) c = QQ(den) * c;
        // Divide by the content generator.
        FieldElement g = F.zero();
        bool any = false;
        for (const auto& c : block) {
            if (c.is_zero()) continue;
            g = any ? nf::gcd_euclidean(g, c) : c;
            any = true;
        }
        if (!any) fail(ErrorKind::AllZero, "zero coordinate block");
        FieldElement ginv = inverse(g);
        for (auto& c : block) c = c * ginv;
        // Fix the leading unit.
        for (const auto& c : block)
            if (!c.is_zero()) {
                FieldElement u = nf::sector_canonical_unit(c);
                for (auto& b : block) b = u * b;
                break;
            }
        for (auto& c : block) out.coords.push_back(std::move(c));
    }
    if (pos != x.coords.size()) fail(ErrorKind::DomainError, "block sizes exceed coords");
    return out;
}

HeightValue height(const ProjectivePoint& x, const MetrizedBundle& m) {
    const NumberField& F = *x.field;
    check_field_supported(F);
    if (static_cast<int>(x.coords.size()) != m.total_coords())
        fail(ErrorKind::DomainError, "coordinate count does not match the ambient");
    QQ h2(1);
    size_t pos = 0;
    for (size_t b = 0; b < m.block_sizes.size(); ++b) {
        std::vector<FieldElement> block(x.coords.begin() + pos,
                                        x.coords.begin() + pos + m.block_sizes[b]);
        pos += m.block_sizes[b];
        // Scale to integral coordinates; heights are scaling-invariant.
        ZZ den(1);
        bool any = false;
        for (const auto& c : block) {
            any = any || !c.is_zero();
            for (const QQ& q : c.coords) {
                ZZ l;
                mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
                den = l;
            }
        }
        if (!any) fail(ErrorKind::AllZero, "zero coordinate block");
        std::vector<FieldElement> integral;
        for (const auto& c : block) integral.push_back(QQ(den) * c);
        ZZ content = nf::content_ideal_norm(integral);
        QQ arch2 = block_arch_sq(F, integral, m.norm, b);
        QQ block_h2 = arch2 / QQ(content * content);
        h2 *= qq_pow(block_h2, m.degrees[b]);
    }
    return HeightValue(h2);
}

HeightValue pullback_height(const PolyMap& f, const ProjectivePoint& y, const MetrizedBundle& m) {
    if (f.components.empty()) fail(ErrorKind::DomainError, "empty map");
    std::vector<FieldElement> image;
    bool all_zero = true;
    for (const auto& comp : f.components) {
        FieldElement v = comp.evaluate(y.coords);
        all_zero = all_zero && v.is_zero();
        image.push_back(std::move(v));
    }
    if (all_zero) fail(ErrorKind::IndeterminacyPoint, "map undefined at this point");
    return height(ProjectivePoint{y.field, std::move(image)}, m);
}

AlgebraReport height_algebra_check(const ProjectivePoint& x, const MetrizedBundle& m1,
                                   const MetrizedBundle& m2) {
    AlgebraReport r;
    r.h1 = height(x, m1);
    r.h2 = height(x, m2);
    r.tensor_value = height(x, m1.tensor(m2));
    r.dual_value = height(x, m1.dual());
    r.tensor_multiplicative = r.tensor_value.sq() == r.h1.sq() * r.h2.sq();
    r.dual_inverts = r.dual_value.sq() * r.h1.sq() == 1;
    return r;
}

HeightValue restriction_height(const weilres::CompiledRestriction& c, size_t chart,
                               const std::vector<FieldElement>& y, const MetrizedBundle& m) {
    std::vector<FieldElement> x = weilres::point_up(c, chart, y);
    return height(ProjectivePoint{c.ext.absolute, std::move(x)}, m);
}

double ambient_height_ratio(const weilres::ResP1Quadric& q, const std::vector<FieldElement>& x01,
                            const MetrizedBundle& m) {
    std::vector<FieldElement> u = q.embed(x01);
    HeightValue ambient = height(ProjectivePoint{q.ext.base, u}, MetrizedBundle::o1(3));
    HeightValue restricted = height(ProjectivePoint{q.ext.absolute, x01}, m);
    return 0.5 * (std::log(ambient.sq().get_d()) - std::log(restricted.sq().get_d()));
}

}  // namespace heightlab::heights
