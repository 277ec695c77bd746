#include "heightlab/interval.hpp"

#include <algorithm>
#include <utility>

namespace heightlab {

RI::RI(long prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RI::RI(const RI& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RI::RI(RI&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RI& RI::operator=(RI o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RI::~RI() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RI RI::from_q(const QQ& q, long prec) {
    RI r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RI RI::from_d(double x, long prec) {
    RI r(prec);
    mpfr_set_d(r.lo_, x, MPFR_RNDD);
    mpfr_set_d(r.hi_, x, MPFR_RNDU);
    return r;
}

RI RI::exact_zero(long prec) { return RI(prec); }

RI RI::add(const RI& o) const {
    RI r(prec_);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

RI RI::sub(const RI& o) const {
    RI r(prec_);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

RI RI::neg() const {
    RI r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

RI RI::mul(const RI& o) const {
    RI r(prec_);
    mpfr_t c, best_lo, best_hi;
    mpfr_init2(c, prec_);
    mpfr_init2(best_lo, prec_);
    mpfr_init2(best_hi, prec_);
    bool first = true;
    const mpfr_srcptr mine[2] = {lo_, hi_};
    const mpfr_srcptr theirs[2] = {o.lo_, o.hi_};
    for (auto a : mine)
        for (auto b : theirs) {
            mpfr_mul(c, a, b, MPFR_RNDD);
            if (first || mpfr_cmp(c, best_lo) < 0) mpfr_set(best_lo, c, MPFR_RNDD);
            mpfr_mul(c, a, b, MPFR_RNDU);
            if (first || mpfr_cmp(c, best_hi) > 0) mpfr_set(best_hi, c, MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.lo_, best_lo, MPFR_RNDD);
    mpfr_set(r.hi_, best_hi, MPFR_RNDU);
    mpfr_clear(c);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
    return r;
}

RI RI::sqr() const {
    RI r = mul(*this);
    if (contains_zero()) mpfr_set_zero(r.lo_, 1);
    return r;
}

RI RI::widened(double pad) const {
    RI r(prec_);
    mpfr_sub_d(r.lo_, lo_, pad, MPFR_RNDD);
    mpfr_add_d(r.hi_, hi_, pad, MPFR_RNDU);
    return r;
}

RI RI::sqrt_nonneg() const {
    RI r(prec_);
    if (mpfr_sgn(lo_) < 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    if (mpfr_sgn(hi_) < 0) fail(ErrorKind::DomainError, "sqrt of negative interval");
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RI RI::log_pos() const {
    if (mpfr_sgn(lo_) <= 0) fail(ErrorKind::DomainError, "log of non-positive interval");
    RI r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RI RI::abs() const {
    RI r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return neg();
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

bool RI::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool RI::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RI::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool RI::certainly_less(const RI& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

bool RI::certainly_less_q(const QQ& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0; }
bool RI::certainly_greater_q(const QQ& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }

double RI::mid() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double RI::width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double RI::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RI::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string RI::str() const {
    char buf[64];
    snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo_d(), hi_d());
    return buf;
}

CI CI::from_q(const QQ& re, const QQ& im, long prec) {
    return CI(RI::from_q(re, prec), RI::from_q(im, prec));
}

CI CI::add(const CI& o) const { return CI(re.add(o.re), im.add(o.im)); }
CI CI::sub(const CI& o) const { return CI(re.sub(o.re), im.sub(o.im)); }
CI CI::neg() const { return CI(re.neg(), im.neg()); }

CI CI::mul(const CI& o) const {
    return CI(re.mul(o.re).sub(im.mul(o.im)), re.mul(o.im).add(im.mul(o.re)));
}

CI CI::div(const CI& o) const {
    RI den = o.re.sqr().add(o.im.sqr());
    if (den.contains_zero()) fail(ErrorKind::DomainError, "complex interval division by ~0");
    // 1/den as an interval via endpoint reciprocals.
    RI inv(den.prec());
    mpfr_ui_div(inv.lo_, 1, den.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, den.lo_, MPFR_RNDU);
    CI num = mul(CI(o.re, o.im.neg()));
    return CI(num.re.mul(inv), num.im.mul(inv));
}

RI CI::abs2() const { return re.sqr().add(im.sqr()); }
RI CI::abs() const { return abs2().sqrt_nonneg(); }

bool CI::contains(const CI& o) const {
    return mpfr_cmp(re.lo_, o.re.lo_) <= 0 && mpfr_cmp(re.hi_, o.re.hi_) >= 0 &&
           mpfr_cmp(im.lo_, o.im.lo_) <= 0 && mpfr_cmp(im.hi_, o.im.hi_) >= 0;
}

bool CI::certainly_distinct(const CI& o) const {
    return re.certainly_less(o.re) || o.re.certainly_less(re) || im.certainly_less(o.im) ||
           o.im.certainly_less(im);
}

}  // namespace heightlab
