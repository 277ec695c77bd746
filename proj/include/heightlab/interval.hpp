#ifndef HEIGHTLAB_INTERVAL_HPP
#define HEIGHTLAB_INTERVAL_HPP

#include <mpfr.h>

#include <string>

#include "heightlab/rat.hpp"

namespace heightlab {

// Real interval with mpfr endpoints and outward rounding.  Just enough
// operations for certified embeddings and archimedean absolute values.
class RI {
  public:
    explicit RI(long prec = 128);
    RI(const RI& o);
    RI(RI&& o) noexcept;
    RI& operator=(RI o);
    ~RI();

    long prec() const { return prec_; }

    static RI from_q(const QQ& q, long prec);
    static RI from_d(double x, long prec);
    static RI exact_zero(long prec);

    RI add(const RI& o) const;
    RI sub(const RI& o) const;
    RI mul(const RI& o) const;
    RI neg() const;
    RI sqr() const;
    // [lo - pad, hi + pad] for pad >= 0.
    RI widened(double pad) const;
    // Square root; lower endpoint clamped at 0 when the interval dips below.
    RI sqrt_nonneg() const;
    // Natural log; requires a strictly positive interval.
    RI log_pos() const;
    RI abs() const;

    bool contains_zero() const;
    bool is_positive() const;  // lo > 0
    bool is_negative() const;  // hi < 0
    // Certified disjointness: true when max(this) < min(other).
    bool certainly_less(const RI& o) const;
    bool certainly_less_q(const QQ& q) const;
    bool certainly_greater_q(const QQ& q) const;

    double mid() const;
    double width() const;
    double lo_d() const;
    double hi_d() const;

    std::string str() const;

  private:
    friend class CI;
    long prec_;
    mpfr_t lo_, hi_;
};

// Rectangular complex interval.
class CI {
  public:
    explicit CI(long prec = 128) : re(prec), im(prec) {}
    CI(RI r, RI i) : re(std::move(r)), im(std::move(i)) {}

    static CI from_q(const QQ& re, const QQ& im, long prec);

    CI add(const CI& o) const;
    CI sub(const CI& o) const;
    CI mul(const CI& o) const;
    CI div(const CI& o) const;
    CI neg() const;
    RI abs2() const;
    RI abs() const;
    bool contains(const CI& o) const;
    // True when the rectangles are disjoint.
    bool certainly_distinct(const CI& o) const;

    RI re, im;
};

}  // namespace heightlab

#endif
