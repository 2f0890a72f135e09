#include "primdiv/realball.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace primdiv {

namespace {

constexpr Precision kRadPrec = 30;

/* RAII scratch variable. */
struct scratch {
    mpfr_t v;
    explicit scratch(Precision prec) { mpfr_init2(v, prec); }
    ~scratch() { mpfr_clear(v); }
    scratch(scratch const &) = delete;
    scratch & operator=(scratch const &) = delete;
    operator mpfr_ptr() { return v; }
    operator mpfr_srcptr() const { return v; }
};

/* |x| rounded up (resp. down) to the radius precision. */
void abs_up(mpfr_ptr out, mpfr_srcptr x)
{
    mpfr_abs(out, x, MPFR_RNDU);
}

void abs_down(mpfr_ptr out, mpfr_srcptr x)
{
    mpfr_abs(out, x, MPFR_RNDD);
}

} // namespace

RealBall::RealBall(raw_tag, Precision prec)
{
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
}

RealBall::RealBall(Precision prec)
    : RealBall(raw_tag{}, prec)
{
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(long value, Precision prec)
    : RealBall(raw_tag{}, prec)
{
    mpfr_set_zero(rad_, 1);
    add_rounding_error(mpfr_set_si(mid_, value, MPFR_RNDN));
}

RealBall::RealBall(RealBall const & other)
    : RealBall(raw_tag{}, other.precision())
{
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall && other) noexcept
    : RealBall(raw_tag{}, other.precision())
{
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
}

RealBall & RealBall::operator=(RealBall const & other)
{
    if (this != &other) {
        mpfr_set_prec(mid_, other.precision());
        mpfr_set(mid_, other.mid_, MPFR_RNDN);
        mpfr_set(rad_, other.rad_, MPFR_RNDU);
    }
    return *this;
}

RealBall & RealBall::operator=(RealBall && other) noexcept
{
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
    return *this;
}

RealBall::~RealBall()
{
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void RealBall::add_rounding_error(int ternary)
{
    if (ternary == 0 || mpfr_zero_p(mid_))
        return;
    // RNDN error is at most half an ulp; one full ulp is recorded.
    scratch ulp(kRadPrec);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(mid_) - precision(), MPFR_RNDU);
    mpfr_add(rad_, rad_, ulp, MPFR_RNDU);
}

void RealBall::lower_bound(mpfr_t out) const
{
    mpfr_sub(out, mid_, rad_, MPFR_RNDD);
}

void RealBall::upper_bound(mpfr_t out) const
{
    mpfr_add(out, mid_, rad_, MPFR_RNDU);
}

RealBall RealBall::from_mpz(mpz_class const & value, Precision prec)
{
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_set_z(r.mid_, value.get_mpz_t(), MPFR_RNDN));
    return r;
}

RealBall RealBall::from_u64(std::uint64_t value, Precision prec)
{
    static_assert(sizeof(unsigned long) >= sizeof(std::uint64_t));
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_set_ui(r.mid_, static_cast<unsigned long>(value), MPFR_RNDN));
    return r;
}

RealBall RealBall::rational(mpz_class const & num, mpz_class const & den, Precision prec)
{
    if (den == 0)
        throw std::invalid_argument("RealBall::rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN));
    return r;
}

RealBall RealBall::from_double(double d, Precision prec)
{
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_set_d(r.mid_, d, MPFR_RNDN));
    return r;
}

RealBall RealBall::from_mid_rad(double mid, double rad, Precision prec)
{
    RealBall r = from_double(mid, prec);
    return r.widen(rad);
}

RealBall RealBall::pi(Precision prec)
{
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_const_pi(r.mid_, MPFR_RNDN));
    return r;
}

RealBall RealBall::log2_const(Precision prec)
{
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_const_log2(r.mid_, MPFR_RNDN));
    return r;
}

RealBall RealBall::euler_gamma(Precision prec)
{
    RealBall r(raw_tag{}, prec);
    mpfr_set_zero(r.rad_, 1);
    r.add_rounding_error(mpfr_const_euler(r.mid_, MPFR_RNDN));
    return r;
}

RealBall RealBall::with_precision(Precision prec) const
{
    RealBall r(raw_tag{}, prec);
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    r.add_rounding_error(mpfr_set(r.mid_, mid_, MPFR_RNDN));
    return r;
}

double RealBall::mid_double() const
{
    return mpfr_get_d(mid_, MPFR_RNDN);
}

double RealBall::rad_double() const
{
    return mpfr_get_d(rad_, MPFR_RNDU);
}

double RealBall::lower_double() const
{
    scratch t(precision() + 32);
    lower_bound(t);
    return mpfr_get_d(t, MPFR_RNDD);
}

double RealBall::upper_double() const
{
    scratch t(precision() + 32);
    upper_bound(t);
    return mpfr_get_d(t, MPFR_RNDU);
}

std::string RealBall::mid_string(int digits) const
{
    char * buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rg", std::max(1, digits), mid_) < 0)
        throw std::runtime_error("mpfr_asprintf failed");
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string RealBall::to_string(int digits) const
{
    char * buf = nullptr;
    if (mpfr_asprintf(&buf, "[%.*Rg +/- %.3Rg]", std::max(1, digits), mid_, rad_) < 0)
        throw std::runtime_error("mpfr_asprintf failed");
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

long RealBall::trunc_mid() const
{
    return mpfr_get_si(mid_, MPFR_RNDZ);
}

long RealBall::round_mid() const
{
    return mpfr_get_si(mid_, MPFR_RNDNA);
}

double RealBall::trunc_mid_1dp() const
{
    scratch t(precision() + 8);
    mpfr_mul_ui(t, mid_, 10, MPFR_RNDZ);
    long tenths = mpfr_get_si(t, MPFR_RNDZ);
    return static_cast<double>(tenths) / 10.0;
}

namespace {

mpq_class exact_rational(mpfr_srcptr x)
{
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class r(m);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

} // namespace

mpq_class RealBall::lower_rational() const
{
    scratch t(precision() + 32);
    lower_bound(t);
    return exact_rational(t);
}

mpq_class RealBall::upper_rational() const
{
    scratch t(precision() + 32);
    upper_bound(t);
    return exact_rational(t);
}

std::optional<mpz_class> RealBall::certain_ceil() const
{
    scratch lo(precision() + 32), hi(precision() + 32);
    lower_bound(lo);
    upper_bound(hi);
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo, MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi, MPFR_RNDU);
    if (a != b)
        return std::nullopt;
    return a;
}

std::optional<mpz_class> RealBall::certain_floor() const
{
    scratch lo(precision() + 32), hi(precision() + 32);
    lower_bound(lo);
    upper_bound(hi);
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo, MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi, MPFR_RNDD);
    if (a != b)
        return std::nullopt;
    return a;
}

bool RealBall::contains_zero() const
{
    return mpfr_cmpabs(mid_, rad_) <= 0;
}

bool RealBall::contains(mpz_class const & value) const
{
    scratch d(kRadPrec);
    scratch v(std::max<Precision>(precision(), mpz_sizeinbase(value.get_mpz_t(), 2) + 2));
    mpfr_set_z(v, value.get_mpz_t(), MPFR_RNDN);
    mpfr_sub(d, v, mid_, MPFR_RNDA);
    return mpfr_cmpabs(d, rad_) <= 0;
}

bool RealBall::contains(RealBall const & inner) const
{
    Precision p = std::max(precision(), inner.precision()) + 32;
    scratch lo(p), hi(p), ilo(p), ihi(p);
    mpfr_sub(lo, mid_, rad_, MPFR_RNDU);
    mpfr_add(hi, mid_, rad_, MPFR_RNDD);
    inner.lower_bound(ilo);
    inner.upper_bound(ihi);
    return mpfr_lessequal_p(lo, ilo) && mpfr_lessequal_p(ihi, hi);
}

bool RealBall::overlaps(RealBall const & other) const
{
    return compare(*this, other) == Comparison::Undecidable;
}

bool RealBall::is_positive() const
{
    return mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

bool RealBall::is_negative() const
{
    return mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

bool RealBall::is_exact() const
{
    return mpfr_zero_p(rad_);
}

RealBall & RealBall::widen(double extra)
{
    if (extra < 0)
        throw std::invalid_argument("RealBall::widen: negative extra radius");
    mpfr_add_d(rad_, rad_, extra, MPFR_RNDU);
    return *this;
}

RealBall & RealBall::operator+=(RealBall const & b)
{
    if (b.precision() > precision())
        mpfr_prec_round(mid_, b.precision(), MPFR_RNDN);
    mpfr_add(rad_, rad_, b.rad_, MPFR_RNDU);
    add_rounding_error(mpfr_add(mid_, mid_, b.mid_, MPFR_RNDN));
    return *this;
}

RealBall & RealBall::operator-=(RealBall const & b)
{
    if (b.precision() > precision())
        mpfr_prec_round(mid_, b.precision(), MPFR_RNDN);
    mpfr_add(rad_, rad_, b.rad_, MPFR_RNDU);
    add_rounding_error(mpfr_sub(mid_, mid_, b.mid_, MPFR_RNDN));
    return *this;
}

RealBall & RealBall::operator*=(RealBall const & b)
{
    scratch am(kRadPrec), bm(kRadPrec), t(kRadPrec), r(kRadPrec);
    abs_up(am, mid_);
    abs_up(bm, b.mid_);
    mpfr_mul(r, am, b.rad_, MPFR_RNDU);
    mpfr_mul(t, bm, rad_, MPFR_RNDU);
    mpfr_add(r, r, t, MPFR_RNDU);
    mpfr_mul(t, rad_, b.rad_, MPFR_RNDU);
    mpfr_add(rad_, r, t, MPFR_RNDU);
    if (b.precision() > precision())
        mpfr_prec_round(mid_, b.precision(), MPFR_RNDN);
    add_rounding_error(mpfr_mul(mid_, mid_, b.mid_, MPFR_RNDN));
    return *this;
}

RealBall & RealBall::operator/=(RealBall const & b)
{
    if (b.contains_zero())
        throw UndecidableError("division by a ball containing zero");
    scratch am(kRadPrec), bm_up(kRadPrec), bm_down(kRadPrec), num(kRadPrec), den(kRadPrec), t(kRadPrec);
    abs_up(am, mid_);
    abs_up(bm_up, b.mid_);
    abs_down(bm_down, b.mid_);
    mpfr_mul(num, am, b.rad_, MPFR_RNDU);
    mpfr_mul(t, bm_up, rad_, MPFR_RNDU);
    mpfr_add(num, num, t, MPFR_RNDU);
    mpfr_sub(den, bm_down, b.rad_, MPFR_RNDD);
    if (mpfr_sgn(den.v) <= 0)
        throw UndecidableError("division by a ball too close to zero");
    mpfr_mul(den, den, bm_down, MPFR_RNDD);
    mpfr_div(rad_, num, den, MPFR_RNDU);
    if (b.precision() > precision())
        mpfr_prec_round(mid_, b.precision(), MPFR_RNDN);
    add_rounding_error(mpfr_div(mid_, mid_, b.mid_, MPFR_RNDN));
    return *this;
}

RealBall & RealBall::operator*=(long k)
{
    mpfr_mul_ui(rad_, rad_, static_cast<unsigned long>(std::labs(k)), MPFR_RNDU);
    add_rounding_error(mpfr_mul_si(mid_, mid_, k, MPFR_RNDN));
    return *this;
}

RealBall & RealBall::operator/=(long k)
{
    if (k == 0)
        throw std::domain_error("RealBall: division by integer zero");
    mpfr_div_ui(rad_, rad_, static_cast<unsigned long>(std::labs(k)), MPFR_RNDU);
    add_rounding_error(mpfr_div_si(mid_, mid_, k, MPFR_RNDN));
    return *this;
}

RealBall operator-(RealBall a)
{
    mpfr_neg(a.mid_, a.mid_, MPFR_RNDN);
    return a;
}

RealBall abs(RealBall a)
{
    mpfr_abs(a.mid_, a.mid_, MPFR_RNDN);
    return a;
}

RealBall sqr(RealBall const & a)
{
    RealBall r(RealBall::raw_tag{}, a.precision());
    scratch am(kRadPrec), t(kRadPrec);
    abs_up(am, a.mid_);
    mpfr_mul(t, am, a.rad_, MPFR_RNDU);
    mpfr_mul_2ui(t, t, 1, MPFR_RNDU);
    mpfr_sqr(r.rad_, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
    r.add_rounding_error(mpfr_sqr(r.mid_, a.mid_, MPFR_RNDN));
    return r;
}

RealBall sqrt(RealBall const & a)
{
    RealBall r(RealBall::raw_tag{}, a.precision());
    scratch lo(kRadPrec);
    a.lower_bound(lo);
    if (mpfr_sgn(lo.v) > 0) {
        scratch s1(kRadPrec), s2(kRadPrec);
        mpfr_sqrt(s1, lo, MPFR_RNDD);
        mpfr_abs(s2, a.mid_, MPFR_RNDD);
        mpfr_sqrt(s2, s2, MPFR_RNDD);
        mpfr_add(s1, s1, s2, MPFR_RNDD);
        mpfr_div(r.rad_, a.rad_, s1, MPFR_RNDU);
        r.add_rounding_error(mpfr_sqrt(r.mid_, a.mid_, MPFR_RNDN));
        return r;
    }
    if (a.is_exact() && mpfr_zero_p(a.mid_)) {
        mpfr_set_zero(r.mid_, 1);
        mpfr_set_zero(r.rad_, 1);
        return r;
    }
    // Ball reaches 0: enclose sqrt on [0, hi].
    scratch hi(kRadPrec);
    a.upper_bound(hi);
    if (mpfr_sgn(hi.v) < 0)
        throw std::domain_error("sqrt of a negative ball");
    mpfr_sqrt(hi, hi, MPFR_RNDU);
    mpfr_div_2ui(r.mid_, hi, 1, MPFR_RNDN);
    mpfr_div_2ui(r.rad_, hi, 1, MPFR_RNDU);
    return r;
}

RealBall log(RealBall const & a)
{
    scratch lo(kRadPrec);
    a.lower_bound(lo);
    if (mpfr_sgn(lo.v) <= 0)
        throw UndecidableError("log of a ball that is not certainly positive");
    RealBall r(RealBall::raw_tag{}, a.precision());
    mpfr_div(r.rad_, a.rad_, lo, MPFR_RNDU);
    r.add_rounding_error(mpfr_log(r.mid_, a.mid_, MPFR_RNDN));
    return r;
}

RealBall exp(RealBall const & a)
{
    RealBall r(RealBall::raw_tag{}, a.precision());
    scratch t(kRadPrec);
    a.upper_bound(t);
    mpfr_exp(t, t, MPFR_RNDU);
    mpfr_mul(r.rad_, t, a.rad_, MPFR_RNDU);
    r.add_rounding_error(mpfr_exp(r.mid_, a.mid_, MPFR_RNDN));
    return r;
}

RealBall cos(RealBall const & a)
{
    RealBall r(RealBall::raw_tag{}, a.precision());
    mpfr_set(r.rad_, a.rad_, MPFR_RNDU);
    r.add_rounding_error(mpfr_cos(r.mid_, a.mid_, MPFR_RNDN));
    return r;
}

RealBall sin(RealBall const & a)
{
    RealBall r(RealBall::raw_tag{}, a.precision());
    mpfr_set(r.rad_, a.rad_, MPFR_RNDU);
    r.add_rounding_error(mpfr_sin(r.mid_, a.mid_, MPFR_RNDN));
    return r;
}

RealBall acos(RealBall const & a)
{
    scratch lo(kRadPrec), hi(kRadPrec), m(kRadPrec);
    a.lower_bound(lo);
    a.upper_bound(hi);
    mpfr_abs(lo, lo, MPFR_RNDU);
    mpfr_abs(hi, hi, MPFR_RNDU);
    mpfr_max(m, lo, hi, MPFR_RNDU);
    if (mpfr_cmp_ui(m, 1) >= 0)
        throw UndecidableError("acos of a ball reaching |x| >= 1");
    RealBall r(RealBall::raw_tag{}, a.precision());
    if (a.is_exact()) {
        mpfr_set_zero(r.rad_, 1);
    } else {
        // |acos'(x)| <= 1/sqrt(1 - m^2) on the ball
        mpfr_sqr(m, m, MPFR_RNDU);
        mpfr_ui_sub(m, 1, m, MPFR_RNDD);
        mpfr_sqrt(m, m, MPFR_RNDD);
        mpfr_div(r.rad_, a.rad_, m, MPFR_RNDU);
    }
    r.add_rounding_error(mpfr_acos(r.mid_, a.mid_, MPFR_RNDN));
    return r;
}

RealBall pow(RealBall const & a, unsigned long k)
{
    RealBall result(1, a.precision());
    RealBall base = a;
    while (k != 0) {
        if (k & 1UL)
            result *= base;
        k >>= 1;
        if (k != 0)
            base = sqr(base);
    }
    return result;
}

RealBall pow(RealBall const & a, RealBall const & b)
{
    return exp(b * log(a));
}

RealBall max(RealBall const & a, RealBall const & b)
{
    switch (compare(a, b)) {
    case Comparison::Less:
        return b;
    case Comparison::Greater:
        return a;
    case Comparison::Undecidable:
        break;
    }
    // max(x,y) lies in [max(lo_a, lo_b), max(hi_a, hi_b)] which is inside the hull.
    return hull(a, b);
}

RealBall hull(RealBall const & a, RealBall const & b)
{
    Precision p = std::max(a.precision(), b.precision());
    scratch lo(p + 32), hi(p + 32), t(p + 32);
    a.lower_bound(lo);
    b.lower_bound(t);
    mpfr_min(lo, lo, t, MPFR_RNDD);
    a.upper_bound(hi);
    b.upper_bound(t);
    mpfr_max(hi, hi, t, MPFR_RNDU);
    RealBall r(RealBall::raw_tag{}, p);
    mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
    scratch d(kRadPrec);
    mpfr_sub(r.rad_, hi, r.mid_, MPFR_RNDU);
    mpfr_sub(d, r.mid_, lo, MPFR_RNDU);
    mpfr_max(r.rad_, r.rad_, d, MPFR_RNDU);
    return r;
}

Comparison compare(RealBall const & a, RealBall const & b)
{
    Precision p = std::max(a.precision(), b.precision()) + 32;
    scratch x(p), y(p);
    a.upper_bound(x);
    b.lower_bound(y);
    if (mpfr_less_p(x, y))
        return Comparison::Less;
    a.lower_bound(x);
    b.upper_bound(y);
    if (mpfr_greater_p(x, y))
        return Comparison::Greater;
    return Comparison::Undecidable;
}

RealBall cos_2pi_frac(std::int64_t k, std::int64_t n, Precision prec)
{
    if (n == 0)
        throw std::invalid_argument("cos_2pi_frac: n = 0");
    std::int64_t r = k % n;
    RealBall x = RealBall::pi(prec + 16);
    x *= 2 * r;
    x /= n;
    return cos(x).with_precision(prec);
}

RealBall sin_2pi_frac(std::int64_t k, std::int64_t n, Precision prec)
{
    if (n == 0)
        throw std::invalid_argument("sin_2pi_frac: n = 0");
    std::int64_t r = k % n;
    RealBall x = RealBall::pi(prec + 16);
    x *= 2 * r;
    x /= n;
    return sin(x).with_precision(prec);
}

ComplexBall & ComplexBall::operator+=(ComplexBall const & b)
{
    re += b.re;
    im += b.im;
    return *this;
}

ComplexBall & ComplexBall::operator*=(ComplexBall const & b)
{
    *this = *this * b;
    return *this;
}

ComplexBall operator-(ComplexBall a, ComplexBall const & b)
{
    a.re -= b.re;
    a.im -= b.im;
    return a;
}

ComplexBall operator*(ComplexBall const & a, ComplexBall const & b)
{
    return ComplexBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ComplexBall operator*(ComplexBall a, RealBall const & s)
{
    a.re *= s;
    a.im *= s;
    return a;
}

RealBall abs(ComplexBall const & z)
{
    return sqrt(sqr(z.re) + sqr(z.im));
}

ComplexBall root_of_unity(std::int64_t k, std::int64_t n, Precision prec)
{
    return ComplexBall(cos_2pi_frac(k, n, prec), sin_2pi_frac(k, n, prec));
}

} // namespace primdiv
