#ifndef PRIMDIV_REALBALL_HPP
#define PRIMDIV_REALBALL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <optional>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace primdiv {

using Precision = mpfr_prec_t;

/* Thrown when a ball-valued decision cannot be made at the current
 * precision (a divisor or log argument straddles 0, a comparison
 * overlaps, ...). Callers that own a PrecisionPolicy retry at higher
 * precision.
 */
class UndecidableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised once the configured maximum precision has been tried and failed.
class PrecisionExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PrecisionPolicy {
    Precision start = 128;
    Precision max = 4096;
};

enum class Comparison { Less, Greater, Undecidable };

/* A real number enclosed by midpoint +/- radius. Every operation returns
 * a ball containing the exact result of the same operation applied to
 * any points of the argument balls. Radii are kept at low precision and
 * always rounded upward.
 */
class RealBall {
  public:
    explicit RealBall(Precision prec = 128);
    RealBall(long value, Precision prec);
    RealBall(RealBall const & other);
    RealBall(RealBall && other) noexcept;
    RealBall & operator=(RealBall const & other);
    RealBall & operator=(RealBall && other) noexcept;
    ~RealBall();

    static RealBall from_mpz(mpz_class const & value, Precision prec);
    static RealBall from_u64(std::uint64_t value, Precision prec);
    static RealBall rational(mpz_class const & num, mpz_class const & den, Precision prec);
    /// The exact binary value of d (no rounding).
    static RealBall from_double(double d, Precision prec);
    /// Ball [d - r, d + r] with r rounded up; for test fixtures.
    static RealBall from_mid_rad(double mid, double rad, Precision prec);
    static RealBall pi(Precision prec);
    static RealBall log2_const(Precision prec);
    static RealBall euler_gamma(Precision prec);

    Precision precision() const { return mpfr_get_prec(mid_); }
    RealBall with_precision(Precision prec) const;

    double mid_double() const;
    double rad_double() const;
    /// Rounded down / up to double, so the double interval encloses the ball.
    double lower_double() const;
    double upper_double() const;
    /// Decimal rendering of the midpoint with `digits` significant digits.
    std::string mid_string(int digits = 20) const;
    std::string to_string(int digits = 20) const;

    /// Midpoint truncated toward zero, and truncated to one decimal place.
    long trunc_mid() const;
    /// Midpoint rounded to the nearest integer, ties away from zero.
    long round_mid() const;
    double trunc_mid_1dp() const;

    /// Exact rational endpoints of an enclosing interval.
    mpq_class lower_rational() const;
    mpq_class upper_rational() const;

    /// ceil / floor of every point of the ball, when they all agree.
    std::optional<mpz_class> certain_ceil() const;
    std::optional<mpz_class> certain_floor() const;

    bool contains_zero() const;
    bool contains(mpz_class const & value) const;
    /// True iff `inner` lies entirely inside this ball.
    bool contains(RealBall const & inner) const;
    bool overlaps(RealBall const & other) const;
    bool is_positive() const;
    bool is_negative() const;
    bool is_exact() const;

    /* Ball enclosing every x with |x - mid| <= rad + extra; extra is a
     * nonnegative double, used to account for truncation errors that are
     * bounded analytically.
     */
    RealBall & widen(double extra);

    RealBall & operator+=(RealBall const & b);
    RealBall & operator-=(RealBall const & b);
    RealBall & operator*=(RealBall const & b);
    RealBall & operator/=(RealBall const & b);
    RealBall & operator*=(long k);
    RealBall & operator/=(long k);

    friend RealBall operator-(RealBall a);
    friend RealBall operator+(RealBall a, RealBall const & b) { return a += b; }
    friend RealBall operator-(RealBall a, RealBall const & b) { return a -= b; }
    friend RealBall operator*(RealBall a, RealBall const & b) { return a *= b; }
    friend RealBall operator/(RealBall a, RealBall const & b) { return a /= b; }
    friend RealBall operator*(RealBall a, long k) { return a *= k; }
    friend RealBall operator*(long k, RealBall a) { return a *= k; }
    friend RealBall operator/(RealBall a, long k) { return a /= k; }

    friend RealBall abs(RealBall a);
    friend RealBall sqr(RealBall const & a);
    friend RealBall sqrt(RealBall const & a);
    friend RealBall log(RealBall const & a);
    friend RealBall exp(RealBall const & a);
    friend RealBall cos(RealBall const & a);
    friend RealBall sin(RealBall const & a);
    friend RealBall acos(RealBall const & a);
    friend RealBall pow(RealBall const & a, unsigned long k);
    /// a^b for a > 0, via exp(b log a).
    friend RealBall pow(RealBall const & a, RealBall const & b);
    /// A ball containing max(x, y) for every x in a, y in b.
    friend RealBall max(RealBall const & a, RealBall const & b);
    /// Smallest ball containing both.
    friend RealBall hull(RealBall const & a, RealBall const & b);

    friend Comparison compare(RealBall const & a, RealBall const & b);

    /// Certified strict comparisons; false when undecidable.
    friend bool certainly_less(RealBall const & a, RealBall const & b)
    {
        return compare(a, b) == Comparison::Less;
    }
    friend bool certainly_greater(RealBall const & a, RealBall const & b)
    {
        return compare(a, b) == Comparison::Greater;
    }

  private:
    struct raw_tag {};
    RealBall(raw_tag, Precision prec);
    void add_rounding_error(int ternary);
    void lower_bound(mpfr_t out) const;
    void upper_bound(mpfr_t out) const;

    mpfr_t mid_;
    mpfr_t rad_;
};

/// cos(2*pi*k/n) and sin(2*pi*k/n) for integer k, n.
RealBall cos_2pi_frac(std::int64_t k, std::int64_t n, Precision prec);
RealBall sin_2pi_frac(std::int64_t k, std::int64_t n, Precision prec);

struct ComplexBall {
    RealBall re;
    RealBall im;

    explicit ComplexBall(Precision prec = 128) : re(prec), im(prec) {}
    ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}

    ComplexBall & operator+=(ComplexBall const & b);
    ComplexBall & operator*=(ComplexBall const & b);
    friend ComplexBall operator+(ComplexBall a, ComplexBall const & b) { return a += b; }
    friend ComplexBall operator-(ComplexBall a, ComplexBall const & b);
    friend ComplexBall operator*(ComplexBall const & a, ComplexBall const & b);
    friend ComplexBall operator*(ComplexBall a, RealBall const & s);
    friend RealBall abs(ComplexBall const & z);
};

/// exp(2*pi*i*k/n)
ComplexBall root_of_unity(std::int64_t k, std::int64_t n, Precision prec);

/* Run f(prec) starting at policy.start and doubling on
 * UndecidableError, up to policy.max. Throws PrecisionExhausted
 * after the last attempt.
 */
template <typename F>
auto with_escalation(PrecisionPolicy const & policy, F && f) -> decltype(f(Precision{}))
{
    for (Precision prec = policy.start;; prec *= 2) {
        if (prec > policy.max)
            prec = policy.max;
        try {
            return f(prec);
        } catch (UndecidableError const & e) {
            if (prec >= policy.max)
                throw PrecisionExhausted(std::string("precision exhausted at ") + std::to_string(prec)
                                         + " bits: " + e.what());
        }
    }
}

} // namespace primdiv

#endif
