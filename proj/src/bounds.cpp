#include "primdiv/bounds.hpp"

#include "primdiv/arith.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace primdiv::bounds {

namespace {

RealBall dec(long num, long den, Precision prec)
{
    return RealBall::rational(num, den, prec);
}

RealBall log_max1(RealBall const & x)
{
    return log(max(RealBall(1, x.precision()), abs(x)));
}

mpz_class certified_ceil(std::function<RealBall(Precision)> const & f)
{
    return with_escalation(PrecisionPolicy{128, 4096}, [&](Precision prec) {
        if (auto c = f(prec).certain_ceil())
            return *c;
        throw UndecidableError("ceiling straddles an integer");
    });
}

// (d1 log 3d1)^3
RealBall dlog_cubed(long d, Precision prec)
{
    RealBall t = RealBall(d, prec) * log(RealBall(3 * d, prec));
    return pow(t, 3);
}

} // namespace

RealBall height(std::vector<mpz_class> const & c, Precision prec)
{
    std::size_t deg = c.size();
    while (deg > 0 && c[deg - 1] == 0)
        --deg;
    if (deg < 2 || deg > 3)
        throw std::invalid_argument("height: polynomial degree must be 1 or 2");
    --deg;
    mpz_class const lead = abs(c[deg]);
    if (deg == 1) {
        mpz_class const m = std::max(lead, mpz_class(abs(c[0])));
        return log(RealBall::from_mpz(m, prec));
    }
    mpz_class const a = c[2], b = c[1], cc = c[0];
    mpz_class const disc = b * b - 4 * a * cc;
    if (disc < 0) {
        // conjugate roots of modulus sqrt(c/a)
        mpz_class const m = std::max(mpz_class(abs(a)), mpz_class(abs(cc)));
        return log(RealBall::from_mpz(m, prec)) / 2L;
    }
    RealBall const sd = sqrt(RealBall::from_mpz(disc, prec));
    RealBall const two_a = RealBall::from_mpz(2 * a, prec);
    RealBall const r1 = (RealBall::from_mpz(-b, prec) + sd) / two_a;
    RealBall const r2 = (RealBall::from_mpz(-b, prec) - sd) / two_a;
    return (log(RealBall::from_mpz(lead, prec)) + log_max1(r1) + log_max1(r2)) / 2L;
}

RealBall height_quadratic_pair(long p, long q, Precision prec)
{
    if (q < 1 || std::labs(p) >= 2 * q)
        throw std::invalid_argument("height_quadratic_pair: need q >= 1 and |p| < 2q");
    mpz_class const g = arith::gcd(static_cast<arith::u64>(std::labs(p)), static_cast<arith::u64>(q));
    mpz_class const qq = mpz_class(q) / g, pp = mpz_class(p) / g;
    return height({qq, -pp, qq}, prec);
}

RealBall height_lower_bound(long D, Precision prec)
{
    if (D < 2)
        throw std::invalid_argument("height_lower_bound: D must be >= 2");
    RealBall l = log(RealBall(3 * D, prec));
    return RealBall(2, prec) / (RealBall(D, prec) * pow(l, 3));
}

RealBall linear_form_log_lower_bound(LinearFormQuery const & q)
{
    if (q.D < 1)
        throw std::invalid_argument("linear_form_lower_bound: D must be >= 1");
    Precision const prec = q.h.precision();
    if (!q.h.is_positive())
        throw std::invalid_argument("linear_form_lower_bound: h must be positive");
    if (certainly_less(q.B, RealBall(2, prec)))
        throw std::invalid_argument("linear_form_lower_bound: B must be >= 2");
    RealBall lb = log(q.B);
    return -(dec(819, 10, prec) * dlog_cubed(q.D, prec) * q.h * sqr(lb));
}

RealBall linear_form_lower_bound(LinearFormQuery const & q)
{
    return exp(linear_form_log_lower_bound(q));
}

LmnParameters lmn_parameters(long D, RealBall const & h, RealBall const & abs_log_gamma, RealBall const & b1,
                             RealBall const & b2)
{
    Precision const prec = h.precision();
    RealBall a = max(RealBall(20, prec), dec(1285, 100, prec) * abs_log_gamma + RealBall(D, prec) * h / 2L);
    RealBall inner = b1 / (a * 2L) + b2 / (dec(257, 10, prec) * RealBall::pi(prec));
    RealBall H = RealBall(D, prec) * log(inner) / 2L + dec(23, 10, prec) * D + dec(325, 100, prec);
    return {a, max(RealBall(17, prec), H)};
}

RealBall lmn_bound(RealBall const & a, RealBall const & H)
{
    Precision const prec = a.precision();
    if (certainly_less(a, RealBall(20, prec)) || certainly_less(H, RealBall(17, prec)))
        throw std::invalid_argument("lmn_bound: need a >= 20 and H >= 17");
    return exp(-(a * sqr(H) * 9L));
}

bool lmn_height_reduction_holds(long D, RealBall const & B)
{
    Precision const prec = B.precision();
    RealBall const lb = log(B);
    RealBall lhs = dec(66994, 100000, prec) * D * lb;
    RealBall rhs = RealBall(D, prec) * lb / 2L + dec(657, 1000, prec) * D + dec(325, 100, prec);
    return certainly_greater(lhs, rhs);
}

LogInterval power_diff_bounds(std::uint64_t n, long d1, RealBall const & h, RealBall const & log_abs_alpha1)
{
    if (d1 < 2 || n < 1)
        throw std::invalid_argument("power_diff_bounds: need d1 >= 2 and n >= 1");
    if (!h.is_positive())
        throw std::invalid_argument("power_diff_bounds: h must be positive");
    Precision const prec = h.precision();
    RealBall const nl = RealBall::from_u64(n, prec) * log_abs_alpha1;
    RealBall upper = RealBall::log2_const(prec) + nl;
    if (n == 1)
        return {nl - RealBall(d1, prec) * (h + RealBall::log2_const(prec)), upper};
    RealBall ln = log(RealBall::from_u64(n, prec));
    RealBall lower = nl - dec(8197, 100, prec) * dlog_cubed(d1, prec) * h * sqr(ln);
    return {lower, upper};
}

RealBall arccos_diff_bound(RealBall const & a)
{
    if (certainly_less(a, RealBall(0, a.precision())))
        throw std::invalid_argument("arccos_diff_bound: a must be >= 0");
    return RealBall::pi(a.precision()) * sqrt(a / 2L);
}

namespace {

mpz_class threshold_with_constant(long d1, long constant)
{
    if (d1 < 2)
        throw std::invalid_argument("thm2_threshold: d1 must be >= 2");
    mpz_class c = certified_ceil([&](Precision prec) {
        return RealBall(constant, prec) * pow(dlog_cubed(d1, prec), 4);
    });
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(d1));
    return std::max(c, mpz_class(2 * (two_pow - 1)));
}

} // namespace

mpz_class thm2_threshold(long d1)
{
    return threshold_with_constant(d1, 4000);
}

mpz_class thm2_working_threshold(long d1)
{
    return threshold_with_constant(d1, 3900);
}

mpz_class thm2_refined_threshold(long d1)
{
    if (d1 < 2)
        throw std::invalid_argument("thm2_refined_threshold: d1 must be >= 2");
    return certified_ceil([&](Precision prec) {
        RealBall const d = RealBall(d1, prec);
        RealBall const l = log(RealBall(3 * d1, prec));
        return RealBall(41200, prec) * pow(d, dec(1145, 100, prec)) * pow(l, dec(859, 100, prec));
    });
}

RealBall thirdineq_lhs(std::uint64_t n, Precision prec)
{
    if (n < 3)
        throw std::invalid_argument("thirdineq: n must be >= 3");
    auto const f = arith::factor(n);
    RealBall const ln = log(RealBall::from_u64(n, prec));
    RealBall den = RealBall::from_u64(std::uint64_t{1} << f.factors.size(), prec) * sqr(ln);
    return RealBall::from_u64(arith::phi(f), prec) / den;
}

bool thirdineq_check(std::uint64_t n, long d1)
{
    if (d1 < 2)
        throw std::invalid_argument("thirdineq: d1 must be >= 2");
    return with_escalation(PrecisionPolicy{128, 1024}, [&](Precision prec) {
        RealBall rhs = RealBall(41, prec) * pow(RealBall(d1, prec), 4) * pow(log(RealBall(3 * d1, prec)), 3);
        Comparison c = compare(thirdineq_lhs(n, prec), rhs);
        if (c == Comparison::Undecidable)
            throw UndecidableError("thirdineq undecided");
        return c == Comparison::Greater;
    });
}

} // namespace primdiv::bounds
