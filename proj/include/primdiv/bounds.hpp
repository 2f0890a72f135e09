#ifndef PRIMDIV_BOUNDS_HPP
#define PRIMDIV_BOUNDS_HPP

#include "primdiv/realball.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace primdiv::bounds {

/* Absolute logarithmic height of a root of a primitive irreducible
 * integer polynomial of degree 1 or 2, coefficients lowest degree first.
 */
RealBall height(std::vector<mpz_class> const & coefficients, Precision prec = 128);

/// Height of beta/alpha, a root of qX^2 - pX + q, for |p| < 2q.
RealBall height_quadratic_pair(long p, long q, Precision prec = 128);

/// 2 / (D (log 3D)^3), D >= 2.
RealBall height_lower_bound(long D, Precision prec = 128);

struct LinearFormQuery {
    long D = 2;
    RealBall h{128};
    RealBall B{128}; ///< max(|b1|, |b2|, 2)
};

/// exp(-81.9 (D log 3D)^3 h (log B)^2)
RealBall linear_form_lower_bound(LinearFormQuery const & query);
/// The exponent itself, -81.9 (D log 3D)^3 h (log B)^2.
RealBall linear_form_log_lower_bound(LinearFormQuery const & query);

struct LmnParameters {
    RealBall a;
    RealBall H;
};

/* a = max(20, 12.85 |log gamma| + D h / 2)
 * H = max(17, D log(b1/(2a) + b2/(25.7 pi)) / 2 + 2.3 D + 3.25)
 */
LmnParameters lmn_parameters(long D, RealBall const & h, RealBall const & abs_log_gamma, RealBall const & b1,
                             RealBall const & b2);

/// exp(-9 a H^2); requires a >= 20 and H >= 17.
RealBall lmn_bound(RealBall const & a, RealBall const & H);

/// 0.66994 D log B > (D/2) log B + 0.657 D + 3.25
bool lmn_height_reduction_holds(long D, RealBall const & B);

struct LogInterval {
    RealBall lower;
    RealBall upper;
};

/* Bracket for log|alpha1^n - beta1^n|. For n >= 2 the lower end is
 * n log|alpha1| - 81.97 (d1 log 3d1)^3 h (log n)^2; for n = 1 it is
 * log|alpha1| - d1 (h + log 2). The upper end is log 2 + n log|alpha1|.
 */
LogInterval power_diff_bounds(std::uint64_t n, long d1, RealBall const & h, RealBall const & log_abs_alpha1);

/// pi sqrt(a/2), bounding |arccos x - arccos y| when |x - y| <= a.
RealBall arccos_diff_bound(RealBall const & a);

/// ceil(max(2(2^d1 - 1), 4000 (d1 log 3d1)^12))
mpz_class thm2_threshold(long d1);
/// The same with the working constant 3900 in place of 4000.
mpz_class thm2_working_threshold(long d1);
/// ceil(41200 d1^11.45 (log 3d1)^8.59)
mpz_class thm2_refined_threshold(long d1);
/// Unconditional cap used by the pipeline for d1 = 2.
constexpr std::uint64_t kPipelineCap = 20000000000ULL;

/// phi(n) / (2^omega(n) (log n)^2)
RealBall thirdineq_lhs(std::uint64_t n, Precision prec = 128);
/// thirdineq_lhs(n) > 41 d1^4 (log 3d1)^3
bool thirdineq_check(std::uint64_t n, long d1);

} // namespace primdiv::bounds

#endif
