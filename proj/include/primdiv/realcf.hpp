#ifndef PRIMDIV_REALCF_HPP
#define PRIMDIV_REALCF_HPP

#include "primdiv/realball.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace primdiv::realcf {

/// arccos(p/(2q)) / (2 pi), for |p| < 2q.
RealBall theta(long p, long q, Precision prec);

/// Produces an enclosure of a fixed real number at the requested precision.
using ThetaSource = std::function<RealBall(Precision)>;

enum class Verdict { Refuted, Violation, Undecided };

/* One convergent k/n of theta. `prefix` holds the partial quotients
 * a_0..a_i that determine it. The log columns are filled in by callers
 * that compare d_act against d_req.
 */
struct ConvergentRecord {
    std::uint64_t k = 0;
    std::uint64_t n = 0;
    std::vector<mpz_class> prefix;
    std::optional<RealBall> d_act_log;
    std::optional<RealBall> d_req_log;
    Verdict verdict = Verdict::Undecided;
};

/* Partial quotients shared by every real in [lo, hi]: the common prefix
 * of the expansions of both endpoints, minus a term that is final in
 * either expansion.
 */
std::vector<mpz_class> certified_partial_quotients(mpq_class const & lo, mpq_class const & hi);

/* All convergents with denominator <= n_max, certified against the
 * enclosure. Precision doubles until the certified prefix reaches past
 * n_max and a run at twice the precision agrees.
 */
std::vector<ConvergentRecord> convergents(ThetaSource const & source, std::uint64_t n_max,
                                          PrecisionPolicy const & policy = {});

/// ln|p/q - 2cos(2 pi k/n)|. Throws UndecidableError when the difference is not certainly nonzero.
RealBall d_act_log(long p, long q, std::uint64_t k, std::uint64_t n, Precision prec);

/// (phi(n)/2) ln(5/(3q)) + ln P(n/(n,3)) - ln(gprime_lower)
RealBall d_req_log(long q, std::uint64_t n, RealBall const & gprime_lower);

/// d_req_log(q, n, g_deriv_lower_bound(n)) < ln(4/n^4), certified.
bool rhs_check(long q, std::uint64_t n, PrecisionPolicy const & policy = {});

/* The coprime k just below and just above n*theta within [1, n/2). Either
 * may be absent at the ends of the range.
 */
struct CoprimeNeighbours {
    std::optional<std::uint64_t> below;
    std::optional<std::uint64_t> above;
};
CoprimeNeighbours coprime_neighbours(long p, long q, std::uint64_t n, Precision prec);

/// The coprime k in [1, n/2) minimizing |p/q - 2cos(2 pi k/n)|.
std::uint64_t nearest_coprime_k(long p, long q, std::uint64_t n, Precision prec);

} // namespace primdiv::realcf

#endif
