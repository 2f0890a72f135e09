#ifndef PRIMDIV_VERIFIER_HPP
#define PRIMDIV_VERIFIER_HPP

#include "primdiv/realball.hpp"
#include "primdiv/realcf.hpp"
#include "primdiv/sequences.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace primdiv::verifier {

/// Index beyond which the linear-forms argument rules out exceptions.
inline constexpr std::uint64_t kFullCap = 20000000000ULL;
/// Above this index only convergent denominators need checking.
inline constexpr std::uint64_t kConvergentFloor = 1260;

enum class Method { DirectDefinition, StewartScreen, RhsInequality, ConvergentCheck };
enum class Outcome { Pass, Fail, Inconclusive };
enum class ConclusionKind { AllPrimitiveAboveThirty, ExceptionFound, Inconclusive };

std::string to_string(Method m);
std::string to_string(Outcome o);
std::string to_string(ConclusionKind c);

struct RangeRecord {
    std::uint64_t lo = 0; ///< exclusive
    std::uint64_t hi = 0; ///< inclusive
    Method method = Method::DirectDefinition;
    Outcome outcome = Outcome::Inconclusive;
    std::string note;
};

struct Conclusion {
    ConclusionKind kind = ConclusionKind::Inconclusive;
    std::uint64_t n = 0; ///< the offending index for ExceptionFound
    std::string reason;
};

/* Result of running the pipeline on one pair. The ranges partition
 * (30, n_cap]. A report whose ranges all pass but whose cap is below
 * kFullCap concludes Inconclusive and reports partial() == true.
 */
struct VerificationReport {
    SequencePair pair;
    RealBall height{128};
    std::uint64_t n_cap = kFullCap;
    std::vector<RangeRecord> ranges;
    std::vector<std::uint64_t> exceptions_found; ///< n <= 30, informational
    std::vector<realcf::ConvergentRecord> convergent_rows;
    Conclusion conclusion;

    bool all_ranges_pass() const;
    bool partial() const { return all_ranges_pass() && n_cap < kFullCap; }
};

struct Options {
    PrecisionPolicy precision{};
    /// Largest n for which a failed inequality may fall back to exact factoring of u_n.
    std::uint64_t exact_fallback_limit = 20000;
};

/// Throws PairError for an invalid pair and std::invalid_argument for n_cap < 31.
VerificationReport verify_pair(long p, long q, std::uint64_t n_cap = kFullCap, Options const & options = {});

/* Smallest N >= 30 with rhs_check(q, n) for every N < n <= 1260.
 * Throws std::logic_error if the result exceeds the tabulated cutoff.
 */
std::uint64_t compute_nq(long q, PrecisionPolicy const & policy = {});

/// The published cutoff: 1260, 330, 210, 120, 90, 78, 66, 60 (q <= 11), 42 (q <= 20), else 30.
std::uint64_t tabulated_nq(long q);

/* (5/6)^phi(n) n^(2^omega(n)/omega(n)) n^8 < 1 for every n in [lo, hi],
 * certified on geometric blocks. Requires lo >= 3500.
 */
bool analytic_rhs_tail(std::uint64_t lo, std::uint64_t hi);

/* rhs_check(q, n) for every n in (1260, n_cap]: explicitly below 3500,
 * by analytic_rhs_tail above. Memoized.
 */
bool rhs_tail_certified(long q, std::uint64_t n_cap, PrecisionPolicy const & policy = {});

/// Convergent rows of (-3, 2) with 1260 < n <= kFullCap, d_act and d_req filled in.
std::vector<realcf::ConvergentRecord> table1(PrecisionPolicy const & policy = {});

/// d_act and d_req for one convergent of (p, q), with the verdict set.
void assess(realcf::ConvergentRecord & row, long p, long q, PrecisionPolicy const & policy);

enum class Lemma10Route { Direct, General };

struct Lemma10Certificate {
    std::uint64_t n = 0;
    Lemma10Route route = Lemma10Route::Direct;
    std::uint64_t a = 0, b = 0, c = 0, d = 0; ///< |A'|, |B'|, |C'|, |D'|
    std::vector<RealBall> c_values;           ///< c1..c4
    RealBall lhs_max_log{128};
    RealBall rhs_log{128}; ///< (phi(n)/2) log(5/3)
    bool c_below_one = false;
    bool pass = false;
};

/// Direct route for n <= 210, 231 and 462, general route otherwise. Requires 30 < n <= 10^6.
Lemma10Certificate lemma10_certify(std::uint64_t n, Precision prec = 128);
Lemma10Certificate lemma10_certify(std::uint64_t n, Lemma10Route route, Precision prec = 128);

/// Valid pairs with this q, in increasing p.
std::vector<SequencePair> pairs_for_q(long q);

/* verify_pair over every valid pair with q_lo <= q <= q_hi, sorted by
 * (q, p). Errors become Inconclusive reports.
 */
std::vector<VerificationReport> scan(long q_lo, long q_hi, std::uint64_t n_cap = kFullCap, unsigned parallelism = 1,
                                     Options const & options = {});

} // namespace primdiv::verifier

#endif
