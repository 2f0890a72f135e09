#ifndef PRIMDIV_SEQUENCES_HPP
#define PRIMDIV_SEQUENCES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace primdiv {

enum class SequenceKind { Lucas, Lehmer };

enum class PairErrorKind { NotCoprime, RealCase, RootOfUnity, ZeroParameter };

std::string to_string(SequenceKind kind);
std::string to_string(PairErrorKind kind);

class PairError : public std::invalid_argument {
  public:
    PairError(PairErrorKind kind, std::string const & what) : std::invalid_argument(what), kind_(kind) {}
    PairErrorKind kind() const { return kind_; }

  private:
    PairErrorKind kind_;
};

/* Parameters of the sequence generated by the roots of
 * X^2 - sqrt(p+2q) X + q, restricted to the complex case |p| < 2q.
 */
struct SequencePair {
    long p = 0;
    long q = 0;
    SequenceKind kind = SequenceKind::Lehmer;
    long L = 0; ///< p + 2q
    long M = 0; ///< p - 2q
    long A = 0; ///< sqrt(L) for Lucas pairs, 0 otherwise

    bool operator==(SequencePair const &) const = default;
};

/// Throws PairError.
SequencePair make_pair(long p, long q);

struct SequenceElement {
    std::uint64_t n = 0;
    mpz_class value;
};

/* Memoized prefix u_0, u_1, ... of one sequence. Not thread-safe; use one
 * table per worker.
 */
class SequenceTable {
  public:
    explicit SequenceTable(SequencePair const & pair);

    SequencePair const & pair() const { return pair_; }
    /// Lehmer-normalized u_n from the integer recurrence.
    mpz_class const & normalized(std::uint64_t n);
    /// u_n, with the factor A restored at even n for Lucas pairs.
    mpz_class value(std::uint64_t n);

  private:
    SequencePair pair_;
    std::vector<mpz_class> u_;
};

SequenceElement element(SequencePair const & pair, std::uint64_t n);

/// Requires n >= 2.
bool has_primitive_divisor(SequencePair const & pair, std::uint64_t n);
bool has_primitive_divisor(SequenceTable & table, std::uint64_t n);

enum class ScreenResult { CertifiedPrimitive, Candidate };

/// Requires n > 12.
ScreenResult stewart_screen(SequencePair const & pair, std::uint64_t n);

/// Every n in [n_lo, n_hi] for which u_n has no primitive divisor.
std::vector<std::uint64_t> enumerate_exceptions(SequencePair const & pair, std::uint64_t n_lo, std::uint64_t n_hi);

} // namespace primdiv

#endif
