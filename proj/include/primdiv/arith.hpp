#ifndef PRIMDIV_ARITH_HPP
#define PRIMDIV_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace primdiv::arith {

using u64 = std::uint64_t;

struct PrimePower {
    u64 prime;
    unsigned exponent;

    bool operator==(PrimePower const &) const = default;
};

/* Prime factorization of a positive integer. Primes are strictly
 * increasing and every exponent is at least 1; the empty list encodes 1.
 */
struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;

    bool operator==(Factorization const &) const = default;
};

/* Deterministic trial division with a mod-30 wheel. Intended for n up to
 * a few times 10^10, where sqrt(n) stays below ~2*10^5.
 * Throws std::invalid_argument for n = 0.
 */
Factorization factor(u64 n);

bool is_prime(u64 n);

u64 phi(u64 n);
u64 phi(Factorization const & f);
unsigned omega(u64 n);
int mobius(u64 n);
int mobius(Factorization const & f);

/// P(n). Throws std::invalid_argument for n < 2.
u64 largest_prime_factor(u64 n);

/// Product of the odd primes dividing n (greatest odd squarefree divisor).
u64 kernel_m(u64 n);
u64 kernel_m(Factorization const & f);
/// gcd(2,n) * kernel_m(n)
u64 m_prime(u64 n);
/// n / gcd(n,2)
u64 n_prime(u64 n);

bool is_squarefree(u64 n);

/// All positive divisors of n, increasing.
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(Factorization const & f);

/* P(n/gcd(n,3)), the prime cap in the no-primitive-divisor screen.
 * Returns 1 when n/gcd(n,3) = 1. Requires n >= 2.
 */
u64 stewart_prime_cap(u64 n);

/* Number of integers strictly inside (n*r/k, n*(r+1)/k) that are coprime
 * to n, by direct enumeration. Requires k >= 1, 0 <= r < k, n >= 1.
 */
u64 phi_interval(u64 k, u64 r, u64 n);

/// phi(n) - k * phi_interval(k, r, n)
std::int64_t interval_error(u64 k, u64 r, u64 n);

/* Rigorous checks of the explicit bounds
 *   omega(n) < 1.3841 log n / log log n
 *   phi(n) >= n / (e^gamma log log n + 2.50637 / log log n)
 * for n >= 3. Both are evaluated in ball arithmetic; an undecidable
 * comparison counts as failure.
 */
bool check_omega_bound(u64 n);
bool check_phi_bound(u64 n);

u64 gcd(u64 a, u64 b);

} // namespace primdiv::arith

#endif
