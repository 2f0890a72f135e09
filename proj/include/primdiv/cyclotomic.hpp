#ifndef PRIMDIV_CYCLOTOMIC_HPP
#define PRIMDIV_CYCLOTOMIC_HPP

#include "primdiv/arith.hpp"
#include "primdiv/polynomial.hpp"
#include "primdiv/realball.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>

namespace primdiv {

/* Φ_n together with the polynomial g_n of 2cos(2π/n) and its derivative.
 * For n < 3 only phi is populated.
 */
struct CyclotomicEntry {
    std::uint64_t n = 0;
    IntegerPolynomial phi;
    IntegerPolynomial g;
    IntegerPolynomial g_deriv;
};

/// Persistent backing for PolynomialCache.
class PolynomialStore {
  public:
    virtual ~PolynomialStore() = default;
    virtual std::optional<CyclotomicEntry> load(std::uint64_t n) = 0;
    virtual void save(CyclotomicEntry const & entry) = 0;
};

/* Thread-safe memo of CyclotomicEntry by n. Lookups take a shared lock;
 * insertion is serialized. Entries are computed outside the lock, so two
 * threads may race to compute the same n; the first insert wins.
 */
class PolynomialCache {
  public:
    PolynomialCache() = default;
    explicit PolynomialCache(std::shared_ptr<PolynomialStore> store) : store_(std::move(store)) {}

    std::shared_ptr<CyclotomicEntry const> get(std::uint64_t n);
    void set_store(std::shared_ptr<PolynomialStore> store);
    std::size_t size() const;
    void clear();

  private:
    std::shared_ptr<CyclotomicEntry const> lookup(std::uint64_t n) const;
    std::shared_ptr<CyclotomicEntry const> insert(CyclotomicEntry entry);

    mutable std::shared_mutex mutex_;
    std::map<std::uint64_t, std::shared_ptr<CyclotomicEntry const>> entries_;
    std::shared_ptr<PolynomialStore> store_;
};

/// Process-wide cache used by the free functions below.
PolynomialCache & default_cache();

/// Φ_n computed from scratch, given Φ_d for every proper divisor d of n.
IntegerPolynomial compute_cyclotomic(std::uint64_t n,
                                     std::map<std::uint64_t, IntegerPolynomial> const & proper);
/// g with Φ(X) = X^{deg/2} g(X + 1/X), for palindromic Φ of even degree.
IntegerPolynomial fold_palindromic(IntegerPolynomial const & phi);

IntegerPolynomial cyclotomic_poly(std::uint64_t n);
IntegerPolynomial g_poly(std::uint64_t n);
IntegerPolynomial g_deriv_poly(std::uint64_t n);

/// q^{φ(n)/2} g_n(p/q)
mpz_class G_eval(std::uint64_t n, mpz_class const & p, mpz_class const & q);

/// (X^m - 1)/Φ_m for odd squarefree m.
IntegerPolynomial h_poly(std::uint64_t m);
mpz_class h_supnorm_bound(std::uint64_t m);

/// max over `samples` equispaced unit-circle points of |f|.
RealBall supnorm_sample(IntegerPolynomial const & f, std::size_t samples, Precision prec);

/// |g_n'(2cos(2πk/n))|
RealBall g_deriv_at(std::uint64_t n, std::uint64_t k, Precision prec);
/// n'/(2 h_supnorm_bound(kernel_m(n))), a lower bound for every coprime k.
RealBall g_deriv_lower_bound(std::uint64_t n, Precision prec = 128);

bool mobius_product_check(std::uint64_t n, long a, long b);

} // namespace primdiv

#endif
