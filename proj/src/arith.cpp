#include "primdiv/arith.hpp"

#include "primdiv/realball.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace primdiv::arith {

u64 gcd(u64 a, u64 b)
{
    return std::gcd(a, b);
}

Factorization factor(u64 n)
{
    if (n == 0)
        throw std::invalid_argument("factor: n must be positive");
    Factorization f;
    f.n = n;
    auto take = [&](u64 p) {
        if (n % p != 0)
            return;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    };
    take(2);
    take(3);
    take(5);
    // mod-30 wheel: residues coprime to 30
    static constexpr std::array<u64, 8> gaps{4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    for (std::size_t i = 0; p <= n / p; p += gaps[i], i = (i + 1) % gaps.size())
        take(p);
    if (n > 1)
        f.factors.push_back({n, 1});
    return f;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    auto f = factor(n);
    return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

u64 phi(Factorization const & f)
{
    u64 r = 1;
    for (auto const & [p, e] : f.factors) {
        r *= p - 1;
        for (unsigned i = 1; i < e; ++i)
            r *= p;
    }
    return r;
}

u64 phi(u64 n)
{
    return phi(factor(n));
}

unsigned omega(u64 n)
{
    return static_cast<unsigned>(factor(n).factors.size());
}

int mobius(Factorization const & f)
{
    for (auto const & pp : f.factors)
        if (pp.exponent > 1)
            return 0;
    return f.factors.size() % 2 ? -1 : 1;
}

int mobius(u64 n)
{
    return mobius(factor(n));
}

u64 largest_prime_factor(u64 n)
{
    if (n < 2)
        throw std::invalid_argument("largest_prime_factor: n must be >= 2");
    return factor(n).factors.back().prime;
}

u64 kernel_m(Factorization const & f)
{
    u64 m = 1;
    for (auto const & pp : f.factors)
        if (pp.prime != 2)
            m *= pp.prime;
    return m;
}

u64 kernel_m(u64 n)
{
    return kernel_m(factor(n));
}

u64 m_prime(u64 n)
{
    return gcd(2, n) * kernel_m(n);
}

u64 n_prime(u64 n)
{
    if (n == 0)
        throw std::invalid_argument("n_prime: n must be positive");
    return n / gcd(n, 2);
}

bool is_squarefree(u64 n)
{
    return mobius(n) != 0;
}

std::vector<u64> divisors(Factorization const & f)
{
    std::vector<u64> ds{1};
    for (auto const & [p, e] : f.factors) {
        std::size_t const base = ds.size();
        u64 pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<u64> divisors(u64 n)
{
    return divisors(factor(n));
}

u64 stewart_prime_cap(u64 n)
{
    if (n < 2)
        throw std::invalid_argument("stewart_prime_cap: n must be >= 2");
    u64 t = n / gcd(n, 3);
    return t == 1 ? 1 : largest_prime_factor(t);
}

u64 phi_interval(u64 k, u64 r, u64 n)
{
    if (k == 0 || r >= k || n == 0)
        throw std::invalid_argument("phi_interval: need k >= 1, 0 <= r < k, n >= 1");
    // integers j with n*r < k*j < n*(r+1)
    u64 lo = n * r / k + 1;
    u64 hi = (n * (r + 1) - 1) / k;
    u64 count = 0;
    for (u64 j = lo; j <= hi; ++j)
        if (gcd(j, n) == 1)
            ++count;
    return count;
}

std::int64_t interval_error(u64 k, u64 r, u64 n)
{
    return static_cast<std::int64_t>(phi(n)) - static_cast<std::int64_t>(k * phi_interval(k, r, n));
}

namespace {

constexpr Precision kBoundPrec = 96;

RealBall loglog(u64 n)
{
    return log(log(RealBall::from_u64(n, kBoundPrec)));
}

} // namespace

bool check_omega_bound(u64 n)
{
    if (n < 3)
        throw std::invalid_argument("check_omega_bound: n must be >= 3");
    RealBall rhs = RealBall::rational(13841, 10000, kBoundPrec) * log(RealBall::from_u64(n, kBoundPrec));
    rhs /= loglog(n);
    return certainly_less(RealBall(static_cast<long>(omega(n)), kBoundPrec), rhs);
}

bool check_phi_bound(u64 n)
{
    if (n < 3)
        throw std::invalid_argument("check_phi_bound: n must be >= 3");
    RealBall ll = loglog(n);
    RealBall den = exp(RealBall::euler_gamma(kBoundPrec)) * ll
                   + RealBall::rational(250637, 100000, kBoundPrec) / ll;
    RealBall rhs = RealBall::from_u64(n, kBoundPrec) / den;
    // phi(n) >= rhs; the bound is not tight enough for equality to matter
    return compare(RealBall::from_u64(phi(n), kBoundPrec), rhs) == Comparison::Greater;
}

} // namespace primdiv::arith
