#include "primdiv/cyclotomic.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace primdiv {

using arith::u64;

namespace {

using Small = std::vector<std::int64_t>;

bool to_small(IntegerPolynomial const & f, Small & out)
{
    out.clear();
    for (auto const & c : f.coefficients()) {
        if (!c.fits_slong_p())
            return false;
        out.push_back(c.get_si());
    }
    return true;
}

/* Exact division by a monic divisor with int64 coefficients. Returns
 * nullopt if any intermediate leaves the int64 range.
 */
std::optional<Small> divexact_small(Small num, Small const & div)
{
    std::size_t const dd = div.size() - 1;
    Small quo(num.size() - dd);
    for (std::size_t i = num.size(); i-- > dd;) {
        std::int64_t const c = num[i];
        if (c == 0)
            continue;
        quo[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) {
            if (div[j] == 0)
                continue;
            __int128 v = static_cast<__int128>(num[i - dd + j]) - static_cast<__int128>(c) * div[j];
            if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
                return std::nullopt;
            num[i - dd + j] = static_cast<std::int64_t>(v);
        }
    }
    for (std::size_t i = 0; i < dd; ++i)
        if (num[i] != 0)
            throw std::logic_error("cyclotomic division left a remainder");
    return quo;
}

IntegerPolynomial from_small(Small const & v)
{
    std::vector<mpz_class> c;
    c.reserve(v.size());
    for (auto x : v)
        c.emplace_back(static_cast<long>(x));
    return IntegerPolynomial(std::move(c));
}

void require_odd_squarefree(u64 m, char const * who)
{
    if (m == 0 || m % 2 == 0 || !arith::is_squarefree(m))
        throw std::invalid_argument(std::string(who) + ": m must be odd and squarefree");
}

CyclotomicEntry build_entry(u64 n, PolynomialCache & cache)
{
    std::map<u64, IntegerPolynomial> proper;
    for (u64 d : arith::divisors(n))
        if (d < n)
            proper.emplace(d, cache.get(d)->phi);
    CyclotomicEntry e;
    e.n = n;
    e.phi = compute_cyclotomic(n, proper);
    if (n >= 3) {
        e.g = fold_palindromic(e.phi);
        e.g_deriv = e.g.derivative();
    }
    return e;
}

} // namespace

IntegerPolynomial compute_cyclotomic(u64 n, std::map<u64, IntegerPolynomial> const & proper)
{
    if (n == 0)
        throw std::invalid_argument("cyclotomic_poly: n must be positive");
    IntegerPolynomial num = IntegerPolynomial::x_pow_minus_one(n);
    Small snum;
    bool small = to_small(num, snum);
    // largest divisors first keeps the running quotient short
    for (auto it = proper.rbegin(); it != proper.rend(); ++it) {
        if (small) {
            Small sdiv;
            if (to_small(it->second, sdiv)) {
                if (auto q = divexact_small(snum, sdiv)) {
                    snum = std::move(*q);
                    continue;
                }
            }
            num = from_small(snum);
            small = false;
        }
        num = num.divexact(it->second);
    }
    return small ? from_small(snum) : num;
}

IntegerPolynomial fold_palindromic(IntegerPolynomial const & phi)
{
    long const deg = phi.degree();
    if (deg < 2 || deg % 2)
        throw std::invalid_argument("fold_palindromic: need even positive degree");
    std::size_t const d = static_cast<std::size_t>(deg / 2);
    for (std::size_t k = 0; k <= d; ++k)
        if (phi.coefficient(d + k) != phi.coefficient(d - k))
            throw std::invalid_argument("fold_palindromic: polynomial is not palindromic");

    // Clenshaw for sum_k a_{d+k} V_k(Y), V_{k+1} = Y V_k - V_{k-1}
    IntegerPolynomial const Y{0, 1};
    IntegerPolynomial b1, b2;
    for (std::size_t k = d; k >= 1; --k) {
        IntegerPolynomial b0 = Y * b1 - b2;
        b0 += IntegerPolynomial(std::vector<mpz_class>{phi.coefficient(d + k)});
        b2 = std::move(b1);
        b1 = std::move(b0);
    }
    IntegerPolynomial g = Y * b1 - b2 * mpz_class(2);
    g += IntegerPolynomial(std::vector<mpz_class>{phi.coefficient(d)});
    return g;
}

std::shared_ptr<CyclotomicEntry const> PolynomialCache::lookup(u64 n) const
{
    std::shared_lock lock(mutex_);
    auto it = entries_.find(n);
    return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<CyclotomicEntry const> PolynomialCache::insert(CyclotomicEntry entry)
{
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(entry.n, nullptr);
    if (inserted)
        it->second = std::make_shared<CyclotomicEntry const>(std::move(entry));
    return it->second;
}

std::shared_ptr<CyclotomicEntry const> PolynomialCache::get(u64 n)
{
    if (n == 0)
        throw std::invalid_argument("cyclotomic_poly: n must be positive");
    if (auto hit = lookup(n))
        return hit;
    std::shared_ptr<PolynomialStore> store;
    {
        std::shared_lock lock(mutex_);
        store = store_;
    }
    if (store) {
        if (auto loaded = store->load(n); loaded && loaded->n == n)
            return insert(std::move(*loaded));
    }
    CyclotomicEntry e = build_entry(n, *this);
    if (store)
        store->save(e);
    return insert(std::move(e));
}

void PolynomialCache::set_store(std::shared_ptr<PolynomialStore> store)
{
    std::unique_lock lock(mutex_);
    store_ = std::move(store);
}

std::size_t PolynomialCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void PolynomialCache::clear()
{
    std::unique_lock lock(mutex_);
    entries_.clear();
}

PolynomialCache & default_cache()
{
    static PolynomialCache cache;
    return cache;
}

IntegerPolynomial cyclotomic_poly(u64 n)
{
    return default_cache().get(n)->phi;
}

IntegerPolynomial g_poly(u64 n)
{
    if (n < 3)
        throw std::invalid_argument("g_poly: n must be >= 3");
    return default_cache().get(n)->g;
}

IntegerPolynomial g_deriv_poly(u64 n)
{
    if (n < 3)
        throw std::invalid_argument("g_deriv_poly: n must be >= 3");
    return default_cache().get(n)->g_deriv;
}

mpz_class G_eval(u64 n, mpz_class const & p, mpz_class const & q)
{
    if (n < 3)
        throw std::invalid_argument("G_eval: n must be >= 3");
    if (q < 1)
        throw std::invalid_argument("G_eval: q must be positive");
    return default_cache().get(n)->g.evaluate_homogeneous(p, q);
}

IntegerPolynomial h_poly(u64 m)
{
    require_odd_squarefree(m, "h_poly");
    return IntegerPolynomial::x_pow_minus_one(m).divexact(cyclotomic_poly(m));
}

mpz_class h_supnorm_bound(u64 m)
{
    require_odd_squarefree(m, "h_supnorm_bound");
    auto const f = arith::factor(m);
    std::size_t const k = f.factors.size();
    if (k == 0)
        return 1;
    mpz_class r = k <= 2 ? 2 : 1;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), f.factors[i].prime, 1UL << (k - i - 2));
        r *= pk;
    }
    return r;
}

namespace {

/// Values of f at all N-th roots of unity, N a power of two.
std::vector<ComplexBall> fft_values(IntegerPolynomial const & f, std::size_t N, Precision prec)
{
    std::vector<ComplexBall> a(N, ComplexBall(prec));
    auto const & c = f.coefficients();
    std::vector<mpz_class> folded(N);
    for (std::size_t i = 0; i < c.size(); ++i)
        folded[i % N] += c[i];
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < N)
        ++bits;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < bits; ++b)
            if (i >> b & 1)
                r |= std::size_t{1} << (bits - 1 - b);
        a[r].re = RealBall::from_mpz(folded[i], prec);
    }
    std::vector<ComplexBall> w;
    w.reserve(N / 2);
    for (std::size_t k = 0; k < N / 2; ++k)
        w.push_back(root_of_unity(static_cast<std::int64_t>(k), static_cast<std::int64_t>(N), prec));
    for (std::size_t len = 2; len <= N; len <<= 1) {
        std::size_t const step = N / len;
        for (std::size_t s = 0; s < N; s += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                ComplexBall t = w[j * step] * a[s + j + len / 2];
                a[s + j + len / 2] = a[s + j] - t;
                a[s + j] += t;
            }
        }
    }
    return a;
}

} // namespace

RealBall supnorm_sample(IntegerPolynomial const & f, std::size_t samples, Precision prec)
{
    if (samples < 8)
        throw std::invalid_argument("supnorm_sample: need at least 8 samples");
    if (f.degree() <= 0)
        return abs(RealBall::from_mpz(f.coefficient(0), prec));
    bool const pow2 = (samples & (samples - 1)) == 0;
    std::vector<ComplexBall> values;
    if (pow2 && f.degree() >= 8) {
        values = fft_values(f, samples, prec);
    } else {
        values.reserve(samples);
        for (std::size_t j = 0; j < samples; ++j)
            values.push_back(f.evaluate(root_of_unity(static_cast<std::int64_t>(j),
                                                      static_cast<std::int64_t>(samples), prec)));
    }
    RealBall best = abs(values[0]);
    for (std::size_t j = 1; j < values.size(); ++j)
        best = max(best, abs(values[j]));
    return best;
}

RealBall g_deriv_at(u64 n, u64 k, Precision prec)
{
    if (n < 3)
        throw std::invalid_argument("g_deriv_at: n must be >= 3");
    if (k < 1 || 2 * k >= n || arith::gcd(k, n) != 1)
        throw std::invalid_argument("g_deriv_at: need 1 <= k < n/2 with gcd(k,n) = 1");
    auto const entry = default_cache().get(n);
    IntegerPolynomial const & d = entry->g_deriv;
    // cancellation in Horner costs about the coefficient size in bits
    Precision const work = prec + static_cast<Precision>(d.max_coefficient_bits())
                           + 2 * static_cast<Precision>(64 - __builtin_clzll(n)) + 16;
    RealBall y = cos_2pi_frac(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n), work) * 2L;
    return abs(d.evaluate(y)).with_precision(prec);
}

RealBall g_deriv_lower_bound(u64 n, Precision prec)
{
    if (n < 3)
        throw std::invalid_argument("g_deriv_lower_bound: n must be >= 3");
    mpz_class const den = 2 * h_supnorm_bound(arith::kernel_m(n));
    return RealBall::rational(mpz_class(static_cast<unsigned long>(arith::n_prime(n))), den, prec);
}

bool mobius_product_check(u64 n, long a, long b)
{
    if (n < 2 || b < 1 || a <= b)
        throw std::invalid_argument("mobius_product_check: need n >= 2 and a > b >= 1");
    mpz_class const lhs = cyclotomic_poly(n).evaluate_homogeneous(a, b);
    mpz_class num = 1, den = 1;
    for (u64 m : arith::divisors(n)) {
        int const mu = arith::mobius(n / m);
        if (mu == 0)
            continue;
        mpz_class am, bm;
        mpz_ui_pow_ui(am.get_mpz_t(), static_cast<unsigned long>(a), m);
        mpz_ui_pow_ui(bm.get_mpz_t(), static_cast<unsigned long>(b), m);
        (mu > 0 ? num : den) *= am - bm;
    }
    return num == lhs * den;
}

} // namespace primdiv
