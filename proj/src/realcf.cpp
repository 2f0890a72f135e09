#include "primdiv/realcf.hpp"

#include "primdiv/arith.hpp"
#include "primdiv/cyclotomic.hpp"

#include <stdexcept>

namespace primdiv::realcf {

RealBall theta(long p, long q, Precision prec)
{
    if (q < 1 || std::labs(p) >= 2 * q)
        throw std::domain_error("theta: need |p| < 2q");
    RealBall const c = RealBall::rational(p, 2 * q, prec + 16);
    RealBall const two_pi = RealBall::pi(prec + 16) * 2L;
    return (acos(c) / two_pi).with_precision(prec);
}

namespace {

std::vector<mpz_class> expand(mpq_class x)
{
    std::vector<mpz_class> terms;
    mpz_class a = x.get_num(), b = x.get_den();
    while (b != 0) {
        mpz_class qt, r;
        mpz_fdiv_qr(qt.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        terms.push_back(qt);
        a = b;
        b = r;
    }
    return terms;
}

struct Convergent {
    mpz_class k, n;
    std::size_t index;
};

std::vector<Convergent> build(std::vector<mpz_class> const & pq)
{
    std::vector<Convergent> out;
    mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (std::size_t i = 0; i < pq.size(); ++i) {
        mpz_class h = pq[i] * h1 + h2;
        mpz_class k = pq[i] * k1 + k2;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        if (!out.empty() && out.back().n == k)
            out.back() = {h, k, i};
        else
            out.push_back({h, k, i});
    }
    return out;
}

std::vector<ConvergentRecord> attempt(ThetaSource const & source, std::uint64_t n_max, Precision prec)
{
    RealBall const th = source(prec);
    auto const pq = certified_partial_quotients(th.lower_rational(), th.upper_rational());
    auto const all = build(pq);
    if (all.empty() || all.back().n <= n_max)
        throw UndecidableError("continued fraction prefix does not reach n_max");
    std::vector<ConvergentRecord> out;
    for (auto const & c : all) {
        if (c.n > n_max)
            break;
        RealBall const err = abs(th - RealBall::rational(c.k, c.n, prec));
        RealBall const bound = RealBall::rational(1, c.n * c.n, prec);
        if (!certainly_less(err, bound))
            throw UndecidableError("convergent inequality not certified");
        ConvergentRecord r;
        r.k = c.k.get_ui();
        r.n = c.n.get_ui();
        r.prefix.assign(pq.begin(), pq.begin() + static_cast<long>(c.index) + 1);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

std::vector<mpz_class> certified_partial_quotients(mpq_class const & lo, mpq_class const & hi)
{
    if (lo > hi)
        throw std::invalid_argument("certified_partial_quotients: empty interval");
    auto const a = expand(lo), b = expand(hi);
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i + 1 < a.size() && i + 1 < b.size() && a[i] == b[i]; ++i)
        out.push_back(a[i]);
    return out;
}

std::vector<ConvergentRecord> convergents(ThetaSource const & source, std::uint64_t n_max,
                                          PrecisionPolicy const & policy)
{
    if (n_max < 2)
        throw std::invalid_argument("convergents: n_max must be >= 2");
    return with_escalation(policy, [&](Precision prec) {
        auto first = attempt(source, n_max, prec);
        Precision const twice = std::min<Precision>(2 * prec, std::max(policy.max, prec));
        if (twice > prec) {
            auto second = attempt(source, n_max, twice);
            bool same = second.size() == first.size();
            for (std::size_t i = 0; same && i < first.size(); ++i)
                same = first[i].k == second[i].k && first[i].n == second[i].n;
            if (!same)
                throw UndecidableError("convergents changed under doubled precision");
        }
        return first;
    });
}

RealBall d_act_log(long p, long q, std::uint64_t k, std::uint64_t n, Precision prec)
{
    if (n < 3 || k < 1 || 2 * k >= n || arith::gcd(k, n) != 1)
        throw std::invalid_argument("d_act_log: need gcd(k,n) = 1 and 1 <= k < n/2");
    RealBall diff = RealBall::rational(p, q, prec)
                    - cos_2pi_frac(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n), prec) * 2L;
    if (diff.contains_zero())
        throw UndecidableError("p/q - 2cos(2 pi k/n) is not certainly nonzero");
    return log(abs(diff));
}

RealBall d_req_log(long q, std::uint64_t n, RealBall const & gprime_lower)
{
    if (q < 2 || n <= 30)
        throw std::invalid_argument("d_req_log: need q >= 2 and n > 30");
    Precision const prec = gprime_lower.precision();
    if (!gprime_lower.is_positive())
        throw UndecidableError("d_req_log: derivative bound is not certainly positive");
    RealBall half_phi = RealBall::from_u64(arith::phi(n), prec) / 2L;
    RealBall r = half_phi * log(RealBall::rational(5, 3 * q, prec));
    r += log(RealBall::from_u64(arith::stewart_prime_cap(n), prec));
    r -= log(gprime_lower);
    return r;
}

bool rhs_check(long q, std::uint64_t n, PrecisionPolicy const & policy)
{
    return with_escalation(policy, [&](Precision prec) {
        RealBall lhs = d_req_log(q, n, g_deriv_lower_bound(n, prec));
        RealBall rhs = log(RealBall(4, prec)) - log(RealBall::from_u64(n, prec)) * 4L;
        Comparison c = compare(lhs, rhs);
        if (c == Comparison::Undecidable)
            throw UndecidableError("rhs inequality undecided");
        return c == Comparison::Less;
    });
}

CoprimeNeighbours coprime_neighbours(long p, long q, std::uint64_t n, Precision prec)
{
    if (n <= 2)
        throw std::invalid_argument("coprime_neighbours: n must be > 2");
    mpz_class m = with_escalation(PrecisionPolicy{prec, std::max<Precision>(prec, 4096)}, [&](Precision pr) {
        RealBall x = theta(p, q, pr + 64) * RealBall::from_u64(n, pr + 64);
        if (auto f = x.certain_floor())
            return *f;
        throw UndecidableError("n*theta is too close to an integer");
    });
    std::uint64_t const mf = m.get_ui();
    CoprimeNeighbours out;
    for (std::uint64_t k = std::min<std::uint64_t>(mf, (n - 1) / 2); k >= 1; --k)
        if (arith::gcd(k, n) == 1) {
            out.below = k;
            break;
        }
    for (std::uint64_t k = mf + 1; 2 * k < n; ++k)
        if (arith::gcd(k, n) == 1) {
            out.above = k;
            break;
        }
    return out;
}

std::uint64_t nearest_coprime_k(long p, long q, std::uint64_t n, Precision prec)
{
    auto const nb = coprime_neighbours(p, q, n, prec);
    if (!nb.below && !nb.above)
        throw std::invalid_argument("nearest_coprime_k: no coprime k in [1, n/2)");
    if (!nb.below)
        return *nb.above;
    if (!nb.above)
        return *nb.below;
    return with_escalation(PrecisionPolicy{prec, std::max<Precision>(prec, 4096)}, [&](Precision pr) {
        RealBall const c = RealBall::rational(p, q, pr);
        auto dist = [&](std::uint64_t k) {
            return abs(c - cos_2pi_frac(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n), pr) * 2L);
        };
        Comparison cmp = compare(dist(*nb.below), dist(*nb.above));
        if (cmp == Comparison::Undecidable)
            throw UndecidableError("nearest coprime k is a tie at this precision");
        return cmp == Comparison::Less ? *nb.below : *nb.above;
    });
}

} // namespace primdiv::realcf
