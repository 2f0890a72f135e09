#include "primdiv/sequences.hpp"

#include "primdiv/arith.hpp"
#include "primdiv/cyclotomic.hpp"

#include <cmath>
#include <numeric>

namespace primdiv {

std::string to_string(SequenceKind kind)
{
    return kind == SequenceKind::Lucas ? "Lucas" : "Lehmer";
}

std::string to_string(PairErrorKind kind)
{
    switch (kind) {
    case PairErrorKind::NotCoprime:
        return "NotCoprime";
    case PairErrorKind::RealCase:
        return "RealCase";
    case PairErrorKind::RootOfUnity:
        return "RootOfUnity";
    case PairErrorKind::ZeroParameter:
        return "ZeroParameter";
    }
    return "?";
}

SequencePair make_pair(long p, long q)
{
    std::string const tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    if (q == 0 || p + 2 * q == 0)
        throw PairError(PairErrorKind::ZeroParameter, "zero parameter in pair " + tag);
    if (q < 0 || std::labs(p) >= 2 * q)
        throw PairError(PairErrorKind::RealCase, "pair " + tag + " has real roots or negative q");
    if (p == 0 || p == q || p == -q)
        throw PairError(PairErrorKind::RootOfUnity, "beta/alpha is a root of unity for " + tag);
    if (std::gcd(p + 2 * q, q) != 1)
        throw PairError(PairErrorKind::NotCoprime, "p+2q and q are not coprime for " + tag);

    SequencePair s;
    s.p = p;
    s.q = q;
    s.L = p + 2 * q;
    s.M = p - 2 * q;
    long a = std::lround(std::sqrt(static_cast<double>(s.L)));
    while (a * a > s.L)
        --a;
    while ((a + 1) * (a + 1) <= s.L)
        ++a;
    if (a * a == s.L) {
        s.kind = SequenceKind::Lucas;
        s.A = a;
    }
    return s;
}

SequenceTable::SequenceTable(SequencePair const & pair)
    : pair_(pair)
{
    u_.emplace_back(0);
    u_.emplace_back(1);
}

mpz_class const & SequenceTable::normalized(std::uint64_t n)
{
    while (u_.size() <= n) {
        std::size_t const k = u_.size() - 2; // computing u_{k+2}
        mpz_class next = (k % 2 == 1) ? mpz_class(u_[k + 1] * pair_.L) : u_[k + 1];
        next -= u_[k] * pair_.q;
        u_.push_back(std::move(next));
    }
    return u_[n];
}

mpz_class SequenceTable::value(std::uint64_t n)
{
    mpz_class v = normalized(n);
    if (pair_.kind == SequenceKind::Lucas && n % 2 == 0)
        v *= pair_.A;
    return v;
}

SequenceElement element(SequencePair const & pair, std::uint64_t n)
{
    SequenceTable t(pair);
    return {n, t.value(n)};
}

bool has_primitive_divisor(SequenceTable & table, std::uint64_t n)
{
    if (n < 2)
        throw std::invalid_argument("has_primitive_divisor: n must be >= 2");
    SequencePair const & s = table.pair();
    mpz_class v = abs(table.value(n));
    if (v <= 1)
        return false;
    bool const lucas = s.kind == SequenceKind::Lucas;
    mpz_class c = lucas ? mpz_class(std::labs(s.M)) : mpz_class(std::labs(s.L * s.M));
    for (std::uint64_t d : arith::divisors(n))
        if (d < n && d >= (lucas ? 2u : 3u))
            c *= abs(table.value(d));
    mpz_class g;
    for (;;) {
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    return v > 1;
}

bool has_primitive_divisor(SequencePair const & pair, std::uint64_t n)
{
    SequenceTable t(pair);
    return has_primitive_divisor(t, n);
}

ScreenResult stewart_screen(SequencePair const & pair, std::uint64_t n)
{
    if (n <= 12)
        throw std::invalid_argument("stewart_screen: n must be > 12");
    mpz_class const g = abs(G_eval(n, pair.p, pair.q));
    return g > static_cast<unsigned long>(arith::stewart_prime_cap(n)) ? ScreenResult::CertifiedPrimitive
                                                                       : ScreenResult::Candidate;
}

std::vector<std::uint64_t> enumerate_exceptions(SequencePair const & pair, std::uint64_t n_lo, std::uint64_t n_hi)
{
    if (n_lo < 2 || n_lo > n_hi)
        throw std::invalid_argument("enumerate_exceptions: need 2 <= n_lo <= n_hi");
    SequenceTable table(pair);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        if (n > 12 && stewart_screen(pair, n) == ScreenResult::CertifiedPrimitive)
            continue;
        if (!has_primitive_divisor(table, n))
            out.push_back(n);
    }
    return out;
}

} // namespace primdiv
