#include "primdiv/realcf.hpp"

#include "primdiv/arith.hpp"
#include "primdiv/cyclotomic.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace primdiv;
using namespace primdiv::realcf;

namespace {

constexpr Precision kPrec = 128;

struct Row {
    std::uint64_t k, n;
    long dreq;
    double dact;
};

// (p, q) = (-3, 2), denominators above 1260
std::vector<Row> const kTable = {
    {497, 1291, -116, -12.6},
    {579, 1504, -68, -13.7},
    {1655, 4299, -260, -15.4},
    {3889, 10102, -459, -18.9},
    {52212, 135625, -8207, -22.1},
    {56101, 145727, -12970, -22.4},
    {108313, 281352, -8086, -24.3},
    {381040, 989783, -90228, -26.1},
    {489353, 1271135, -90181, -26.7},
    {870393, 2260918, -93683, -28.3},
    {2230139, 5792971, -493472, -29.5},
    {3100532, 8053889, -734197, -30.8},
    {8431203, 21900749, -1745895, -32.3},
    {11531735, 29954638, -1164244, -33.1},
    {19962938, 51855387, -3104401, -34.1},
    {31494673, 81810025, -5404005, -35.2},
    {51457611, 133665412, -5943915, -35.8},
    {82952284, 215475437, -19412834, -38.5},
    {798028167, 2072944345, -144472147, -41.8},
    {1679008618, 4361364127, -374075698, -42.8},
    {2477036785, 6434308472, -293278284, -44.3},
    {6633082188, 17229981071, -1438733756, -45.4},
};

ThetaSource lehmer_theta(long p, long q)
{
    return [p, q](Precision prec) { return theta(p, q, prec); };
}

RealBall golden_fraction(Precision prec)
{
    return (sqrt(RealBall(5, prec)) - RealBall(1, prec)) / 2L;
}

std::vector<ConvergentRecord> const & table_convergents()
{
    static auto const cs = convergents(lehmer_theta(-3, 2), 20000000000ULL);
    return cs;
}

} // namespace

TEST(Theta, Values)
{
    RealBall t = theta(0, 2, kPrec);
    EXPECT_TRUE(t.overlaps(RealBall::rational(1, 4, kPrec)));
    RealBall m = theta(-3, 2, kPrec);
    EXPECT_NEAR(m.mid_double(), 0.384973271918692, 1e-12);
    EXPECT_LT(m.rad_double(), std::ldexp(1.0, -100));
    for (long q = 2; q <= 3000; q += 37) {
        RealBall e = theta(-2 * q + 1, q, kPrec);
        ASSERT_TRUE(certainly_less(e, RealBall::rational(1, 2, kPrec))) << q;
        ASSERT_TRUE(e.is_positive());
    }
    EXPECT_THROW(theta(4, 2, kPrec), std::domain_error);
}

TEST(PartialQuotients, CommonPrefix)
{
    // 415/93 = [4; 2, 6, 7]
    auto exact = certified_partial_quotients(mpq_class(415, 93), mpq_class(415, 93));
    EXPECT_EQ(exact, (std::vector<mpz_class>{4, 2, 6}));
    auto split = certified_partial_quotients(mpq_class(3, 10), mpq_class(4, 10));
    EXPECT_TRUE(split.empty() || split == std::vector<mpz_class>{0});
    EXPECT_THROW(certified_partial_quotients(mpq_class(1), mpq_class(0)), std::invalid_argument);
}

TEST(Convergents, GoldenRatioGivesFibonacciRatios)
{
    auto cs = convergents(golden_fraction, 1000000);
    std::uint64_t a = 1, b = 1;
    ASSERT_GE(cs.size(), 20U);
    for (auto const & c : cs) {
        EXPECT_EQ(c.k, a);
        EXPECT_EQ(c.n, b);
        std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    EXPECT_GT(b, 1000000U);
}

TEST(Convergents, TableDenominatorsAndNumerators)
{
    std::vector<Row> got;
    for (auto const & c : table_convergents())
        if (c.n > 1260)
            got.push_back({c.k, c.n, 0, 0});
    ASSERT_EQ(got.size(), kTable.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].k, kTable[i].k) << i;
        EXPECT_EQ(got[i].n, kTable[i].n) << i;
    }
}

TEST(Convergents, LawAndStraddling)
{
    auto const & cs = table_convergents();
    Precision const prec = 256;
    RealBall const th = theta(-3, 2, prec);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        RealBall const approx = RealBall::rational(cs[i].k, cs[i].n, prec);
        RealBall const err = abs(th - approx);
        ASSERT_TRUE(certainly_less(err, RealBall::rational(1, mpz_class(cs[i].n) * cs[i].n, prec)));
        ASSERT_EQ(arith::gcd(cs[i].k, cs[i].n), 1U);
        if (i > 0) {
            ASSERT_GT(cs[i].n, cs[i - 1].n);
            RealBall prev = RealBall::rational(cs[i - 1].k, cs[i - 1].n, prec);
            ASSERT_TRUE((approx - th).is_positive() != (prev - th).is_positive()) << i;
        }
    }
}

TEST(Convergents, DoublingStability)
{
    for (long p : {-3L, -1L, 1L, 3L}) {
        auto a = convergents(lehmer_theta(p, 2), 1000000000ULL, {128, 4096});
        auto b = convergents(lehmer_theta(p, 2), 1000000000ULL, {512, 4096});
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].k, b[i].k);
            EXPECT_EQ(a[i].n, b[i].n);
            EXPECT_EQ(a[i].prefix, b[i].prefix);
        }
    }
}

TEST(Convergents, ExhaustedPrecisionThrows)
{
    auto coarse = [](Precision) { return RealBall::from_mid_rad(0.384973271918692, 1e-6, 64); };
    EXPECT_THROW(convergents(coarse, 1000000000ULL, {64, 256}), PrecisionExhausted);
    EXPECT_THROW(convergents(golden_fraction, 1), std::invalid_argument);
}

TEST(DAct, TableTruncations)
{
    for (auto const & r : kTable) {
        RealBall v = d_act_log(-3, 2, r.k, r.n, kPrec);
        EXPECT_DOUBLE_EQ(v.trunc_mid_1dp(), r.dact) << r.n;
    }
}

TEST(DAct, GuardsAndErrors)
{
    EXPECT_THROW(d_act_log(0, 2, 1, 4, kPrec), UndecidableError);
    EXPECT_THROW(d_act_log(-3, 2, 2, 10, kPrec), std::invalid_argument);
    // 2cos(2 pi/6) = 1 exactly
    EXPECT_THROW(d_act_log(2, 2, 1, 6, kPrec), UndecidableError);
}

TEST(DReq, FirstAndLastRows)
{
    RealBall first = d_req_log(2, 1291, g_deriv_lower_bound(1291, kPrec));
    EXPECT_EQ(first.trunc_mid(), -116);
    RealBall last = d_req_log(2, 17229981071ULL, g_deriv_lower_bound(17229981071ULL, kPrec));
    EXPECT_NEAR(last.mid_double() / -1438733756.0, 1.0, 1e-3);
}

TEST(DReq, WholeTableWithinOnePercent)
{
    for (auto const & r : kTable) {
        RealBall v = d_req_log(2, r.n, g_deriv_lower_bound(r.n, kPrec));
        EXPECT_NEAR(v.mid_double() / static_cast<double>(r.dreq), 1.0, 1e-2) << r.n;
        EXPECT_TRUE(certainly_less(v, d_act_log(-3, 2, r.k, r.n, kPrec))) << r.n;
    }
}

TEST(DReq, DecreasesInQ)
{
    for (std::uint64_t n = 31; n <= 2000; n += 7) {
        RealBall g = g_deriv_lower_bound(n, kPrec);
        RealBall prev = d_req_log(2, n, g);
        for (long q = 3; q <= 50; ++q) {
            RealBall cur = d_req_log(q, n, g);
            ASSERT_TRUE(certainly_less(cur, prev)) << n << " " << q;
            prev = cur;
        }
    }
    EXPECT_THROW(d_req_log(1, 100, RealBall(1, kPrec)), std::invalid_argument);
    EXPECT_THROW(d_req_log(2, 30, RealBall(1, kPrec)), std::invalid_argument);
}

TEST(RhsCheck, QTwoAbove1260)
{
    for (std::uint64_t n = 1261; n <= 5000; n += 3)
        ASSERT_TRUE(rhs_check(2, n)) << n;
}

TEST(RhsCheck, OtherQ)
{
    EXPECT_TRUE(rhs_check(3, 331));
    bool some_false = false;
    for (std::uint64_t n = 31; n <= 330 && !some_false; ++n)
        some_false = !rhs_check(3, n);
    EXPECT_TRUE(some_false);
    EXPECT_TRUE(rhs_check(21, 43));
}

TEST(NearestCoprime, Examples)
{
    EXPECT_EQ(nearest_coprime_k(-3, 2, 1291, kPrec), 497U);
    EXPECT_EQ(nearest_coprime_k(-3, 2, 10102, kPrec), 3889U);
    EXPECT_EQ(nearest_coprime_k(0, 2, 7, kPrec), 2U);
}

TEST(NearestCoprime, MatchesBruteForce)
{
    for (long p : {-3L, -1L, 1L, 3L, -5L, 7L})
        for (std::uint64_t n = 3; n <= 400; ++n) {
            long q = p == -5 || p == 7 ? 4 : 2;
            std::uint64_t best = 0;
            double best_d = 1e9;
            // exact ties: 2cos(2pi/5) + 2cos(4pi/5) = -1
            for (std::uint64_t k = 1; 2 * k < n; ++k) {
                if (arith::gcd(k, n) != 1)
                    continue;
                double d = std::fabs(static_cast<double>(p) / q - 2 * std::cos(2 * M_PI * k / n));
                if (d < best_d) {
                    best_d = d;
                    best = k;
                }
            }
            bool tie = (p == -1 && n == 5) || (p == 1 && n == 10);
            if (tie)
                ASSERT_THROW(nearest_coprime_k(p, q, n, kPrec), PrecisionExhausted);
            else
                ASSERT_EQ(nearest_coprime_k(p, q, n, kPrec), best) << p << "/" << q << " n=" << n;
        }
}
