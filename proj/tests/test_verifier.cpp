#include "primdiv/verifier.hpp"

#include "primdiv/arith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace primdiv;
using namespace primdiv::verifier;

namespace {

void expect_partition(VerificationReport const & r)
{
    ASSERT_FALSE(r.ranges.empty());
    EXPECT_EQ(r.ranges.front().lo, 30U);
    EXPECT_EQ(r.ranges.back().hi, r.n_cap);
    for (std::size_t i = 0; i < r.ranges.size(); ++i) {
        EXPECT_LT(r.ranges[i].lo, r.ranges[i].hi);
        if (i > 0)
            EXPECT_EQ(r.ranges[i].lo, r.ranges[i - 1].hi);
    }
}

} // namespace

TEST(Table2, ComputedMatchesTabulated)
{
    std::vector<std::pair<long, std::uint64_t>> const expected = {
        {2, 1260}, {3, 330}, {4, 210}, {5, 120}, {6, 90}, {7, 78}, {8, 66}, {9, 60}, {10, 60}, {11, 60},
        {12, 42},  {16, 42}, {20, 42}, {21, 30}, {35, 30}, {50, 30}, {3000, 30}};
    for (auto [q, nq] : expected) {
        EXPECT_EQ(compute_nq(q), nq) << q;
        EXPECT_EQ(tabulated_nq(q), nq) << q;
    }
}

TEST(Table2, SelfConsistentAndMonotone)
{
    std::uint64_t prev = compute_nq(2);
    for (long q = 2; q <= 100; ++q) {
        std::uint64_t nq = compute_nq(q);
        ASSERT_LE(nq, prev) << q;
        prev = nq;
        if (q <= 21)
            for (std::uint64_t j = 1; j <= 50; ++j)
                ASSERT_TRUE(realcf::rhs_check(q, nq + j)) << q << " " << j;
    }
}

TEST(RhsTail, AnalyticAndExplicit)
{
    EXPECT_TRUE(analytic_rhs_tail(3500, kFullCap));
    EXPECT_THROW(analytic_rhs_tail(3000, 4000), std::invalid_argument);
    EXPECT_TRUE(rhs_tail_certified(2, kFullCap));
    EXPECT_TRUE(rhs_tail_certified(7, 100000));
    EXPECT_TRUE(rhs_tail_certified(2, 1000));
}

TEST(Table1, Rows)
{
    auto rows = table1();
    ASSERT_EQ(rows.size(), 22U);
    EXPECT_EQ(rows[0].k, 497U);
    EXPECT_EQ(rows[0].n, 1291U);
    EXPECT_EQ(rows[0].d_req_log->trunc_mid(), -116);
    EXPECT_DOUBLE_EQ(rows[0].d_act_log->trunc_mid_1dp(), -12.6);
    EXPECT_EQ(rows[4].k, 52212U);
    EXPECT_EQ(rows[4].n, 135625U);
    EXPECT_EQ(rows[4].d_req_log->round_mid(), -8207);
    EXPECT_EQ(rows.back().d_req_log->round_mid(), -1438733756);
    EXPECT_DOUBLE_EQ(rows[4].d_act_log->trunc_mid_1dp(), -22.1);
    EXPECT_EQ(rows[9].k, 870393U);
    EXPECT_DOUBLE_EQ(rows[9].d_act_log->trunc_mid_1dp(), -28.3);
    for (auto const & r : rows)
        EXPECT_EQ(r.verdict, realcf::Verdict::Refuted) << r.n;
    RealBall margin = *rows[0].d_act_log - *rows[0].d_req_log;
    EXPECT_NEAR(margin.mid_double(), 103.9, 1.0);
}

TEST(VerifyPair, FourQTwoPairs)
{
    for (long p : {-3L, -1L, 1L, 3L}) {
        auto r = verify_pair(p, 2);
        EXPECT_EQ(r.conclusion.kind, ConclusionKind::AllPrimitiveAboveThirty) << p << " " << r.conclusion.reason;
        EXPECT_FALSE(r.partial());
        expect_partition(r);
        for (auto const & row : r.convergent_rows) {
            EXPECT_GT(row.n, kConvergentFloor);
            ASSERT_TRUE(row.d_act_log && row.d_req_log);
            EXPECT_TRUE(certainly_greater(*row.d_act_log, *row.d_req_log));
        }
        if (p == -3) {
            ASSERT_EQ(r.convergent_rows.size(), 22U);
            EXPECT_EQ(r.convergent_rows.back().n, 17229981071ULL);
        }
    }
}

TEST(VerifyPair, SmallIndexExceptionsAreInformational)
{
    auto r = verify_pair(-3, 2, 2000);
    // the classical list for (1 +- sqrt(-7))/2
    EXPECT_EQ(r.exceptions_found, (std::vector<std::uint64_t>{2, 3, 5, 7, 8, 12, 13, 18, 30}));
}

TEST(VerifyPair, CapHonoured)
{
    auto r = verify_pair(1, 2, 1000000);
    expect_partition(r);
    EXPECT_TRUE(r.all_ranges_pass());
    EXPECT_TRUE(r.partial());
    EXPECT_EQ(r.conclusion.kind, ConclusionKind::Inconclusive);
    for (auto const & row : r.convergent_rows)
        EXPECT_LE(row.n, 1000000U);

    auto small = verify_pair(-5, 3, 200);
    expect_partition(small);
    EXPECT_EQ(small.ranges.back().hi, 200U);
    EXPECT_TRUE(small.partial());
    EXPECT_THROW(verify_pair(1, 2, 30), std::invalid_argument);
    EXPECT_THROW(verify_pair(0, 2), PairError);
}

TEST(VerifyPair, MethodsByRange)
{
    auto r = verify_pair(-5, 3);
    ASSERT_EQ(r.ranges.size(), 3U);
    EXPECT_EQ(r.ranges[0].method, Method::StewartScreen);
    EXPECT_EQ(r.ranges[0].hi, 330U);
    EXPECT_EQ(r.ranges[1].method, Method::RhsInequality);
    EXPECT_EQ(r.ranges[1].hi, 1260U);
    EXPECT_EQ(r.ranges[2].method, Method::ConvergentCheck);
    EXPECT_EQ(r.conclusion.kind, ConclusionKind::AllPrimitiveAboveThirty);
    auto big = verify_pair(7, 25);
    ASSERT_EQ(big.ranges.size(), 2U);
    EXPECT_EQ(big.ranges[0].method, Method::RhsInequality);
}

TEST(Screen, NeverContradictsDefinition)
{
    for (long q = 2; q <= 5; ++q)
        for (auto const & pair : pairs_for_q(q))
            for (std::uint64_t n = 31; n <= 330; ++n)
                if (stewart_screen(pair, n) == ScreenResult::CertifiedPrimitive)
                    ASSERT_TRUE(has_primitive_divisor(pair, n)) << pair.p << "," << pair.q << " n=" << n;
}

TEST(Scan, PairCountsAndOrder)
{
    auto two = pairs_for_q(2);
    ASSERT_EQ(two.size(), 4U);
    std::vector<long> ps;
    for (auto const & s : pairs_for_q(3))
        ps.push_back(s.p);
    EXPECT_EQ(ps, (std::vector<long>{-5, -4, -2, -1, 1, 2, 4, 5}));

    auto reports = scan(2, 3, 100000, 3);
    ASSERT_EQ(reports.size(), 12U);
    for (std::size_t i = 1; i < reports.size(); ++i) {
        auto const & a = reports[i - 1].pair;
        auto const & b = reports[i].pair;
        EXPECT_TRUE(a.q < b.q || (a.q == b.q && a.p < b.p));
    }
    for (auto const & r : reports) {
        EXPECT_TRUE(r.partial()) << r.pair.p << "," << r.pair.q;
        expect_partition(r);
    }
    auto again = scan(2, 3, 100000, 1);
    for (std::size_t i = 0; i < reports.size(); ++i)
        EXPECT_EQ(reports[i].convergent_rows.size(), again[i].convergent_rows.size());
    EXPECT_THROW(scan(3, 2), std::invalid_argument);
}

TEST(Lemma10, DirectRoute)
{
    for (std::uint64_t n = 31; n <= 210; ++n) {
        auto c = lemma10_certify(n);
        ASSERT_EQ(c.route, Lemma10Route::Direct);
        ASSERT_TRUE(c.pass) << n;
    }
    for (std::uint64_t n : {231U, 462U}) {
        auto c = lemma10_certify(n);
        EXPECT_EQ(c.route, Lemma10Route::Direct);
        EXPECT_TRUE(c.pass) << n;
    }
}

TEST(Lemma10, GeneralRouteSample)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> u(211, 5000);
    std::vector<std::uint64_t> ns = {211, 330, 1155, 2310, 4620, 5000};
    for (int i = 0; i < 60; ++i)
        ns.push_back(u(rng));
    for (auto n : ns) {
        auto c = lemma10_certify(n, Lemma10Route::General);
        EXPECT_TRUE(c.c_below_one) << n;
        EXPECT_TRUE(c.pass) << n;
    }
}

TEST(Lemma10, Cardinalities)
{
    for (std::uint64_t n = 31; n <= 600; ++n) {
        auto c = lemma10_certify(n, Lemma10Route::General);
        ASSERT_EQ(c.a + c.b + c.c + c.d, arith::phi(n) / 2) << n;
        ASSERT_EQ(c.a, arith::phi_interval(6, 2, n));
        ASSERT_EQ(c.d, arith::phi_interval(6, 0, n));
        ASSERT_EQ(c.c_values.size(), 4U);
        ASSERT_TRUE(c.rhs_log.overlaps(RealBall::from_u64(arith::phi(n) / 2, 128)
                                       * log(RealBall::rational(5, 3, 128))));
    }
    EXPECT_THROW(lemma10_certify(30), std::invalid_argument);
}
