#include "primdiv/verifier.hpp"

#include "primdiv/arith.hpp"
#include "primdiv/bounds.hpp"
#include "primdiv/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace primdiv::verifier {

std::string to_string(Method m)
{
    switch (m) {
    case Method::DirectDefinition:
        return "DirectDefinition";
    case Method::StewartScreen:
        return "StewartScreen";
    case Method::RhsInequality:
        return "RhsInequality";
    case Method::ConvergentCheck:
        return "ConvergentCheck";
    }
    return "?";
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::Pass:
        return "Pass";
    case Outcome::Fail:
        return "Fail";
    case Outcome::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

std::string to_string(ConclusionKind c)
{
    switch (c) {
    case ConclusionKind::AllPrimitiveAboveThirty:
        return "AllPrimitiveAboveThirty";
    case ConclusionKind::ExceptionFound:
        return "ExceptionFound";
    case ConclusionKind::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

bool VerificationReport::all_ranges_pass() const
{
    return !ranges.empty()
           && std::all_of(ranges.begin(), ranges.end(), [](RangeRecord const & r) { return r.outcome == Outcome::Pass; });
}

std::uint64_t tabulated_nq(long q)
{
    if (q < 2)
        throw std::invalid_argument("tabulated_nq: q must be >= 2");
    static constexpr std::uint64_t small[] = {1260, 330, 210, 120, 90, 78, 66};
    if (q <= 8)
        return small[q - 2];
    if (q <= 11)
        return 60;
    if (q <= 20)
        return 42;
    return 30;
}

namespace {

std::mutex memo_mutex;
std::map<long, std::uint64_t> nq_memo;
std::map<long, bool> explicit_tail_memo;
std::map<std::uint64_t, bool> analytic_memo;

constexpr std::uint64_t kAnalyticFrom = 3500;

unsigned max_omega_up_to(std::uint64_t b)
{
    unsigned w = 0;
    unsigned __int128 primorial = 1;
    for (std::uint64_t p = 2;; ++p) {
        if (!arith::is_prime(p))
            continue;
        primorial *= p;
        if (primorial > b)
            return w;
        ++w;
    }
}

bool separated_above(RealBall const & act, RealBall const & req)
{
    Comparison c = compare(act, req);
    if (c == Comparison::Undecidable)
        throw UndecidableError("d_act and d_req overlap");
    return c == Comparison::Greater;
}

// The coprime k nearest n*theta on each side; one of them minimizes |p/q - 2cos(2 pi k/n)|.
bool neighbours_refuted(long p, long q, std::uint64_t n, PrecisionPolicy const & policy)
{
    auto nb = realcf::coprime_neighbours(p, q, n, policy.start);
    for (auto k : {nb.below, nb.above}) {
        if (!k)
            continue;
        bool ok = with_escalation(policy, [&](Precision prec) {
            return separated_above(realcf::d_act_log(p, q, *k, n, prec),
                                   realcf::d_req_log(q, n, g_deriv_lower_bound(n, prec)));
        });
        if (!ok)
            return false;
    }
    return true;
}

struct RangeRun {
    Outcome outcome = Outcome::Pass;
    std::uint64_t exception = 0;
    std::string note;
};

RangeRun run_screen_range(SequenceTable & table, std::uint64_t lo, std::uint64_t hi)
{
    RangeRun r;
    std::uint64_t fallbacks = 0;
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
        if (stewart_screen(table.pair(), n) == ScreenResult::CertifiedPrimitive)
            continue;
        ++fallbacks;
        if (!has_primitive_divisor(table, n)) {
            r.outcome = Outcome::Fail;
            r.exception = n;
            r.note = "u_" + std::to_string(n) + " has no primitive divisor";
            return r;
        }
    }
    r.note = std::to_string(fallbacks) + " indices settled by the definition";
    return r;
}

RangeRun run_inequality_range(SequenceTable & table, std::uint64_t lo, std::uint64_t hi, Options const & options)
{
    RangeRun r;
    auto const & pair = table.pair();
    std::uint64_t fallbacks = 0;
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
        bool ok = false;
        try {
            ok = neighbours_refuted(pair.p, pair.q, n, options.precision);
        } catch (PrecisionExhausted const &) {
        }
        if (ok)
            continue;
        ++fallbacks;
        if (n > options.exact_fallback_limit) {
            r.outcome = Outcome::Inconclusive;
            r.note = "inequality failed at n=" + std::to_string(n);
            return r;
        }
        if (!has_primitive_divisor(table, n)) {
            r.outcome = Outcome::Fail;
            r.exception = n;
            r.note = "u_" + std::to_string(n) + " has no primitive divisor";
            return r;
        }
    }
    r.note = std::to_string(fallbacks) + " indices settled by the definition";
    return r;
}

RangeRun run_convergent_range(SequenceTable & table, std::uint64_t lo, std::uint64_t hi, Options const & options,
                              std::vector<realcf::ConvergentRecord> & rows)
{
    RangeRun r;
    auto const & pair = table.pair();
    if (!rhs_tail_certified(pair.q, hi, options.precision)) {
        r.outcome = Outcome::Inconclusive;
        r.note = "right-hand inequality not certified on the whole range";
        return r;
    }
    long const p = pair.p, q = pair.q;
    auto all = realcf::convergents([p, q](Precision prec) { return realcf::theta(p, q, prec); }, hi,
                                   options.precision);
    for (auto & row : all) {
        if (row.n <= lo || 2 * row.k >= row.n || row.k == 0)
            continue;
        assess(row, p, q, options.precision);
        if (row.verdict != realcf::Verdict::Refuted) {
            if (row.n > options.exact_fallback_limit) {
                r.outcome = Outcome::Inconclusive;
                r.note = "convergent n=" + std::to_string(row.n) + " not refuted";
            } else if (!has_primitive_divisor(table, row.n)) {
                r.outcome = Outcome::Fail;
                r.exception = row.n;
                r.note = "u_" + std::to_string(row.n) + " has no primitive divisor";
            }
        }
        rows.push_back(std::move(row));
        if (r.outcome == Outcome::Fail)
            return r;
    }
    if (r.outcome == Outcome::Pass)
        r.note = std::to_string(rows.size()) + " convergents checked";
    return r;
}

} // namespace

bool analytic_rhs_tail(std::uint64_t lo, std::uint64_t hi)
{
    if (lo < kAnalyticFrom)
        throw std::invalid_argument("analytic_rhs_tail: lo must be >= 3500");
    Precision const prec = 128;
    RealBall const eg = exp(RealBall::euler_gamma(prec));
    RealBall const rs = RealBall::rational(250637, 100000, prec);
    RealBall const l56 = log(RealBall::rational(5, 6, prec));
    for (std::uint64_t a = lo; a <= hi;) {
        std::uint64_t b = std::min(hi, a + std::max<std::uint64_t>(a / 128, 1));
        RealBall const fa = RealBall::from_u64(a, prec), fb = RealBall::from_u64(b, prec);
        RealBall const lb = log(fb);
        RealBall const phi_lo = fa / (eg * log(lb) + rs / log(log(fa)));
        unsigned const w = max_omega_up_to(b);
        RealBall const t = w <= 2 ? RealBall(2, prec) : RealBall::rational(1L << w, w, prec);
        RealBall const expr = l56 * phi_lo + (t + RealBall(8, prec)) * lb;
        if (!expr.is_negative())
            return false;
        if (b == hi)
            break;
        a = b + 1;
    }
    return true;
}

bool rhs_tail_certified(long q, std::uint64_t n_cap, PrecisionPolicy const & policy)
{
    if (n_cap <= kConvergentFloor)
        return true;
    std::optional<bool> explicit_ok, analytic_ok;
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = explicit_tail_memo.find(q); it != explicit_tail_memo.end())
            explicit_ok = it->second;
        if (auto it = analytic_memo.find(n_cap); it != analytic_memo.end())
            analytic_ok = it->second;
    }
    if (!explicit_ok) {
        bool ok = true;
        for (std::uint64_t n = kConvergentFloor + 1; n < kAnalyticFrom && ok; ++n)
            ok = realcf::rhs_check(q, n, policy);
        explicit_ok = ok;
        std::lock_guard lock(memo_mutex);
        explicit_tail_memo[q] = ok;
    }
    if (!*explicit_ok)
        return false;
    if (n_cap < kAnalyticFrom)
        return true;
    if (!analytic_ok) {
        analytic_ok = analytic_rhs_tail(kAnalyticFrom, n_cap);
        std::lock_guard lock(memo_mutex);
        analytic_memo[n_cap] = *analytic_ok;
    }
    return *analytic_ok;
}

std::uint64_t compute_nq(long q, PrecisionPolicy const & policy)
{
    if (q < 2)
        throw std::invalid_argument("compute_nq: q must be >= 2");
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = nq_memo.find(q); it != nq_memo.end())
            return it->second;
    }
    std::uint64_t nq = 30;
    for (std::uint64_t n = kConvergentFloor; n > 30; --n)
        if (!realcf::rhs_check(q, n, policy)) {
            nq = n;
            break;
        }
    if (nq > tabulated_nq(q))
        throw std::logic_error("compute_nq: q=" + std::to_string(q) + " gives " + std::to_string(nq)
                               + ", above the tabulated " + std::to_string(tabulated_nq(q)));
    std::lock_guard lock(memo_mutex);
    nq_memo[q] = nq;
    return nq;
}

void assess(realcf::ConvergentRecord & row, long p, long q, PrecisionPolicy const & policy)
{
    try {
        with_escalation(policy, [&](Precision prec) {
            RealBall act = realcf::d_act_log(p, q, row.k, row.n, prec);
            RealBall req = realcf::d_req_log(q, row.n, g_deriv_lower_bound(row.n, prec));
            Comparison c = compare(act, req);
            row.d_act_log = act;
            row.d_req_log = req;
            if (c == Comparison::Undecidable)
                throw UndecidableError("d_act and d_req overlap");
            row.verdict = c == Comparison::Greater ? realcf::Verdict::Refuted : realcf::Verdict::Violation;
            return 0;
        });
    } catch (PrecisionExhausted const &) {
        row.verdict = realcf::Verdict::Undecided;
    }
}

std::vector<realcf::ConvergentRecord> table1(PrecisionPolicy const & policy)
{
    auto all = realcf::convergents([](Precision prec) { return realcf::theta(-3, 2, prec); }, kFullCap, policy);
    std::vector<realcf::ConvergentRecord> rows;
    for (auto & row : all) {
        if (row.n <= kConvergentFloor)
            continue;
        assess(row, -3, 2, policy);
        rows.push_back(std::move(row));
    }
    return rows;
}

VerificationReport verify_pair(long p, long q, std::uint64_t n_cap, Options const & options)
{
    if (n_cap < 31)
        throw std::invalid_argument("verify_pair: n_cap must be >= 31");
    VerificationReport rep;
    rep.pair = make_pair(p, q);
    rep.height = bounds::height_quadratic_pair(p, q);
    rep.n_cap = n_cap;

    SequenceTable table(rep.pair);
    std::uint64_t const first = rep.pair.kind == SequenceKind::Lucas ? 2 : 3;
    rep.exceptions_found = enumerate_exceptions(rep.pair, first, 30);

    std::uint64_t const nq = std::min(compute_nq(q, options.precision), n_cap);
    std::uint64_t const mid = std::min(kConvergentFloor, n_cap);

    auto record = [&](std::uint64_t lo, std::uint64_t hi, Method m, RangeRun const & run) {
        rep.ranges.push_back({lo, hi, m, run.outcome, run.note});
        if (run.outcome == Outcome::Fail && rep.conclusion.kind != ConclusionKind::ExceptionFound)
            rep.conclusion = {ConclusionKind::ExceptionFound, run.exception, run.note};
    };
    if (nq > 30)
        record(30, nq, Method::StewartScreen, run_screen_range(table, 30, nq));
    if (mid > nq)
        record(nq, mid, Method::RhsInequality, run_inequality_range(table, nq, mid, options));
    if (n_cap > mid)
        record(mid, n_cap, Method::ConvergentCheck,
               run_convergent_range(table, mid, n_cap, options, rep.convergent_rows));

    if (rep.conclusion.kind == ConclusionKind::ExceptionFound)
        return rep;
    if (!rep.all_ranges_pass()) {
        for (auto const & r : rep.ranges)
            if (r.outcome != Outcome::Pass) {
                rep.conclusion = {ConclusionKind::Inconclusive, 0, r.note};
                break;
            }
    } else if (n_cap < kFullCap) {
        rep.conclusion = {ConclusionKind::Inconclusive, 0, "verified only up to n=" + std::to_string(n_cap)};
    } else {
        rep.conclusion = {ConclusionKind::AllPrimitiveAboveThirty, 0, ""};
    }
    return rep;
}

namespace {

struct Partition {
    std::vector<std::uint64_t> a, b, c, d;
};

Partition partition(std::uint64_t n)
{
    Partition part;
    for (std::uint64_t j = 1; 2 * j < n; ++j) {
        if (arith::gcd(j, n) != 1)
            continue;
        if (6 * j < n)
            part.d.push_back(j);
        else if (4 * j < n)
            part.c.push_back(j);
        else if (3 * j < n)
            part.b.push_back(j);
        else
            part.a.push_back(j);
    }
    return part;
}

} // namespace

Lemma10Certificate lemma10_certify(std::uint64_t n, Precision prec)
{
    bool const direct = n <= 210 || n == 231 || n == 462;
    return lemma10_certify(n, direct ? Lemma10Route::Direct : Lemma10Route::General, prec);
}

Lemma10Certificate lemma10_certify(std::uint64_t n, Lemma10Route route, Precision prec)
{
    if (n <= 30 || n > 1000000)
        throw std::invalid_argument("lemma10_certify: need 30 < n <= 10^6");
    Partition const part = partition(n);
    Lemma10Certificate cert;
    cert.n = n;
    cert.route = route;
    cert.a = part.a.size();
    cert.b = part.b.size();
    cert.c = part.c.size();
    cert.d = part.d.size();
    std::uint64_t const half = arith::phi(n) / 2;

    RealBall const one(1, prec);
    RealBall const ln2 = RealBall::log2_const(prec);
    RealBall const lnP = log(RealBall::from_u64(arith::stewart_prime_cap(n), prec));
    auto cos_of = [&](std::uint64_t j) {
        return cos_2pi_frac(static_cast<std::int64_t>(j), static_cast<std::int64_t>(n), prec);
    };
    // denominators s + t*cos(2 pi j/n) over the listed index sets
    auto dens = [&](std::initializer_list<std::vector<std::uint64_t> const *> sets, long s, long t) {
        std::vector<RealBall> out;
        for (auto const * set : sets)
            for (auto j : *set)
                out.push_back(RealBall(s, prec) + cos_of(j) * t);
        return out;
    };
    struct Case {
        std::vector<RealBall> den;
        std::uint64_t two_exp;
    };
    Case const cases[4] = {
        {dens({&part.c, &part.d}, 3, 4), cert.a + cert.b},
        {dens({&part.d}, 1, 4), cert.b + cert.c},
        {dens({&part.a}, 1, -4), cert.b + cert.c},
        {dens({&part.a, &part.b}, 3, -4), cert.c + cert.d},
    };

    cert.rhs_log = RealBall::from_u64(half, prec) * log(RealBall::rational(5, 3, prec));
    cert.c_below_one = true;
    std::optional<RealBall> lhs;
    for (auto const & cs : cases) {
        RealBall sum_log(0, prec);
        for (auto const & x : cs.den)
            sum_log += log(x);
        RealBall const log_c = (lnP - sum_log) / RealBall::from_u64(half - cs.den.size(), prec);
        RealBall const cv = exp(log_c);
        cert.c_values.push_back(cv);
        if (!log_c.is_negative())
            cert.c_below_one = false;
        RealBall f = RealBall::from_u64(cs.two_exp, prec) * ln2;
        if (route == Lemma10Route::Direct) {
            for (auto const & x : cs.den)
                f += log(one + cv / x);
        } else {
            f += RealBall::from_u64(cs.den.size(), prec) * log(RealBall::rational(4, 3, prec));
        }
        lhs = lhs ? max(*lhs, f) : f;
    }
    cert.lhs_max_log = *lhs;
    bool const below = certainly_less(cert.lhs_max_log, cert.rhs_log);
    cert.pass = route == Lemma10Route::Direct ? below : below && cert.c_below_one;
    return cert;
}

std::vector<SequencePair> pairs_for_q(long q)
{
    std::vector<SequencePair> out;
    for (long p = -2 * q + 1; p < 2 * q; ++p)
        try {
            out.push_back(make_pair(p, q));
        } catch (PairError const &) {
        }
    return out;
}

std::vector<VerificationReport> scan(long q_lo, long q_hi, std::uint64_t n_cap, unsigned parallelism,
                                     Options const & options)
{
    if (q_lo < 2 || q_lo > q_hi)
        throw std::invalid_argument("scan: need 2 <= q_lo <= q_hi");
    std::vector<SequencePair> work;
    for (long q = q_lo; q <= q_hi; ++q)
        for (auto const & s : pairs_for_q(q))
            work.push_back(s);
    std::vector<VerificationReport> out(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < work.size();) {
            try {
                out[i] = verify_pair(work[i].p, work[i].q, n_cap, options);
            } catch (std::exception const & e) {
                out[i] = VerificationReport{};
                out[i].pair = work[i];
                out[i].n_cap = n_cap;
                out[i].conclusion = {ConclusionKind::Inconclusive, 0, e.what()};
            }
        }
    };
    unsigned const threads = std::max(1U, std::min<unsigned>(parallelism, static_cast<unsigned>(work.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto & t : pool)
        t.join();
    return out;
}

} // namespace primdiv::verifier
