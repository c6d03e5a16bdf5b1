#include "doctest.h"

#include <random>

#include "kron/verify.hpp"

using namespace kron;

TEST_SUITE_BEGIN("verify");

TEST_CASE("three-gap check passes on classic rotations") {
    auto golden_angle = CoefficientStream::parse("0;2,(1)");
    auto rep = check_three_gap(golden_angle, 200);
    CHECK(rep.verdict == CheckReport::Verdict::pass);
    CHECK(rep.instances == 200);

    auto quarter = CoefficientStream::parse("0;4");
    CHECK(check_three_gap(quarter, 20).passed());

    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> coeff(1, 9);
    for (int t = 0; t < 30; ++t) {
        std::vector<Int> c;
        for (int i = 0; i < 15; ++i) c.emplace_back(coeff(rng));
        auto rep2 = check_three_gap(CoefficientStream::terminating(c), 60);
        CHECK(rep2.passed());
    }
}

TEST_CASE("shift covariance of the counting metric") {
    auto rational = check_lemma_part1(
        {CoefficientStream::parse("0;4"), CoefficientStream::parse("0;3")}, 30,
        MetricSpec::l2());
    CHECK(rational.passed());

    auto pair = simple_pair(CoefficientStream::parse("0;(1)"), 16);
    auto golden = check_lemma_part1(pair.streams, 120, MetricSpec::l2());
    CHECK(golden.verdict == CheckReport::Verdict::pass);
    CHECK(golden.instances > 0);

    auto vac = check_lemma_part1(pair.streams, 2, MetricSpec::l2());
    CHECK(vac.verdict == CheckReport::Verdict::vacuous);
}

TEST_CASE("common-denominator jump across metrics") {
    std::vector<MetricSpec> ms{MetricSpec::l1(), MetricSpec::l2(), MetricSpec::linf()};

    auto pair = simple_pair(CoefficientStream::parse("0;1,(2)"), 12);
    auto rep = check_lemma_part2(pair, ms, Int(20));
    CHECK(rep.verdict == CheckReport::Verdict::pass);
    CHECK(rep.instances == 9);  // q = 3, 7, 17 under three metrics

    auto triple = construct_3d(
        CoefficientStream::parse("0;1,2,2"),
        [] {
            ConstructionSchedule s;
            s.k = {3, 6};
            s.free_coefficients = {{4, Int(2)}, {5, Int(2)}};
            return s;
        }());
    auto rep3 = check_lemma_part2(triple, ms, Int(200));
    CHECK(rep3.verdict == CheckReport::Verdict::pass);
    CHECK(rep3.instances == 6);  // q = 7, 99

    auto vac = check_lemma_part2(pair, ms, Int(2));
    CHECK(vac.verdict == CheckReport::Verdict::vacuous);
}

TEST_CASE("pair windows: golden alpha asserts only the coarse bound") {
    auto wr = check_theorem1(CoefficientStream::parse("0;(1)"), 80,
                             {MetricSpec::l2()});
    CHECK_FALSE(wr.coefficient_condition);
    CHECK(wr.summary.passed());
    for (const auto& row : wr.table.rows) {
        CHECK(row.g[0] >= 1);
        CHECK(row.g[0] <= 3);
    }
}

TEST_CASE("pair windows: observed structure differs from the predicted one "
          "exactly at the doubled denominator") {
    // brute-force ground truth (confirmed by the sweep oracle): for
    // alpha_1 = [0;1,2,2,...] the two-distance range is {q+1..2q-1} and the
    // one-distance range is {2q..q'}; the predicted windows put N = 2q on
    // the two-distance side, so the check must fail there and only there.
    std::vector<MetricSpec> ms{MetricSpec::l1(), MetricSpec::l2(), MetricSpec::linf()};
    auto wr = check_theorem1(CoefficientStream::parse("0;1,(2)"), 120, ms);
    CHECK(wr.coefficient_condition);
    CHECK(wr.summary.verdict == CheckReport::Verdict::fail);

    // ledger q = 3, 7, 17, 41: windows within 120
    REQUIRE(wr.windows.size() >= 3);
    for (const auto& w : wr.windows) {
        std::size_t boundary = 2 * w.q.convert_to<std::size_t>();
        for (const auto& pm : w.per_metric) {
            if (boundary <= 120) {
                CHECK(pm.w2_bad_n == boundary);
                CHECK(pm.w2_bad_g == 1);  // observed one distance at N = 2q
            } else {
                CHECK(pm.w2_bad_n == 0);  // boundary beyond the horizon
            }
            CHECK(pm.w1_bad_n == 0);  // the one-distance window is clean
        }
    }

    // and the full g-course: 2 on {q+1..2q-1}, 1 on {2q..q'}
    auto g_at = [&](std::size_t n) { return wr.table.rows[n - 2].g[1]; };
    std::vector<std::size_t> qs{3, 7, 17, 41};
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        for (std::size_t n = qs[i] + 1; n <= 2 * qs[i] - 1; ++n) CHECK(g_at(n) == 2);
        for (std::size_t n = 2 * qs[i]; n <= qs[i + 1]; ++n) CHECK(g_at(n) == 1);
    }
    for (std::size_t n = 2; n <= 120; ++n) {
        CHECK(g_at(n) >= 1);
        CHECK(g_at(n) <= 2);
    }

    // the reported counterexample is confirmed by an independent
    // brute-force spectrum at that N
    std::size_t bad_n = wr.summary.counterexample.at("n").get<std::size_t>();
    Realized real = realize_streams(simple_pair(CoefficientStream::parse("0;1,(2)"), 8).streams,
                                    120, {});
    PointSet ps(real.alpha, 120, 1);
    PointSet prefix(real.alpha, bad_n, 1);
    CHECK(gap_spectrum(prefix, MetricSpec::l1()).g() ==
          wr.summary.counterexample.at("observed_g").get<std::size_t>());

    // predicted windows tile {q+1..q'} with no overlap and no gap
    for (const auto& w : wr.windows) {
        CHECK(w.w2_lo == w.q.convert_to<std::size_t>() + 1);
        if (w.w1_lo <= w.w1_hi) CHECK(w.w1_lo == w.w2_hi + 1);
    }
    for (std::size_t i = 0; i + 1 < wr.windows.size(); ++i)
        CHECK(wr.windows[i + 1].w2_lo == wr.windows[i].w1_hi + 1);
}

TEST_CASE("closest-points chain") {
    CHECK(check_asmallest(CoefficientStream::parse("0;(1)"), 6, 2000).verdict ==
          CheckReport::Verdict::pass);
    CHECK(check_asmallest(CoefficientStream::parse("0;1,(2)"), 6, 5000).passed());
    CHECK(check_asmallest(CoefficientStream::parse("0;(3)"), 6, 5000).passed());

    // silver ratio, level 1: chain indices 5, 2, 3, 4 cover the whole range
    auto rep = check_asmallest(CoefficientStream::parse("0;(2)"), 1, 100);
    CHECK(rep.verdict == CheckReport::Verdict::pass);
    CHECK(rep.instances == 1);

    // a terminating stream checked past its exact levels is vacuous
    auto vac = check_asmallest(CoefficientStream::parse("0;2,3"), 6, 100);
    CHECK(vac.verdict == CheckReport::Verdict::vacuous);
}

TEST_CASE("random streams satisfy the closest-points chain") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> coeff(1, 9);
    for (int t = 0; t < 20; ++t) {
        std::vector<Int> c;
        for (int i = 0; i < 14; ++i) c.emplace_back(coeff(rng));
        auto rep = check_asmallest(CoefficientStream::terminating(c), 6, 20000);
        CHECK(rep.passed());
    }
}

TEST_CASE("Euclidean bound check over recorded sweeps") {
    auto pair = simple_pair(CoefficientStream::parse("0;1,(2)"), 12);
    std::vector<Int> qs;
    for (const auto& e : pair.ledger) qs.push_back(e.q);
    auto t2 = sweep(pair.streams, qs, 40, {MetricSpec::l2()}, 1, {}, false);

    auto gaps1d = sweep({CoefficientStream::parse("0;2,(1)")}, {}, 40,
                        {MetricSpec::l2()}, 1, {}, false);

    auto rep = check_upper_bounds({t2, gaps1d});
    CHECK(rep.verdict == CheckReport::Verdict::pass);
    CHECK(rep.instances == 78);

    CHECK(check_upper_bounds({}).verdict == CheckReport::Verdict::vacuous);

    SweepTable fake = t2;
    fake.rows[5].g[0] = 99;
    auto bad = check_upper_bounds({fake});
    CHECK(bad.verdict == CheckReport::Verdict::fail);
    CHECK(bad.counterexample.at("observed_g").get<std::size_t>() == 99);
}

TEST_CASE("reports serialize without timing by default") {
    auto rep = check_three_gap(CoefficientStream::parse("0;4"), 10);
    auto j = rep.to_json();
    CHECK_FALSE(j.contains("runtime_ms"));
    CHECK(j.at("verdict") == "pass");
    auto jt = rep.to_json(true);
    CHECK(jt.contains("runtime_ms"));
}

TEST_SUITE_END();
