#include "doctest.h"

#include <random>
#include <set>

#include "kron/construction.hpp"
#include "kron/sweep.hpp"

using namespace kron;

namespace {

// brute-force oracle: g of the full prefix via the public slow path
std::size_t brute_g(const PointSet& ps, std::size_t count, const MetricSpec& m) {
    std::set<Rat> keys;
    for (std::size_t a = 0; a < count; ++a) {
        std::size_t i = ps.index_of_slot(a);
        Rat best(-1);
        for (std::size_t b = 0; b < count; ++b) {
            if (a == b) continue;
            Rat k = distance_key(ps.point(i), ps.point(ps.index_of_slot(b)), m).value;
            if (best < 0 || k < best) best = k;
        }
        keys.insert(best);
    }
    return keys.size();
}

std::size_t brute_nn_index(const PointSet& ps, std::size_t count, std::size_t i,
                           const MetricSpec& m) {
    Rat best(-1);
    std::size_t best_j = 0;
    for (std::size_t b = 0; b < count; ++b) {
        std::size_t j = ps.index_of_slot(b);
        if (j == i) continue;
        Rat k = distance_key(ps.point(i), ps.point(j), m).value;
        if (best < 0 || k <= best) {
            best = k;
            best_j = j;
        }
    }
    return best_j;
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("depth_for_floor walks the denominators") {
    auto golden = CoefficientStream::parse("0;(1)");
    CHECK(depth_for_floor(golden, Int(100)) == 11);  // q_11 = 144 is the first > 100
    CHECK(depth_for_floor(golden, Int(0)) == 0);     // q_0 = 1 already exceeds 0
    auto term = CoefficientStream::parse("0;2,3");
    CHECK(depth_for_floor(term, Int(1000000)) == 2);  // capped at the stream length
}

TEST_CASE("realize_streams enforces the truncation floor") {
    auto golden = CoefficientStream::parse("0;(1)");
    DepthPolicy shallow;
    shallow.fixed = 8;  // q_8 = 34 < 500 <= 500^2
    CHECK_THROWS_AS(realize_streams({golden}, 500, shallow), StabilityError);
    try {
        realize_streams({golden}, 500, shallow);
    } catch (const StabilityError& e) {
        auto conv = convergents(golden, e.suggested_depth);
        CHECK(conv.back().q > 250000);
    }
    Realized auto_real = realize_streams({golden}, 100, {});
    auto conv = convergents(golden, auto_real.depth[0]);
    CHECK(conv.back().q > 10000);

    // a terminating stream realized in full is exact and exempt
    auto term = CoefficientStream::parse("0;2,3,4");
    DepthPolicy full;
    full.fixed = 3;
    Realized r = realize_streams({term}, 500, full);
    CHECK(r.alpha[0] == value_of(term, 3));
}

TEST_CASE("incremental engine agrees with the brute-force oracle") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> dim(1, 3), den(5, 60), nmax(5, 28);
    for (int trial = 0; trial < 30; ++trial) {
        int d = dim(rng);
        std::vector<Rat> alpha;
        for (int j = 0; j < d; ++j) {
            int q = den(rng);
            alpha.emplace_back(std::uniform_int_distribution<int>(1, q - 1)(rng), q);
        }
        std::size_t n = nmax(rng);
        PointSet ps(alpha, n, 1);
        std::vector<MetricSpec> metrics{MetricSpec::l1(), MetricSpec::l2(), MetricSpec::linf()};
        NNSweep engine(ps, metrics);
        while (!engine.done()) {
            engine.step();
            std::size_t count = engine.points_added();
            if (count < 2) continue;
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                CHECK(engine.g(mi) == brute_g(ps, count, metrics[mi]));
                for (std::size_t t = 0; t < count; ++t) {
                    CHECK(engine.nn_of_slot(mi, t) ==
                          brute_nn_index(ps, count, ps.index_of_slot(t), metrics[mi]));
                }
            }
        }
    }
}

TEST_CASE("window labels partition the ledger ranges") {
    std::vector<Int> qs{Int(3), Int(7), Int(17)};
    CHECK(window_label(qs, 2) == "");
    CHECK(window_label(qs, 4) == "W2");
    CHECK(window_label(qs, 6) == "W2");
    CHECK(window_label(qs, 7) == "W1");
    CHECK(window_label(qs, 8) == "W2");
    CHECK(window_label(qs, 14) == "W2");
    CHECK(window_label(qs, 15) == "W1");
    CHECK(window_label(qs, 17) == "W1");
    CHECK(window_label(qs, 18) == "W2");
    CHECK(window_label(qs, 34) == "W2");
    CHECK(window_label(qs, 35) == "");  // no successor entry bounds this range
}

TEST_CASE("sweep table on the golden pair") {
    auto pair = simple_pair(CoefficientStream::parse("0;(1)"), 16);
    std::vector<Int> qs;
    for (const auto& e : pair.ledger) qs.push_back(e.q);
    auto table = sweep(pair.streams, qs, 40, {MetricSpec::l2()}, 1, {}, true);
    CHECK(table.stability_checked);
    CHECK(table.dimension == 2);
    REQUIRE(table.rows.size() == 39);
    Realized real = realize_streams(pair.streams, 40, {});
    PointSet ps(real.alpha, 40, 1);
    for (const auto& row : table.rows) {
        CHECK(row.g[0] == brute_g(ps, row.n, MetricSpec::l2()));
        CHECK(row.g[0] >= 1);
        CHECK(row.g[0] <= 3);
    }
    // h1 column: nn offset of z_1 within the growing prefix
    CHECK(table.rows[0].h1 == 1);  // N=2
    std::string csv = table.csv();
    CHECK(csv.rfind("N,g_L2,h1,window\n", 0) == 0);
}

TEST_CASE("sweep is invariant under the index base") {
    auto pair = simple_pair(CoefficientStream::parse("0;1,(2)"), 12);
    std::vector<Int> qs;
    for (const auto& e : pair.ledger) qs.push_back(e.q);
    std::vector<MetricSpec> ms{MetricSpec::l1(), MetricSpec::linf()};
    auto t1 = sweep(pair.streams, qs, 30, ms, 1, {}, false);
    auto t0 = sweep(pair.streams, qs, 30, ms, 0, {}, false);
    // count-for-count, the base-0 prefix is a translate of the base-1 one
    for (std::size_t i = 0; i < t1.rows.size(); ++i) {
        CHECK(t0.rows[i].n == t1.rows[i].n);
        CHECK(t0.rows[i].g == t1.rows[i].g);
    }
}

TEST_CASE("sweep results are stable under truncation deepening") {
    auto pair = simple_pair(CoefficientStream::parse("0;1,(2)"), 12);
    std::vector<Int> qs;
    for (const auto& e : pair.ledger) qs.push_back(e.q);
    auto shallow = sweep(pair.streams, qs, 25, {MetricSpec::l2()}, 1, {}, true);
    DepthPolicy deeper;
    deeper.fixed = shallow.depths[0] + 6;
    auto deep = sweep(pair.streams, qs, 25, {MetricSpec::l2()}, 1, deeper, true);
    for (std::size_t i = 0; i < shallow.rows.size(); ++i)
        CHECK(shallow.rows[i].g == deep.rows[i].g);
}

TEST_CASE("stability check passes at policy depth and fails under-truncated") {
    auto pair = simple_pair(CoefficientStream::parse("0;(1)"), 12);
    CHECK(stability_check(pair.streams, 150, {MetricSpec::l2()}, 26));
    // q_6 = 13 < 150: the truncated orbit closes up and the records drift
    CHECK_FALSE(stability_check(pair.streams, 150, {MetricSpec::l2()}, 6));
    auto detail = stability_check_detail(pair.streams, 150, {MetricSpec::l2()},
                                         std::vector<std::size_t>{6, 6});
    CHECK_FALSE(detail.ok);
    CHECK(detail.first_divergence_n > 0);

    // terminating streams are exact at full depth: trivially stable
    std::vector<CoefficientStream> rational{CoefficientStream::parse("0;3,2,4"),
                                            CoefficientStream::parse("0;2,5")};
    CHECK(stability_check(rational, 60, {MetricSpec::l2()}, 10));
}

TEST_CASE("stability at depth 25 vs 27 over a long pair sweep") {
    auto pair = simple_pair(CoefficientStream::parse("0;1,(2)"), 12);
    CHECK(stability_check(pair.streams, 500, {MetricSpec::l2()}, 25));
}

TEST_CASE("sweep table JSON round trip") {
    auto pair = simple_pair(CoefficientStream::parse("0;1,(2)"), 8);
    std::vector<Int> qs;
    for (const auto& e : pair.ledger) qs.push_back(e.q);
    auto table = sweep(pair.streams, qs, 20, {MetricSpec::l1(), MetricSpec::l2()}, 1, {}, false);
    auto j = table.to_json();
    auto back = SweepTable::from_json(j);
    CHECK(back.dimension == table.dimension);
    CHECK(back.metrics == table.metrics);
    CHECK(back.ledger_qs == table.ledger_qs);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
        CHECK(back.rows[i].n == table.rows[i].n);
        CHECK(back.rows[i].g == table.rows[i].g);
        CHECK(back.rows[i].h1 == table.rows[i].h1);
        CHECK(back.rows[i].window == table.rows[i].window);
    }
}

TEST_SUITE_END();
