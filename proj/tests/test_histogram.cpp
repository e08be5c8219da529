#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "qcite/histogram.hpp"
#include "qcite/io.hpp"

using namespace qcite;
using Catch::Approx;

namespace {
const std::filesystem::path kFixtures = QCITE_FIXTURES_DIR;

CitationHistogram from_string(const std::string& text,
                              const std::string& entity = "test") {
    std::istringstream in(text);
    return load_histogram(in, entity);
}
}  // namespace

TEST_CASE("CSV loading") {
    SECTION("basic file") {
        auto h = from_string("citations,count\n0,10\n1,5\n2,3\n");
        CHECK(h.total_papers() == 18);
        CHECK(h.count_at(0) == 10);
        CHECK(h.count_at(7) == 0);  // missing c means N(c)=0
        CHECK(h.entity == "test");
    }
    SECTION("CRLF endings") {
        auto h = from_string("citations,count\r\n0,10\r\n2,3\r\n");
        CHECK(h.total_papers() == 13);
    }
    SECTION("duplicate row is an error with its line number") {
        try {
            from_string("citations,count\n1,5\n2,3\n2,9\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
        }
    }
    SECTION("negative count") {
        CHECK_THROWS_AS(from_string("citations,count\n2,-3\n"), ParseError);
        CHECK_THROWS_AS(from_string("citations,count\n-2,3\n"), ParseError);
    }
    SECTION("malformed rows") {
        CHECK_THROWS_AS(from_string("citations,count\na,3\n"), ParseError);
        CHECK_THROWS_AS(from_string("citations,count\n3\n"), ParseError);
        CHECK_THROWS_AS(from_string("citations,count\n1,2,3\n"), ParseError);
        CHECK_THROWS_AS(from_string("count,citations\n1,2\n"), ParseError);
    }
    SECTION("empty data") {
        CHECK_THROWS_AS(from_string(""), ParseError);
        CHECK_THROWS_AS(from_string("citations,count\n"), DataError);
        CHECK_THROWS_AS(from_string("citations,count\n0,0\n1,0\n"), DataError);
    }
}

TEST_CASE("CSV writing round-trips and is byte-stable") {
    CitationHistogram h;
    h.entity = "w";
    h.counts = {{0, 10}, {2, 3}};
    std::ostringstream out;
    write_histogram_csv(h, out);
    CHECK(out.str() == "citations,count\n0,10\n2,3\n");
    auto back = from_string(out.str(), "w");
    CHECK(back.counts == h.counts);
}

TEST_CASE("summarize reproduces bundled country rows") {
    const auto rows = read_count_table(kFixtures / "table1.csv");
    REQUIRE(rows.size() == 13);
    for (const auto& row : rows) {
        const auto s = summarize(histogram_from_count_row(row));
        if (row.entity == "Italy") {
            CHECK(s.total_papers == 935769);
            CHECK(s.n0 == 279013);
            CHECK(s.pct0 == Approx(29.8).margin(0.05));
        }
        if (row.entity == "Romania") {
            CHECK(s.total_papers == 70126);
            CHECK(s.pct0 == Approx(52.1).margin(0.05));
        }
    }
}

TEST_CASE("summarize degenerate support") {
    CitationHistogram h;
    h.entity = "tiny";
    h.counts = {{0, 0}, {2, 4}};
    const auto s = summarize(h);
    CHECK(s.pct0 == 0.0);
    CHECK(s.pct2 == 100.0);
    CHECK(s.total_papers == 4);
}

TEST_CASE("aggregate") {
    const auto rows = read_count_table(kFixtures / "table1.csv");
    std::vector<CitationHistogram> hs;
    for (const auto& row : rows) hs.push_back(histogram_from_count_row(row));

    SECTION("all 13 countries sum to the published grand total") {
        CHECK(aggregate(hs, "All Countries").total_papers() == 3399572);
    }
    SECTION("aggregate of one histogram is that histogram") {
        auto a = aggregate(std::span(hs.data(), 1), hs[0].entity);
        CHECK(a.counts == hs[0].counts);
    }
    SECTION("disjoint supports take the union") {
        CitationHistogram x, y;
        x.entity = "x";
        x.counts = {{0, 1}, {2, 2}};
        y.entity = "y";
        y.counts = {{5, 7}};
        std::vector<CitationHistogram> both{x, y};
        auto a = aggregate(both, "xy");
        CHECK(a.counts == std::map<std::int64_t, std::int64_t>{
                              {0, 1}, {2, 2}, {5, 7}});
    }
    SECTION("empty list rejected") {
        std::vector<CitationHistogram> none;
        CHECK_THROWS_AS(aggregate(none, "none"), DataError);
    }
}

TEST_CASE("aggregate then summarize equals summing summaries") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> cd(0, 40), nd(0, 1000);
    std::vector<CitationHistogram> hs;
    for (int i = 0; i < 6; ++i) {
        CitationHistogram h;
        h.entity = "e" + std::to_string(i);
        for (int j = 0; j < 25; ++j) h.counts[cd(rng)] += nd(rng);
        hs.push_back(std::move(h));
    }
    std::int64_t total = 0, n0 = 0, n1 = 0, n2 = 0;
    for (const auto& h : hs) {
        const auto s = summarize(h);
        total += s.total_papers;
        n0 += s.n0;
        n1 += s.n1;
        n2 += s.n2;
    }
    const auto sa = summarize(aggregate(hs, "agg"));
    CHECK(sa.total_papers == total);
    CHECK(sa.n0 == n0);
    CHECK(sa.n1 == n1);
    CHECK(sa.n2 == n2);
    CHECK(sa.pct0 == Approx(100.0 * double(n0) / double(total)).epsilon(1e-12));
}

TEST_CASE("percentages over the full support sum to 100") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> cd(0, 60), nd(1, 500);
    for (int trial = 0; trial < 20; ++trial) {
        CitationHistogram h;
        h.entity = "p";
        for (int j = 0; j < 30; ++j) h.counts[cd(rng)] += nd(rng);
        const double total = double(h.total_papers());
        double pct_sum = 0.0;
        for (const auto& [c, n] : h.counts) pct_sum += 100.0 * double(n) / total;
        CHECK(pct_sum == Approx(100.0).margin(1e-9));
    }
}

TEST_CASE("fit_view") {
    FitConfig cfg;
    SECTION("drops c < anchor and zero-count bins") {
        CitationHistogram h;
        h.entity = "v";
        h.counts = {{0, 9}, {1, 8}, {2, 7}, {3, 6}, {4, 0}, {5, 4}};
        cfg.min_fit_points = 3;
        const auto view = fit_view(h, cfg);
        REQUIRE(view.size() == 3);
        CHECK(view[0].c == 2);
        CHECK(view[1].c == 3);
        CHECK(view[2].c == 5);
    }
    SECTION("too few points") {
        CitationHistogram h;
        h.entity = "small";
        h.counts = {{0, 9}, {1, 8}};
        CHECK_THROWS_AS(fit_view(h, cfg), InsufficientDataError);
    }
    SECTION("dense support 2..10000") {
        CitationHistogram h;
        h.entity = "dense";
        for (std::int64_t c = 2; c <= 10000; ++c) h.counts[c] = 1;
        CHECK(fit_view(h, cfg).size() == 9999);
    }
    SECTION("output sorted, positive, at or above anchor") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::int64_t> cd(0, 100), nd(0, 5);
        for (int trial = 0; trial < 25; ++trial) {
            CitationHistogram h;
            h.entity = "r";
            for (int j = 0; j < 60; ++j) h.counts[cd(rng)] += nd(rng);
            cfg.min_fit_points = 2;
            std::vector<FitPoint> view;
            try {
                view = fit_view(h, cfg);
            } catch (const InsufficientDataError&) {
                continue;
            }
            for (std::size_t i = 0; i < view.size(); ++i) {
                CHECK(view[i].c >= cfg.anchor_c);
                CHECK(view[i].count > 0);
                if (i > 0) CHECK(view[i].c > view[i - 1].c);
            }
        }
    }
}
