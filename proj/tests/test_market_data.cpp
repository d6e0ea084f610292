#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "hindsight/errors.hpp"
#include "hindsight/market_data.hpp"
#include "support/fixtures.hpp"

using namespace hindsight;

TEST_SUITE("market_data") {

TEST_CASE("parse_date accepts strict ISO-8601 and round-trips") {
    const Date d = parse_date("2015-07-01");
    CHECK(format_date(d) == "2015-07-01");
    CHECK(parse_date("1970-01-01").days == 0);
    CHECK(parse_date("1970-01-02").days == 1);
    CHECK(parse_date("2016-02-29").days > parse_date("2016-02-28").days);

    CHECK_THROWS_AS(static_cast<void>(parse_date("2015-13-01")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(parse_date("2015-02-30")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(parse_date("2015/02/03")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(parse_date("20150203")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(parse_date("")), ParseError);
}

TEST_CASE("dates order chronologically") {
    CHECK(parse_date("2015-01-02") < parse_date("2015-01-03"));
    CHECK(parse_date("2015-12-31") < parse_date("2016-01-01"));
}

TEST_CASE("universe id layout and settlement currencies") {
    AssetUniverse u(2, 3, {0, 1, 1}, {{0, "EUR"}, {2, "IDX"}});
    CHECK(u.n_investments() == 5);
    CHECK(u.is_currency(0));
    CHECK(u.is_currency(1));
    CHECK(u.is_asset(2));
    CHECK(u.is_asset(4));
    CHECK_FALSE(u.is_asset(5));
    CHECK(u.settlement_currency(0) == 0);
    CHECK(u.settlement_currency(1) == 1);
    CHECK(u.settlement_currency(2) == 0);
    CHECK(u.settlement_currency(3) == 1);
    CHECK(u.display_name(0) == "EUR");
    CHECK(u.display_name(2) == "IDX");

    CHECK_THROWS_AS(AssetUniverse(0, 0, {}), DomainError);
    CHECK_THROWS_AS(AssetUniverse(1, 2, {0}), DomainError);     // wrong map size
    CHECK_THROWS_AS(AssetUniverse(1, 1, {1}), DomainError);     // currency id out of range
}

TEST_CASE("load_quotes sorts rows ascending by date") {
    std::istringstream in("date,adj_close\n"
                          "2015-01-05,101.5\n"
                          "2015-01-02,100.0\n"
                          "2015-01-07,99.25\n");
    const QuoteSeries s = load_quotes(in, 3);
    REQUIRE(s.size() == 3);
    CHECK(s.instrument_id == 3);
    CHECK(format_date(s.dates[0]) == "2015-01-02");
    CHECK(format_date(s.dates[1]) == "2015-01-05");
    CHECK(format_date(s.dates[2]) == "2015-01-07");
    CHECK(s.values == std::vector<double>{100.0, 101.5, 99.25});
    CHECK(s.dropped_rows == 0);
}

TEST_CASE("load_quotes drops empty, null and non-positive values and counts them") {
    std::istringstream in("date,adj_close\n"
                          "2015-01-02,100.0\n"
                          "2015-01-03,\n"
                          "2015-01-04,null\n"
                          "2015-01-05,-3\n"
                          "2015-01-06,0\n"
                          "2015-01-07,105\n");
    const QuoteSeries s = load_quotes(in, 0);
    REQUIRE(s.size() == 2);
    CHECK(s.dropped_rows == 4);
    CHECK(s.values[1] == 105.0);
}

TEST_CASE("load_quotes accepts extra columns in any order, case-insensitive header") {
    std::istringstream in("Open,Adj Close,Date\n"
                          "1,100.5,2015-01-02\n"
                          "2,101.5,2015-01-03\n");
    const QuoteSeries s = load_quotes(in, 0);
    REQUIRE(s.size() == 2);
    CHECK(s.values[0] == 100.5);
}

TEST_CASE("load_quotes rejects degenerate inputs") {
    SUBCASE("header only") {
        std::istringstream in("date,adj_close\n");
        CHECK_THROWS_AS(static_cast<void>(load_quotes(in, 0)), ParseError);
    }
    SUBCASE("all rows dropped") {
        std::istringstream in("date,adj_close\n2015-01-02,null\n");
        CHECK_THROWS_AS(static_cast<void>(load_quotes(in, 0)), ParseError);
    }
    SUBCASE("missing required column") {
        std::istringstream in("date,close\n2015-01-02,100\n");
        CHECK_THROWS_AS(static_cast<void>(load_quotes(in, 0)), ParseError);
    }
    SUBCASE("malformed row names the line") {
        std::istringstream in("date,adj_close\n2015-01-02,100\nnot-a-date,101\n");
        try {
            static_cast<void>(load_quotes(in, 0, "fixture.csv"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("fixture.csv") != std::string::npos);
            CHECK(msg.find("3") != std::string::npos);
        }
    }
    SUBCASE("unparseable number") {
        std::istringstream in("date,adj_close\n2015-01-02,abc\n");
        CHECK_THROWS_AS(static_cast<void>(load_quotes(in, 0)), ParseError);
    }
    SUBCASE("duplicate dates") {
        std::istringstream in("date,adj_close\n2015-01-02,100\n2015-01-02,101\n");
        CHECK_THROWS_AS(static_cast<void>(load_quotes(in, 0)), ParseError);
    }
    SUBCASE("empty stream") {
        std::istringstream in("");
        CHECK_THROWS_AS(static_cast<void>(load_quotes(in, 0)), ParseError);
    }
}

namespace {

QuoteSeries series_of(int id, const std::vector<std::string>& dates,
                      const std::vector<double>& values) {
    QuoteSeries s;
    s.instrument_id = id;
    for (const auto& d : dates) s.dates.push_back(parse_date(d));
    s.values = values;
    return s;
}

} // namespace

TEST_CASE("align_calendar intersects calendars") {
    AssetUniverse u(1, 2, {0, 0});
    const auto a = series_of(1, {"2015-01-02", "2015-01-05", "2015-01-07"}, {10, 11, 12});
    const auto b = series_of(2, {"2015-01-05", "2015-01-07", "2015-01-08"}, {20, 21, 22});
    const MarketPanel panel = align_calendar(u, {a, b});
    REQUIRE(panel.n_times() == 2);
    CHECK(format_date(panel.dates[0]) == "2015-01-05");
    CHECK(format_date(panel.dates[1]) == "2015-01-07");
    CHECK(panel.prices[0] == std::vector<double>{11, 12});
    CHECK(panel.prices[1] == std::vector<double>{20, 21});
    CHECK(panel.fx_to_ref[0] == std::vector<double>{1.0, 1.0});
}

TEST_CASE("align_calendar passes a single 251-row series through unchanged") {
    AssetUniverse u(1, 1, {0});
    QuoteSeries s;
    s.instrument_id = 1;
    const Date start = parse_date("2015-07-01");
    for (int i = 0; i < 251; ++i) {
        s.dates.push_back(Date{start.days + i});
        s.values.push_back(100.0 + i);
    }
    const MarketPanel panel = align_calendar(u, {s});
    CHECK(panel.n_times() == 251);
    CHECK(panel.horizon() == 250);
}

TEST_CASE("align_calendar error cases") {
    AssetUniverse u(1, 2, {0, 0});
    const auto a = series_of(1, {"2015-01-02", "2015-01-05"}, {10, 11});
    const auto b = series_of(2, {"2016-03-01", "2016-03-02"}, {20, 21});

    SUBCASE("disjoint calendars list each series' span") {
        try {
            static_cast<void>(align_calendar(u, {a, b}));
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("2015-01-02") != std::string::npos);
            CHECK(msg.find("2016-03-02") != std::string::npos);
        }
    }
    SUBCASE("missing series") {
        CHECK_THROWS_AS(static_cast<void>(align_calendar(u, {a})), DomainError);
    }
    SUBCASE("duplicate series for one id") {
        CHECK_THROWS_AS(static_cast<void>(align_calendar(u, {a, a})), DomainError);
    }
    SUBCASE("series for an unknown id") {
        const auto c = series_of(9, {"2015-01-02"}, {10});
        CHECK_THROWS_AS(static_cast<void>(align_calendar(u, {a, c})), DomainError);
    }
}

TEST_CASE("align_calendar wires fx series to currencies and assets to price rows") {
    AssetUniverse u(2, 1, {1});
    const auto fx = series_of(1, {"2015-01-02", "2015-01-05"}, {1.1, 1.2});
    const auto asset = series_of(2, {"2015-01-02", "2015-01-05"}, {55.0, 60.0});
    const MarketPanel panel = align_calendar(u, {asset, fx});
    CHECK(panel.fx_to_ref[1] == std::vector<double>{1.1, 1.2});
    CHECK(panel.prices[0] == std::vector<double>{55.0, 60.0});
    CHECK(panel.price(2, 1) == 60.0);
}

TEST_CASE("normalize_prices rebases asset rows to 100") {
    auto panel = fixtures::make_panel(2, {0}, {{1.1, 1.2, 1.3}}, {{50.0, 55.0, 45.0}});
    const MarketPanel norm = normalize_prices(panel);
    CHECK(norm.prices[0] == std::vector<double>{100.0, 110.0, 90.0});
    CHECK(norm.fx_to_ref[1] == std::vector<double>{1.1, 1.2, 1.3});   // fx untouched

    SUBCASE("row already at 100 is identity") {
        const auto again = normalize_prices(norm);
        CHECK(again.prices[0] == norm.prices[0]);
    }
    SUBCASE("idempotent bitwise on arbitrary bases") {
        auto p = fixtures::make_panel(1, {0}, {}, {{97.3, 101.9, 84.2777}});
        const auto once = normalize_prices(p);
        const auto twice = normalize_prices(once);
        CHECK(once.prices[0] == twice.prices[0]);
        CHECK(once.prices[0][0] == 100.0);
    }
}

TEST_CASE("cross rates derive through the reference currency") {
    auto panel = fixtures::make_panel(3, {}, {{1.10, 1.10}, {120.0, 121.0}}, {});
    CHECK(panel.cross_rate(1, 2, 0) == doctest::Approx(109.090909090909).epsilon(1e-12));
    CHECK(panel.cross_rate(0, 1, 0) == 1.10);
    CHECK(panel.cross_rate(2, 2, 0) == 1.0);
    CHECK(panel.cross_rate(2, 2, 1) == 1.0);

    SUBCASE("triangle identity within 1e-12 relative") {
        for (int t = 0; t < panel.n_times(); ++t)
            for (int c1 = 0; c1 < 3; ++c1)
                for (int c2 = 0; c2 < 3; ++c2)
                    for (int c3 = 0; c3 < 3; ++c3) {
                        const double lhs = panel.cross_rate(c1, c3, t);
                        const double rhs = panel.cross_rate(c1, c2, t) * panel.cross_rate(c2, c3, t);
                        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
                    }
    }
}

TEST_CASE("panel validation rejects inconsistent shapes and values") {
    SUBCASE("non-positive price") {
        CHECK_THROWS_AS(fixtures::make_panel(1, {0}, {}, {{100.0, 0.0}}), DomainError);
    }
    SUBCASE("fx row length mismatch") {
        CHECK_THROWS_AS(fixtures::make_panel(2, {0}, {{1.1}}, {{100.0, 101.0}}), DomainError);
    }
    SUBCASE("reference fx row must be ones") {
        AssetUniverse u(1, 1, {0});
        MarketPanel panel{u,
                          {parse_date("2015-01-02"), parse_date("2015-01-03")},
                          {{1.0, 1.5}},
                          {{100.0, 101.0}}};
        CHECK_THROWS_AS(panel.validate(), DomainError);
    }
}

TEST_CASE("panel_to_csv emits one row per date, one column per instrument") {
    auto panel = fixtures::make_panel(2, {1}, {{1.1, 1.2}}, {{100.0, 101.5}});
    const std::string csv = panel_to_csv(panel);
    CHECK(csv.find("date") == 0);
    CHECK(csv.find("2020-01-02") != std::string::npos);
    CHECK(csv.find("101.5") != std::string::npos);
    // header + one row per date
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

} // TEST_SUITE
