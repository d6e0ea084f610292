#include "doctest.h"

#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <string>
#include <vector>

#include "hindsight/errors.hpp"
#include "hindsight/run_config.hpp"

using namespace hindsight;
namespace fs = std::filesystem;

namespace {

/// Scratch directory for config + data files, removed on scope exit.
struct TempDir {
    fs::path root;
    TempDir() {
        root = fs::temp_directory_path() /
               ("hindsight_cfg_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(root);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(root, ec);
    }
    static int counter() {
        static int n = 0;
        return n++;
    }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = root / name;
        std::ofstream out(p);
        out << text;
        return p.string();
    }
};

const char* kAssetCsv =
    "Date,Adj Close\n"
    "2020-01-02,100\n"
    "2020-01-03,110\n"
    "2020-01-04,105\n"
    "2020-01-05,115\n";

std::string basic_config_json(const std::string& extra = "") {
    return std::string("{\n"
                       "  \"m0\": 1000,\n"
                       "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 1},\n"
                       "  \"data\": [{\"id\": 1, \"kind\": \"asset\", \"path\": \"a1.csv\"}]") +
           (extra.empty() ? "" : ",\n" + extra) + "\n}\n";
}

} // namespace

TEST_SUITE("run_config") {

TEST_CASE("happy path parses every section") {
    TempDir dir;
    dir.write("a1.csv", kAssetCsv);
    dir.write("a2.csv", kAssetCsv);
    dir.write("fx1.csv",
              "Date,Adj Close\n"
              "2020-01-02,1.10\n"
              "2020-01-03,1.08\n"
              "2020-01-04,1.12\n"
              "2020-01-05,1.11\n");
    const std::string path = dir.write("run.json", R"({
  "m0": 2500.5,
  "universe": {
    "n_currencies": 2,
    "n_assets": 2,
    "asset_currency": [0, 1],
    "names": {"0": "USD", "1": "EUR", "2": "AAA", "3": "BBB"}
  },
  "data": [
    {"id": 1, "kind": "fx", "path": "fx1.csv"},
    {"id": 2, "kind": "asset", "path": "a1.csv"},
    {"id": 3, "kind": "asset", "path": "a2.csv"}
  ],
  "costs": {"eps": 0.005, "beta": 0.5},
  "mode": {"type": "max_trades", "k": 2},
  "diversification": {"q": 2, "split": [0.6, 0.4], "sync": true},
  "use_heuristics": false,
  "force_terminal_cash": true,
  "output_dir": "results"
})");

    const RunConfig config = load_run_config(path);
    CHECK(config.m0 == 2500.5);
    CHECK(config.n_currencies == 2);
    CHECK(config.n_assets == 2);
    CHECK(config.asset_currency == std::vector<int>{0, 1});
    CHECK(config.names.at(2) == "AAA");
    CHECK(config.eps == 0.005);
    CHECK(config.beta == 0.5);
    CHECK(config.mode.kind() == ConstraintMode::Kind::MaxTrades);
    CHECK(config.mode.limit() == 2);
    CHECK(config.plan.q == 2);
    CHECK(config.plan.split == std::vector<double>{0.6, 0.4});
    CHECK(config.sync);
    CHECK_FALSE(config.use_heuristics);
    CHECK(config.force_terminal_cash);
    CHECK(config.output_dir == "results");

    REQUIRE(config.data.size() == 3);
    for (const DataEntry& entry : config.data) {
        CHECK(fs::path(entry.path).is_absolute());
        CHECK(fs::exists(entry.path));
    }
    CHECK(config.data[0].kind == "fx");
    CHECK(config.data[1].id == 2);

    const AssetUniverse universe = universe_of(config);
    CHECK(universe.n_investments() == 4);
    const CostSchedule costs = costs_of(config);
    CHECK(costs.eps_fx(0, 1) == 0.005);
    CHECK(costs.eps_fx(0, 0) == 0.0);
    CHECK(costs.beta_buy(1) == 0.5);
}

TEST_CASE("defaults fill in the optional sections") {
    TempDir dir;
    dir.write("a1.csv", kAssetCsv);
    const RunConfig config = load_run_config(dir.write("run.json", basic_config_json()));
    CHECK(config.eps == 0.0);
    CHECK(config.beta == 0.0);
    CHECK(config.mode.kind() == ConstraintMode::Kind::Unconstrained);
    CHECK(config.plan.q == 1);
    CHECK(config.plan.split.empty());
    CHECK_FALSE(config.sync);
    CHECK(config.use_heuristics);
    CHECK_FALSE(config.force_terminal_cash);
    CHECK(config.output_dir == "out");
    CHECK(config.asset_currency == std::vector<int>{0});
}

TEST_CASE("mode variants parse and bad ones are rejected") {
    TempDir dir;
    dir.write("a1.csv", kAssetCsv);
    SUBCASE("min_wait") {
        const RunConfig config = load_run_config(dir.write(
            "run.json", basic_config_json(R"(  "mode": {"type": "min_wait", "d": 3})")));
        CHECK(config.mode.kind() == ConstraintMode::Kind::MinWait);
        CHECK(config.mode.limit() == 3);
    }
    SUBCASE("unknown type") {
        const std::string path = dir.write(
            "run.json", basic_config_json(R"(  "mode": {"type": "weekly"})"));
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("weekly"), DomainError);
    }
    SUBCASE("mode missing its parameter") {
        const std::string path = dir.write(
            "run.json", basic_config_json(R"(  "mode": {"type": "max_trades"})"));
        CHECK_THROWS_AS(static_cast<void>(load_run_config(path)), DomainError);
    }
    SUBCASE("mode as bare string") {
        const std::string path =
            dir.write("run.json", basic_config_json(R"(  "mode": "unconstrained")"));
        CHECK_THROWS_AS(static_cast<void>(load_run_config(path)), DomainError);
    }
}

TEST_CASE("constrained_times accepts 'all', a flat list, and per-slice lists") {
    TempDir dir;
    dir.write("a1.csv", kAssetCsv);
    dir.write("a2.csv", kAssetCsv);
    const std::string universe2 =
        "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 2}";
    const std::string data2 =
        "  \"data\": [{\"id\": 1, \"kind\": \"asset\", \"path\": \"a1.csv\"},\n"
        "             {\"id\": 2, \"kind\": \"asset\", \"path\": \"a2.csv\"}]";
    const auto config_with = [&](const std::string& diversification) {
        return "{\n  \"m0\": 1000,\n" + universe2 + ",\n" + data2 + ",\n" +
               "  \"diversification\": " + diversification + "\n}\n";
    };

    SUBCASE("the string 'all' leaves the plan on its default") {
        const RunConfig config = load_run_config(dir.write(
            "run.json", config_with(R"({"q": 2, "constrained_times": "all"})")));
        CHECK_FALSE(config.plan.constrained_times.has_value());
    }
    SUBCASE("a flat list is replicated for every slice") {
        const RunConfig config = load_run_config(dir.write(
            "run.json", config_with(R"({"q": 2, "constrained_times": [1, 3]})")));
        REQUIRE(config.plan.constrained_times.has_value());
        REQUIRE(config.plan.constrained_times->size() == 2);
        CHECK((*config.plan.constrained_times)[0] == std::vector<int>{1, 3});
        CHECK((*config.plan.constrained_times)[1] == std::vector<int>{1, 3});
    }
    SUBCASE("a list of lists is taken slice by slice") {
        const RunConfig config = load_run_config(dir.write(
            "run.json",
            config_with(R"({"q": 2, "constrained_times": [[1], [2, 3]]})")));
        REQUIRE(config.plan.constrained_times.has_value());
        REQUIRE(config.plan.constrained_times->size() == 2);
        CHECK((*config.plan.constrained_times)[0] == std::vector<int>{1});
        CHECK((*config.plan.constrained_times)[1] == std::vector<int>{2, 3});
    }
}

TEST_CASE("validation failures carry the offending detail") {
    TempDir dir;
    dir.write("a1.csv", kAssetCsv);

    SUBCASE("missing config file") {
        CHECK_THROWS_WITH_AS(
            static_cast<void>(load_run_config((dir.root / "absent.json").string())),
            doctest::Contains("absent.json"), DomainError);
    }
    SUBCASE("malformed JSON") {
        const std::string path = dir.write("run.json", "{ \"m0\": 1000, ");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("run.json"), DomainError);
    }
    SUBCASE("m0 must be positive") {
        const std::string path = dir.write("run.json",
                                           "{\n  \"m0\": 0,\n"
                                           "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 1},\n"
                                           "  \"data\": [{\"id\": 1, \"kind\": \"asset\", \"path\": \"a1.csv\"}]\n}");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("m0"), DomainError);
    }
    SUBCASE("q beyond the investment count") {
        const std::string path = dir.write(
            "run.json", basic_config_json(R"(  "diversification": {"q": 3})"));
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("q"), DomainError);
    }
    SUBCASE("negative eps is rejected eagerly") {
        const std::string path = dir.write(
            "run.json", basic_config_json(R"(  "costs": {"eps": -0.01})"));
        CHECK_THROWS_AS(static_cast<void>(load_run_config(path)), DomainError);
    }
    SUBCASE("data file that does not exist") {
        const std::string path = dir.write(
            "run.json",
            "{\n  \"m0\": 1000,\n"
            "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 1},\n"
            "  \"data\": [{\"id\": 1, \"kind\": \"asset\", \"path\": \"ghost.csv\"}]\n}");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("ghost.csv"), DomainError);
    }
    SUBCASE("unknown data kind") {
        const std::string path = dir.write(
            "run.json",
            "{\n  \"m0\": 1000,\n"
            "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 1},\n"
            "  \"data\": [{\"id\": 1, \"kind\": \"bond\", \"path\": \"a1.csv\"}]\n}");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("kind"), DomainError);
    }
    SUBCASE("fx entry for the reference currency") {
        dir.write("fx.csv", kAssetCsv);
        const std::string path = dir.write(
            "run.json",
            "{\n  \"m0\": 1000,\n"
            "  \"universe\": {\"n_currencies\": 2, \"n_assets\": 1, \"asset_currency\": [0]},\n"
            "  \"data\": [{\"id\": 0, \"kind\": \"fx\", \"path\": \"fx.csv\"},\n"
            "             {\"id\": 2, \"kind\": \"asset\", \"path\": \"a1.csv\"}]\n}");
        CHECK_THROWS_AS(static_cast<void>(load_run_config(path)), DomainError);
    }
    SUBCASE("duplicate data id") {
        const std::string path = dir.write(
            "run.json",
            "{\n  \"m0\": 1000,\n"
            "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 1},\n"
            "  \"data\": [{\"id\": 1, \"kind\": \"asset\", \"path\": \"a1.csv\"},\n"
            "             {\"id\": 1, \"kind\": \"asset\", \"path\": \"a1.csv\"}]\n}");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("duplicate"), DomainError);
    }
    SUBCASE("every non-reference investment needs data") {
        dir.write("a2.csv", kAssetCsv);
        const std::string path = dir.write(
            "run.json",
            "{\n  \"m0\": 1000,\n"
            "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 2},\n"
            "  \"data\": [{\"id\": 2, \"kind\": \"asset\", \"path\": \"a2.csv\"}]\n}");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("id 1"), DomainError);
    }
    SUBCASE("cost table with the wrong shape") {
        const std::string path = dir.write(
            "run.json",
            basic_config_json(R"(  "costs": {"eps_buy": [0.001, 0.002]})"));
        CHECK_THROWS_WITH_AS(static_cast<void>(load_run_config(path)),
                             doctest::Contains("shape"), DomainError);
    }
}

TEST_CASE("full cost tables override the uniform scalars") {
    TempDir dir;
    dir.write("a1.csv", kAssetCsv);
    const std::string path = dir.write("run.json", basic_config_json(
        R"(  "costs": {"eps": 0.01, "beta": 1.0, "eps_buy": [0.002], "beta_sell": [0.25]})"));
    const RunConfig config = load_run_config(path);
    const CostSchedule costs = costs_of(config);
    CHECK(costs.eps_buy(0) == 0.002);   // overridden
    CHECK(costs.beta_buy(0) == 1.0);    // scalar fallback
    CHECK(costs.eps_sell(0) == 0.01);   // scalar fallback
    CHECK(costs.beta_sell(0) == 0.25);  // overridden
}

TEST_CASE("load_panel aligns calendars and rebases prices") {
    TempDir dir;
    // Asset 1 has an extra leading date; asset 2 starts at 50 so rebasing shows.
    dir.write("a1.csv",
              "Date,Adj Close\n"
              "2020-01-01,90\n"
              "2020-01-02,100\n"
              "2020-01-03,110\n"
              "2020-01-04,105\n");
    dir.write("a2.csv",
              "Date,Adj Close\n"
              "2020-01-02,50\n"
              "2020-01-03,55\n"
              "2020-01-04,45\n"
              "2020-01-05,60\n");
    const std::string path = dir.write(
        "run.json",
        "{\n  \"m0\": 1000,\n"
        "  \"universe\": {\"n_currencies\": 1, \"n_assets\": 2},\n"
        "  \"data\": [{\"id\": 1, \"kind\": \"asset\", \"path\": \"a1.csv\"},\n"
        "             {\"id\": 2, \"kind\": \"asset\", \"path\": \"a2.csv\"}]\n}");
    const RunConfig config = load_run_config(path);
    const MarketPanel panel = load_panel(config);

    CHECK(panel.n_times() == 3);   // calendar intersection
    CHECK(panel.dates.front() == parse_date("2020-01-02"));
    CHECK(panel.dates.back() == parse_date("2020-01-04"));
    CHECK(panel.prices[0] == std::vector<double>{100.0, 110.0, 105.0});
    CHECK(panel.prices[1] == std::vector<double>{100.0, 110.0, 90.0});
    CHECK(panel.fx_to_ref.size() == 1);   // reference row only
    panel.validate();
}

} // TEST_SUITE
