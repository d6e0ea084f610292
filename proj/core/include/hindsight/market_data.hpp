#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace hindsight {

/// Calendar date stored as days since 1970-01-01 (proleptic Gregorian).
/// Parsing/formatting is strict ISO-8601 (YYYY-MM-DD).
struct Date {
    std::int32_t days = 0;

    friend auto operator<=>(const Date&, const Date&) = default;
};

[[nodiscard]] Date parse_date(const std::string& iso);      // throws ParseError
[[nodiscard]] std::string format_date(Date d);

/// The investment universe: investment ids are contiguous integers.
/// Ids [0, n_currencies) are currencies, id 0 being the reference currency
/// in which all wealth is measured. Ids [n_currencies, n_currencies+n_assets)
/// are assets; each asset is denominated in exactly one currency.
class AssetUniverse {
public:
    AssetUniverse(int n_currencies, int n_assets,
                  std::vector<int> asset_currency,                 // size n_assets, values < n_currencies
                  std::unordered_map<int, std::string> names = {}); // optional display names

    [[nodiscard]] int n_currencies() const { return n_currencies_; }
    [[nodiscard]] int n_assets() const { return n_assets_; }
    [[nodiscard]] int n_investments() const { return n_currencies_ + n_assets_; }

    [[nodiscard]] bool is_currency(int id) const { return id >= 0 && id < n_currencies_; }
    [[nodiscard]] bool is_asset(int id) const { return id >= n_currencies_ && id < n_investments(); }

    /// Currency an investment settles in: the currency itself, or the
    /// denomination currency of an asset.
    [[nodiscard]] int settlement_currency(int id) const;

    [[nodiscard]] std::string display_name(int id) const;

private:
    int n_currencies_;
    int n_assets_;
    std::vector<int> asset_currency_;
    std::unordered_map<int, std::string> names_;
};

/// One ingested quote stream: strictly increasing dates with positive values.
struct QuoteSeries {
    int instrument_id = -1;
    std::vector<Date> dates;
    std::vector<double> values;
    int dropped_rows = 0;   // rows discarded for empty/non-positive values

    [[nodiscard]] std::size_t size() const { return dates.size(); }
};

/// Aligned panel over a common calendar of n_times() observation dates.
///
/// fx_to_ref[c][t] quotes currency c per one unit of the reference currency
/// (row 0 is identically 1). prices[a][t] is the quote of asset a in its own
/// denomination currency; rows are indexed a = id - n_currencies.
struct MarketPanel {
    AssetUniverse universe;
    std::vector<Date> dates;
    std::vector<std::vector<double>> fx_to_ref;   // [n_currencies][n_times]
    std::vector<std::vector<double>> prices;      // [n_assets][n_times]

    [[nodiscard]] int n_times() const { return static_cast<int>(dates.size()); }
    /// Index of the last time step (trajectories run t = 0..horizon()).
    [[nodiscard]] int horizon() const { return n_times() - 1; }

    [[nodiscard]] double price(int asset_id, int t) const {
        return prices[asset_id - universe.n_currencies()][t];
    }

    /// Units of c2 received per unit of c1 at time t.
    [[nodiscard]] double cross_rate(int c1, int c2, int t) const {
        return fx_to_ref[c2][t] / fx_to_ref[c1][t];
    }

    void validate() const;   // throws DomainError on inconsistency
};

/// Parse a `date,adj_close` CSV stream. Rows with an empty, "null", or
/// non-positive adj_close are dropped and counted; malformed rows throw
/// ParseError naming the 1-based line; zero usable rows throws ParseError.
/// Result is sorted ascending by date (duplicate dates are rejected).
[[nodiscard]] QuoteSeries load_quotes(std::istream& in, int instrument_id,
                                      const std::string& stream_name = "<stream>");

[[nodiscard]] QuoteSeries load_quotes_file(const std::string& path, int instrument_id);

/// Intersect the calendars of one series per non-reference currency and per
/// asset and assemble the panel. FX series quote currency-per-reference-unit
/// and are used as-is for fx_to_ref. Throws DomainError when the intersection
/// is empty (message lists each series' date span) or when series ids do not
/// exactly cover the universe.
[[nodiscard]] MarketPanel align_calendar(const AssetUniverse& universe,
                                         const std::vector<QuoteSeries>& series);

/// Rebase every asset price row to 100 at t = 0. FX rows are untouched.
/// Rows already based at exactly 100 are returned unchanged, so applying the
/// function twice is bitwise-identical to applying it once.
[[nodiscard]] MarketPanel normalize_prices(const MarketPanel& panel);

/// Debug export: one row per date, one column per investment id
/// (fx_to_ref for currencies, raw prices for assets).
[[nodiscard]] std::string panel_to_csv(const MarketPanel& panel);

} // namespace hindsight
