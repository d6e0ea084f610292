#include "hindsight/market_data.hpp"
#include "hindsight/errors.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace hindsight {

namespace {

std::string lower_snake(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (c == ' ') c = '_';
    }
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

Date parse_date(const std::string& iso) {
    const std::string s = trim(iso);
    int y = 0, m = 0, d = 0;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' ||
        std::from_chars(s.data(), s.data() + 4, y).ec != std::errc{} ||
        std::from_chars(s.data() + 5, s.data() + 7, m).ec != std::errc{} ||
        std::from_chars(s.data() + 8, s.data() + 10, d).ec != std::errc{}) {
        throw ParseError("invalid ISO-8601 date: '" + iso + "'");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) throw ParseError("invalid calendar date: '" + iso + "'");
    return Date{static_cast<std::int32_t>(std::chrono::sys_days{ymd}.time_since_epoch().count())};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{d.days}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

AssetUniverse::AssetUniverse(int n_currencies, int n_assets, std::vector<int> asset_currency,
                             std::unordered_map<int, std::string> names)
    : n_currencies_(n_currencies),
      n_assets_(n_assets),
      asset_currency_(std::move(asset_currency)),
      names_(std::move(names)) {
    if (n_currencies_ < 1) throw DomainError("universe: need at least the reference currency");
    if (n_assets_ < 0) throw DomainError("universe: negative asset count");
    if (static_cast<int>(asset_currency_.size()) != n_assets_)
        throw DomainError("universe: asset_currency size must equal n_assets");
    for (int c : asset_currency_)
        if (c < 0 || c >= n_currencies_)
            throw DomainError("universe: asset denominated in unknown currency " + std::to_string(c));
}

int AssetUniverse::settlement_currency(int id) const {
    if (is_currency(id)) return id;
    if (is_asset(id)) return asset_currency_[id - n_currencies_];
    throw DomainError("universe: unknown investment id " + std::to_string(id));
}

std::string AssetUniverse::display_name(int id) const {
    if (auto it = names_.find(id); it != names_.end()) return it->second;
    return (is_currency(id) ? "ccy" : "asset") + std::to_string(id);
}

QuoteSeries load_quotes(std::istream& in, int instrument_id, const std::string& stream_name) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(stream_name + ": empty stream, expected a CSV header");

    const auto header = split_csv_line(line);
    int date_col = -1, value_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower_snake(trim(header[i]));
        if (name == "date") date_col = static_cast<int>(i);
        if (name == "adj_close") value_col = static_cast<int>(i);
    }
    if (date_col < 0 || value_col < 0)
        throw ParseError(stream_name + ": header must contain 'date' and 'adj_close' columns");

    QuoteSeries series;
    series.instrument_id = instrument_id;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError(stream_name + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        Date date;
        try {
            date = parse_date(fields[date_col]);
        } catch (const ParseError& e) {
            throw ParseError(stream_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
        const std::string raw = trim(fields[value_col]);
        if (raw.empty() || lower_snake(raw) == "null") {
            ++series.dropped_rows;
            continue;
        }
        double value = 0.0;
        const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
        if (ec != std::errc{} || p != raw.data() + raw.size())
            throw ParseError(stream_name + ":" + std::to_string(line_no) +
                             ": non-numeric adj_close '" + raw + "'");
        if (!(value > 0.0) || !std::isfinite(value)) {
            ++series.dropped_rows;
            continue;
        }
        series.dates.push_back(date);
        series.values.push_back(value);
    }

    if (series.dates.empty())
        throw ParseError(stream_name + ": no usable rows (" + std::to_string(series.dropped_rows) +
                         " dropped)");

    std::vector<std::size_t> order(series.dates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return series.dates[a] < series.dates[b]; });
    QuoteSeries sorted;
    sorted.instrument_id = instrument_id;
    sorted.dropped_rows = series.dropped_rows;
    sorted.dates.reserve(order.size());
    sorted.values.reserve(order.size());
    for (std::size_t idx : order) {
        if (!sorted.dates.empty() && sorted.dates.back() == series.dates[idx])
            throw ParseError(stream_name + ": duplicate date " + format_date(series.dates[idx]));
        sorted.dates.push_back(series.dates[idx]);
        sorted.values.push_back(series.values[idx]);
    }
    return sorted;
}

QuoteSeries load_quotes_file(const std::string& path, int instrument_id) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_quotes(in, instrument_id, path);
}

MarketPanel align_calendar(const AssetUniverse& universe, const std::vector<QuoteSeries>& series) {
    const int n = universe.n_investments();
    std::vector<const QuoteSeries*> by_id(n, nullptr);
    for (const auto& s : series) {
        if (s.instrument_id <= 0 || s.instrument_id >= n)
            throw DomainError("align_calendar: series for unknown/reference id " +
                              std::to_string(s.instrument_id));
        if (by_id[s.instrument_id])
            throw DomainError("align_calendar: duplicate series for id " +
                              std::to_string(s.instrument_id));
        if (s.dates.empty())
            throw DomainError("align_calendar: empty series for id " +
                              std::to_string(s.instrument_id));
        by_id[s.instrument_id] = &s;
    }
    for (int id = 1; id < n; ++id)
        if (!by_id[id])
            throw DomainError("align_calendar: missing series for id " + std::to_string(id));

    std::vector<Date> common;
    if (n == 1) throw DomainError("align_calendar: universe has no instruments to align");
    common = by_id[1]->dates;
    for (int id = 2; id < n; ++id) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), by_id[id]->dates.begin(),
                              by_id[id]->dates.end(), std::back_inserter(next));
        common.swap(next);
    }
    if (common.empty()) {
        std::ostringstream msg;
        msg << "align_calendar: empty date intersection;";
        for (int id = 1; id < n; ++id)
            msg << " id" << id << "[" << format_date(by_id[id]->dates.front()) << ".."
                << format_date(by_id[id]->dates.back()) << "](" << by_id[id]->size() << ")";
        throw DomainError(msg.str());
    }

    MarketPanel panel{universe, common, {}, {}};
    const int nt = panel.n_times();
    panel.fx_to_ref.assign(universe.n_currencies(), std::vector<double>(nt, 1.0));
    panel.prices.assign(universe.n_assets(), {});

    // Pick each series' values at the common dates with a linear merge.
    auto values_at_common = [&](const QuoteSeries& s) {
        std::vector<double> out;
        out.reserve(common.size());
        std::size_t j = 0;
        for (const Date& d : common) {
            while (s.dates[j] < d) ++j;
            out.push_back(s.values[j]);
        }
        return out;
    };
    for (int id = 1; id < n; ++id) {
        if (universe.is_currency(id))
            panel.fx_to_ref[id] = values_at_common(*by_id[id]);
        else
            panel.prices[id - universe.n_currencies()] = values_at_common(*by_id[id]);
    }
    panel.validate();
    return panel;
}

void MarketPanel::validate() const {
    const int nt = n_times();
    if (nt == 0) throw DomainError("panel: empty calendar");
    for (int t = 1; t < nt; ++t)
        if (!(dates[t - 1] < dates[t])) throw DomainError("panel: dates not strictly increasing");
    if (static_cast<int>(fx_to_ref.size()) != universe.n_currencies() ||
        static_cast<int>(prices.size()) != universe.n_assets())
        throw DomainError("panel: row count does not match universe");
    for (int t = 0; t < nt; ++t)
        if (fx_to_ref[0][t] != 1.0)
            throw DomainError("panel: reference currency row must be identically 1");
    for (const auto& row : fx_to_ref) {
        if (static_cast<int>(row.size()) != nt) throw DomainError("panel: ragged FX row");
        for (double v : row)
            if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("panel: non-positive FX quote");
    }
    for (const auto& row : prices) {
        if (static_cast<int>(row.size()) != nt) throw DomainError("panel: ragged price row");
        for (double v : row)
            if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("panel: non-positive price");
    }
}

MarketPanel normalize_prices(const MarketPanel& panel) {
    MarketPanel out = panel;
    for (auto& row : out.prices) {
        if (row.empty() || row[0] == 100.0) continue;   // already based: exact no-op
        const double base = row[0];
        // Multiply before dividing so rational quotes rebase exactly; the
        // base entry is pinned to the formula's exact value, which also makes
        // a second application a bitwise no-op.
        row[0] = 100.0;
        for (std::size_t t = 1; t < row.size(); ++t) row[t] = row[t] * 100.0 / base;
    }
    return out;
}

std::string panel_to_csv(const MarketPanel& panel) {
    std::ostringstream out;
    out << "date";
    for (int id = 0; id < panel.universe.n_investments(); ++id)
        out << "," << panel.universe.display_name(id);
    out << "\n";
    out.precision(17);
    for (int t = 0; t < panel.n_times(); ++t) {
        out << format_date(panel.dates[t]);
        for (int c = 0; c < panel.universe.n_currencies(); ++c) out << "," << panel.fx_to_ref[c][t];
        for (int a = 0; a < panel.universe.n_assets(); ++a) out << "," << panel.prices[a][t];
        out << "\n";
    }
    return out.str();
}

} // namespace hindsight
