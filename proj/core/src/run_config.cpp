#include "hindsight/run_config.hpp"
#include "hindsight/errors.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace hindsight {

namespace {

using nlohmann::json;

ConstraintMode parse_mode(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw DomainError("config: mode must be an object with a 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "unconstrained") return ConstraintMode::unconstrained();
    if (type == "max_trades") return ConstraintMode::max_trades(j.at("k").get<int>());
    if (type == "min_wait") return ConstraintMode::min_wait(j.at("d").get<int>());
    throw DomainError("config: unknown mode type '" + type + "'");
}

template <typename T>
std::optional<T> opt_get(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError("config: " + path + ": " + e.what());
    }

    RunConfig config;
    try {
        config.m0 = j.at("m0").get<double>();

        const json& u = j.at("universe");
        config.n_currencies = u.at("n_currencies").get<int>();
        config.n_assets = u.at("n_assets").get<int>();
        config.asset_currency =
            u.value("asset_currency", std::vector<int>(config.n_assets, 0));
        if (u.contains("names"))
            for (const auto& [key, value] : u.at("names").items())
                config.names[std::stoi(key)] = value.get<std::string>();

        for (const json& d : j.value("data", json::array()))
            config.data.push_back(DataEntry{d.at("id").get<int>(),
                                            d.at("kind").get<std::string>(),
                                            d.at("path").get<std::string>()});

        if (j.contains("costs")) {
            const json& c = j.at("costs");
            config.eps = c.value("eps", 0.0);
            config.beta = c.value("beta", 0.0);
            config.tables.eps_fx = opt_get<std::vector<std::vector<double>>>(c, "eps_fx");
            config.tables.beta_fx = opt_get<std::vector<std::vector<double>>>(c, "beta_fx");
            config.tables.eps_buy = opt_get<std::vector<double>>(c, "eps_buy");
            config.tables.beta_buy = opt_get<std::vector<double>>(c, "beta_buy");
            config.tables.eps_sell = opt_get<std::vector<double>>(c, "eps_sell");
            config.tables.beta_sell = opt_get<std::vector<double>>(c, "beta_sell");
        }

        if (j.contains("mode")) config.mode = parse_mode(j.at("mode"));

        if (j.contains("diversification")) {
            const json& d = j.at("diversification");
            config.plan.q = d.value("q", 1);
            config.plan.split = d.value("split", std::vector<double>{});
            config.sync = d.value("sync", false);
            if (d.contains("constrained_times")) {
                const json& ct = d.at("constrained_times");
                if (ct.is_string() && ct.get<std::string>() == "all") {
                    // default: every time step constrained
                } else if (ct.is_array() && (ct.empty() || ct[0].is_number())) {
                    config.plan.constrained_times = std::vector<std::vector<int>>(
                        config.plan.q, ct.get<std::vector<int>>());
                } else {
                    config.plan.constrained_times = ct.get<std::vector<std::vector<int>>>();
                }
            }
        }

        config.use_heuristics = j.value("use_heuristics", true);
        config.force_terminal_cash = j.value("force_terminal_cash", false);
        config.output_dir = j.value("output_dir", std::string("out"));
    } catch (const json::exception& e) {
        throw DomainError("config: " + path + ": " + e.what());
    }

    // ---- validation ----
    if (!(config.m0 > 0.0)) throw DomainError("config: m0 must be positive");
    const AssetUniverse universe = universe_of(config);   // validates universe shape
    if (config.plan.q < 1) throw DomainError("config: diversification q must be >= 1");
    if (config.plan.q > universe.n_investments())
        throw DomainError("config: diversification q exceeds the number of investments");

    const auto base = std::filesystem::path(path).parent_path();
    std::vector<bool> seen(universe.n_investments(), false);
    for (DataEntry& entry : config.data) {
        if (entry.kind != "fx" && entry.kind != "asset")
            throw DomainError("config: data kind must be 'fx' or 'asset'");
        if (entry.kind == "fx" && !(entry.id >= 1 && entry.id < config.n_currencies))
            throw DomainError("config: fx data id " + std::to_string(entry.id) +
                              " is not a non-reference currency");
        if (entry.kind == "asset" && !universe.is_asset(entry.id))
            throw DomainError("config: asset data id " + std::to_string(entry.id) +
                              " is not an asset");
        if (seen[entry.id])
            throw DomainError("config: duplicate data entry for id " + std::to_string(entry.id));
        seen[entry.id] = true;
        const auto resolved = base / entry.path;
        if (!std::filesystem::exists(resolved))
            throw DomainError("config: data file not found: " + resolved.string());
        entry.path = resolved.string();
    }
    for (int id = 1; id < universe.n_investments(); ++id)
        if (!seen[id])
            throw DomainError("config: no data entry for id " + std::to_string(id));

    static_cast<void>(costs_of(config));   // validate the cost schedule eagerly
    return config;
}

AssetUniverse universe_of(const RunConfig& config) {
    return AssetUniverse(config.n_currencies, config.n_assets, config.asset_currency, config.names);
}

CostSchedule costs_of(const RunConfig& config) {
    const AssetUniverse universe = universe_of(config);
    const int nc = universe.n_currencies();
    const int na = universe.n_assets();
    std::vector<std::vector<double>> eps_fx(nc, std::vector<double>(nc, config.eps));
    std::vector<std::vector<double>> beta_fx(nc, std::vector<double>(nc, config.beta));
    for (int c = 0; c < nc; ++c) eps_fx[c][c] = beta_fx[c][c] = 0.0;
    std::vector<double> eps_buy(na, config.eps), beta_buy(na, config.beta);
    std::vector<double> eps_sell(na, config.eps), beta_sell(na, config.beta);
    if (config.tables.eps_fx) eps_fx = *config.tables.eps_fx;
    if (config.tables.beta_fx) beta_fx = *config.tables.beta_fx;
    if (config.tables.eps_buy) eps_buy = *config.tables.eps_buy;
    if (config.tables.beta_buy) beta_buy = *config.tables.beta_buy;
    if (config.tables.eps_sell) eps_sell = *config.tables.eps_sell;
    if (config.tables.beta_sell) beta_sell = *config.tables.beta_sell;
    if (static_cast<int>(eps_buy.size()) != na || static_cast<int>(beta_buy.size()) != na ||
        static_cast<int>(eps_sell.size()) != na || static_cast<int>(beta_sell.size()) != na ||
        static_cast<int>(eps_fx.size()) != nc || static_cast<int>(beta_fx.size()) != nc)
        throw DomainError("config: cost table shapes do not match the universe");
    return CostSchedule(std::move(eps_fx), std::move(beta_fx), std::move(eps_buy),
                        std::move(beta_buy), std::move(eps_sell), std::move(beta_sell));
}

MarketPanel load_panel(const RunConfig& config) {
    const AssetUniverse universe = universe_of(config);
    std::vector<QuoteSeries> series;
    series.reserve(config.data.size());
    for (const DataEntry& entry : config.data)
        series.push_back(load_quotes_file(entry.path, entry.id));
    return normalize_prices(align_calendar(universe, series));
}

} // namespace hindsight
