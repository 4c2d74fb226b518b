#include "uniband/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "uniband/csv.hpp"
#include "uniband/sha256.hpp"

namespace uniband {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute() || base_dir.empty()) return path;
    return (fs::path(base_dir) / path).lexically_normal().string();
}

Scenario scenario_from_json(const ordered_json& j) {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.urban_mbps = j.at("urban_mbps").get<double>();
    s.suburban_mbps = j.at("suburban_mbps").get<double>();
    s.rural_mbps = j.at("rural_mbps").get<double>();
    s.obf = j.at("obf").get<double>();
    return s;
}

StrategyVector strategy_from_json(const ordered_json& j) {
    StrategyVector v;
    v.technology = technology_from_string(j.at("technology").get<std::string>());
    v.sharing = sharing_from_string(j.at("sharing").get<std::string>());
    v.spectrum_scale = j.at("spectrum_scale").get<double>();
    v.tax_rate = j.at("tax_rate").get<double>();
    return v;
}

ordered_json config_to_json(const RunConfig& config) {
    ordered_json j;
    j["countries"] = config.countries;
    ordered_json scenarios = ordered_json::array();
    for (const auto& s : config.scenarios) {
        ordered_json o;
        o["name"] = s.name;
        o["urban_mbps"] = s.urban_mbps;
        o["suburban_mbps"] = s.suburban_mbps;
        o["rural_mbps"] = s.rural_mbps;
        o["obf"] = s.obf;
        scenarios.push_back(o);
    }
    j["scenarios"] = scenarios;
    ordered_json strategies = ordered_json::array();
    for (const auto& v : config.strategies) {
        ordered_json o;
        o["technology"] = to_string(v.technology);
        o["sharing"] = to_string(v.sharing);
        o["spectrum_scale"] = v.spectrum_scale;
        o["tax_rate"] = v.tax_rate;
        strategies.push_back(o);
    }
    j["strategies"] = strategies;
    j["seed"] = config.seed;
    j["lut"] = config.lut;
    j["costbook"] = config.costbook_path;
    j["roster"] = config.roster_path;
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string global_report_csv(
    const std::vector<std::tuple<std::string, std::string, GlobalReport>>& reports) {
    std::ostringstream out;
    out << "scenario,strategy,total_usd,gdp_share_10yr_pct,"
           "low_total_usd,low_gdp_share_pct,"
           "lower_middle_total_usd,lower_middle_gdp_share_pct,"
           "upper_middle_total_usd,upper_middle_gdp_share_pct\n";
    for (const auto& [scenario, strategy, report] : reports) {
        out << scenario << ',' << strategy << ',' << csv::format_double(report.total_usd) << ','
            << csv::format_double(report.gdp_share_10yr_pct);
        for (IncomeGroup g : {IncomeGroup::Low, IncomeGroup::LowerMiddle, IncomeGroup::UpperMiddle}) {
            double total = 0.0, share = 0.0;
            for (const auto& ig : report.income_groups) {
                if (ig.group == g) {
                    total = ig.total_usd;
                    share = ig.gdp_share_10yr_pct;
                }
            }
            out << ',' << csv::format_double(total) << ',' << csv::format_double(share);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("run config: cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("run config: parse error in " + path + ": " + e.what());
    }
    RunConfig config;
    config.config_dir = fs::path(path).parent_path().string();
    for (const auto& c : j.at("countries"))
        config.countries.push_back(resolve(config.config_dir, c.get<std::string>()));
    for (const auto& s : j.at("scenarios")) config.scenarios.push_back(scenario_from_json(s));
    for (const auto& v : j.at("strategies")) config.strategies.push_back(strategy_from_json(v));
    config.seed = j.at("seed").get<std::uint64_t>();
    config.lut = j.value("lut", std::string("generate"));
    if (config.lut != "generate") config.lut = resolve(config.config_dir, config.lut);
    config.costbook_path = resolve(config.config_dir, j.value("costbook", std::string()));
    config.roster_path = resolve(config.config_dir, j.value("roster", std::string()));
    config.parallelism = j.value("parallelism", 1);
    return config;
}

ValidationReport validate_run_config(const RunConfig& config) {
    ValidationReport report;
    if (config.countries.empty()) report.issues.push_back({"countries", "no countries configured"});
    if (config.scenarios.empty()) report.issues.push_back({"scenarios", "no scenarios configured"});
    if (config.strategies.empty()) report.issues.push_back({"strategies", "no strategies configured"});
    std::set<std::string> scenario_names;
    for (const auto& s : config.scenarios) {
        if (!(s.urban_mbps >= s.suburban_mbps && s.suburban_mbps >= s.rural_mbps))
            report.issues.push_back({"scenarios", s.name + ": targets must be urban >= suburban >= rural"});
        if (s.obf < 1.0) report.issues.push_back({"scenarios", s.name + ": obf must be >= 1"});
        if (!scenario_names.insert(s.name).second)
            report.issues.push_back({"scenarios", "duplicate scenario name " + s.name});
    }
    std::set<std::string> strategy_labels;
    for (const auto& v : config.strategies) {
        if (v.spectrum_scale <= 0.0)
            report.issues.push_back({"strategies", "spectrum_scale must be > 0"});
        if (!strategy_labels.insert(v.label()).second)
            report.issues.push_back({"strategies", "duplicate strategy " + v.label()});
    }

    std::set<std::string> roster_isos;
    if (!config.roster_path.empty()) {
        if (!fs::exists(config.roster_path)) {
            report.issues.push_back({"roster", "roster not found: " + config.roster_path});
        } else {
            try {
                for (const auto& e : load_roster_csv(config.roster_path)) roster_isos.insert(e.iso3);
            } catch (const std::exception& e) {
                report.issues.push_back({"roster", e.what()});
            }
        }
    }
    std::set<std::string> seen_isos;
    for (const auto& dir : config.countries) {
        fs::path country_json = fs::path(dir) / "country.json";
        if (!fs::exists(country_json)) {
            report.issues.push_back({"countries", "missing " + country_json.string()});
            continue;
        }
        try {
            CountryContext ctx = load_country_json(country_json.string());
            ValidationReport country_report = validate_country(ctx);
            for (const auto& issue : country_report.issues)
                report.issues.push_back({ctx.iso3 + "." + issue.field, issue.message});
            if (!roster_isos.empty() && !roster_isos.count(ctx.iso3))
                report.issues.push_back({"roster", "roster does not cover " + ctx.iso3});
            if (!seen_isos.insert(ctx.iso3).second)
                report.issues.push_back({"countries", "duplicate country " + ctx.iso3});
        } catch (const std::exception& e) {
            report.issues.push_back({"countries", e.what()});
        }
        if (!fs::exists(fs::path(dir) / "regions.csv"))
            report.issues.push_back({"countries", "missing regions.csv in " + dir});
    }
    if (config.lut != "generate" && !fs::exists(config.lut))
        report.issues.push_back({"lut", "lut file not found: " + config.lut});
    if (!config.costbook_path.empty() && !fs::exists(config.costbook_path))
        report.issues.push_back({"costbook", "costbook not found: " + config.costbook_path});
    return report;
}

SweepResult run_sweep(const RunConfig& config, const std::string& out_dir, std::uint64_t seed,
                      int jobs) {
    ValidationReport report = validate_run_config(config);
    if (!report.ok()) {
        std::string msg = "run config invalid:";
        for (const auto& issue : report.issues) msg += " [" + issue.field + "] " + issue.message;
        throw std::invalid_argument(msg);
    }

    CostBook book = config.costbook_path.empty() ? CostBook{} : load_costbook_json(config.costbook_path);
    AssessmentSettings settings;
    settings.demand.horizon_years = book.horizon_years;
    settings.demand.revenue_discount_rate = book.discount_rate;

    // Everything loads before anything is written: a failing country aborts
    // the whole run with no partial output tree.
    std::vector<CountryInputs> countries;
    for (const auto& dir : config.countries)
        countries.push_back(load_country_bundle(dir, book, settings));

    std::vector<RosterEntry> roster;
    if (!config.roster_path.empty()) roster = load_roster_csv(config.roster_path);
    std::map<std::string, const RosterEntry*> roster_by_iso;
    for (const auto& e : roster) roster_by_iso[e.iso3] = &e;
    for (const auto& c : countries) {
        if (!roster.empty() && !roster_by_iso.count(c.ctx.iso3))
            throw std::invalid_argument("roster does not cover " + c.ctx.iso3);
    }

    SETables tables = default_se_tables();
    CapacityLUT lut;
    if (config.lut == "generate") {
        std::vector<LutBand> bands = lut_bands_for(countries);
        lut = build_capacity_lut(bands, default_lut_densities(), RadioParams{}, tables, seed);
    } else {
        lut = CapacityLUT::from_csv_file(config.lut);
    }

    struct Triple {
        std::size_t country;
        std::size_t scenario;
        std::size_t strategy;
    };
    std::vector<Triple> triples;
    for (std::size_t c = 0; c < countries.size(); ++c)
        for (std::size_t s = 0; s < config.scenarios.size(); ++s)
            for (std::size_t v = 0; v < config.strategies.size(); ++v) triples.push_back({c, s, v});

    struct TripleOutput {
        std::string rel_dir;
        std::string decomposition;
        std::string site_plan;
        double national_social = 0.0;
    };
    std::vector<TripleOutput> outputs(triples.size());
    std::vector<std::exception_ptr> errors(triples.size());

    auto work = [&](std::size_t t) {
        const Triple& triple = triples[t];
        const CountryInputs& country = countries[triple.country];
        const Scenario& scenario = config.scenarios[triple.scenario];
        const StrategyVector& strategy = config.strategies[triple.strategy];
        TripleResult result = assess_country(country, scenario, strategy, lut, book, settings);
        TripleOutput& out = outputs[t];
        out.rel_dir = country.ctx.iso3 + "/" + scenario.name + "/" + strategy.label();
        out.decomposition =
            decomposition_csv(result.decomposition, country.ctx.iso3, scenario.name, strategy.label());
        out.site_plan = site_plans_csv(result.site_plans);
        out.national_social = result.decomposition.national.social_cost;
    };

    int workers = std::max(1, jobs);
    if (workers == 1) {
        for (std::size_t t = 0; t < triples.size(); ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= triples.size()) return;
                    try {
                        work(t);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Single collector writes everything in deterministic order.
    SweepResult result;
    result.triples = static_cast<int>(triples.size());
    std::vector<std::pair<std::string, std::string>> files;  // rel path, content
    for (const auto& out : outputs) {
        files.emplace_back(out.rel_dir + "/decomposition.csv", out.decomposition);
        files.emplace_back(out.rel_dir + "/site_plan.csv", out.site_plan);
    }

    if (!roster.empty()) {
        std::vector<std::tuple<std::string, std::string, GlobalReport>> reports;
        for (std::size_t s = 0; s < config.scenarios.size(); ++s) {
            for (std::size_t v = 0; v < config.strategies.size(); ++v) {
                std::vector<RepresentativeResult> reps;
                for (std::size_t c = 0; c < countries.size(); ++c) {
                    std::size_t t = (c * config.scenarios.size() + s) * config.strategies.size() + v;
                    RepresentativeResult rep;
                    rep.iso3 = countries[c].ctx.iso3;
                    rep.cluster_id = roster_by_iso.at(rep.iso3)->cluster_id;
                    rep.national_social_cost = outputs[t].national_social;
                    rep.population = roster_by_iso.at(rep.iso3)->population;
                    reps.push_back(rep);
                }
                reports.emplace_back(config.scenarios[s].name, config.strategies[v].label(),
                                     aggregate_global(reps, roster, book.horizon_years));
            }
        }
        // Keyed order so `uniband report` regenerates the same bytes.
        std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        files.emplace_back("global_report.csv", global_report_csv(reports));
    }

    std::sort(files.begin(), files.end());
    ordered_json manifest;
    manifest["config_digest"] = Sha256::of_string(config_to_json(config).dump());
    manifest["seed"] = seed;
    manifest["triples"] = result.triples;
    ordered_json file_list = ordered_json::array();
    for (const auto& [rel, content] : files) {
        fs::path full = fs::path(out_dir) / rel;
        write_file(full, content);
        result.files_written.push_back(full.string());
        ordered_json entry;
        entry["path"] = rel;
        entry["sha256"] = Sha256::of_string(content);
        entry["bytes"] = content.size();
        file_list.push_back(entry);
    }
    manifest["files"] = file_list;
    write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    result.files_written.push_back((fs::path(out_dir) / "manifest.json").string());
    return result;
}

void rebuild_report(const std::string& out_dir, const std::string& roster_path, int horizon_years) {
    std::vector<RosterEntry> roster = load_roster_csv(roster_path);
    std::map<std::string, const RosterEntry*> roster_by_iso;
    for (const auto& e : roster) roster_by_iso[e.iso3] = &e;

    // (scenario, strategy) -> representatives
    std::map<std::pair<std::string, std::string>, std::vector<RepresentativeResult>> groups;
    for (const auto& entry : fs::recursive_directory_iterator(out_dir)) {
        if (!entry.is_regular_file() || entry.path().filename() != "decomposition.csv") continue;
        csv::Table t = csv::read_file(entry.path().string());
        int country_col = t.require_column("country");
        int scenario_col = t.require_column("scenario");
        int strategy_col = t.require_column("strategy");
        int region_col = t.require_column("region_id");
        int social_col = t.require_column("social");
        for (const auto& row : t.rows) {
            if (row[static_cast<std::size_t>(region_col)] != "NATIONAL") continue;
            std::string iso = row[static_cast<std::size_t>(country_col)];
            auto it = roster_by_iso.find(iso);
            if (it == roster_by_iso.end())
                throw std::runtime_error("report: roster does not cover " + iso);
            RepresentativeResult rep;
            rep.iso3 = iso;
            rep.cluster_id = it->second->cluster_id;
            rep.national_social_cost =
                csv::to_double(row[static_cast<std::size_t>(social_col)], entry.path().string());
            rep.population = it->second->population;
            groups[{row[static_cast<std::size_t>(scenario_col)],
                    row[static_cast<std::size_t>(strategy_col)]}]
                .push_back(rep);
        }
    }
    if (groups.empty()) throw std::runtime_error("report: no decomposition.csv files under " + out_dir);
    std::vector<std::tuple<std::string, std::string, GlobalReport>> reports;
    for (const auto& [key, reps] : groups)
        reports.emplace_back(key.first, key.second, aggregate_global(reps, roster, horizon_years));
    write_file(fs::path(out_dir) / "global_report.csv", global_report_csv(reports));
}

}  // namespace uniband
