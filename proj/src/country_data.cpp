#include "uniband/country_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "uniband/csv.hpp"

namespace uniband {

using ordered_json = nlohmann::ordered_json;

const char* to_string(SettlementClass c) {
    switch (c) {
        case SettlementClass::Urban: return "urban";
        case SettlementClass::Suburban: return "suburban";
        case SettlementClass::Rural: return "rural";
    }
    return "rural";
}

const char* to_string(Generation g) { return g == Generation::FourG ? "4G" : "5G"; }

const char* to_string(IncomeGroup g) {
    switch (g) {
        case IncomeGroup::Low: return "low";
        case IncomeGroup::LowerMiddle: return "lower-middle";
        case IncomeGroup::UpperMiddle: return "upper-middle";
    }
    return "low";
}

const char* to_string(BackhaulTech t) {
    switch (t) {
        case BackhaulTech::Fiber: return "fiber";
        case BackhaulTech::Copper: return "copper";
        case BackhaulTech::Microwave: return "microwave";
        case BackhaulTech::Satellite: return "satellite";
    }
    return "fiber";
}

SettlementClass settlement_class_from_string(const std::string& s) {
    if (s == "urban") return SettlementClass::Urban;
    if (s == "suburban") return SettlementClass::Suburban;
    if (s == "rural") return SettlementClass::Rural;
    throw std::runtime_error("unknown settlement class '" + s + "'");
}

IncomeGroup income_group_from_string(const std::string& s) {
    if (s == "low") return IncomeGroup::Low;
    if (s == "lower-middle") return IncomeGroup::LowerMiddle;
    if (s == "upper-middle") return IncomeGroup::UpperMiddle;
    throw std::runtime_error("unknown income group '" + s + "'");
}

double PopulationGrid::total_population() const {
    double total = 0.0;
    for (double v : values)
        if (v != nodata) total += v;
    return total;
}

// ---------------------------------------------------------------------------
// ASCII grid loader
// ---------------------------------------------------------------------------

PopulationGrid load_population_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("popgrid: cannot open " + path);

    PopulationGrid grid;
    bool have_nodata = false;
    int line_no = 0;
    std::string line;
    // Header: key/value pairs until the first line starting with a digit or sign.
    std::map<std::string, double> header;
    std::streampos data_start = in.tellg();
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) {
            data_start = in.tellg();
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(key[0])) || key[0] == '-' || key[0] == '+') break;
        double value;
        if (!(ls >> value))
            throw std::runtime_error("popgrid: malformed header at line " + std::to_string(line_no) +
                                     " of " + path);
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        header[key] = value;
        data_start = in.tellg();
    }

    auto require = [&](const std::string& key) {
        auto it = header.find(key);
        if (it == header.end())
            throw std::runtime_error("popgrid: header missing '" + key + "' in " + path);
        return it->second;
    };
    grid.ncols = static_cast<int>(require("ncols"));
    grid.nrows = static_cast<int>(require("nrows"));
    grid.xll_km = header.count("xllcorner") ? header["xllcorner"] : 0.0;
    grid.yll_km = header.count("yllcorner") ? header["yllcorner"] : 0.0;
    grid.cell_size_km = require("cellsize");
    if (header.count("nodata_value")) {
        grid.nodata = header["nodata_value"];
        have_nodata = true;
    }
    if (grid.ncols <= 0 || grid.nrows <= 0 || grid.cell_size_km <= 0.0)
        throw std::runtime_error("popgrid: non-positive dimensions in " + path);

    in.clear();
    in.seekg(data_start);
    grid.values.reserve(static_cast<std::size_t>(grid.ncols) * grid.nrows);
    double v;
    int value_line = line_no;
    while (in >> v) {
        if (v < 0.0 && (!have_nodata || v != grid.nodata))
            throw std::runtime_error("popgrid: negative population " + std::to_string(v) + " in " +
                                     path + " near line " + std::to_string(value_line));
        grid.values.push_back(v);
    }
    if (grid.values.size() != static_cast<std::size_t>(grid.ncols) * grid.nrows)
        throw std::runtime_error("popgrid: expected " +
                                 std::to_string(static_cast<std::size_t>(grid.ncols) * grid.nrows) +
                                 " cells, got " + std::to_string(grid.values.size()) + " in " + path);
    return grid;
}

// ---------------------------------------------------------------------------
// Regionalization
// ---------------------------------------------------------------------------

std::vector<RegionProfile> regionalize(const PopulationGrid& grid,
                                       const std::vector<RegionMask>& masks,
                                       std::vector<std::string>* warnings) {
    if (masks.empty()) throw std::runtime_error("regionalize: no region masks");

    const int n_cells = grid.nrows * grid.ncols;
    std::vector<int> owner(static_cast<std::size_t>(n_cells), -1);
    for (std::size_t m = 0; m < masks.size(); ++m) {
        for (const auto& r : masks[m].rects) {
            for (int row = r[0]; row <= r[2]; ++row) {
                for (int col = r[1]; col <= r[3]; ++col) {
                    if (row < 0 || row >= grid.nrows || col < 0 || col >= grid.ncols)
                        throw std::runtime_error("regionalize: mask '" + masks[m].region_id +
                                                 "' exceeds grid bounds");
                    int& o = owner[static_cast<std::size_t>(row) * grid.ncols + col];
                    if (o >= 0 && o != static_cast<int>(m))
                        throw std::runtime_error("regionalize: cell claimed by both '" +
                                                 masks[o].region_id + "' and '" + masks[m].region_id +
                                                 "'");
                    o = static_cast<int>(m);
                }
            }
        }
    }

    // Orphan cells go to the nearest region by centroid distance.
    for (int row = 0; row < grid.nrows; ++row) {
        for (int col = 0; col < grid.ncols; ++col) {
            std::size_t idx = static_cast<std::size_t>(row) * grid.ncols + col;
            if (owner[idx] >= 0) continue;
            double cx = grid.cell_x(col);
            double cy = grid.cell_y(row);
            double best = std::numeric_limits<double>::infinity();
            int best_m = 0;
            for (std::size_t m = 0; m < masks.size(); ++m) {
                for (const auto& r : masks[m].rects) {
                    for (int rr = r[0]; rr <= r[2]; ++rr) {
                        for (int cc = r[1]; cc <= r[3]; ++cc) {
                            double dx = grid.cell_x(cc) - cx;
                            double dy = grid.cell_y(rr) - cy;
                            double d2 = dx * dx + dy * dy;
                            if (d2 < best) {
                                best = d2;
                                best_m = static_cast<int>(m);
                            }
                        }
                    }
                }
            }
            owner[idx] = best_m;
            if (warnings)
                warnings->push_back("cell (" + std::to_string(row) + "," + std::to_string(col) +
                                    ") outside all regions; attributed to '" +
                                    masks[static_cast<std::size_t>(best_m)].region_id + "'");
        }
    }

    std::vector<RegionProfile> out(masks.size());
    std::vector<long long> cell_counts(masks.size(), 0);
    for (std::size_t m = 0; m < masks.size(); ++m) out[m].region_id = masks[m].region_id;
    for (int row = 0; row < grid.nrows; ++row) {
        for (int col = 0; col < grid.ncols; ++col) {
            int m = owner[static_cast<std::size_t>(row) * grid.ncols + col];
            ++cell_counts[static_cast<std::size_t>(m)];
            if (!grid.is_nodata(row, col)) out[static_cast<std::size_t>(m)].population += grid.at(row, col);
        }
    }
    for (std::size_t m = 0; m < masks.size(); ++m) {
        out[m].area_km2 = static_cast<double>(cell_counts[m]) * grid.cell_area_km2();
        out[m].pop_density = out[m].area_km2 > 0.0 ? out[m].population / out[m].area_km2 : 0.0;
        out[m].settlement_class = classify_settlement(out[m].pop_density, {});
    }
    return out;
}

SettlementClass classify_settlement(double pop_density, const SettlementThresholds& thresholds) {
    if (thresholds.urban_min_density <= thresholds.suburban_min_density ||
        thresholds.suburban_min_density <= 0.0)
        throw std::runtime_error("settlement thresholds must satisfy urban > suburban > 0");
    if (pop_density >= thresholds.urban_min_density) return SettlementClass::Urban;
    if (pop_density >= thresholds.suburban_min_density) return SettlementClass::Suburban;
    return SettlementClass::Rural;
}

// ---------------------------------------------------------------------------
// Country validation
// ---------------------------------------------------------------------------

namespace {

void check_fraction(ValidationReport& report, const std::string& field, double v) {
    if (!(v >= 0.0 && v <= 1.0))
        report.issues.push_back({field, field + " must be in [0,1], got " + std::to_string(v)});
}

}  // namespace

ValidationReport validate_country(const CountryContext& ctx) {
    ValidationReport report;
    if (ctx.iso3.empty()) report.issues.push_back({"iso3", "iso3 is empty"});
    if (ctx.n_mnos < 1)
        report.issues.push_back({"n_mnos", "n_mnos must be >= 1, got " + std::to_string(ctx.n_mnos)});
    check_fraction(report, "penetration_2020", ctx.penetration_2020);
    check_fraction(report, "smartphone_base_urban", ctx.smartphone_base_urban);
    check_fraction(report, "smartphone_base_rural", ctx.smartphone_base_rural);
    check_fraction(report, "coverage_4g", ctx.coverage_4g);
    if (std::abs(ctx.backhaul_profile.sum() - 1.0) > 1e-9)
        report.issues.push_back(
            {"backhaul_profile", "fractions sum to " + std::to_string(ctx.backhaul_profile.sum())});
    if (!(ctx.arpu_tiers.high_usd_month >= ctx.arpu_tiers.medium_usd_month &&
          ctx.arpu_tiers.medium_usd_month >= ctx.arpu_tiers.low_usd_month))
        report.issues.push_back({"arpu_tiers", "ARPU must satisfy high >= medium >= low"});
    if (ctx.population_total <= 0.0)
        report.issues.push_back({"population_total", "population_total must be positive"});
    for (std::size_t i = 0; i < ctx.spectrum_portfolio.size(); ++i) {
        const auto& band = ctx.spectrum_portfolio[i];
        std::string name = "spectrum_portfolio[" + std::to_string(i) + "]";
        if (band.bandwidth_mhz <= 0.0) report.issues.push_back({name, "bandwidth must be > 0"});
        if (band.price_usd_mhz_pop < 0.0) report.issues.push_back({name, "price must be >= 0"});
        if (band.duplex == Duplex::TDD && !(band.tdd_dl_fraction > 0.0 && band.tdd_dl_fraction < 1.0))
            report.issues.push_back({name, "TDD dl_fraction must be in (0,1)"});
    }
    return report;
}

// ---------------------------------------------------------------------------
// country.json
// ---------------------------------------------------------------------------

namespace {

ordered_json band_to_json(const SpectrumBand& band) {
    ordered_json j;
    j["frequency_mhz"] = band.frequency_mhz;
    j["bandwidth_mhz"] = band.bandwidth_mhz;
    j["generation"] = to_string(band.generation);
    j["role"] = band.role == SpectrumRole::Coverage ? "coverage" : "capacity";
    j["price_usd_mhz_pop"] = band.price_usd_mhz_pop;
    j["duplex"] = band.duplex == Duplex::FDD ? "FDD" : "TDD";
    if (band.duplex == Duplex::TDD) j["tdd_dl_fraction"] = band.tdd_dl_fraction;
    return j;
}

SpectrumBand band_from_json(const ordered_json& j) {
    SpectrumBand band;
    band.frequency_mhz = j.at("frequency_mhz").get<double>();
    band.bandwidth_mhz = j.at("bandwidth_mhz").get<double>();
    std::string gen = j.at("generation").get<std::string>();
    if (gen == "4G")
        band.generation = Generation::FourG;
    else if (gen == "5G")
        band.generation = Generation::FiveG;
    else
        throw std::runtime_error("unknown generation '" + gen + "'");
    std::string role = j.at("role").get<std::string>();
    if (role == "coverage")
        band.role = SpectrumRole::Coverage;
    else if (role == "capacity")
        band.role = SpectrumRole::Capacity;
    else
        throw std::runtime_error("unknown spectrum role '" + role + "'");
    band.price_usd_mhz_pop = j.at("price_usd_mhz_pop").get<double>();
    std::string duplex = j.at("duplex").get<std::string>();
    if (duplex == "FDD") {
        band.duplex = Duplex::FDD;
    } else if (duplex == "TDD") {
        band.duplex = Duplex::TDD;
        band.tdd_dl_fraction = j.at("tdd_dl_fraction").get<double>();
    } else {
        throw std::runtime_error("unknown duplex '" + duplex + "'");
    }
    return band;
}

}  // namespace

std::string country_to_json(const CountryContext& ctx) {
    ordered_json j;
    j["iso3"] = ctx.iso3;
    j["population_total"] = ctx.population_total;
    j["gdp_per_capita"] = ctx.gdp_per_capita;
    j["income_group"] = to_string(ctx.income_group);
    j["n_mnos"] = ctx.n_mnos;
    j["penetration_2020"] = ctx.penetration_2020;
    j["penetration_growth"] = ctx.penetration_growth;
    j["smartphone_base_urban"] = ctx.smartphone_base_urban;
    j["smartphone_base_rural"] = ctx.smartphone_base_rural;
    j["smartphone_growth"] = ctx.smartphone_growth;
    j["arpu_tiers"] = {{"high", ctx.arpu_tiers.high_usd_month},
                       {"medium", ctx.arpu_tiers.medium_usd_month},
                       {"low", ctx.arpu_tiers.low_usd_month}};
    ordered_json bands = ordered_json::array();
    for (const auto& band : ctx.spectrum_portfolio) bands.push_back(band_to_json(band));
    j["spectrum_portfolio"] = bands;
    j["coverage_4g"] = ctx.coverage_4g;
    j["coverage_2g_pct"] = ctx.coverage_2g_pct;
    j["national_towers"] = ctx.national_towers;
    j["backhaul_profile"] = {{"fiber", ctx.backhaul_profile.fiber},
                             {"copper", ctx.backhaul_profile.copper},
                             {"microwave", ctx.backhaul_profile.microwave},
                             {"satellite", ctx.backhaul_profile.satellite}};
    return j.dump(2) + "\n";
}

CountryContext load_country_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("country: cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("country: parse error in " + path + ": " + e.what());
    }
    CountryContext ctx;
    ctx.iso3 = j.at("iso3").get<std::string>();
    ctx.population_total = j.at("population_total").get<double>();
    ctx.gdp_per_capita = j.at("gdp_per_capita").get<double>();
    ctx.income_group = income_group_from_string(j.at("income_group").get<std::string>());
    ctx.n_mnos = j.at("n_mnos").get<int>();
    ctx.penetration_2020 = j.at("penetration_2020").get<double>();
    ctx.penetration_growth = j.at("penetration_growth").get<double>();
    ctx.smartphone_base_urban = j.at("smartphone_base_urban").get<double>();
    ctx.smartphone_base_rural = j.at("smartphone_base_rural").get<double>();
    ctx.smartphone_growth = j.at("smartphone_growth").get<double>();
    ctx.arpu_tiers.high_usd_month = j.at("arpu_tiers").at("high").get<double>();
    ctx.arpu_tiers.medium_usd_month = j.at("arpu_tiers").at("medium").get<double>();
    ctx.arpu_tiers.low_usd_month = j.at("arpu_tiers").at("low").get<double>();
    for (const auto& band : j.at("spectrum_portfolio")) ctx.spectrum_portfolio.push_back(band_from_json(band));
    ctx.coverage_4g = j.at("coverage_4g").get<double>();
    ctx.coverage_2g_pct = j.value("coverage_2g_pct", 100.0);
    ctx.national_towers = j.at("national_towers").get<double>();
    const auto& bh = j.at("backhaul_profile");
    ctx.backhaul_profile.fiber = bh.at("fiber").get<double>();
    ctx.backhaul_profile.copper = bh.at("copper").get<double>();
    ctx.backhaul_profile.microwave = bh.at("microwave").get<double>();
    ctx.backhaul_profile.satellite = bh.at("satellite").get<double>();
    return ctx;
}

void save_country_json(const CountryContext& ctx, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("country: cannot write " + path);
    out << country_to_json(ctx);
}

std::vector<RegionProfile> load_regions_csv(const std::string& path,
                                            const SettlementThresholds& thresholds) {
    csv::Table t = csv::read_file(path);
    int id_col = t.require_column("region_id");
    int area_col = t.require_column("area_km2");
    int pop_col = t.require_column("population");
    int lum_col = t.require_column("mean_luminosity_dn");
    int class_col = t.column("settlement_class");
    int core_col = t.column("has_core_node");

    std::vector<RegionProfile> regions;
    regions.reserve(t.rows.size());
    std::set<std::string> seen_ids;
    for (const auto& row : t.rows) {
        RegionProfile r;
        r.region_id = row[static_cast<std::size_t>(id_col)];
        if (!seen_ids.insert(r.region_id).second)
            throw std::runtime_error("regions: duplicate region_id '" + r.region_id + "' in " + path);
        r.area_km2 = csv::to_double(row[static_cast<std::size_t>(area_col)], path);
        if (r.area_km2 <= 0.0)
            throw std::runtime_error("regions: area must be > 0 for " + r.region_id);
        r.population = csv::to_double(row[static_cast<std::size_t>(pop_col)], path);
        if (r.population < 0.0)
            throw std::runtime_error("regions: population must be >= 0 for " + r.region_id);
        r.mean_luminosity_dn = csv::to_double(row[static_cast<std::size_t>(lum_col)], path);
        r.pop_density = r.population / r.area_km2;
        if (class_col >= 0 && !row[static_cast<std::size_t>(class_col)].empty())
            r.settlement_class = settlement_class_from_string(row[static_cast<std::size_t>(class_col)]);
        else
            r.settlement_class = classify_settlement(r.pop_density, thresholds);
        if (core_col >= 0 && !row[static_cast<std::size_t>(core_col)].empty())
            r.has_core_node = csv::to_int(row[static_cast<std::size_t>(core_col)], path) != 0;
        regions.push_back(std::move(r));
    }
    if (regions.empty()) throw std::runtime_error("regions: no rows in " + path);
    return regions;
}

}  // namespace uniband
