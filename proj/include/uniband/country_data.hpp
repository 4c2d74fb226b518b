#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace uniband {

enum class SettlementClass { Urban, Suburban, Rural };
enum class Generation { FourG, FiveG };
enum class SpectrumRole { Coverage, Capacity };
enum class Duplex { FDD, TDD };
enum class IncomeGroup { Low, LowerMiddle, UpperMiddle };
enum class BackhaulTech { Fiber, Copper, Microwave, Satellite };

const char* to_string(SettlementClass c);
const char* to_string(Generation g);
const char* to_string(IncomeGroup g);
const char* to_string(BackhaulTech t);
SettlementClass settlement_class_from_string(const std::string& s);
IncomeGroup income_group_from_string(const std::string& s);

struct SpectrumBand {
    double frequency_mhz = 0.0;
    double bandwidth_mhz = 0.0;
    Generation generation = Generation::FourG;
    SpectrumRole role = SpectrumRole::Coverage;
    double price_usd_mhz_pop = 0.0;
    Duplex duplex = Duplex::FDD;
    double tdd_dl_fraction = 0.0;  // meaningful only for TDD

    // Downlink-usable bandwidth; TDD is scaled by its downlink share.
    double downlink_mhz() const {
        return duplex == Duplex::TDD ? bandwidth_mhz * tdd_dl_fraction : bandwidth_mhz;
    }
};

struct ArpuTiers {
    double high_usd_month = 0.0;
    double medium_usd_month = 0.0;
    double low_usd_month = 0.0;
};

struct BackhaulProfile {
    double fiber = 0.0;
    double copper = 0.0;
    double microwave = 0.0;
    double satellite = 0.0;

    double sum() const { return fiber + copper + microwave + satellite; }
};

struct CountryContext {
    std::string iso3;
    double population_total = 0.0;
    double gdp_per_capita = 0.0;
    IncomeGroup income_group = IncomeGroup::Low;
    int n_mnos = 1;
    double penetration_2020 = 0.0;        // fraction of population
    double penetration_growth = 0.0;      // fraction per year
    double smartphone_base_urban = 0.0;
    double smartphone_base_rural = 0.0;
    double smartphone_growth = 0.0;
    ArpuTiers arpu_tiers;
    std::vector<SpectrumBand> spectrum_portfolio;
    double coverage_4g = 0.0;             // fraction
    double coverage_2g_pct = 100.0;       // percent, used for tower estimation
    double national_towers = 0.0;
    BackhaulProfile backhaul_profile;
};

struct RegionProfile {
    std::string region_id;
    double area_km2 = 0.0;
    double population = 0.0;
    double pop_density = 0.0;  // people per km2
    SettlementClass settlement_class = SettlementClass::Rural;
    double mean_luminosity_dn = 0.0;
    int existing_sites = 0;
    int sites_legacy = 0;
    int sites_4g = 0;
    std::map<BackhaulTech, int> backhaul_mix;
    bool has_core_node = false;
};

struct PopulationGrid {
    int ncols = 0;
    int nrows = 0;
    double xll_km = 0.0;
    double yll_km = 0.0;
    double cell_size_km = 1.0;
    double nodata = -9999.0;
    std::vector<double> values;  // row-major, row 0 = northernmost

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * ncols + col]; }
    bool is_nodata(int row, int col) const { return at(row, col) == nodata; }
    double cell_area_km2() const { return cell_size_km * cell_size_km; }
    // Centroid of a cell in the grid's km frame.
    double cell_x(int col) const { return xll_km + (col + 0.5) * cell_size_km; }
    double cell_y(int row) const { return yll_km + (nrows - 1 - row + 0.5) * cell_size_km; }

    double total_population() const;
};

// Axis-aligned cell-index mask; rectangles are inclusive of both corners.
struct RegionMask {
    std::string region_id;
    std::vector<std::array<int, 4>> rects;  // row0, col0, row1, col1
};

struct SettlementThresholds {
    double urban_min_density = 1500.0;    // people per km2
    double suburban_min_density = 300.0;
};

struct ValidationIssue {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

PopulationGrid load_population_grid(const std::string& path);

std::vector<RegionProfile> regionalize(const PopulationGrid& grid,
                                       const std::vector<RegionMask>& masks,
                                       std::vector<std::string>* warnings = nullptr);

SettlementClass classify_settlement(double pop_density, const SettlementThresholds& thresholds);

ValidationReport validate_country(const CountryContext& ctx);

// country.json round trip. Serialization is canonical: loading a file written
// by save_country_json and re-saving produces identical bytes.
CountryContext load_country_json(const std::string& path);
std::string country_to_json(const CountryContext& ctx);
void save_country_json(const CountryContext& ctx, const std::string& path);

std::vector<RegionProfile> load_regions_csv(const std::string& path,
                                            const SettlementThresholds& thresholds = {});

}  // namespace uniband
