#include "uniband/costs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "uniband/csv.hpp"

namespace uniband {

double CostBook::site_rental_yr(SettlementClass c) const {
    switch (c) {
        case SettlementClass::Urban: return site_rental_urban_yr;
        case SettlementClass::Suburban: return site_rental_suburban_yr;
        case SettlementClass::Rural: return site_rental_rural_yr;
    }
    return site_rental_rural_yr;
}

double CostBook::fiber_per_meter(SettlementClass c) const {
    switch (c) {
        case SettlementClass::Urban: return fiber_urban_m;
        case SettlementClass::Suburban: return fiber_suburban_m;
        case SettlementClass::Rural: return fiber_rural_m;
    }
    return fiber_rural_m;
}

double CostBook::virtualization(SettlementClass c) const {
    switch (c) {
        case SettlementClass::Urban: return virtualization_urban;
        case SettlementClass::Suburban: return virtualization_suburban;
        case SettlementClass::Rural: return virtualization_rural;
    }
    return virtualization_rural;
}

double CostBook::microwave_price(MicrowaveClass c) const {
    switch (c) {
        case MicrowaveClass::Small: return microwave_small;
        case MicrowaveClass::Medium: return microwave_medium;
        case MicrowaveClass::Large: return microwave_large;
    }
    return microwave_small;
}

double CostBook::regional_node(TechnologyStrategy t) const {
    switch (t) {
        case TechnologyStrategy::FourG_Wireless:
        case TechnologyStrategy::FourG_Fiber: return regional_node_4g;
        case TechnologyStrategy::FiveG_NSA_Wireless: return regional_node_5g_nsa;
        case TechnologyStrategy::FiveG_SA_Fiber: return regional_cloud_node_5g_sa;
    }
    return regional_node_4g;
}

double CostBook::core_node(TechnologyStrategy t) const {
    switch (t) {
        case TechnologyStrategy::FourG_Wireless:
        case TechnologyStrategy::FourG_Fiber: return core_node_4g;
        case TechnologyStrategy::FiveG_NSA_Wireless: return core_node_5g_nsa;
        case TechnologyStrategy::FiveG_SA_Fiber: return core_cloud_node_5g_sa;
    }
    return core_node_4g;
}

const char* to_string(SharingRegime r) {
    switch (r) {
        case SharingRegime::Baseline: return "baseline";
        case SharingRegime::Passive: return "passive";
        case SharingRegime::Active: return "active";
        case SharingRegime::SRN: return "srn";
    }
    return "baseline";
}

SharingRegime sharing_from_string(const std::string& s) {
    if (s == "baseline") return SharingRegime::Baseline;
    if (s == "passive") return SharingRegime::Passive;
    if (s == "active") return SharingRegime::Active;
    if (s == "srn") return SharingRegime::SRN;
    throw std::runtime_error("unknown sharing regime '" + s + "'");
}

std::string StrategyVector::label() const {
    std::ostringstream out;
    out << to_string(technology) << '_' << to_string(sharing) << "_sp" << csv::format_double(spectrum_scale)
        << "_tax" << csv::format_double(tax_rate);
    return out.str();
}

// ---------------------------------------------------------------------------
// costbook.json
// ---------------------------------------------------------------------------

namespace {

struct FieldRef {
    const char* name;
    double CostBook::* member;
};

const FieldRef kPriceFields[] = {
    {"antenna", &CostBook::antenna},
    {"remote_radio_unit", &CostBook::remote_radio_unit},
    {"io_interface", &CostBook::io_interface},
    {"fronthaul_interface", &CostBook::fronthaul_interface},
    {"control_unit", &CostBook::control_unit},
    {"alarm_unit", &CostBook::alarm_unit},
    {"cooling_fans", &CostBook::cooling_fans},
    {"dist_power_supply", &CostBook::dist_power_supply},
    {"bbu_cabinet", &CostBook::bbu_cabinet},
    {"cots_processing", &CostBook::cots_processing},
    {"low_latency_switch", &CostBook::low_latency_switch},
    {"rack_cabinet", &CostBook::rack_cabinet},
    {"cloud_power_supply", &CostBook::cloud_power_supply},
    {"tower", &CostBook::tower},
    {"civil_materials", &CostBook::civil_materials},
    {"transportation", &CostBook::transportation},
    {"installation", &CostBook::installation},
    {"site_rental_urban_yr", &CostBook::site_rental_urban_yr},
    {"site_rental_suburban_yr", &CostBook::site_rental_suburban_yr},
    {"site_rental_rural_yr", &CostBook::site_rental_rural_yr},
    {"power_system_4g", &CostBook::power_system_4g},
    {"power_system_5g", &CostBook::power_system_5g},
    {"power_opex_4g_yr", &CostBook::power_opex_4g_yr},
    {"power_opex_5g_yr", &CostBook::power_opex_5g_yr},
    {"microwave_small", &CostBook::microwave_small},
    {"microwave_medium", &CostBook::microwave_medium},
    {"microwave_large", &CostBook::microwave_large},
    {"fiber_urban_m", &CostBook::fiber_urban_m},
    {"fiber_suburban_m", &CostBook::fiber_suburban_m},
    {"fiber_rural_m", &CostBook::fiber_rural_m},
    {"core_node_4g", &CostBook::core_node_4g},
    {"core_node_5g_nsa", &CostBook::core_node_5g_nsa},
    {"core_cloud_node_5g_sa", &CostBook::core_cloud_node_5g_sa},
    {"core_fiber_m", &CostBook::core_fiber_m},
    {"regional_node_4g", &CostBook::regional_node_4g},
    {"regional_node_5g_nsa", &CostBook::regional_node_5g_nsa},
    {"regional_cloud_node_5g_sa", &CostBook::regional_cloud_node_5g_sa},
    {"regional_fiber_m", &CostBook::regional_fiber_m},
    {"local_node_4g", &CostBook::local_node_4g},
    {"local_node_5g_nsa", &CostBook::local_node_5g_nsa},
    {"local_cloud_node_5g_sa", &CostBook::local_cloud_node_5g_sa},
};

const FieldRef kFinanceFields[] = {
    {"maintenance_fraction", &CostBook::maintenance_fraction},
    {"admin_fraction", &CostBook::admin_fraction},
    {"wacc", &CostBook::wacc},
    {"discount_rate", &CostBook::discount_rate},
    {"profit_margin", &CostBook::profit_margin},
    {"tax_rate", &CostBook::tax_rate},
    {"cran_split_factor", &CostBook::cran_split_factor},
    {"virtualization_urban", &CostBook::virtualization_urban},
    {"virtualization_suburban", &CostBook::virtualization_suburban},
    {"virtualization_rural", &CostBook::virtualization_rural},
};

void require_price(double value, const char* item) {
    if (!std::isfinite(value) || value < 0.0)
        throw std::runtime_error(std::string("costbook: missing or invalid price for '") + item + "'");
}

}  // namespace

CostBook load_costbook_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("costbook: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("costbook: parse error in " + path + ": " + e.what());
    }
    CostBook book;
    const auto& prices = j.at("unit_prices");
    for (const auto& f : kPriceFields) {
        if (!prices.contains(f.name))
            throw std::runtime_error("costbook: missing price '" + std::string(f.name) + "' in " + path);
        book.*(f.member) = prices.at(f.name).get<double>();
        require_price(book.*(f.member), f.name);
    }
    const auto& fin = j.at("financial");
    for (const auto& f : kFinanceFields) {
        if (!fin.contains(f.name))
            throw std::runtime_error("costbook: missing parameter '" + std::string(f.name) + "' in " +
                                     path);
        book.*(f.member) = fin.at(f.name).get<double>();
    }
    book.horizon_years = fin.at("horizon_years").get<int>();
    if (book.horizon_years < 1) throw std::runtime_error("costbook: horizon_years must be >= 1");
    auto check_fraction = [&](double v, const char* name) {
        if (v < 0.0 || v > 1.0)
            throw std::runtime_error("costbook: " + std::string(name) + " must be in [0,1]");
    };
    check_fraction(book.maintenance_fraction, "maintenance_fraction");
    check_fraction(book.admin_fraction, "admin_fraction");
    check_fraction(book.profit_margin, "profit_margin");
    check_fraction(book.tax_rate, "tax_rate");
    if (book.wacc <= -1.0 || book.discount_rate <= -1.0)
        throw std::runtime_error("costbook: discount rates must be > -1");
    if (book.cran_split_factor < 1.0 || book.virtualization_urban < 1.0 ||
        book.virtualization_suburban < 1.0 || book.virtualization_rural < 1.0)
        throw std::runtime_error("costbook: pooling factors must be >= 1");
    return book;
}

std::string costbook_to_json(const CostBook& book) {
    nlohmann::ordered_json prices;
    for (const auto& f : kPriceFields) prices[f.name] = book.*(f.member);
    nlohmann::ordered_json fin;
    for (const auto& f : kFinanceFields) fin[f.name] = book.*(f.member);
    fin["horizon_years"] = book.horizon_years;
    nlohmann::ordered_json j;
    j["unit_prices"] = prices;
    j["financial"] = fin;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Unit cost operations
// ---------------------------------------------------------------------------

double ran_cost_dran(const CostBook& book, Generation generation, int sectors) {
    (void)generation;  // 4G and 5G NSA share the same equipment list at these prices
    require_price(book.antenna, "antenna");
    require_price(book.remote_radio_unit, "remote_radio_unit");
    require_price(book.io_interface, "io_interface");
    require_price(book.fronthaul_interface, "fronthaul_interface");
    require_price(book.cots_processing, "cots_processing");
    require_price(book.control_unit, "control_unit");
    require_price(book.alarm_unit, "alarm_unit");
    require_price(book.cooling_fans, "cooling_fans");
    require_price(book.dist_power_supply, "dist_power_supply");
    require_price(book.bbu_cabinet, "bbu_cabinet");
    return sectors * (book.antenna + book.remote_radio_unit) + book.io_interface +
           book.fronthaul_interface + book.cots_processing /*BB*/ + book.cots_processing /*GP*/ +
           book.control_unit + book.alarm_unit + book.cooling_fans + book.dist_power_supply +
           book.bbu_cabinet;
}

double ran_cost_cran(const CostBook& book, double virtualization, double split_factor, int sectors) {
    if (virtualization < 1.0) throw std::runtime_error("ran_cost_cran: virtualization must be >= 1");
    if (split_factor < 1.0) throw std::runtime_error("ran_cost_cran: split factor must be >= 1");
    require_price(book.rack_cabinet, "rack_cabinet");
    double pooled = (book.cots_processing + book.cots_processing) / virtualization;
    double shared = (book.io_interface + book.dist_power_supply + book.rack_cabinet) / split_factor;
    return sectors * (book.antenna + book.remote_radio_unit) + book.fronthaul_interface +
           book.control_unit + book.alarm_unit + book.cooling_fans + pooled + shared;
}

double ran_cost_cran(const CostBook& book, SettlementClass settlement_class, int sectors) {
    return ran_cost_cran(book, book.virtualization(settlement_class), book.cran_split_factor, sectors);
}

double network_cost(double ran, double backhaul, double core) {
    if (ran < 0.0 || backhaul < 0.0 || core < 0.0)
        throw std::runtime_error("network_cost: components must be >= 0");
    return ran + backhaul + core;
}

double spectrum_cost(const std::vector<SpectrumBand>& bands, double population, double scale) {
    if (population < 0.0) throw std::runtime_error("spectrum_cost: population must be >= 0");
    double total = 0.0;
    for (const auto& b : bands) total += b.price_usd_mhz_pop * b.bandwidth_mhz * population * scale;
    return total;
}

double tax(double network_cost_usd, double tax_rate) {
    if (tax_rate < 0.0) throw std::runtime_error("tax: rate must be >= 0");
    return network_cost_usd * tax_rate;
}

double profit(double base_usd, double margin) {
    if (margin < 0.0) throw std::runtime_error("profit: margin must be >= 0");
    return base_usd * margin;
}

double npv(const std::vector<double>& cashflows, double rate) {
    if (rate <= -1.0) throw std::runtime_error("npv: rate must be > -1");
    double total = 0.0;
    for (std::size_t t = 0; t < cashflows.size(); ++t)
        total += cashflows[t] / std::pow(1.0 + rate, static_cast<double>(t));
    return total;
}

double annuity_npv(double annual, int years, double rate) {
    double total = 0.0;
    for (int t = 0; t < years; ++t) total += annual / std::pow(1.0 + rate, static_cast<double>(t));
    return total;
}

// ---------------------------------------------------------------------------
// Sharing
// ---------------------------------------------------------------------------

CostComponents apply_sharing(const CostComponents& per_operator, SharingRegime regime, int n_mnos,
                             SettlementClass settlement_class) {
    if (n_mnos < 1) throw std::runtime_error("apply_sharing: n_mnos must be >= 1");
    const double n = static_cast<double>(n_mnos);
    CostComponents market;
    switch (regime) {
        case SharingRegime::Baseline:
            market.passive = per_operator.passive * n;
            market.active = per_operator.active * n;
            market.core = per_operator.core * n;
            break;
        case SharingRegime::Passive:
            market.passive = per_operator.passive;
            market.active = per_operator.active * n;
            market.core = per_operator.core * n;
            break;
        case SharingRegime::Active:
            market.passive = per_operator.passive;
            market.active = per_operator.active;
            market.core = per_operator.core * n;
            break;
        case SharingRegime::SRN:
            market.passive = per_operator.passive;
            market.active = per_operator.active;
            market.core = settlement_class == SettlementClass::Rural ? per_operator.core
                                                                     : per_operator.core * n;
            break;
        default:
            throw std::runtime_error("apply_sharing: unknown regime");
    }
    return market;
}

// ---------------------------------------------------------------------------
// Region pricing
// ---------------------------------------------------------------------------

RegionPricing price_region(const RegionProfile& region, const SitePlan& plan,
                           const StrategyVector& strategy, const CountryContext& ctx,
                           const CostBook& book, double regional_fiber_cost) {
    const Generation gen = generation_of(strategy.technology);
    const long long touched = plan.brownfield_upgrades + plan.greenfield_builds;

    // --- capex, booked in year 0 ---
    double ran_unit = uses_cran(strategy.technology)
                          ? ran_cost_cran(book, region.settlement_class)
                          : ran_cost_dran(book, gen);
    double active_electronics = static_cast<double>(touched) * (ran_unit + book.power_system(gen));

    double backhaul_capex = 0.0;
    backhaul_capex += plan.backhaul.new_microwave_small * book.microwave_small;
    backhaul_capex += plan.backhaul.new_microwave_medium * book.microwave_medium;
    backhaul_capex += plan.backhaul.new_microwave_large * book.microwave_large;
    backhaul_capex += plan.backhaul.new_fiber_length_m * book.fiber_per_meter(region.settlement_class);

    double site_build = static_cast<double>(plan.greenfield_builds) *
                        (book.tower + book.civil_materials + book.transportation + book.installation);

    // Core-node regions take a core upgrade for the target technology; the
    // rest get a regional node hanging off the extended fiber. Regions with
    // nothing to serve get no core extension.
    double core_capex = regional_fiber_cost;
    if (region.population > 0.0 || plan.required_sites > 0)
        core_capex += region.has_core_node ? book.core_node(strategy.technology)
                                           : book.regional_node(strategy.technology);
    if (uses_cran(strategy.technology)) {
        core_capex += static_cast<double>(plan.cloud_nodes) * book.local_cloud_node_5g_sa;
        core_capex += plan.fronthaul_total_m * book.fiber_per_meter(region.settlement_class);
    }

    // --- opex, years 0..horizon-1, discounted at the WACC ---
    const double annuity = annuity_npv(1.0, book.horizon_years, book.wacc);
    double rental_npv = static_cast<double>(touched) * book.site_rental_yr(region.settlement_class) * annuity;
    double power_npv = static_cast<double>(touched) * book.power_opex_yr(gen) * annuity;
    double maintenance_npv =
        book.maintenance_fraction * (active_electronics + backhaul_capex) * annuity;

    RegionPricing pricing;
    pricing.per_operator.passive = site_build + rental_npv;
    pricing.per_operator.active = active_electronics + backhaul_capex + power_npv + maintenance_npv;
    pricing.per_operator.core = core_capex;

    pricing.market = apply_sharing(pricing.per_operator, strategy.sharing, ctx.n_mnos,
                                   region.settlement_class);
    pricing.network = pricing.market.total();
    pricing.administration = book.admin_fraction * pricing.network;
    // Each operator licenses the bands of the generation it deploys.
    std::vector<SpectrumBand> licensed;
    for (const auto& band : ctx.spectrum_portfolio)
        if (band.generation == gen) licensed.push_back(band);
    pricing.spectrum = static_cast<double>(ctx.n_mnos) *
                       spectrum_cost(licensed, region.population, strategy.spectrum_scale);
    pricing.tax = tax(pricing.network, strategy.tax_rate);
    // Profit margin on network investment and tax. The spectrum term is left
    // out of the base so that social cost stays flat across spectrum-price
    // scenarios whenever no subsidy is triggered.
    pricing.profit = profit(pricing.network + pricing.tax, book.profit_margin);
    pricing.private_cost =
        pricing.network + pricing.administration + pricing.spectrum + pricing.tax + pricing.profit;
    return pricing;
}

// ---------------------------------------------------------------------------
// Cross-subsidy and decomposition
// ---------------------------------------------------------------------------

CrossSubsidyResult assess_and_cross_subsidize(const std::vector<RegionAssessment>& regions) {
    CrossSubsidyResult result;
    result.subsidy_by_region.assign(regions.size(), 0.0);

    double pool = 0.0;
    double total_population = 0.0;
    std::vector<std::size_t> deficit_regions;
    std::vector<double> deficits(regions.size(), 0.0);
    for (std::size_t i = 0; i < regions.size(); ++i) {
        total_population += regions[i].population;
        double gap = regions[i].pricing.private_cost - regions[i].market_revenue_npv;
        if (gap > 0.0) {
            deficits[i] = gap;
            deficit_regions.push_back(i);
        } else {
            pool += -gap;
        }
    }

    // Cheapest coverage first: ascending deficit per capita.
    std::sort(deficit_regions.begin(), deficit_regions.end(), [&](std::size_t a, std::size_t b) {
        double pa = regions[a].population > 0.0 ? deficits[a] / regions[a].population
                                                : std::numeric_limits<double>::infinity();
        double pb = regions[b].population > 0.0 ? deficits[b] / regions[b].population
                                                : std::numeric_limits<double>::infinity();
        if (pa != pb) return pa < pb;
        return regions[a].region_id < regions[b].region_id;
    });

    double viable_population = total_population;
    for (std::size_t i : deficit_regions) viable_population -= regions[i].population;

    for (std::size_t i : deficit_regions) {
        double covered = std::min(pool, deficits[i]);
        pool -= covered;
        double residual = deficits[i] - covered;
        if (residual <= 0.0) {
            viable_population += regions[i].population;  // fully cross-subsidized
        } else {
            result.subsidy_by_region[i] = residual;
            result.residual_deficit += residual;
        }
    }
    result.viable_population_share = total_population > 0.0 ? viable_population / total_population : 1.0;
    return result;
}

CostDecomposition decompose(const std::vector<RegionAssessment>& regions) {
    CrossSubsidyResult subsidy = assess_and_cross_subsidize(regions);

    CostDecomposition d;
    d.viable_population_share = subsidy.viable_population_share;
    d.residual_deficit = subsidy.residual_deficit;
    d.national.region_id = "NATIONAL";
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto& p = regions[i].pricing;
        DecompositionRow row;
        row.region_id = regions[i].region_id;
        row.network = p.network;
        row.administration = p.administration;
        row.spectrum = p.spectrum;
        row.tax = p.tax;
        row.profit = p.profit;
        row.subsidy = subsidy.subsidy_by_region[i];
        row.private_cost = p.private_cost;
        row.government_cost = row.subsidy - row.spectrum - row.tax;
        // Social cost through the transfer-cancellation form: spectrum and tax
        // cancel between operator and government, and computing it this way
        // keeps the total bit-identical across spectrum-price scenarios.
        row.social_cost = row.network + row.administration + row.profit + row.subsidy;

        // Internal consistency: the decomposition identities must hold.
        double scale = std::max({1.0, std::abs(row.private_cost), std::abs(row.social_cost)});
        if (std::abs(row.private_cost -
                     (row.network + row.administration + row.spectrum + row.tax + row.profit)) >
            1e-9 * scale)
            throw std::logic_error("decompose: private-cost identity violated for " + row.region_id);
        if (std::abs(row.social_cost - (row.government_cost + row.private_cost)) > 1e-9 * scale)
            throw std::logic_error("decompose: social-cost identity violated for " + row.region_id);

        d.national.network += row.network;
        d.national.administration += row.administration;
        d.national.spectrum += row.spectrum;
        d.national.tax += row.tax;
        d.national.profit += row.profit;
        d.national.subsidy += row.subsidy;
        d.national.private_cost += row.private_cost;
        d.national.government_cost += row.government_cost;
        d.national.social_cost += row.social_cost;
        d.regions.push_back(std::move(row));
    }
    return d;
}

std::string decomposition_csv(const CostDecomposition& d, const std::string& country,
                              const std::string& scenario, const std::string& strategy) {
    std::ostringstream out;
    out << "country,scenario,strategy,region_id,network,administration,spectrum,tax,profit,"
           "subsidy,private,government,social\n";
    auto emit = [&](const DecompositionRow& row) {
        out << country << ',' << scenario << ',' << strategy << ',' << row.region_id << ','
            << csv::format_double(row.network) << ',' << csv::format_double(row.administration) << ','
            << csv::format_double(row.spectrum) << ',' << csv::format_double(row.tax) << ','
            << csv::format_double(row.profit) << ',' << csv::format_double(row.subsidy) << ','
            << csv::format_double(row.private_cost) << ',' << csv::format_double(row.government_cost)
            << ',' << csv::format_double(row.social_cost) << '\n';
    };
    for (const auto& row : d.regions) emit(row);
    emit(d.national);
    return out.str();
}

}  // namespace uniband
