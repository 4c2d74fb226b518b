#pragma once

#include <string>
#include <vector>

#include "uniband/country_data.hpp"
#include "uniband/dimensioning.hpp"

namespace uniband {

struct CostBook {
    // Unit equipment and installation prices (USD)
    double antenna = 1500.0;
    double remote_radio_unit = 4000.0;
    double io_interface = 1500.0;          // S1-X2 / N2-N3
    double fronthaul_interface = 1500.0;
    double control_unit = 1500.0;
    double alarm_unit = 250.0;
    double cooling_fans = 250.0;
    double dist_power_supply = 250.0;
    double bbu_cabinet = 500.0;
    double cots_processing = 500.0;        // baseband or general processing blade
    double low_latency_switch = 500.0;
    double rack_cabinet = 500.0;
    double cloud_power_supply = 1000.0;
    double tower = 5000.0;
    double civil_materials = 5000.0;
    double transportation = 5000.0;
    double installation = 5000.0;
    double site_rental_urban_yr = 9600.0;
    double site_rental_suburban_yr = 4000.0;
    double site_rental_rural_yr = 1000.0;
    double power_system_4g = 5000.0;       // generator + battery, capex
    double power_system_5g = 15000.0;
    double power_opex_4g_yr = 5000.0;
    double power_opex_5g_yr = 10000.0;
    double microwave_small = 30000.0;      // < 20 km
    double microwave_medium = 40000.0;     // 20-40 km
    double microwave_large = 80000.0;      // > 40 km
    double fiber_urban_m = 25.0;
    double fiber_suburban_m = 15.0;
    double fiber_rural_m = 5.0;
    double core_node_4g = 75000.0;
    double core_node_5g_nsa = 75000.0;
    double core_cloud_node_5g_sa = 250000.0;
    double core_fiber_m = 4.0;
    double regional_node_4g = 20000.0;
    double regional_node_5g_nsa = 20000.0;
    double regional_cloud_node_5g_sa = 100000.0;
    double regional_fiber_m = 2.0;
    double local_node_4g = 20000.0;
    double local_node_5g_nsa = 20000.0;
    double local_cloud_node_5g_sa = 100000.0;

    // Financial parameters
    double maintenance_fraction = 0.10;  // of active-electronics capex, per year
    double admin_fraction = 0.20;        // of network cost
    double wacc = 0.15;
    double discount_rate = 0.05;
    double profit_margin = 0.20;
    double tax_rate = 0.30;
    int horizon_years = 10;

    // C-RAN pooling
    double cran_split_factor = 7.0;
    double virtualization_urban = 2.0;
    double virtualization_suburban = 4.0;
    double virtualization_rural = 16.0;

    double site_rental_yr(SettlementClass c) const;
    double fiber_per_meter(SettlementClass c) const;
    double virtualization(SettlementClass c) const;
    double power_system(Generation g) const { return g == Generation::FourG ? power_system_4g : power_system_5g; }
    double power_opex_yr(Generation g) const { return g == Generation::FourG ? power_opex_4g_yr : power_opex_5g_yr; }
    double microwave_price(MicrowaveClass c) const;
    double regional_node(TechnologyStrategy t) const;
    double core_node(TechnologyStrategy t) const;
};

CostBook load_costbook_json(const std::string& path);
std::string costbook_to_json(const CostBook& book);

enum class SharingRegime { Baseline, Passive, Active, SRN };
const char* to_string(SharingRegime r);
SharingRegime sharing_from_string(const std::string& s);

struct StrategyVector {
    TechnologyStrategy technology = TechnologyStrategy::FourG_Wireless;
    SharingRegime sharing = SharingRegime::Baseline;
    double spectrum_scale = 1.0;
    double tax_rate = 0.30;

    std::string label() const;
};

// Per-site electronics for a distributed RAN (Eq-12 style composition).
double ran_cost_dran(const CostBook& book, Generation generation, int sectors = 3);
// Cloud-RAN site equivalent: processing pooled at the virtualization ratio,
// interface/power/rack shared at the splitting factor. With both factors at 1
// this equals the D-RAN total with the rack substituted for the cabinet.
double ran_cost_cran(const CostBook& book, double virtualization, double split_factor,
                     int sectors = 3);
double ran_cost_cran(const CostBook& book, SettlementClass settlement_class, int sectors = 3);

double network_cost(double ran, double backhaul, double core);
double spectrum_cost(const std::vector<SpectrumBand>& bands, double population, double scale);
double tax(double network_cost_usd, double tax_rate);
double profit(double base_usd, double margin);
double npv(const std::vector<double>& cashflows, double rate);
// Present value of a constant annual flow over `years`, first payment at t=0.
double annuity_npv(double annual, int years, double rate);

// Cost components at operator level, already discounted.
struct CostComponents {
    double passive = 0.0;  // site build capex + rental opex
    double active = 0.0;   // RAN electronics, power systems, backhaul + their opex
    double core = 0.0;     // regional/core nodes, regional fiber, C-RAN overlay

    double total() const { return passive + active + core; }
};

// Market-level components under a sharing regime: shared groups are built
// once, dedicated groups once per operator.
CostComponents apply_sharing(const CostComponents& per_operator, SharingRegime regime, int n_mnos,
                             SettlementClass settlement_class);

struct RegionPricing {
    CostComponents per_operator;
    CostComponents market;
    double network = 0.0;         // market network NPV
    double administration = 0.0;
    double spectrum = 0.0;        // market, scaled
    double tax = 0.0;
    double profit = 0.0;
    double private_cost = 0.0;    // Eq-8 sum
};

// Prices one region's site plan under a strategy. regional_fiber_cost is this
// region's share of the national fiber build-out.
RegionPricing price_region(const RegionProfile& region, const SitePlan& plan,
                           const StrategyVector& strategy, const CountryContext& ctx,
                           const CostBook& book, double regional_fiber_cost);

struct RegionAssessment {
    std::string region_id;
    double population = 0.0;
    RegionPricing pricing;
    double market_revenue_npv = 0.0;
};

struct DecompositionRow {
    std::string region_id;
    double network = 0.0;
    double administration = 0.0;
    double spectrum = 0.0;
    double tax = 0.0;
    double profit = 0.0;
    double subsidy = 0.0;
    double private_cost = 0.0;
    double government_cost = 0.0;
    double social_cost = 0.0;
};

struct CostDecomposition {
    std::vector<DecompositionRow> regions;
    DecompositionRow national;
    double viable_population_share = 0.0;
    double residual_deficit = 0.0;  // required subsidy
};

struct CrossSubsidyResult {
    double viable_population_share = 0.0;
    double residual_deficit = 0.0;
    std::vector<double> subsidy_by_region;
};

// Pools surpluses (revenue above private cost) and fills deficits in
// ascending deficit-per-capita order.
CrossSubsidyResult assess_and_cross_subsidize(const std::vector<RegionAssessment>& regions);

CostDecomposition decompose(const std::vector<RegionAssessment>& regions);

std::string decomposition_csv(const CostDecomposition& d, const std::string& country,
                              const std::string& scenario, const std::string& strategy);

}  // namespace uniband
