#pragma once

#include <string>
#include <vector>

#include "uniband/country_data.hpp"

namespace uniband {

struct Scenario {
    std::string name;               // S1, S2, S3
    double urban_mbps = 25.0;       // per-user target by settlement class
    double suburban_mbps = 10.0;
    double rural_mbps = 2.0;
    double obf = 20.0;

    double target_for(SettlementClass c) const {
        switch (c) {
            case SettlementClass::Urban: return urban_mbps;
            case SettlementClass::Suburban: return suburban_mbps;
            case SettlementClass::Rural: return rural_mbps;
        }
        return rural_mbps;
    }
};

struct DemandTimeline {
    std::string region_id;
    std::vector<double> users_per_km2;        // one entry per year
    std::vector<double> smartphones_per_km2;
    std::vector<double> demand_mbps_per_km2;
    std::vector<double> revenue_usd;          // undiscounted, per year, whole region
    double discounted_revenue_total = 0.0;    // operator-level NPV
    double peak_demand_mbps_per_km2 = 0.0;
};

struct DemandAssumptions {
    int horizon_years = 10;
    int base_year = 2020;
    double revenue_discount_rate = 0.05;
};

double users_per_km2(double pop_density, double penetration, int networks);
double penetration_forecast(double base, double growth, int year_offset);
double demand_mbps_per_km2(double users_km2, double smartphone_pen, double target_capacity_mbps,
                           double obf);
double arpu_for_region(double mean_luminosity_dn, const ArpuTiers& tiers);
double revenue_npv(double arpu_usd_month, const std::vector<double>& users_by_year,
                   double discount_rate);

DemandTimeline build_demand_timeline(const RegionProfile& region, const CountryContext& ctx,
                                     const Scenario& scenario,
                                     const DemandAssumptions& assumptions = {});

}  // namespace uniband
