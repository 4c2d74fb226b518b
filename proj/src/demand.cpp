#include "uniband/demand.hpp"

#include <cmath>
#include <stdexcept>

namespace uniband {

double users_per_km2(double pop_density, double penetration, int networks) {
    if (networks < 1) throw std::runtime_error("users_per_km2: networks must be >= 1");
    return pop_density * penetration / static_cast<double>(networks);
}

double penetration_forecast(double base, double growth, int year_offset) {
    double v = base * std::pow(1.0 + growth, year_offset);
    return std::min(v, 1.0);
}

double demand_mbps_per_km2(double users_km2, double smartphone_pen, double target_capacity_mbps,
                           double obf) {
    if (obf < 1.0) throw std::runtime_error("demand: overbooking factor must be >= 1");
    return users_km2 * smartphone_pen * target_capacity_mbps / obf;
}

double arpu_for_region(double mean_luminosity_dn, const ArpuTiers& tiers) {
    // Strict thresholds: exactly 20 or 15 DN falls to the lower tier.
    if (mean_luminosity_dn > 20.0) return tiers.high_usd_month;
    if (mean_luminosity_dn > 15.0) return tiers.medium_usd_month;
    return tiers.low_usd_month;
}

double revenue_npv(double arpu_usd_month, const std::vector<double>& users_by_year,
                   double discount_rate) {
    if (discount_rate < 0.0) throw std::runtime_error("revenue_npv: discount rate must be >= 0");
    double total = 0.0;
    for (std::size_t t = 0; t < users_by_year.size(); ++t)
        total += arpu_usd_month * users_by_year[t] * 12.0 / std::pow(1.0 + discount_rate, static_cast<double>(t));
    return total;
}

DemandTimeline build_demand_timeline(const RegionProfile& region, const CountryContext& ctx,
                                     const Scenario& scenario, const DemandAssumptions& assumptions) {
    DemandTimeline tl;
    tl.region_id = region.region_id;
    const double target = scenario.target_for(region.settlement_class);
    const double smartphone_base = region.settlement_class == SettlementClass::Rural
                                       ? ctx.smartphone_base_rural
                                       : ctx.smartphone_base_urban;
    const double arpu = arpu_for_region(region.mean_luminosity_dn, ctx.arpu_tiers);

    std::vector<double> users_total;  // whole region, for the revenue stream
    for (int t = 0; t < assumptions.horizon_years; ++t) {
        double pen = penetration_forecast(ctx.penetration_2020, ctx.penetration_growth, t);
        double u = users_per_km2(region.pop_density, pen, ctx.n_mnos);
        double sp = penetration_forecast(smartphone_base, ctx.smartphone_growth, t);
        double d = demand_mbps_per_km2(u, sp, target, scenario.obf);
        tl.users_per_km2.push_back(u);
        tl.smartphones_per_km2.push_back(u * sp);
        tl.demand_mbps_per_km2.push_back(d);
        users_total.push_back(u * region.area_km2);
        tl.revenue_usd.push_back(arpu * u * region.area_km2 * 12.0);
        tl.peak_demand_mbps_per_km2 = std::max(tl.peak_demand_mbps_per_km2, d);
    }
    tl.discounted_revenue_total = revenue_npv(arpu, users_total, assumptions.revenue_discount_rate);
    return tl;
}

}  // namespace uniband
