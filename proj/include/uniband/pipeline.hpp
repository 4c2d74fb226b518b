#pragma once

#include <string>
#include <vector>

#include "uniband/costs.hpp"
#include "uniband/country_data.hpp"
#include "uniband/demand.hpp"
#include "uniband/dimensioning.hpp"
#include "uniband/fiber.hpp"
#include "uniband/radio.hpp"

namespace uniband {

struct AssessmentSettings {
    DemandAssumptions demand;
    DimensioningConfig dimensioning;
    SettlementThresholds settlement_thresholds;
    double settlement_density_threshold = 500.0;  // people/km2
    double settlement_size_threshold = 1000.0;    // people
    double fiber_buffer_m = 2000.0;
};

struct CountryInputs {
    CountryContext ctx;
    std::vector<RegionProfile> regions;
    std::vector<AssetAllocation> baseline_assets;
    FiberPlan fiber_plan;
    double regional_fiber_cost_total = 0.0;  // priced at the regional rate
};

// Reads dir/country.json, dir/regions.csv, and when present dir/popgrid.asc
// and dir/fiber_existing.json, then precomputes the baseline asset allocation
// and the national fiber extension plan.
CountryInputs load_country_bundle(const std::string& dir, const CostBook& book,
                                  const AssessmentSettings& settings = {});

struct TripleResult {
    std::vector<SitePlan> site_plans;
    CostDecomposition decomposition;
};

TripleResult assess_country(const CountryInputs& inputs, const Scenario& scenario,
                            const StrategyVector& strategy, const CapacityLUT& lut,
                            const CostBook& book, const AssessmentSettings& settings = {});

// Bands the run needs a LUT for, one entry per (generation, frequency).
std::vector<LutBand> lut_bands_for(const std::vector<CountryInputs>& countries);
std::vector<double> default_lut_densities();

}  // namespace uniband
