#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uniband/country_data.hpp"
#include "uniband/radio.hpp"
#include "uniband/supply.hpp"

namespace uniband {

enum class TechnologyStrategy { FourG_Wireless, FourG_Fiber, FiveG_NSA_Wireless, FiveG_SA_Fiber };

const char* to_string(TechnologyStrategy t);
TechnologyStrategy technology_from_string(const std::string& s);
Generation generation_of(TechnologyStrategy t);
bool uses_fiber_backhaul(TechnologyStrategy t);
bool uses_cran(TechnologyStrategy t);

enum class MicrowaveClass { Small, Medium, Large };

struct BackhaulRequirement {
    int new_microwave_small = 0;
    int new_microwave_medium = 0;
    int new_microwave_large = 0;
    int new_fiber_links = 0;
    double new_fiber_length_m = 0.0;  // total over new fiber links
    double link_length_m = 0.0;       // mean distance used per link
};

struct SitePlan {
    std::string region_id;
    double required_density = 0.0;  // sites/km2
    long long required_sites = 0;
    long long brownfield_upgrades = 0;
    long long greenfield_builds = 0;
    bool capacity_limited = false;  // demand exceeded the LUT ceiling
    BackhaulRequirement backhaul;
    long long cloud_nodes = 0;      // C-RAN only
    double fronthaul_total_m = 0.0;
    double mean_site_spacing_m = 0.0;
};

struct DimensioningConfig {
    int cells_per_site = 3;
    double coverage_radius_km = 25.0;  // coverage floor for populated regions
    bool apply_coverage_floor = true;
};

struct DensityResult {
    double density = 0.0;
    bool capacity_limited = false;
};

// Smallest density whose summed band capacity meets the demand, interpolating
// linearly between LUT grid points. Demand past the densest grid point clamps
// there and flags the result.
DensityResult required_site_density(double demand_mbps_km2, const std::vector<SpectrumBand>& bands,
                                    Generation generation, int cells_per_site,
                                    const CapacityLUT& lut);

struct UpgradeSplit {
    long long brownfield = 0;
    long long greenfield = 0;
};

UpgradeSplit upgrade_plan(long long required_sites, const AssetAllocation& existing,
                          TechnologyStrategy technology);

double mean_backhaul_distance_m(double node_density_per_km2);

MicrowaveClass backhaul_link_class(double length_m);

struct CranTopology {
    long long cloud_nodes = 0;
    double fronthaul_total_m = 0.0;
    double mean_site_spacing_m = 0.0;
};

CranTopology cran_topology(double area_km2, double site_density, long long sites);

SitePlan dimension_region(const RegionProfile& region, double peak_demand_mbps_km2,
                          const AssetAllocation& existing, const std::vector<SpectrumBand>& bands,
                          TechnologyStrategy technology, const CapacityLUT& lut,
                          const DimensioningConfig& config = {});

std::string site_plans_csv(const std::vector<SitePlan>& plans);

}  // namespace uniband
