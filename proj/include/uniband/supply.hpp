#pragma once

#include <map>
#include <string>
#include <vector>

#include "uniband/country_data.hpp"

namespace uniband {

struct AssetAllocation {
    std::string region_id;
    int towers = 0;
    int towers_4g = 0;
    int towers_legacy = 0;
    std::map<BackhaulTech, int> backhaul_counts;
};

// Expected towers for one region given the national stock and 2G coverage.
// Round-half-up to an integer count.
long long estimate_region_towers(double region_pop, double national_towers, double national_pop,
                                 double coverage_pct);

// Greedy allocation in descending population-density order (ties by region_id)
// until the national stock is exhausted.
std::vector<AssetAllocation> allocate_towers_greedy(const std::vector<RegionProfile>& regions,
                                                    const std::vector<long long>& estimates,
                                                    long long national_stock);

// Estimates from the tower equation, then the greedy walk with the same
// national stock.
std::vector<AssetAllocation> allocate_towers(const std::vector<RegionProfile>& regions,
                                             double national_towers, double national_pop,
                                             double coverage_pct);

void allocate_technology(std::vector<AssetAllocation>& allocations,
                         const std::map<std::string, double>& coverage_4g_by_region);
// Uniform 4G coverage fraction across regions.
void allocate_technology(std::vector<AssetAllocation>& allocations, double coverage_4g);

// Cumulative-quota walk over towers ranked by region density: fiber first,
// then copper, microwave, satellite.
void allocate_backhaul(std::vector<AssetAllocation>& allocations,
                       const std::vector<RegionProfile>& regions, const BackhaulProfile& profile);

std::vector<AssetAllocation> build_baseline_assets(const std::vector<RegionProfile>& regions,
                                                   const CountryContext& ctx);

std::string baseline_assets_csv(const std::vector<AssetAllocation>& allocations);

}  // namespace uniband
