#include "uniband/supply.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uniband {

namespace {

// Indices of regions sorted densest-first, ties by region_id ascending.
std::vector<std::size_t> density_order(const std::vector<RegionProfile>& regions) {
    std::vector<std::size_t> order(regions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (regions[a].pop_density != regions[b].pop_density)
            return regions[a].pop_density > regions[b].pop_density;
        return regions[a].region_id < regions[b].region_id;
    });
    return order;
}

long long round_half_up(double v) { return static_cast<long long>(std::floor(v + 0.5)); }

}  // namespace

long long estimate_region_towers(double region_pop, double national_towers, double national_pop,
                                 double coverage_pct) {
    if (coverage_pct <= 0.0 || coverage_pct > 100.0)
        throw std::runtime_error("estimate_region_towers: coverage must be in (0, 100]");
    if (national_pop <= 0.0)
        throw std::runtime_error("estimate_region_towers: national population must be > 0");
    if (region_pop <= 0.0) return 0;
    double covered_pop = national_pop * coverage_pct / 100.0;
    return round_half_up(region_pop * national_towers / covered_pop);
}

std::vector<AssetAllocation> allocate_towers_greedy(const std::vector<RegionProfile>& regions,
                                                    const std::vector<long long>& estimates,
                                                    long long national_stock) {
    if (estimates.size() != regions.size())
        throw std::runtime_error("allocate_towers: estimate/region size mismatch");
    std::vector<AssetAllocation> out(regions.size());
    for (std::size_t i = 0; i < regions.size(); ++i) out[i].region_id = regions[i].region_id;

    long long remaining = std::max<long long>(0, national_stock);
    for (std::size_t idx : density_order(regions)) {
        if (remaining <= 0) break;
        long long granted = std::min(estimates[idx], remaining);
        out[idx].towers = static_cast<int>(granted);
        out[idx].towers_legacy = out[idx].towers;
        remaining -= granted;
    }
    return out;
}

std::vector<AssetAllocation> allocate_towers(const std::vector<RegionProfile>& regions,
                                             double national_towers, double national_pop,
                                             double coverage_pct) {
    std::vector<long long> estimates;
    estimates.reserve(regions.size());
    for (const auto& r : regions)
        estimates.push_back(
            estimate_region_towers(r.population, national_towers, national_pop, coverage_pct));
    return allocate_towers_greedy(regions, estimates, static_cast<long long>(national_towers));
}

void allocate_technology(std::vector<AssetAllocation>& allocations,
                         const std::map<std::string, double>& coverage_4g_by_region) {
    for (auto& a : allocations) {
        auto it = coverage_4g_by_region.find(a.region_id);
        double coverage = it != coverage_4g_by_region.end() ? it->second : 0.0;
        if (coverage < 0.0 || coverage > 1.0)
            throw std::runtime_error("allocate_technology: coverage fraction out of [0,1] for " +
                                     a.region_id);
        a.towers_4g = static_cast<int>(round_half_up(a.towers * coverage));
        a.towers_legacy = a.towers - a.towers_4g;
    }
}

void allocate_technology(std::vector<AssetAllocation>& allocations, double coverage_4g) {
    std::map<std::string, double> uniform;
    for (const auto& a : allocations) uniform[a.region_id] = coverage_4g;
    allocate_technology(allocations, uniform);
}

void allocate_backhaul(std::vector<AssetAllocation>& allocations,
                       const std::vector<RegionProfile>& regions, const BackhaulProfile& profile) {
    if (std::abs(profile.sum() - 1.0) > 1e-9)
        throw std::runtime_error("allocate_backhaul: profile must sum to 1");
    if (allocations.size() != regions.size())
        throw std::runtime_error("allocate_backhaul: allocation/region size mismatch");

    long long total = 0;
    for (const auto& a : allocations) total += a.towers;

    // Class boundaries on the global tower rank, ceiling on cumulative shares
    // so small counts never drop a nonzero class.
    const double shares[4] = {profile.fiber, profile.copper, profile.microwave, profile.satellite};
    const BackhaulTech techs[4] = {BackhaulTech::Fiber, BackhaulTech::Copper,
                                   BackhaulTech::Microwave, BackhaulTech::Satellite};
    long long bounds[4];
    double cumulative = 0.0;
    for (int c = 0; c < 4; ++c) {
        cumulative += shares[c];
        bounds[c] = static_cast<long long>(std::ceil(cumulative * static_cast<double>(total) - 1e-9));
    }
    bounds[3] = total;

    long long rank = 0;
    for (std::size_t idx : density_order(regions)) {
        auto& alloc = allocations[idx];
        alloc.backhaul_counts.clear();
        for (int t = 0; t < alloc.towers; ++t) {
            int c = 0;
            while (c < 3 && rank >= bounds[c]) ++c;
            // Skip zero-share classes even when boundary arithmetic lands on them.
            while (c < 3 && shares[c] == 0.0) ++c;
            ++alloc.backhaul_counts[techs[c]];
            ++rank;
        }
    }
}

std::vector<AssetAllocation> build_baseline_assets(const std::vector<RegionProfile>& regions,
                                                   const CountryContext& ctx) {
    std::vector<AssetAllocation> allocations =
        allocate_towers(regions, ctx.national_towers, ctx.population_total, ctx.coverage_2g_pct);
    allocate_technology(allocations, ctx.coverage_4g);
    allocate_backhaul(allocations, regions, ctx.backhaul_profile);
    return allocations;
}

std::string baseline_assets_csv(const std::vector<AssetAllocation>& allocations) {
    std::ostringstream out;
    out << "region_id,towers,towers_4g,towers_legacy,bh_fiber,bh_copper,bh_microwave,bh_satellite\n";
    for (const auto& a : allocations) {
        auto count = [&a](BackhaulTech t) {
            auto it = a.backhaul_counts.find(t);
            return it == a.backhaul_counts.end() ? 0 : it->second;
        };
        out << a.region_id << ',' << a.towers << ',' << a.towers_4g << ',' << a.towers_legacy << ','
            << count(BackhaulTech::Fiber) << ',' << count(BackhaulTech::Copper) << ','
            << count(BackhaulTech::Microwave) << ',' << count(BackhaulTech::Satellite) << '\n';
    }
    return out.str();
}

}  // namespace uniband
