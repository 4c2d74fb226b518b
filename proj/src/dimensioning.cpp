#include "uniband/dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uniband/csv.hpp"

namespace uniband {

const char* to_string(TechnologyStrategy t) {
    switch (t) {
        case TechnologyStrategy::FourG_Wireless: return "4G_W";
        case TechnologyStrategy::FourG_Fiber: return "4G_F";
        case TechnologyStrategy::FiveG_NSA_Wireless: return "5G_NSA_W";
        case TechnologyStrategy::FiveG_SA_Fiber: return "5G_SA_F";
    }
    return "4G_W";
}

TechnologyStrategy technology_from_string(const std::string& s) {
    if (s == "4G_W") return TechnologyStrategy::FourG_Wireless;
    if (s == "4G_F") return TechnologyStrategy::FourG_Fiber;
    if (s == "5G_NSA_W") return TechnologyStrategy::FiveG_NSA_Wireless;
    if (s == "5G_SA_F") return TechnologyStrategy::FiveG_SA_Fiber;
    throw std::runtime_error("unknown technology strategy '" + s + "'");
}

Generation generation_of(TechnologyStrategy t) {
    return (t == TechnologyStrategy::FourG_Wireless || t == TechnologyStrategy::FourG_Fiber)
               ? Generation::FourG
               : Generation::FiveG;
}

bool uses_fiber_backhaul(TechnologyStrategy t) {
    return t == TechnologyStrategy::FourG_Fiber || t == TechnologyStrategy::FiveG_SA_Fiber;
}

bool uses_cran(TechnologyStrategy t) { return t == TechnologyStrategy::FiveG_SA_Fiber; }

namespace {

std::vector<SpectrumBand> bands_for(const std::vector<SpectrumBand>& bands, Generation g) {
    std::vector<SpectrumBand> out;
    for (const auto& b : bands)
        if (b.generation == g) out.push_back(b);
    return out;
}

double capacity_at(const std::vector<SpectrumBand>& bands, Generation g, int cells_per_site,
                   const CapacityLUT& lut, double density) {
    std::vector<BandSe> inputs;
    for (const auto& b : bands)
        inputs.push_back({lut.mean_se(g, b.frequency_mhz, density), b.downlink_mhz()});
    return area_capacity_mbps_km2(inputs, cells_per_site, density);
}

}  // namespace

DensityResult required_site_density(double demand_mbps_km2, const std::vector<SpectrumBand>& bands,
                                    Generation generation, int cells_per_site,
                                    const CapacityLUT& lut) {
    if (demand_mbps_km2 < 0.0) throw std::runtime_error("required_site_density: demand must be >= 0");
    if (demand_mbps_km2 == 0.0) return {0.0, false};
    std::vector<SpectrumBand> gen_bands = bands_for(bands, generation);
    if (gen_bands.empty())
        throw std::runtime_error("required_site_density: no bands for generation");
    for (const auto& b : gen_bands)
        if (!lut.covers(generation, b.frequency_mhz))
            throw std::runtime_error("required_site_density: LUT missing " +
                                     std::to_string(b.frequency_mhz) + " MHz");

    std::vector<double> densities = lut.densities(generation, gen_bands[0].frequency_mhz);
    double prev_density = 0.0;
    double prev_capacity = 0.0;
    for (double density : densities) {
        double capacity = capacity_at(gen_bands, generation, cells_per_site, lut, density);
        if (capacity >= demand_mbps_km2) {
            // Linear interpolation of the capacity curve on this segment.
            if (capacity == prev_capacity) return {density, false};
            double t = (demand_mbps_km2 - prev_capacity) / (capacity - prev_capacity);
            t = std::clamp(t, 0.0, 1.0);
            return {prev_density + t * (density - prev_density), false};
        }
        prev_density = density;
        prev_capacity = capacity;
    }
    return {densities.back(), true};
}

UpgradeSplit upgrade_plan(long long required_sites, const AssetAllocation& existing,
                          TechnologyStrategy technology) {
    if (required_sites < 0) throw std::runtime_error("upgrade_plan: required must be >= 0");
    // Existing 4G sites already serve 4G strategies; nothing is on 5G yet.
    long long on_tech = generation_of(technology) == Generation::FourG ? existing.towers_4g : 0;
    long long upgradeable = existing.towers - on_tech;
    long long needed = std::max<long long>(0, required_sites - on_tech);
    UpgradeSplit split;
    split.brownfield = std::min(needed, upgradeable);
    split.greenfield = std::max<long long>(0, required_sites - existing.towers);
    return split;
}

double mean_backhaul_distance_m(double node_density_per_km2) {
    if (node_density_per_km2 <= 0.0)
        throw std::runtime_error("mean_backhaul_distance: node density must be > 0");
    return std::sqrt(1.0 / (2.0 * node_density_per_km2)) * 1000.0;
}

MicrowaveClass backhaul_link_class(double length_m) {
    if (length_m < 0.0) throw std::runtime_error("backhaul_link_class: length must be >= 0");
    if (length_m < 20000.0) return MicrowaveClass::Small;
    if (length_m <= 40000.0) return MicrowaveClass::Medium;
    return MicrowaveClass::Large;
}

CranTopology cran_topology(double area_km2, double site_density, long long sites) {
    if (area_km2 <= 0.0 || site_density <= 0.0)
        throw std::runtime_error("cran_topology: area and density must be > 0");
    CranTopology topo;
    topo.cloud_nodes = static_cast<long long>(std::ceil(area_km2 / 40.0));
    topo.mean_site_spacing_m = std::sqrt(1.0 / site_density) / 2.0 * 1000.0;
    topo.fronthaul_total_m =
        static_cast<double>(std::max<long long>(0, sites - topo.cloud_nodes)) * topo.mean_site_spacing_m;
    return topo;
}

SitePlan dimension_region(const RegionProfile& region, double peak_demand_mbps_km2,
                          const AssetAllocation& existing, const std::vector<SpectrumBand>& bands,
                          TechnologyStrategy technology, const CapacityLUT& lut,
                          const DimensioningConfig& config) {
    SitePlan plan;
    plan.region_id = region.region_id;

    DensityResult density = required_site_density(peak_demand_mbps_km2, bands,
                                                  generation_of(technology), config.cells_per_site, lut);
    plan.required_density = density.density;
    plan.capacity_limited = density.capacity_limited;
    if (config.apply_coverage_floor && region.population > 0.0) {
        double floor_density = 1.0 / (3.14159265358979323846 * config.coverage_radius_km *
                                      config.coverage_radius_km);
        plan.required_density = std::max(plan.required_density, floor_density);
    }
    plan.required_sites = static_cast<long long>(std::ceil(plan.required_density * region.area_km2 - 1e-9));

    UpgradeSplit split = upgrade_plan(plan.required_sites, existing, technology);
    plan.brownfield_upgrades = split.brownfield;
    plan.greenfield_builds = split.greenfield;

    // Backhaul: greenfield sites always need a new link; brownfield reuses
    // compatible existing links (fiber always, microwave under wireless).
    long long compatible = 0;
    auto count_existing = [&existing](BackhaulTech t) {
        auto it = existing.backhaul_counts.find(t);
        return it == existing.backhaul_counts.end() ? 0LL : static_cast<long long>(it->second);
    };
    if (uses_fiber_backhaul(technology))
        compatible = count_existing(BackhaulTech::Fiber);
    else
        compatible = count_existing(BackhaulTech::Fiber) + count_existing(BackhaulTech::Microwave);
    long long new_links = plan.greenfield_builds + std::max<long long>(0, plan.brownfield_upgrades - compatible);

    if (new_links > 0) {
        double node_density = 1.0 / region.area_km2;  // one regional node per region
        plan.backhaul.link_length_m = mean_backhaul_distance_m(node_density);
        if (uses_fiber_backhaul(technology)) {
            plan.backhaul.new_fiber_links = static_cast<int>(new_links);
            plan.backhaul.new_fiber_length_m = static_cast<double>(new_links) * plan.backhaul.link_length_m;
        } else {
            switch (backhaul_link_class(plan.backhaul.link_length_m)) {
                case MicrowaveClass::Small: plan.backhaul.new_microwave_small = static_cast<int>(new_links); break;
                case MicrowaveClass::Medium: plan.backhaul.new_microwave_medium = static_cast<int>(new_links); break;
                case MicrowaveClass::Large: plan.backhaul.new_microwave_large = static_cast<int>(new_links); break;
            }
        }
    }

    if (uses_cran(technology) && plan.required_sites > 0 && plan.required_density > 0.0) {
        CranTopology topo = cran_topology(region.area_km2, plan.required_density, plan.required_sites);
        plan.cloud_nodes = topo.cloud_nodes;
        plan.fronthaul_total_m = topo.fronthaul_total_m;
        plan.mean_site_spacing_m = topo.mean_site_spacing_m;
    }
    return plan;
}

std::string site_plans_csv(const std::vector<SitePlan>& plans) {
    std::ostringstream out;
    out << "region_id,required_sites,brownfield,greenfield,capacity_limited,"
           "mw_small,mw_medium,mw_large,fiber_links,fiber_length_m,cloud_nodes,fronthaul_m\n";
    for (const auto& p : plans) {
        out << p.region_id << ',' << p.required_sites << ',' << p.brownfield_upgrades << ','
            << p.greenfield_builds << ',' << (p.capacity_limited ? 1 : 0) << ','
            << p.backhaul.new_microwave_small << ',' << p.backhaul.new_microwave_medium << ','
            << p.backhaul.new_microwave_large << ',' << p.backhaul.new_fiber_links << ','
            << csv::format_double(p.backhaul.new_fiber_length_m) << ',' << p.cloud_nodes << ','
            << csv::format_double(p.fronthaul_total_m) << '\n';
    }
    return out.str();
}

}  // namespace uniband
