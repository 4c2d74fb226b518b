#include "uniband/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "uniband/supply.hpp"

namespace uniband {

namespace fs = std::filesystem;

CountryInputs load_country_bundle(const std::string& dir, const CostBook& book,
                                  const AssessmentSettings& settings) {
    CountryInputs inputs;
    fs::path base(dir);
    inputs.ctx = load_country_json((base / "country.json").string());

    ValidationReport report = validate_country(inputs.ctx);
    if (!report.ok()) {
        std::string msg = "country " + inputs.ctx.iso3 + " failed validation:";
        for (const auto& issue : report.issues) msg += " [" + issue.field + "] " + issue.message;
        throw std::runtime_error(msg);
    }

    inputs.regions = load_regions_csv((base / "regions.csv").string(), settings.settlement_thresholds);
    inputs.baseline_assets = build_baseline_assets(inputs.regions, inputs.ctx);

    // Fiber extension plan: settlements from the population grid, anchored to
    // the existing fiber network (or the largest settlement when none exists).
    fs::path grid_path = base / "popgrid.asc";
    if (fs::exists(grid_path)) {
        PopulationGrid grid = load_population_grid(grid_path.string());
        std::vector<Settlement> settlements =
            extract_settlements(grid, settings.settlement_density_threshold,
                                settings.settlement_size_threshold, settings.settlement_thresholds);
        std::vector<FiberSegment> existing;
        fs::path fiber_path = base / "fiber_existing.json";
        if (fs::exists(fiber_path)) existing = load_fiber_segments_json(fiber_path.string());

        if (!settlements.empty()) {
            mark_connected(settlements, existing, settings.fiber_buffer_m);
            std::vector<Point> attachments;
            for (const auto& e : existing) {
                attachments.push_back(e.a);
                attachments.push_back(e.b);
            }
            if (attachments.empty()) {
                // No core information: treat the largest settlement as the anchor.
                auto largest = std::max_element(
                    settlements.begin(), settlements.end(),
                    [](const Settlement& a, const Settlement& b) { return a.population < b.population; });
                largest->connected = true;
            }
            bool any_unconnected = std::any_of(settlements.begin(), settlements.end(),
                                               [](const Settlement& s) { return !s.connected; });
            if (any_unconnected)
                inputs.fiber_plan = design_regional_fiber(settlements, attachments);
            inputs.fiber_plan.existing_edges = existing;
            inputs.regional_fiber_cost_total =
                fiber_build_cost_flat(inputs.fiber_plan, book.regional_fiber_m);
        }
    }
    return inputs;
}

TripleResult assess_country(const CountryInputs& inputs, const Scenario& scenario,
                            const StrategyVector& strategy, const CapacityLUT& lut,
                            const CostBook& book, const AssessmentSettings& settings) {
    if (inputs.regions.size() != inputs.baseline_assets.size())
        throw std::runtime_error("assess_country: baseline assets out of sync with regions");

    double total_population = 0.0;
    for (const auto& r : inputs.regions) total_population += r.population;

    TripleResult result;
    std::vector<RegionAssessment> assessments;
    for (std::size_t i = 0; i < inputs.regions.size(); ++i) {
        const RegionProfile& region = inputs.regions[i];
        DemandTimeline timeline = build_demand_timeline(region, inputs.ctx, scenario, settings.demand);

        SitePlan plan = dimension_region(region, timeline.peak_demand_mbps_per_km2,
                                         inputs.baseline_assets[i], inputs.ctx.spectrum_portfolio,
                                         strategy.technology, lut, settings.dimensioning);

        double fiber_share = total_population > 0.0
                                 ? inputs.regional_fiber_cost_total * region.population / total_population
                                 : 0.0;
        RegionAssessment assessment;
        assessment.region_id = region.region_id;
        assessment.population = region.population;
        assessment.pricing = price_region(region, plan, strategy, inputs.ctx, book, fiber_share);
        assessment.market_revenue_npv =
            static_cast<double>(inputs.ctx.n_mnos) * timeline.discounted_revenue_total;

        result.site_plans.push_back(std::move(plan));
        assessments.push_back(std::move(assessment));
    }
    result.decomposition = decompose(assessments);
    return result;
}

std::vector<LutBand> lut_bands_for(const std::vector<CountryInputs>& countries) {
    std::set<std::pair<int, double>> seen;
    std::vector<LutBand> bands;
    for (const auto& c : countries) {
        for (const auto& b : c.ctx.spectrum_portfolio) {
            if (seen.insert({static_cast<int>(b.generation), b.frequency_mhz}).second)
                bands.push_back({b.generation, b.frequency_mhz, b.bandwidth_mhz});
        }
    }
    std::sort(bands.begin(), bands.end(), [](const LutBand& a, const LutBand& b) {
        if (a.technology != b.technology) return static_cast<int>(a.technology) < static_cast<int>(b.technology);
        return a.frequency_mhz < b.frequency_mhz;
    });
    return bands;
}

std::vector<double> default_lut_densities() {
    // Spaced so the mean-SE trend dominates Monte Carlo noise between
    // adjacent entries; densities past 1.0/km2 clamp as capacity-limited.
    return {0.0005, 0.002, 0.01, 0.05, 0.25, 1.0};
}

}  // namespace uniband
