#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "uniband/costs.hpp"

using namespace uniband;

namespace {

RegionAssessment assessment(const std::string& id, double population, double network,
                            double spectrum, double tax_usd, double revenue,
                            double admin_fraction = 0.20, double margin = 0.20) {
    RegionAssessment a;
    a.region_id = id;
    a.population = population;
    a.pricing.network = network;
    a.pricing.administration = admin_fraction * network;
    a.pricing.spectrum = spectrum;
    a.pricing.tax = tax_usd;
    a.pricing.profit = margin * (network + tax_usd);
    a.pricing.private_cost = a.pricing.network + a.pricing.administration + a.pricing.spectrum +
                             a.pricing.tax + a.pricing.profit;
    a.market_revenue_npv = revenue;
    return a;
}

}  // namespace

TEST_CASE("ran_cost_dran") {
    SUBCASE("all components priced zero gives zero") {
        CostBook zero;
        zero.antenna = zero.remote_radio_unit = zero.io_interface = zero.fronthaul_interface = 0;
        zero.cots_processing = zero.control_unit = zero.alarm_unit = zero.cooling_fans = 0;
        zero.dist_power_supply = zero.bbu_cabinet = 0;
        CHECK(ran_cost_dran(zero, Generation::FourG) == doctest::Approx(0.0));
    }
    SUBCASE("three antennas and three RRUs alone cost 16500") {
        CostBook book;
        double with_radio = ran_cost_dran(book, Generation::FourG);
        CostBook no_radio = book;
        no_radio.antenna = 0;
        no_radio.remote_radio_unit = 0;
        CHECK(with_radio - ran_cost_dran(no_radio, Generation::FourG) == doctest::Approx(16500.0));
    }
    SUBCASE("negative price is rejected naming the item") {
        CostBook book;
        book.control_unit = -1;
        CHECK_THROWS_WITH_AS(ran_cost_dran(book, Generation::FourG),
                             doctest::Contains("control_unit"), std::runtime_error);
    }
}

TEST_CASE("ran_cost_cran") {
    CostBook book;
    SUBCASE("degenerate pooling equals D-RAN with rack for cabinet") {
        double dran = ran_cost_dran(book, Generation::FiveG);
        double cran = ran_cost_cran(book, 1.0, 1.0);
        CHECK(cran == doctest::Approx(dran - book.bbu_cabinet + book.rack_cabinet));
    }
    SUBCASE("rural pooling shares the processing sixteen ways") {
        double v16 = ran_cost_cran(book, 16.0, book.cran_split_factor);
        CostBook no_processing = book;
        no_processing.cots_processing = 0;
        double base = ran_cost_cran(no_processing, 16.0, book.cran_split_factor);
        CHECK(v16 - base == doctest::Approx((500.0 + 500.0) / 16.0));
    }
    SUBCASE("urban pooling costs more than rural") {
        CHECK(ran_cost_cran(book, SettlementClass::Urban) > ran_cost_cran(book, SettlementClass::Rural));
    }
    SUBCASE("invalid factors rejected") {
        CHECK_THROWS(ran_cost_cran(book, 0.5, 7.0));
        CHECK_THROWS(ran_cost_cran(book, 2.0, 0.0));
    }
}

TEST_CASE("network, spectrum, tax, profit, npv") {
    SUBCASE("network_cost is a plain sum") {
        CHECK(network_cost(0, 0, 0) == doctest::Approx(0.0));
        CHECK(network_cost(100, 50, 25) == doctest::Approx(175.0));
        CostBook book;
        CHECK(network_cost(0, 0, book.regional_node_4g + book.core_node_4g) ==
              doctest::Approx(95000.0));
        CHECK_THROWS(network_cost(-1, 0, 0));
    }
    SUBCASE("spectrum_cost follows price x bandwidth x population x scale") {
        SpectrumBand band;
        band.price_usd_mhz_pop = 0.02;
        band.bandwidth_mhz = 10;
        CHECK(spectrum_cost({band}, 1'000'000, 1.0) == doctest::Approx(200000.0));
        CHECK(spectrum_cost({band}, 1'000'000, 0.25) == doctest::Approx(50000.0));
        CHECK(spectrum_cost({}, 1'000'000, 1.0) == doctest::Approx(0.0));
    }
    SUBCASE("tax") {
        CHECK(tax(100, 0.30) == doctest::Approx(30.0));
        CHECK(tax(0, 0.45) == doctest::Approx(0.0));
        CHECK(tax(100, 0.10) == doctest::Approx(10.0));
        CHECK_THROWS(tax(100, -0.1));
    }
    SUBCASE("profit") {
        CHECK(profit(100 + 20 + 30, 0.20) == doctest::Approx(30.0));
        CHECK(profit(1234, 0.0) == doctest::Approx(0.0));
        CHECK(profit(2 * 150, 0.20) == doctest::Approx(2 * profit(150, 0.20)));
    }
    SUBCASE("npv") {
        CHECK(npv({10, 20, 30}, 0.0) == 60.0);  // exact at rate zero
        CHECK(npv({0, 105}, 0.05) == doctest::Approx(100.0));
        double direct = 0.0;
        for (int t = 0; t < 10; ++t) direct += 100.0 / std::pow(1.05, t);
        CHECK(npv(std::vector<double>(10, 100.0), 0.05) == doctest::Approx(direct));
        CHECK(direct == doctest::Approx(810.78).epsilon(1e-4));
        CHECK_THROWS(npv({1.0}, -1.0));
    }
    SUBCASE("annuity matches npv of constant flows") {
        CHECK(annuity_npv(100.0, 10, 0.05) == doctest::Approx(npv(std::vector<double>(10, 100.0), 0.05)));
    }
}

TEST_CASE("apply_sharing") {
    CostComponents op{40.0, 60.0, 20.0};

    SUBCASE("single operator makes all regimes identical") {
        for (auto regime : {SharingRegime::Baseline, SharingRegime::Passive, SharingRegime::Active,
                            SharingRegime::SRN}) {
            CostComponents market = apply_sharing(op, regime, 1, SettlementClass::Rural);
            CHECK(market.total() == doctest::Approx(op.total()));
        }
    }
    SUBCASE("baseline duplicates everything") {
        CostComponents market = apply_sharing(op, SharingRegime::Baseline, 3, SettlementClass::Urban);
        CHECK(market.total() == doctest::Approx(3 * op.total()));
    }
    SUBCASE("passive shares the passive bucket only") {
        CostComponents no_core{40.0, 60.0, 0.0};
        CostComponents market = apply_sharing(no_core, SharingRegime::Passive, 3, SettlementClass::Urban);
        CHECK(market.total() == doctest::Approx(40.0 + 3 * 60.0));
    }
    SUBCASE("SRN shares core only in rural regions") {
        CostComponents rural = apply_sharing(op, SharingRegime::SRN, 3, SettlementClass::Rural);
        CostComponents urban = apply_sharing(op, SharingRegime::SRN, 3, SettlementClass::Urban);
        CHECK(rural.core == doctest::Approx(20.0));
        CHECK(urban.core == doctest::Approx(60.0));
    }
    SUBCASE("ordering SRN <= active <= passive <= baseline") {
        for (auto cls : {SettlementClass::Urban, SettlementClass::Rural}) {
            double srn = apply_sharing(op, SharingRegime::SRN, 4, cls).total();
            double active = apply_sharing(op, SharingRegime::Active, 4, cls).total();
            double passive = apply_sharing(op, SharingRegime::Passive, 4, cls).total();
            double baseline = apply_sharing(op, SharingRegime::Baseline, 4, cls).total();
            CHECK(srn <= active);
            CHECK(active <= passive);
            CHECK(passive <= baseline);
        }
    }
}

TEST_CASE("cross subsidization") {
    SUBCASE("all regions self-viable") {
        std::vector<RegionAssessment> regions = {assessment("A", 100, 50, 5, 15, 200),
                                                 assessment("B", 300, 80, 8, 24, 500)};
        auto result = assess_and_cross_subsidize(regions);
        CHECK(result.viable_population_share == doctest::Approx(1.0));
        CHECK(result.residual_deficit == doctest::Approx(0.0));
    }
    SUBCASE("pool covers a small deficit") {
        // Surplus 10 in A; B short by 4.
        auto a = assessment("A", 100, 50, 0, 0, 0);
        a.market_revenue_npv = a.pricing.private_cost + 10.0;
        auto b = assessment("B", 100, 50, 0, 0, 0);
        b.market_revenue_npv = b.pricing.private_cost - 4.0;
        auto result = assess_and_cross_subsidize({a, b});
        CHECK(result.viable_population_share == doctest::Approx(1.0));
        CHECK(result.residual_deficit == doctest::Approx(0.0));
    }
    SUBCASE("greedy pool walk in deficit-per-capita order") {
        auto a = assessment("A", 100, 50, 0, 0, 0);
        a.market_revenue_npv = a.pricing.private_cost + 10.0;
        auto b = assessment("B", 1000, 50, 0, 0, 0);  // 8 deficit over 1000 people
        b.market_revenue_npv = b.pricing.private_cost - 8.0;
        auto c = assessment("C", 10, 50, 0, 0, 0);    // 6 deficit over 10 people
        c.market_revenue_npv = c.pricing.private_cost - 6.0;
        auto result = assess_and_cross_subsidize({a, b, c});
        // B (cheaper per head) is covered in full; C gets the remaining 2.
        CHECK(result.residual_deficit == doctest::Approx(4.0));
        CHECK(result.subsidy_by_region[2] == doctest::Approx(4.0));
        CHECK(result.viable_population_share == doctest::Approx((100.0 + 1000.0) / 1110.0));
    }
}

TEST_CASE("decompose") {
    SUBCASE("government cost without subsidy is minus the fiscal take") {
        auto a = assessment("A", 100, 100, 20, 30, 1e9);
        auto d = decompose({a});
        CHECK(d.regions[0].subsidy == doctest::Approx(0.0));
        CHECK(d.regions[0].government_cost == doctest::Approx(-50.0));
        CHECK(d.regions[0].social_cost ==
              doctest::Approx(d.regions[0].private_cost + d.regions[0].government_cost));
    }
    SUBCASE("transfer cancellation holds for any spectrum and tax levels") {
        for (double spectrum : {0.0, 20.0, 500.0}) {
            for (double tax_usd : {0.0, 30.0, 120.0}) {
                auto a = assessment("A", 100, 100, spectrum, tax_usd, 1e9);
                auto d = decompose({a});
                const auto& row = d.regions[0];
                CHECK(row.social_cost ==
                      doctest::Approx(row.network + row.administration + row.profit + row.subsidy)
                          .epsilon(1e-12));
            }
        }
    }
    SUBCASE("fully subsidized region: spectrum rise flows dollar-for-dollar into subsidy") {
        auto base = assessment("A", 100, 100, 20, 30, 0.0);  // no revenue at all
        auto bumped = assessment("A", 100, 100, 20 + 7.5, 30, 0.0);
        auto d0 = decompose({base});
        auto d1 = decompose({bumped});
        CHECK(d1.regions[0].subsidy - d0.regions[0].subsidy == doctest::Approx(7.5));
        CHECK(d1.regions[0].government_cost == doctest::Approx(d0.regions[0].government_cost));
    }
    SUBCASE("national row sums the regions") {
        auto a = assessment("A", 100, 100, 20, 30, 1e9);
        auto b = assessment("B", 50, 40, 10, 12, 0.0);
        auto d = decompose({a, b});
        CHECK(d.national.network == doctest::Approx(140.0));
        CHECK(d.national.social_cost ==
              doctest::Approx(d.regions[0].social_cost + d.regions[1].social_cost));
    }
}

TEST_CASE("costbook json") {
    CostBook book;
    std::string json = costbook_to_json(book);
    auto path = test_support::write_temp("costbook_rt.json", json);
    CostBook loaded = load_costbook_json(path);
    CHECK(costbook_to_json(loaded) == json);
    CHECK(loaded.site_rental_urban_yr == 9600.0);
    CHECK(loaded.tax_rate == 0.30);

    SUBCASE("missing price is an error naming the item") {
        std::string broken = json;
        auto pos = broken.find("\"tower\"");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 7, "\"pylon\"");
        auto bad_path = test_support::write_temp("costbook_bad.json", broken);
        CHECK_THROWS_WITH_AS(load_costbook_json(bad_path), doctest::Contains("tower"),
                             std::runtime_error);
    }
}

TEST_CASE("price_region composes capex and discounted opex") {
    CostBook book;
    CountryContext ctx;
    ctx.iso3 = "TST";
    ctx.n_mnos = 2;
    SpectrumBand band;
    band.frequency_mhz = 800;
    band.bandwidth_mhz = 10;
    band.generation = Generation::FourG;
    band.price_usd_mhz_pop = 0.02;
    ctx.spectrum_portfolio = {band};

    RegionProfile region;
    region.region_id = "R";
    region.area_km2 = 100;
    region.population = 10000;
    region.settlement_class = SettlementClass::Rural;

    SitePlan plan;
    plan.region_id = "R";
    plan.required_sites = 3;
    plan.brownfield_upgrades = 1;
    plan.greenfield_builds = 2;
    plan.backhaul.new_microwave_small = 3;

    StrategyVector strategy;
    strategy.technology = TechnologyStrategy::FourG_Wireless;
    strategy.sharing = SharingRegime::Baseline;

    RegionPricing pricing = price_region(region, plan, strategy, ctx, book, 0.0);

    const double annuity = annuity_npv(1.0, book.horizon_years, book.wacc);
    const double ran = ran_cost_dran(book, Generation::FourG);
    const double electronics = 3 * (ran + book.power_system_4g);
    const double backhaul = 3 * book.microwave_small;
    const double expected_active = electronics + backhaul +
                                   3 * book.power_opex_4g_yr * annuity +
                                   book.maintenance_fraction * (electronics + backhaul) * annuity;
    CHECK(pricing.per_operator.active == doctest::Approx(expected_active));

    const double site_build = 2 * 20000.0;  // tower + civil + transport + install
    CHECK(pricing.per_operator.passive ==
          doctest::Approx(site_build + 3 * book.site_rental_rural_yr * annuity));
    CHECK(pricing.per_operator.core == doctest::Approx(book.regional_node_4g));

    CHECK(pricing.network == doctest::Approx(2 * pricing.per_operator.total()));
    CHECK(pricing.administration == doctest::Approx(0.2 * pricing.network));
    CHECK(pricing.spectrum == doctest::Approx(2 * 0.02 * 10 * 10000));
    CHECK(pricing.tax == doctest::Approx(0.3 * pricing.network));
    CHECK(pricing.profit == doctest::Approx(0.2 * (pricing.network + pricing.tax)));
    CHECK(pricing.private_cost == doctest::Approx(pricing.network + pricing.administration +
                                                  pricing.spectrum + pricing.tax + pricing.profit));

    SUBCASE("greenfield site build add-on is exactly 20k per site") {
        SitePlan no_green = plan;
        no_green.greenfield_builds = 0;
        no_green.brownfield_upgrades = 3;
        RegionPricing base = price_region(region, no_green, strategy, ctx, book, 0.0);
        CHECK(pricing.per_operator.passive - base.per_operator.passive == doctest::Approx(2 * 20000.0));
    }

    SUBCASE("an empty region with no sites costs nothing") {
        RegionProfile empty = region;
        empty.population = 0;
        empty.pop_density = 0;
        SitePlan nothing;
        nothing.region_id = "EMPTY";
        RegionPricing zero = price_region(empty, nothing, strategy, ctx, book, 0.0);
        CHECK(zero.private_cost == doctest::Approx(0.0));
    }
}
