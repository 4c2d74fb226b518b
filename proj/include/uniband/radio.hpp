#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "uniband/country_data.hpp"
#include "uniband/rng.hpp"

namespace uniband {

struct RadioParams {
    int samples_per_receiver = 20;
    int receivers_per_cell = 50;
    double tx_power_dbm = 40.0;
    double tx_antenna_gain_dbi = 16.0;
    int sectors = 3;
    double tx_height_m = 30.0;
    double ue_antenna_gain_dbi = 0.0;
    double ue_losses_db = 4.0;
    double ue_misc_losses_db = 4.0;
    double ue_height_m = 1.5;
    double network_load = 0.5;
    int frequency_reuse = 1;
    double los_cutoff_m = 500.0;
    double indoor_probability = 0.5;
    double building_penetration_mu_db = 12.0;
    double building_penetration_sigma_db = 8.0;
    double shadow_sigma_los_db = 4.0;
    double shadow_sigma_nlos_db = 8.0;
    double pathloss_exponent_los = 2.2;
    double pathloss_exponent_nlos = 3.5;
    double clutter_nlos_urban_db = 20.0;
    double clutter_nlos_suburban_db = 12.0;
    double clutter_nlos_rural_db = 6.0;
    double noise_figure_db = 7.0;
    double reference_distance_m = 10.0;
    // Clutter environment assumed when generating the capacity table.
    SettlementClass lut_clutter_class = SettlementClass::Suburban;
};

struct SETable {
    Generation technology = Generation::FourG;
    std::vector<std::pair<double, double>> rows;  // (sinr_min_db, se_bps_hz), ascending
    double mimo_multiplier = 1.0;
};

struct SETables {
    SETable table_4g;
    SETable table_5g;

    const SETable& for_tech(Generation g) const {
        return g == Generation::FourG ? table_4g : table_5g;
    }
};

SETables default_se_tables();
SETables load_se_tables_csv(const std::string& path, double mimo_4g = 2.0, double mimo_5g = 2.6);

struct LutPoint {
    double site_density = 0.0;  // sites/km2
    double mean_se_bps_hz = 0.0;
};

struct CapacityLUT {
    // (generation, frequency) -> density curve, densities strictly increasing
    std::map<std::pair<int, double>, std::vector<LutPoint>> entries;

    void insert(Generation g, double freq_mhz, double density, double mean_se);
    // Linear interpolation along the density axis; clamped at the ends with
    // *clamped set when the query falls outside the tabulated range.
    double mean_se(Generation g, double freq_mhz, double density, bool* clamped = nullptr) const;
    std::vector<double> densities(Generation g, double freq_mhz) const;
    bool covers(Generation g, double freq_mhz) const;
    double max_density(Generation g, double freq_mhz) const;

    std::string to_csv() const;
    static CapacityLUT from_csv_file(const std::string& path);
};

// Median path loss plus a shadow-fading draw from rng. Distances below the
// reference distance clamp to it.
double path_loss_db(double frequency_mhz, double distance_2d_m, bool los, SettlementClass clutter,
                    const RadioParams& params, CounterRng& rng);
double median_path_loss_db(double frequency_mhz, double distance_2d_m, bool los,
                           SettlementClass clutter, const RadioParams& params);

// Line-of-sight probability, decaying exponentially with the los_cutoff
// scale so links are predominantly LOS below it and NLOS far beyond.
double los_probability(double distance_m, const RadioParams& params);

struct SinrConfig {
    double site_density = 1.0;  // sites/km2
    double frequency_mhz = 800.0;
    double bandwidth_mhz = 10.0;  // noise bandwidth
    SettlementClass clutter_class = SettlementClass::Rural;
};

// Receivers drop uniformly in the serving hexagon; one serving site plus the
// first interfering tier. Deterministic per seed and per receiver index.
std::vector<double> simulate_sinr(const SinrConfig& config, const RadioParams& params,
                                  std::uint64_t seed);

double sinr_to_se(double sinr_db, const SETable& table);

struct LutBand {
    Generation technology = Generation::FourG;
    double frequency_mhz = 800.0;
    double bandwidth_mhz = 10.0;
};

CapacityLUT build_capacity_lut(const std::vector<LutBand>& bands,
                               const std::vector<double>& densities, const RadioParams& params,
                               const SETables& tables, std::uint64_t seed);

// Eq-style area capacity: sum over bands of SE x cells/site x density x
// downlink bandwidth.
struct BandSe {
    double se_bps_hz = 0.0;
    double downlink_mhz = 0.0;
};
double area_capacity_mbps_km2(const std::vector<BandSe>& bands, int cells_per_site,
                              double site_density);

// Capacity curve helper: receiver pinned at a distance from the serving site
// inside a cell of the given circumradius, azimuth randomized.
double per_user_capacity_mbps(Generation tech, double frequency_mhz, double bandwidth_mhz,
                              double distance_m, double cell_radius_km, SettlementClass clutter,
                              const RadioParams& params, const SETables& tables, std::uint64_t seed,
                              int n_receivers = 200);

}  // namespace uniband
