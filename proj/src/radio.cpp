#include "uniband/radio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "uniband/csv.hpp"

namespace uniband {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_db(double mw) { return 10.0 * std::log10(mw); }

std::uint64_t double_bits(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    return bits;
}

// Stream id for one (frequency, density, class, bandwidth) simulation key.
std::uint64_t sim_stream(const SinrConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto absorb = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    absorb(double_bits(config.frequency_mhz));
    absorb(double_bits(config.site_density));
    absorb(double_bits(config.bandwidth_mhz));
    absorb(static_cast<std::uint64_t>(config.clutter_class));
    return h;
}

double clutter_nlos_db(SettlementClass c, const RadioParams& p) {
    switch (c) {
        case SettlementClass::Urban: return p.clutter_nlos_urban_db;
        case SettlementClass::Suburban: return p.clutter_nlos_suburban_db;
        case SettlementClass::Rural: return p.clutter_nlos_rural_db;
    }
    return p.clutter_nlos_rural_db;
}

double noise_dbm(double bandwidth_mhz, const RadioParams& p) {
    return -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6) + p.noise_figure_db;
}

// Hexagon with circumradius r, vertices at 0, 60, ... degrees.
bool in_hexagon(double x, double y, double r) {
    const double apothem = r * std::sqrt(3.0) / 2.0;
    const double p30 = std::abs(x * std::cos(kPi / 6.0) + y * std::sin(kPi / 6.0));
    const double p90 = std::abs(y);
    const double p150 = std::abs(x * std::cos(5.0 * kPi / 6.0) + y * std::sin(5.0 * kPi / 6.0));
    return std::max({p30, p90, p150}) <= apothem;
}

struct Layout {
    double cell_radius_m = 0.0;          // hexagon circumradius
    std::vector<std::pair<double, double>> interferers;  // positions in meters
};

// Serving hexagon sized to cover 1/density km2; six first-tier interferers
// across the flat edges at the hexagonal-lattice neighbor distance
// (sqrt(3) x circumradius), which keeps neighbor cells disjoint.
Layout make_layout(double site_density) {
    if (site_density <= 0.0) throw std::runtime_error("simulate_sinr: density must be > 0");
    Layout layout;
    const double circumradius_km = std::sqrt(2.0 / (3.0 * std::sqrt(3.0) * site_density));
    const double isd_km = std::sqrt(3.0) * circumradius_km;
    layout.cell_radius_m = circumradius_km * 1000.0;
    for (int k = 0; k < 6; ++k) {
        double angle = kPi / 6.0 + k * kPi / 3.0;
        layout.interferers.emplace_back(isd_km * 1000.0 * std::cos(angle),
                                        isd_km * 1000.0 * std::sin(angle));
    }
    return layout;
}

struct LinkBudget {
    double rx_dbm(double frequency_mhz, double distance_m, SettlementClass clutter,
                  const RadioParams& p, CounterRng& rng) const {
        bool los = rng.uniform() < los_probability(distance_m, p);
        double pl = path_loss_db(frequency_mhz, distance_m, los, clutter, p, rng);
        return p.tx_power_dbm + p.tx_antenna_gain_dbi + p.ue_antenna_gain_dbi - p.ue_losses_db -
               p.ue_misc_losses_db - pl;
    }
};

}  // namespace

double los_probability(double distance_m, const RadioParams& params) {
    double d = std::max(distance_m, params.reference_distance_m);
    return std::exp(-(d - params.reference_distance_m) / params.los_cutoff_m);
}

double median_path_loss_db(double frequency_mhz, double distance_2d_m, bool los,
                           SettlementClass clutter, const RadioParams& params) {
    if (frequency_mhz < 400.0 || frequency_mhz > 6000.0)
        throw std::runtime_error("path_loss: frequency " + std::to_string(frequency_mhz) +
                                 " MHz outside [400, 6000]");
    double d = std::max(distance_2d_m, params.reference_distance_m);
    // Free-space intercept at the reference distance, then log-distance decay.
    double fspl_ref = 20.0 * std::log10(frequency_mhz) +
                      20.0 * std::log10(params.reference_distance_m / 1000.0) + 32.44;
    double exponent = los ? params.pathloss_exponent_los : params.pathloss_exponent_nlos;
    double loss = fspl_ref + 10.0 * exponent * std::log10(d / params.reference_distance_m);
    if (!los) loss += clutter_nlos_db(clutter, params);
    return loss;
}

double path_loss_db(double frequency_mhz, double distance_2d_m, bool los, SettlementClass clutter,
                    const RadioParams& params, CounterRng& rng) {
    double sigma = los ? params.shadow_sigma_los_db : params.shadow_sigma_nlos_db;
    double shadow = sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0;
    return median_path_loss_db(frequency_mhz, distance_2d_m, los, clutter, params) + shadow;
}

std::vector<double> simulate_sinr(const SinrConfig& config, const RadioParams& params,
                                  std::uint64_t seed) {
    Layout layout = make_layout(config.site_density);
    const double noise_mw = dbm_to_mw(noise_dbm(config.bandwidth_mhz, params));
    const std::uint64_t stream = sim_stream(config);
    LinkBudget budget;

    std::vector<double> sinr_db;
    sinr_db.reserve(static_cast<std::size_t>(params.receivers_per_cell) *
                    static_cast<std::size_t>(params.samples_per_receiver));
    for (int r = 0; r < params.receivers_per_cell; ++r) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(r));
        // Uniform position inside the serving hexagon.
        double x = 0.0, y = 0.0;
        do {
            x = (rng.uniform() * 2.0 - 1.0) * layout.cell_radius_m;
            y = (rng.uniform() * 2.0 - 1.0) * layout.cell_radius_m;
        } while (!in_hexagon(x, y, layout.cell_radius_m));
        const double serving_distance = std::hypot(x, y);
        const bool indoor = rng.bernoulli(params.indoor_probability);

        for (int s = 0; s < params.samples_per_receiver; ++s) {
            double penetration = indoor ? rng.normal(params.building_penetration_mu_db,
                                                     params.building_penetration_sigma_db)
                                        : 0.0;
            double serving_mw = dbm_to_mw(
                budget.rx_dbm(config.frequency_mhz, serving_distance, config.clutter_class, params, rng) -
                penetration);
            double interference_mw = 0.0;
            for (const auto& pos : layout.interferers) {
                double d = std::hypot(x - pos.first, y - pos.second);
                interference_mw += dbm_to_mw(
                    budget.rx_dbm(config.frequency_mhz, d, config.clutter_class, params, rng) -
                    penetration);
            }
            double sinr = serving_mw / (interference_mw * params.network_load + noise_mw);
            sinr_db.push_back(mw_to_db(sinr));
        }
    }
    return sinr_db;
}

double sinr_to_se(double sinr_db, const SETable& table) {
    if (table.rows.empty()) throw std::runtime_error("sinr_to_se: empty SE table");
    double se = 0.0;
    for (const auto& [sinr_min, se_row] : table.rows) {
        if (sinr_db >= sinr_min)
            se = se_row;
        else
            break;
    }
    return se * table.mimo_multiplier;
}

// ---------------------------------------------------------------------------
// SE tables
// ---------------------------------------------------------------------------

SETables default_se_tables() {
    SETables tables;
    tables.table_4g.technology = Generation::FourG;
    tables.table_4g.mimo_multiplier = 2.0;
    tables.table_4g.rows = {
        {-6.7, 0.1523}, {-4.7, 0.2344}, {-2.3, 0.3770}, {0.2, 0.6016},  {2.4, 0.8770},
        {4.3, 1.1758},  {5.9, 1.4766},  {8.1, 1.9141},  {10.3, 2.4063}, {11.7, 2.7305},
        {14.1, 3.3223}, {16.3, 3.9023}, {18.7, 4.5234}, {21.0, 5.1152}, {22.7, 5.5547},
    };
    tables.table_5g.technology = Generation::FiveG;
    tables.table_5g.mimo_multiplier = 2.6;
    tables.table_5g.rows = {
        {-6.7, 0.1523}, {-4.7, 0.3770}, {-2.3, 0.8770}, {0.2, 1.4766},  {2.4, 1.9141},
        {4.3, 2.4063},  {5.9, 2.7305},  {8.1, 3.3223},  {10.3, 3.9023}, {11.7, 4.5234},
        {14.1, 5.1152}, {16.3, 5.5547}, {18.7, 6.2266}, {21.0, 6.9141}, {22.7, 7.8000},
    };
    return tables;
}

SETables load_se_tables_csv(const std::string& path, double mimo_4g, double mimo_5g) {
    csv::Table t = csv::read_file(path);
    int tech_col = t.require_column("technology");
    int sinr_col = t.require_column("sinr_min_db");
    int se_col = t.require_column("se_bps_hz");
    SETables tables;
    tables.table_4g.technology = Generation::FourG;
    tables.table_4g.mimo_multiplier = mimo_4g;
    tables.table_5g.technology = Generation::FiveG;
    tables.table_5g.mimo_multiplier = mimo_5g;
    for (const auto& row : t.rows) {
        const std::string& tech = row[static_cast<std::size_t>(tech_col)];
        double sinr = csv::to_double(row[static_cast<std::size_t>(sinr_col)], path);
        double se = csv::to_double(row[static_cast<std::size_t>(se_col)], path);
        if (tech == "4G")
            tables.table_4g.rows.emplace_back(sinr, se);
        else if (tech == "5G")
            tables.table_5g.rows.emplace_back(sinr, se);
        else
            throw std::runtime_error("se_tables: unknown technology '" + tech + "' in " + path);
    }
    auto finish = [&](SETable& table) {
        if (table.rows.empty()) throw std::runtime_error("se_tables: no rows in " + path);
        std::sort(table.rows.begin(), table.rows.end());
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            if (table.rows[i].second < table.rows[i - 1].second)
                throw std::runtime_error("se_tables: SE must be non-decreasing in SINR");
    };
    finish(tables.table_4g);
    finish(tables.table_5g);
    return tables;
}

// ---------------------------------------------------------------------------
// Capacity LUT
// ---------------------------------------------------------------------------

void CapacityLUT::insert(Generation g, double freq_mhz, double density, double mean_se) {
    auto& curve = entries[{static_cast<int>(g), freq_mhz}];
    if (!curve.empty() && density <= curve.back().site_density)
        throw std::runtime_error("lut: densities must be strictly increasing");
    curve.push_back({density, mean_se});
}

bool CapacityLUT::covers(Generation g, double freq_mhz) const {
    return entries.count({static_cast<int>(g), freq_mhz}) > 0;
}

std::vector<double> CapacityLUT::densities(Generation g, double freq_mhz) const {
    auto it = entries.find({static_cast<int>(g), freq_mhz});
    if (it == entries.end()) throw std::runtime_error("lut: no entry for requested band");
    std::vector<double> out;
    for (const auto& p : it->second) out.push_back(p.site_density);
    return out;
}

double CapacityLUT::max_density(Generation g, double freq_mhz) const {
    auto it = entries.find({static_cast<int>(g), freq_mhz});
    if (it == entries.end() || it->second.empty())
        throw std::runtime_error("lut: no entry for requested band");
    return it->second.back().site_density;
}

double CapacityLUT::mean_se(Generation g, double freq_mhz, double density, bool* clamped) const {
    auto it = entries.find({static_cast<int>(g), freq_mhz});
    if (it == entries.end() || it->second.empty())
        throw std::runtime_error("lut: no entry for " + std::string(to_string(g)) + " @ " +
                                 std::to_string(freq_mhz) + " MHz");
    const auto& curve = it->second;
    if (clamped) *clamped = false;
    if (density <= curve.front().site_density) {
        if (clamped && density < curve.front().site_density) *clamped = true;
        return curve.front().mean_se_bps_hz;
    }
    if (density >= curve.back().site_density) {
        if (clamped && density > curve.back().site_density) *clamped = true;
        return curve.back().mean_se_bps_hz;
    }
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (density <= curve[i].site_density) {
            double t = (density - curve[i - 1].site_density) /
                       (curve[i].site_density - curve[i - 1].site_density);
            return curve[i - 1].mean_se_bps_hz +
                   t * (curve[i].mean_se_bps_hz - curve[i - 1].mean_se_bps_hz);
        }
    }
    return curve.back().mean_se_bps_hz;
}

std::string CapacityLUT::to_csv() const {
    std::ostringstream out;
    out << "technology,freq_mhz,density,mean_se\n";
    for (const auto& [key, curve] : entries) {
        for (const auto& p : curve) {
            out << (key.first == static_cast<int>(Generation::FourG) ? "4G" : "5G") << ','
                << csv::format_double(key.second) << ',' << csv::format_double(p.site_density) << ','
                << csv::format_double(p.mean_se_bps_hz) << '\n';
        }
    }
    return out.str();
}

CapacityLUT CapacityLUT::from_csv_file(const std::string& path) {
    csv::Table t = csv::read_file(path);
    int tech_col = t.require_column("technology");
    int freq_col = t.require_column("freq_mhz");
    int dens_col = t.require_column("density");
    int se_col = t.require_column("mean_se");
    CapacityLUT lut;
    for (const auto& row : t.rows) {
        const std::string& tech = row[static_cast<std::size_t>(tech_col)];
        Generation g = tech == "5G" ? Generation::FiveG : Generation::FourG;
        lut.insert(g, csv::to_double(row[static_cast<std::size_t>(freq_col)], path),
                   csv::to_double(row[static_cast<std::size_t>(dens_col)], path),
                   csv::to_double(row[static_cast<std::size_t>(se_col)], path));
    }
    return lut;
}

CapacityLUT build_capacity_lut(const std::vector<LutBand>& bands,
                               const std::vector<double>& densities, const RadioParams& params,
                               const SETables& tables, std::uint64_t seed) {
    if (bands.empty() || densities.empty())
        throw std::runtime_error("build_capacity_lut: empty axes");
    std::vector<double> sorted = densities;
    std::sort(sorted.begin(), sorted.end());
    CapacityLUT lut;
    for (const auto& band : bands) {
        const SETable& table = tables.for_tech(band.technology);
        for (double density : sorted) {
            SinrConfig config;
            config.site_density = density;
            config.frequency_mhz = band.frequency_mhz;
            config.bandwidth_mhz = band.bandwidth_mhz;
            config.clutter_class = params.lut_clutter_class;
            std::vector<double> sinr = simulate_sinr(config, params, seed);
            double se_sum = 0.0;
            for (double s : sinr) se_sum += sinr_to_se(s, table);
            lut.insert(band.technology, band.frequency_mhz, density,
                       se_sum / static_cast<double>(sinr.size()));
        }
    }
    return lut;
}

double area_capacity_mbps_km2(const std::vector<BandSe>& bands, int cells_per_site,
                              double site_density) {
    if (cells_per_site <= 0 || site_density < 0.0)
        throw std::runtime_error("area_capacity: inputs must be positive");
    double capacity = 0.0;
    for (const auto& band : bands)
        capacity += band.se_bps_hz * cells_per_site * site_density * band.downlink_mhz;
    return capacity;
}

double per_user_capacity_mbps(Generation tech, double frequency_mhz, double bandwidth_mhz,
                              double distance_m, double cell_radius_km, SettlementClass clutter,
                              const RadioParams& params, const SETables& tables, std::uint64_t seed,
                              int n_receivers) {
    // Density implied by a hexagonal cell with the given circumradius.
    const double density = 2.0 / (3.0 * std::sqrt(3.0) * cell_radius_km * cell_radius_km);
    Layout layout = make_layout(density);
    const double noise_mw = dbm_to_mw(noise_dbm(bandwidth_mhz, params));
    const SETable& table = tables.for_tech(tech);
    LinkBudget budget;

    SinrConfig key_config;
    key_config.site_density = density;
    key_config.frequency_mhz = frequency_mhz;
    key_config.bandwidth_mhz = bandwidth_mhz;
    key_config.clutter_class = clutter;
    const std::uint64_t stream = sim_stream(key_config) ^ 0x7573657263617 /*userca*/;

    double se_sum = 0.0;
    std::size_t n = 0;
    for (int r = 0; r < n_receivers; ++r) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(r));
        double azimuth = rng.uniform() * 2.0 * kPi;
        double x = distance_m * std::cos(azimuth);
        double y = distance_m * std::sin(azimuth);
        bool indoor = rng.bernoulli(params.indoor_probability);
        for (int s = 0; s < params.samples_per_receiver; ++s) {
            double penetration = indoor ? rng.normal(params.building_penetration_mu_db,
                                                     params.building_penetration_sigma_db)
                                        : 0.0;
            double serving_mw = dbm_to_mw(
                budget.rx_dbm(frequency_mhz, distance_m, clutter, params, rng) - penetration);
            double interference_mw = 0.0;
            for (const auto& pos : layout.interferers) {
                double d = std::hypot(x - pos.first, y - pos.second);
                interference_mw +=
                    dbm_to_mw(budget.rx_dbm(frequency_mhz, d, clutter, params, rng) - penetration);
            }
            double sinr = mw_to_db(serving_mw / (interference_mw * params.network_load + noise_mw));
            se_sum += sinr_to_se(sinr, table);
            ++n;
        }
    }
    return (se_sum / static_cast<double>(n)) * bandwidth_mhz;
}

}  // namespace uniband
