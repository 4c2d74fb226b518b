#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "uniband/clustering.hpp"
#include "uniband/csv.hpp"
#include "uniband/pipeline.hpp"
#include "uniband/radio.hpp"
#include "uniband/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void write_text(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int cmd_validate(const std::string& config_path) {
    uniband::RunConfig config = uniband::load_run_config(config_path);
    uniband::ValidationReport report = uniband::validate_run_config(config);
    if (report.ok()) {
        std::cout << "ok: " << config.countries.size() << " countries, " << config.scenarios.size()
                  << " scenarios, " << config.strategies.size() << " strategies\n";
        return kExitOk;
    }
    for (const auto& issue : report.issues)
        std::cerr << "error [" << issue.field << "]: " << issue.message << "\n";
    return kExitValidation;
}

int cmd_cluster(const std::string& features_path, int k, std::uint64_t seed,
                const std::string& out_path, int wss_max) {
    auto features = uniband::load_features_csv(features_path);
    if (wss_max > 0) {
        auto std_matrix = uniband::standardize(features);
        std::cout << "k,wss\n";
        for (const auto& [kk, wss] : uniband::wss_curve(std_matrix.rows, wss_max, seed))
            std::cout << kk << ',' << uniband::csv::format_double(wss) << '\n';
        return kExitOk;
    }
    uniband::ClusterModel model = uniband::fit_country_clusters(features, k, seed);
    std::string csv = "iso3,cluster_id\n";
    for (const auto& f : features)
        csv += f.iso3 + "," + std::to_string(model.assignments.at(f.iso3)) + "\n";
    if (out_path.empty())
        std::cout << csv;
    else
        write_text(out_path, csv);
    std::cerr << "wss=" << model.wss << "\n";
    return kExitOk;
}

int cmd_lut(const std::string& out_path, std::uint64_t seed, const std::string& config_path,
            const std::string& se_tables_path) {
    std::vector<uniband::LutBand> bands;
    if (!config_path.empty()) {
        uniband::RunConfig config = uniband::load_run_config(config_path);
        uniband::CostBook book = config.costbook_path.empty()
                                     ? uniband::CostBook{}
                                     : uniband::load_costbook_json(config.costbook_path);
        std::vector<uniband::CountryInputs> countries;
        for (const auto& dir : config.countries)
            countries.push_back(uniband::load_country_bundle(dir, book));
        bands = uniband::lut_bands_for(countries);
    } else {
        bands = {{uniband::Generation::FourG, 800.0, 10.0},
                 {uniband::Generation::FourG, 1800.0, 10.0},
                 {uniband::Generation::FourG, 2600.0, 10.0},
                 {uniband::Generation::FiveG, 700.0, 10.0},
                 {uniband::Generation::FiveG, 3500.0, 50.0}};
    }
    uniband::SETables tables = se_tables_path.empty()
                                   ? uniband::default_se_tables()
                                   : uniband::load_se_tables_csv(se_tables_path);
    uniband::CapacityLUT lut = uniband::build_capacity_lut(
        bands, uniband::default_lut_densities(), uniband::RadioParams{}, tables, seed);
    write_text(out_path, lut.to_csv());
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int cmd_assets(const std::string& country_dir, const std::string& out_path) {
    uniband::CostBook book;
    uniband::CountryInputs inputs = uniband::load_country_bundle(country_dir, book);
    write_text(out_path, uniband::baseline_assets_csv(inputs.baseline_assets));
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::int64_t seed_arg,
            int jobs) {
    uniband::RunConfig config = uniband::load_run_config(config_path);
    std::uint64_t seed = seed_arg >= 0 ? static_cast<std::uint64_t>(seed_arg) : config.seed;
    uniband::ValidationReport report = uniband::validate_run_config(config);
    if (!report.ok()) {
        for (const auto& issue : report.issues)
            std::cerr << "error [" << issue.field << "]: " << issue.message << "\n";
        return kExitValidation;
    }
    uniband::SweepResult result = uniband::run_sweep(config, out_dir, seed, jobs);
    std::cout << "wrote " << result.files_written.size() << " files for " << result.triples
              << " triples under " << out_dir << "\n";
    return kExitOk;
}

int cmd_report(const std::string& out_dir, const std::string& roster_path, int horizon) {
    uniband::rebuild_report(out_dir, roster_path, horizon);
    std::cout << "wrote " << (std::filesystem::path(out_dir) / "global_report.csv").string() << "\n";
    return kExitOk;
}

int cmd_fiber(const std::string& country_dir, const std::string& out_path) {
    uniband::CostBook book;
    uniband::CountryInputs inputs = uniband::load_country_bundle(country_dir, book);
    write_text(out_path, uniband::fiber_plan_to_json(inputs.fiber_plan));
    std::cout << "wrote " << out_path << " (" << inputs.fiber_plan.new_edges.size()
              << " new edges, " << inputs.fiber_plan.total_new_length_m << " m)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniband - universal broadband cost assessment"};
    app.require_subcommand(1);

    std::string config_path, out_path = "out", features_path, country_dir, roster_path,
        se_tables_path;
    std::int64_t seed_arg = -1;
    std::uint64_t seed = 42;
    int jobs = 1, k = 6, wss_max = 0, horizon = 10;

    auto* validate = app.add_subcommand("validate", "validate a run configuration");
    validate->add_option("--config", config_path, "run configuration JSON")->required();

    auto* cluster = app.add_subcommand("cluster", "cluster countries by features");
    cluster->add_option("--features", features_path, "features.csv")->required();
    cluster->add_option("--k", k, "number of clusters");
    cluster->add_option("--seed", seed, "random seed");
    cluster->add_option("--out", out_path, "output clusters.csv (stdout if omitted)");
    cluster->add_option("--wss", wss_max, "print the WSS curve for k = 1..N instead");

    auto* lut = app.add_subcommand("lut", "generate the capacity lookup table");
    lut->add_option("--out", out_path, "output lut.csv")->required();
    lut->add_option("--seed", seed, "random seed");
    lut->add_option("--config", config_path, "derive bands from a run configuration");
    lut->add_option("--se-tables", se_tables_path, "replacement se_tables.csv");

    auto* run = app.add_subcommand("run", "run the full scenario sweep");
    run->add_option("--config", config_path, "run configuration JSON")->required();
    run->add_option("--out", out_path, "output directory");
    run->add_option("--seed", seed_arg, "random seed (defaults to the config seed)");
    run->add_option("--jobs", jobs, "worker threads");

    auto* report = app.add_subcommand("report", "rebuild global_report.csv from run outputs");
    report->add_option("--out", out_path, "run output directory")->required();
    report->add_option("--roster", roster_path, "roster.csv")->required();
    report->add_option("--horizon", horizon, "assessment horizon in years");

    auto* fiber = app.add_subcommand("fiber", "export a country's fiber plan as JSON");
    fiber->add_option("--country", country_dir, "country bundle directory")->required();
    fiber->add_option("--out", out_path, "output fiber_plan.json")->required();

    auto* assets = app.add_subcommand("assets", "export a country's baseline asset allocation");
    assets->add_option("--country", country_dir, "country bundle directory")->required();
    assets->add_option("--out", out_path, "output baseline_assets.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (cluster->parsed())
            return cmd_cluster(features_path, k, seed, out_path == "out" ? "" : out_path, wss_max);
        if (lut->parsed()) return cmd_lut(out_path, seed, config_path, se_tables_path);
        if (run->parsed()) return cmd_run(config_path, out_path, seed_arg, jobs);
        if (report->parsed()) return cmd_report(out_path, roster_path, horizon);
        if (fiber->parsed()) return cmd_fiber(country_dir, out_path);
        if (assets->parsed()) return cmd_assets(country_dir, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
