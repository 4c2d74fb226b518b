#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace uniband {

struct CountryFeatures {
    std::string iso3;
    double gdp_per_capita = 0.0;
    double pop_density = 0.0;
    double coverage_4g = 0.0;
};

struct Standardization {
    std::vector<double> mean;
    std::vector<double> stddev;  // sample stddev (n-1 denominator)
};

struct StandardizedMatrix {
    std::vector<std::vector<double>> rows;
    Standardization stats;
};

struct ClusterModel {
    int k = 0;
    std::vector<std::vector<double>> centroids;  // standardized space
    Standardization standardization;
    std::map<std::string, int> assignments;      // iso3 -> cluster id
    std::vector<int> row_assignments;
    double wss = 0.0;
};

struct KmeansOptions {
    int max_iter = 100;
    int restarts = 25;
};

StandardizedMatrix standardize(const std::vector<CountryFeatures>& features);
StandardizedMatrix standardize(const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& feature_names);

// Lloyd's algorithm with k-means++ seeding; best of `restarts` runs by WSS,
// ties broken by lowest restart index. Deterministic for a given seed.
ClusterModel kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed,
                    const KmeansOptions& options = {});

ClusterModel fit_country_clusters(const std::vector<CountryFeatures>& features, int k,
                                  std::uint64_t seed, const KmeansOptions& options = {});

std::vector<std::pair<int, double>> wss_curve(const std::vector<std::vector<double>>& points,
                                              int k_max, std::uint64_t seed,
                                              const KmeansOptions& options = {});

int assign_cluster(const CountryFeatures& features, const ClusterModel& model);
int assign_cluster_standardized(const std::vector<double>& point, const ClusterModel& model);

std::vector<CountryFeatures> load_features_csv(const std::string& path);

}  // namespace uniband
