#include "uniband/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "uniband/csv.hpp"
#include "uniband/rng.hpp"

namespace uniband {

namespace {

double sq_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        d2 += d * d;
    }
    return d2;
}

int nearest_centroid(const std::vector<double>& p, const std::vector<std::vector<double>>& centroids) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        double d2 = sq_distance(p, centroids[c]);
        if (d2 < best) {  // strict: ties keep the lowest cluster id
            best = d2;
            best_c = static_cast<int>(c);
        }
    }
    return best_c;
}

double total_wss(const std::vector<std::vector<double>>& points,
                 const std::vector<std::vector<double>>& centroids, const std::vector<int>& assign) {
    double wss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        wss += sq_distance(points[i], centroids[static_cast<std::size_t>(assign[i])]);
    return wss;
}

// k-means++ seeding on a dedicated stream per restart.
std::vector<std::vector<double>> seed_centroids(const std::vector<std::vector<double>>& points, int k,
                                                CounterRng& rng) {
    std::vector<std::vector<double>> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    std::size_t first = static_cast<std::size_t>(rng.uniform() * static_cast<double>(points.size()));
    if (first >= points.size()) first = points.size() - 1;
    centroids.push_back(points[first]);
    std::vector<double> d2(points.size());
    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, sq_distance(points[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total <= 0.0) {
            pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(points.size()));
            if (pick >= points.size()) pick = points.size() - 1;
        } else {
            double target = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
                pick = i;
            }
        }
        centroids.push_back(points[pick]);
    }
    return centroids;
}

struct LloydResult {
    std::vector<std::vector<double>> centroids;
    std::vector<int> assign;
    double wss = 0.0;
};

LloydResult lloyd(const std::vector<std::vector<double>>& points, int k, CounterRng rng,
                  const KmeansOptions& options) {
    const std::size_t dim = points[0].size();
    LloydResult res;
    res.centroids = seed_centroids(points, k, rng);
    res.assign.assign(points.size(), -1);

    double prev_wss = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < options.max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            int c = nearest_centroid(points[i], res.centroids);
            if (c != res.assign[i]) {
                res.assign[i] = c;
                changed = true;
            }
        }
        // Recompute centroids; an emptied cluster keeps its previous centroid.
        std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                              std::vector<double>(dim, 0.0));
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto c = static_cast<std::size_t>(res.assign[i]);
            ++counts[c];
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t d = 0; d < dim; ++d) res.centroids[c][d] = sums[c][d] / counts[c];
        }
        res.wss = total_wss(points, res.centroids, res.assign);
        if (res.wss > prev_wss + 1e-9 * std::max(1.0, prev_wss))
            throw std::logic_error("kmeans: WSS increased across an iteration");
        prev_wss = res.wss;
        if (!changed) break;
    }
    return res;
}

std::size_t count_distinct(const std::vector<std::vector<double>>& points) {
    std::set<std::vector<double>> s(points.begin(), points.end());
    return s.size();
}

}  // namespace

StandardizedMatrix standardize(const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& feature_names) {
    if (rows.size() < 2) throw std::runtime_error("standardize: need at least 2 rows");
    const std::size_t dim = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != dim) throw std::runtime_error("standardize: ragged feature matrix");

    StandardizedMatrix out;
    out.stats.mean.assign(dim, 0.0);
    out.stats.stddev.assign(dim, 0.0);
    for (const auto& r : rows)
        for (std::size_t d = 0; d < dim; ++d) out.stats.mean[d] += r[d];
    for (std::size_t d = 0; d < dim; ++d) out.stats.mean[d] /= static_cast<double>(rows.size());
    for (const auto& r : rows)
        for (std::size_t d = 0; d < dim; ++d) {
            double delta = r[d] - out.stats.mean[d];
            out.stats.stddev[d] += delta * delta;
        }
    for (std::size_t d = 0; d < dim; ++d) {
        out.stats.stddev[d] = std::sqrt(out.stats.stddev[d] / static_cast<double>(rows.size() - 1));
        if (out.stats.stddev[d] <= 0.0) {
            std::string name = d < feature_names.size() ? feature_names[d] : std::to_string(d);
            throw std::runtime_error("standardize: zero variance in feature '" + name + "'");
        }
    }
    out.rows.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<double> z(dim);
        for (std::size_t d = 0; d < dim; ++d) z[d] = (r[d] - out.stats.mean[d]) / out.stats.stddev[d];
        out.rows.push_back(std::move(z));
    }
    return out;
}

StandardizedMatrix standardize(const std::vector<CountryFeatures>& features) {
    std::vector<std::vector<double>> rows;
    rows.reserve(features.size());
    for (const auto& f : features)
        rows.push_back({f.gdp_per_capita, f.pop_density, f.coverage_4g});
    return standardize(rows, {"gdp_per_capita", "pop_density", "coverage_4g"});
}

ClusterModel kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed,
                    const KmeansOptions& options) {
    if (points.empty()) throw std::runtime_error("kmeans: no points");
    if (k < 1) throw std::runtime_error("kmeans: k must be >= 1");
    if (static_cast<std::size_t>(k) > count_distinct(points))
        throw std::runtime_error("kmeans: k exceeds number of distinct points");

    LloydResult best;
    best.wss = std::numeric_limits<double>::infinity();
    for (int r = 0; r < options.restarts; ++r) {
        // Restarts draw from independent streams, so they could run concurrently
        // and still merge to the same min-WSS winner.
        LloydResult run = lloyd(points, k, CounterRng(seed, 0x6b6d6561u /*"kmea"*/, static_cast<std::uint64_t>(r)),
                                options);
        if (run.wss < best.wss) best = std::move(run);
    }

    ClusterModel model;
    model.k = k;
    model.centroids = std::move(best.centroids);
    model.row_assignments = std::move(best.assign);
    model.wss = best.wss;
    return model;
}

ClusterModel fit_country_clusters(const std::vector<CountryFeatures>& features, int k,
                                  std::uint64_t seed, const KmeansOptions& options) {
    StandardizedMatrix std_matrix = standardize(features);
    ClusterModel model = kmeans(std_matrix.rows, k, seed, options);
    model.standardization = std_matrix.stats;
    for (std::size_t i = 0; i < features.size(); ++i)
        model.assignments[features[i].iso3] = model.row_assignments[i];
    return model;
}

std::vector<std::pair<int, double>> wss_curve(const std::vector<std::vector<double>>& points,
                                              int k_max, std::uint64_t seed,
                                              const KmeansOptions& options) {
    std::vector<std::pair<int, double>> curve;
    for (int k = 1; k <= k_max; ++k) curve.emplace_back(k, kmeans(points, k, seed, options).wss);
    return curve;
}

int assign_cluster_standardized(const std::vector<double>& point, const ClusterModel& model) {
    if (model.centroids.empty()) throw std::runtime_error("assign_cluster: model not fitted");
    return nearest_centroid(point, model.centroids);
}

int assign_cluster(const CountryFeatures& features, const ClusterModel& model) {
    const auto& s = model.standardization;
    if (s.mean.size() != 3) throw std::runtime_error("assign_cluster: model lacks standardization");
    std::vector<double> z = {(features.gdp_per_capita - s.mean[0]) / s.stddev[0],
                             (features.pop_density - s.mean[1]) / s.stddev[1],
                             (features.coverage_4g - s.mean[2]) / s.stddev[2]};
    return assign_cluster_standardized(z, model);
}

std::vector<CountryFeatures> load_features_csv(const std::string& path) {
    csv::Table t = csv::read_file(path);
    int iso_col = t.require_column("iso3");
    int gdp_col = t.require_column("gdp_pc");
    int dens_col = t.require_column("pop_density");
    int cov_col = t.require_column("coverage_4g");
    std::vector<CountryFeatures> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        CountryFeatures f;
        f.iso3 = row[static_cast<std::size_t>(iso_col)];
        f.gdp_per_capita = csv::to_double(row[static_cast<std::size_t>(gdp_col)], path);
        f.pop_density = csv::to_double(row[static_cast<std::size_t>(dens_col)], path);
        f.coverage_4g = csv::to_double(row[static_cast<std::size_t>(cov_col)], path);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace uniband
