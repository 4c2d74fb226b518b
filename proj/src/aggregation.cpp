#include "uniband/aggregation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "uniband/csv.hpp"

namespace uniband {

double cost_per_capita(double national_social_cost, double population) {
    if (population <= 0.0) throw std::runtime_error("cost_per_capita: population must be > 0");
    return national_social_cost / population;
}

double mean_cost_per_capita(const std::vector<RepresentativeResult>& representatives) {
    if (representatives.empty())
        throw std::runtime_error("mean_cost_per_capita: no representatives");
    double sum = 0.0;
    for (const auto& r : representatives)
        sum += cost_per_capita(r.national_social_cost, r.population);
    return sum / static_cast<double>(representatives.size());
}

double cluster_total(double cost_per_capita_usd, const std::vector<RosterEntry>& members) {
    double pop = 0.0;
    for (const auto& m : members) {
        if (m.population <= 0.0)
            throw std::runtime_error("cluster_total: member population must be > 0 (" + m.iso3 + ")");
        pop += m.population;
    }
    return cost_per_capita_usd * pop;
}

double gdp_share_pct(double total_cost, double annual_gdp, int horizon_years) {
    if (annual_gdp <= 0.0) throw std::runtime_error("gdp_share: GDP must be > 0");
    if (horizon_years < 1) throw std::runtime_error("gdp_share: horizon must be >= 1");
    return 100.0 * total_cost / (annual_gdp * static_cast<double>(horizon_years));
}

GlobalReport aggregate_global(const std::vector<RepresentativeResult>& representatives,
                              const std::vector<RosterEntry>& roster, int horizon_years) {
    if (representatives.empty()) throw std::runtime_error("aggregate_global: no representatives");

    std::map<int, std::vector<RepresentativeResult>> reps_by_cluster;
    for (const auto& r : representatives) reps_by_cluster[r.cluster_id].push_back(r);

    std::map<int, std::vector<RosterEntry>> members_by_cluster;
    for (const auto& m : roster) members_by_cluster[m.cluster_id].push_back(m);

    GlobalReport report;
    for (const auto& [cluster_id, reps] : reps_by_cluster) {
        auto members_it = members_by_cluster.find(cluster_id);
        if (members_it == members_by_cluster.end()) continue;
        ClusterAggregate agg;
        agg.cluster_id = cluster_id;
        agg.cost_per_capita = mean_cost_per_capita(reps);
        for (const auto& m : members_it->second) {
            agg.member_population += m.population;
            agg.member_gdp_annual += m.gdp_annual_usd;
        }
        agg.cluster_total = cluster_total(agg.cost_per_capita, members_it->second);
        report.total_usd += agg.cluster_total;
        report.gdp_annual_usd += agg.member_gdp_annual;
        report.clusters.push_back(agg);
    }
    if (report.gdp_annual_usd > 0.0)
        report.gdp_share_10yr_pct = gdp_share_pct(report.total_usd, report.gdp_annual_usd, horizon_years);

    // Income-group partition: every roster member of a covered cluster belongs
    // to exactly one group, so the group totals sum to the global total.
    std::map<IncomeGroup, IncomeGroupTotal> groups;
    for (IncomeGroup g : {IncomeGroup::Low, IncomeGroup::LowerMiddle, IncomeGroup::UpperMiddle})
        groups[g].group = g;
    for (const auto& agg : report.clusters) {
        for (const auto& m : members_by_cluster.at(agg.cluster_id)) {
            auto& g = groups[m.income_group];
            g.total_usd += agg.cost_per_capita * m.population;
            g.gdp_annual_usd += m.gdp_annual_usd;
        }
    }
    for (auto& [key, g] : groups) {
        if (g.gdp_annual_usd > 0.0)
            g.gdp_share_10yr_pct = gdp_share_pct(g.total_usd, g.gdp_annual_usd, horizon_years);
        report.income_groups.push_back(g);
    }
    return report;
}

std::vector<RosterEntry> load_roster_csv(const std::string& path) {
    csv::Table t = csv::read_file(path);
    int iso_col = t.require_column("iso3");
    int cluster_col = t.require_column("cluster_id");
    int pop_col = t.require_column("population");
    int gdp_col = t.require_column("gdp_annual_usd");
    int income_col = t.require_column("income_group");
    std::vector<RosterEntry> out;
    for (const auto& row : t.rows) {
        RosterEntry e;
        e.iso3 = row[static_cast<std::size_t>(iso_col)];
        e.cluster_id = static_cast<int>(csv::to_int(row[static_cast<std::size_t>(cluster_col)], path));
        e.population = csv::to_double(row[static_cast<std::size_t>(pop_col)], path);
        e.gdp_annual_usd = csv::to_double(row[static_cast<std::size_t>(gdp_col)], path);
        const std::string& income = row[static_cast<std::size_t>(income_col)];
        if (income.empty())
            throw std::runtime_error("roster: missing income group for " + e.iso3);
        e.income_group = income_group_from_string(income);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace uniband
