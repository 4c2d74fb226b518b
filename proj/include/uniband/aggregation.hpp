#pragma once

#include <map>
#include <string>
#include <vector>

#include "uniband/country_data.hpp"

namespace uniband {

struct RosterEntry {
    std::string iso3;
    int cluster_id = 0;
    double population = 0.0;
    double gdp_annual_usd = 0.0;
    IncomeGroup income_group = IncomeGroup::Low;
};

struct RepresentativeResult {
    std::string iso3;
    int cluster_id = 0;
    double national_social_cost = 0.0;
    double population = 0.0;
};

struct ClusterAggregate {
    int cluster_id = 0;
    double cost_per_capita = 0.0;  // unweighted mean over representatives
    double member_population = 0.0;
    double member_gdp_annual = 0.0;
    double cluster_total = 0.0;
};

struct IncomeGroupTotal {
    IncomeGroup group = IncomeGroup::Low;
    double total_usd = 0.0;
    double gdp_annual_usd = 0.0;
    double gdp_share_10yr_pct = 0.0;
};

struct GlobalReport {
    double total_usd = 0.0;
    double gdp_annual_usd = 0.0;
    double gdp_share_10yr_pct = 0.0;
    std::vector<ClusterAggregate> clusters;
    std::vector<IncomeGroupTotal> income_groups;
};

double cost_per_capita(double national_social_cost, double population);
double mean_cost_per_capita(const std::vector<RepresentativeResult>& representatives);
double cluster_total(double cost_per_capita_usd, const std::vector<RosterEntry>& members);
double gdp_share_pct(double total_cost, double annual_gdp, int horizon_years);

GlobalReport aggregate_global(const std::vector<RepresentativeResult>& representatives,
                              const std::vector<RosterEntry>& roster, int horizon_years);

std::vector<RosterEntry> load_roster_csv(const std::string& path);

}  // namespace uniband
