#pragma once

#include <map>
#include <string>
#include <vector>

#include "uniband/country_data.hpp"

namespace uniband {

struct Point {
    double x_km = 0.0;
    double y_km = 0.0;
};

struct Settlement {
    int id = 0;
    Point centroid;
    double population = 0.0;
    double peak_density = 0.0;  // densest member cell, people/km2
    SettlementClass settlement_class = SettlementClass::Rural;
    bool connected = false;
};

struct FiberSegment {
    Point a;
    Point b;
    double length_m = 0.0;
    SettlementClass settlement_class = SettlementClass::Rural;
};

struct FiberPlan {
    std::vector<FiberSegment> existing_edges;
    std::vector<FiberSegment> new_edges;
    std::vector<int> new_node_ids;  // settlements that gained a connection
    double total_new_length_m = 0.0;
};

double point_segment_distance_km(const Point& p, const Point& a, const Point& b);

// 4-connected components of cells meeting the density threshold; components
// below the settlement size are dropped. Centroids are population-weighted.
std::vector<Settlement> extract_settlements(const PopulationGrid& grid, double density_threshold,
                                            double settlement_threshold,
                                            const SettlementThresholds& class_thresholds = {});

void mark_connected(std::vector<Settlement>& settlements,
                    const std::vector<FiberSegment>& existing_edges, double buffer_m);

// Euclidean MST over unconnected settlements plus the existing network
// collapsed to a zero-cost super-node (attachment points and already
// connected settlements).
FiberPlan design_regional_fiber(const std::vector<Settlement>& settlements,
                                const std::vector<Point>& attachment_points);

struct FiberPrices {
    double urban_usd_m = 25.0;
    double suburban_usd_m = 15.0;
    double rural_usd_m = 5.0;

    double per_meter(SettlementClass c) const {
        switch (c) {
            case SettlementClass::Urban: return urban_usd_m;
            case SettlementClass::Suburban: return suburban_usd_m;
            case SettlementClass::Rural: return rural_usd_m;
        }
        return rural_usd_m;
    }
};

double fiber_build_cost(const FiberPlan& plan, const FiberPrices& prices);
double fiber_build_cost_flat(const FiberPlan& plan, double usd_per_meter);

std::vector<FiberSegment> load_fiber_segments_json(const std::string& path);
std::string fiber_plan_to_json(const FiberPlan& plan);

}  // namespace uniband
