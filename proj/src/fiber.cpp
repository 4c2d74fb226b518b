#include "uniband/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <stdexcept>

#include "json.hpp"

namespace uniband {

namespace {

double distance_km(const Point& a, const Point& b) { return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km); }

}  // namespace

double point_segment_distance_km(const Point& p, const Point& a, const Point& b) {
    double vx = b.x_km - a.x_km;
    double vy = b.y_km - a.y_km;
    double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return distance_km(p, a);
    double t = ((p.x_km - a.x_km) * vx + (p.y_km - a.y_km) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    Point proj{a.x_km + t * vx, a.y_km + t * vy};
    return distance_km(p, proj);
}

std::vector<Settlement> extract_settlements(const PopulationGrid& grid, double density_threshold,
                                            double settlement_threshold,
                                            const SettlementThresholds& class_thresholds) {
    if (density_threshold <= 0.0 || settlement_threshold <= 0.0)
        throw std::runtime_error("extract_settlements: thresholds must be > 0");

    const double cell_area = grid.cell_area_km2();
    auto dense = [&](int row, int col) {
        if (grid.is_nodata(row, col)) return false;
        return grid.at(row, col) / cell_area >= density_threshold;
    };

    std::vector<int> component(static_cast<std::size_t>(grid.nrows) * grid.ncols, -1);
    std::vector<Settlement> settlements;
    for (int row = 0; row < grid.nrows; ++row) {
        for (int col = 0; col < grid.ncols; ++col) {
            std::size_t idx = static_cast<std::size_t>(row) * grid.ncols + col;
            if (component[idx] >= 0 || !dense(row, col)) continue;
            // Flood fill one 4-connected component.
            int comp_id = static_cast<int>(settlements.size());
            Settlement s;
            s.id = comp_id;
            double wx = 0.0, wy = 0.0;
            std::queue<std::pair<int, int>> frontier;
            frontier.push({row, col});
            component[idx] = comp_id;
            while (!frontier.empty()) {
                auto [r, c] = frontier.front();
                frontier.pop();
                double pop = grid.at(r, c);
                s.population += pop;
                s.peak_density = std::max(s.peak_density, pop / cell_area);
                wx += pop * grid.cell_x(c);
                wy += pop * grid.cell_y(r);
                const int dr[4] = {-1, 1, 0, 0};
                const int dc[4] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    int nr = r + dr[k], nc = c + dc[k];
                    if (nr < 0 || nr >= grid.nrows || nc < 0 || nc >= grid.ncols) continue;
                    std::size_t nidx = static_cast<std::size_t>(nr) * grid.ncols + nc;
                    if (component[nidx] >= 0 || !dense(nr, nc)) continue;
                    component[nidx] = comp_id;
                    frontier.push({nr, nc});
                }
            }
            if (s.population >= settlement_threshold) {
                s.centroid = {wx / s.population, wy / s.population};
                s.id = static_cast<int>(settlements.size());
                s.settlement_class = classify_settlement(s.peak_density, class_thresholds);
                settlements.push_back(s);
            }
        }
    }
    return settlements;
}

void mark_connected(std::vector<Settlement>& settlements,
                    const std::vector<FiberSegment>& existing_edges, double buffer_m) {
    if (buffer_m < 0.0) throw std::runtime_error("mark_connected: buffer must be >= 0");
    const double buffer_km = buffer_m / 1000.0;
    for (auto& s : settlements) {
        s.connected = false;
        for (const auto& e : existing_edges) {
            if (point_segment_distance_km(s.centroid, e.a, e.b) <= buffer_km) {
                s.connected = true;
                break;
            }
        }
    }
}

FiberPlan design_regional_fiber(const std::vector<Settlement>& settlements,
                                const std::vector<Point>& attachment_points) {
    FiberPlan plan;
    if (settlements.empty()) throw std::runtime_error("design_regional_fiber: no settlements");

    std::vector<const Settlement*> pending;
    std::vector<Point> anchor_points = attachment_points;  // the existing-network super-node
    std::vector<const Settlement*> anchored;
    for (const auto& s : settlements) {
        if (s.connected) {
            anchor_points.push_back(s.centroid);
            anchored.push_back(&s);
        } else {
            pending.push_back(&s);
        }
    }
    if (pending.empty()) return plan;
    if (anchor_points.empty())
        throw std::runtime_error("design_regional_fiber: unconnected settlements but no attachment point");

    // Prim over nodes {super-node} + pending settlements. The super-node's
    // distance to a settlement is the nearest anchor point.
    const std::size_t n = pending.size() + 1;
    std::vector<bool> in_tree(n, false);
    std::vector<double> best_dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> best_from(n, 0);
    std::vector<Point> best_anchor(n);  // for edges leaving the super-node

    auto node_point = [&](std::size_t i) { return pending[i - 1]->centroid; };

    in_tree[0] = true;
    for (std::size_t i = 1; i < n; ++i) {
        Point p = node_point(i);
        for (const auto& a : anchor_points) {
            double d = distance_km(p, a);
            if (d < best_dist[i]) {
                best_dist[i] = d;
                best_from[i] = 0;
                best_anchor[i] = a;
            }
        }
    }

    struct Link {
        const Settlement* settlement;
        const Settlement* from_settlement;  // null when leaving the super-node
        Point from;
        double length_km;
    };
    std::vector<Link> links;
    for (std::size_t added = 1; added < n; ++added) {
        std::size_t pick = 0;
        double pick_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < n; ++i) {
            if (!in_tree[i] && best_dist[i] < pick_dist) {
                pick_dist = best_dist[i];
                pick = i;
            }
        }
        if (pick == 0) break;
        in_tree[pick] = true;
        const Settlement* from_settlement =
            best_from[pick] == 0 ? nullptr : pending[static_cast<std::size_t>(best_from[pick]) - 1];
        Point from = best_from[pick] == 0 ? best_anchor[pick] : from_settlement->centroid;
        links.push_back({pending[pick - 1], from_settlement, from, pick_dist});
        // Relax remaining nodes through the newly added settlement.
        Point added_point = node_point(pick);
        for (std::size_t i = 1; i < n; ++i) {
            if (in_tree[i]) continue;
            double d = distance_km(node_point(i), added_point);
            if (d < best_dist[i]) {
                best_dist[i] = d;
                best_from[i] = static_cast<int>(pick);
            }
        }
    }

    for (const auto& link : links) {
        FiberSegment seg;
        seg.a = link.from;
        seg.b = link.settlement->centroid;
        seg.length_m = link.length_km * 1000.0;
        // Dominant class: the denser endpoint; super-node edges take the
        // settlement end's class.
        seg.settlement_class =
            (link.from_settlement && link.from_settlement->peak_density > link.settlement->peak_density)
                ? link.from_settlement->settlement_class
                : link.settlement->settlement_class;
        plan.new_edges.push_back(seg);
        plan.new_node_ids.push_back(link.settlement->id);
    }
    // Sorted-ascending summation keeps the total independent of build order.
    std::vector<double> lengths;
    for (const auto& e : plan.new_edges) lengths.push_back(e.length_m);
    std::sort(lengths.begin(), lengths.end());
    for (double l : lengths) plan.total_new_length_m += l;
    return plan;
}

double fiber_build_cost(const FiberPlan& plan, const FiberPrices& prices) {
    double cost = 0.0;
    for (const auto& e : plan.new_edges) cost += e.length_m * prices.per_meter(e.settlement_class);
    return cost;
}

double fiber_build_cost_flat(const FiberPlan& plan, double usd_per_meter) {
    if (usd_per_meter < 0.0) throw std::runtime_error("fiber_build_cost: price must be >= 0");
    double cost = 0.0;
    for (const auto& e : plan.new_edges) cost += e.length_m * usd_per_meter;
    return cost;
}

std::vector<FiberSegment> load_fiber_segments_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fiber: cannot open " + path);
    nlohmann::json j;
    in >> j;
    std::vector<FiberSegment> segments;
    for (const auto& e : j.at("segments")) {
        FiberSegment s;
        s.a = {e.at("x1").get<double>(), e.at("y1").get<double>()};
        s.b = {e.at("x2").get<double>(), e.at("y2").get<double>()};
        s.length_m = distance_km(s.a, s.b) * 1000.0;
        segments.push_back(s);
    }
    return segments;
}

std::string fiber_plan_to_json(const FiberPlan& plan) {
    nlohmann::ordered_json j;
    auto edges_to_json = [](const std::vector<FiberSegment>& edges) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& e : edges) {
            nlohmann::ordered_json o;
            o["x1"] = e.a.x_km;
            o["y1"] = e.a.y_km;
            o["x2"] = e.b.x_km;
            o["y2"] = e.b.y_km;
            o["length_m"] = e.length_m;
            arr.push_back(o);
        }
        return arr;
    };
    j["existing_edges"] = edges_to_json(plan.existing_edges);
    j["new_edges"] = edges_to_json(plan.new_edges);
    j["new_node_ids"] = plan.new_node_ids;
    j["total_new_length_m"] = plan.total_new_length_m;
    return j.dump(2) + "\n";
}

}  // namespace uniband
