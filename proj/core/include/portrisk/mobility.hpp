#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "portrisk/ais.hpp"
#include "portrisk/ports.hpp"

namespace portrisk {

// Directed weighted port graph for one month; weights are voyage counts.
struct MobilitySnapshot {
    int month_index = 0;
    std::vector<std::string> port_order;
    std::map<std::pair<int, int>, std::int64_t> weights;  // (origin, destination) index pair

    std::int64_t weight(int i, int j) const {
        auto it = weights.find({i, j});
        return it == weights.end() ? 0 : it->second;
    }
    std::int64_t total() const {
        std::int64_t s = 0;
        for (const auto& [edge, w] : weights) {
            (void)edge;
            s += w;
        }
        return s;
    }
};

// Buckets voyages by arrival month. Months inside the range with no
// voyages are materialized as empty snapshots (continuous timeline).
// Without an explicit range the span of the voyage arrivals is used.
std::vector<MobilitySnapshot> build_snapshots(
    const std::vector<Voyage>& voyages, const PortRegistry& ports,
    std::optional<std::pair<int, int>> month_range = std::nullopt);

struct EdgeHistory {
    std::pair<int, int> edge{};
    std::vector<std::int64_t> lags;  // [w_t, w_{t-1}, ..., w_{t-L+1}], pre-range months are 0
    int recency = 0;                 // months since last nonzero weight, capped
};

inline constexpr int kDefaultRecencyHorizon = 24;

EdgeHistory edge_history(const std::vector<MobilitySnapshot>& snapshots,
                         std::pair<int, int> edge, int t, int lag_depth,
                         int recency_horizon = kDefaultRecencyHorizon);

void write_snapshots_csv(const std::string& path,
                         const std::vector<MobilitySnapshot>& snapshots,
                         const std::vector<std::string>& comments = {});
std::vector<MobilitySnapshot> read_snapshots_csv(const std::string& path,
                                                 const PortRegistry& ports);

}  // namespace portrisk
