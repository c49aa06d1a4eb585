#include "portrisk/mobility.hpp"

#include <algorithm>
#include <charconv>

#include "portrisk/csv.hpp"
#include "portrisk/errors.hpp"

namespace portrisk {

std::vector<MobilitySnapshot> build_snapshots(
    const std::vector<Voyage>& voyages, const PortRegistry& ports,
    std::optional<std::pair<int, int>> month_range) {
    int lo, hi;
    if (month_range) {
        lo = month_range->first;
        hi = month_range->second;
        if (lo > hi) throw ConfigError("month range is reversed");
    } else {
        if (voyages.empty()) return {};
        lo = hi = voyages[0].month_index;
        for (const auto& v : voyages) {
            lo = std::min(lo, v.month_index);
            hi = std::max(hi, v.month_index);
        }
    }

    const auto order = ports.port_order();
    std::vector<MobilitySnapshot> snaps(static_cast<std::size_t>(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) {
        snaps[static_cast<std::size_t>(m - lo)].month_index = m;
        snaps[static_cast<std::size_t>(m - lo)].port_order = order;
    }

    for (const auto& v : voyages) {
        const int i = static_cast<int>(ports.index_of(v.origin));
        const int j = static_cast<int>(ports.index_of(v.destination));
        if (i == j) throw DataIntegrityError("self-loop voyage at " + v.origin);
        if (v.month_index < lo || v.month_index > hi)
            throw RangeError("voyage month " + std::to_string(v.month_index) +
                             " outside snapshot range");
        snaps[static_cast<std::size_t>(v.month_index - lo)].weights[{i, j}] += 1;
    }
    return snaps;
}

EdgeHistory edge_history(const std::vector<MobilitySnapshot>& snapshots,
                         std::pair<int, int> edge, int t, int lag_depth,
                         int recency_horizon) {
    if (snapshots.empty()) throw EmptyDatasetError("edge_history: no snapshots");
    if (lag_depth < 1) throw DomainError("edge_history: lag depth must be >= 1");
    if (recency_horizon < 0) throw DomainError("edge_history: negative horizon");

    const int first = snapshots.front().month_index;
    const int last = snapshots.back().month_index;
    if (t < first || t > last)
        throw RangeError("month " + std::to_string(t) + " outside snapshot range " +
                         std::to_string(first) + ".." + std::to_string(last));

    auto weight_at = [&](int month) -> std::int64_t {
        if (month < first || month > last) return 0;
        return snapshots[static_cast<std::size_t>(month - first)].weight(edge.first, edge.second);
    };

    EdgeHistory h;
    h.edge = edge;
    h.lags.reserve(static_cast<std::size_t>(lag_depth));
    for (int k = 0; k < lag_depth; ++k) h.lags.push_back(weight_at(t - k));

    h.recency = recency_horizon;
    for (int back = 0; back <= recency_horizon; ++back) {
        if (t - back < first) break;  // months before range count as unseen
        if (weight_at(t - back) > 0) {
            h.recency = back;
            break;
        }
    }
    return h;
}

void write_snapshots_csv(const std::string& path,
                         const std::vector<MobilitySnapshot>& snapshots,
                         const std::vector<std::string>& comments) {
    std::vector<std::string> all_comments = comments;
    if (!snapshots.empty())
        all_comments.push_back("month_range=" + std::to_string(snapshots.front().month_index) +
                               "," + std::to_string(snapshots.back().month_index));
    CsvWriter w(path, {"month_index", "origin", "destination", "weight"}, all_comments);
    for (const auto& s : snapshots) {
        for (const auto& [edge, weight] : s.weights) {
            w.row({std::to_string(s.month_index),
                   s.port_order[static_cast<std::size_t>(edge.first)],
                   s.port_order[static_cast<std::size_t>(edge.second)],
                   std::to_string(weight)});
        }
    }
    w.finish();
}

std::vector<MobilitySnapshot> read_snapshots_csv(const std::string& path,
                                                 const PortRegistry& ports) {
    const std::string text = read_file(path);

    // recover the materialized range from the header comment
    std::optional<std::pair<int, int>> range;
    std::size_t pos = 0;
    while (pos < text.size() && text[pos] == '#') {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        const std::string key = "month_range=";
        const std::size_t at = line.find(key);
        if (at != std::string::npos) {
            const std::string span = line.substr(at + key.size());
            const std::size_t comma = span.find(',');
            if (comma != std::string::npos) {
                try {
                    range = {std::stoi(span.substr(0, comma)), std::stoi(span.substr(comma + 1))};
                } catch (const std::exception&) {
                    throw ParseError(path + ": bad month_range comment");
                }
            }
        }
        pos = eol + 1;
    }

    const CsvTable t = parse_csv(text, path);
    const std::size_t c_m = t.col("month_index");
    const std::size_t c_o = t.col("origin");
    const std::size_t c_d = t.col("destination");
    const std::size_t c_w = t.col("weight");

    int lo = 0, hi = -1;
    if (range) {
        lo = range->first;
        hi = range->second;
    } else {
        bool first = true;
        for (const auto& r : t.rows) {
            const int m = std::stoi(r[c_m]);
            lo = first ? m : std::min(lo, m);
            hi = first ? m : std::max(hi, m);
            first = false;
        }
        if (first) return {};
    }

    const auto order = ports.port_order();
    std::vector<MobilitySnapshot> snaps(static_cast<std::size_t>(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) {
        snaps[static_cast<std::size_t>(m - lo)].month_index = m;
        snaps[static_cast<std::size_t>(m - lo)].port_order = order;
    }
    for (const auto& r : t.rows) {
        const int m = std::stoi(r[c_m]);
        if (m < lo || m > hi) throw RangeError(path + ": row outside declared month range");
        const int i = static_cast<int>(ports.index_of(r[c_o]));
        const int j = static_cast<int>(ports.index_of(r[c_d]));
        const std::int64_t w = std::stoll(r[c_w]);
        if (w < 0) throw ParseError(path + ": negative weight");
        if (w > 0) snaps[static_cast<std::size_t>(m - lo)].weights[{i, j}] += w;
    }
    return snaps;
}

}  // namespace portrisk
