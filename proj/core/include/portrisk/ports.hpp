#pragma once

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "portrisk/errors.hpp"

namespace portrisk {

// One calendar year of monthly values, t in {0,...,11}.
using MonthlySeries = std::array<double, 12>;

struct PortRecord {
    std::string port_id;
    std::string name;
    double latitude = 0.0;    // [-90, 90]
    double longitude = 0.0;   // [-180, 180)
    double capacity = 1.0;    // relative units
    // variable name -> monthly values; std::map keeps variables in
    // lexicographic order, which fixes the feature layout.
    std::map<std::string, MonthlySeries> series;
};

// Port registry with stable order (input order) and id lookup.
class PortRegistry {
public:
    PortRegistry() = default;
    explicit PortRegistry(std::vector<PortRecord> ports) : ports_(std::move(ports)) {
        for (std::size_t i = 0; i < ports_.size(); ++i) {
            auto [it, inserted] = index_.emplace(ports_[i].port_id, i);
            (void)it;
            if (!inserted)
                throw DataIntegrityError("duplicate port_id: " + ports_[i].port_id);
        }
    }

    std::size_t size() const { return ports_.size(); }
    const PortRecord& at(std::size_t i) const { return ports_[i]; }
    const std::vector<PortRecord>& all() const { return ports_; }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw RegistryError("unknown port_id: " + id);
        return it->second;
    }

    std::vector<std::string> port_order() const {
        std::vector<std::string> ids;
        ids.reserve(ports_.size());
        for (const auto& p : ports_) ids.push_back(p.port_id);
        return ids;
    }

private:
    std::vector<PortRecord> ports_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace portrisk
