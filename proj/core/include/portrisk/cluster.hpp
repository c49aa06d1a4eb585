#pragma once

#include <map>
#include <string>
#include <vector>

#include "portrisk/climate.hpp"
#include "portrisk/matrix.hpp"

namespace portrisk {

struct ClusterParams {
    int min_cluster_size = 5;  // >= 2
    int min_samples = 5;       // >= 1; > n degenerates to all-noise

    void validate() const;
};

struct ClusterLabeling {
    std::vector<std::string> port_order;
    std::map<std::string, int> labels;   // port_id -> 1..K, -1 = noise
    std::map<int, double> stabilities;   // cluster id -> excess-of-mass stability

    int label_of(const std::string& port_id) const;
    int cluster_count() const { return static_cast<int>(stabilities.size()); }
};

// Distance from each point to its k-th nearest neighbour (self excluded);
// k beyond the neighbour count clamps to the farthest neighbour.
std::vector<double> core_distances(const std::vector<std::vector<double>>& points, int k);

inline double mutual_reachability(double d_ij, double core_i, double core_j) {
    double m = d_ij;
    if (core_i > m) m = core_i;
    if (core_j > m) m = core_j;
    return m;
}

Matrix pairwise_distances(const std::vector<std::vector<double>>& points);

struct MstEdge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

// Exact MST over a dense symmetric distance matrix (Prim, O(n^2)).
std::vector<MstEdge> minimum_spanning_tree(const Matrix& dist);

// HDBSCAN over standardized feature vectors: mutual-reachability MST,
// single-linkage hierarchy, condensed tree (min_cluster_size), and
// excess-of-mass cluster selection. Points outside every selected
// cluster are noise. Labels are numbered 1..K by order of first member
// appearance in the input.
ClusterLabeling cluster(const std::vector<FeatureVector>& features,
                        const ClusterParams& params);

}  // namespace portrisk
