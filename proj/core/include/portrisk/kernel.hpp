#pragma once

#include <string>
#include <vector>

#include "portrisk/climate.hpp"
#include "portrisk/cluster.hpp"
#include "portrisk/matrix.hpp"

namespace portrisk {

struct KernelParams {
    double eta = 1.0;   // similarity exponent, > 0
    double beta = 0.5;  // within-cluster reinforcement, >= 0
    bool clamp = true;  // cap kernel entries at 1

    void validate() const;
};

struct SimilarityMatrix {
    std::vector<std::string> port_order;
    Matrix values;  // symmetric, unit diagonal, entries in (0,1]
};

// S = 1/(1+d); strictly decreasing in d. Throws DomainError for d < 0.
double similarity(double d);

SimilarityMatrix similarity_matrix(const std::vector<FeatureVector>& features);

// Elementwise scenario - base; port orders must match.
Matrix delta_similarity(const SimilarityMatrix& base, const SimilarityMatrix& scenario);

// kappa_ij = S_ij^eta * (1 + beta * [same non-noise cluster]), optionally
// clamped to <= 1. Noise ports share no class, not even with each other.
Matrix kernel(const SimilarityMatrix& s, const ClusterLabeling& labels,
              const KernelParams& params);

}  // namespace portrisk
