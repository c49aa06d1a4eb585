#include "portrisk/kernel.hpp"

#include <cmath>

#include "portrisk/errors.hpp"
#include "portrisk/parallel.hpp"

namespace portrisk {

void KernelParams::validate() const {
    if (!(eta > 0.0)) throw ConfigError("kernel eta must be > 0");
    if (!(beta >= 0.0)) throw ConfigError("kernel beta must be >= 0");
}

double similarity(double d) {
    if (d < 0.0) throw DomainError("similarity: negative distance");
    return 1.0 / (1.0 + d);
}

SimilarityMatrix similarity_matrix(const std::vector<FeatureVector>& features) {
    if (features.empty()) throw EmptyDatasetError("similarity_matrix: no ports");
    const std::size_t n = features.size();
    SimilarityMatrix sm;
    sm.port_order.reserve(n);
    for (const auto& f : features) sm.port_order.push_back(f.port_id);
    sm.values = Matrix(n, n, 1.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = similarity(env_distance(features[i].values, features[j].values));
            sm.values(i, j) = s;
            sm.values(j, i) = s;
        }
    });
    return sm;
}

Matrix delta_similarity(const SimilarityMatrix& base, const SimilarityMatrix& scenario) {
    if (base.port_order != scenario.port_order)
        throw AlignmentError("delta_similarity: port order mismatch");
    const std::size_t n = base.port_order.size();
    Matrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = scenario.values(i, j) - base.values(i, j);
    return out;
}

Matrix kernel(const SimilarityMatrix& s, const ClusterLabeling& labels,
              const KernelParams& params) {
    params.validate();
    const std::size_t n = s.port_order.size();
    std::vector<int> lab(n);
    for (std::size_t i = 0; i < n; ++i) lab[i] = labels.label_of(s.port_order[i]);

    Matrix k(n, n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool same_class = lab[i] == lab[j] && lab[i] != -1;
            double v = std::pow(s.values(i, j), params.eta) *
                       (1.0 + (same_class ? params.beta : 0.0));
            if (params.clamp && v > 1.0) v = 1.0;
            k(i, j) = v;
        }
    });
    return k;
}

}  // namespace portrisk
