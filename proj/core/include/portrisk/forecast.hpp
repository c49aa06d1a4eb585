#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "portrisk/climate.hpp"
#include "portrisk/cluster.hpp"
#include "portrisk/kernel.hpp"
#include "portrisk/mobility.hpp"

namespace portrisk {

// Exogenous covariates: port_id,month_index,name,value
struct ExoTable {
    std::vector<std::string> names;  // lexicographic
    std::map<std::tuple<std::string, int, std::string>, double> values;

    std::optional<double> lookup(const std::string& port_id, int month,
                                 const std::string& name) const;
};

ExoTable read_exo_csv(const std::string& path);

struct FeatureLayout {
    std::vector<std::string> columns;
    std::vector<char> binary;  // flags stay {0,1}: excluded from standardization

    std::size_t size() const { return columns.size(); }
};

// One (ordered pair, month) sample: features z_ij_t and the future link
// label y_ij_{t+h} = [w_ij_{t+h} > tau].
struct EdgeSample {
    std::pair<int, int> edge{};
    int month = 0;  // t
    std::vector<double> features;
    int label = 0;
};

struct DatasetParams {
    int lag_depth = 3;            // L
    int horizon = 1;              // months ahead
    std::int64_t tau = 0;         // link threshold on voyage count
    double negative_ratio = 3.0;  // never-active pairs sampled per active pair
    std::uint64_t seed = 42;
    int recency_horizon = kDefaultRecencyHorizon;

    void validate() const;
};

struct EdgeDataset {
    FeatureLayout layout;
    std::vector<std::string> port_order;
    std::vector<EdgeSample> samples;  // months ascending, pairs ascending
    int horizon = 1;
    std::int64_t tau = 0;
};

// Pair universe: every pair active at least once in the window, plus a
// seeded deterministic sample of never-active pairs. Features are raw
// here; standardization happens against the training split.
EdgeDataset assemble_dataset(const std::vector<MobilitySnapshot>& snapshots,
                             const SimilarityMatrix& similarity,
                             const Matrix* delta_s,
                             const ClusterLabeling& labels,
                             const PortRegistry& ports,
                             const ExoTable* exo,
                             const DatasetParams& params);

// Features for one ordered pair at month t (same layout as the dataset).
// Missing covariates are NaN until standardization imputes them.
std::vector<double> pair_features(const std::vector<MobilitySnapshot>& snapshots,
                                  const SimilarityMatrix& similarity,
                                  const Matrix* delta_s,
                                  const ClusterLabeling& labels,
                                  const PortRegistry& ports,
                                  const ExoTable* exo,
                                  const DatasetParams& params,
                                  std::pair<int, int> edge, int t);

FeatureLayout dataset_layout(const std::vector<std::string>& variables_unused,
                             const ClusterLabeling& labels, int lag_depth,
                             const ExoTable* exo);

struct SplitDataset {
    EdgeDataset train;  // standardized
    EdgeDataset eval;   // standardized with training statistics
    Standardizer standardizer;
};

// Chronological discipline: training samples satisfy t + horizon <
// eval_start_month, evaluation samples satisfy t >= eval_start_month;
// the in-between band is discarded. No leakage by construction.
SplitDataset split_chronological(const EdgeDataset& dataset, int eval_start_month);

// Standardize continuous columns with the given (or freshly computed)
// statistics; NaNs become 0 afterwards.
Standardizer fit_feature_standardizer(const std::vector<EdgeSample>& samples,
                                      const FeatureLayout& layout);
void apply_feature_standardizer(std::vector<EdgeSample>& samples,
                                const FeatureLayout& layout, const Standardizer& st);

// ---- models ----

struct TrainMeta {
    int epochs = 0;
    double learning_rate = 0.0;
    double final_loss = 0.0;
    std::uint64_t seed = 0;
};

struct LogisticModel {
    std::vector<double> weights;  // feature weights + intercept (last)
    double l2 = 0.0;
    TrainMeta meta;

    std::size_t feature_dims() const { return weights.empty() ? 0 : weights.size() - 1; }
};

// Mean log-loss + (l2/2)*|w|^2 (intercept unpenalized) and its gradient,
// accumulated by a fixed pairwise reduction tree so results are bitwise
// reproducible at any thread count.
std::pair<double, std::vector<double>> logistic_loss_grad(
    const std::vector<EdgeSample>& samples, const std::vector<double>& weights, double l2);

LogisticModel train_logistic(const std::vector<EdgeSample>& samples, double l2,
                             double learning_rate, int epochs, std::uint64_t seed);

// sigmoid(w.x + b), clipped to [1e-9, 1-1e-9]
double predict(const LogisticModel& model, const std::vector<double>& features);

struct EnsembleWeights {
    std::vector<double> alphas;

    void validate() const;  // alphas >= 0, sum to 1 within 1e-9
};

double ensemble(const std::vector<double>& predictions, const EnsembleWeights& weights);

struct Metrics {
    double log_loss = 0.0;
    double accuracy = 0.0;  // threshold 0.5
    double auc = 0.0;       // rank statistic, average ranks on ties
};

Metrics evaluate(const std::vector<double>& predictions, const std::vector<int>& labels);

// ---- persisted model bundle ----

struct ForecastBundle {
    LogisticModel model;
    FeatureLayout layout;
    Standardizer standardizer;
    DatasetParams params;
    int eval_start_month = 0;
};

void save_model_json(const std::string& path, const ForecastBundle& bundle);
ForecastBundle load_model_json(const std::string& path);

// Full prediction matrix Yhat for target month t + horizon: one clipped
// probability per ordered pair, zero diagonal.
Matrix prediction_matrix(const ForecastBundle& bundle,
                         const std::vector<MobilitySnapshot>& snapshots,
                         const SimilarityMatrix& similarity,
                         const Matrix* delta_s,
                         const ClusterLabeling& labels,
                         const PortRegistry& ports,
                         const ExoTable* exo,
                         int feature_month);

}  // namespace portrisk
