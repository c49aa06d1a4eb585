#pragma once

#include <map>
#include <string>
#include <vector>

#include "portrisk/ports.hpp"

namespace portrisk {

// Per-port climate summary. Layout per variable (variables in
// lexicographic order): mean, amplitude, phase, variance, min, max.
inline constexpr std::size_t kFeaturesPerVariable = 6;

struct FeatureVector {
    std::string port_id;
    std::vector<double> values;
};

// Column names for the feature CSV artifact ("sst.mean", "sst.amplitude", ...).
std::vector<std::string> feature_layout(const std::vector<std::string>& variables);

// Shift a monthly series so both hemispheres share a seasonal anchor:
// delta = 6 for southern-hemisphere ports (latitude < 0), else 0.
MonthlySeries align_phase(const MonthlySeries& series, double latitude);
int phase_shift_for(double latitude);

// Features from aligned series. Seasonal amplitude/phase come from the
// first harmonic of the 12-point DFT with the convention
//   x(t) ~ mean + amplitude * cos(2*pi*t/12 - phase),  phase in [0, 2*pi).
// A vanishing harmonic gets amplitude 0 and phase 0.
FeatureVector extract_features(const std::string& port_id,
                               const std::map<std::string, MonthlySeries>& aligned);

// align_phase + extract_features over a port record.
FeatureVector aligned_features(const PortRecord& port);

// Frozen per-dimension affine transform. Dimensions with zero spread get
// scale 1, which maps the (constant) training values to exactly zero.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> scales;

    std::vector<double> apply(const std::vector<double>& values) const;
};

// Population mean/std per dimension over the port set.
std::pair<std::vector<FeatureVector>, Standardizer>
standardize(const std::vector<FeatureVector>& features);

// Euclidean distance; throws DimensionError on length mismatch.
double env_distance(const std::vector<double>& a, const std::vector<double>& b);

// ---- dataset ingestion (CSV) ----
// ports CSV:   port_id,name,latitude,longitude,capacity
// climate CSV: port_id,variable,month,value   (month in 0..11)
std::vector<PortRecord> read_ports_csv(const std::string& path);

// Fills `ports[*].series` from the climate file. Every port must end up
// with the same variable set and all 12 months per variable.
void read_climate_csv(const std::string& path, std::vector<PortRecord>& ports);

// Variable names (lexicographic) shared by all ports; validates agreement.
std::vector<std::string> dataset_variables(const std::vector<PortRecord>& ports);

}  // namespace portrisk
