#include "portrisk/climate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "portrisk/csv.hpp"
#include "portrisk/errors.hpp"
#include "portrisk/parallel.hpp"

namespace portrisk {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

double parse_double_field(const std::string& s, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad numeric value for " + what + ": '" + s + "'");
    return v;
}

long parse_int_field(const std::string& s, const std::string& what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad integer value for " + what + ": '" + s + "'");
    return v;
}

}  // namespace

std::vector<std::string> feature_layout(const std::vector<std::string>& variables) {
    static const char* kNames[kFeaturesPerVariable] = {
        "mean", "amplitude", "phase", "variance", "min", "max"};
    std::vector<std::string> out;
    out.reserve(variables.size() * kFeaturesPerVariable);
    for (const auto& v : variables)
        for (const auto* n : kNames) out.push_back(v + "." + n);
    return out;
}

int phase_shift_for(double latitude) {
    if (latitude < -90.0 || latitude > 90.0)
        throw DomainError("latitude out of range: " + std::to_string(latitude));
    return latitude >= 0.0 ? 0 : 6;  // equator counts as northern
}

MonthlySeries align_phase(const MonthlySeries& series, double latitude) {
    const int delta = phase_shift_for(latitude);
    MonthlySeries out{};
    for (int t = 0; t < 12; ++t) out[static_cast<std::size_t>((t + delta) % 12)] = series[static_cast<std::size_t>(t)];
    return out;
}

FeatureVector extract_features(const std::string& port_id,
                               const std::map<std::string, MonthlySeries>& aligned) {
    if (aligned.empty())
        throw MalformedSeriesError("port " + port_id + " has no climate series");

    FeatureVector fv;
    fv.port_id = port_id;
    fv.values.reserve(aligned.size() * kFeaturesPerVariable);

    for (const auto& [variable, x] : aligned) {
        double sum = 0.0, a = 0.0, b = 0.0;
        double mn = x[0], mx = x[0];
        for (int t = 0; t < 12; ++t) {
            const double v = x[static_cast<std::size_t>(t)];
            sum += v;
            const double ang = kTwoPi * t / 12.0;
            a += v * std::cos(ang);
            b += v * std::sin(ang);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        const double mean = sum / 12.0;

        double var = 0.0;
        for (double v : x) var += (v - mean) * (v - mean);
        var /= 12.0;  // population variance

        double amplitude = 2.0 * std::hypot(a, b) / 12.0;
        double phase = 0.0;
        const double mag = std::max(std::abs(mn), std::abs(mx));
        if (amplitude < 1e-12 * (1.0 + mag)) {
            amplitude = 0.0;  // degenerate harmonic: phase fixed at 0
        } else {
            phase = std::atan2(b, a);
            if (phase < 0.0) phase += kTwoPi;
            if (phase >= kTwoPi) phase = 0.0;
        }

        fv.values.push_back(mean);
        fv.values.push_back(amplitude);
        fv.values.push_back(phase);
        fv.values.push_back(var);
        fv.values.push_back(mn);
        fv.values.push_back(mx);
    }
    return fv;
}

FeatureVector aligned_features(const PortRecord& port) {
    std::map<std::string, MonthlySeries> aligned;
    for (const auto& [variable, series] : port.series)
        aligned.emplace(variable, align_phase(series, port.latitude));
    return extract_features(port.port_id, aligned);
}

std::vector<double> Standardizer::apply(const std::vector<double>& values) const {
    if (values.size() != means.size())
        throw DimensionError("standardizer expects " + std::to_string(means.size()) +
                             " dims, got " + std::to_string(values.size()));
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = (values[i] - means[i]) / scales[i];
    return out;
}

std::pair<std::vector<FeatureVector>, Standardizer>
standardize(const std::vector<FeatureVector>& features) {
    if (features.empty()) throw EmptyDatasetError("standardize: no feature vectors");
    const std::size_t dims = features[0].values.size();
    for (const auto& f : features)
        if (f.values.size() != dims)
            throw DimensionError("inconsistent feature vector length for port " + f.port_id);

    const double n = static_cast<double>(features.size());
    Standardizer st;
    st.means.assign(dims, 0.0);
    st.scales.assign(dims, 1.0);

    for (const auto& f : features)
        for (std::size_t d = 0; d < dims; ++d) st.means[d] += f.values[d];
    for (std::size_t d = 0; d < dims; ++d) st.means[d] /= n;

    for (std::size_t d = 0; d < dims; ++d) {
        double ss = 0.0;
        for (const auto& f : features) {
            const double c = f.values[d] - st.means[d];
            ss += c * c;
        }
        const double sd = std::sqrt(ss / n);
        st.scales[d] = sd > 0.0 ? sd : 1.0;  // zero-spread fallback
    }

    std::vector<FeatureVector> out(features.size());
    parallel_for(features.size(), [&](std::size_t i) {
        out[i].port_id = features[i].port_id;
        out[i].values = st.apply(features[i].values);
    });
    return {std::move(out), std::move(st)};
}

double env_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw DimensionError("env_distance: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        ss += d * d;
    }
    return std::sqrt(ss);
}

std::vector<PortRecord> read_ports_csv(const std::string& path) {
    const CsvTable t = read_csv(path);
    const std::size_t c_id = t.col("port_id");
    const std::size_t c_name = t.col("name");
    const std::size_t c_lat = t.col("latitude");
    const std::size_t c_lon = t.col("longitude");
    const std::size_t c_cap = t.col("capacity");

    std::vector<PortRecord> ports;
    ports.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        PortRecord p;
        p.port_id = r[c_id];
        p.name = r[c_name];
        p.latitude = parse_double_field(r[c_lat], "latitude");
        p.longitude = parse_double_field(r[c_lon], "longitude");
        p.capacity = parse_double_field(r[c_cap], "capacity");
        if (p.port_id.empty()) throw ParseError(path + ": empty port_id");
        if (p.latitude < -90.0 || p.latitude > 90.0)
            throw ParseError(path + ": latitude out of range for " + p.port_id);
        if (p.longitude < -180.0 || p.longitude >= 180.0)
            throw ParseError(path + ": longitude out of range for " + p.port_id);
        if (p.capacity < 0.0)
            throw ParseError(path + ": negative capacity for " + p.port_id);
        ports.push_back(std::move(p));
    }
    if (ports.empty()) throw EmptyDatasetError(path + ": no ports");
    return ports;
}

void read_climate_csv(const std::string& path, std::vector<PortRecord>& ports) {
    const CsvTable t = read_csv(path);
    const std::size_t c_id = t.col("port_id");
    const std::size_t c_var = t.col("variable");
    const std::size_t c_month = t.col("month");
    const std::size_t c_val = t.col("value");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ports.size(); ++i) index[ports[i].port_id] = i;

    // (port, variable) -> per-month fill mask
    std::map<std::pair<std::string, std::string>, std::array<bool, 12>> seen;

    for (const auto& r : t.rows) {
        auto it = index.find(r[c_id]);
        if (it == index.end())
            throw RegistryError(path + ": climate row for unknown port '" + r[c_id] + "'");
        const long month = parse_int_field(r[c_month], "month");
        if (month < 0 || month > 11)
            throw MalformedSeriesError(path + ": month " + std::to_string(month) +
                                       " out of 0..11 for port " + r[c_id]);
        const double value = parse_double_field(r[c_val], "value");
        PortRecord& port = ports[it->second];
        auto& mask = seen[{r[c_id], r[c_var]}];
        if (mask[static_cast<std::size_t>(month)])
            throw MalformedSeriesError(path + ": duplicate month " + std::to_string(month) +
                                       " for " + r[c_id] + "/" + r[c_var]);
        mask[static_cast<std::size_t>(month)] = true;
        port.series[r[c_var]][static_cast<std::size_t>(month)] = value;
    }

    for (const auto& [key, mask] : seen)
        for (int m = 0; m < 12; ++m)
            if (!mask[static_cast<std::size_t>(m)])
                throw MalformedSeriesError(path + ": missing month " + std::to_string(m) +
                                           " for " + key.first + "/" + key.second);

    dataset_variables(ports);  // validates the shared variable set
}

std::vector<std::string> dataset_variables(const std::vector<PortRecord>& ports) {
    if (ports.empty()) throw EmptyDatasetError("no ports in dataset");
    std::vector<std::string> vars;
    for (const auto& [name, series] : ports[0].series) {
        (void)series;
        vars.push_back(name);
    }
    if (vars.empty())
        throw MalformedSeriesError("port " + ports[0].port_id + " has no climate series");
    for (const auto& p : ports) {
        if (p.series.size() != vars.size())
            throw MalformedSeriesError("variable set mismatch at port " + p.port_id);
        std::size_t i = 0;
        for (const auto& [name, series] : p.series) {
            (void)series;
            if (name != vars[i++])
                throw MalformedSeriesError("variable set mismatch at port " + p.port_id);
        }
    }
    return vars;
}

}  // namespace portrisk
