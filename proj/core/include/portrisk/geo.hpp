#pragma once

#include <cmath>

namespace portrisk {

inline constexpr double kEarthRadiusKm = 6371.0088;  // IUGG mean radius

inline double deg2rad(double deg) { return deg * 3.14159265358979323846 / 180.0; }

// Great-circle distance in kilometres (haversine).
inline double haversine_km(double lat1, double lon1, double lat2, double lon2) {
    const double phi1 = deg2rad(lat1);
    const double phi2 = deg2rad(lat2);
    const double dphi = deg2rad(lat2 - lat1);
    const double dlam = deg2rad(lon2 - lon1);
    const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) *
                     std::sin(dlam / 2) * std::sin(dlam / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

}  // namespace portrisk
