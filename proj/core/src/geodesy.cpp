#include "pharos/geodesy.hpp"

#include <algorithm>
#include <cmath>

namespace pharos {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kProjectionLimitM = 50000.0;

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg) : lat(lat_deg), lon(lon_deg) {
  if (!(lat >= -90.0 && lat <= 90.0)) {
    throw InvalidParamsError("latitude " + std::to_string(lat_deg) +
                             " outside [-90, 90]");
  }
  lon = normalize_relative(lon);
}

double normalize_bearing(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod can return exactly 360 - eps rounding up; clamp the representable edge
  if (r == 360.0) r = 0.0;
  return r;
}

double normalize_relative(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r <= -180.0) {
    r += 360.0;
  } else if (r > 180.0) {
    r -= 360.0;
  }
  return r;
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double initial_bearing(const GeoPoint& from, const GeoPoint& to) {
  const double dlat = std::abs(to.lat - from.lat);
  const double dlon = std::abs(normalize_relative(to.lon - from.lon));
  if (dlat < 1e-12 && dlon < 1e-12) {
    throw CoincidentPointsError("bearing undefined between coincident points");
  }
  const double phi1 = from.lat * kDegToRad;
  const double phi2 = to.lat * kDegToRad;
  const double dlambda = (to.lon - from.lon) * kDegToRad;
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) -
                   std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  double bearing = std::atan2(y, x) * kRadToDeg;
  if (bearing < 0.0) bearing += 360.0;
  if (bearing == 360.0) bearing = 0.0;
  return bearing;
}

GeoPoint destination_point(const GeoPoint& start, double bearing_deg,
                           double distance_m) {
  if (!(distance_m >= 0.0)) {
    throw InvalidParamsError("destination_point distance must be >= 0");
  }
  const double phi1 = start.lat * kDegToRad;
  const double lambda1 = start.lon * kDegToRad;
  const double theta = bearing_deg * kDegToRad;
  const double delta = distance_m / kEarthRadiusM;
  const double sin_phi2 = std::sin(phi1) * std::cos(delta) +
                          std::cos(phi1) * std::sin(delta) * std::cos(theta);
  const double phi2 = std::asin(std::clamp(sin_phi2, -1.0, 1.0));
  const double lambda2 =
      lambda1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                           std::cos(delta) - std::sin(phi1) * sin_phi2);
  return GeoPoint(phi2 * kRadToDeg, lambda2 * kRadToDeg);
}

EnuOffset to_local_enu(const GeoPoint& origin, const GeoPoint& p) {
  if (haversine_distance(origin, p) > kProjectionLimitM) {
    throw OutOfProjectionRangeError(
        "local tangent-plane projection is only valid within 50 km");
  }
  const double dlon = normalize_relative(p.lon - origin.lon);
  return EnuOffset{
      .east_m = dlon * kDegToRad * kEarthRadiusM *
                std::cos(origin.lat * kDegToRad),
      .north_m = (p.lat - origin.lat) * kDegToRad * kEarthRadiusM,
  };
}

GeoPoint from_local_enu(const GeoPoint& origin, const EnuOffset& offset) {
  const double lat = origin.lat + offset.north_m / kEarthRadiusM * kRadToDeg;
  const double lon = origin.lon + offset.east_m / (kEarthRadiusM * std::cos(
                                      origin.lat * kDegToRad)) * kRadToDeg;
  return GeoPoint(lat, lon);
}

}  // namespace pharos
