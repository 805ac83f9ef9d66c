#pragma once

#include <numbers>

#include "pharos/errors.hpp"

namespace pharos {

/// Mean Earth radius of the spherical model, metres.
inline constexpr double kEarthRadiusM = 6371000.0;

/// North-south extent of one degree of latitude on the model sphere, metres.
inline constexpr double kMetresPerDegree =
    std::numbers::pi * kEarthRadiusM / 180.0;

/// WGS84-style geographic coordinate on the model sphere, degrees.
///
/// Construction validates latitude and normalizes longitude into (-180, 180],
/// so two representations of the antimeridian compare equal. Accuracy of the
/// spherical operations degrades within ~5 degrees of the poles; callers that
/// need guarantees should stay below |lat| = 85.
struct GeoPoint {
  GeoPoint() = default;
  GeoPoint(double lat_deg, double lon_deg);

  double lat = 0.0;
  double lon = 0.0;
};

/// East/north displacement in a local tangent plane, metres.
struct EnuOffset {
  double east_m = 0.0;
  double north_m = 0.0;
};

/// Wraps a compass bearing into [0, 360).
double normalize_bearing(double degrees);

/// Wraps a relative angle into (-180, 180]; +180 stays +180.
/// Idempotent, and exact for integer-degree inputs shifted by multiples of 360.
double normalize_relative(double degrees);

/// Great-circle distance between two points, metres. Symmetric, total.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

/// Compass bearing of the great circle from `from` towards `to` at `from`,
/// degrees in [0, 360). Throws CoincidentPointsError when the points are
/// closer than 1e-12 degrees on both axes.
double initial_bearing(const GeoPoint& from, const GeoPoint& to);

/// Point reached by travelling `distance_m` metres from `start` along the
/// great circle with the given initial bearing. distance_m must be >= 0.
GeoPoint destination_point(const GeoPoint& start, double bearing_deg,
                           double distance_m);

/// Equirectangular projection of `p` into the tangent plane at `origin`.
/// Valid for separations up to 50 km; beyond that throws
/// OutOfProjectionRangeError. Longitude differences wrap across the
/// antimeridian before projecting.
EnuOffset to_local_enu(const GeoPoint& origin, const GeoPoint& p);

/// Inverse of to_local_enu.
GeoPoint from_local_enu(const GeoPoint& origin, const EnuOffset& offset);

}  // namespace pharos
