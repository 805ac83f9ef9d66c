#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pharos/errors.hpp"
#include "pharos/geodesy.hpp"

namespace pharos {

/// Heading-change classes. SharpLeft/SharpRight exist for callers that label
/// turns externally; classify_turn itself emits only the four-band table
/// (Straight / Soft / Left-Right / UTurn). Start and End mark route termini.
enum class TurnClass {
  Straight,
  SoftLeft,
  SoftRight,
  Left,
  Right,
  SharpLeft,
  SharpRight,
  UTurn,
  Start,
  End
};

/// snake_case name used in serialized output ("soft_left", "u_turn", ...).
const char* to_string(TurnClass c);

struct Route {
  std::vector<GeoPoint> waypoints;
  /// One entry per segment (waypoints - 1); nullopt = unnamed street.
  std::vector<std::optional<std::string>> streets;
};

struct TurningPoint {
  int index = 0;  // waypoint index within the route
  GeoPoint location;
  std::optional<double> incoming_heading;  // absent at Start
  std::optional<double> outgoing_heading;  // absent at End
  double turn_angle = 0.0;                 // outgoing - incoming, normalized; 0 at termini
  TurnClass turn_class = TurnClass::Straight;
};

/// Parses a route document. A leading '<' selects GPX 1.1 (exactly one rte or
/// trk; trkseg points concatenated); anything else is parsed as GeoJSON (a
/// Feature, FeatureCollection, or bare geometry containing exactly one
/// LineString; an optional properties.streets array names segments, null
/// entries = unnamed). Consecutive waypoints closer than 1 m are merged, the
/// collapsed segment's street label dropped. Throws UnsupportedGeometryError,
/// TooFewPointsError, or ParseError.
Route parse_route(const std::string& document);

/// heading[i] = initial bearing from waypoint i to waypoint i+1.
std::vector<double> segment_headings(const Route& route);

/// |a| < 22.5 Straight; < 67.5 Soft; < 157.5 Left/Right; else UTurn.
/// Positive angles turn right. Bands are half-open upward.
TurnClass classify_turn(double turn_angle_deg);

/// Start, every interior waypoint whose class is not Straight, and End.
std::vector<TurningPoint> extract_turning_points(const Route& route);

}  // namespace pharos
