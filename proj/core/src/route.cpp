#include "pharos/route.hpp"

#include <cmath>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

namespace pharos {

namespace {

using nlohmann::json;

struct RawRoute {
  std::vector<GeoPoint> points;
  std::vector<std::optional<std::string>> streets;  // per original segment; may be empty
};

GeoPoint position_from_geojson(const json& coord) {
  if (!coord.is_array() || coord.size() < 2 || !coord[0].is_number() || !coord[1].is_number())
    throw ParseError("coordinate must be a [lon, lat] number array");
  return GeoPoint(coord[1].get<double>(), coord[0].get<double>());
}

RawRoute read_geojson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw ParseError("route document has no GeoJSON type");

  std::string type = doc["type"].get<std::string>();
  json geometry;
  json properties;
  if (type == "FeatureCollection") {
    if (!doc.contains("features") || !doc["features"].is_array())
      throw ParseError("FeatureCollection without features array");
    int found = 0;
    for (const auto& f : doc["features"]) {
      if (f.contains("geometry") && f["geometry"].is_object() &&
          f["geometry"].value("type", "") == "LineString") {
        ++found;
        geometry = f["geometry"];
        if (f.contains("properties")) properties = f["properties"];
      }
    }
    if (found != 1)
      throw UnsupportedGeometryError("expected exactly one LineString feature, found " +
                                     std::to_string(found));
  } else if (type == "Feature") {
    if (!doc.contains("geometry") || !doc["geometry"].is_object())
      throw ParseError("Feature without geometry");
    geometry = doc["geometry"];
    if (geometry.value("type", "") != "LineString")
      throw UnsupportedGeometryError("unsupported geometry '" + geometry.value("type", "?") +
                                     "', expected LineString");
    if (doc.contains("properties")) properties = doc["properties"];
  } else if (type == "LineString") {
    geometry = doc;
  } else {
    throw UnsupportedGeometryError("unsupported GeoJSON type '" + type + "'");
  }

  if (!geometry.contains("coordinates") || !geometry["coordinates"].is_array())
    throw ParseError("LineString without coordinates array");
  RawRoute raw;
  for (const auto& c : geometry["coordinates"]) raw.points.push_back(position_from_geojson(c));

  if (properties.is_object() && properties.contains("streets") &&
      !properties["streets"].is_null()) {
    const json& streets = properties["streets"];
    if (!streets.is_array())
      throw ParseError("properties.streets must be an array of names or nulls");
    if (streets.size() + 1 != raw.points.size())
      throw ParseError("streets array has " + std::to_string(streets.size()) +
                       " entries, expected one per segment (" +
                       std::to_string(raw.points.size() == 0 ? 0 : raw.points.size() - 1) + ")");
    for (const auto& s : streets) {
      if (s.is_null())
        raw.streets.push_back(std::nullopt);
      else if (s.is_string())
        raw.streets.push_back(s.get<std::string>());
      else
        throw ParseError("street entries must be strings or nulls");
    }
  }
  return raw;
}

RawRoute read_gpx(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(e.message(), static_cast<int>(e.line()));
  }
  auto gpx = tree.get_child_optional("gpx");
  if (!gpx) throw ParseError("missing <gpx> root element");

  auto read_point = [](const pt::ptree& node, const char* tag) {
    auto lat = node.get_optional<double>("<xmlattr>.lat");
    auto lon = node.get_optional<double>("<xmlattr>.lon");
    if (!lat || !lon)
      throw ParseError(std::string("<") + tag + "> missing lat/lon attribute");
    return GeoPoint(*lat, *lon);
  };

  RawRoute raw;
  int containers = 0;
  for (const auto& [key, node] : *gpx) {
    if (key == "rte") {
      if (++containers == 1)
        for (const auto& [k, p] : node)
          if (k == "rtept") raw.points.push_back(read_point(p, "rtept"));
    } else if (key == "trk") {
      if (++containers == 1)
        for (const auto& [k, seg] : node)
          if (k == "trkseg")
            for (const auto& [k2, p] : seg)
              if (k2 == "trkpt") raw.points.push_back(read_point(p, "trkpt"));
    }
  }
  if (containers != 1)
    throw UnsupportedGeometryError("expected exactly one <rte> or <trk>, found " +
                                   std::to_string(containers));
  return raw;
}

}  // namespace

const char* to_string(TurnClass c) {
  switch (c) {
    case TurnClass::Straight: return "straight";
    case TurnClass::SoftLeft: return "soft_left";
    case TurnClass::SoftRight: return "soft_right";
    case TurnClass::Left: return "left";
    case TurnClass::Right: return "right";
    case TurnClass::SharpLeft: return "sharp_left";
    case TurnClass::SharpRight: return "sharp_right";
    case TurnClass::UTurn: return "u_turn";
    case TurnClass::Start: return "start";
    case TurnClass::End: return "end";
  }
  return "?";
}

Route parse_route(const std::string& document) {
  size_t first = document.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty route document");
  RawRoute raw = document[first] == '<' ? read_gpx(document) : read_geojson(document);
  if (raw.points.size() < 2)
    throw TooFewPointsError("route needs at least 2 waypoints, got " +
                            std::to_string(raw.points.size()));

  bool labeled = !raw.streets.empty();
  Route route;
  route.waypoints.push_back(raw.points[0]);
  for (size_t i = 1; i < raw.points.size(); ++i) {
    // A hop under 1 m is a duplicate; its segment (and street label) vanishes.
    if (haversine_distance(route.waypoints.back(), raw.points[i]) < 1.0) continue;
    route.waypoints.push_back(raw.points[i]);
    route.streets.push_back(labeled ? raw.streets[i - 1] : std::nullopt);
  }
  if (route.waypoints.size() < 2)
    throw TooFewPointsError("route collapses to fewer than 2 distinct waypoints");
  return route;
}

std::vector<double> segment_headings(const Route& route) {
  std::vector<double> out;
  out.reserve(route.waypoints.size() - 1);
  for (size_t i = 0; i + 1 < route.waypoints.size(); ++i)
    out.push_back(initial_bearing(route.waypoints[i], route.waypoints[i + 1]));
  return out;
}

TurnClass classify_turn(double turn_angle_deg) {
  double a = std::fabs(turn_angle_deg);
  if (a < 22.5) return TurnClass::Straight;
  if (a < 67.5) return turn_angle_deg > 0 ? TurnClass::SoftRight : TurnClass::SoftLeft;
  if (a < 157.5) return turn_angle_deg > 0 ? TurnClass::Right : TurnClass::Left;
  return TurnClass::UTurn;
}

std::vector<TurningPoint> extract_turning_points(const Route& route) {
  auto headings = segment_headings(route);
  const int n = static_cast<int>(route.waypoints.size());
  std::vector<TurningPoint> out;

  TurningPoint start;
  start.index = 0;
  start.location = route.waypoints[0];
  start.outgoing_heading = headings[0];
  start.turn_class = TurnClass::Start;
  out.push_back(start);

  for (int i = 1; i < n - 1; ++i) {
    double angle = normalize_relative(headings[i] - headings[i - 1]);
    TurnClass tc = classify_turn(angle);
    if (tc == TurnClass::Straight) continue;
    TurningPoint tp;
    tp.index = i;
    tp.location = route.waypoints[i];
    tp.incoming_heading = headings[i - 1];
    tp.outgoing_heading = headings[i];
    tp.turn_angle = angle;
    tp.turn_class = tc;
    out.push_back(tp);
  }

  TurningPoint end;
  end.index = n - 1;
  end.location = route.waypoints[n - 1];
  end.incoming_heading = headings[n - 2];
  end.turn_class = TurnClass::End;
  out.push_back(end);
  return out;
}

}  // namespace pharos
