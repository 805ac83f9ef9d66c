#include "pharos/visibility.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pharos/log.hpp"

namespace pharos {

namespace {

using nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double_field(const std::string& s, const char* what, int row) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw MalformedRecordError(std::string(what) + " must be a number, got '" + s + "'", row);
  return v;
}

}  // namespace

const char* to_string(VisState s) {
  switch (s) {
    case VisState::Visible: return "visible";
    case VisState::NotVisible: return "not_visible";
    case VisState::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(VerdictSource s) {
  return s == VerdictSource::Viewshed ? "viewshed" : "classified";
}

const char* to_string(Clip c) { return c == Clip::Square ? "square" : "disk"; }

void validate(const Landmark& landmark) {
  if (!(landmark.height_m > 0.0))
    throw InvalidParamsError("landmark height must be > 0, got " +
                             std::to_string(landmark.height_m));
  if (landmark.name.empty()) throw InvalidParamsError("landmark name must be non-empty");
}

std::vector<GeoPoint> generate_grid(const GeoPoint& center, double radius_m, double spacing_m,
                                    Clip clip) {
  if (!(radius_m > 0.0)) throw InvalidParamsError("radius must be > 0");
  if (!(spacing_m > 0.0) || spacing_m > radius_m)
    throw InvalidParamsError("spacing must be in (0, radius]");

  const int n = static_cast<int>(std::floor(radius_m / spacing_m));
  std::vector<GeoPoint> out;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      if (clip == Clip::Disk &&
          static_cast<double>(i * i + j * j) * spacing_m * spacing_m > radius_m * radius_m)
        continue;
      GeoPoint p = center;
      if (j != 0) p = destination_point(p, j > 0 ? 0.0 : 180.0, std::abs(j) * spacing_m);
      if (i != 0) p = destination_point(p, i > 0 ? 90.0 : 270.0, std::abs(i) * spacing_m);
      out.push_back(p);
    }
  }
  return out;
}

bool line_of_sight_visible(const GeoPoint& observer, double eye_height_m,
                           const Landmark& landmark, const HeightGrid& terrain,
                           LosDiagnostics* diag) {
  validate(landmark);
  if (eye_height_m < 0.0) throw InvalidParamsError("eye height must be >= 0");
  LosDiagnostics local;
  if (!diag) diag = &local;

  // the hull precondition outranks the degenerate-ray convention
  HeightSample obs = sample_height(terrain, observer);
  if (obs.status == HeightSample::Status::OutOfBounds)
    throw ObserverOutsideGridError("observer outside the terrain grid hull");
  if (obs.status == HeightSample::Status::Nodata) ++diag->nodata_samples;

  EnuOffset ray = to_local_enu(observer, landmark.location);
  double total = std::hypot(ray.east_m, ray.north_m);
  double cell_m = terrain.cellsize * kMetresPerDegree;
  if (total < cell_m / 2.0) {
    ++diag->degenerate_rays;
    return true;
  }
  double eye = obs.height_m + eye_height_m;
  double target = landmark.base_elevation_m + landmark.height_m;
  double slope = (target - eye) / total;

  double step = cell_m / 2.0;
  for (long long k = 1; k * step < total; ++k) {
    double d = k * step;
    double t = d / total;
    GeoPoint s = from_local_enu(observer, {ray.east_m * t, ray.north_m * t});
    HeightSample hs = sample_height(terrain, s);
    double h = hs.height_m;
    if (hs.status == HeightSample::Status::Nodata)
      ++diag->nodata_samples;
    else if (hs.status == HeightSample::Status::OutOfBounds)
      ++diag->out_of_hull_samples;
    // Grazing contact blocks: the sight line must pass strictly above.
    if (h >= eye + d * slope) return false;
  }
  return true;
}

VisibilityMap build_visibility_map_viewshed(const Landmark& landmark, const HeightGrid& terrain,
                                            double radius_m, double spacing_m, Clip clip,
                                            double eye_height_m, ViewshedStats* stats) {
  validate(landmark);
  ViewshedStats local;
  if (!stats) stats = &local;

  VisibilityMap map;
  map.landmark_id = landmark.id;
  map.spacing_m = spacing_m;
  map.clip = clip;
  map.radius_m = radius_m;
  for (const GeoPoint& p : generate_grid(landmark.location, radius_m, spacing_m, clip)) {
    try {
      bool vis = line_of_sight_visible(p, eye_height_m, landmark, terrain, &stats->los);
      map.samples.push_back(
          {p, vis ? VisState::Visible : VisState::NotVisible, VerdictSource::Viewshed});
    } catch (const ObserverOutsideGridError&) {
      ++stats->excluded_outside_grid;
    }
  }
  if (stats == &local && (local.excluded_outside_grid || local.los.nodata_samples ||
                          local.los.out_of_hull_samples))
    log_info("viewshed: excluded " + std::to_string(local.excluded_outside_grid) +
             " points outside the grid, " + std::to_string(local.los.nodata_samples) +
             " nodata ray samples, " + std::to_string(local.los.out_of_hull_samples) +
             " ray samples off the grid");
  return map;
}

std::vector<ClassificationRecord> parse_classification_manifest(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw MalformedRecordError("empty manifest, expected CSV header");
  auto header = split_csv_line(trim(line));
  if (header.size() != 4 || lower(header[0]) != "image_id" || lower(header[1]) != "lat" ||
      lower(header[2]) != "lon" || lower(header[3]) != "visible")
    throw MalformedRecordError("expected header 'image_id,lat,lon,visible', got '" + trim(line) +
                               "'");

  std::vector<ClassificationRecord> out;
  int row = 0;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    ++row;
    auto fields = split_csv_line(t);
    if (fields.size() != 4)
      throw MalformedRecordError("expected 4 fields, got " + std::to_string(fields.size()), row);
    if (fields[0].empty()) throw MalformedRecordError("empty image_id", row);
    double lat = parse_double_field(fields[1], "lat", row);
    double lon = parse_double_field(fields[2], "lon", row);
    std::string v = lower(fields[3]);
    bool visible = false;
    if (v == "true" || v == "1")
      visible = true;
    else if (v == "false" || v == "0")
      visible = false;
    else
      throw MalformedRecordError("visible must be true, false, 1, or 0, got '" + fields[3] + "'",
                                 row);
    try {
      out.push_back({fields[0], GeoPoint(lat, lon), visible});
    } catch (const InvalidParamsError& e) {
      throw MalformedRecordError(e.what(), row);
    }
  }
  return out;
}

VisibilityMap ingest_classifications(const std::vector<ClassificationRecord>& records,
                                     const std::string& landmark_id, double spacing_m) {
  if (records.empty()) throw EmptyManifestError("classification manifest has no records");
  if (!(spacing_m > 0.0)) throw InvalidParamsError("spacing must be > 0");

  VisibilityMap map;
  map.landmark_id = landmark_id;
  map.spacing_m = spacing_m;
  map.clip = Clip::Square;
  long long replaced = 0;
  for (const auto& rec : records) {
    VisState state = rec.predicted ? VisState::Visible : VisState::NotVisible;
    bool duplicate = false;
    for (auto& s : map.samples) {
      if (haversine_distance(s.location, rec.location) < 1.0) {
        s.location = rec.location;
        s.state = state;
        duplicate = true;
        ++replaced;
        break;
      }
    }
    if (!duplicate) map.samples.push_back({rec.location, state, VerdictSource::Classified});
  }
  if (replaced) log_info("ingest: " + std::to_string(replaced) + " duplicate locations replaced");

  // No landmark position exists here; record the extent of the data itself.
  const GeoPoint& ref = map.samples.front().location;
  double min_e = 0.0, max_e = 0.0, min_n = 0.0, max_n = 0.0;
  for (const auto& s : map.samples) {
    EnuOffset o = to_local_enu(ref, s.location);
    min_e = std::min(min_e, o.east_m);
    max_e = std::max(max_e, o.east_m);
    min_n = std::min(min_n, o.north_m);
    max_n = std::max(max_n, o.north_m);
  }
  map.radius_m = std::max(max_e - min_e, max_n - min_n) / 2.0;
  return map;
}

VisState lookup_visibility(const VisibilityMap& map, const GeoPoint& p) {
  if (map.samples.empty()) return VisState::Unknown;
  const SampleVerdict* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& s : map.samples) {
    double d = haversine_distance(p, s.location);
    bool closer = d < best_dist;
    bool tie = d == best_dist && best &&
               (s.location.lat < best->location.lat ||
                (s.location.lat == best->location.lat && s.location.lon < best->location.lon));
    if (closer || tie) {
      best = &s;
      best_dist = d;
    }
  }
  if (best_dist <= 0.75 * map.spacing_m) return best->state;
  return VisState::Unknown;
}

std::string to_geojson(const VisibilityMap& map) {
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["landmark_id"] = map.landmark_id;
  doc["spacing_m"] = map.spacing_m;
  doc["radius_m"] = map.radius_m;
  doc["clip"] = to_string(map.clip);
  doc["features"] = ordered_json::array();
  for (const auto& s : map.samples) {
    if (s.state == VisState::Unknown)
      throw InvalidParamsError("Unknown verdicts cannot be serialized");
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", {s.location.lon, s.location.lat}}};
    f["properties"] = {{"visible", s.state == VisState::Visible},
                       {"source", to_string(s.source)}};
    doc["features"].push_back(std::move(f));
  }
  return doc.dump(2) + "\n";
}

VisibilityMap visibility_map_from_geojson(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(e.what());
  }
  try {
    if (doc.value("type", "") != "FeatureCollection")
      throw ParseError("visibility map must be a FeatureCollection");
    VisibilityMap map;
    map.landmark_id = doc.at("landmark_id").get<std::string>();
    map.spacing_m = doc.at("spacing_m").get<double>();
    map.radius_m = doc.at("radius_m").get<double>();
    std::string clip = doc.at("clip").get<std::string>();
    if (clip == "square")
      map.clip = Clip::Square;
    else if (clip == "disk")
      map.clip = Clip::Disk;
    else
      throw ParseError("clip must be 'square' or 'disk', got '" + clip + "'");
    if (!(map.spacing_m > 0.0)) throw ParseError("spacing_m must be > 0");
    for (const auto& f : doc.at("features")) {
      const auto& geom = f.at("geometry");
      if (geom.value("type", "") != "Point")
        throw ParseError("visibility map features must be Points");
      const auto& coords = geom.at("coordinates");
      const auto& props = f.at("properties");
      bool visible = props.at("visible").get<bool>();
      std::string source = props.value("source", "viewshed");
      map.samples.push_back(
          {GeoPoint(coords.at(1).get<double>(), coords.at(0).get<double>()),
           visible ? VisState::Visible : VisState::NotVisible,
           source == "classified" ? VerdictSource::Classified : VerdictSource::Viewshed});
    }
    return map;
  } catch (const ordered_json::exception& e) {
    throw ParseError(e.what());
  } catch (const InvalidParamsError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace pharos
