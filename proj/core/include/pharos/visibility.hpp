#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pharos/errors.hpp"
#include "pharos/geodesy.hpp"
#include "pharos/terrain.hpp"

namespace pharos {

enum class VisState { Visible, NotVisible, Unknown };
enum class VerdictSource { Viewshed, Classified };
enum class Clip { Square, Disk };

const char* to_string(VisState s);
const char* to_string(VerdictSource s);
const char* to_string(Clip c);

struct Landmark {
  std::string id;
  std::string name;  // display name as used in instruction text
  GeoPoint location;
  double base_elevation_m = 0.0;
  double height_m = 0.0;  // must be > 0
};

/// Throws InvalidParamsError unless height_m > 0 and name is non-empty.
void validate(const Landmark& landmark);

struct SampleVerdict {
  GeoPoint location;
  VisState state = VisState::Unknown;
  VerdictSource source = VerdictSource::Viewshed;
};

struct VisibilityMap {
  std::string landmark_id;
  double spacing_m = 0.0;
  Clip clip = Clip::Square;
  double radius_m = 0.0;
  std::vector<SampleVerdict> samples;
};

/// Axis-aligned lattice of points (i·spacing east, j·spacing north) around
/// center, i outer and j inner, both ascending. Square keeps |i|,|j| ≤
/// ⌊radius/spacing⌋; Disk keeps i²+j² ≤ (radius/spacing)². Each point is
/// placed by moving north/south then east/west from the center.
std::vector<GeoPoint> generate_grid(const GeoPoint& center, double radius_m, double spacing_m,
                                    Clip clip);

/// Counters a line-of-sight walk or map build can report back.
struct LosDiagnostics {
  long long nodata_samples = 0;       // ray samples on nodata cells (height 0 assumed)
  long long out_of_hull_samples = 0;  // ray samples outside the grid hull (height 0 assumed)
  long long degenerate_rays = 0;      // observer within half a cell of the landmark
};

/// True when the landmark top is visible from observer eye height.
///
/// Walks the observer→landmark segment in the observer's local tangent plane
/// at steps of half the north-south cell extent, strictly between the
/// endpoints. The sight line must clear every intermediate surface sample
/// strictly; a grazing touch blocks. Observers closer than half a cell see
/// the landmark by convention. Mid-ray samples outside the hull or on nodata
/// count as height 0 (see diag); only the observer's own position being
/// outside the hull throws ObserverOutsideGridError.
bool line_of_sight_visible(const GeoPoint& observer, double eye_height_m,
                           const Landmark& landmark, const HeightGrid& terrain,
                           LosDiagnostics* diag = nullptr);

struct ViewshedStats {
  long long excluded_outside_grid = 0;  // lattice points outside the terrain hull
  LosDiagnostics los;
};

/// One verdict per lattice point, in lattice order; points whose observer
/// position falls outside the terrain hull are excluded from the map.
VisibilityMap build_visibility_map_viewshed(const Landmark& landmark, const HeightGrid& terrain,
                                            double radius_m, double spacing_m, Clip clip,
                                            double eye_height_m = 1.7,
                                            ViewshedStats* stats = nullptr);

/// One externally classified geotagged image.
struct ClassificationRecord {
  std::string image_id;
  GeoPoint location;
  bool predicted = false;
};

/// CSV `image_id,lat,lon,visible` (visible ∈ {true,false,1,0}); header
/// required. Throws MalformedRecordError carrying the 1-based data row.
std::vector<ClassificationRecord> parse_classification_manifest(std::istream& in);

/// Map built from classified imagery. Records within 1 m of an earlier one
/// replace its verdict (later wins, position kept). clip/radius are recorded
/// as the samples' bounding-box half-extent since no landmark location is
/// known here. Throws EmptyManifestError on no records.
VisibilityMap ingest_classifications(const std::vector<ClassificationRecord>& records,
                                     const std::string& landmark_id, double spacing_m);

/// Verdict of the nearest sample when it lies within 0.75·spacing_m, else
/// Unknown. Exact distance ties go to the smaller (lat, lon).
VisState lookup_visibility(const VisibilityMap& map, const GeoPoint& p);

/// GeoJSON FeatureCollection with top-level landmark_id/spacing_m/radius_m/
/// clip members and one Point feature per sample (properties.visible,
/// properties.source). Byte-deterministic for identical maps.
std::string to_geojson(const VisibilityMap& map);
VisibilityMap visibility_map_from_geojson(const std::string& text);

}  // namespace pharos
