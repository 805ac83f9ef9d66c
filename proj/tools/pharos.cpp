#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pharos/detection.hpp"
#include "pharos/errors.hpp"
#include "pharos/geodesy.hpp"
#include "pharos/instructions.hpp"
#include "pharos/log.hpp"
#include "pharos/route.hpp"
#include "pharos/terrain.hpp"
#include "pharos/visibility.hpp"

namespace {

using namespace pharos;
using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Data goes to stdout unless -o names a file; diagnostics go to stderr.
void write_output(const std::string& out_path, const std::string& data) {
  if (out_path.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
  out << data;
}

Clip parse_clip(const std::string& s) {
  if (s == "square") return Clip::Square;
  if (s == "disk") return Clip::Disk;
  throw InvalidParamsError("--clip must be 'square' or 'disk', got '" + s + "'");
}

std::string grid_to_geojson(const std::vector<GeoPoint>& points) {
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = ordered_json::array();
  for (const auto& p : points) {
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}};
    f["properties"] = ordered_json::object();
    doc["features"].push_back(std::move(f));
  }
  return doc.dump(2) + "\n";
}

struct LandmarkFlags {
  std::string id = "landmark";
  std::string name = "the landmark";
  double lat = 0.0;
  double lon = 0.0;
  double base_elev = 0.0;
  double height = 0.0;

  CLI::Option* lat_opt = nullptr;
  CLI::Option* lon_opt = nullptr;
  CLI::Option* height_opt = nullptr;

  void add_to(CLI::App* cmd, bool need_height) {
    cmd->add_option("--landmark-id", id, "Landmark identifier")->capture_default_str();
    cmd->add_option("--landmark-name", name, "Display name used in instruction text")
        ->capture_default_str();
    lat_opt = cmd->add_option("--landmark-lat", lat, "Landmark latitude (degrees)");
    lon_opt = cmd->add_option("--landmark-lon", lon, "Landmark longitude (degrees)");
    height_opt = cmd->add_option("--landmark-height", height, "Landmark height (m, > 0)");
    cmd->add_option("--landmark-base-elev", base_elev, "Ground elevation at the landmark (m)")
        ->capture_default_str();
    if (need_height) {
      lat_opt->required();
      lon_opt->required();
      height_opt->required();
    }
  }

  Landmark build() const { return {id, name, GeoPoint(lat, lon), base_elev, height}; }
};

int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const InvalidParamsError& e) {
    std::cerr << "pharos: error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "pharos: error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "pharos: error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landmark visibility maps and landmark-enriched walking instructions"};
  app.require_subcommand(1);

  int rc = 0;
  std::string out_path;

  // ---- grid ----
  auto* grid = app.add_subcommand("grid", "Emit the bare sampling lattice around a point");
  struct {
    double lat = 0.0, lon = 0.0, radius = 2000.0, spacing = 100.0;
    std::string clip = "square", out;
  } g;
  grid->add_option("--lat", g.lat, "Center latitude")->required();
  grid->add_option("--lon", g.lon, "Center longitude")->required();
  grid->add_option("--radius", g.radius, "Sampling radius (m)")->capture_default_str();
  grid->add_option("--spacing", g.spacing, "Lattice spacing (m)")->capture_default_str();
  grid->add_option("--clip", g.clip, "Lattice clip: square or disk")->capture_default_str();
  grid->add_option("-o,--output", g.out, "Write output to a file instead of stdout");
  grid->callback([&] {
    rc = guarded([&] {
      auto points = generate_grid(GeoPoint(g.lat, g.lon), g.radius, g.spacing, parse_clip(g.clip));
      write_output(g.out, grid_to_geojson(points));
    });
  });

  // ---- viewshed ----
  auto* viewshed =
      app.add_subcommand("viewshed", "Build a visibility map from a terrain grid");
  struct {
    std::string terrain, clip = "square", out;
    double radius = 2000.0, spacing = 100.0, eye_height = 1.7;
    LandmarkFlags lm;
  } v;
  viewshed->add_option("--terrain", v.terrain, "ESRI ASCII grid path")->required();
  v.lm.add_to(viewshed, true);
  viewshed->add_option("--radius", v.radius, "Sampling radius (m)")->capture_default_str();
  viewshed->add_option("--spacing", v.spacing, "Lattice spacing (m)")->capture_default_str();
  viewshed->add_option("--clip", v.clip, "Lattice clip: square or disk")->capture_default_str();
  viewshed->add_option("--eye-height", v.eye_height, "Observer eye height (m)")
      ->capture_default_str();
  viewshed->add_option("-o,--output", v.out, "Write output to a file instead of stdout");
  viewshed->callback([&] {
    rc = guarded([&] {
      Landmark lm = v.lm.build();
      validate(lm);
      HeightGrid terrain = load_ascii_grid(v.terrain);
      ViewshedStats stats;
      VisibilityMap map = build_visibility_map_viewshed(lm, terrain, v.radius, v.spacing,
                                                        parse_clip(v.clip), v.eye_height, &stats);
      log_info("viewshed: " + std::to_string(map.samples.size()) + " samples, " +
               std::to_string(stats.excluded_outside_grid) + " excluded outside the grid");
      if (stats.los.nodata_samples || stats.los.out_of_hull_samples)
        log_warn("viewshed: " + std::to_string(stats.los.nodata_samples) +
                 " nodata ray samples and " + std::to_string(stats.los.out_of_hull_samples) +
                 " off-grid ray samples treated as height 0");
      write_output(v.out, to_geojson(map));
    });
  });

  // ---- ingest ----
  auto* ingest =
      app.add_subcommand("ingest", "Build a visibility map from a classified-image manifest");
  struct {
    std::string manifest, landmark_id = "landmark", out;
    double spacing = 100.0;
  } ig;
  ingest->add_option("--manifest", ig.manifest, "CSV manifest (image_id,lat,lon,visible)")
      ->required();
  ingest->add_option("--landmark-id", ig.landmark_id, "Landmark identifier")
      ->capture_default_str();
  ingest->add_option("--spacing", ig.spacing, "Declared sample spacing (m)")
      ->capture_default_str();
  ingest->add_option("-o,--output", ig.out, "Write output to a file instead of stdout");
  ingest->callback([&] {
    rc = guarded([&] {
      std::ifstream in(ig.manifest);
      if (!in) throw ParseError("cannot open '" + ig.manifest + "'");
      auto records = parse_classification_manifest(in);
      VisibilityMap map = ingest_classifications(records, ig.landmark_id, ig.spacing);
      write_output(ig.out, to_geojson(map));
    });
  });

  // ---- instructions ----
  auto* instr = app.add_subcommand(
      "instructions", "Generate landmark-enriched turn-by-turn instructions for a route");
  struct {
    std::string route, map, out;
    double trigger_offset = 5.0;
    bool plain = false;
    LandmarkFlags lm;
  } is;
  instr->add_option("--route", is.route, "Route file (GeoJSON LineString or GPX)")->required();
  auto* map_opt = instr->add_option("--map", is.map, "Visibility map GeoJSON");
  is.lm.add_to(instr, false);
  instr->add_option("--trigger-offset", is.trigger_offset,
                    "Trigger distance before each turn (m)")
      ->capture_default_str();
  instr->add_flag("--plain-tbt", is.plain, "Baseline mode: suppress all landmark phrases");
  instr->add_option("-o,--output", is.out, "Write output to a file instead of stdout");
  instr->callback([&] {
    rc = guarded([&] {
      if (!is.plain) {
        if (!map_opt->count()) throw InvalidParamsError("--map is required without --plain-tbt");
        if (!is.lm.lat_opt->count() || !is.lm.lon_opt->count())
          throw InvalidParamsError("--landmark-lat/--landmark-lon are required without --plain-tbt");
      }
      Route route = parse_route(slurp(is.route));
      VisibilityMap map;
      if (map_opt->count()) map = visibility_map_from_geojson(slurp(is.map));
      Landmark lm;
      if (!is.plain) {
        if (!is.lm.height_opt->count()) is.lm.height = 1.0;  // templates never use the height
        lm = is.lm.build();
      }
      auto seq = generate_route_instructions(route, lm, map,
                                             {is.trigger_offset, is.plain});
      write_output(is.out, to_jsonl(seq));
    });
  });

  // ---- eval ----
  auto* eval = app.add_subcommand(
      "eval", "Score predictions against truth labels (precision/recall/f1 x100)");
  struct {
    std::string truth, predictions, out;
    double threshold = 0.5;
  } ev;
  eval->add_option("--truth", ev.truth, "Truth CSV (image_id,truth)")->required();
  eval->add_option("--predictions", ev.predictions, "Prediction CSV (image_id,predicted)")
      ->required();
  eval->add_option("--threshold", ev.threshold, "Score cutoff for numeric predictions")
      ->capture_default_str();
  eval->add_option("-o,--output", ev.out, "Write output to a file instead of stdout");
  eval->callback([&] {
    rc = guarded([&] {
      std::ifstream tin(ev.truth);
      if (!tin) throw ParseError("cannot open '" + ev.truth + "'");
      auto truth = parse_truth_csv(tin);
      std::ifstream pin(ev.predictions);
      if (!pin) throw ParseError("cannot open '" + ev.predictions + "'");
      auto preds = parse_prediction_csv(pin, ev.threshold);

      std::map<std::string, bool> by_id;
      for (const auto& p : preds) {
        if (by_id.count(p.image_id))
          log_warn("duplicate prediction for '" + p.image_id + "', keeping the last");
        by_id[p.image_id] = p.value;
      }
      std::set<std::string> truth_ids;
      for (const auto& t : truth) truth_ids.insert(t.image_id);
      for (const auto& p : preds)
        if (!truth_ids.count(p.image_id))
          throw MalformedRecordError("prediction for unknown image_id '" + p.image_id + "'");
      std::vector<std::pair<bool, bool>> records;
      records.reserve(truth.size());
      for (const auto& t : truth) {
        auto it = by_id.find(t.image_id);
        if (it == by_id.end())
          throw MalformedRecordError("no prediction for image_id '" + t.image_id + "'");
        records.emplace_back(it->second, t.value);
      }
      write_output(ev.out, to_report_json(evaluate(records)) + "\n");
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "pharos: error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
