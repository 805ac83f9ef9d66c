#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pharos/errors.hpp>
#include <pharos/geodesy.hpp>
#include <pharos/route.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace pharos;

namespace {

std::string geojson_linestring(const std::vector<std::pair<double, double>>& lonlat,
                               const std::string& props = "{}") {
    std::ostringstream out;
    out << R"({"type":"Feature","properties":)" << props
        << R"(,"geometry":{"type":"LineString","coordinates":[)";
    for (size_t k = 0; k < lonlat.size(); ++k) {
        if (k) out << ",";
        out << "[" << lonlat[k].first << "," << lonlat[k].second << "]";
    }
    out << "]}}";
    return out.str();
}

std::string fixture_path(const char* name) {
    return std::string(PHAROS_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("geojson feature with three points") {
    Route r = parse_route(geojson_linestring({{0, 0}, {0.001, 0}, {0.001, 0.001}}));
    REQUIRE(r.waypoints.size() == 3);
    CHECK(r.waypoints[0].lat == 0.0);
    CHECK(r.waypoints[0].lon == 0.0);
    CHECK(r.waypoints[1].lon == 0.001);
    CHECK(r.streets.size() == 2);
    CHECK_FALSE(r.streets[0].has_value());
}

TEST_CASE("bare linestring and feature collection both parse") {
    Route bare = parse_route(
        R"({"type":"LineString","coordinates":[[0,0],[0.001,0]]})");
    CHECK(bare.waypoints.size() == 2);

    Route coll = parse_route(
        R"({"type":"FeatureCollection","features":[)"
        R"({"type":"Feature","properties":{},"geometry":{"type":"Point","coordinates":[9,9]}},)"
        R"({"type":"Feature","properties":{},"geometry":{"type":"LineString","coordinates":[[0,0],[0.001,0]]}}]})");
    CHECK(coll.waypoints.size() == 2);
}

TEST_CASE("street labels attach to segments") {
    Route r = parse_route(geojson_linestring(
        {{0, 0}, {0.001, 0}, {0.002, 0}},
        R"({"streets":["Main Street",null]})"));
    REQUIRE(r.streets.size() == 2);
    CHECK(r.streets[0] == std::optional<std::string>("Main Street"));
    CHECK_FALSE(r.streets[1].has_value());
}

TEST_CASE("street array must match segment count") {
    CHECK_THROWS_AS(parse_route(geojson_linestring(
                        {{0, 0}, {0.001, 0}, {0.002, 0}},
                        R"({"streets":["Main Street"]})")),
                    ParseError);
    CHECK_THROWS_AS(parse_route(geojson_linestring(
                        {{0, 0}, {0.001, 0}},
                        R"({"streets":[42]})")),
                    ParseError);
}

TEST_CASE("unsupported geometries are refused") {
    CHECK_THROWS_AS(
        parse_route(R"({"type":"Feature","properties":{},"geometry":)"
                    R"({"type":"MultiLineString","coordinates":[[[0,0],[1,1]]]}})"),
        UnsupportedGeometryError);
    CHECK_THROWS_AS(
        parse_route(R"({"type":"Point","coordinates":[0,0]})"),
        UnsupportedGeometryError);
    // a collection with two linestrings is ambiguous
    CHECK_THROWS_AS(
        parse_route(
            R"({"type":"FeatureCollection","features":[)"
            R"({"type":"Feature","properties":{},"geometry":{"type":"LineString","coordinates":[[0,0],[1,0]]}},)"
            R"({"type":"Feature","properties":{},"geometry":{"type":"LineString","coordinates":[[0,0],[0,1]]}}]})"),
        UnsupportedGeometryError);
}

TEST_CASE("malformed json is a parse error") {
    CHECK_THROWS_AS(parse_route("{,}"), ParseError);
    CHECK_THROWS_AS(parse_route(""), ParseError);
    CHECK_THROWS_AS(parse_route(R"({"type":"LineString"})"), ParseError);
}

TEST_CASE("sub-metre duplicates merge and drop the collapsed street") {
    // 0.000005 deg is about 0.56 m
    Route r = parse_route(geojson_linestring(
        {{0, 0}, {0.000005, 0}, {0.001, 0}, {0.002, 0}},
        R"({"streets":["Stub","Harbor Street","Elm Street"]})"));
    REQUIRE(r.waypoints.size() == 3);
    // keeping point 2 means the segment 1->2 label survives, the stub is gone
    REQUIRE(r.streets.size() == 2);
    CHECK(r.streets[0] == std::optional<std::string>("Harbor Street"));
    CHECK(r.streets[1] == std::optional<std::string>("Elm Street"));
}

TEST_CASE("routes need two distinct points") {
    CHECK_THROWS_AS(parse_route(geojson_linestring({{0, 0}})), TooFewPointsError);
    // two points that merge leave a single waypoint
    CHECK_THROWS_AS(parse_route(geojson_linestring({{0, 0}, {0.000001, 0}})),
                    TooFewPointsError);
}

TEST_CASE("gpx route points parse") {
    Route r = parse_route(
        "<?xml version=\"1.0\"?>\n"
        "<gpx version=\"1.1\" creator=\"t\">\n"
        " <rte>\n"
        "  <rtept lat=\"0\" lon=\"0\"/>\n"
        "  <rtept lat=\"0.001\" lon=\"0\"/>\n"
        "  <rtept lat=\"0.001\" lon=\"0.001\"/>\n"
        " </rte>\n"
        "</gpx>\n");
    REQUIRE(r.waypoints.size() == 3);
    CHECK(r.waypoints[1].lat == 0.001);
    CHECK(r.streets.size() == 2);
    CHECK_FALSE(r.streets[0].has_value());
}

TEST_CASE("gpx track segments concatenate") {
    Route r = parse_route(
        "<gpx version=\"1.1\"><trk>"
        "<trkseg><trkpt lat=\"0\" lon=\"0\"/><trkpt lat=\"0.001\" lon=\"0\"/></trkseg>"
        "<trkseg><trkpt lat=\"0.002\" lon=\"0\"/></trkseg>"
        "</trk></gpx>");
    CHECK(r.waypoints.size() == 3);
}

TEST_CASE("gpx with zero or two routes is refused") {
    CHECK_THROWS_AS(parse_route("<gpx version=\"1.1\"></gpx>"), UnsupportedGeometryError);
    CHECK_THROWS_AS(parse_route(
                        "<gpx version=\"1.1\">"
                        "<rte><rtept lat=\"0\" lon=\"0\"/><rtept lat=\"1\" lon=\"0\"/></rte>"
                        "<rte><rtept lat=\"0\" lon=\"0\"/><rtept lat=\"1\" lon=\"1\"/></rte>"
                        "</gpx>"),
                    UnsupportedGeometryError);
    CHECK_THROWS_AS(parse_route("<gpx version=\"1.1\"><rte><rtept lat=\"0\""), ParseError);
}

TEST_CASE("segment headings for a unit square loop") {
    // east, south, west, north legs
    Route r = parse_route(geojson_linestring(
        {{0, 0.001}, {0.001, 0.001}, {0.001, 0}, {0, 0}, {0, 0.001}}));
    auto h = segment_headings(r);
    REQUIRE(h.size() == 4);
    CHECK(std::abs(h[0] - 90.0) < 0.01);
    CHECK(std::abs(h[1] - 180.0) < 0.01);
    CHECK(std::abs(h[2] - 270.0) < 0.01);
    CHECK(std::abs(h[3] - 0.0) < 0.01);
}

TEST_CASE("turn classification bands") {
    CHECK(classify_turn(0.0) == TurnClass::Straight);
    CHECK(classify_turn(22.4) == TurnClass::Straight);
    CHECK(classify_turn(-22.4) == TurnClass::Straight);
    CHECK(classify_turn(22.5) == TurnClass::SoftRight);
    CHECK(classify_turn(-22.5) == TurnClass::SoftLeft);
    CHECK(classify_turn(45.0) == TurnClass::SoftRight);
    CHECK(classify_turn(67.4) == TurnClass::SoftRight);
    CHECK(classify_turn(67.5) == TurnClass::Right);
    CHECK(classify_turn(90.0) == TurnClass::Right);
    CHECK(classify_turn(-90.0) == TurnClass::Left);
    CHECK(classify_turn(157.4) == TurnClass::Right);
    CHECK(classify_turn(157.5) == TurnClass::UTurn);
    CHECK(classify_turn(-157.5) == TurnClass::UTurn);
    CHECK(classify_turn(180.0) == TurnClass::UTurn);
}

TEST_CASE("classification is mirror-symmetric") {
    for (double a = 0.1; a < 180.0; a += 0.7) {
        TurnClass right = classify_turn(a);
        TurnClass left = classify_turn(-a);
        switch (right) {
        case TurnClass::Straight: CHECK(left == TurnClass::Straight); break;
        case TurnClass::SoftRight: CHECK(left == TurnClass::SoftLeft); break;
        case TurnClass::Right: CHECK(left == TurnClass::Left); break;
        case TurnClass::UTurn: CHECK(left == TurnClass::UTurn); break;
        default: FAIL("unexpected class");
        }
    }
}

TEST_CASE("turn class names serialize in snake case") {
    CHECK(std::string(to_string(TurnClass::SoftLeft)) == "soft_left");
    CHECK(std::string(to_string(TurnClass::UTurn)) == "u_turn");
    CHECK(std::string(to_string(TurnClass::Start)) == "start");
    CHECK(std::string(to_string(TurnClass::End)) == "end");
    CHECK(std::string(to_string(TurnClass::SharpRight)) == "sharp_right");
}

TEST_CASE("turning points bracket the route") {
    // straight two-leg route: interior waypoint is Straight, so only termini
    Route straight = parse_route(geojson_linestring({{0, 0}, {0.001, 0}, {0.002, 0}}));
    auto tps = extract_turning_points(straight);
    REQUIRE(tps.size() == 2);
    CHECK(tps[0].turn_class == TurnClass::Start);
    CHECK(tps[0].index == 0);
    CHECK_FALSE(tps[0].incoming_heading.has_value());
    REQUIRE(tps[0].outgoing_heading.has_value());
    CHECK(std::abs(*tps[0].outgoing_heading - 90.0) < 0.01);
    CHECK(tps[0].turn_angle == 0.0);
    CHECK(tps[1].turn_class == TurnClass::End);
    CHECK(tps[1].index == 2);
    CHECK_FALSE(tps[1].outgoing_heading.has_value());
    REQUIRE(tps[1].incoming_heading.has_value());
}

TEST_CASE("interior turning points carry class and angle") {
    // north then east: one 90-degree right turn
    Route r = parse_route(geojson_linestring({{0, 0}, {0, 0.001}, {0.001, 0.001}}));
    auto tps = extract_turning_points(r);
    REQUIRE(tps.size() == 3);
    CHECK(tps[1].index == 1);
    CHECK(tps[1].turn_class == TurnClass::Right);
    CHECK(std::abs(tps[1].turn_angle - 90.0) < 0.01);
    REQUIRE(tps[1].incoming_heading.has_value());
    REQUIRE(tps[1].outgoing_heading.has_value());
    CHECK(std::abs(*tps[1].incoming_heading - 0.0) < 0.01);
    CHECK(std::abs(*tps[1].outgoing_heading - 90.0) < 0.01);
}

TEST_CASE("fixture route yields its seven interior turns") {
    Route r = parse_route(slurp(fixture_path("grid_city_route.geojson")));
    REQUIRE(r.waypoints.size() == 9);
    auto tps = extract_turning_points(r);
    REQUIRE(tps.size() == 9); // start + 7 turns + end
    std::vector<TurnClass> expect = {
        TurnClass::Start, TurnClass::Right, TurnClass::Left, TurnClass::Left,
        TurnClass::Right, TurnClass::Right, TurnClass::Right, TurnClass::Left,
        TurnClass::End,
    };
    for (size_t k = 0; k < expect.size(); ++k) CHECK(tps[k].turn_class == expect[k]);
}

TEST_CASE("turn angles are invariant under route rotation") {
    // rotate a fixed local polyline by various angles; turn angles persist
    const std::vector<std::pair<double, double>> legs = {
        {0, 200}, {150, 0}, {0, -100}, {80, 80},
    };
    for (double rot : {30.0, 90.0, 123.0}) {
        GeoPoint p(0.0, 0.0);
        std::vector<std::pair<double, double>> lonlat = {{p.lon, p.lat}};
        double rad = rot * std::numbers::pi / 180.0;
        for (auto [e, n] : legs) {
            double re = e * std::cos(rad) + n * std::sin(rad);
            double rn = -e * std::sin(rad) + n * std::cos(rad);
            p = from_local_enu(p, EnuOffset{re, rn});
            lonlat.push_back({p.lon, p.lat});
        }
        Route r = parse_route(geojson_linestring(lonlat));
        auto tps = extract_turning_points(r);
        REQUIRE(tps.size() >= 2);
        // interior angles match the local-frame construction regardless of rot
        std::vector<double> expect_angles = {90.0, 90.0, 135.0};
        size_t ti = 0;
        for (const auto& tp : tps) {
            if (tp.turn_class == TurnClass::Start || tp.turn_class == TurnClass::End) continue;
            REQUIRE(ti < expect_angles.size());
            CHECK(std::abs(std::abs(tp.turn_angle) - expect_angles[ti]) < 0.05);
            ++ti;
        }
    }
}
